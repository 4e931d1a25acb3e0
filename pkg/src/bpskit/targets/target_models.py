"""Configuration models describing the built-in target families."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

MIN_DIMENSION = 2

# Error messages
ERROR_BETA_REQUIRED = "Family 'gen_gaussian' requires parameters.beta"
ERROR_K_REQUIRED = "Family 'student_t' requires parameters.k"
ERROR_COVARIANCE_LENGTH = "covariance_diagonal must have one entry per dimension"
ERROR_COVARIANCE_POSITIVE = "covariance_diagonal entries must be strictly positive"
ERROR_UNUSED_PARAMETER = "Parameter '{name}' is not used by family '{family}'"

TargetFamily = Literal["gaussian", "gen_gaussian", "student_t"]

_FAMILY_PARAMETERS: dict[str, set[str]] = {
    "gaussian": {"covariance_diagonal"},
    "gen_gaussian": {"beta"},
    "student_t": {"k"},
}


class TargetParameters(BaseModel):
    """Family-specific shape parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    beta: float | None = Field(
        default=None,
        gt=0,
        description="Exponent of the generalized Gaussian potential |x|^beta",
        examples=[0.5, 1.0, 4.0],
    )
    k: float | None = Field(
        default=None,
        gt=0,
        description="Degrees of freedom of the multivariate t distribution",
        examples=[1.0, 4.0],
    )
    covariance_diagonal: list[float] | None = Field(
        default=None,
        description="Per-coordinate variances of the Gaussian (identity when omitted)",
        examples=[[1.0, 1.0], [1.0, 4.0]],
    )


class TargetConfig(BaseModel):
    """Structured record selecting a built-in target."""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={
            "examples": [
                {"family": "gaussian", "dimension": 2},
                {"family": "student_t", "dimension": 2, "parameters": {"k": 4}},
            ],
        },
    )

    family: TargetFamily = Field(..., description="Target family name")
    dimension: int = Field(
        ...,
        ge=MIN_DIMENSION,
        description="Dimension of the state space",
        examples=[2, 10],
    )
    parameters: TargetParameters = Field(
        default_factory=TargetParameters,
        description="Family-specific parameters",
    )

    @model_validator(mode="after")
    def validate_parameters(self) -> "TargetConfig":
        """Check that the family receives exactly the parameters it understands."""
        params = self.parameters
        if self.family == "gen_gaussian" and params.beta is None:
            raise ValueError(ERROR_BETA_REQUIRED)
        if self.family == "student_t" and params.k is None:
            raise ValueError(ERROR_K_REQUIRED)
        for name in ("beta", "k", "covariance_diagonal"):
            if getattr(params, name) is not None and name not in _FAMILY_PARAMETERS[self.family]:
                raise ValueError(ERROR_UNUSED_PARAMETER.format(name=name, family=self.family))
        if params.covariance_diagonal is not None:
            if len(params.covariance_diagonal) != self.dimension:
                raise ValueError(ERROR_COVARIANCE_LENGTH)
            if any(value <= 0 for value in params.covariance_diagonal):
                raise ValueError(ERROR_COVARIANCE_POSITIVE)
        return self
