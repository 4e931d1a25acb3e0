"""Configuration models for isotropic change-of-variable transforms."""

import math
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field

MIN_POLYNOMIAL_DEGREE = 3


class ExponentialTransformConfig(BaseModel):
    """Radial map exp(b r) - e/3 beyond 1/b, cubic inside; used for t-like tails."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["exp"] = "exp"
    b: float = Field(default=1.0, gt=0, description="Exponential growth rate", examples=[1.0])


class PolynomialTransformConfig(BaseModel):
    """Radial map r + (r - R)^p beyond R, identity inside; used for |x|^beta with beta < 1."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["poly"] = "poly"
    R: float = Field(default=1.0, gt=0, description="Radius of the identity region")
    p: int | None = Field(
        default=None,
        ge=MIN_POLYNOMIAL_DEGREE,
        description="Integer degree; derived from the target's beta when omitted",
        examples=[3, 5],
    )


TransformConfig = Annotated[
    ExponentialTransformConfig | PolynomialTransformConfig, Field(discriminator="kind")
]


def default_polynomial_degree(beta: float | None) -> int:
    """Smallest admissible degree with beta * p > 2, at least 3."""
    if beta is None:
        return MIN_POLYNOMIAL_DEGREE
    return max(MIN_POLYNOMIAL_DEGREE, math.ceil(2.0 / beta) + 1)
