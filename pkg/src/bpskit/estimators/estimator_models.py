"""Report models for trajectory estimators."""

from pydantic import BaseModel, ConfigDict, Field

MIN_BATCHES = 2


class EstimateReport(BaseModel):
    """Point estimate with its batch-means CLT variance."""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "examples": [
                {"estimate": 0.998, "sigma2": 2.1, "batches": 316, "batch_len": 316.4, "ess": 47000.0}
            ]
        },
    )

    estimate: float = Field(..., description="Time average of the test function")
    sigma2: float = Field(..., ge=0, description="Asymptotic variance estimate")
    batches: int = Field(..., ge=MIN_BATCHES, description="Number of batches")
    batch_len: float = Field(..., gt=0, description="Duration of one batch")
    ess: float = Field(..., ge=0, description="Effective sample size T * var / sigma2")

    @property
    def standard_error(self) -> float:
        """sqrt(sigma2 / T) with T = batches * batch_len."""
        return (self.sigma2 / (self.batches * self.batch_len)) ** 0.5
