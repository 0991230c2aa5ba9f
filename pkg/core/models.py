"""SQLModel entity definitions for evaluation reports and run history."""

from datetime import datetime, timezone
from typing import Optional
from uuid import uuid4

from sqlmodel import Field, SQLModel

METRIC_COLUMNS = ("pri", "lce", "tc", "mae", "hd")


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class MetricReport(SQLModel):
    """Scores of one method on one image; None means not available."""

    image_id: str = Field(index=True)
    method: str = Field(index=True)
    pri: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    lce: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    tc: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    mae: Optional[float] = Field(default=None, ge=0.0)
    hd: Optional[float] = Field(default=None, ge=0.0)

    @property
    def has_scores(self) -> bool:
        return any(getattr(self, name) is not None for name in METRIC_COLUMNS)


class EvaluationRun(SQLModel, table=True):
    """One invocation of the batch evaluation."""

    id: str = Field(default_factory=lambda: str(uuid4()), primary_key=True)
    input_dir: str
    gt_dir: Optional[str] = None
    methods: str  # comma-separated method names
    image_count: int = 0
    failed_count: int = 0
    created_at: datetime = Field(default_factory=_utcnow)


class MetricRecord(MetricReport, table=True):
    """A MetricReport persisted under its evaluation run."""

    id: str = Field(default_factory=lambda: str(uuid4()), primary_key=True)
    run_id: str = Field(foreign_key="evaluationrun.id", index=True)

    def to_report(self) -> MetricReport:
        return MetricReport(
            image_id=self.image_id,
            method=self.method,
            **{name: getattr(self, name) for name in METRIC_COLUMNS},
        )
