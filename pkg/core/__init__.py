# Shared foundations: errors, configuration, persistence
from .config import SuppressionConfig
from .database import get_engine, get_session, init_db
from .errors import PectoralError, StageError
from .models import METRIC_COLUMNS, EvaluationRun, MetricRecord, MetricReport

__all__ = [
    "SuppressionConfig",
    "get_engine",
    "get_session",
    "init_db",
    "PectoralError",
    "StageError",
    "METRIC_COLUMNS",
    "EvaluationRun",
    "MetricRecord",
    "MetricReport",
]
