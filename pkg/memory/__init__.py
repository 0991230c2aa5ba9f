# Memory layer - MLflow tracking of evaluation runs
from .mlflow_config import init_mlflow
from .run_tracker import RunTracker

__all__ = [
    "init_mlflow",
    "RunTracker",
]
