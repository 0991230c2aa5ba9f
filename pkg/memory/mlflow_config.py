"""MLflow configuration for evaluation tracking."""

import os
from pathlib import Path
from typing import Optional

import mlflow

# Default MLflow tracking URI - local file store alongside the history DB
DEFAULT_MLFLOW_DIR = Path(__file__).parent.parent / "data" / "mlruns"

DEFAULT_EXPERIMENT = "pectoral-suppression"


def init_mlflow(tracking_uri: Optional[str] = None) -> str:
    """Point MLflow at the given URI, MLFLOW_TRACKING_URI, or the local store; return the URI used."""
    uri = tracking_uri or os.getenv("MLFLOW_TRACKING_URI") or DEFAULT_MLFLOW_DIR.as_uri()
    mlflow.set_tracking_uri(uri)
    return uri
