"""MLflow logging of batch evaluations."""

import logging
from typing import Optional, Sequence

import mlflow

from core.models import METRIC_COLUMNS, MetricReport

from .mlflow_config import DEFAULT_EXPERIMENT

logger = logging.getLogger(__name__)


def _metric_key(method: str, measure: str) -> str:
    # MLflow metric keys reject '+'
    return f"{method.replace('+', '_')}.{measure}"


class RunTracker:
    """
    Logs each batch evaluation as one MLflow run.

    Parameters hold the selected methods and image counts. Every score is a
    metric named <method>.<measure> stepped by image index, and the
    per-method means are logged under <method>.<measure>.mean.
    """

    def __init__(self, experiment_name: str = DEFAULT_EXPERIMENT):
        self.experiment_name = experiment_name
        mlflow.set_experiment(experiment_name)

    def log_evaluation(
        self,
        reports: Sequence[MetricReport],
        methods: Sequence[str],
        image_count: int,
        failed_count: int = 0,
        history_run_id: Optional[str] = None,
    ) -> str:
        """Log one evaluation; returns the MLflow run id."""
        images = sorted({r.image_id for r in reports})
        step_of = {image: index for index, image in enumerate(images)}
        sums: dict[str, list[float]] = {}

        with mlflow.start_run(run_name="evaluate_batch") as run:
            params = {
                "methods": ",".join(methods),
                "image_count": image_count,
                "failed_count": failed_count,
            }
            if history_run_id:
                params["history_run_id"] = history_run_id
            mlflow.log_params(params)

            for report in reports:
                for measure in METRIC_COLUMNS:
                    value = getattr(report, measure)
                    if value is None:
                        continue
                    key = _metric_key(report.method, measure)
                    mlflow.log_metric(key, value, step=step_of[report.image_id])
                    sums.setdefault(key, []).append(value)

            means = {f"{key}.mean": sum(values) / len(values) for key, values in sums.items()}
            if means:
                mlflow.log_metrics(means)
            run_id = run.info.run_id

        logger.info("logged evaluation to MLflow run %s", run_id)
        return run_id
