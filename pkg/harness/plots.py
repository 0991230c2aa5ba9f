"""Per-method summary figure."""

from pathlib import Path
from typing import Optional, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from core.errors import UnwritableOutput  # noqa: E402
from core.models import METRIC_COLUMNS  # noqa: E402

MEASURE_TITLES = {
    "pri": "PRI",
    "lce": "LCE",
    "tc": "Tanimoto",
    "mae": "MAE (px)",
    "hd": "Hausdorff (px)",
}


def plot_method_summary(
    summary: pd.DataFrame,
    out_path: Union[str, Path],
    reference: Optional[pd.DataFrame] = None,
) -> Path:
    """
    One bar panel per measure, methods along the x axis; NA means are left blank.

    When a reference summary is given its means are drawn as a second bar
    beside each method that appears in both.
    """
    methods = summary["method"].tolist()
    positions = np.arange(len(methods))
    width = 0.8 if reference is None else 0.4
    if reference is not None:
        reference = reference.set_index("method").reindex(methods)
    fig, axes = plt.subplots(1, len(METRIC_COLUMNS), figsize=(3.2 * len(METRIC_COLUMNS), 3.6))
    for ax, measure in zip(axes, METRIC_COLUMNS):
        values = summary[measure].to_numpy(dtype=np.float64)
        ax.bar(positions, np.nan_to_num(values, nan=0.0), width=width, color="tab:blue", label="measured")
        if reference is not None:
            published = reference[measure].to_numpy(dtype=np.float64)
            ax.bar(positions + width, np.nan_to_num(published, nan=0.0), width=width, color="tab:gray", label="reference")
        ax.set_title(MEASURE_TITLES[measure])
        ax.set_xticks(positions if reference is None else positions + width / 2)
        ax.set_xticklabels(methods, rotation=45, ha="right", fontsize=8)
        if measure in ("pri", "lce", "tc"):
            ax.set_ylim(0.0, 1.0)
    if reference is not None:
        axes[0].legend(fontsize=8)
    fig.tight_layout()

    out_path = Path(out_path)
    try:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out_path, dpi=120)
    except OSError as e:
        raise UnwritableOutput(f"cannot write {out_path}: {e}") from e
    finally:
        plt.close(fig)
    return out_path
