"""CSV export of metric reports and per-method summaries."""

from pathlib import Path
from typing import Iterable, Union

import pandas as pd

from core.errors import UnwritableOutput
from core.models import METRIC_COLUMNS, MetricReport
from segmentation.hybrid import MethodId

NA_MARKER = "NA"
FLOAT_FORMAT = "%.6f"
CSV_COLUMNS = ["image", "method", *METRIC_COLUMNS]
REFERENCE_CSV = Path(__file__).parent / "data" / "reference_tables.csv"


def _method_order(method: str) -> int:
    try:
        return MethodId(method).order
    except ValueError:
        return len(MethodId)


def sort_reports(reports: Iterable[MetricReport]) -> list[MetricReport]:
    """Image name ascending, then methods in their fixed order."""
    return sorted(reports, key=lambda r: (r.image_id, _method_order(r.method)))


def reports_to_frame(reports: Iterable[MetricReport]) -> pd.DataFrame:
    rows = [
        {"image": r.image_id, "method": r.method, **{name: getattr(r, name) for name in METRIC_COLUMNS}}
        for r in reports
    ]
    frame = pd.DataFrame(rows, columns=CSV_COLUMNS)
    frame[list(METRIC_COLUMNS)] = frame[list(METRIC_COLUMNS)].astype("float64")
    return frame


def _write_frame(frame: pd.DataFrame, out_path: Union[str, Path]) -> Path:
    out_path = Path(out_path)
    try:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(
            out_path,
            index=False,
            float_format=FLOAT_FORMAT,
            na_rep=NA_MARKER,
            lineterminator="\n",
        )
    except OSError as e:
        raise UnwritableOutput(f"cannot write {out_path}: {e}") from e
    return out_path


def write_metrics_csv(reports: Iterable[MetricReport], out_path: Union[str, Path]) -> Path:
    """Write one row per (image, method): image,method,pri,lce,tc,mae,hd."""
    return _write_frame(reports_to_frame(sort_reports(reports)), out_path)


def read_metrics_csv(path: Union[str, Path]) -> pd.DataFrame:
    frame = pd.read_csv(path, na_values=[NA_MARKER], keep_default_na=False, dtype={"image": str})
    missing = [column for column in CSV_COLUMNS if column not in frame.columns]
    if missing:
        raise ValueError(f"{path} lacks columns: {', '.join(missing)}")
    return frame


def summarize_reports(frame: pd.DataFrame) -> pd.DataFrame:
    """
    Mean of each measure per method, ignoring NA cells.

    Also counts rows per method and rows with at least one score, so a
    method that failed everywhere still shows up (with NA means).
    """
    metrics = list(METRIC_COLUMNS)
    frame = frame.assign(_scored=frame[metrics].notna().any(axis=1))
    grouped = frame.groupby("method", sort=False)
    summary = grouped[metrics].mean()
    summary.insert(0, "images", grouped.size())
    summary.insert(1, "scored", grouped["_scored"].sum().astype("int64"))
    summary = summary.reset_index()
    summary["_order"] = summary["method"].map(_method_order)
    return summary.sort_values(["_order", "method"]).drop(columns="_order").reset_index(drop=True)


def write_summary_csv(summary: pd.DataFrame, out_path: Union[str, Path]) -> Path:
    return _write_frame(summary, out_path)


def measure_tables(frame: pd.DataFrame) -> dict[str, pd.DataFrame]:
    """
    One grid per measure: images as rows, methods as columns.

    Rows are sorted by image name and columns follow the fixed method
    order (unknown method names go last, alphabetically). Missing cells
    stay NaN and are written as NA.
    """
    methods = sorted(frame["method"].unique(), key=lambda m: (_method_order(m), m))
    images = sorted(frame["image"].unique())
    tables = {}
    for measure in METRIC_COLUMNS:
        grid = frame.pivot(index="image", columns="method", values=measure)
        grid = grid.reindex(index=images, columns=methods)
        grid.columns.name = None
        tables[measure] = grid.reset_index()
    return tables


def write_measure_tables(tables: dict[str, pd.DataFrame], out_dir: Union[str, Path]) -> list[Path]:
    """Write each grid as <measure>.csv under out_dir."""
    out_dir = Path(out_dir)
    return [_write_frame(grid, out_dir / f"{measure}.csv") for measure, grid in tables.items()]


def read_reference_tables() -> pd.DataFrame:
    """Published per-image scores of the six methods on ten MIAS images, in metrics CSV layout."""
    return read_metrics_csv(REFERENCE_CSV)
