# Phantoms, single-image pipeline, batch evaluation and CSV export
from .export import read_metrics_csv, summarize_reports, write_metrics_csv, write_summary_csv
from .phantom import Phantom, PhantomSpec, generate_phantom, phantom_series, write_phantoms
from .pipeline import Suppression, load_image, suppress
from .run_manager import RunManager, score_mask

__all__ = [
    "read_metrics_csv",
    "summarize_reports",
    "write_metrics_csv",
    "write_summary_csv",
    "Phantom",
    "PhantomSpec",
    "generate_phantom",
    "phantom_series",
    "write_phantoms",
    "Suppression",
    "load_image",
    "suppress",
    "RunManager",
    "score_mask",
]
