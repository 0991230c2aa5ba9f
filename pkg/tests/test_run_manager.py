"""Tests for batch evaluation, scoring and the evaluation history."""

import shutil

import numpy as np
import pytest

from core.config import SuppressionConfig
from core.errors import MetricError, NoInputs
from core.models import METRIC_COLUMNS
from harness.export import read_metrics_csv
from harness.run_manager import RunManager, find_ground_truth, list_images, score_mask
from segmentation.hybrid import MethodId


def test_score_identical_masks():
    mask = np.zeros((10, 10), dtype=bool)
    mask[:4, :3] = True
    scores = score_mask(mask, mask)
    assert scores == {"pri": 1.0, "lce": 0.0, "tc": 1.0, "mae": 0.0, "hd": 0.0}


def test_score_empty_prediction():
    truth = np.zeros((6, 6), dtype=bool)
    truth[:2, :2] = True
    scores = score_mask(np.zeros((6, 6), dtype=bool), truth)
    assert scores["tc"] == 0.0
    assert scores["mae"] is None
    assert scores["hd"] is None
    assert 0.0 <= scores["pri"] <= 1.0


def test_score_both_empty_is_perfect_overlap():
    empty = np.zeros((4, 4), dtype=bool)
    assert score_mask(empty, empty)["tc"] == 1.0


def test_score_shape_mismatch():
    with pytest.raises(MetricError):
        score_mask(np.zeros((3, 3), dtype=bool), np.zeros((3, 4), dtype=bool))


def test_list_images(tmp_path, phantom_dir):
    assert [p.name for p in list_images(phantom_dir)] == ["phantom_000.pgm", "phantom_001.pgm"]
    with pytest.raises(NoInputs):
        list_images(tmp_path / "nowhere")
    (tmp_path / "empty").mkdir()
    with pytest.raises(NoInputs):
        list_images(tmp_path / "empty")


def test_find_ground_truth(phantom_dir):
    image = phantom_dir / "phantom_000.pgm"
    assert find_ground_truth(image, phantom_dir / "gt").name == "phantom_000_gt.pgm"
    assert find_ground_truth(image, phantom_dir) == image
    assert find_ground_truth(phantom_dir / "other.pgm", phantom_dir / "gt") is None


def test_two_phantoms_all_methods(tmp_path, phantom_dir):
    progress = []
    out = tmp_path / "run" / "metrics.csv"
    reports = RunManager().evaluate_batch(
        phantom_dir,
        phantom_dir / "gt",
        list(MethodId),
        out,
        on_progress=lambda done, total: progress.append((done, total)),
    )
    assert len(reports) == 12
    assert progress == [(1, 2), (2, 2)]
    assert [(r.image_id, r.method) for r in reports[:6]] == [("phantom_000", m.value) for m in MethodId]
    for report in reports:
        assert all(getattr(report, name) is not None for name in METRIC_COLUMNS)
        assert report.tc >= 0.8

    frame = read_metrics_csv(out)
    assert len(frame) == 12
    assert not frame[list(METRIC_COLUMNS)].isna().any().any()
    masks = sorted(p.name for p in (tmp_path / "run" / "masks").iterdir())
    assert len(masks) == 12
    assert "phantom_001_fuzzy_line.pgm" in masks


def test_without_ground_truth(tmp_path, phantom_dir):
    out = tmp_path / "metrics.csv"
    mask_dir = tmp_path / "masks"
    reports = RunManager().evaluate_batch(phantom_dir, None, ["ccl", "line"], out, mask_dir=mask_dir)
    assert len(reports) == 4
    assert not any(r.has_scores for r in reports)
    lines = out.read_text().splitlines()
    assert lines[1] == "phantom_000,ccl,NA,NA,NA,NA,NA"
    assert len(list(mask_dir.iterdir())) == 4


@pytest.mark.parametrize(
    "payload",
    [b"P5\n10 10\n255\n" + bytes(7), b"P2\n1 1\n255\n99999999999999999999\n"],
)
def test_corrupt_image_is_skipped(tmp_path, phantom_dir, caplog, payload):
    (phantom_dir / "broken.pgm").write_bytes(payload)
    out = tmp_path / "metrics.csv"
    reports = RunManager().evaluate_batch(phantom_dir, phantom_dir / "gt", ["fuzzy"], out)
    assert {r.image_id for r in reports} == {"phantom_000", "phantom_001"}
    assert "broken.pgm" in caplog.text


def test_failing_method_gives_unscored_row(tmp_path, phantom_dir):
    # crossover above the brightest pixel leaves the fuzzy method without a candidate
    config = SuppressionConfig(crossover=254.0, bandwidth=1.0)
    reports = RunManager(config).evaluate_batch(
        phantom_dir, phantom_dir / "gt", ["ccl", "fuzzy"], tmp_path / "metrics.csv"
    )
    by_method = {(r.image_id, r.method): r for r in reports}
    assert not by_method[("phantom_000", "fuzzy")].has_scores
    assert by_method[("phantom_000", "ccl")].has_scores


def test_csv_is_byte_identical_across_runs(tmp_path, phantom_dir):
    first, second, threaded = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    RunManager().evaluate_batch(phantom_dir, phantom_dir / "gt", list(MethodId), first)
    RunManager().evaluate_batch(phantom_dir, phantom_dir / "gt", list(MethodId), second)
    RunManager(SuppressionConfig(workers=2)).evaluate_batch(phantom_dir, phantom_dir / "gt", list(MethodId), threaded)
    assert first.read_bytes() == second.read_bytes() == threaded.read_bytes()


def test_history_database(tmp_path, phantom_dir):
    manager = RunManager(SuppressionConfig(database_path=tmp_path / "history.db"))
    assert manager.list_runs() == []
    reports = manager.evaluate_batch(phantom_dir, phantom_dir / "gt", ["ccl"], tmp_path / "metrics.csv")
    runs = manager.list_runs()
    assert len(runs) == 1
    assert runs[0].methods == "ccl"
    assert runs[0].image_count == 2
    stored = manager.get_reports(runs[0].id)
    assert [r.model_dump() for r in stored] == [r.model_dump() for r in reports]


def test_history_is_optional(tmp_path, phantom_dir):
    manager = RunManager()
    manager.evaluate_batch(phantom_dir, phantom_dir / "gt", ["line"], tmp_path / "metrics.csv")
    assert manager.list_runs() == []
    assert manager.get_reports("missing") == []


def test_tracker_failure_does_not_break_the_batch(tmp_path, phantom_dir):
    class BrokenTracker:
        def log_evaluation(self, *args, **kwargs):
            raise RuntimeError("tracking server down")

    out = tmp_path / "metrics.csv"
    reports = RunManager(tracker=BrokenTracker()).evaluate_batch(phantom_dir, phantom_dir / "gt", ["ccl"], out)
    assert len(reports) == 2
    assert out.exists()


def test_copied_directory_gives_same_rows(tmp_path, phantom_dir):
    copy = tmp_path / "copy"
    shutil.copytree(phantom_dir, copy)
    a = RunManager().evaluate_batch(phantom_dir, phantom_dir / "gt", ["ccl"], tmp_path / "a.csv")
    b = RunManager().evaluate_batch(copy, copy / "gt", ["ccl"], tmp_path / "b.csv")
    assert [r.model_dump() for r in a] == [r.model_dump() for r in b]
