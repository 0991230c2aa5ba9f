"""Batch evaluation of segmentation methods against ground truth."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import TYPE_CHECKING, Callable, Iterable, Optional, Union

import numpy as np
from sqlmodel import select

from core.config import SuppressionConfig
from core.database import get_session, init_db
from core.errors import (
    EmptySet,
    MetricError,
    NoInputs,
    NoOverlappingRows,
    PectoralError,
    StageError,
    UnwritableOutput,
    ZeroDenominator,
)
from core.models import EvaluationRun, MetricRecord, MetricReport
from imaging.pgm import load_mask, save_mask
from imaging.types import BinaryMask
from metrics.distance import boundary_mae, mask_hausdorff
from metrics.overlap import jaccard, tanimoto
from metrics.partition import GroundTruthSet, Segmentation, lce, pri
from segmentation.hybrid import MethodId

from .export import sort_reports, write_metrics_csv
from .pipeline import load_image, prepare, segment

if TYPE_CHECKING:
    from memory.run_tracker import RunTracker

logger = logging.getLogger(__name__)

GT_SUFFIX = "_gt"


def list_images(input_dir: Path) -> list[Path]:
    """PGM files directly inside input_dir, sorted by name."""
    if not input_dir.is_dir():
        raise NoInputs(f"{input_dir} is not a directory")
    images = sorted(p for p in input_dir.iterdir() if p.is_file() and p.suffix.lower() == ".pgm")
    if not images:
        raise NoInputs(f"no PGM file in {input_dir}")
    return images


def find_ground_truth(image_path: Path, gt_dir: Path) -> Optional[Path]:
    """<stem>_gt.pgm in gt_dir, else a file with the image's own name."""
    for candidate in (gt_dir / f"{image_path.stem}{GT_SUFFIX}.pgm", gt_dir / image_path.name):
        if candidate.is_file():
            return candidate
    return None


def score_mask(pred: BinaryMask, truth: BinaryMask) -> dict[str, Optional[float]]:
    """
    The five measures of a predicted pectoral mask against its ground truth.

    Region measures compare the two-label partitions (pectoral vs rest).
    MAE and Hausdorff are left out (None) when undefined for the pair.
    """
    if pred.shape != truth.shape:
        raise MetricError(f"mask shape {pred.shape} does not match ground truth {truth.shape}")
    seg = Segmentation.from_mask(pred)
    reference = Segmentation.from_mask(truth)
    scores: dict[str, Optional[float]] = {
        "pri": pri(seg, GroundTruthSet.of([reference])) if seg.n_pixels >= 2 else None,
        "lce": lce(seg, reference),
    }
    try:
        scores["tc"] = tanimoto(pred.ravel().astype(np.float64), truth.ravel().astype(np.float64))
    except ZeroDenominator:
        scores["tc"] = jaccard(pred, truth)
    try:
        scores["mae"] = boundary_mae(pred, truth)
    except NoOverlappingRows:
        scores["mae"] = None
    try:
        scores["hd"] = mask_hausdorff(pred, truth)
    except EmptySet:
        scores["hd"] = None
    return scores


class RunManager:
    """Runs the suppression methods over a directory of mammograms and scores them."""

    def __init__(
        self,
        config: Optional[SuppressionConfig] = None,
        tracker: Optional[RunTracker] = None,
    ):
        self.config = config or SuppressionConfig()
        self.tracker = tracker

    def evaluate_batch(
        self,
        input_dir: Union[str, Path],
        gt_dir: Optional[Union[str, Path]],
        methods: Iterable[Union[MethodId, str]],
        out_csv: Union[str, Path],
        mask_dir: Optional[Union[str, Path]] = None,
        on_progress: Optional[Callable[[int, int], None]] = None,
    ) -> list[MetricReport]:
        """
        Evaluate every image with every method and write the metrics CSV.

        Calls on_progress(completed, total) after each image. Images that
        cannot be decoded are skipped with a warning; a method that fails on
        a readable image yields a row with every score missing.
        """
        input_dir = Path(input_dir)
        gt_path = Path(gt_dir) if gt_dir is not None else None
        out_csv = Path(out_csv)
        mask_path = Path(mask_dir) if mask_dir is not None else out_csv.parent / "masks"
        methods = sorted({MethodId(m) for m in methods}, key=lambda m: m.order)

        images = list_images(input_dir)
        try:
            mask_path.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise UnwritableOutput(f"cannot create mask directory {mask_path}: {e}") from e

        def evaluate(image_path: Path) -> Optional[list[MetricReport]]:
            return self._evaluate_image(image_path, gt_path, methods, mask_path)

        per_image: list[Optional[list[MetricReport]]] = []
        total = len(images)
        if self.config.workers > 1:
            with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                futures = [pool.submit(evaluate, path) for path in images]
                for completed, future in enumerate(as_completed(futures), start=1):
                    per_image.append(future.result())
                    if on_progress:
                        on_progress(completed, total)
        else:
            for completed, path in enumerate(images, start=1):
                per_image.append(evaluate(path))
                if on_progress:
                    on_progress(completed, total)

        failed = sum(1 for rows in per_image if rows is None)
        reports = sort_reports(report for rows in per_image if rows for report in rows)
        write_metrics_csv(reports, out_csv)
        logger.info(
            "evaluated %d image(s) x %d method(s), %d unreadable -> %s",
            total - failed,
            len(methods),
            failed,
            out_csv,
        )

        history_run_id = self._record_history(input_dir, gt_path, methods, reports, total, failed)
        if self.tracker:
            try:
                self.tracker.log_evaluation(
                    reports,
                    [m.value for m in methods],
                    image_count=total,
                    failed_count=failed,
                    history_run_id=history_run_id,
                )
            except Exception as e:
                logger.warning("MLflow tracking failed: %s", e)  # tracking failure must not break the batch
        return reports

    def _evaluate_image(
        self,
        image_path: Path,
        gt_dir: Optional[Path],
        methods: list[MethodId],
        mask_dir: Path,
    ) -> Optional[list[MetricReport]]:
        image_id = image_path.stem
        try:
            img = load_image(image_path)
        except StageError as e:
            logger.warning("skipping %s: %s", image_path.name, e)
            return None

        truth = self._load_truth(image_path, gt_dir, img.shape)
        try:
            prepared = prepare(img)
        except StageError as e:
            logger.warning("%s: preprocessing failed, all methods unscored: %s", image_id, e)
            return [MetricReport(image_id=image_id, method=m.value) for m in methods]

        reports = []
        for method in methods:
            try:
                mask = segment(prepared, method, self.config)
            except StageError as e:
                logger.warning("%s/%s failed: %s", image_id, method.value, e)
                reports.append(MetricReport(image_id=image_id, method=method.value))
                continue

            mask_file = mask_dir / f"{image_id}_{method.file_tag}.pgm"
            try:
                save_mask(mask_file, mask)
            except OSError as e:
                raise UnwritableOutput(f"cannot write {mask_file}: {e}") from e

            scores = {}
            if truth is not None:
                try:
                    scores = score_mask(mask, truth)
                except MetricError as e:
                    logger.warning("%s/%s could not be scored: %s", image_id, method.value, e)
            reports.append(MetricReport(image_id=image_id, method=method.value, **scores))
        return reports

    def _load_truth(
        self,
        image_path: Path,
        gt_dir: Optional[Path],
        shape: tuple[int, int],
    ) -> Optional[BinaryMask]:
        if gt_dir is None:
            return None
        gt_file = find_ground_truth(image_path, gt_dir)
        if gt_file is None:
            logger.warning("no ground truth for %s in %s", image_path.name, gt_dir)
            return None
        try:
            truth = load_mask(gt_file)
        except (PectoralError, OSError) as e:
            logger.warning("unreadable ground truth %s: %s", gt_file, e)
            return None
        if truth.shape != shape:
            logger.warning("ground truth %s is %s, image is %s", gt_file.name, truth.shape, shape)
            return None
        return truth

    def _record_history(
        self,
        input_dir: Path,
        gt_dir: Optional[Path],
        methods: list[MethodId],
        reports: list[MetricReport],
        image_count: int,
        failed_count: int,
    ) -> Optional[str]:
        """Store the run in the history database when one is configured."""
        db_path = self.config.database_path
        if db_path is None:
            return None
        try:
            init_db(db_path)
            run = EvaluationRun(
                input_dir=str(input_dir),
                gt_dir=str(gt_dir) if gt_dir else None,
                methods=",".join(m.value for m in methods),
                image_count=image_count,
                failed_count=failed_count,
            )
            with get_session(db_path) as db:
                db.add(run)
                for report in reports:
                    db.add(MetricRecord(run_id=run.id, **report.model_dump()))
                db.commit()
                return run.id
        except Exception as e:
            logger.warning("could not record evaluation history in %s: %s", db_path, e)
            return None

    def list_runs(self) -> list[EvaluationRun]:
        """Recorded evaluations, oldest first."""
        if self.config.database_path is None:
            return []
        init_db(self.config.database_path)
        with get_session(self.config.database_path) as db:
            runs = db.exec(select(EvaluationRun).order_by(EvaluationRun.created_at)).all()
            for run in runs:
                db.expunge(run)
            return list(runs)

    def get_reports(self, run_id: str) -> list[MetricReport]:
        """Reports of one recorded evaluation, in CSV row order."""
        if self.config.database_path is None:
            return []
        init_db(self.config.database_path)
        with get_session(self.config.database_path) as db:
            records = db.exec(select(MetricRecord).where(MetricRecord.run_id == run_id)).all()
            return sort_reports(record.to_report() for record in records)
