"""Command-line entry point for pectoral muscle suppression and evaluation."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv

from core.config import SuppressionConfig
from core.errors import InvalidConfig, InvalidSpec, NoInputs, PectoralError, StageError, UnwritableOutput
from segmentation.hybrid import MethodId

logger = logging.getLogger("pectoral")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PROCESSING = 3

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with EXIT_USAGE."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in (0, 1)")
    return value


def _positive(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"{text} must be > 0")
    return value


def _at_least_one(text: str) -> float:
    value = float(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return value


def _non_negative(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} must be >= 0")
    return value


def _methods(text: str) -> list[MethodId]:
    try:
        return MethodId.parse_list(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _add_method_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("method parameters")
    group.add_argument("--crossover", type=float, help="fuzzy membership 0.5 intensity")
    group.add_argument("--bandwidth", type=_positive, help="fuzzy transition half-width")
    group.add_argument("--int-exponent", type=_at_least_one, help="intensification exponent (>= 1)")
    group.add_argument("--defuzz-threshold", type=_fraction, help="membership cut in (0, 1)")
    group.add_argument("--delta-frac", type=_non_negative, help="CCL discontinuity step as a fraction of maxval")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="pectoral", description="Pectoral muscle suppression for MLO mammograms")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    run = commands.add_parser("suppress", help="remove the pectoral muscle from one image")
    run.add_argument("--input", required=True, type=Path)
    run.add_argument("--method", required=True, choices=[m.value for m in MethodId])
    run.add_argument("--out-image", required=True, type=Path)
    run.add_argument("--out-mask", required=True, type=Path)
    _add_method_options(run)

    evaluate = commands.add_parser("eval", help="score methods over a directory of images")
    evaluate.add_argument("--input-dir", required=True, type=Path)
    evaluate.add_argument("--gt-dir", type=Path)
    evaluate.add_argument("--methods", required=True, type=_methods, help="comma list or 'all'")
    evaluate.add_argument("--out", required=True, type=Path, help="metrics CSV")
    evaluate.add_argument("--mask-dir", type=Path, help="predicted masks (default: <out dir>/masks)")
    evaluate.add_argument("--workers", type=int, help="images processed concurrently")
    evaluate.add_argument("--history-db", type=Path, help="record the run in this SQLite file")
    evaluate.add_argument("--track", action="store_true", help="log the run to MLflow")
    _add_method_options(evaluate)

    phantom = commands.add_parser("phantom", help="write synthetic phantoms with ground truth")
    phantom.add_argument("--count", required=True, type=int)
    phantom.add_argument("--seed", required=True, type=int)
    phantom.add_argument("--out-dir", required=True, type=Path)
    phantom.add_argument("--width", type=int)
    phantom.add_argument("--height", type=int)
    phantom.add_argument("--noise-sigma", type=float)
    phantom.add_argument("--maxval", type=int)

    summary = commands.add_parser("summary", help="per-method means of a metrics CSV")
    summary.add_argument("--metrics", required=True, type=Path)
    summary.add_argument("--out", required=True, type=Path)
    summary.add_argument("--plot", type=Path, help="bar chart PNG")
    summary.add_argument("--tables-dir", type=Path, help="write one image-by-method grid per measure here")
    summary.add_argument(
        "--compare-reference",
        action="store_true",
        help="draw the published ten-image means beside each method in the plot",
    )
    return parser


def _config(args: argparse.Namespace) -> SuppressionConfig:
    return SuppressionConfig.from_env().with_overrides(
        delta_frac=args.delta_frac,
        crossover=args.crossover,
        bandwidth=args.bandwidth,
        int_exponent=args.int_exponent,
        defuzz_threshold=args.defuzz_threshold,
        workers=getattr(args, "workers", None),
        database_path=getattr(args, "history_db", None),
    )


def run_suppress(args: argparse.Namespace) -> int:
    from harness.pipeline import load_image, suppress
    from imaging.pgm import save_mask, save_pgm

    config = _config(args)
    try:
        img = load_image(args.input)
    except StageError as e:
        logger.error("%s", e)
        return EXIT_IO

    try:
        result = suppress(img, args.method, config)
    except StageError as e:
        logger.error("%s", e)
        return EXIT_PROCESSING

    try:
        args.out_image.parent.mkdir(parents=True, exist_ok=True)
        args.out_mask.parent.mkdir(parents=True, exist_ok=True)
        save_pgm(args.out_image, result.image)
        save_mask(args.out_mask, result.mask)
    except OSError as e:
        logger.error("cannot write output: %s", e)
        return EXIT_IO
    logger.info("%s: %d pectoral pixels removed with %s", args.input.name, int(result.mask.sum()), args.method)
    return EXIT_OK


def _tracker(config: SuppressionConfig):
    from memory.mlflow_config import init_mlflow
    from memory.run_tracker import RunTracker

    try:
        init_mlflow(config.tracking_uri)
        return RunTracker()
    except Exception as e:
        logger.warning("MLflow tracking disabled: %s", e)
        return None


def run_eval(args: argparse.Namespace) -> int:
    from harness.run_manager import RunManager

    config = _config(args)
    if config.workers < 1:
        logger.error("--workers must be >= 1")
        return EXIT_USAGE
    tracker = _tracker(config) if args.track else None
    manager = RunManager(config, tracker=tracker)

    def on_progress(completed: int, total: int) -> None:
        logger.debug("processed %d/%d images", completed, total)

    try:
        reports = manager.evaluate_batch(
            args.input_dir,
            args.gt_dir,
            args.methods,
            args.out,
            mask_dir=args.mask_dir,
            on_progress=on_progress,
        )
    except (NoInputs, UnwritableOutput) as e:
        logger.error("%s", e)
        return EXIT_IO
    logger.info("wrote %d rows to %s", len(reports), args.out)
    return EXIT_OK


def run_phantom(args: argparse.Namespace) -> int:
    from harness.phantom import phantom_series, write_phantoms

    overrides = {
        "width": args.width,
        "height": args.height,
        "noise_sigma": args.noise_sigma,
        "maxval": args.maxval,
    }
    try:
        specs = phantom_series(args.count, args.seed, **{k: v for k, v in overrides.items() if v is not None})
    except InvalidSpec as e:
        logger.error("invalid phantom parameters: %s", e)
        return EXIT_USAGE
    try:
        paths = write_phantoms(specs, args.out_dir)
    except UnwritableOutput as e:
        logger.error("%s", e)
        return EXIT_IO
    logger.info("wrote %d phantoms to %s", len(paths), args.out_dir)
    return EXIT_OK


def run_summary(args: argparse.Namespace) -> int:
    from harness.export import (
        measure_tables,
        read_metrics_csv,
        read_reference_tables,
        summarize_reports,
        write_measure_tables,
        write_summary_csv,
    )

    try:
        frame = read_metrics_csv(args.metrics)
    except (OSError, ValueError) as e:
        logger.error("cannot read %s: %s", args.metrics, e)
        return EXIT_IO

    summary = summarize_reports(frame)
    try:
        write_summary_csv(summary, args.out)
        if args.tables_dir:
            write_measure_tables(measure_tables(frame), args.tables_dir)
        if args.plot:
            from harness.plots import plot_method_summary

            reference = summarize_reports(read_reference_tables()) if args.compare_reference else None
            plot_method_summary(summary, args.plot, reference=reference)
    except UnwritableOutput as e:
        logger.error("%s", e)
        return EXIT_IO
    logger.info("summarized %d method(s) into %s", len(summary), args.out)
    return EXIT_OK


COMMANDS = {
    "suppress": run_suppress,
    "eval": run_eval,
    "phantom": run_phantom,
    "summary": run_summary,
}


def configure_logging(verbose: bool = False) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except InvalidConfig as e:
        logger.error("invalid configuration: %s", e)
        return EXIT_USAGE
    except PectoralError as e:
        logger.error("%s", e)
        return EXIT_PROCESSING


if __name__ == "__main__":
    sys.exit(main())
