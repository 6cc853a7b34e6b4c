"""Command line interface.

Every command reads page-graph files (``*.page.json``), writes deterministic JSON and text files
and a ``manifest.json`` holding the effective configuration. Warnings go to standard error.
Exit codes: 0 when every input was processed, 1 when some failed, 2 on usage errors.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from magipipe.__version__ import __version__
from magipipe.association.mining import mine_character_pairs
from magipipe.association.mining import mine_text_pairs
from magipipe.config import RunConfig
from magipipe.config import load_run_config
from magipipe.exceptions import InvalidConfigError
from magipipe.exceptions import InvalidPathError
from magipipe.exceptions import MissingEmbeddingsError
from magipipe.exceptions import PageGraphFormatError
from magipipe.logger import set_logging_level
from magipipe.metrics.evaluation import evaluate_dataset
from magipipe.metrics.evaluation import format_report_table
from magipipe.ordering.reading_order import reading_order
from magipipe.page.annotation import PageAnnotation
from magipipe.page.annotation import dump_page_annotation
from magipipe.page.annotation import load_page_annotation
from magipipe.page.assignment import assign_boxes_to_panels
from magipipe.page.page_graph import PageGraph
from magipipe.page.page_graph import dump_page_graph
from magipipe.page.page_graph import load_page_graph
from magipipe.pipeline import transcribe_page
from magipipe.schemas import SimilaritySource
from magipipe.schemas import SpeakerSource
from magipipe.serializers import JsonSerializer
from magipipe.synth.random_page import generate_random_page
from magipipe.transcript import render

logger = logging.getLogger(__name__)

PAGE_SUFFIX = ".page.json"
ANNOTATION_SUFFIX = ".annotation.json"
MANIFEST_FILE = "manifest.json"
REPORT_FILE = "eval_report.json"

EXIT_OK = 0
EXIT_PARTIAL_FAILURE = 1
EXIT_USAGE = 2

# command line flag -> RunConfig field
_OVERRIDES = {
    "tau": "tau",
    "confidence_cutoff": "confidence_cutoff",
    "epsilon": "epsilon_fraction",
    "erosion_step": "erosion_step_fraction",
    "max_erosion_iters": "max_erosion_iters",
    "iou": "iou_threshold",
    "top_k": "top_k",
    "seed": "seed",
    "sweep_tau": "threshold_sweep",
    "panel_markers": "emit_panel_markers",
    "baseline": "speaker_baseline",
    "similarity": "similarity",
    "count": "count",
    "max_depth": "max_depth",
    "noise": "noise",
}


def _file_name(page_id: str) -> str:
    return page_id.replace("/", "_").replace("\\", "_")


def _collect(paths: Sequence[Path], suffix: str) -> List[Path]:
    """Files given directly, plus the files ending with ``suffix`` of the given directories."""
    files: List[Path] = []
    for path in paths:
        if path.is_dir():
            files.extend(sorted(path.glob(f"*{suffix}")))
        else:
            files.append(path)
    return files


def _load_pages(paths: Sequence[Path]) -> Tuple[List[Tuple[Path, PageGraph]], List[Dict[str, Any]]]:
    pages, failures = [], []
    for path in _collect(paths, PAGE_SUFFIX):
        try:
            pages.append((path, load_page_graph(path.read_bytes())))
        except (OSError, PageGraphFormatError) as e:
            logger.error(f"{path}: {e}")
            failures.append({"input": str(path), "status": "error", "error": str(e)})
    return pages, failures


def _write_manifest(out_dir: Path, command: str, config: RunConfig, entries: List[Dict[str, Any]]):
    manifest = {
        "magipipe_version": __version__,
        "command": command,
        "config": config.dict(),
        "inputs": entries,
    }
    JsonSerializer.save(manifest, out_dir / MANIFEST_FILE)


def _prepare_out_dir(out_dir: Path) -> bool:
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.error(f"Cannot create the output directory {out_dir}: {e}")
        return False
    return True


def cmd_transcribe(inputs: Sequence[Path], config: RunConfig, out_dir: Path) -> int:
    """Write ``<page_id>.transcript.txt`` and its ``.transcript.json`` sidecar for every page."""
    if not _prepare_out_dir(out_dir):
        return EXIT_PARTIAL_FAILURE
    pages, entries = _load_pages(inputs)
    for path, page in pages:
        result = transcribe_page(page, config)
        name = _file_name(page.page_id)
        try:
            text = render(result.transcript, panel_markers=config.emit_panel_markers)
            (out_dir / f"{name}.transcript.txt").write_bytes(text.encode("utf-8"))
            JsonSerializer.save(result.sidecar(), out_dir / f"{name}.transcript.json")
        except OSError as e:
            logger.error(f"{path}: {e}")
            entries.append({"input": str(path), "page_id": page.page_id, "status": "error", "error": str(e)})
            continue
        entries.append({"input": str(path), "page_id": page.page_id, "status": "ok", "warnings": list(result.warnings)})
    _write_manifest(out_dir, "transcribe", config, entries)
    return EXIT_PARTIAL_FAILURE if any(e["status"] == "error" for e in entries) else EXIT_OK


def cmd_order(inputs: Sequence[Path], config: RunConfig, out_dir: Optional[Path] = None) -> int:
    """Print the panel and text order of every page, and write ``<page_id>.order.json`` with ``out_dir``."""
    if out_dir is not None and not _prepare_out_dir(out_dir):
        return EXIT_PARTIAL_FAILURE
    pages, entries = _load_pages(inputs)
    for path, page in pages:
        tol = config.tolerance_for(page.width, page.height)
        order = reading_order(page, assign_boxes_to_panels(page, tol), tol)
        print(page.page_id)
        print("panels: " + " ".join(str(k) for k in order.panel_order))
        print("texts: " + " ".join(str(t) for t in order.text_order))
        warnings = list(page.warnings + order.warnings)
        if out_dir is not None:
            JsonSerializer.save(
                {
                    "page_id": page.page_id,
                    "panel_order": list(order.panel_order),
                    "text_order": list(order.text_order),
                    "warnings": warnings,
                },
                out_dir / f"{_file_name(page.page_id)}.order.json",
            )
        entries.append({"input": str(path), "page_id": page.page_id, "status": "ok", "warnings": warnings})
    if out_dir is not None:
        _write_manifest(out_dir, "order", config, entries)
    return EXIT_PARTIAL_FAILURE if any(e["status"] == "error" for e in entries) else EXIT_OK


def _load_annotations(paths: Sequence[Path]) -> Tuple[Dict[str, PageAnnotation], List[Dict[str, Any]]]:
    annotations, failures = {}, []
    for path in _collect(paths, ANNOTATION_SUFFIX):
        try:
            annotation = load_page_annotation(path.read_bytes())
        except (OSError, PageGraphFormatError) as e:
            logger.error(f"{path}: {e}")
            failures.append({"input": str(path), "status": "error", "error": str(e)})
            continue
        annotations[annotation.page_id] = annotation
    return annotations, failures


def cmd_evaluate(
    pred_inputs: Sequence[Path], gt_inputs: Sequence[Path], config: RunConfig, out_dir: Optional[Path] = None
) -> int:
    """Evaluate page graphs against the annotations of the same page ids, print the metrics table."""
    if out_dir is not None and not _prepare_out_dir(out_dir):
        return EXIT_PARTIAL_FAILURE
    pages, entries = _load_pages(pred_inputs)
    annotations, failures = _load_annotations(gt_inputs)
    entries.extend(failures)

    pairs = []
    predicted_ids = set()
    for path, page in sorted(pages, key=lambda item: item[1].page_id):
        predicted_ids.add(page.page_id)
        if page.page_id not in annotations:
            message = f"No annotation for page {page.page_id}"
            logger.error(message)
            entries.append({"input": str(path), "page_id": page.page_id, "status": "error", "error": message})
            continue
        pairs.append((page, annotations[page.page_id]))
        entries.append({"input": str(path), "page_id": page.page_id, "status": "ok"})
    for page_id in sorted(set(annotations) - predicted_ids):
        message = f"No prediction for annotated page {page_id}"
        logger.error(message)
        entries.append({"page_id": page_id, "status": "error", "error": message})

    if not pairs:
        logger.error("no pages")
        return EXIT_PARTIAL_FAILURE

    report = evaluate_dataset(pairs, config.evaluation_config(), threshold_sweep=config.threshold_sweep)
    print(format_report_table(report), end="")
    if out_dir is not None:
        JsonSerializer.save(report, out_dir / REPORT_FILE)
        _write_manifest(out_dir, "evaluate", config, entries)
    return EXIT_PARTIAL_FAILURE if any(e["status"] == "error" for e in entries) else EXIT_OK


def cmd_mine(inputs: Sequence[Path], config: RunConfig, out_dir: Path) -> int:
    """Write the pseudo-labels of every page to ``<page_id>.mined.json``, pages without embeddings are skipped."""
    if not _prepare_out_dir(out_dir):
        return EXIT_PARTIAL_FAILURE
    pages, entries = _load_pages(inputs)
    for path, page in pages:
        tol = config.tolerance_for(page.width, page.height)
        try:
            mined = mine_character_pairs(page, assign_boxes_to_panels(page, tol))
        except MissingEmbeddingsError as e:
            logger.warning(f"{path}: {e}, page skipped")
            entries.append({"input": str(path), "page_id": page.page_id, "status": "skipped", "warnings": [str(e)]})
            continue
        JsonSerializer.save(
            {
                "page_id": page.page_id,
                "positives": sorted(list(pair) for pair in mined.positives),
                "negatives": sorted(list(pair) for pair in mined.negatives),
                "text_pairs": [list(pair) for pair in mine_text_pairs(page)],
                "warnings": list(mined.warnings),
            },
            out_dir / f"{_file_name(page.page_id)}.mined.json",
        )
        entries.append({"input": str(path), "page_id": page.page_id, "status": "ok", "warnings": list(mined.warnings)})
    _write_manifest(out_dir, "mine", config, entries)
    return EXIT_PARTIAL_FAILURE if any(e["status"] == "error" for e in entries) else EXIT_OK


def cmd_synth(config: RunConfig, out_dir: Path) -> int:
    """Write ``config.count`` synthetic pages and annotations, seeds ``config.seed``, ``config.seed + 1``, ..."""
    if not _prepare_out_dir(out_dir):
        return EXIT_PARTIAL_FAILURE
    entries = []
    try:
        for k in range(config.count):
            seed = config.seed + k
            page, annotation = generate_random_page(seed, noise=config.noise, max_depth=config.max_depth)
            name = _file_name(page.page_id)
            (out_dir / f"{name}{PAGE_SUFFIX}").write_bytes(dump_page_graph(page))
            (out_dir / f"{name}{ANNOTATION_SUFFIX}").write_bytes(dump_page_annotation(annotation))
            entries.append(
                {
                    "page_id": page.page_id,
                    "seed": seed,
                    "page_file": f"{name}{PAGE_SUFFIX}",
                    "annotation_file": f"{name}{ANNOTATION_SUFFIX}",
                }
            )
        _write_manifest(out_dir, "synth", config, entries)
    except OSError as e:
        logger.error(f"Cannot write to {out_dir}: {e}")
        return EXIT_PARTIAL_FAILURE
    logger.info(f"Wrote {len(entries)} synthetic pages to {out_dir}")
    return EXIT_OK


def _add_tuning_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--config", type=Path, default=None, help="YAML config file, overrides MAGI_PIPE_CONFIG")
    parser.add_argument("--tau", type=float, default=None, help="character clustering threshold (0.65)")
    parser.add_argument("--confidence-cutoff", type=float, default=None, help="minimum speaker confidence (0.4)")
    parser.add_argument("--epsilon", type=float, default=None, help="comparison slack, fraction of the page diagonal")
    parser.add_argument("--erosion-step", type=float, default=None, help="erosion step, fraction of the shorter side")
    parser.add_argument("--max-erosion-iters", type=int, default=None, help="maximum erosion iterations (50)")
    parser.add_argument("--iou", type=float, default=None, help="IoU threshold of the detection metrics (0.5)")
    parser.add_argument("--top-k", type=int, default=None, help="predictions kept per page for AP (100)")
    parser.add_argument("--seed", type=int, default=None, help="random seed (0)")
    parser.add_argument("--sweep-tau", action="store_true", default=None, help="sweep the clustering threshold")
    parser.add_argument("--panel-markers", action="store_true", default=None, help="mark panels in transcripts")
    parser.add_argument(
        "--baseline",
        choices=[source.value for source in SpeakerSource],
        default=None,
        help="speaker source: model scores or nearest character",
    )
    parser.add_argument(
        "--similarity",
        choices=[source.value for source in SimilaritySource],
        default=None,
        help="character similarity of the clustering and retrieval metrics",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magipipe", description="Manga page transcription pipeline.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logs")
    parser.add_argument("-q", "--quiet", action="store_true", help="errors only")
    subparsers = parser.add_subparsers(dest="command", required=True)

    transcribe = subparsers.add_parser("transcribe", help="write the transcript of every page")
    transcribe.add_argument("inputs", type=Path, nargs="+", help="page-graph files or directories")
    transcribe.add_argument("--out", type=Path, required=True, help="output directory")

    order = subparsers.add_parser("order", help="print the reading order of every page")
    order.add_argument("inputs", type=Path, nargs="+", help="page-graph files or directories")
    order.add_argument("--out", type=Path, default=None, help="also write the orders to this directory")

    evaluate = subparsers.add_parser("evaluate", help="evaluate page graphs against annotations")
    evaluate.add_argument("--pred", type=Path, nargs="+", required=True, help="page-graph files or directories")
    evaluate.add_argument("--gt", type=Path, nargs="+", required=True, help="annotation files or directories")
    evaluate.add_argument("--out", type=Path, default=None, help="also write the report to this directory")

    mine = subparsers.add_parser("mine", help="mine character pseudo-labels")
    mine.add_argument("inputs", type=Path, nargs="+", help="page-graph files or directories")
    mine.add_argument("--out", type=Path, required=True, help="output directory")

    synth = subparsers.add_parser("synth", help="generate synthetic pages and annotations")
    synth.add_argument("--out", type=Path, required=True, help="output directory")
    synth.add_argument("--count", type=int, default=None, help="number of pages (10)")
    synth.add_argument("--max-depth", type=int, default=None, help="depth of the panel layouts (3)")
    synth.add_argument("--noise", type=float, default=None, help="score noise (0)")

    for subparser in (transcribe, order, evaluate, mine, synth):
        _add_tuning_arguments(subparser)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the ``magipipe`` command.

    Returns:
        int: the exit code
    """
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        set_logging_level(logging.DEBUG)
    elif args.quiet:
        set_logging_level(logging.ERROR)

    overrides = {field: getattr(args, flag, None) for flag, field in _OVERRIDES.items()}
    try:
        config = load_run_config(args.config, overrides)
    except (InvalidConfigError, InvalidPathError) as e:
        logger.error(str(e))
        return EXIT_USAGE

    if args.command == "transcribe":
        return cmd_transcribe(args.inputs, config, args.out)
    if args.command == "order":
        return cmd_order(args.inputs, config, args.out)
    if args.command == "evaluate":
        return cmd_evaluate(args.pred, args.gt, config, args.out)
    if args.command == "mine":
        return cmd_mine(args.inputs, config, args.out)
    return cmd_synth(config, args.out)


if __name__ == "__main__":
    sys.exit(main())
