"""Dataset level evaluation of page graphs against their annotations."""
import logging
from dataclasses import dataclass
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from magipipe.association.clustering import DEFAULT_TAU
from magipipe.association.clustering import cluster_similarity
from magipipe.association.mining import cosine_similarity
from magipipe.association.speakers import assign_speakers
from magipipe.association.speakers import nearest_character_baseline
from magipipe.exceptions import EmptyDatasetError
from magipipe.exceptions import PageIdMismatchError
from magipipe.metrics.clustering import clustering_metrics
from magipipe.metrics.detection import DEFAULT_IOU_THRESHOLD
from magipipe.metrics.detection import DEFAULT_TOP_K
from magipipe.metrics.detection import average_precision
from magipipe.metrics.detection import average_precision_pooled
from magipipe.metrics.detection import page_detections
from magipipe.metrics.matching import GroundTruthMatch
from magipipe.metrics.matching import hungarian_match_boxes
from magipipe.metrics.retrieval import retrieval_metrics
from magipipe.metrics.speakers import recall_at_num_texts
from magipipe.page.annotation import PageAnnotation
from magipipe.page.page_graph import PageGraph
from magipipe.schemas import DetectionClass
from magipipe.schemas import SimilaritySource
from magipipe.schemas import SpeakerSource
from magipipe.schemas import StrictModel

logger = logging.getLogger(__name__)

DEFAULT_TAU_SWEEP = tuple(round(0.05 * k, 2) for k in range(1, 20))

MEAN_METRICS = ("ami", "nmi", "mrr", "map_at_r", "p_at_1", "r_precision", "recall_at_num_texts")


class EvaluationConfig(StrictModel):
    """Parameters of an evaluation run."""

    tau: float = DEFAULT_TAU
    iou_threshold: float = DEFAULT_IOU_THRESHOLD
    top_k: int = DEFAULT_TOP_K
    speaker_baseline: SpeakerSource = SpeakerSource.MODEL
    similarity: SimilaritySource = SimilaritySource.SCORES


class PageReport(StrictModel):
    page_id: str
    ap_panel: Optional[float] = None
    ap_text: Optional[float] = None
    ap_character: Optional[float] = None
    ami: Optional[float] = None
    nmi: Optional[float] = None
    mrr: Optional[float] = None
    map_at_r: Optional[float] = None
    p_at_1: Optional[float] = None
    r_precision: Optional[float] = None
    recall_at_num_texts: Optional[float] = None


class SweepPoint(StrictModel):
    tau: float
    ami: Optional[float] = None
    nmi: Optional[float] = None


class EvalReport(StrictModel):
    """Metrics of a dataset.

    Detection APs are pooled over every page, the other metrics are means over the pages where
    they are defined. Absent metrics are None.
    """

    page_count: int
    tau: float
    speaker_baseline: SpeakerSource
    similarity: SimilaritySource = SimilaritySource.SCORES
    ap_panel: Optional[float] = None
    ap_text: Optional[float] = None
    ap_character: Optional[float] = None
    ami: Optional[float] = None
    nmi: Optional[float] = None
    mrr: Optional[float] = None
    map_at_r: Optional[float] = None
    p_at_1: Optional[float] = None
    r_precision: Optional[float] = None
    recall_at_num_texts: Optional[float] = None
    best_tau: Optional[float] = None
    tau_sweep: Optional[List[SweepPoint]] = None
    pages: List[PageReport] = []


@dataclass(frozen=True)
class _CharacterMatch:
    """Predicted characters matched to ground truth, with the identity of their ground truth."""

    predictions: Tuple[int, ...]
    identities: Tuple[int, ...]
    match: GroundTruthMatch


def _match_page(page: PageGraph, annotation: PageAnnotation) -> _CharacterMatch:
    if page.page_id != annotation.page_id:
        raise PageIdMismatchError(f"Prediction {page.page_id} is paired with annotation {annotation.page_id}")
    text_match = hungarian_match_boxes([t.box for t in page.texts], annotation.gt_texts)
    char_match = hungarian_match_boxes(page.characters, annotation.gt_characters)
    matched = [(g, p) for g, p in enumerate(char_match) if p is not None]
    return _CharacterMatch(
        predictions=tuple(p for _, p in matched),
        identities=tuple(annotation.gt_char_identity[g] for g, _ in matched),
        match=GroundTruthMatch(texts=text_match, characters=char_match),
    )


def character_similarity(page: PageGraph, source: SimilaritySource) -> Optional[np.ndarray]:
    """Similarity of every pair of characters of the page.

    ``SCORES`` is the predicted character-character matrix, ``EMBEDDINGS`` the cosine similarity of
    the character embeddings. None when the page has no embeddings to compare.
    """
    if source is SimilaritySource.SCORES:
        return page.char_char_scores
    if page.char_embeddings is None:
        logger.warning(f"Page {page.page_id} has no character embeddings, clustering and retrieval are skipped")
        return None
    return cosine_similarity(page.char_embeddings)


def _clustering(
    similarity: Optional[np.ndarray], matched: _CharacterMatch, tau: float
) -> Tuple[Optional[float], Optional[float]]:
    if similarity is None or not matched.predictions:
        return None, None
    clusters = cluster_similarity(similarity, tau)
    return clustering_metrics([clusters.labels[p] for p in matched.predictions], matched.identities)


def evaluate_page(page: PageGraph, annotation: PageAnnotation, config: EvaluationConfig) -> PageReport:
    """Metrics of one page.

    Raises:
        PageIdMismatchError: the prediction and the annotation are not of the same page
    """
    matched = _match_page(page, annotation)
    report = PageReport(page_id=page.page_id)

    if annotation.gt_panels is not None:
        report.ap_panel = average_precision(
            page_detections(page, DetectionClass.PANEL), annotation.gt_panels, config.iou_threshold, config.top_k
        )
    report.ap_text = average_precision(
        page_detections(page, DetectionClass.TEXT), annotation.gt_texts, config.iou_threshold, config.top_k
    )
    report.ap_character = average_precision(
        page_detections(page, DetectionClass.CHARACTER), annotation.gt_characters, config.iou_threshold, config.top_k
    )

    similarity = character_similarity(page, config.similarity)
    report.ami, report.nmi = _clustering(similarity, matched, config.tau)
    if similarity is not None and matched.predictions:
        index = np.array(matched.predictions, dtype=int)
        retrieval = retrieval_metrics(similarity[np.ix_(index, index)], matched.identities)
        report.mrr = retrieval.mrr
        report.map_at_r = retrieval.map_at_r
        report.p_at_1 = retrieval.p_at_1
        report.r_precision = retrieval.r_precision

    if config.speaker_baseline is SpeakerSource.NEAREST:
        speakers = nearest_character_baseline(page)
    else:
        speakers = assign_speakers(page)
    report.recall_at_num_texts = recall_at_num_texts(speakers, annotation.gt_speaker_edges, matched.match)
    return report


def _mean(values: Sequence[Optional[float]]) -> Optional[float]:
    defined = [v for v in values if v is not None]
    if not defined:
        return None
    return float(np.mean(defined))


def sweep_tau(
    pages: Sequence[Tuple[PageGraph, PageAnnotation]],
    taus: Sequence[float] = DEFAULT_TAU_SWEEP,
    similarity: SimilaritySource = SimilaritySource.SCORES,
) -> List[SweepPoint]:
    """Dataset AMI and NMI of the character clusters for every threshold of ``taus``."""
    matches = [
        (character_similarity(page, similarity), _match_page(page, annotation)) for page, annotation in pages
    ]
    points = []
    for tau in taus:
        scores = [_clustering(matrix, matched, tau) for matrix, matched in matches]
        points.append(
            SweepPoint(tau=tau, ami=_mean([ami for ami, _ in scores]), nmi=_mean([nmi for _, nmi in scores]))
        )
    return points


def best_sweep_point(points: Sequence[SweepPoint]) -> Optional[SweepPoint]:
    """Sweep point with the highest AMI, the lowest threshold among ties."""
    defined = [p for p in points if p.ami is not None]
    if not defined:
        return None
    return max(defined, key=lambda p: (p.ami, -p.tau))


def evaluate_dataset(
    pages: Sequence[Tuple[PageGraph, PageAnnotation]],
    config: Optional[EvaluationConfig] = None,
    threshold_sweep: bool = False,
) -> EvalReport:
    """Evaluate predictions against annotations, page by page then over the dataset.

    Args:
        pages (typing.Sequence[typing.Tuple[PageGraph, PageAnnotation]]): prediction and annotation of every page
        config (EvaluationConfig, Optional): evaluation parameters. Defaults to None.
        threshold_sweep (bool): also sweep the clustering threshold. Defaults to False.

    Raises:
        EmptyDatasetError: no pages
        PageIdMismatchError: a prediction is paired with the annotation of another page

    Returns:
        EvalReport: per page and dataset metrics
    """
    if len(pages) == 0:
        raise EmptyDatasetError("no pages")
    config = config or EvaluationConfig()

    page_reports = [evaluate_page(page, annotation, config) for page, annotation in pages]
    report = EvalReport(
        page_count=len(pages),
        tau=config.tau,
        speaker_baseline=config.speaker_baseline,
        similarity=config.similarity,
        pages=page_reports,
    )

    report.ap_panel = average_precision_pooled(
        [
            (page_detections(page, DetectionClass.PANEL), annotation.gt_panels)
            for page, annotation in pages
            if annotation.gt_panels is not None
        ],
        config.iou_threshold,
        config.top_k,
    )
    report.ap_text = average_precision_pooled(
        [(page_detections(page, DetectionClass.TEXT), annotation.gt_texts) for page, annotation in pages],
        config.iou_threshold,
        config.top_k,
    )
    report.ap_character = average_precision_pooled(
        [(page_detections(page, DetectionClass.CHARACTER), annotation.gt_characters) for page, annotation in pages],
        config.iou_threshold,
        config.top_k,
    )
    for name in MEAN_METRICS:
        setattr(report, name, _mean([getattr(p, name) for p in page_reports]))

    if threshold_sweep:
        report.tau_sweep = sweep_tau(pages, similarity=config.similarity)
        best = best_sweep_point(report.tau_sweep)
        report.best_tau = None if best is None else best.tau

    logger.info(f"Evaluated {len(pages)} pages")
    return report


def _format(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.4f}"


def format_report_table(report: EvalReport) -> str:
    """Fixed width table of the dataset metrics."""
    rows = [
        ("pages", str(report.page_count)),
        ("tau", f"{report.tau:.2f}"),
        ("speaker", report.speaker_baseline.value),
        ("similarity", report.similarity.value),
        ("AP panel", _format(report.ap_panel)),
        ("AP text", _format(report.ap_text)),
        ("AP character", _format(report.ap_character)),
        ("AMI", _format(report.ami)),
        ("NMI", _format(report.nmi)),
        ("MRR", _format(report.mrr)),
        ("MAP@R", _format(report.map_at_r)),
        ("P@1", _format(report.p_at_1)),
        ("R-precision", _format(report.r_precision)),
        ("Recall@#text", _format(report.recall_at_num_texts)),
    ]
    if report.best_tau is not None:
        rows.append(("best tau", f"{report.best_tau:.2f}"))
    width = max(len(name) for name, _ in rows)
    return "".join(f"{name:<{width}}  {value:>8}\n" for name, value in rows)
