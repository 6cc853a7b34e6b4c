from dataclasses import dataclass
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from magipipe.geometry import Box
from magipipe.geometry import box_iou_matrix
from magipipe.page.page_graph import PageGraph
from magipipe.schemas import DetectionClass

DEFAULT_IOU_THRESHOLD = 0.5
DEFAULT_TOP_K = 100
N_RECALL_POINTS = 101


@dataclass(frozen=True)
class Detection:
    box: Box
    score: float
    cls: DetectionClass


def page_detections(page: PageGraph, cls: DetectionClass) -> List[Detection]:
    """Detections of one class of a page graph, with their confidence (1.0 when the file has none)."""
    if cls is DetectionClass.PANEL:
        boxes, name = page.panels, "panels"
    elif cls is DetectionClass.TEXT:
        boxes, name = [t.box for t in page.texts], "texts"
    else:
        boxes, name = page.characters, "characters"
    return [Detection(box=b, score=s, cls=cls) for b, s in zip(boxes, page.detection_scores(name))]


def _match_page(
    predictions: Sequence[Detection], ground_truth: Sequence[Box], iou_threshold: float, top_k: int
) -> Tuple[List[float], List[bool]]:
    """Greedy matching of the ``top_k`` best predictions, highest score first."""
    order = sorted(range(len(predictions)), key=lambda k: -predictions[k].score)[:top_k]
    kept = [predictions[k] for k in order]
    ious = box_iou_matrix([p.box for p in kept], ground_truth)

    matched = np.zeros(len(ground_truth), dtype=bool)
    flags = []
    for row in ious:
        candidates = np.where(~matched & (row >= iou_threshold), row, -1.0)
        best = int(np.argmax(candidates)) if len(candidates) else -1
        if best >= 0 and candidates[best] >= 0:
            matched[best] = True
            flags.append(True)
        else:
            flags.append(False)
    return [p.score for p in kept], flags


def _interpolated_ap(scores: Sequence[float], flags: Sequence[bool], n_ground_truth: int) -> float:
    order = np.argsort(-np.asarray(scores, dtype=float), kind="stable")
    tp = np.asarray(flags, dtype=bool)[order]
    tp_cum = np.cumsum(tp)
    fp_cum = np.cumsum(~tp)
    recall = tp_cum / n_ground_truth
    precision = tp_cum / np.maximum(tp_cum + fp_cum, 1)
    # precision envelope, non increasing in recall
    precision = np.maximum.accumulate(precision[::-1])[::-1]

    recall_levels = np.arange(N_RECALL_POINTS) / (N_RECALL_POINTS - 1)
    positions = np.searchsorted(recall, recall_levels, side="left")
    interpolated = [precision[k] if k < len(precision) else 0.0 for k in positions]
    return float(np.mean(interpolated))


def average_precision_pooled(
    pages: Sequence[Tuple[Sequence[Detection], Sequence[Box]]],
    iou_threshold: float = DEFAULT_IOU_THRESHOLD,
    top_k: int = DEFAULT_TOP_K,
) -> Optional[float]:
    """Average precision of one class over several pages.

    Predictions are matched page by page, keeping the ``top_k`` best of every page, then ranked
    together by score.

    Args:
        pages (typing.Sequence): ``(predictions, ground_truth)`` of every page
        iou_threshold (float): minimum IoU of a true positive. Defaults to 0.5.
        top_k (int): predictions kept per page. Defaults to 100.

    Returns:
        typing.Optional[float]: 101-point interpolated AP, None when there is no ground truth at all
    """
    n_ground_truth = sum(len(gts) for _, gts in pages)
    if n_ground_truth == 0:
        return None
    scores: List[float] = []
    flags: List[bool] = []
    for predictions, ground_truth in pages:
        page_scores, page_flags = _match_page(predictions, ground_truth, iou_threshold, top_k)
        scores.extend(page_scores)
        flags.extend(page_flags)
    return _interpolated_ap(scores, flags, n_ground_truth)


def average_precision(
    predictions: Sequence[Detection],
    ground_truth: Sequence[Box],
    iou_threshold: float = DEFAULT_IOU_THRESHOLD,
    top_k: int = DEFAULT_TOP_K,
) -> Optional[float]:
    """Average precision of one class on one page, None when the page has no ground truth."""
    return average_precision_pooled([(predictions, ground_truth)], iou_threshold=iou_threshold, top_k=top_k)
