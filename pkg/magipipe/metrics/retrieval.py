from dataclasses import dataclass
from typing import Optional
from typing import Sequence

import numpy as np

from magipipe.exceptions import SimilarityShapeError


@dataclass(frozen=True)
class RetrievalMetrics:
    """Means over the queries whose identity has at least one other instance, None without such query."""

    mrr: Optional[float]
    map_at_r: Optional[float]
    p_at_1: Optional[float]
    r_precision: Optional[float]


def retrieval_metrics(similarity: np.ndarray, gt_labels: Sequence[int]) -> RetrievalMetrics:
    """Rank every other character by decreasing similarity, ties by index, for each query character.

    Raises:
        SimilarityShapeError: the matrix is not square or does not match the labels
    """
    similarity = np.asarray(similarity, dtype=float)
    labels = np.asarray(gt_labels)
    n = len(labels)
    if similarity.ndim != 2 or similarity.shape != (n, n):
        raise SimilarityShapeError(f"Expected a {n}x{n} similarity matrix, got shape {similarity.shape}")

    mrr, map_at_r, p_at_1, r_precision = [], [], [], []
    for q in range(n):
        candidates = np.array([k for k in range(n) if k != q], dtype=int)
        relevant = labels[candidates] == labels[q]
        r = int(relevant.sum())
        if r == 0:
            continue
        ranking = np.argsort(-similarity[q, candidates], kind="stable")
        hits = relevant[ranking]

        mrr.append(1.0 / (int(np.argmax(hits)) + 1))
        p_at_1.append(float(hits[0]))
        r_precision.append(float(hits[:r].sum()) / r)
        precision_at = np.cumsum(hits[:r]) / np.arange(1, r + 1)
        map_at_r.append(float(np.sum(precision_at * hits[:r])) / r)

    if not mrr:
        return RetrievalMetrics(None, None, None, None)
    return RetrievalMetrics(
        mrr=float(np.mean(mrr)),
        map_at_r=float(np.mean(map_at_r)),
        p_at_1=float(np.mean(p_at_1)),
        r_precision=float(np.mean(r_precision)),
    )
