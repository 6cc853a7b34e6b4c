"""Page builders and brute-force reference implementations used by the tests."""
import itertools
import math
from collections import Counter
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from magipipe.geometry import Box
from magipipe.geometry import iou
from magipipe.page.page_graph import PageGraph
from magipipe.page.page_graph import TextBlock


def _matrix(rows, n: int, m: int) -> np.ndarray:
    return np.array(rows, dtype=float).reshape(n, m)


def make_page(
    panels: Sequence[Sequence[float]] = (),
    texts: Sequence[Sequence[float]] = (),
    characters: Sequence[Sequence[float]] = (),
    char_char: Optional[Sequence[Sequence[float]]] = None,
    text_char: Optional[Sequence[Sequence[float]]] = None,
    embeddings: Optional[Sequence[Sequence[float]]] = None,
    contents: Optional[Sequence[Optional[str]]] = None,
    width: float = 100.0,
    height: float = 100.0,
    page_id: str = "page",
) -> PageGraph:
    n_char, n_text = len(characters), len(texts)
    contents = contents if contents is not None else [None] * n_text
    return PageGraph(
        page_id=page_id,
        width=width,
        height=height,
        panels=tuple(Box.from_list(b) for b in panels),
        texts=tuple(TextBlock(box=Box.from_list(b), content=c) for b, c in zip(texts, contents)),
        characters=tuple(Box.from_list(b) for b in characters),
        char_char_scores=np.eye(n_char) if char_char is None else _matrix(char_char, n_char, n_char),
        text_char_scores=np.zeros((n_text, n_char)) if text_char is None else _matrix(text_char, n_text, n_char),
        char_embeddings=None if embeddings is None else np.array(embeddings, dtype=float),
    )


def random_box(rng: np.random.Generator, width: float = 100.0, height: float = 100.0) -> Box:
    x1, x2 = sorted(rng.uniform(0, width, size=2))
    y1, y2 = sorted(rng.uniform(0, height, size=2))
    return Box(float(x1), float(y1), float(x2), float(y2))


def contingency_ami_nmi(pred: Sequence[int], gt: Sequence[int]) -> Tuple[float, float]:
    """AMI and NMI (arithmetic mean normalisation) from the contingency table, natural logarithms."""
    n = len(gt)
    pairs = Counter(zip(gt, pred))
    a = Counter(gt)
    b = Counter(pred)

    mi = sum(nij / n * math.log(n * nij / (a[i] * b[j])) for (i, j), nij in pairs.items())
    h_a = -sum(v / n * math.log(v / n) for v in a.values())
    h_b = -sum(v / n * math.log(v / n) for v in b.values())

    emi = 0.0
    for ai in a.values():
        for bj in b.values():
            for nij in range(max(1, ai + bj - n), min(ai, bj) + 1):
                log_p = (
                    math.lgamma(ai + 1)
                    + math.lgamma(bj + 1)
                    + math.lgamma(n - ai + 1)
                    + math.lgamma(n - bj + 1)
                    - math.lgamma(n + 1)
                    - math.lgamma(nij + 1)
                    - math.lgamma(ai - nij + 1)
                    - math.lgamma(bj - nij + 1)
                    - math.lgamma(n - ai - bj + nij + 1)
                )
                emi += nij / n * math.log(n * nij / (ai * bj)) * math.exp(log_p)

    mean_h = (h_a + h_b) / 2
    nmi = 0.0 if mi == 0 else mi / mean_h
    ami = (mi - emi) / (mean_h - emi)
    return ami, nmi


def exhaustive_average_precision(
    predictions: Sequence[Tuple[Box, float]], ground_truth: Sequence[Box], iou_threshold: float = 0.5
) -> Optional[float]:
    """101-point AP where the precision at every recall level is the best over all ranking prefixes."""
    if not ground_truth:
        return None
    ranked = sorted(predictions, key=lambda p: -p[1])
    used: List[bool] = [False] * len(ground_truth)
    flags = []
    for box, _ in ranked:
        best, best_iou = None, -1.0
        for g, gt in enumerate(ground_truth):
            value = iou(box, gt)
            if not used[g] and value >= iou_threshold and value > best_iou:
                best, best_iou = g, value
        if best is not None:
            used[best] = True
        flags.append(best is not None)

    prefixes = []
    for k in range(1, len(flags) + 1):
        tp = sum(flags[:k])
        prefixes.append((tp / len(ground_truth), tp / k))

    total = 0.0
    for level in range(101):
        r = level / 100
        total += max([p for rec, p in prefixes if rec >= r], default=0.0)
    return total / 101


def best_total_iou(predictions: Sequence[Box], ground_truth: Sequence[Box]) -> float:
    """Largest total IoU of a one-to-one matching, by enumeration."""
    best = 0.0
    if len(predictions) >= len(ground_truth):
        for chosen in itertools.permutations(range(len(predictions)), len(ground_truth)):
            best = max(best, sum(iou(predictions[p], gt) for p, gt in zip(chosen, ground_truth)))
    else:
        for chosen in itertools.permutations(range(len(ground_truth)), len(predictions)):
            best = max(best, sum(iou(p, ground_truth[g]) for p, g in zip(predictions, chosen)))
    return best
