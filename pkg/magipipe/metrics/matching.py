from dataclasses import dataclass
from typing import Optional
from typing import Sequence
from typing import Tuple

from scipy.optimize import linear_sum_assignment

from magipipe.geometry import Box
from magipipe.geometry import box_iou_matrix


def hungarian_match_boxes(predictions: Sequence[Box], ground_truth: Sequence[Box]) -> Tuple[Optional[int], ...]:
    """Optimal one-to-one matching minimising the total ``1 - IoU``.

    Returns:
        typing.Tuple[typing.Optional[int], ...]: the matched prediction of every ground-truth box, None when
        unmatched or when the assigned pair does not overlap at all
    """
    mapping = [None] * len(ground_truth)
    ious = box_iou_matrix(ground_truth, predictions)
    if ious.size == 0:
        return tuple(mapping)
    rows, cols = linear_sum_assignment(1.0 - ious)
    for r, c in zip(rows, cols):
        if ious[r, c] > 0:
            mapping[r] = int(c)
    return tuple(mapping)


@dataclass(frozen=True)
class GroundTruthMatch:
    """Matched prediction index of every ground-truth text and character."""

    texts: Tuple[Optional[int], ...]
    characters: Tuple[Optional[int], ...]

    @classmethod
    def identity(cls, n_texts: int, n_characters: int) -> "GroundTruthMatch":
        """Match to use when the predictions are the ground-truth boxes themselves."""
        return cls(texts=tuple(range(n_texts)), characters=tuple(range(n_characters)))
