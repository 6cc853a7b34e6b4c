from typing import Sequence
from typing import Tuple

from sklearn.metrics import adjusted_mutual_info_score
from sklearn.metrics import normalized_mutual_info_score

from magipipe.association.clustering import relabel_by_first_appearance
from magipipe.exceptions import LabelLengthError


def clustering_metrics(pred_labels: Sequence[int], gt_labels: Sequence[int]) -> Tuple[float, float]:
    """Adjusted and normalised mutual information, arithmetic normalisation.

    Two partitions equal up to relabelling score 1. AMI is chance adjusted and can be slightly
    negative.

    Raises:
        LabelLengthError: the label sequences differ in length
        ValueError: no labels

    Returns:
        typing.Tuple[float, float]: AMI and NMI
    """
    if len(pred_labels) != len(gt_labels):
        raise LabelLengthError(f"{len(pred_labels)} predicted labels for {len(gt_labels)} ground-truth labels")
    if len(gt_labels) == 0:
        raise ValueError("Clustering metrics need at least one label")
    if relabel_by_first_appearance(pred_labels) == relabel_by_first_appearance(gt_labels):
        return 1.0, 1.0
    ami = adjusted_mutual_info_score(list(gt_labels), list(pred_labels), average_method="arithmetic")
    nmi = normalized_mutual_info_score(list(gt_labels), list(pred_labels), average_method="arithmetic")
    return float(ami), float(nmi)
