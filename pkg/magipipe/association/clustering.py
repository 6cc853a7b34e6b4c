from dataclasses import dataclass
from typing import Dict
from typing import Sequence
from typing import Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from magipipe.page.page_graph import PageGraph

DEFAULT_TAU = 0.65


@dataclass(frozen=True)
class ClusterSet:
    """Identity cluster of every character, numbered 0, 1, ... by first appearance."""

    labels: Tuple[int, ...]
    threshold_used: float

    @property
    def n_clusters(self) -> int:
        return len(set(self.labels))


def relabel_by_first_appearance(labels: Sequence[int]) -> Tuple[int, ...]:
    mapping: Dict[int, int] = {}
    for label in labels:
        mapping.setdefault(label, len(mapping))
    return tuple(mapping[label] for label in labels)


def cluster_similarity(similarity: np.ndarray, tau: float = DEFAULT_TAU) -> ClusterSet:
    """Connected components of the graph keeping the pairs of ``similarity`` scored at least ``tau``.

    Raises:
        ValueError: tau negative or not finite
    """
    if not (np.isfinite(tau) and tau >= 0):
        raise ValueError(f"tau must be finite and non-negative, got {tau}")
    similarity = np.asarray(similarity, dtype=float)
    if len(similarity) == 0:
        return ClusterSet(labels=(), threshold_used=tau)

    adjacency = csr_matrix(similarity >= tau)
    _, labels = connected_components(adjacency, directed=False)
    return ClusterSet(labels=relabel_by_first_appearance(labels.tolist()), threshold_used=tau)


def cluster_characters(page: PageGraph, tau: float = DEFAULT_TAU) -> ClusterSet:
    """Connected components of the graph keeping character pairs scored at least ``tau``.

    Args:
        page (PageGraph): the page
        tau (float): edge threshold. Any value above 1 keeps no pair, so every character is its own
            cluster. Defaults to 0.65.

    Raises:
        ValueError: tau negative or not finite

    Returns:
        ClusterSet: the clusters
    """
    return cluster_similarity(page.char_char_scores, tau)
