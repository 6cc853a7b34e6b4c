"""Pseudo-labels for character re-identification mined from unlabelled pages.

Three rules are applied: two characters of the same panel are different identities, mutual
nearest neighbours in embedding space from different panels are the same identity, and
``A = B`` with ``B != C`` gives ``A != C``.
"""
import logging
from dataclasses import dataclass
from typing import FrozenSet
from typing import List
from typing import Set
from typing import Tuple

import numpy as np

from magipipe.association.speakers import nearest_character_baseline
from magipipe.exceptions import MissingEmbeddingsError
from magipipe.page.assignment import PanelAssignment
from magipipe.page.page_graph import PageGraph

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class MinedPairs:
    """Character pairs ``(i, j)`` with ``i < j``, a pair never appears in both sets."""

    positives: FrozenSet[Pair]
    negatives: FrozenSet[Pair]
    warnings: Tuple[str, ...] = ()


def _pair(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


def cosine_similarity(embeddings: np.ndarray) -> np.ndarray:
    """Pairwise cosine similarity of the rows of ``embeddings``, zero rows are similar to nothing."""
    norms = np.linalg.norm(embeddings, axis=1, keepdims=True)
    unit = np.divide(embeddings, norms, out=np.zeros_like(embeddings), where=norms > 0)
    return unit @ unit.T


def _mutual_nearest_neighbours(embeddings: np.ndarray) -> Set[Pair]:
    n = len(embeddings)
    if n < 2:
        return set()
    similarity = cosine_similarity(embeddings)
    np.fill_diagonal(similarity, -np.inf)
    nearest = np.argmax(similarity, axis=1)
    return {_pair(i, int(nearest[i])) for i in range(n) if nearest[nearest[i]] == i}


def _negative_closure(positives: Set[Pair], negatives: Set[Pair]) -> Set[Pair]:
    negatives = set(negatives)
    changed = True
    while changed:
        changed = False
        for a, b in positives:
            for x, y in list(negatives):
                for same, other in ((a, b), (b, a)):
                    if same in (x, y):
                        c = y if x == same else x
                        if c != other and _pair(other, c) not in negatives:
                            negatives.add(_pair(other, c))
                            changed = True
    return negatives


def mine_character_pairs(page: PageGraph, assignment: PanelAssignment) -> MinedPairs:
    """Mine same-identity and different-identity character pairs of a page.

    Characters outside every panel never produce a same-panel negative. A pair mined as both
    positive and negative is kept as a negative.

    Raises:
        MissingEmbeddingsError: the page has no character embeddings
    """
    if page.char_embeddings is None:
        raise MissingEmbeddingsError(f"Page {page.page_id} has no character embeddings")

    n = page.n_characters
    negatives = {
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if assignment.char_panel[i] is not None and assignment.char_panel[i] == assignment.char_panel[j]
    }
    positives = {
        (i, j)
        for i, j in _mutual_nearest_neighbours(np.asarray(page.char_embeddings, dtype=float))
        if (i, j) not in negatives
    }
    negatives = _negative_closure(positives, negatives)

    warnings: List[str] = []
    for i, j in sorted(positives & negatives):
        message = f"{page.page_id}: characters {i} and {j} mined as both same and different, kept as different"
        logger.warning(message)
        warnings.append(message)
    positives -= negatives

    return MinedPairs(positives=frozenset(positives), negatives=frozenset(negatives), warnings=tuple(warnings))


def mine_text_pairs(page: PageGraph) -> List[Pair]:
    """Pair every text with the character whose box center is the closest, the speaker pseudo-label."""
    baseline = nearest_character_baseline(page)
    return [(t, s.character) for t, s in enumerate(baseline.speakers) if s is not None]
