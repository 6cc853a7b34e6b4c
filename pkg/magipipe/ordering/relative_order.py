"""Pairwise reading order of panels.

Manga pages are read right to left and top to bottom. Two panels are compared with strict
"above" and "right of" predicates once overlaps have been eroded away; panels placed on a
diagonal are ordered by the whitespace cuts of the page.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from magipipe.geometry import Box
from magipipe.geometry import Tolerance
from magipipe.geometry import are_separated
from magipipe.geometry import erode
from magipipe.geometry import erode_pair_until_diagonal
from magipipe.geometry import erode_pair_until_disjoint
from magipipe.geometry import is_strictly_above
from magipipe.geometry import is_strictly_right_of
from magipipe.page.page_graph import PageGraph

logger = logging.getLogger(__name__)

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


class RelativeOrder(str, Enum):
    BEFORE = "before"
    AFTER = "after"

    def opposite(self) -> "RelativeOrder":
        return RelativeOrder.AFTER if self is RelativeOrder.BEFORE else RelativeOrder.BEFORE


def reading_key(box: Box, index: int) -> Tuple[float, float, int]:
    """Sort key of the fallback order: top first, then right first, then index."""
    cx, cy = box.center
    return cy, -cx, index


@dataclass
class _CutNode:
    """Node of a recursive whitespace cut decomposition.

    ``axis`` is None for a leaf. The children of a horizontal node are sorted top to bottom, the
    children of a vertical node left to right.
    """

    axis: Optional[str]
    members: frozenset
    children: List["_CutNode"]


def _bands(
    members: Sequence[int],
    boxes: Sequence[Box],
    interval: Callable[[Box], Tuple[float, float]],
    epsilon: float,
) -> List[List[int]]:
    """Group boxes whose projections on one axis overlap by more than epsilon."""
    ordered = sorted(members, key=lambda k: (*interval(boxes[k]), k))
    bands: List[List[int]] = []
    end = 0.0
    for k in ordered:
        start, stop = interval(boxes[k])
        if bands and start < end - epsilon:
            bands[-1].append(k)
            end = max(end, stop)
        else:
            bands.append([k])
            end = stop
    return bands


def _build_cut_tree(members: Sequence[int], boxes: Sequence[Box], epsilon: float) -> _CutNode:
    if len(members) == 1:
        return _CutNode(axis=None, members=frozenset(members), children=[])

    rows = _bands(members, boxes, lambda b: (b.y1, b.y2), epsilon)
    if len(rows) > 1:
        return _CutNode(HORIZONTAL, frozenset(members), [_build_cut_tree(r, boxes, epsilon) for r in rows])

    columns = _bands(members, boxes, lambda b: (b.x1, b.x2), epsilon)
    if len(columns) > 1:
        return _CutNode(VERTICAL, frozenset(members), [_build_cut_tree(c, boxes, epsilon) for c in columns])

    return _CutNode(axis=None, members=frozenset(members), children=[])


def _order_by_cuts(tree: _CutNode, i: int, j: int) -> Optional["RelativeOrder"]:
    """Order given by the first cut separating i and j, None when no cut separates them."""
    node = tree
    while node.axis is not None:
        ci = next(k for k, child in enumerate(node.children) if i in child.members)
        cj = next(k for k, child in enumerate(node.children) if j in child.members)
        if ci != cj:
            if node.axis == HORIZONTAL:
                return RelativeOrder.BEFORE if ci < cj else RelativeOrder.AFTER
            return RelativeOrder.BEFORE if ci > cj else RelativeOrder.AFTER
        node = node.children[ci]
    return None


class PanelOrderer:
    """Relative order of the panels of one page.

    Cut decompositions are computed once per erosion level and shared by every pair, warnings of
    every comparison are collected in ``warnings``. Pairs that contain one another are also
    listed in ``contained_pairs``.

    Args:
        panels (typing.Sequence[Box]): panels of the page
        tol (Tolerance): tolerance of the page
    """

    def __init__(self, panels: Sequence[Box], tol: Tolerance):
        self.panels = tuple(panels)
        self.tol = tol
        self.warnings: List[str] = []
        self.contained_pairs: List[Tuple[int, int]] = []
        self._cut_trees: Dict[int, _CutNode] = {}

    def _warn(self, message: str):
        logger.warning(message)
        self.warnings.append(message)

    def fallback_order(self, i: int, j: int) -> RelativeOrder:
        if reading_key(self.panels[i], i) < reading_key(self.panels[j], j):
            return RelativeOrder.BEFORE
        return RelativeOrder.AFTER

    def cut_tree(self, level: int) -> _CutNode:
        if level not in self._cut_trees:
            boxes = self.panels if level == 0 else [erode(p, level * self.tol.erosion_step) for p in self.panels]
            self._cut_trees[level] = _build_cut_tree(range(len(boxes)), boxes, self.tol.epsilon)
        return self._cut_trees[level]

    def disambiguate_diagonal(self, i: int, j: int) -> RelativeOrder:
        """Order two diagonally placed panels by the whitespace cuts of the page.

        Cuts across the whole page come first, horizontal before vertical. When the first cuts
        keep both panels on the same side, the search goes on inside that part of the page. If no
        cut separates the two panels, every panel is eroded one more step. A horizontal cut reads
        the upper side first, a vertical cut the right side first.
        """
        for level in range(self.tol.max_erosion_iters + 1):
            order = _order_by_cuts(self.cut_tree(level), i, j)
            if order is not None:
                return order
        self._warn(f"No whitespace cut separates panels {i} and {j}, ordered by their centers")
        return self.fallback_order(i, j)

    def relative_order(self, i: int, j: int) -> RelativeOrder:
        """Whether panel ``i`` is read before panel ``j``.

        Raises:
            ValueError: i and j are the same panel
        """
        if i == j:
            raise ValueError(f"Cannot order panel {i} with itself")
        if i > j:
            return self._pair_order(j, i).opposite()
        return self._pair_order(i, j)

    def _pair_order(self, i: int, j: int) -> RelativeOrder:
        a, b = self.panels[i], self.panels[j]

        if not are_separated(a, b, self.tol):
            if not self.tol.erode_overlapping_pairs:
                self._warn(f"Panels {i} and {j} overlap, ordered by their centers")
                return self.fallback_order(i, j)
            eroded = erode_pair_until_disjoint(a, b, self.tol)
            if eroded is None:
                self.contained_pairs.append((i, j))
                self._warn(f"Panels {i} and {j} contain one another, ordered by their centers")
                return self.fallback_order(i, j)
            a, b = eroded

        refined = erode_pair_until_diagonal(a, b, self.tol)
        if refined is not None:
            a, b = refined

        above = is_strictly_above(a, b, self.tol)
        below = is_strictly_above(b, a, self.tol)
        right = is_strictly_right_of(a, b, self.tol)
        left = is_strictly_right_of(b, a, self.tol)

        if above and not left:
            return RelativeOrder.BEFORE
        if below and not right:
            return RelativeOrder.AFTER
        if right and not below:
            return RelativeOrder.BEFORE
        if left and not above:
            return RelativeOrder.AFTER
        if (above and left) or (below and right):
            return self.disambiguate_diagonal(i, j)

        self._warn(f"Panels {i} and {j} still overlap after erosion, ordered by their centers")
        return self.fallback_order(i, j)


def relative_order(i: int, j: int, page: PageGraph, tol: Tolerance) -> RelativeOrder:
    """Whether panel ``i`` of the page is read before panel ``j``."""
    return PanelOrderer(page.panels, tol).relative_order(i, j)


def disambiguate_diagonal(i: int, j: int, page: PageGraph, tol: Tolerance) -> RelativeOrder:
    """Order of two diagonally placed panels, see :meth:`PanelOrderer.disambiguate_diagonal`."""
    return PanelOrderer(page.panels, tol).disambiguate_diagonal(i, j)
