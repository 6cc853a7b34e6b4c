"""Random guillotine page layouts with a known reading order.

A guillotine layout is obtained by cutting the page recursively, each cut spanning the region
being cut. Reading the upper side of a horizontal cut first and the right side of a vertical cut
first gives the ground-truth panel order.
"""
from dataclasses import dataclass
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np

from magipipe.geometry import Box

HORIZONTAL = "horizontal"
VERTICAL = "vertical"

DEFAULT_PAGE_DIMS = (1000.0, 1400.0)
DEFAULT_MAX_DEPTH = 3
MAX_PERTURBATION = 0.2

MIN_PANEL_FRACTION = 0.10
GAP_FRACTION = 0.02
# parallel cuts closer than this could line up into whitespace crossing the whole page
MIN_CUT_SEPARATION_FRACTION = 0.12
SPLIT_PROBABILITY = 0.8
CUT_ATTEMPTS = 10

Region = Tuple[float, float, float, float]


@dataclass(frozen=True)
class CutTree:
    """Node of the cut tree, children are stored in reading order.

    Leaves have no axis and hold the index of their panel.
    """

    axis: Optional[str] = None
    position: Optional[float] = None
    children: Tuple["CutTree", ...] = ()
    panel: Optional[int] = None


@dataclass(frozen=True)
class GuillotineLayout:
    width: float
    height: float
    panels: Tuple[Box, ...]
    truth_order: Tuple[int, ...]
    cut_tree: CutTree


class _LayoutBuilder:
    def __init__(self, rng: np.random.Generator, width: float, height: float, max_depth: int):
        self.rng = rng
        self.width = width
        self.height = height
        self.max_depth = max_depth
        self.cuts: Dict[str, List[float]] = {HORIZONTAL: [], VERTICAL: []}
        self.leaves: List[Box] = []

    def _cut_position(self, region: Region, axis: str) -> Optional[float]:
        x1, y1, x2, y2 = region
        start, end, side = (y1, y2, self.height) if axis == HORIZONTAL else (x1, x2, self.width)
        margin = MIN_PANEL_FRACTION * side + GAP_FRACTION * side / 2
        low, high = start + margin, end - margin
        if low > high:
            return None
        for _ in range(CUT_ATTEMPTS):
            position = float(self.rng.uniform(low, high))
            if all(abs(position - q) >= MIN_CUT_SEPARATION_FRACTION * side for q in self.cuts[axis]):
                return position
        return None

    def split(self, region: Region, depth: int) -> CutTree:
        if depth >= self.max_depth or (depth > 0 and self.rng.random() > SPLIT_PROBABILITY):
            return self._leaf(region)

        for axis in self.rng.permutation([HORIZONTAL, VERTICAL]):
            axis = str(axis)
            position = self._cut_position(region, axis)
            if position is None:
                continue
            self.cuts[axis].append(position)
            x1, y1, x2, y2 = region
            if axis == HORIZONTAL:
                half_gap = GAP_FRACTION * self.height / 2
                first = (x1, y1, x2, position - half_gap)
                second = (x1, position + half_gap, x2, y2)
            else:
                half_gap = GAP_FRACTION * self.width / 2
                first = (position + half_gap, y1, x2, y2)
                second = (x1, y1, position - half_gap, y2)
            children = (self.split(first, depth + 1), self.split(second, depth + 1))
            return CutTree(axis=axis, position=position, children=children)

        return self._leaf(region)

    def _leaf(self, region: Region) -> CutTree:
        self.leaves.append(Box(*region))
        return CutTree(panel=len(self.leaves) - 1)


def _relabel(tree: CutTree, permutation: np.ndarray) -> CutTree:
    if tree.axis is None:
        return CutTree(panel=int(permutation[tree.panel]))
    return CutTree(
        axis=tree.axis,
        position=tree.position,
        children=tuple(_relabel(child, permutation) for child in tree.children),
    )


def generate_guillotine(
    seed: int, max_depth: int = DEFAULT_MAX_DEPTH, page_dims: Tuple[float, float] = DEFAULT_PAGE_DIMS
) -> GuillotineLayout:
    """Draw a random guillotine layout.

    Panels are at least 10% of the page side, separated by gaps of 2% of the page side. Panel
    indices are shuffled so that they carry no reading order information.

    Args:
        seed (int): random seed
        max_depth (int): maximum depth of the cut tree, 0 gives a single full page panel.
            Defaults to 3.
        page_dims (typing.Tuple[float, float]): page width and height. Defaults to (1000, 1400).

    Returns:
        GuillotineLayout: the layout and its reading order
    """
    if max_depth < 0:
        raise ValueError(f"max_depth must be non negative, got {max_depth}")
    width, height = page_dims
    rng = np.random.default_rng(seed)
    builder = _LayoutBuilder(rng, float(width), float(height), max_depth)
    tree = builder.split((0.0, 0.0, float(width), float(height)), depth=0)

    permutation = rng.permutation(len(builder.leaves))
    panels: List[Optional[Box]] = [None] * len(builder.leaves)
    for rank, box in enumerate(builder.leaves):
        panels[permutation[rank]] = box

    return GuillotineLayout(
        width=float(width),
        height=float(height),
        panels=tuple(panels),
        truth_order=tuple(int(k) for k in permutation),
        cut_tree=_relabel(tree, permutation),
    )


def perturb_overlap(layout: GuillotineLayout, seed: int, magnitude: float) -> Tuple[Box, ...]:
    """Grow every panel around its center so that neighbours overlap.

    Each panel grows horizontally and vertically by a random amount up to ``magnitude`` times its
    shorter side, on both sides, and is clipped to the page.

    Raises:
        ValueError: magnitude outside [0, 0.2]
    """
    if not 0 <= magnitude <= MAX_PERTURBATION:
        raise ValueError(f"magnitude must be in [0, {MAX_PERTURBATION}], got {magnitude}")
    rng = np.random.default_rng(seed)
    perturbed = []
    for panel in layout.panels:
        size = min(panel.width, panel.height)
        dx, dy = rng.uniform(0, magnitude * size, size=2)
        perturbed.append(
            Box(
                max(panel.x1 - dx, 0.0),
                max(panel.y1 - dy, 0.0),
                min(panel.x2 + dx, layout.width),
                min(panel.y2 + dy, layout.height),
            )
        )
    return tuple(perturbed)
