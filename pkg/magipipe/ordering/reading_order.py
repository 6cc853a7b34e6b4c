import math
from dataclasses import dataclass
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from magipipe.geometry import Box
from magipipe.geometry import Tolerance
from magipipe.ordering.panel_dag import build_dag
from magipipe.ordering.panel_dag import topological_order
from magipipe.ordering.relative_order import PanelOrderer
from magipipe.page.assignment import PanelAssignment
from magipipe.page.page_graph import PageGraph


@dataclass(frozen=True)
class ReadingOrder:
    """Panels and texts of a page in reading order, each a permutation of the page indices."""

    panel_order: Tuple[int, ...]
    text_order: Tuple[int, ...]
    warnings: Tuple[str, ...] = ()
    contained_pairs: Tuple[Tuple[int, int], ...] = ()


def _distance_to_top_right(box: Box, x: float, y: float) -> float:
    cx, cy = box.center
    return math.hypot(cx - x, cy - y)


def order_texts_in_panel(text_indices: Sequence[int], page: PageGraph, panel: Box) -> List[int]:
    """Texts of a panel sorted by the distance of their center to the top-right corner of the panel."""
    return sorted(
        text_indices,
        key=lambda t: (_distance_to_top_right(page.texts[t].box, panel.x2, panel.y1), t),
    )


def reading_order(
    page: PageGraph,
    assignment: PanelAssignment,
    tol: Tolerance,
    orderer: Optional[PanelOrderer] = None,
) -> ReadingOrder:
    """Order the panels of the page, then the texts panel by panel.

    Texts outside every panel come last, sorted by the distance to the top-right corner of the page.
    """
    orderer = orderer or PanelOrderer(page.panels, tol)
    topo = topological_order(build_dag(page, tol, orderer=orderer))

    text_order: List[int] = []
    for panel in topo.order:
        text_order.extend(order_texts_in_panel(assignment.texts_in(panel), page, page.panels[panel]))

    unassigned = [t for t, p in enumerate(assignment.text_panel) if p is None]
    text_order.extend(
        sorted(unassigned, key=lambda t: (_distance_to_top_right(page.texts[t].box, page.width, 0.0), t))
    )

    return ReadingOrder(
        panel_order=topo.order,
        text_order=tuple(text_order),
        warnings=tuple(orderer.warnings) + topo.cycle_warnings,
        contained_pairs=tuple(orderer.contained_pairs),
    )
