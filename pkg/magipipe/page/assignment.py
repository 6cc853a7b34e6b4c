import math
from dataclasses import dataclass
from typing import Optional
from typing import Sequence
from typing import Tuple

from magipipe.geometry import Box
from magipipe.geometry import Tolerance
from magipipe.geometry import intersection_area
from magipipe.page.page_graph import PageGraph


@dataclass(frozen=True)
class PanelAssignment:
    """Panel of every text and character, None when the page has no panel."""

    text_panel: Tuple[Optional[int], ...]
    char_panel: Tuple[Optional[int], ...]

    def texts_in(self, panel: int) -> Tuple[int, ...]:
        return tuple(t for t, p in enumerate(self.text_panel) if p == panel)

    def characters_in(self, panel: int) -> Tuple[int, ...]:
        return tuple(c for c, p in enumerate(self.char_panel) if p == panel)


def _contains_point(panel: Box, x: float, y: float, tol: Tolerance) -> bool:
    return (
        panel.x1 - tol.epsilon <= x <= panel.x2 + tol.epsilon and panel.y1 - tol.epsilon <= y <= panel.y2 + tol.epsilon
    )


def assign_box_to_panel(box: Box, panels: Sequence[Box], tol: Tolerance) -> Optional[int]:
    """Panel of a single box.

    In order: the panels containing the box center, then the panels overlapping the box, then the
    panel with the nearest center. Among several candidates the larger overlap wins, then the
    smaller panel, then the lower index.
    """
    if len(panels) == 0:
        return None

    cx, cy = box.center
    containing = [k for k, panel in enumerate(panels) if _contains_point(panel, cx, cy, tol)]
    if not containing:
        containing = [k for k, panel in enumerate(panels) if intersection_area(box, panel) > 0]
    if containing:
        return min(containing, key=lambda k: (-intersection_area(box, panels[k]), panels[k].area, k))

    def distance(k: int) -> float:
        px, py = panels[k].center
        return math.hypot(px - cx, py - cy)

    return min(range(len(panels)), key=lambda k: (distance(k), panels[k].area, k))


def assign_boxes_to_panels(page: PageGraph, tol: Tolerance) -> PanelAssignment:
    """Map every text and character of the page to the panel it belongs to."""
    return PanelAssignment(
        text_panel=tuple(assign_box_to_panel(t.box, page.panels, tol) for t in page.texts),
        char_panel=tuple(assign_box_to_panel(c, page.panels, tol) for c in page.characters),
    )
