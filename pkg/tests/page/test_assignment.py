from magipipe.geometry import Box
from magipipe.page.assignment import assign_box_to_panel
from magipipe.page.assignment import assign_boxes_to_panels

from .. import utils


def test_center_containment(tol):
    panels = [Box(0, 0, 45, 100), Box(55, 0, 100, 100)]
    assert assign_box_to_panel(Box(60, 10, 70, 20), panels, tol) == 1
    assert assign_box_to_panel(Box(10, 10, 20, 20), panels, tol) == 0


def test_overlapping_panels_prefer_larger_overlap_then_smaller_panel(tol):
    panels = [Box(0, 0, 100, 100), Box(40, 40, 60, 60)]
    # center in both panels, the box lies inside both: same overlap, the smaller panel wins
    assert assign_box_to_panel(Box(45, 45, 55, 55), panels, tol) == 1
    # center in both panels, the box spills out of the small panel
    assert assign_box_to_panel(Box(30, 30, 58, 58), panels, tol) == 0


def test_overlap_without_center_containment(tol):
    panels = [Box(0, 0, 40, 100), Box(60, 0, 100, 100)]
    assert assign_box_to_panel(Box(35, 10, 50, 20), panels, tol) == 0


def test_nearest_panel_when_outside(tol):
    panels = [Box(0, 0, 40, 40), Box(0, 60, 40, 100)]
    assert assign_box_to_panel(Box(80, 85, 90, 95), panels, tol) == 1


def test_no_panel(tol):
    assert assign_box_to_panel(Box(0, 0, 10, 10), [], tol) is None


def test_assign_boxes_to_panels(tol, dialogue_page):
    assignment = assign_boxes_to_panels(dialogue_page, tol)
    assert assignment.text_panel == (0, 1, 1)
    assert assignment.char_panel == (0, 1)
    assert assignment.texts_in(1) == (1, 2)


def test_page_without_panels(tol):
    page = utils.make_page(texts=[(0, 0, 10, 10)], characters=[(20, 20, 30, 30)])
    assignment = assign_boxes_to_panels(page, tol)
    assert assignment.text_panel == (None,)
    assert assignment.char_panel == (None,)
