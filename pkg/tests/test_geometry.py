import math

import numpy as np
import pytest

from magipipe.geometry import Box
from magipipe.geometry import Tolerance
from magipipe.geometry import box_iou_matrix
from magipipe.geometry import erode
from magipipe.geometry import erode_pair_until_diagonal
from magipipe.geometry import erode_pair_until_disjoint
from magipipe.geometry import intersection_area
from magipipe.geometry import iou
from magipipe.geometry import is_strictly_above
from magipipe.geometry import is_strictly_right_of

from . import utils


@pytest.mark.parametrize(
    "coords",
    [(-1, 0, 10, 10), (0, 0, math.nan, 10), (0, 0, math.inf, 10), (10, 0, 5, 10), (0, 10, 10, 5)],
)
def test_invalid_box(coords):
    with pytest.raises(ValueError):
        Box(*coords)


def test_box_properties():
    box = Box(10, 20, 30, 60)
    assert box.width == 20
    assert box.height == 40
    assert box.area == 800
    assert box.center == (20, 40)
    assert Box.from_list(box.to_list()) == box


def test_tolerance_for_page():
    tol = Tolerance.for_page(300, 400)
    assert tol.epsilon == pytest.approx(0.5)
    assert tol.erosion_step == pytest.approx(1.5)
    assert tol.max_erosion_iters == 50


@pytest.mark.parametrize(
    "a,b,expected",
    [
        (Box(0, 0, 10, 10), Box(0, 0, 10, 10), 1.0),
        (Box(0, 0, 10, 10), Box(20, 20, 30, 30), 0.0),
        (Box(0, 0, 10, 10), Box(5, 0, 15, 10), 1 / 3),
        (Box(5, 5, 5, 5), Box(5, 5, 5, 5), 0.0),
    ],
)
def test_iou(a, b, expected):
    assert iou(a, b) == pytest.approx(expected)


def test_iou_properties():
    rng = np.random.default_rng(42)
    for _ in range(1000):
        a, b = utils.random_box(rng), utils.random_box(rng)
        value = iou(a, b)
        assert 0 <= value <= 1
        assert value == iou(b, a)
        if a.area > 0:
            assert iou(a, a) == pytest.approx(1.0)


def test_box_iou_matrix_matches_iou():
    rng = np.random.default_rng(0)
    a = [utils.random_box(rng) for _ in range(5)]
    b = [utils.random_box(rng) for _ in range(3)]
    matrix = box_iou_matrix(a, b)
    assert matrix.shape == (5, 3)
    for i in range(5):
        for j in range(3):
            assert matrix[i, j] == pytest.approx(iou(a[i], b[j]))
    assert box_iou_matrix([], b).shape == (0, 3)


def test_strict_predicates(tol):
    top = Box(0, 0, 100, 40)
    bottom = Box(0, 50, 100, 100)
    assert is_strictly_above(top, bottom, tol)
    assert not is_strictly_above(bottom, top, tol)

    left = Box(0, 0, 40, 100)
    right = Box(60, 0, 100, 100)
    assert is_strictly_right_of(right, left, tol)
    assert not is_strictly_right_of(left, right, tol)


def test_strict_predicates_epsilon_slack(tol):
    # an overlap smaller than epsilon still counts as above
    assert is_strictly_above(Box(0, 0, 10, 50.1), Box(0, 50, 10, 60), tol)
    assert not is_strictly_above(Box(0, 0, 10, 51), Box(0, 50, 10, 60), tol)


def test_strict_predicates_are_exclusive():
    # with epsilon 0, above and below cannot both hold for boxes with a positive height
    tol = Tolerance(epsilon=0, erosion_step=1, max_erosion_iters=10)
    rng = np.random.default_rng(1)
    for _ in range(1000):
        a, b = utils.random_box(rng), utils.random_box(rng)
        if a.height > 0 and b.height > 0:
            assert not (is_strictly_above(a, b, tol) and is_strictly_above(b, a, tol))
        if a.width > 0 and b.width > 0:
            assert not (is_strictly_right_of(a, b, tol) and is_strictly_right_of(b, a, tol))


@pytest.mark.parametrize(
    "box,step,expected",
    [
        (Box(0, 0, 10, 10), 6, Box(5, 5, 5, 5)),
        (Box(0, 0, 4, 10), 1, Box(1, 1, 3, 9)),
        (Box(0, 0, 4, 10), 3, Box(2, 3, 2, 7)),
    ],
)
def test_erode(box, step, expected):
    assert erode(box, step) == expected


def test_erode_properties():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        box = utils.random_box(rng)
        step = float(rng.uniform(0.01, 30))
        eroded = erode(box, step)
        assert eroded.center == pytest.approx(box.center)
        assert eroded.area <= box.area
        assert box.x1 <= eroded.x1 <= eroded.x2 <= box.x2
        assert box.y1 <= eroded.y1 <= eroded.y2 <= box.y2


@pytest.mark.parametrize("step", [0, -1])
def test_erode_invalid_step(step):
    with pytest.raises(ValueError):
        erode(Box(0, 0, 10, 10), step)


def test_erode_pair_disjoint_is_unchanged(tol):
    a, b = Box(0, 0, 40, 40), Box(50, 50, 90, 90)
    assert erode_pair_until_disjoint(a, b, tol) == (a, b)


def test_erode_pair_separates_overlap(tol):
    result = erode_pair_until_disjoint(Box(0, 0, 52, 100), Box(48, 0, 100, 100), tol)
    assert result is not None
    a, b = result
    assert intersection_area(a, b) <= tol.epsilon**2


def test_erode_pair_containment_fails():
    tol = Tolerance(epsilon=0.1, erosion_step=1, max_erosion_iters=50)
    assert erode_pair_until_disjoint(Box(0, 0, 10, 10), Box(2, 2, 8, 8), tol) is None


def test_erode_pair_iteration_cap():
    tol = Tolerance(epsilon=0.1, erosion_step=0.1, max_erosion_iters=2)
    assert erode_pair_until_disjoint(Box(0, 0, 52, 100), Box(48, 0, 100, 100), tol) is None


def test_erode_pair_until_diagonal(tol):
    # left panel slightly lower than the right panel, both largely side by side
    left, right = Box(0, 10, 45, 100), Box(55, 0, 100, 12)
    result = erode_pair_until_diagonal(left, right, tol)
    assert result is not None
    a, b = result
    assert is_strictly_above(b, a, tol)
    assert is_strictly_right_of(b, a, tol)


def test_erode_pair_until_diagonal_same_row(tol):
    # panels of the same row collapse before being separated vertically
    assert erode_pair_until_diagonal(Box(0, 0, 45, 100), Box(55, 0, 100, 100), tol) is None


def test_erode_pair_until_diagonal_needs_one_axis(tol):
    assert erode_pair_until_diagonal(Box(0, 0, 40, 40), Box(60, 60, 100, 100), tol) is None
