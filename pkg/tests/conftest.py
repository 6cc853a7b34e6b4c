import logging

import pytest

from magipipe.config import RunConfig
from magipipe.geometry import Tolerance
from magipipe.logger import set_logging_level

from . import utils


@pytest.fixture(autouse=True)
def reset_logging_level():
    yield
    set_logging_level(logging.INFO)


@pytest.fixture
def tol():
    """Tolerance of a 100 x 100 page."""
    return Tolerance.for_page(100, 100)


@pytest.fixture
def run_config():
    return RunConfig()


@pytest.fixture
def grid_page():
    """2 x 2 grid of panels, given left to right then top to bottom, one text per panel."""
    panels = [(0, 0, 45, 45), (55, 0, 100, 45), (0, 55, 45, 100), (55, 55, 100, 100)]
    texts = [(10, 10, 20, 20), (65, 10, 75, 20), (10, 65, 20, 75), (65, 65, 75, 75)]
    return utils.make_page(panels=panels, texts=texts, contents=["a", "b", "c", "d"])


@pytest.fixture
def horizontal_whitespace_page():
    """Whitespace crosses the page horizontally, the top-left panel comes before the bottom-right one."""
    return utils.make_page(panels=[(0, 0, 40, 45), (50, 0, 100, 45), (0, 55, 50, 100), (60, 55, 100, 100)])


@pytest.fixture
def vertical_whitespace_page():
    """Whitespace crosses the page vertically, the bottom-right panel comes before the top-left one."""
    return utils.make_page(panels=[(0, 0, 45, 30), (0, 35, 45, 100), (55, 0, 100, 50), (55, 55, 100, 100)])


@pytest.fixture
def dialogue_page():
    """Two panels side by side, two characters of the same identity and three texts."""
    return utils.make_page(
        panels=[(0, 0, 45, 100), (55, 0, 100, 100)],
        texts=[(10, 5, 30, 15), (70, 5, 90, 15), (60, 30, 70, 40)],
        characters=[(5, 40, 40, 90), (60, 50, 95, 95)],
        char_char=[[1.0, 0.9], [0.9, 1.0]],
        text_char=[[0.8, 0.1], [0.2, 0.7], [0.1, 0.3]],
        contents=["left", "right", "quiet"],
    )
