import numpy as np
import pytest

from magipipe.association.mining import mine_character_pairs
from magipipe.association.mining import mine_text_pairs
from magipipe.exceptions import MissingEmbeddingsError
from magipipe.geometry import Tolerance
from magipipe.page.assignment import assign_boxes_to_panels

from .. import utils

PANELS = [(0, 0, 45, 100), (55, 0, 100, 100)]
CHARACTERS = [(5, 5, 20, 20), (25, 5, 40, 20), (60, 5, 80, 20)]


def _mine(page):
    tol = Tolerance.for_page(page.width, page.height)
    return mine_character_pairs(page, assign_boxes_to_panels(page, tol))


def test_mining_rules():
    page = utils.make_page(panels=PANELS, characters=CHARACTERS, embeddings=[[1, 0], [0, 1], [0.1, 1]])
    mined = _mine(page)
    assert mined.positives == {(1, 2)}
    # same panel pair, then the pair implied by 1 = 2 and 0 != 1
    assert mined.negatives == {(0, 1), (0, 2)}
    assert mined.warnings == ()


def test_same_panel_mutual_neighbours_are_not_positive():
    page = utils.make_page(panels=PANELS, characters=CHARACTERS, embeddings=[[1, 0], [1, 0.1], [0, 1]])
    mined = _mine(page)
    assert (0, 1) not in mined.positives
    assert (0, 1) in mined.negatives


def test_characters_outside_panels_are_not_negatives():
    page = utils.make_page(characters=CHARACTERS, embeddings=[[1, 0], [0, 1], [0.1, 1]])
    mined = _mine(page)
    assert mined.negatives == frozenset()
    assert mined.positives == {(1, 2)}


def test_missing_embeddings():
    page = utils.make_page(panels=PANELS, characters=CHARACTERS)
    with pytest.raises(MissingEmbeddingsError):
        _mine(page)


def test_mined_sets_are_disjoint():
    rng = np.random.default_rng(9)
    for _ in range(100):
        n = int(rng.integers(0, 8))
        characters = [utils.random_box(rng).to_list() for _ in range(n)]
        page = utils.make_page(panels=PANELS, characters=characters, embeddings=rng.normal(size=(n, 4)))
        mined = _mine(page)
        assert not mined.positives & mined.negatives
        assert all(i < j for i, j in mined.positives | mined.negatives)


def test_mine_text_pairs():
    page = utils.make_page(texts=[(60, 25, 70, 30), (5, 25, 10, 30)], characters=CHARACTERS)
    assert mine_text_pairs(page) == [(0, 2), (1, 0)]
    assert mine_text_pairs(utils.make_page(texts=[(0, 0, 1, 1)])) == []
