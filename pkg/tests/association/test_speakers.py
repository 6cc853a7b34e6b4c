import logging

import numpy as np
import pytest

from magipipe.association.speakers import Speaker
from magipipe.association.speakers import SpeakerAssignment
from magipipe.association.speakers import assign_speakers
from magipipe.association.speakers import filter_low_confidence
from magipipe.association.speakers import nearest_character_baseline

from .. import utils

CHARACTERS = [(0, 0, 10, 10), (80, 80, 90, 90)]


def test_ties_go_to_lowest_index():
    page = utils.make_page(texts=[(0, 0, 1, 1)], characters=CHARACTERS, text_char=[[0.5, 0.5]])
    assert assign_speakers(page).speakers == (Speaker(character=0, confidence=0.5),)


def test_argmax(dialogue_page):
    speakers = assign_speakers(dialogue_page)
    assert [s.character for s in speakers.speakers] == [0, 1, 1]
    assert speakers[2].confidence == 0.3


def test_zero_row_has_no_speaker(caplog):
    page = utils.make_page(texts=[(0, 0, 1, 1)], characters=CHARACTERS, text_char=[[0.0, 0.0]])
    with caplog.at_level(logging.WARNING):
        speakers = assign_speakers(page)
    assert speakers.speakers == (None,)
    assert len(speakers.warnings) == 1
    assert len(caplog.records) == 1


def test_no_characters():
    page = utils.make_page(texts=[(0, 0, 1, 1)])
    assert assign_speakers(page).speakers == (None,)


def test_argmax_invariant_under_increasing_transform():
    rng = np.random.default_rng(2)
    for _ in range(100):
        scores = rng.uniform(0.01, 1, size=(4, 3))
        page = utils.make_page(texts=[(0, 0, 1, 1)] * 4, characters=CHARACTERS + [(40, 40, 50, 50)], text_char=scores)
        transformed = utils.make_page(
            texts=[(0, 0, 1, 1)] * 4, characters=CHARACTERS + [(40, 40, 50, 50)], text_char=scores**3
        )
        before = [s.character for s in assign_speakers(page).speakers]
        after = [s.character for s in assign_speakers(transformed).speakers]
        assert before == after


def test_filter_low_confidence():
    assignment = SpeakerAssignment(speakers=(Speaker(0, 0.39), Speaker(1, 0.4), None, Speaker(1, 0.9)))
    filtered = filter_low_confidence(assignment, 0.4)
    assert filtered.speakers == (None, Speaker(1, 0.4), None, Speaker(1, 0.9))
    assert filter_low_confidence(filtered, 0.4) == filtered


@pytest.mark.parametrize("cutoff", [-0.5, 1.5])
def test_filter_invalid_cutoff(cutoff):
    with pytest.raises(ValueError):
        filter_low_confidence(SpeakerAssignment(speakers=()), cutoff)


def test_nearest_character_baseline():
    page = utils.make_page(texts=[(12, 12, 14, 14), (70, 70, 75, 75)], characters=CHARACTERS)
    speakers = nearest_character_baseline(page)
    assert speakers.speakers == (Speaker(0, 1.0), Speaker(1, 1.0))
