import pytest

from magipipe.association.clustering import ClusterSet
from magipipe.association.speakers import Speaker
from magipipe.association.speakers import SpeakerAssignment
from magipipe.config import RunConfig
from magipipe.ordering.reading_order import ReadingOrder
from magipipe.pipeline import transcribe_page
from magipipe.transcript import UNKNOWN_SPEAKER
from magipipe.transcript import Transcript
from magipipe.transcript import TranscriptLine
from magipipe.transcript import generate_transcript
from magipipe.transcript import name_clusters
from magipipe.transcript import parse_transcript
from magipipe.transcript import render

from . import utils


def test_dialogue_page_transcript(dialogue_page, run_config):
    result = transcribe_page(dialogue_page, run_config)
    assert result.order.panel_order == (1, 0)
    assert result.order.text_order == (1, 2, 0)
    assert result.clusters.labels == (0, 0)
    # the third text is below the confidence cutoff
    assert render(result.transcript) == f"1: right\n{UNKNOWN_SPEAKER}: quiet\n1: left\n"


def test_clusters_named_by_first_speech(dialogue_page):
    result = transcribe_page(dialogue_page, RunConfig(tau=0.95, confidence_cutoff=0.0))
    assert result.clusters.labels == (0, 1)
    assert render(result.transcript) == "1: right\n1: quiet\n2: left\n"


def test_nearest_baseline_speakers(dialogue_page):
    result = transcribe_page(dialogue_page, RunConfig(tau=0.95, speaker_baseline="nearest"))
    assert [s.character for s in result.speakers.speakers] == [0, 1, 1]
    assert all(s.confidence == 1.0 for s in result.speakers.speakers)


def test_panel_markers(dialogue_page, run_config):
    result = transcribe_page(dialogue_page, run_config)
    assert render(result.transcript, panel_markers=True) == (
        f"# panel 1\n1: right\n{UNKNOWN_SPEAKER}: quiet\n# panel 0\n1: left\n"
    )


def test_silent_clusters_named_last():
    clusters = ClusterSet(labels=(0, 1, 2), threshold_used=0.65)
    order = ReadingOrder(panel_order=(), text_order=(0,))
    speakers = SpeakerAssignment(speakers=(Speaker(character=2, confidence=0.9),))
    assert name_clusters(clusters, order, speakers) == {2: "1", 0: "2", 1: "3"}


def test_texts_without_content():
    page = utils.make_page(texts=[(0, 0, 10, 10)])
    transcript = generate_transcript(
        page,
        ReadingOrder(panel_order=(), text_order=(0,)),
        ClusterSet(labels=(), threshold_used=0.65),
        SpeakerAssignment(speakers=(None,)),
    )
    assert transcript.lines == (TranscriptLine(speaker_label=UNKNOWN_SPEAKER, text_content="<text 0>", text_index=0),)


def test_empty_page(run_config):
    result = transcribe_page(utils.make_page(), run_config)
    assert result.transcript.lines == ()
    assert render(result.transcript) == ""


def test_text_outside_panels_joins_the_nearest_one(run_config):
    page = utils.make_page(
        panels=[(0, 0, 100, 40)],
        texts=[(10, 90, 20, 95), (10, 10, 20, 20)],
        contents=["outside", "inside"],
    )
    result = transcribe_page(page, run_config)
    assert result.assignment.text_panel == (0, 0)
    assert [line.text_content for line in result.transcript.lines] == ["inside", "outside"]


def test_page_without_panels(run_config):
    page = utils.make_page(texts=[(10, 10, 20, 20), (80, 10, 90, 20)], contents=["left", "right"])
    result = transcribe_page(page, run_config)
    assert render(result.transcript, panel_markers=True) == f"# unassigned\n{UNKNOWN_SPEAKER}: right\n" + (
        f"{UNKNOWN_SPEAKER}: left\n"
    )


@pytest.mark.parametrize(
    "content",
    [
        "plain",
        "two\nlines",
        "back\\slash",
        "literal \\n is not a line feed",
        "label: like content",
        "",
        "# not a marker",
    ],
)
def test_render_keeps_contents(content):
    transcript = Transcript(
        page_id="page", lines=(TranscriptLine(speaker_label="1", text_content=content, text_index=0),)
    )
    rendered = render(transcript)
    assert rendered.count("\n") == 1
    assert parse_transcript(rendered) == [("1", content)]
