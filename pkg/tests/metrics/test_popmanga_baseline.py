import os
from pathlib import Path

import numpy as np
import pytest

from magipipe.association.speakers import nearest_character_baseline
from magipipe.metrics.matching import GroundTruthMatch
from magipipe.metrics.speakers import recall_at_num_texts
from magipipe.page.annotation import load_page_annotation
from magipipe.page.page_graph import PageGraph
from magipipe.page.page_graph import TextBlock

DATA_ENV_VAR = "MAGI_PIPE_POPMANGA"

pytestmark = [
    pytest.mark.data,
    pytest.mark.skipif(not os.environ.get(DATA_ENV_VAR), reason=f"{DATA_ENV_VAR} is not set"),
]


def _page_from_annotation(annotation) -> PageGraph:
    boxes = list(annotation.gt_texts) + list(annotation.gt_characters)
    width = max((b.x2 for b in boxes), default=1.0)
    height = max((b.y2 for b in boxes), default=1.0)
    n_texts, n_chars = len(annotation.gt_texts), len(annotation.gt_characters)
    return PageGraph(
        page_id=annotation.page_id,
        width=max(width, 1.0),
        height=max(height, 1.0),
        panels=annotation.gt_panels or (),
        texts=tuple(TextBlock(box=b) for b in annotation.gt_texts),
        characters=annotation.gt_characters,
        char_char_scores=np.eye(n_chars),
        text_char_scores=np.zeros((n_texts, n_chars)),
    )


def _dataset_recall(split: str) -> float:
    """Recall of the nearest character speakers pooled over every ground-truth edge of the split."""
    correct, total = 0.0, 0
    for path in sorted((Path(os.environ[DATA_ENV_VAR]) / split).glob("*.annotation.json")):
        annotation = load_page_annotation(path.read_bytes())
        if not annotation.gt_speaker_edges:
            continue
        page = _page_from_annotation(annotation)
        match = GroundTruthMatch.identity(page.n_texts, page.n_characters)
        recall = recall_at_num_texts(nearest_character_baseline(page), annotation.gt_speaker_edges, match)
        correct += recall * len(annotation.gt_speaker_edges)
        total += len(annotation.gt_speaker_edges)
    if total == 0:
        pytest.skip(f"no annotated speaker in {split}")
    return correct / total


@pytest.mark.parametrize("split, expected", [("test_s", 0.7758), ("test_u", 0.7659)])
def test_nearest_character_baseline(split, expected):
    assert _dataset_recall(split) == pytest.approx(expected, abs=0.01)
