"""Schemas of the files read and written by magipipe.
"""
import math
from enum import Enum
from typing import List
from typing import Optional
from typing import Tuple

import pydantic


class DetectionClass(str, Enum):
    PANEL = "panel"
    TEXT = "text"
    CHARACTER = "character"


class SpeakerSource(str, Enum):
    """Where the speaker of each text comes from."""

    MODEL = "model"
    NEAREST = "nearest"


class SimilaritySource(str, Enum):
    """Character similarity used to cluster and rank characters during evaluation."""

    SCORES = "scores"
    EMBEDDINGS = "embeddings"


class StrictModel(pydantic.BaseModel):
    """Base model configuration, unknown fields are rejected"""

    class Config:
        extra = "forbid"


def _check_box_list(boxes: List[List[float]]) -> List[List[float]]:
    for k, box in enumerate(boxes):
        _check_box(box, prefix=f"item {k}: ")
    return boxes


def _check_box(box: List[float], prefix: str = "") -> List[float]:
    if len(box) != 4:
        raise ValueError(f"{prefix}a box has 4 coordinates (x1, y1, x2, y2), got {len(box)}")
    if not all(math.isfinite(c) for c in box):
        raise ValueError(f"{prefix}box coordinates must be finite, got {box}")
    if box[0] > box[2] or box[1] > box[3]:
        raise ValueError(f"{prefix}box corners are inverted: {box}")
    return box


class TextBlockFile(StrictModel):
    """A detected text block as written in a page-graph file."""

    box: List[float]
    content: Optional[str] = None

    @pydantic.validator("box")
    def valid_box(cls, v):  # noqa: N805
        return _check_box(v)


class PageGraphFile(StrictModel):
    """On-disk layout of a page graph.

    Detection scores are optional and default to 1.0 for every box.
    """

    page_id: str
    width: float
    height: float
    panels: List[List[float]] = []
    texts: List[TextBlockFile] = []
    characters: List[List[float]] = []
    char_char_scores: List[List[float]] = []
    text_char_scores: List[List[float]] = []
    char_embeddings: Optional[List[List[float]]] = None
    panel_scores: Optional[List[float]] = None
    text_scores: Optional[List[float]] = None
    character_scores: Optional[List[float]] = None

    @pydantic.validator("width", "height")
    def positive_dimension(cls, v):  # noqa: N805
        if not math.isfinite(v) or v <= 0:
            raise ValueError(f"page dimensions must be finite and positive, got {v}")
        return v

    @pydantic.validator("panels", "characters")
    def valid_boxes(cls, v):  # noqa: N805
        return _check_box_list(v)


class PageAnnotationFile(StrictModel):
    """On-disk layout of the ground truth of one page. ``gt_panels`` is null when panels are not annotated."""

    page_id: str
    gt_panels: Optional[List[List[float]]] = None
    gt_texts: List[List[float]] = []
    gt_characters: List[List[float]] = []
    gt_char_identity: List[int] = []
    gt_speaker_edges: List[Tuple[int, int]] = []

    @pydantic.validator("gt_texts", "gt_characters")
    def valid_boxes(cls, v):  # noqa: N805
        return _check_box_list(v)

    @pydantic.validator("gt_panels")
    def valid_panels(cls, v):  # noqa: N805
        if v is not None:
            _check_box_list(v)
        return v


def error_location(error: pydantic.ValidationError) -> Tuple[str, str]:
    """Dotted field path and message of the first error of a pydantic validation error."""
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"]), first["msg"]
