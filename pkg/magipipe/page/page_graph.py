import json
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
import pydantic

from magipipe.exceptions import NonFiniteScoreError
from magipipe.exceptions import PageGraphFormatError
from magipipe.exceptions import ScoreShapeError
from magipipe.geometry import Box
from magipipe.schemas import PageGraphFile
from magipipe.schemas import error_location
from magipipe.serializers import JsonSerializer

logger = logging.getLogger(__name__)

ASYMMETRY_TOLERANCE = 1e-6
_SCORE_FIELDS = {"panels": "panel_scores", "texts": "text_scores", "characters": "character_scores"}


@dataclass(frozen=True)
class TextBlock:
    box: Box
    content: Optional[str] = None


@dataclass(frozen=True, eq=False)
class PageGraph:
    """Detections and association scores of one page.

    ``char_char_scores`` is symmetric with a unit diagonal, ``text_char_scores`` has one row per
    text and one column per character. ``warnings`` holds what was repaired at load time and is
    ignored by equality.
    """

    page_id: str
    width: float
    height: float
    panels: Tuple[Box, ...]
    texts: Tuple[TextBlock, ...]
    characters: Tuple[Box, ...]
    char_char_scores: np.ndarray
    text_char_scores: np.ndarray
    char_embeddings: Optional[np.ndarray] = None
    panel_scores: Optional[Tuple[float, ...]] = None
    text_scores: Optional[Tuple[float, ...]] = None
    character_scores: Optional[Tuple[float, ...]] = None
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def __eq__(self, other):
        if not isinstance(other, PageGraph):
            return NotImplemented
        if (self.char_embeddings is None) != (other.char_embeddings is None):
            return False
        return (
            self.page_id == other.page_id
            and self.width == other.width
            and self.height == other.height
            and self.panels == other.panels
            and self.texts == other.texts
            and self.characters == other.characters
            and np.array_equal(self.char_char_scores, other.char_char_scores)
            and np.array_equal(self.text_char_scores, other.text_char_scores)
            and (self.char_embeddings is None or np.array_equal(self.char_embeddings, other.char_embeddings))
            and self.panel_scores == other.panel_scores
            and self.text_scores == other.text_scores
            and self.character_scores == other.character_scores
        )

    __hash__ = None

    @property
    def n_panels(self) -> int:
        return len(self.panels)

    @property
    def n_texts(self) -> int:
        return len(self.texts)

    @property
    def n_characters(self) -> int:
        return len(self.characters)

    def detection_scores(self, name: str) -> Tuple[float, ...]:
        """Detection confidences of ``panels``, ``texts`` or ``characters``, 1.0 when not provided."""
        scores = getattr(self, _SCORE_FIELDS[name])
        if scores is None:
            return (1.0,) * len(getattr(self, name))
        return scores


def _clamped(coords: List[float], width: float, height: float, path: str, warnings: List[str]) -> Box:
    x1, y1, x2, y2 = coords
    clamped = [
        min(max(x1, 0.0), width),
        min(max(y1, 0.0), height),
        min(max(x2, 0.0), width),
        min(max(y2, 0.0), height),
    ]
    if clamped != [x1, y1, x2, y2]:
        warnings.append(f"{path}: box {coords} clamped to the page")
    return Box.from_list(clamped)


def _matrix(rows: List[List[float]], shape: Tuple[int, int], path: str) -> np.ndarray:
    if len(rows) == 0 and 0 in shape:
        return np.zeros(shape)
    if len(rows) != shape[0] or any(len(row) != shape[1] for row in rows):
        found = (len(rows), len(rows[0]) if rows else 0)
        raise ScoreShapeError(f"expected shape {shape}, found {found}", field_path=path)
    matrix = np.array(rows, dtype=float).reshape(shape)
    bad = np.argwhere(~np.isfinite(matrix))
    if len(bad):
        i, j = bad[0]
        raise NonFiniteScoreError("scores must be finite", field_path=f"{path}.{i}.{j}")
    return matrix


def _check_unit_range(matrix: np.ndarray, path: str):
    bad = np.argwhere((matrix < 0) | (matrix > 1))
    if len(bad):
        i, j = bad[0]
        raise PageGraphFormatError(f"score {matrix[i, j]} outside [0, 1]", field_path=f"{path}.{i}.{j}")


def _detection_scores(values: Optional[List[float]], n: int, path: str) -> Optional[Tuple[float, ...]]:
    if values is None:
        return None
    if len(values) != n:
        raise ScoreShapeError(f"expected {n} scores, found {len(values)}", field_path=path)
    for k, value in enumerate(values):
        if not math.isfinite(value):
            raise NonFiniteScoreError("scores must be finite", field_path=f"{path}.{k}")
    return tuple(float(v) for v in values)


def page_graph_from_dict(data: dict) -> PageGraph:
    """Validate a decoded page-graph document and build the page graph.

    Boxes reaching outside the page are clamped, ``char_char_scores`` is symmetrised and its
    diagonal set to 1. Both repairs are reported as warnings.

    Raises:
        PageGraphFormatError: the document is malformed, the message starts with the field path.
    """
    try:
        doc = PageGraphFile.parse_obj(data)
    except pydantic.ValidationError as e:
        path, msg = error_location(e)
        raise PageGraphFormatError(msg, field_path=path) from e

    warnings: List[str] = []
    panels = tuple(
        _clamped(coords, doc.width, doc.height, f"panels.{k}", warnings) for k, coords in enumerate(doc.panels)
    )
    texts = tuple(
        TextBlock(box=_clamped(t.box, doc.width, doc.height, f"texts.{k}.box", warnings), content=t.content)
        for k, t in enumerate(doc.texts)
    )
    characters = tuple(
        _clamped(coords, doc.width, doc.height, f"characters.{k}", warnings)
        for k, coords in enumerate(doc.characters)
    )
    n_char, n_text = len(characters), len(texts)

    char_char = _matrix(doc.char_char_scores, (n_char, n_char), "char_char_scores")
    _check_unit_range(char_char, "char_char_scores")
    if n_char:
        asymmetry = float(np.max(np.abs(char_char - char_char.T)))
        if asymmetry > ASYMMETRY_TOLERANCE:
            warnings.append(f"char_char_scores: asymmetric by up to {asymmetry:.3g}, symmetrised")
        char_char = (char_char + char_char.T) / 2
        np.fill_diagonal(char_char, 1.0)

    text_char = _matrix(doc.text_char_scores, (n_text, n_char), "text_char_scores")
    _check_unit_range(text_char, "text_char_scores")

    embeddings = None
    if doc.char_embeddings is not None:
        dim = len(doc.char_embeddings[0]) if doc.char_embeddings else 0
        embeddings = _matrix(doc.char_embeddings, (n_char, dim), "char_embeddings")

    for message in warnings:
        logger.warning(f"{doc.page_id}: {message}")

    return PageGraph(
        page_id=doc.page_id,
        width=doc.width,
        height=doc.height,
        panels=panels,
        texts=texts,
        characters=characters,
        char_char_scores=char_char,
        text_char_scores=text_char,
        char_embeddings=embeddings,
        panel_scores=_detection_scores(doc.panel_scores, len(panels), "panel_scores"),
        text_scores=_detection_scores(doc.text_scores, n_text, "text_scores"),
        character_scores=_detection_scores(doc.character_scores, n_char, "character_scores"),
        warnings=tuple(warnings),
    )


def load_page_graph(source: bytes) -> PageGraph:
    """Parse a UTF-8 JSON page-graph document.

    Args:
        source (bytes): content of a page-graph file

    Raises:
        PageGraphFormatError: the bytes are not a valid page-graph document

    Returns:
        PageGraph: the loaded page
    """
    try:
        data = json.loads(source.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise PageGraphFormatError(f"not a UTF-8 JSON document ({e})") from e
    if not isinstance(data, dict):
        raise PageGraphFormatError("the document must be a JSON object")
    return page_graph_from_dict(data)


def _rows(matrix: np.ndarray) -> List[List[float]]:
    return [[float(v) for v in row] for row in matrix]


def page_graph_to_dict(page: PageGraph) -> dict:
    data = {
        "page_id": page.page_id,
        "width": page.width,
        "height": page.height,
        "panels": [p.to_list() for p in page.panels],
        "texts": [{"box": t.box.to_list(), "content": t.content} for t in page.texts],
        "characters": [c.to_list() for c in page.characters],
        "char_char_scores": _rows(page.char_char_scores),
        "text_char_scores": _rows(page.text_char_scores),
        "char_embeddings": None if page.char_embeddings is None else _rows(page.char_embeddings),
    }
    for name in ("panel_scores", "text_scores", "character_scores"):
        scores: Optional[Sequence[float]] = getattr(page, name)
        if scores is not None:
            data[name] = list(scores)
    return data


def dump_page_graph(page: PageGraph) -> bytes:
    """Serialise a page graph, loading the result gives back an equal page graph."""
    return JsonSerializer.dumps(page_graph_to_dict(page)).encode("utf-8")
