import json
from dataclasses import dataclass
from typing import Optional
from typing import Tuple

import pydantic

from magipipe.exceptions import AnnotationFormatError
from magipipe.geometry import Box
from magipipe.schemas import PageAnnotationFile
from magipipe.schemas import error_location
from magipipe.serializers import JsonSerializer


@dataclass(frozen=True)
class PageAnnotation:
    """Ground truth of one page.

    ``gt_char_identity[c]`` is the identity label of ground-truth character ``c`` and every
    ``(t, c)`` of ``gt_speaker_edges`` says that character ``c`` speaks text ``t``. A text has at
    most one speaker. ``gt_panels`` is None when panels are not annotated.
    """

    page_id: str
    gt_panels: Optional[Tuple[Box, ...]]
    gt_texts: Tuple[Box, ...]
    gt_characters: Tuple[Box, ...]
    gt_char_identity: Tuple[int, ...]
    gt_speaker_edges: Tuple[Tuple[int, int], ...]


def _boxes(coords, path: str) -> Tuple[Box, ...]:
    boxes = []
    for k, box in enumerate(coords):
        try:
            boxes.append(Box.from_list(box))
        except ValueError as e:
            raise AnnotationFormatError(str(e), field_path=f"{path}.{k}") from e
    return tuple(boxes)


def page_annotation_from_dict(data: dict) -> PageAnnotation:
    """Validate a decoded annotation document.

    Raises:
        AnnotationFormatError: the document is malformed, the message starts with the field path.
    """
    try:
        doc = PageAnnotationFile.parse_obj(data)
    except pydantic.ValidationError as e:
        path, msg = error_location(e)
        raise AnnotationFormatError(msg, field_path=path) from e

    if len(doc.gt_char_identity) != len(doc.gt_characters):
        raise AnnotationFormatError(
            f"expected {len(doc.gt_characters)} labels, found {len(doc.gt_char_identity)}",
            field_path="gt_char_identity",
        )

    spoken = set()
    for k, (t, c) in enumerate(doc.gt_speaker_edges):
        if not 0 <= t < len(doc.gt_texts) or not 0 <= c < len(doc.gt_characters):
            raise AnnotationFormatError(f"edge ({t}, {c}) refers to a missing box", field_path=f"gt_speaker_edges.{k}")
        if t in spoken:
            raise AnnotationFormatError(f"text {t} has more than one speaker", field_path=f"gt_speaker_edges.{k}")
        spoken.add(t)

    return PageAnnotation(
        page_id=doc.page_id,
        gt_panels=None if doc.gt_panels is None else _boxes(doc.gt_panels, "gt_panels"),
        gt_texts=_boxes(doc.gt_texts, "gt_texts"),
        gt_characters=_boxes(doc.gt_characters, "gt_characters"),
        gt_char_identity=tuple(doc.gt_char_identity),
        gt_speaker_edges=tuple((t, c) for t, c in doc.gt_speaker_edges),
    )


def load_page_annotation(source: bytes) -> PageAnnotation:
    """Parse a UTF-8 JSON annotation document.

    Raises:
        AnnotationFormatError: the bytes are not a valid annotation document
    """
    try:
        data = json.loads(source.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise AnnotationFormatError(f"not a UTF-8 JSON document ({e})") from e
    if not isinstance(data, dict):
        raise AnnotationFormatError("the document must be a JSON object")
    return page_annotation_from_dict(data)


def page_annotation_to_dict(annotation: PageAnnotation) -> dict:
    return {
        "page_id": annotation.page_id,
        "gt_panels": None if annotation.gt_panels is None else [b.to_list() for b in annotation.gt_panels],
        "gt_texts": [b.to_list() for b in annotation.gt_texts],
        "gt_characters": [b.to_list() for b in annotation.gt_characters],
        "gt_char_identity": list(annotation.gt_char_identity),
        "gt_speaker_edges": [list(edge) for edge in annotation.gt_speaker_edges],
    }


def dump_page_annotation(annotation: PageAnnotation) -> bytes:
    return JsonSerializer.dumps(page_annotation_to_dict(annotation)).encode("utf-8")
