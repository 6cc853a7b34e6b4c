from typing import Optional


class PageGraphFormatError(Exception):
    """The page-graph file is malformed.

    Args:
        message (str): what is wrong
        field_path (str, Optional): dotted path of the offending field, e.g. ``texts.3.box``
    """

    def __init__(self, message: str, field_path: Optional[str] = None):
        self.field_path = field_path
        super().__init__(f"{field_path}: {message}" if field_path else message)


class ScoreShapeError(PageGraphFormatError):
    """A score or embedding matrix does not have the shape implied by the detected boxes."""


class NonFiniteScoreError(PageGraphFormatError):
    """A score or embedding matrix contains NaN or infinite values."""


class AnnotationFormatError(PageGraphFormatError):
    """The ground-truth annotation file is malformed."""


class MissingEmbeddingsError(Exception):
    """Character pair mining needs the per-character embeddings of the page graph."""


class LabelLengthError(Exception):
    """The predicted and ground-truth label sequences do not have the same length."""


class SimilarityShapeError(Exception):
    """The similarity matrix must be square and match the number of ground-truth labels."""


class PageIdMismatchError(Exception):
    """A prediction and its annotation do not refer to the same page."""


class EmptyDatasetError(Exception):
    """No pages to evaluate."""


class InvalidConfigError(Exception):
    """The run configuration is not valid."""


class InvalidPathError(Exception):
    """Invalid path."""
