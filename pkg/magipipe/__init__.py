import logging

from magipipe.__version__ import __version__  # noqa
from magipipe.association import cluster_characters
from magipipe.config import RunConfig
from magipipe.config import load_run_config
from magipipe.geometry import Box
from magipipe.geometry import Tolerance
from magipipe.logger import set_logging_level
from magipipe.metrics import evaluate_dataset
from magipipe.ordering import reading_order
from magipipe.page import PageAnnotation
from magipipe.page import PageGraph
from magipipe.page import load_page_annotation
from magipipe.page import load_page_graph
from magipipe.pipeline import transcribe_page
from magipipe.schemas import DetectionClass
from magipipe.schemas import SpeakerSource
from magipipe.transcript import render

set_logging_level(loglevel=logging.INFO)

__all__ = [
    "Box",
    "Tolerance",
    "PageGraph",
    "PageAnnotation",
    "load_page_graph",
    "load_page_annotation",
    "reading_order",
    "cluster_characters",
    "transcribe_page",
    "render",
    "evaluate_dataset",
    "RunConfig",
    "load_run_config",
    "DetectionClass",
    "SpeakerSource",
    "set_logging_level",
]
