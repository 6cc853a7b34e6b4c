"""Run configuration: built-in defaults, then a YAML file, then command-line overrides."""
import logging
import os
from pathlib import Path
from typing import Any
from typing import Dict
from typing import Optional

import pydantic
import yaml

from magipipe.association.clustering import DEFAULT_TAU
from magipipe.association.speakers import DEFAULT_CONFIDENCE_CUTOFF
from magipipe.exceptions import InvalidConfigError
from magipipe.exceptions import InvalidPathError
from magipipe.geometry import DEFAULT_EPSILON_FRACTION
from magipipe.geometry import DEFAULT_EROSION_STEP_FRACTION
from magipipe.geometry import DEFAULT_MAX_EROSION_ITERS
from magipipe.geometry import Tolerance
from magipipe.metrics.detection import DEFAULT_IOU_THRESHOLD
from magipipe.metrics.detection import DEFAULT_TOP_K
from magipipe.metrics.evaluation import EvaluationConfig
from magipipe.schemas import SimilaritySource
from magipipe.schemas import SpeakerSource
from magipipe.schemas import StrictModel
from magipipe.synth.guillotine import DEFAULT_MAX_DEPTH

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "MAGI_PIPE_CONFIG"


class RunConfig(StrictModel):
    """Every tunable of the pipeline, echoed in the manifest of each run."""

    tau: float = DEFAULT_TAU
    confidence_cutoff: float = DEFAULT_CONFIDENCE_CUTOFF
    epsilon_fraction: float = DEFAULT_EPSILON_FRACTION
    erosion_step_fraction: float = DEFAULT_EROSION_STEP_FRACTION
    max_erosion_iters: int = DEFAULT_MAX_EROSION_ITERS
    iou_threshold: float = DEFAULT_IOU_THRESHOLD
    top_k: int = DEFAULT_TOP_K
    threshold_sweep: bool = False
    emit_panel_markers: bool = False
    speaker_baseline: SpeakerSource = SpeakerSource.MODEL
    similarity: SimilaritySource = SimilaritySource.SCORES
    seed: int = 0
    count: int = 10
    max_depth: int = DEFAULT_MAX_DEPTH
    noise: float = 0.0

    @pydantic.validator("tau", "confidence_cutoff")
    def unit_interval(cls, v):  # noqa: N805
        if not 0 <= v <= 1:
            raise ValueError(f"must be in [0, 1], got {v}")
        return v

    @pydantic.validator("epsilon_fraction", "erosion_step_fraction")
    def open_unit_interval(cls, v):  # noqa: N805
        if not 0 < v < 1:
            raise ValueError(f"must be in (0, 1), got {v}")
        return v

    @pydantic.validator("iou_threshold")
    def valid_iou(cls, v):  # noqa: N805
        if not 0 < v <= 1:
            raise ValueError(f"must be in (0, 1], got {v}")
        return v

    @pydantic.validator("top_k", "max_erosion_iters")
    def at_least_one(cls, v):  # noqa: N805
        if v < 1:
            raise ValueError(f"must be at least 1, got {v}")
        return v

    @pydantic.validator("count", "max_depth", "noise")
    def non_negative(cls, v):  # noqa: N805
        if v < 0:
            raise ValueError(f"must be non negative, got {v}")
        return v

    def tolerance_for(self, width: float, height: float) -> Tolerance:
        return Tolerance.for_page(
            width,
            height,
            epsilon_fraction=self.epsilon_fraction,
            erosion_step_fraction=self.erosion_step_fraction,
            max_erosion_iters=self.max_erosion_iters,
        )

    def evaluation_config(self) -> EvaluationConfig:
        return EvaluationConfig(
            tau=self.tau,
            iou_threshold=self.iou_threshold,
            top_k=self.top_k,
            speaker_baseline=self.speaker_baseline,
            similarity=self.similarity,
        )


def _read_config_file(path: Path) -> Dict[str, Any]:
    if not path.is_file():
        raise InvalidPathError(f"Config file {path} does not exist")
    with path.open("r", encoding="utf-8") as f:
        content = yaml.safe_load(f)
    if content is None:
        return {}
    if not isinstance(content, dict):
        raise InvalidConfigError(f"Config file {path} must contain a mapping, found {type(content).__name__}")
    return content


def load_run_config(config_path: Optional[Path] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Merge the built-in defaults, the config file and the overrides, later ones win.

    Args:
        config_path (pathlib.Path, Optional): YAML config file. Defaults to the file named by the
            ``MAGI_PIPE_CONFIG`` environment variable, if any.
        overrides (dict, Optional): values set on the command line, None values are ignored.

    Raises:
        InvalidPathError: the config file does not exist
        InvalidConfigError: an unknown key or a value out of range

    Returns:
        RunConfig: the effective configuration
    """
    if config_path is None and os.environ.get(CONFIG_ENV_VAR):
        config_path = Path(os.environ[CONFIG_ENV_VAR])

    values: Dict[str, Any] = {}
    if config_path is not None:
        values.update(_read_config_file(Path(config_path)))
        logger.debug(f"Loaded config file {config_path}")
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})

    try:
        return RunConfig(**values)
    except pydantic.ValidationError as e:
        raise InvalidConfigError(str(e)) from e
