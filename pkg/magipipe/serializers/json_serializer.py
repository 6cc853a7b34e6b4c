import json
from pathlib import Path
from typing import Any

import numpy as np
import pydantic

from magipipe.serializers.serializer import Serializer


def _default(obj: Any) -> Any:
    if isinstance(obj, pydantic.BaseModel):
        return obj.dict()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


class JsonSerializer(Serializer):
    """UTF-8 JSON, keys kept in insertion order so that equal states give identical files."""

    @staticmethod
    def dumps(state: Any) -> str:
        return json.dumps(state, indent=2, ensure_ascii=False, default=_default) + "\n"

    @staticmethod
    def save(state: Any, path: Path):
        """Write the state as JSON to path

        Args:
            state (typing.Any): state to save, pydantic models and numpy values are converted
            path (pathlib.Path): path where to save it
        """
        Path(path).write_bytes(JsonSerializer.dumps(state).encode("utf-8"))

    @staticmethod
    def load(path: Path) -> Any:
        """Load an object from a JSON file

        Args:
            path (pathlib.Path): path to the saved file

        Returns:
            Any: loaded state
        """
        return json.loads(Path(path).read_bytes().decode("utf-8"))
