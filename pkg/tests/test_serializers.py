import json

import numpy as np
import pytest

from magipipe.metrics.evaluation import SweepPoint
from magipipe.serializers import JsonSerializer


def test_save_and_load(tmp_path):
    state = {
        "point": SweepPoint(tau=0.5, ami=0.25),
        "matrix": np.eye(2),
        "count": np.int64(3),
        "value": np.float32(0.5),
        "pairs": frozenset({(1, 2), (0, 1)}),
        "label": "⟨?⟩",
    }
    path = tmp_path / "state.json"
    JsonSerializer.save(state, path)
    assert JsonSerializer.load(path) == {
        "point": {"tau": 0.5, "ami": 0.25, "nmi": None},
        "matrix": [[1.0, 0.0], [0.0, 1.0]],
        "count": 3,
        "value": 0.5,
        "pairs": [[0, 1], [1, 2]],
        "label": "⟨?⟩",
    }
    # non ASCII characters are written as is
    assert "⟨?⟩" in path.read_text(encoding="utf-8")


def test_identical_states_give_identical_files():
    state = {"b": [1, 2], "a": {"x": 0.1}}
    assert JsonSerializer.dumps(state) == JsonSerializer.dumps(json.loads(JsonSerializer.dumps(state)))
    assert JsonSerializer.dumps(state).endswith("}\n")


def test_unknown_type():
    with pytest.raises(TypeError):
        JsonSerializer.dumps({"value": object()})
