import numpy as np
import pytest

from magipipe.exceptions import LabelLengthError
from magipipe.metrics.clustering import clustering_metrics

from .. import utils


@pytest.mark.parametrize(
    "pred, gt",
    [
        ([0, 0, 1], [0, 0, 1]),
        ([5, 5, 2], [0, 0, 1]),
        ([0], [3]),
        ([0, 0, 0], [1, 1, 1]),
        ([0, 1, 2, 3], [3, 2, 1, 0]),
    ],
)
def test_identical_partitions(pred, gt):
    assert clustering_metrics(pred, gt) == (1.0, 1.0)


def _check_against_contingency_formula(n_pairs):
    rng = np.random.default_rng(0)
    for _ in range(n_pairs):
        n = int(rng.integers(2, 13))
        pred = rng.integers(0, 4, size=n).tolist()
        gt = rng.integers(0, 4, size=n).tolist()
        if len(set(pred)) == 1 and len(set(gt)) == 1:
            continue
        ami, nmi = clustering_metrics(pred, gt)
        expected_ami, expected_nmi = utils.contingency_ami_nmi(pred, gt)
        assert ami == pytest.approx(expected_ami, abs=1e-7)
        assert nmi == pytest.approx(expected_nmi, abs=1e-7)


def test_matches_contingency_formula():
    _check_against_contingency_formula(100)


@pytest.mark.slow
def test_matches_contingency_formula_at_scale():
    _check_against_contingency_formula(1000)


def test_ami_of_random_labels_is_centred():
    rng = np.random.default_rng(1)
    gt = [0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2]
    scores = np.array([clustering_metrics(rng.integers(0, 3, size=12).tolist(), gt) for _ in range(1000)])
    assert abs(scores[:, 0].mean()) <= 0.05
    # NMI is not corrected for chance
    assert scores[:, 1].mean() > 0.05
    # chance adjusted values are not clipped
    assert scores[:, 0].min() < 0


def test_length_mismatch():
    with pytest.raises(LabelLengthError):
        clustering_metrics([0, 1], [0])


def test_no_labels():
    with pytest.raises(ValueError):
        clustering_metrics([], [])
