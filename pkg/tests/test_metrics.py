import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adaptscal.errors import InvalidArgumentError
from adaptscal.metrics import REFERENCE_SEED, MetricSeries, front_energy, igd, reference_front
from adaptscal.potential import Morse
from adaptscal.problems import Lame, get_problem

# direct evaluation of both 15-point configurations on the unit quarter circle, C = 30
EQUAL_SPACING_ENERGY = 0.004448863233841624
CLUSTERED_ENERGY = 0.08921497766188503


def _arc(angles):
    return np.stack([np.cos(angles), np.sin(angles)], axis=1)


def test_igd_examples():
    R = np.random.default_rng(0).random((30, 2))
    assert igd(R, R) == 0.0
    assert igd([[0, 1], [1, 0]], [[0, 1]]) == pytest.approx(math.sqrt(2) / 2)
    ref = np.random.default_rng(1).random((100, 2))
    assert igd(ref, ref + [1e-3, 0.0]) <= 1e-3 + 1e-15


def test_igd_empty():
    with pytest.raises(InvalidArgumentError):
        igd(np.zeros((0, 2)), [[0, 0]])
    with pytest.raises(InvalidArgumentError):
        igd([[0, 0]], np.zeros((0, 2)))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_igd_non_increasing_when_adding_solutions(seed):
    rng = np.random.default_rng(seed)
    ref, sol = rng.random((50, 3)), rng.random((5, 3))
    extra = rng.random((1, 3))
    assert igd(ref, np.vstack([sol, extra])) <= igd(ref, sol)


def test_igd_zero_only_when_covered():
    ref = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert igd(ref, np.vstack([ref, [[0.5, 0.5]]])) == 0.0
    assert igd(ref, ref[:1] + 1e-9) > 0.0


def test_front_energy_examples():
    assert front_energy(Morse(30), [[0.2, 0.3]]) == 0.0
    assert front_energy(Morse(30), [[0.2, 0.3], [0.2, 0.3]]) == pytest.approx(0.5)


def test_spread_front_has_lower_energy():
    equal = front_energy(Morse(30), _arc(np.linspace(0, math.pi / 2, 15)))
    clustered = front_energy(Morse(30), _arc(np.linspace(0, math.pi / 8, 15)))
    assert equal == pytest.approx(EQUAL_SPACING_ENERGY, rel=1e-12)
    assert clustered == pytest.approx(CLUSTERED_ENERGY, rel=1e-12)
    assert equal < clustered


def test_reference_front_deterministic():
    p = get_problem("lame3_g2")
    a, b = reference_front(p), reference_front(p)
    assert a.shape == (5000, 3)
    np.testing.assert_array_equal(a, b)
    assert reference_front(Lame(2, 0.25)).shape == (2000, 2)
    assert REFERENCE_SEED == 20220601


def test_metric_series():
    p = Lame(2, 2)
    ref = reference_front(p, 200)
    fronts = [p.oracle_solve(np.random.default_rng(i).dirichlet([1, 1], 5)) for i in range(4)]
    ms = MetricSeries.from_fronts(fronts, ref)
    assert len(ms) == 4
    np.testing.assert_array_equal(ms.k, np.arange(4))
    assert np.all(ms.energy >= 0) and np.all(ms.igd >= 0)
    assert ms.energy[2] == pytest.approx(front_energy(Morse(30), fronts[2]))
    assert ms.igd[3] == pytest.approx(igd(ref, fronts[3]))
