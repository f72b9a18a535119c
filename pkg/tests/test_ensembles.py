import math

import numpy as np
import pytest

from markovspectra import linalg
from markovspectra.ensembles import (
    bernoulli,
    dirichlet_markov_sample,
    exponential,
    heavy_tail,
    mean_matrix,
    parse_law,
    sample_array,
    sample_entry,
    sample_iid_matrix,
    shifted_uniform,
    to_markov,
    uniform,
)
from markovspectra.matrix import Matrix
from markovspectra.rng import SeededStream


# ---------------------------------------------------------------------------
# laws and parsing
# ---------------------------------------------------------------------------


def test_parse_law_strings():
    assert parse_law("exponential:rate=1").family == "exponential"
    assert parse_law("bernoulli:p=0.5").param("p") == 0.5
    assert parse_law("uniform").family == "uniform"
    assert parse_law("heavytail:beta=0.75").param("beta") == 0.75
    law = parse_law("shifteduniform:a=0.5,b=1.5")
    assert law.param("a") == 0.5 and law.param("b") == 1.5


def test_parse_law_roundtrip_via_spec():
    for text in ("exponential:rate=2", "bernoulli:p=0.25", "uniform", "heavytail:beta=0.8"):
        law = parse_law(text)
        assert parse_law(law.spec()) == law


def test_parse_law_rejects_garbage():
    with pytest.raises(ValueError):
        parse_law("gauss")
    with pytest.raises(ValueError):
        parse_law("bernoulli:p")
    with pytest.raises(ValueError):
        parse_law("bernoulli:p=1.5")


def test_law_moments():
    assert exponential(2.0).mean == 0.5
    assert exponential(2.0).variance == 0.25
    b = bernoulli(0.3)
    assert b.mean == 0.3 and b.variance == pytest.approx(0.21)
    u = uniform()
    assert u.mean == 0.5 and u.variance == pytest.approx(1.0 / 12.0)
    s = shifted_uniform(0.5, 1.5)
    assert s.mean == 1.0 and s.variance == pytest.approx(1.0 / 12.0)
    h = heavy_tail(0.75)
    assert h.mean == pytest.approx(4.0)
    assert math.isinf(h.variance)
    assert exponential(1.0).effective_radius == pytest.approx(1.0)
    assert bernoulli(0.5).effective_radius == pytest.approx(1.0)


def test_bounded_density_flags():
    assert exponential(1.0).has_bounded_density
    assert uniform().has_bounded_density
    assert shifted_uniform(0.0, 2.0).has_bounded_density
    assert not bernoulli(0.5).has_bounded_density
    assert heavy_tail(0.75).has_bounded_density
    assert not heavy_tail(1.25).has_bounded_density


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def test_sample_entry_moment_oracles():
    stream = SeededStream(101)
    draws = sample_array(bernoulli(0.5), stream, 1_000_000)
    assert abs(draws.mean() - 0.5) < 0.002
    stream = SeededStream(102)
    draws = sample_array(exponential(1.0), stream, 1_000_000)
    assert abs(draws.mean() - 1.0) < 0.005
    assert abs(draws.var() - 1.0) < 0.01
    stream = SeededStream(103)
    draws = sample_array(heavy_tail(0.75), stream, 100_000)
    assert draws.min() >= 1.0
    single = sample_entry(uniform(), SeededStream(104))
    assert 0.0 <= single < 1.0


def test_sample_iid_matrix_deterministic():
    a = sample_iid_matrix(40, exponential(1.0), SeededStream(42, 7))
    b = sample_iid_matrix(40, exponential(1.0), SeededStream(42, 7))
    assert np.array_equal(a.data, b.data)
    c = sample_iid_matrix(40, exponential(1.0), SeededStream(42, 8))
    assert not np.array_equal(a.data, c.data)


def test_sample_iid_matrix_lln():
    m = sample_iid_matrix(500, bernoulli(0.5), SeededStream(11))
    assert abs(m.data.mean() - 0.5) < 0.01


def test_row_sums_uniform_lln_slack():
    m = sample_iid_matrix(500, exponential(1.0), SeededStream(12))
    rho = m.data.sum(axis=1)
    assert np.max(np.abs(rho / 500.0 - 1.0)) <= 0.2


# ---------------------------------------------------------------------------
# to_markov
# ---------------------------------------------------------------------------


def test_to_markov_simple_row():
    ms = to_markov(Matrix([[1.0, 3.0], [2.0, 2.0]]))
    assert np.allclose(ms.m_matrix.data[0], [0.25, 0.75])
    assert ms.row_sums == (4.0, 4.0)
    assert ms.fallback_rows == ()


def test_to_markov_fallback_rows():
    ms = to_markov(Matrix(np.zeros((2, 2))))
    assert np.array_equal(ms.m_matrix.data, np.eye(2))
    assert ms.fallback_rows == (0, 1)
    assert np.allclose(ms.scaling_diagonal(), [1.0, 1.0])


def test_to_markov_mixed_fallback():
    ms = to_markov(Matrix([[0.0, 0.0], [3.0, 1.0]]))
    assert np.array_equal(ms.m_matrix.data[0], [1.0, 0.0])
    assert np.allclose(ms.m_matrix.data[1], [0.75, 0.25])
    assert ms.fallback_rows == (0,)


def test_to_markov_invariants():
    ms = to_markov(sample_iid_matrix(200, exponential(1.0), SeededStream(13)))
    m = ms.m_matrix.data
    assert np.max(np.abs(m.sum(axis=1) - 1.0)) <= 1e-12
    assert m.min() >= 0.0 and m.max() <= 1.0
    rho = np.asarray(ms.row_sums)
    assert np.max(np.abs(m * rho[:, None] - ms.x.data)) <= 1e-12 * rho.max()


def test_scale_invariance():
    x = sample_iid_matrix(100, uniform(), SeededStream(14))
    m1 = to_markov(x).m_matrix.data
    m2 = to_markov(Matrix(7.0 * x.data)).m_matrix.data
    assert np.max(np.abs(m1 - m2)) <= 1e-14


def test_to_markov_rejects_bad_input():
    with pytest.raises(ValueError):
        to_markov(Matrix([[-1.0, 2.0], [1.0, 1.0]]))
    with pytest.raises(ValueError):
        to_markov(Matrix(np.ones((2, 3))))


# ---------------------------------------------------------------------------
# Dirichlet ensemble
# ---------------------------------------------------------------------------


def test_dirichlet_rows_sum_to_one():
    ms = dirichlet_markov_sample(50, SeededStream(15))
    assert np.max(np.abs(ms.m_matrix.data.sum(axis=1) - 1.0)) <= 1e-12


def test_dirichlet_n2_first_coordinate_uniform():
    rows = 100_000
    draws = sample_array(exponential(1.0), SeededStream(16), rows * 2).reshape(rows, 2)
    z1 = draws[:, 0] / draws.sum(axis=1)  # Dirichlet(1,1) first coordinate
    assert abs(z1.mean() - 0.5) < 0.01


def test_dirichlet_row_covariance():
    n, rows = 10, 100_000
    draws = sample_array(exponential(1.0), SeededStream(17), rows * n).reshape(rows, n)
    z = draws / draws.sum(axis=1, keepdims=True)
    cov = float(np.mean(z[:, 0] * z[:, 1]) - z[:, 0].mean() * z[:, 1].mean())
    target = -1.0 / (n * n * (n + 1))
    assert cov < 0.0
    assert abs(cov - target) < 0.002


# ---------------------------------------------------------------------------
# mean matrix and fallback probability
# ---------------------------------------------------------------------------


def test_mean_matrix_values():
    assert np.array_equal(mean_matrix(3, exponential(1.0)).data, np.ones((3, 3)))
    assert np.array_equal(mean_matrix(2, bernoulli(0.5)).data, np.full((2, 2), 0.5))
    n = 5
    assert linalg.operator_norm(mean_matrix(n, exponential(1.0))) == pytest.approx(n, rel=1e-10)


def test_fallback_probability_matches_binomial():
    p, n, replicas = 0.5, 10, 100_000
    draws = sample_array(bernoulli(p), SeededStream(18), replicas * n).reshape(replicas, n)
    freq = float((draws.sum(axis=1) == 0).mean())
    target = (1.0 - p) ** n
    se = math.sqrt(target * (1.0 - target) / replicas)
    assert abs(freq - target) <= 3.0 * se


def test_all_laws_sample_nonnegative():
    laws = [exponential(1.0), bernoulli(0.5), uniform(), heavy_tail(0.75), shifted_uniform(0.5, 1.5)]
    for idx, law in enumerate(laws):
        draws = sample_array(law, SeededStream(19, idx), 20_000)
        assert draws.min() >= 0.0, law.spec()
