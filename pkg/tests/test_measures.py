import math

import numpy as np
import pytest
from scipy import integrate

from markovspectra import linalg, measures
from markovspectra.ensembles import exponential, sample_iid_matrix, to_markov
from markovspectra.errors import DimensionMismatchError, ReducibleMatrixError
from markovspectra.matrix import Matrix
from markovspectra.rng import SeededStream

Q1 = measures.quartercircular_law(1.0)


# ---------------------------------------------------------------------------
# empirical measures
# ---------------------------------------------------------------------------


def test_esd_eigen_atoms():
    spec = linalg.eigen_spectrum(np.eye(3))
    mu = measures.esd_eigen(spec)
    assert mu.dimension_tag == measures.COMPLEX_PLANE
    assert mu.support_points == (1 + 0j, 1 + 0j, 1 + 0j)
    assert mu.weight == pytest.approx(1 / 3)


def test_esd_singular_atoms():
    spec = linalg.singular_spectrum(np.diag([1.0, 2.0]))
    nu = measures.esd_singular(spec)
    assert nu.support_points == (2.0, 1.0)
    assert nu.cdf(1.5) == pytest.approx(0.5)
    assert nu.quantile(1.0) == 2.0


def test_esd_singular_rank_one():
    nu = measures.esd_singular(linalg.singular_spectrum(np.ones((2, 2))))
    assert nu.support_points == (2.0, 0.0)


def test_weights_sum_to_one():
    mu = measures.EmpiricalMeasure.on_real_line([0.1, 0.4, 0.7])
    assert mu.weight * mu.size == pytest.approx(1.0, abs=1e-12)


def test_second_moment_of_scaled_markov_esd():
    ms = to_markov(sample_iid_matrix(500, exponential(1.0), SeededStream(42, 0)))
    spec = linalg.singular_spectrum(math.sqrt(500) * ms.m_matrix.data)
    nu = measures.esd_singular(spec)
    assert abs(nu.moment(2) - 2.0) <= 0.15  # 1 + sigma^2 for unit-rate exponential


def test_scaled_markov_esd_has_perron_atom():
    n = 150
    ms = to_markov(sample_iid_matrix(n, exponential(1.0), SeededStream(21)))
    mu = measures.esd_eigen(linalg.eigen_spectrum(math.sqrt(n) * ms.m_matrix.data))
    radii = sorted(abs(z) for z in mu.support_points)
    assert radii[-1] == pytest.approx(math.sqrt(n), rel=1e-9)  # the lone outlier
    assert radii[-2] <= 2.5  # everything else stays in the bulk scale


# ---------------------------------------------------------------------------
# reference laws
# ---------------------------------------------------------------------------


def test_quartercircular_cdf_endpoints():
    assert measures.quartercircular_cdf(0.0, 1.0) == 0.0
    assert measures.quartercircular_cdf(2.0, 1.0) == 1.0
    assert measures.quartercircular_cdf(-0.5, 1.0) == 0.0
    assert measures.quartercircular_cdf(9.0, 1.0) == 1.0


def test_quartercircular_cdf_closed_form_value():
    # integral of the density over [0, 1] at sigma = 1
    expected = 1.0 / 3.0 + math.sqrt(3.0) / (2.0 * math.pi)
    assert measures.quartercircular_cdf(1.0, 1.0) == pytest.approx(expected, abs=1e-12)
    quad, _ = integrate.quad(lambda x: measures.quartercircular_density(x, 1.0), 0.0, 1.0)
    assert measures.quartercircular_cdf(1.0, 1.0) == pytest.approx(quad, abs=1e-10)


@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.0])
def test_quartercircular_cdf_matches_quadrature_grid(sigma):
    for t in np.linspace(0.0, 2.0 * sigma, 100):
        quad, _ = integrate.quad(
            lambda x: measures.quartercircular_density(x, sigma), 0.0, float(t)
        )
        assert measures.quartercircular_cdf(float(t), sigma) == pytest.approx(quad, abs=1e-9)


def test_quartercircular_density_normalization_and_moment():
    total, _ = integrate.quad(lambda x: measures.quartercircular_density(x, 1.0), 0.0, 2.0)
    assert total == pytest.approx(1.0, abs=1e-10)
    m2, _ = integrate.quad(
        lambda x: x * x * measures.quartercircular_density(x, 1.0), 0.0, 2.0
    )
    assert m2 == pytest.approx(1.0, abs=1e-10)  # second moment equals sigma^2


def test_circular_radial_cdf():
    assert measures.circular_radial_cdf(0.5, 1.0) == pytest.approx(0.25)
    assert measures.circular_radial_cdf(1.0, 1.0) == 1.0
    assert measures.circular_radial_cdf(5.0, 1.0) == 1.0
    law = measures.circular_law(2.0)
    assert law.radial_cdf(1.0) == pytest.approx(0.25)
    assert [law.radial_cdf(r) for r in np.linspace(0, 2, 20)] == sorted(
        law.radial_cdf(r) for r in np.linspace(0, 2, 20)
    )


# ---------------------------------------------------------------------------
# Kolmogorov distances
# ---------------------------------------------------------------------------


def _quartercircular_quantile(p: float) -> float:
    lo, hi = 0.0, 2.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if measures.quartercircular_cdf(mid, 1.0) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_ks_quantile_construction_is_small():
    n = 200
    pts = [_quartercircular_quantile((k + 0.5) / n) for k in range(n)]
    mu = measures.EmpiricalMeasure.on_real_line(pts)
    assert measures.kolmogorov_distance(mu, Q1) <= 1.0 / n


def test_ks_single_atom_at_edge():
    mu = measures.EmpiricalMeasure.on_real_line([2.0])
    d = measures.kolmogorov_distance(mu, Q1)
    assert d == pytest.approx(1.0, abs=1e-12)  # F(2-) = 1, empirical jumps at 2
    assert d <= 1.0


def test_ks_requires_real_line():
    mu = measures.EmpiricalMeasure.on_complex_plane([1j])
    with pytest.raises(DimensionMismatchError):
        measures.kolmogorov_distance(mu, Q1)


def test_radial_sup_distance_exact_uniform():
    n = 400
    radii = [math.sqrt((k + 0.5) / n) for k in range(n)]
    pts = [r * np.exp(2j * math.pi * (k / n)) for k, r in enumerate(radii)]
    mu = measures.EmpiricalMeasure.on_complex_plane(pts)
    assert measures.radial_sup_distance(mu, 1.0) <= 1.0 / n + 1e-9


# ---------------------------------------------------------------------------
# logarithmic potentials and the eigen/singular bridge
# ---------------------------------------------------------------------------


def test_log_potential_single_atom():
    mu = measures.EmpiricalMeasure.on_complex_plane([0j])
    assert measures.log_potential_empirical(mu, 2.0) == pytest.approx(-math.log(2.0))
    assert measures.log_potential_empirical(mu, 0.0) == math.inf


def test_log_potential_diag_example():
    mu = measures.esd_eigen(linalg.eigen_spectrum(np.diag([2.0, 0.5])))
    assert measures.log_potential_empirical(mu, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_log_potential_matches_singular_route(rng):
    a = rng.standard_normal((8, 8))
    z = 1.0 + 1.0j
    mu = measures.esd_eigen(linalg.eigen_spectrum(a))
    u = measures.log_potential_empirical(mu, z)
    shifted = a - z * np.eye(8)
    svals = np.asarray(linalg.singular_values(shifted))
    other = -float(np.mean(np.log(svals)))
    assert u == pytest.approx(other, abs=1e-8)


def test_log_potential_circular_values():
    assert measures.log_potential_circular(0.0, 1.0) == pytest.approx(0.5)
    assert measures.log_potential_circular(2.0, 1.0) == pytest.approx(-math.log(2.0))
    inside = measures.log_potential_circular(1.0 - 1e-12, 1.0)
    outside = measures.log_potential_circular(1.0 + 1e-12, 1.0)
    assert inside == pytest.approx(0.0, abs=1e-9)
    assert outside == pytest.approx(0.0, abs=1e-9)
    # general sigma by scaling
    assert measures.log_potential_circular(0.0, 2.0) == pytest.approx(0.5 - math.log(2.0))


def test_girko_residual_diagonal():
    a = np.diag([1.0, -2.0, 0.5])
    assert measures.girko_identity_residual(a, 0.3 + 0.1j) <= 1e-10


def test_girko_residual_random(rng):
    a = rng.standard_normal((10, 10))
    assert measures.girko_identity_residual(a, 1 + 1j) <= 1e-7


def test_girko_residual_grid_20x20(rng):
    a = rng.standard_normal((20, 20))
    for re in np.linspace(-2, 2, 5):
        for im in np.linspace(-2, 2, 5):
            res = measures.girko_identity_residual(a, complex(re, im))
            assert res <= 1e-6


def test_girko_residual_scaled_markov():
    ms = to_markov(sample_iid_matrix(200, exponential(1.0), SeededStream(5)))
    scaled = math.sqrt(200) * ms.m_matrix.data
    assert measures.girko_identity_residual(scaled, 0.5) <= 1e-6


def test_girko_residual_flags_eigenvalue():
    a = np.diag([1.0, 2.0])
    assert measures.girko_identity_residual(a, 1.0) == math.inf


# ---------------------------------------------------------------------------
# Markov chain statistics
# ---------------------------------------------------------------------------


def test_loop_moment_trivial_cases():
    m = np.eye(3)
    assert measures.loop_probability_moment(m, 0) == 1.0
    assert measures.loop_probability_moment(m, 5) == pytest.approx(1.0)


def test_loop_moment_dual_route():
    ms = to_markov(sample_iid_matrix(120, exponential(1.0), SeededStream(6)))
    m = ms.m_matrix
    eigs = np.array(linalg.eigenvalues(m))
    for r in (1, 2, 3, 4, 5):
        trace_route = measures.loop_probability_moment(m, r)
        eigen_route = float(np.real(np.mean(eigs**r)))
        assert trace_route == pytest.approx(eigen_route, rel=1e-7, abs=1e-9)


def test_loop_moment_validates_markov():
    with pytest.raises(ValueError):
        measures.loop_probability_moment(np.ones((2, 2)), 1)


def test_invariant_measure_doubly_stochastic():
    m = np.array([[0.5, 0.5], [0.5, 0.5]])
    kappa = measures.invariant_measure(m, tol=1e-13)
    assert np.allclose(kappa, [0.5, 0.5], atol=1e-12)


def test_invariant_measure_two_state():
    m = np.array([[0.9, 0.1], [0.2, 0.8]])
    kappa = measures.invariant_measure(m, tol=1e-13)
    assert np.allclose(kappa, [2.0 / 3.0, 1.0 / 3.0], atol=1e-10)
    assert np.abs(kappa @ m - kappa).sum() <= 1e-12
    assert kappa.sum() == pytest.approx(1.0, abs=1e-12)


def test_invariant_measure_reducible_raises():
    m = np.eye(3)
    with pytest.raises(ReducibleMatrixError):
        measures.invariant_measure(m)


def test_invariant_measure_dirichlet_exploratory():
    ms = to_markov(sample_iid_matrix(300, exponential(1.0), SeededStream(7)))
    kappa = measures.invariant_measure(ms.m_matrix, tol=1e-12)
    tv = float(np.abs(kappa - 1.0 / 300).sum())
    assert tv < 0.5  # exploratory: reported, no sharp assertion mandated


# ---------------------------------------------------------------------------
# tails and phases
# ---------------------------------------------------------------------------


def test_log_tail_integral_examples():
    nu = measures.EmpiricalMeasure.on_real_line([math.e])
    assert measures.log_tail_integral(nu, 1.0) == pytest.approx(1.0)
    assert measures.log_tail_integral(nu, 10.0) == 0.0
    low = measures.EmpiricalMeasure.on_real_line([0.5, 2.0])
    assert measures.log_tail_integral(low, 0.6) == pytest.approx(-math.log(0.5) / 2)
    zero = measures.EmpiricalMeasure.on_real_line([0.0, 2.0])
    assert measures.log_tail_integral(zero, 0.5) == math.inf


def test_log_tail_chebyshev_bound():
    n = 400
    ms = to_markov(sample_iid_matrix(n, exponential(1.0), SeededStream(8)))
    shifted = math.sqrt(n) * ms.m_matrix.data - 0.5 * np.eye(n)
    nu = measures.esd_singular(linalg.singular_spectrum(shifted))
    second = nu.moment(2)
    assert measures.log_tail_integral(nu, 3.0) <= second / 9.0


def test_phase_histogram_symmetric_pair():
    mu = measures.EmpiricalMeasure.on_complex_plane([1j, -1j])
    counts = measures.phase_histogram(mu, 4)
    bins = len(counts)
    assert sum(counts) == 2
    assert all(counts[k] == counts[(bins - k) % bins] for k in range(bins))


def test_phase_histogram_interior_conjugate_symmetry():
    pts = [np.exp(1j * t) for t in (0.3, 0.9, 2.5)]
    pts += [z.conjugate() for z in pts]
    counts = measures.phase_histogram(measures.EmpiricalMeasure.on_complex_plane(pts), 8)
    bins = len(counts)
    assert all(counts[k] == counts[bins - 1 - k] for k in range(bins))


def test_phase_histogram_roots_of_unity():
    n, bins = 16, 8
    pts = [np.exp(2j * math.pi * (k + 0.25) / n) for k in range(n)]
    counts = measures.phase_histogram(measures.EmpiricalMeasure.on_complex_plane(pts), bins)
    assert counts == [n // bins] * bins


def test_phase_histogram_requires_complex():
    with pytest.raises(DimensionMismatchError):
        measures.phase_histogram(measures.EmpiricalMeasure.on_real_line([1.0]), 4)
