import math

import numpy as np
import pytest

from markovspectra import linalg
from markovspectra.checks import (
    LEMMA_IDS,
    check_basic_inequalities,
    check_cauchy_interlacing,
    check_distance_concentration,
    check_rv_row_bound,
    check_special_matrix_A,
    check_tao_vu_negative_moment,
    check_thompson_lidskii,
    check_weyl,
    fuzz_matrix,
    run_lemma_campaign,
    special_matrix,
    special_matrix_limit,
)
from markovspectra.ensembles import bernoulli, exponential
from markovspectra.errors import RankDeficiencyError
from markovspectra.rng import SeededStream


# ---------------------------------------------------------------------------
# basic inequalities
# ---------------------------------------------------------------------------


def test_basic_identity_pair():
    report = check_basic_inequalities(np.eye(4), np.eye(4))
    assert report.passed
    assert report.worst_margin >= -report.tolerance


def test_basic_diagonal_sandwich(rng):
    d = np.diag([2.0, 1.0])
    b = rng.standard_normal((2, 2))
    report = check_basic_inequalities(d, b)
    assert report.passed
    # verify the sandwich directly against an independent SVD of both sides
    s_b = np.array(linalg.singular_values(b))
    s_db = np.array(linalg.singular_values(d @ b))
    assert np.all(s_db >= 1.0 * s_b - 1e-10)
    assert np.all(s_db <= 2.0 * s_b + 1e-10)


def test_basic_fuzz(rng):
    stream = SeededStream(1001)
    for k in range(200):
        a = fuzz_matrix(stream.substream(2 * k), 6, 6)
        b = fuzz_matrix(stream.substream(2 * k + 1), 6, 6)
        assert check_basic_inequalities(a, b).passed


def test_basic_shape_mismatch():
    with pytest.raises(ValueError):
        check_basic_inequalities(np.eye(2), np.eye(3))


# ---------------------------------------------------------------------------
# row distance bound
# ---------------------------------------------------------------------------


def test_rv_diagonal_hand_values():
    report = check_rv_row_bound(np.diag([1.0, 2.0]))
    assert report.passed
    # min dist = 1, s_n = 1: the sandwich is 1/sqrt(2) <= 1 <= 1
    assert report.worst_margin == pytest.approx(0.0, abs=1e-12)


def test_rv_singular_both_sides_zero():
    report = check_rv_row_bound(np.ones((3, 3)))
    assert report.passed
    assert report.worst_margin == pytest.approx(0.0, abs=1e-10)


def test_rv_fuzz(rng):
    stream = SeededStream(1002)
    for k in range(100):
        assert check_rv_row_bound(fuzz_matrix(stream.substream(k), 8, 8)).passed


# ---------------------------------------------------------------------------
# negative second moment
# ---------------------------------------------------------------------------


def test_tvneg_diagonal():
    report = check_tao_vu_negative_moment(np.diag([1.0, 2.0]))
    assert report.passed  # both sides 1 + 1/4


def test_tvneg_identity():
    report = check_tao_vu_negative_moment(np.eye(2))
    assert report.passed


def test_tvneg_rectangular(rng):
    report = check_tao_vu_negative_moment(rng.standard_normal((5, 9)))
    assert report.passed


def test_tvneg_rank_deficient_raises():
    with pytest.raises(RankDeficiencyError):
        check_tao_vu_negative_moment(np.ones((3, 3)))


# ---------------------------------------------------------------------------
# interlacing
# ---------------------------------------------------------------------------


def test_cauchy_no_deletion_equality(rng):
    a = rng.standard_normal((5, 5))
    report = check_cauchy_interlacing(a, [])
    assert report.passed
    assert report.worst_margin == pytest.approx(0.0, abs=1e-12)


def test_cauchy_diag_example():
    report = check_cauchy_interlacing(np.diag([1.0, 2.0]), [1])
    assert report.passed


def test_cauchy_fuzz(rng):
    stream = SeededStream(1003)
    for k in range(60):
        a = fuzz_matrix(stream.substream(k), 7, 7)
        assert check_cauchy_interlacing(a, [0, 3, 5]).passed


def test_cauchy_one_more_deletion_never_raises_top(rng):
    for _ in range(20):
        a = rng.standard_normal((6, 6))
        keep_sets = [[0], [0, 1], [0, 1, 2]]
        tops = []
        for deleted in keep_sets:
            keep = [i for i in range(6) if i not in deleted]
            tops.append(linalg.singular_values(a[keep])[0])
        assert tops[0] >= tops[1] >= tops[2] - 1e-12


def test_thompson_zero_perturbation(rng):
    a = rng.standard_normal((4, 4))
    report = check_thompson_lidskii(a, a)
    assert report.passed


def test_thompson_rank_one_example():
    a = np.zeros((2, 2))
    b = np.zeros((2, 2))
    b[0, 0] = 1.0
    report = check_thompson_lidskii(a, b)
    assert report.passed
    assert "rank=1" in report.witness or report.worst_margin >= 0


def test_thompson_rank_two_cdf_gap(rng):
    a = rng.standard_normal((10, 10))
    b = a + np.outer(rng.standard_normal(10), rng.standard_normal(10))
    b += np.outer(rng.standard_normal(10), rng.standard_normal(10))
    report = check_thompson_lidskii(a, b)
    assert report.passed
    s_a = np.array(linalg.singular_values(a))
    s_b = np.array(linalg.singular_values(b))
    thresholds = np.concatenate([s_a, s_b])
    gap = max(
        abs((s_a <= t).mean() - (s_b <= t).mean()) for t in thresholds
    )
    assert gap <= 0.2 + 1e-12


# ---------------------------------------------------------------------------
# eigen/singular majorization
# ---------------------------------------------------------------------------


def test_weyl_normal_matrix_equalities(rng):
    a = rng.standard_normal((5, 5))
    sym = a + a.T
    report = check_weyl(sym)
    assert report.passed
    lam = sorted(abs(z) for z in linalg.eigenvalues(sym))
    sig = sorted(linalg.singular_values(sym))
    assert np.allclose(lam, sig, rtol=1e-9, atol=1e-9)


def test_weyl_nilpotent():
    report = check_weyl(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert report.passed


def test_weyl_fuzz(rng):
    stream = SeededStream(1004)
    for k in range(100):
        assert check_weyl(fuzz_matrix(stream.substream(k), 8, 8)).passed


# ---------------------------------------------------------------------------
# the column-perturbed identity
# ---------------------------------------------------------------------------


def test_special_matrix_identity_case():
    report = check_special_matrix_A(5, 0.0)
    assert report.passed
    svals = linalg.singular_values(special_matrix(5, 0.0).data)
    assert np.allclose(svals, 1.0, atol=1e-14)


def test_special_matrix_singular_case():
    # z chosen so that w = z/sqrt(n) = 1: the matrix is singular
    report = check_special_matrix_A(2, math.sqrt(2.0))
    assert report.passed
    assert "singular" in report.witness or report.worst_margin >= 0
    svals = linalg.singular_values(special_matrix(2, 1.0).data)
    assert svals[0] == pytest.approx(math.sqrt(2.0), abs=1e-12)
    assert svals[1] == 0.0


def test_special_matrix_limit_value():
    assert special_matrix_limit(1.0) == pytest.approx(
        math.sqrt(2.0) / math.sqrt(3.0 + math.sqrt(5.0)), abs=1e-12
    )
    assert f"{special_matrix_limit(1.0):.6f}" == "0.618034"


@pytest.mark.parametrize("z", [0.0, 1.0, 1 + 1j, 3.0])
@pytest.mark.parametrize("n", [2, 10, 100])
def test_special_matrix_dense_grid(n, z):
    report = check_special_matrix_A(n, z)
    assert report.passed, report


def test_special_matrix_implicit_route_matches_dense():
    # straddle the cutoff: dense route at 600, implicit route at 700
    for z in (1.0, 1 + 1j):
        dense = check_special_matrix_A(600, z)
        implicit = check_special_matrix_A(700, z)
        assert dense.passed and implicit.passed
        assert "power-iteration" in implicit.witness or implicit.worst_margin >= 0


# ---------------------------------------------------------------------------
# distance concentration
# ---------------------------------------------------------------------------


def test_distance_concentration_spec_example():
    report = check_distance_concentration(400, exponential(1.0), 200, 10_000, SeededStream(9))
    assert report.passed
    assert "violations=0/10000" in report.witness


def test_distance_concentration_zero_dim_edge():
    report = check_distance_concentration(16, exponential(1.0), 0, 2000, SeededStream(10))
    assert report.passed
    assert "violations=0/2000" in report.witness


def test_distance_concentration_bernoulli():
    report = check_distance_concentration(100, bernoulli(0.5), 50, 2000, SeededStream(11))
    assert report.passed


def test_distance_concentration_validates():
    from markovspectra.ensembles import heavy_tail

    with pytest.raises(ValueError):
        check_distance_concentration(10, exponential(1.0), 10, 100, SeededStream(1))
    with pytest.raises(ValueError):
        check_distance_concentration(10, heavy_tail(0.75), 2, 100, SeededStream(1))


# ---------------------------------------------------------------------------
# campaigns
# ---------------------------------------------------------------------------


def test_every_campaign_passes_briefly():
    stream = SeededStream(77)
    for idx, lemma in enumerate(sorted(LEMMA_IDS)):
        report = run_lemma_campaign(lemma, 30, stream.substream(idx))
        assert report.passed, report
        assert report.lemma_id == lemma


def test_unknown_campaign_rejected():
    with pytest.raises(ValueError):
        run_lemma_campaign("nope", 10, SeededStream(0))
