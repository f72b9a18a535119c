"""Backend-level kernel tests, run once per available backend.

numpy.linalg serves as the independent oracle throughout; the kernels
themselves never call it.
"""

import numpy as np
import pytest

from markovspectra import kernels
from markovspectra.errors import IterationLimitError


def _sorted_complex(values):
    return np.array(sorted(values, key=lambda z: (round(z.real, 7), round(z.imag, 7))))


def test_hessenberg_real_structure_and_similarity(backend, rng):
    mod = kernels.active()
    a = rng.standard_normal((9, 9))
    h = np.array(a, order="C")
    mod.hessenberg_real(h)
    assert np.allclose(np.tril(h, -2), 0.0)
    assert np.trace(h) == pytest.approx(np.trace(a), rel=1e-12)
    assert np.linalg.norm(h) == pytest.approx(np.linalg.norm(a), rel=1e-12)
    ours = _sorted_complex(np.linalg.eigvals(h))
    ref = _sorted_complex(np.linalg.eigvals(a))
    assert np.allclose(ours, ref, atol=1e-9)


def test_hessenberg_complex_structure(backend, rng):
    mod = kernels.active()
    a = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
    h = np.array(a, order="C")
    mod.hessenberg_complex(h)
    assert np.allclose(np.tril(h, -2), 0.0)
    assert np.trace(h) == pytest.approx(np.trace(a), rel=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 13, 21])
def test_real_eigs_match_numpy(backend, rng, n):
    mod = kernels.active()
    for _ in range(12):
        a = rng.standard_normal((n, n))
        h = np.array(a, order="C")
        if n > 2:
            mod.hessenberg_real(h)
        wr, wi = mod.hessenberg_qr_eigs_real(h)
        ours = _sorted_complex(wr + 1j * wi)
        ref = _sorted_complex(np.linalg.eigvals(a))
        assert np.allclose(ours, ref, atol=1e-8 * max(1.0, np.abs(ref).max()))


@pytest.mark.parametrize("n", [1, 2, 3, 6, 11])
def test_complex_eigs_match_numpy(backend, rng, n):
    mod = kernels.active()
    for _ in range(12):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = np.array(a, order="C")
        if n > 2:
            mod.hessenberg_complex(h)
        w = mod.hessenberg_qr_eigs_complex(h)
        ours = _sorted_complex(w)
        ref = _sorted_complex(np.linalg.eigvals(a))
        assert np.allclose(ours, ref, atol=1e-8 * max(1.0, np.abs(ref).max()))


@pytest.mark.parametrize("shape", [(1, 1), (3, 3), (7, 4), (9, 9), (16, 5)])
def test_real_singular_values_match_numpy(backend, rng, shape):
    mod = kernels.active()
    for _ in range(10):
        a = rng.standard_normal(shape)
        work = np.array(a, order="C")
        d, e = mod.bidiagonalize_real(work)
        mod.bidiagonal_singular_values(d, e)
        ours = np.sort(d)[::-1]
        ref = np.linalg.svd(a, compute_uv=False)
        assert np.allclose(ours, ref, atol=1e-10 * max(1.0, ref.max()))


@pytest.mark.parametrize("shape", [(1, 1), (4, 4), (8, 3), (12, 12)])
def test_complex_singular_values_match_numpy(backend, rng, shape):
    mod = kernels.active()
    for _ in range(10):
        a = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        work = np.array(a, order="C")
        d, e = mod.bidiagonalize_complex(work)
        mod.bidiagonal_singular_values(d, e)
        ours = np.sort(d)[::-1]
        ref = np.linalg.svd(a, compute_uv=False)
        assert np.allclose(ours, ref, atol=1e-10 * max(1.0, ref.max()))


def test_rank_deficient_and_degenerate_bidiagonals(backend):
    mod = kernels.active()
    cases = [
        np.ones((4, 4)),
        np.zeros((3, 5)).T.copy(),
        np.diag([1.0, 0.0, 2.0]),
        np.array([[0.0, 1.0], [0.0, 1.0]]),
    ]
    for a in cases:
        work = np.array(a, dtype=np.float64, order="C")
        d, e = mod.bidiagonalize_real(work)
        mod.bidiagonal_singular_values(d, e)
        ref = np.linalg.svd(a, compute_uv=False)
        assert np.allclose(np.sort(d)[::-1], ref, atol=1e-12 * max(1.0, ref.max()))


def test_iteration_budget_raises(backend, rng):
    mod = kernels.active()
    a = rng.standard_normal((8, 8))
    h = np.array(a, order="C")
    mod.hessenberg_real(h)
    with pytest.raises(IterationLimitError):
        mod.hessenberg_qr_eigs_real(h, 0, 10)


def test_backends_agree_bit_for_bit_per_backend(rng):
    """Both lanes implement the same algorithm; results agree to rounding."""
    if len(kernels.available_backends()) < 2:
        pytest.skip("only one backend built")
    for _ in range(25):
        n = int(rng.integers(2, 12))
        a = rng.standard_normal((n, n))
        outs = {}
        for name in kernels.available_backends():
            mod = kernels.get_backend(name)
            h = np.array(a, order="C")
            mod.hessenberg_real(h)
            wr, wi = mod.hessenberg_qr_eigs_real(h)
            outs[name] = _sorted_complex(wr + 1j * wi)
        names = sorted(outs)
        assert np.allclose(outs[names[0]], outs[names[1]], atol=1e-10)
