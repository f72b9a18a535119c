"""Spectral operations on dense matrices.

Eigenvalues use balancing, Householder Hessenberg reduction, and implicit
QR iteration (Francis double shift on real input, single Wilkinson shift
with complex Givens rotations on complex input).  Singular values use
Householder bidiagonalization followed by implicit-shift QR on the
bidiagonal.  The hot loops live in the selected kernel backend; this module
owns validation, ordering conventions, and the small dense helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import IterationLimitError
from .matrix import Matrix

__all__ = [
    "Spectrum",
    "eigenvalues",
    "singular_values",
    "operator_norm",
    "smallest_singular_value",
    "householder_qr",
    "abs_determinant",
    "hessenberg_reduce",
    "distance_to_span",
    "power_iteration_top",
    "eigen_spectrum",
    "singular_spectrum",
    "full_spectrum",
]

#: Singular values below this multiple of the Frobenius norm report as 0.
RANK_TOLERANCE = 1e-12


def _as_ndarray(a) -> np.ndarray:
    if isinstance(a, Matrix):
        return a.data
    return np.asarray(a)


def _working_copy(a) -> np.ndarray:
    arr = _as_ndarray(a)
    dtype = np.complex128 if np.iscomplexobj(arr) else np.float64
    return np.array(arr, dtype=dtype, order="C", copy=True)


def _require_square(arr: np.ndarray, op: str) -> None:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{op} requires a square matrix, got shape {arr.shape}")


def _balance(a: np.ndarray) -> None:
    """Parlett-Reinsch diagonal similarity scaling (radix 2, in place)."""
    n = a.shape[0]
    radix = 2.0
    sqrdx = radix * radix
    done = False
    while not done:
        done = True
        for i in range(n):
            r = float(np.abs(a[i, :]).sum() - abs(a[i, i]))
            c = float(np.abs(a[:, i]).sum() - abs(a[i, i]))
            if c == 0.0 or r == 0.0:
                continue
            g = r / radix
            f = 1.0
            s = c + r
            while c < g:
                f *= radix
                c *= sqrdx
            g = r * radix
            while c > g:
                f /= radix
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                done = False
                a[i, :] *= 1.0 / f
                a[:, i] *= f


def _phase(z: complex) -> float:
    return math.atan2(z.imag, z.real)


def _sorted_eigenvalues(values) -> list[complex]:
    """Modulus descending, then phase ascending in (-pi, pi]."""
    return sorted((complex(z) for z in values), key=lambda z: (-abs(z), _phase(z)))


def eigenvalues(a) -> list[complex]:
    """All eigenvalues, sorted by modulus descending then phase ascending.

    Raises :class:`IterationLimitError` when the QR iteration cannot deflate
    within its sweep budget.
    """
    arr = _working_copy(a)
    _require_square(arr, "eigenvalues")
    n = arr.shape[0]
    if n == 1:
        return [complex(arr[0, 0])]
    backend = kernels.active()
    _balance(arr)
    if arr.dtype == np.complex128:
        backend.hessenberg_complex(arr)
        w = backend.hessenberg_qr_eigs_complex(arr)
        return _sorted_eigenvalues(w)
    backend.hessenberg_real(arr)
    wr, wi = backend.hessenberg_qr_eigs_real(arr)
    return _sorted_eigenvalues(wr + 1j * wi)


def singular_values(a) -> list[float]:
    """All ``min(rows, cols)`` singular values, descending.

    Values below ``1e-12 * ||a||_F`` are reported as exactly 0 so that rank
    decisions are deterministic.
    """
    arr = _working_copy(a)
    if arr.ndim != 2:
        raise ValueError(f"singular_values requires a matrix, got shape {arr.shape}")
    if arr.shape[0] < arr.shape[1]:
        arr = np.array(arr.T, order="C")  # transposition leaves singular values unchanged
    fro = float(np.sqrt((abs(arr) ** 2).sum()))
    backend = kernels.active()
    if arr.dtype == np.complex128:
        d, e = backend.bidiagonalize_complex(arr)
    else:
        d, e = backend.bidiagonalize_real(arr)
    backend.bidiagonal_singular_values(d, e)
    d[d < RANK_TOLERANCE * fro] = 0.0
    d[::-1].sort()
    return [float(s) for s in d]


def operator_norm(a) -> float:
    """Largest singular value."""
    return singular_values(a)[0]


def smallest_singular_value(a) -> float:
    """Smallest singular value of a square matrix (0 for singular input)."""
    arr = _as_ndarray(a)
    _require_square(arr, "smallest_singular_value")
    return singular_values(a)[-1]


def _householder_vector(x: np.ndarray):
    """Reflector (v, beta, alpha) sending x to alpha*e1; beta 0 when x = 0."""
    if np.iscomplexobj(x):
        nrm = math.sqrt(float((x.conj() @ x).real))
        if nrm == 0.0:
            return None, 0.0, 0.0
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        alpha = -phase * nrm
    else:
        nrm = math.sqrt(float(x @ x))
        if nrm == 0.0:
            return None, 0.0, 0.0
        alpha = -nrm if x[0] >= 0 else nrm
    v = x.copy()
    v[0] -= alpha
    vnorm2 = float((v.conj() @ v).real)
    if vnorm2 == 0.0:
        return None, 0.0, alpha
    return v, 2.0 / vnorm2, alpha


def householder_qr(a) -> tuple[Matrix, Matrix]:
    """Thin QR factorization: Q has orthonormal columns, R is upper triangular
    with nonnegative real diagonal (canonical form).

    Requires rows >= cols.
    """
    r = _working_copy(a)
    m, n = r.shape
    if m < n:
        raise ValueError(f"householder_qr requires rows >= cols, got {m}x{n}")
    q = np.eye(m, dtype=r.dtype)
    for j in range(n):
        v, beta, alpha = _householder_vector(r[j:, j])
        if beta != 0.0:
            w = v.conj() @ r[j:, j:]
            r[j:, j:] -= beta * np.outer(v, w)
            wq = q[:, j:] @ v
            q[:, j:] -= beta * np.outer(wq, v.conj())
            r[j, j] = alpha
            r[j + 1 :, j] = 0.0
    for j in range(n):  # rotate each row so the diagonal is real nonnegative
        pivot = r[j, j]
        if pivot == 0:
            continue
        phase = pivot / abs(pivot)
        if phase != 1.0:
            r[j, j:] *= np.conj(phase)
            q[:, j] *= phase
            r[j, j] = abs(pivot)
    return Matrix(q[:, :n]), Matrix(r[:n, :])


def abs_determinant(a) -> float:
    """|det(a)| via the product of QR diagonal magnitudes."""
    arr = _as_ndarray(a)
    _require_square(arr, "abs_determinant")
    _, r = householder_qr(a)
    return float(np.prod(np.abs(np.diag(r.data))))


def hessenberg_reduce(a) -> Matrix:
    """Upper Hessenberg matrix orthogonally (unitarily) similar to ``a``."""
    arr = _working_copy(a)
    _require_square(arr, "hessenberg_reduce")
    backend = kernels.active()
    if arr.dtype == np.complex128:
        backend.hessenberg_complex(arr)
    else:
        backend.hessenberg_real(arr)
    return Matrix(arr)


def distance_to_span(v, basis) -> float:
    """Euclidean distance from ``v`` to the linear span of ``basis``.

    An empty basis gives ``||v||``.  The basis may be linearly dependent;
    near-zero directions are dropped at relative tolerance 1e-12.
    """
    vec = np.asarray(v)
    dtype = np.complex128 if np.iscomplexobj(vec) or any(
        np.iscomplexobj(np.asarray(b)) for b in basis
    ) else np.float64
    res = vec.astype(dtype, copy=True)
    ortho: list[np.ndarray] = []
    for b in basis:
        u = np.asarray(b).astype(dtype, copy=True)
        if u.shape != res.shape:
            raise ValueError("all vectors must share one dimension")
        scale = math.sqrt(float((u.conj() @ u).real))
        for q in ortho:  # modified Gram-Schmidt, one reorthogonalization pass
            u -= (q.conj() @ u) * q
        for q in ortho:
            u -= (q.conj() @ u) * q
        nu = math.sqrt(float((u.conj() @ u).real))
        if nu > 1e-12 * max(scale, 1e-300):
            ortho.append(u / nu)
    for _ in range(2):
        for q in ortho:
            res -= (q.conj() @ res) * q
    return math.sqrt(float((res.conj() @ res).real))


def power_iteration_top(a, tol: float = 1e-10, max_iter: int = 10_000) -> float:
    """Top eigenvalue of a symmetric (Hermitian) nonnegative-definite matrix.

    Cross-check oracle for ``operator_norm`` via A A*; converges for inputs
    with a spectral gap and raises :class:`IterationLimitError` otherwise.
    """
    arr = _as_ndarray(a)
    _require_square(arr, "power_iteration_top")
    matvec = lambda x: arr @ x
    return power_iteration_matvec(matvec, arr.shape[0], tol=tol, max_iter=max_iter)


def power_iteration_matvec(matvec, n: int, tol: float = 1e-10, max_iter: int = 10_000) -> float:
    """Power iteration on an implicit Hermitian PSD operator given by matvec."""
    v = 1.0 + (np.arange(n) % 7) / 10.0  # deterministic start, no zero pattern
    v /= math.sqrt(float(v @ v))
    prev = math.inf
    lam = 0.0
    for _ in range(max_iter):
        w = matvec(v)
        lam = float((np.conj(v) @ w).real)
        nw = math.sqrt(float((np.conj(w) @ w).real))
        if nw == 0.0:
            return 0.0
        v = w / nw
        if abs(lam - prev) <= tol * max(1.0, abs(lam)):
            return lam
        prev = lam
    raise IterationLimitError(f"power iteration did not converge in {max_iter} steps")


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (modulus descending, phase ascending) and singular values
    (descending) of one matrix.  Either side may be absent when only the
    other was computed."""

    eigenvalues: tuple[complex, ...] = ()
    singular_values: tuple[float, ...] = ()

    @property
    def size(self) -> int:
        return max(len(self.eigenvalues), len(self.singular_values))


def eigen_spectrum(a) -> Spectrum:
    return Spectrum(eigenvalues=tuple(eigenvalues(a)))


def singular_spectrum(a) -> Spectrum:
    return Spectrum(singular_values=tuple(singular_values(a)))


def full_spectrum(a) -> Spectrum:
    return Spectrum(
        eigenvalues=tuple(eigenvalues(a)),
        singular_values=tuple(singular_values(a)),
    )
