"""Empirical spectral distributions and reference laws.

Houses the two empirical measures attached to a matrix (eigenvalue and
singular-value counting measures), the quartercircular and circular
reference laws, logarithmic potentials, the eigenvalue/singular-value
bridge residual, Markov-chain loop moments, and the invariant measure
solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, IterationLimitError, ReducibleMatrixError
from .matrix import Matrix

__all__ = [
    "REAL_LINE",
    "COMPLEX_PLANE",
    "EmpiricalMeasure",
    "ReferenceLaw",
    "quartercircular_law",
    "circular_law",
    "esd_eigen",
    "esd_singular",
    "kolmogorov_distance",
    "radial_sup_distance",
    "quartercircular_cdf",
    "quartercircular_density",
    "circular_radial_cdf",
    "log_potential_empirical",
    "log_potential_circular",
    "girko_identity_residual",
    "loop_probability_moment",
    "invariant_measure",
    "log_tail_integral",
    "phase_histogram",
]

REAL_LINE = "real-line"
COMPLEX_PLANE = "complex-plane"


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Uniformly weighted point measure on the real line or complex plane."""

    support_points: tuple
    dimension_tag: str

    def __post_init__(self):
        if self.dimension_tag not in (REAL_LINE, COMPLEX_PLANE):
            raise ValueError(f"unknown dimension tag {self.dimension_tag!r}")
        if not self.support_points:
            raise ValueError("empirical measure needs at least one atom")

    @classmethod
    def on_real_line(cls, values) -> "EmpiricalMeasure":
        return cls(tuple(float(v) for v in values), REAL_LINE)

    @classmethod
    def on_complex_plane(cls, values) -> "EmpiricalMeasure":
        return cls(tuple(complex(v) for v in values), COMPLEX_PLANE)

    @property
    def size(self) -> int:
        return len(self.support_points)

    @property
    def weight(self) -> float:
        return 1.0 / len(self.support_points)

    @cached_property
    def sorted_points(self) -> np.ndarray:
        """Sorted copy for CDF queries (real-line measures only)."""
        if self.dimension_tag != REAL_LINE:
            raise DimensionMismatchError("sorted support requires a real-line measure")
        return np.sort(np.asarray(self.support_points))

    def cdf(self, t: float) -> float:
        pts = self.sorted_points
        return float(np.searchsorted(pts, t, side="right")) / self.size

    def quantile(self, p: float) -> float:
        if not 0.0 <= p <= 1.0:
            raise ValueError("quantile level must lie in [0, 1]")
        pts = self.sorted_points
        idx = min(self.size - 1, max(0, math.ceil(p * self.size) - 1))
        return float(pts[idx])

    def moment(self, order: int) -> float:
        """Mean of |x|**order over the atoms."""
        return float(np.mean(np.abs(np.asarray(self.support_points)) ** order))


def esd_eigen(spec: linalg.Spectrum) -> EmpiricalMeasure:
    """Eigenvalue counting measure (complex plane)."""
    if not spec.eigenvalues:
        raise ValueError("spectrum carries no eigenvalues")
    return EmpiricalMeasure.on_complex_plane(spec.eigenvalues)


def esd_singular(spec: linalg.Spectrum) -> EmpiricalMeasure:
    """Singular-value counting measure (real line)."""
    if not spec.singular_values:
        raise ValueError("spectrum carries no singular values")
    return EmpiricalMeasure.on_real_line(spec.singular_values)


# ---------------------------------------------------------------------------
# Reference laws
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReferenceLaw:
    """Quartercircular law on [0, 2*sigma] or uniform law on the sigma-disk."""

    kind: str
    sigma: float

    def __post_init__(self):
        if self.kind not in ("quartercircular", "circular"):
            raise ValueError(f"unknown reference law {self.kind!r}")
        if self.sigma <= 0:
            raise ValueError("reference law scale must be positive")

    def cdf(self, t: float) -> float:
        if self.kind == "quartercircular":
            return quartercircular_cdf(t, self.sigma)
        raise DimensionMismatchError("plain CDF queries need the quartercircular law")

    def radial_cdf(self, r: float) -> float:
        if self.kind == "circular":
            return circular_radial_cdf(r, self.sigma)
        raise DimensionMismatchError("radial CDF queries need the circular law")


def quartercircular_law(sigma: float) -> ReferenceLaw:
    return ReferenceLaw("quartercircular", sigma)


def circular_law(sigma: float) -> ReferenceLaw:
    return ReferenceLaw("circular", sigma)


def quartercircular_density(x: float, sigma: float) -> float:
    """Density sqrt(4*sigma^2 - x^2) / (pi*sigma^2) on [0, 2*sigma]."""
    if x < 0.0 or x > 2.0 * sigma:
        return 0.0
    return math.sqrt(max(0.0, 4.0 * sigma * sigma - x * x)) / (math.pi * sigma * sigma)


def quartercircular_cdf(t: float, sigma: float) -> float:
    """Closed-form antiderivative of the quartercircular density, clamped to [0, 1]."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if t <= 0.0:
        return 0.0
    if t >= 2.0 * sigma:
        return 1.0
    s2 = sigma * sigma
    value = (t * math.sqrt(4.0 * s2 - t * t) / 2.0 + 2.0 * s2 * math.asin(t / (2.0 * sigma))) / (
        math.pi * s2
    )
    return min(1.0, max(0.0, value))


def circular_radial_cdf(r: float, sigma: float) -> float:
    """P(|Z| <= r) for Z uniform on the disk of radius sigma."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return min(r * r / (sigma * sigma), 1.0)


def kolmogorov_distance(mu: EmpiricalMeasure, law: ReferenceLaw) -> float:
    """sup_t |F_mu(t) - F_law(t)|, exact for the empirical step function."""
    if mu.dimension_tag != REAL_LINE:
        raise DimensionMismatchError("Kolmogorov distance needs a real-line measure")
    pts = mu.sorted_points
    n = mu.size
    worst = 0.0
    for i, t in enumerate(pts):
        f = law.cdf(float(t))
        worst = max(worst, f - i / n, (i + 1) / n - f)
    return worst


def radial_sup_distance(mu: EmpiricalMeasure, sigma: float) -> float:
    """sup_r |F_{|mu|}(r) - min(r^2/sigma^2, 1)| over atom radii."""
    if mu.dimension_tag != COMPLEX_PLANE:
        raise DimensionMismatchError("radial distance needs a complex-plane measure")
    radii = np.sort(np.abs(np.asarray(mu.support_points)))
    n = radii.size
    worst = 0.0
    for i, r in enumerate(radii):
        f = circular_radial_cdf(float(r), sigma)
        worst = max(worst, f - i / n, (i + 1) / n - f)
    return worst


# ---------------------------------------------------------------------------
# Logarithmic potentials
# ---------------------------------------------------------------------------


def log_potential_empirical(mu: EmpiricalMeasure, z: complex) -> float:
    """-(1/n) * sum(log|z - atom|); +inf when z sits on an atom."""
    pts = np.asarray(mu.support_points, dtype=np.complex128)
    gaps = np.abs(complex(z) - pts)
    if (gaps == 0.0).any():
        return math.inf
    return float(-np.mean(np.log(gaps)))


def log_potential_circular(z: complex, sigma: float) -> float:
    """Potential of the uniform law on the sigma-disk at z."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    w = abs(complex(z)) / sigma
    if w > 1.0:
        return -math.log(w) - math.log(sigma)
    return 0.5 * (1.0 - w * w) - math.log(sigma)


def girko_identity_residual(a, z: complex, atom_tolerance: float = 1e-12) -> float:
    """|U_mu(z) + integral(log t) d nu_{a - zI}|.

    The two routes agree in exact arithmetic; the residual measures kernel
    consistency.  Returns +inf when z is (numerically) an eigenvalue or the
    shifted matrix is numerically singular.
    """
    arr = a.data if isinstance(a, Matrix) else np.asarray(a)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError("girko_identity_residual requires a square matrix")
    z = complex(z)
    eigs = np.asarray(linalg.eigenvalues(arr), dtype=np.complex128)
    if np.min(np.abs(eigs - z)) <= atom_tolerance * (1.0 + abs(z)):
        return math.inf
    potential = float(-np.mean(np.log(np.abs(z - eigs))))
    if z.imag == 0.0 and not np.iscomplexobj(arr):
        shifted = arr - z.real * np.eye(arr.shape[0])
    else:
        shifted = arr - z * np.eye(arr.shape[0], dtype=np.complex128)
    svals = np.asarray(linalg.singular_values(shifted))
    if (svals <= 0.0).any():
        return math.inf
    log_integral = float(np.mean(np.log(svals)))
    return abs(potential + log_integral)


# ---------------------------------------------------------------------------
# Markov-chain statistics
# ---------------------------------------------------------------------------


def _require_markov(arr: np.ndarray, op: str, tol: float = 1e-9) -> None:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{op} requires a square matrix")
    if np.iscomplexobj(arr) or (arr < 0).any():
        raise ValueError(f"{op} requires nonnegative real entries")
    if np.max(np.abs(arr.sum(axis=1) - 1.0)) > tol:
        raise ValueError(f"{op} requires unit row sums")


def loop_probability_moment(m_matrix, r: int) -> float:
    """(1/n) * trace(M^r): the mean probability of a length-r loop.

    Computed by repeated matrix multiplication; equals the mean r-th power
    of the eigenvalues.
    """
    arr = m_matrix.data if isinstance(m_matrix, Matrix) else np.asarray(m_matrix)
    _require_markov(arr, "loop_probability_moment")
    if r < 0:
        raise ValueError("loop length must be nonnegative")
    n = arr.shape[0]
    if r == 0:
        return 1.0
    power = arr
    for _ in range(r - 1):
        power = power @ arr
    return float(np.trace(power)) / n


def _strongly_connected(positive: np.ndarray) -> bool:
    """Reachability of every node from node 0 in both edge directions."""
    n = positive.shape[0]
    for adj in (positive, positive.T):
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        frontier = np.zeros(n, dtype=bool)
        frontier[0] = True
        while frontier.any():
            reached = adj[frontier].any(axis=0) & ~seen
            seen |= reached
            frontier = reached
        if not seen.all():
            return False
    return True


def invariant_measure(m_matrix, tol: float = 1e-12, max_iter: int = 100_000) -> np.ndarray:
    """Probability row vector kappa with ||kappa @ M - kappa||_1 <= tol.

    Power iteration from the uniform vector.  Raises
    :class:`ReducibleMatrixError` when the positive-entry skeleton is not
    strongly connected, and :class:`IterationLimitError` when the iteration
    budget runs out.
    """
    arr = m_matrix.data if isinstance(m_matrix, Matrix) else np.asarray(m_matrix)
    _require_markov(arr, "invariant_measure")
    if not _strongly_connected(arr > 0.0):
        raise ReducibleMatrixError("positive-entry skeleton is not strongly connected")
    n = arr.shape[0]
    kappa = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        nxt = kappa @ arr
        nxt /= nxt.sum()
        if float(np.abs(nxt - kappa).sum()) <= tol:
            return nxt
        kappa = nxt
    raise IterationLimitError(f"invariant measure did not converge in {max_iter} iterations")


def log_tail_integral(nu: EmpiricalMeasure, t: float) -> float:
    """Tail integrals of log against a singular-value measure.

    For t >= 1: integral of log(s) over atoms in [t, inf).  For t in (0, 1):
    integral of -log(s) over atoms in (0, t], which is +inf when an atom sits
    exactly at 0 inside the range.
    """
    if nu.dimension_tag != REAL_LINE:
        raise DimensionMismatchError("log tail integral needs a real-line measure")
    if t <= 0.0:
        raise ValueError("threshold must be positive")
    pts = np.asarray(nu.support_points)
    if t >= 1.0:
        sel = pts >= t
        if not sel.any():
            return 0.0
        return float(np.log(pts[sel]).sum()) / nu.size
    sel = pts <= t
    if not sel.any():
        return 0.0
    if (pts[sel] == 0.0).any():
        return math.inf
    return float(-np.log(pts[sel]).sum()) / nu.size


def phase_histogram(mu: EmpiricalMeasure, bins: int) -> list[int]:
    """Counts of atom phases over ``bins`` uniform sectors of [0, 2*pi)."""
    if mu.dimension_tag != COMPLEX_PLANE:
        raise DimensionMismatchError("phase histogram needs a complex-plane measure")
    if bins < 1:
        raise ValueError("need at least one bin")
    pts = np.asarray(mu.support_points, dtype=np.complex128)
    phases = np.arctan2(pts.imag, pts.real)
    phases = np.where(phases < 0.0, phases + 2.0 * math.pi, phases)
    idx = np.minimum((phases / (2.0 * math.pi / bins)).astype(np.int64), bins - 1)
    counts = np.bincount(idx, minlength=bins)
    return [int(c) for c in counts]
