"""Executable verifiers for the deterministic spectral inequalities.

Every ``check_*`` function returns a margin-carrying :class:`CheckReport`:
``worst_margin`` is the signed slack of the tightest sub-inequality
(equalities contribute ``-|lhs - rhs|``), and the check passes when the
worst margin is at least ``-tolerance``.  Tolerances scale with the matrix
norms involved, since every verified statement is homogeneous.

These checks double as property-test generators for the dense kernels:
:func:`run_lemma_campaign` fuzzes a named check over seeded random
instances and reports the worst case with its witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .ensembles import EntryLaw, exponential, sample_array
from .errors import RankDeficiencyError
from .matrix import Matrix
from .rng import SeededStream

__all__ = [
    "CheckReport",
    "check_basic_inequalities",
    "check_rv_row_bound",
    "check_tao_vu_negative_moment",
    "check_cauchy_interlacing",
    "check_thompson_lidskii",
    "check_weyl",
    "check_special_matrix_A",
    "check_distance_concentration",
    "special_matrix",
    "special_matrix_limit",
    "fuzz_matrix",
    "LEMMA_IDS",
    "run_lemma_campaign",
]


@dataclass(frozen=True)
class CheckReport:
    lemma_id: str
    passed: bool
    worst_margin: float
    tolerance: float
    witness: str

    def __str__(self) -> str:
        tag = "pass" if self.passed else "FAIL"
        return (
            f"{self.lemma_id}: {tag} worst_margin={self.worst_margin:.3e} "
            f"tol={self.tolerance:.1e} ({self.witness})"
        )


def _finish(lemma_id: str, margins: list[tuple[float, str]], tolerance: float) -> CheckReport:
    worst, witness = min(margins, key=lambda t: t[0])
    return CheckReport(
        lemma_id=lemma_id,
        passed=worst >= -tolerance,
        worst_margin=worst,
        tolerance=tolerance,
        witness=witness,
    )


def _as_array(a) -> np.ndarray:
    return a.data if isinstance(a, Matrix) else np.asarray(a)


# ---------------------------------------------------------------------------
# Products, sums, and perturbations of singular values
# ---------------------------------------------------------------------------


def check_basic_inequalities(a, b) -> CheckReport:
    """Product/sum bounds for s1 and s_n, and the diagonal sandwich."""
    arr_a, arr_b = _as_array(a), _as_array(b)
    if arr_a.shape != arr_b.shape or arr_a.shape[0] != arr_a.shape[1]:
        raise ValueError("need two square matrices of equal size")
    s_a = np.asarray(linalg.singular_values(arr_a))
    s_b = np.asarray(linalg.singular_values(arr_b))
    s_ab = np.asarray(linalg.singular_values(arr_a @ arr_b))
    s_sum = linalg.operator_norm(arr_a + arr_b)
    s_diff = linalg.operator_norm(arr_a - arr_b)
    scale = max(1.0, s_a[0], s_b[0], s_a[0] * s_b[0])
    tolerance = 1e-8 * scale
    margins = [
        (s_a[0] * s_b[0] - s_ab[0], "top-product"),
        (s_a[0] + s_b[0] - s_sum, "top-sum"),
        (s_ab[-1] - s_a[-1] * s_b[-1], "bottom-product"),
    ]
    gaps = np.abs(s_a - s_b)
    i = int(np.argmax(gaps))
    margins.append((s_diff - float(gaps[i]), f"value-perturbation i={i}"))
    diag = np.diag(np.diag(arr_a))
    if np.array_equal(arr_a, diag):
        for i, (lo, mid, hi) in enumerate(zip(s_a[-1] * s_b, s_ab, s_a[0] * s_b)):
            margins.append((float(mid - lo), f"diagonal-sandwich-lower i={i}"))
            margins.append((float(hi - mid), f"diagonal-sandwich-upper i={i}"))
    return _finish("basic-singular-inequalities", margins, tolerance)


def check_rv_row_bound(a) -> CheckReport:
    """n^(-1/2) * min_i dist(R_i, R_-i) <= s_n <= min_i dist(R_i, R_-i)."""
    arr = _as_array(a)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError("need a square matrix")
    n = arr.shape[0]
    rows = [arr[i] for i in range(n)]
    dists = [
        linalg.distance_to_span(rows[i], [rows[j] for j in range(n) if j != i]) for i in range(n)
    ]
    min_dist = min(dists)
    sn = linalg.smallest_singular_value(arr)
    scale = max(1.0, float(np.sqrt((abs(arr) ** 2).sum())))
    margins = [
        (sn - min_dist / math.sqrt(n), "lower-bound"),
        (min_dist - sn, f"upper-bound i={int(np.argmin(dists))}"),
    ]
    return _finish("row-distance-bound", margins, 1e-8 * scale)


def check_tao_vu_negative_moment(a) -> CheckReport:
    """sum s_i^(-2) equals sum dist(R_i, R_-i)^(-2) for full-rank inputs."""
    arr = _as_array(a)
    n_rows, n_cols = arr.shape
    if n_rows > n_cols:
        raise ValueError("need a wide or square matrix (rows <= cols)")
    svals = np.asarray(linalg.singular_values(arr))
    if svals[-1] <= 0.0:
        raise RankDeficiencyError("negative-moment identity needs full row rank")
    lhs = float(np.sum(svals**-2.0))
    rows = [arr[i] for i in range(n_rows)]
    dists = [
        linalg.distance_to_span(rows[i], [rows[j] for j in range(n_rows) if j != i])
        for i in range(n_rows)
    ]
    if min(dists) <= 0.0:
        raise RankDeficiencyError("a row lies in the span of the others")
    rhs = float(sum(d**-2.0 for d in dists))
    rel = abs(lhs - rhs) / max(lhs, rhs)
    return _finish(
        "negative-second-moment", [(-rel, f"lhs={lhs:.6e} rhs={rhs:.6e}")], 1e-8
    )


def check_cauchy_interlacing(a, deleted_rows) -> CheckReport:
    """Row deletion compresses the singular values: s_i(A) >= s_i(B) >= s_(i+k)(A)."""
    arr = _as_array(a)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError("need a square matrix")
    n = arr.shape[0]
    deleted = sorted(set(int(i) for i in deleted_rows))
    if any(i < 0 or i >= n for i in deleted):
        raise ValueError("row indices out of range")
    keep = [i for i in range(n) if i not in deleted]
    if not keep:
        raise ValueError("cannot delete every row")
    s_a = np.asarray(linalg.singular_values(arr))
    s_b = np.asarray(linalg.singular_values(arr[keep]))
    k = n - len(keep)
    scale = max(1.0, float(s_a[0]))
    margins = []
    for i in range(len(keep)):
        margins.append((float(s_a[i] - s_b[i]), f"upper i={i}"))
        margins.append((float(s_b[i] - s_a[i + k]), f"lower i={i}"))
    return _finish("row-deletion-interlacing", margins, 1e-8 * scale)


def _two_sample_cdf_gap(x: np.ndarray, y: np.ndarray) -> float:
    """sup_t |F_x(t) - F_y(t)| for two empirical distributions."""
    grid = np.concatenate([x, y])
    fx = np.searchsorted(np.sort(x), grid, side="right") / x.size
    fy = np.searchsorted(np.sort(y), grid, side="right") / y.size
    return float(np.max(np.abs(fx - fy)))


def check_thompson_lidskii(a, b) -> CheckReport:
    """Finite-rank perturbations shift singular-value ranks by at most the rank."""
    arr_a, arr_b = _as_array(a), _as_array(b)
    if arr_a.shape != arr_b.shape or arr_a.shape[0] != arr_a.shape[1]:
        raise ValueError("need two square matrices of equal size")
    n = arr_a.shape[0]
    diff = arr_a - arr_b
    s_diff = np.asarray(linalg.singular_values(diff))
    k = int(np.sum(s_diff > 1e-10 * max(s_diff[0], 1e-300))) if s_diff[0] > 0 else 0
    s_a = np.asarray(linalg.singular_values(arr_a))
    s_b = np.asarray(linalg.singular_values(arr_b))
    scale = max(1.0, float(s_a[0]), float(s_b[0]))
    margins = []
    for i in range(n):
        upper = math.inf if i - k < 0 else float(s_a[i - k])
        lower = 0.0 if i + k >= n else float(s_a[i + k])
        if math.isfinite(upper):
            margins.append((upper - float(s_b[i]), f"upper-chain i={i} rank={k}"))
        margins.append((float(s_b[i]) - lower, f"lower-chain i={i} rank={k}"))
    gap = _two_sample_cdf_gap(s_a, s_b)
    margins.append((k / n - gap, f"bulk-cdf-gap rank={k}"))
    return _finish("low-rank-interlacing", margins, 1e-8 * scale)


def check_weyl(a) -> CheckReport:
    """Multiplicative majorization between eigenvalue moduli and singular values."""
    arr = _as_array(a)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError("need a square matrix")
    n = arr.shape[0]
    lam = np.abs(np.asarray(linalg.eigenvalues(arr)))
    sig = np.asarray(linalg.singular_values(arr))
    margins = []
    prod_l = 1.0
    prod_s = 1.0
    for kk in range(n):
        prod_l *= float(lam[kk])
        prod_s *= float(sig[kk])
        ref = max(prod_l, prod_s, 1e-300)
        margins.append(((prod_s - prod_l) / ref, f"head-products k={kk + 1}"))
    margins.append((-abs(prod_s - prod_l) / max(prod_s, prod_l, 1e-300), "full-product-equality"))
    tail_l = 1.0
    tail_s = 1.0
    for kk in range(n - 1, -1, -1):
        tail_l *= float(lam[kk])
        tail_s *= float(sig[kk])
        ref = max(tail_l, tail_s, 1e-300)
        margins.append(((tail_l - tail_s) / ref, f"tail-products k={kk + 1}"))
    sum_l = 0.0
    sum_s = 0.0
    norm2 = float(np.sum(sig**2))
    for kk in range(n):
        sum_l += float(lam[kk] ** 2)
        sum_s += float(sig[kk] ** 2)
        margins.append(((sum_s - sum_l) / max(norm2, 1e-300), f"power-sums k={kk + 1}"))
    return _finish("eigen-singular-majorization", margins, 1e-6)


# ---------------------------------------------------------------------------
# The column-perturbed identity
# ---------------------------------------------------------------------------


def special_matrix(n: int, w: complex) -> Matrix:
    """Identity minus w times the all-ones first column block."""
    if n < 2:
        raise ValueError("need n >= 2")
    w = complex(w)
    dtype = np.complex128 if w.imag != 0.0 else np.float64
    a = np.eye(n, dtype=dtype)
    a[:, 0] -= w if dtype == np.complex128 else w.real
    return Matrix(a)


def special_matrix_limit(z: complex) -> float:
    """Large-n limit of the smallest singular value at shift w = z/sqrt(n)."""
    az = abs(complex(z))
    return math.sqrt(2.0) / math.sqrt(2.0 + az * az + az * math.sqrt(4.0 + az * az))


def _special_quadratic_roots(n: int, w: complex) -> tuple[float, float]:
    """Roots (u_minus^2, u_plus^2) of X^2 - bX + c for the two nontrivial values."""
    b = 1.0 + (n - 1) * abs(w) ** 2 + abs(1.0 - w) ** 2
    c = abs(1.0 - w) ** 2
    disc = max(b * b - 4.0 * c, 0.0)
    root = math.sqrt(disc)
    hi = 0.5 * (b + root)
    lo = c / hi if hi > 0 else 0.0
    return lo, hi


def _special_extreme_values_implicit(n: int, w: complex) -> tuple[float, float]:
    """(s_n, s_1) by power iteration using O(n) matvecs; independent of the quadratic."""
    dtype = np.complex128 if complex(w).imag != 0.0 else np.float64
    wv = complex(w) if dtype == np.complex128 else complex(w).real

    def gram_with(shift):
        def gram(x):
            y = x.astype(dtype, copy=True)
            y[0] -= np.conj(shift) * x.sum()  # apply the adjoint first
            return y - shift * y[0] * np.ones_like(y)

        return gram

    top = linalg.power_iteration_matvec(gram_with(wv), n, tol=1e-13, max_iter=200_000)
    s1 = math.sqrt(max(top, 0.0))
    if wv == 1.0:  # singular: no inverse route, smallest value is exactly 0
        return 0.0, s1
    # the inverse has the same ones-column structure at shift w/(w-1)
    top_inv = linalg.power_iteration_matvec(
        gram_with(wv / (wv - 1.0)), n, tol=1e-13, max_iter=200_000
    )
    sn = 1.0 / math.sqrt(top_inv) if top_inv > 0 else 0.0
    return sn, s1


#: Above this order the check switches from a dense SVD to implicit power
#: iteration on A A* (the matrix is identity plus a rank-one column block,
#: so matvecs cost O(n)).
DENSE_SPECIAL_CUTOFF = 600


def check_special_matrix_A(n: int, z: complex) -> CheckReport:
    """The two nontrivial singular values obey the rank-two quadratic."""
    if n < 2:
        raise ValueError("need n >= 2")
    z = complex(z)
    w = z / math.sqrt(n)
    singular_case = w == 1.0  # the matrix is invertible iff w != 1
    lo, hi = _special_quadratic_roots(n, w)
    u_minus, u_plus = math.sqrt(lo), math.sqrt(hi)
    margins = []
    if n <= DENSE_SPECIAL_CUTOFF:
        svals = np.asarray(linalg.singular_values(special_matrix(n, w).data))
        s1, sn = float(svals[0]), float(svals[-1])
        if n > 2:
            middle_gap = float(np.max(np.abs(svals[1:-1] - 1.0)))
            margins.append((1e-9 - middle_gap, f"unit-middle-values n={n}"))
        route = "dense-svd"
    else:
        sn, s1 = _special_extreme_values_implicit(n, w)
        route = "power-iteration"
    if singular_case:
        route += " singular-case-w=1"
    margins.append((1e-8 * (1.0 + u_plus) - abs(s1 - u_plus), f"top-root ({route})"))
    margins.append((1e-8 * (1.0 + u_minus) - abs(sn - u_minus), f"bottom-root ({route})"))
    b = 1.0 + (n - 1) * abs(w) ** 2 + abs(1.0 - w) ** 2
    c = abs(1.0 - w) ** 2
    for name, val in (("top", s1), ("bottom", sn)):
        x = val * val
        residual = abs(x * x - b * x + c)
        margins.append((1e-8 * (1.0 + b + c) - residual, f"quadratic-residual {name}"))
    if n >= 10_000:
        limit = special_matrix_limit(z)
        margins.append(
            (2.0 / math.sqrt(n) - abs(sn - limit), f"limit-value target={limit:.6f}")
        )
    return _finish("column-perturbed-identity", margins, 0.0)


# ---------------------------------------------------------------------------
# Distance concentration for random rows
# ---------------------------------------------------------------------------


def check_distance_concentration(
    n: int,
    law: EntryLaw,
    dim_h: int,
    replicas: int,
    stream: SeededStream,
) -> CheckReport:
    """Empirical frequency of dist(R, H) <= (sigma/2) * sqrt(n - dim H).

    H is one random subspace drawn first from the stream; rows follow the
    entry law.  The pass threshold carries explicit Monte Carlo slack since
    the theoretical bound exp(-n^0.01) is close to 1 at desk scale.
    """
    if not (0 <= dim_h <= n - 1):
        raise ValueError("need 0 <= dim_h <= n - 1")
    if replicas < 1:
        raise ValueError("need at least one replica")
    if not math.isfinite(law.variance):
        raise ValueError("distance concentration needs a finite-variance law")
    q_arr = None
    if dim_h > 0:
        basis = stream.normal(n * dim_h).reshape(n, dim_h)
        q, _ = linalg.householder_qr(basis)
        q_arr = q.data
    rows = sample_array(law, stream, replicas * n).reshape(replicas, n)
    norms2 = np.sum(rows * rows, axis=1)
    if q_arr is not None:
        proj = rows @ q_arr
        dist2 = np.maximum(norms2 - np.sum(proj * proj, axis=1), 0.0)
    else:
        dist2 = norms2  # empty subspace: the distance is the row norm
    threshold = 0.5 * law.sigma * math.sqrt(n - dim_h)
    violations = int(np.sum(np.sqrt(dist2) <= threshold))
    freq = violations / replicas
    bound = max(10.0 * math.exp(-(n**0.01)), 5.0 / replicas)
    literal_guard = dim_h <= n - n**0.99
    witness = (
        f"violations={violations}/{replicas} threshold={threshold:.4g} "
        f"asymptotic-dim-guard={'ok' if literal_guard else 'desk-scale'}"
    )
    return CheckReport(
        lemma_id="row-subspace-distance-concentration",
        passed=freq <= bound,
        worst_margin=bound - freq,
        tolerance=0.0,
        witness=witness,
    )


# ---------------------------------------------------------------------------
# Seeded fuzz campaigns
# ---------------------------------------------------------------------------


def fuzz_matrix(stream: SeededStream, rows: int, cols: int) -> np.ndarray:
    """Dense matrix with entries uniform on [-1, 1)."""
    return 2.0 * stream.uniform(rows * cols).reshape(rows, cols) - 1.0


def _campaign_sizes(instances: int):
    for k in range(instances):
        yield 3 + (k % 10)  # sizes 3..12


def _run_many(lemma_id, instances, stream, one) -> CheckReport:
    worst = None
    for k, n in enumerate(_campaign_sizes(instances)):
        report = one(n, stream.substream(k))
        if worst is None or report.worst_margin < worst.worst_margin:
            worst = CheckReport(
                lemma_id=report.lemma_id,
                passed=report.passed,
                worst_margin=report.worst_margin,
                tolerance=report.tolerance,
                witness=f"instance {k} (n={n}): {report.witness}",
            )
        if not report.passed:
            break
    assert worst is not None
    return worst


def _campaign_basic(instances, stream):
    def one(n, sub):
        a = fuzz_matrix(sub, n, n)
        if sub.uniform(1)[0] < 0.25:  # exercise the diagonal sandwich branch
            a = np.diag(np.diag(a))
        b = fuzz_matrix(sub, n, n)
        return check_basic_inequalities(a, b)

    return _run_many("basic-singular-inequalities", instances, stream, one)


def _campaign_rv(instances, stream):
    return _run_many(
        "row-distance-bound", instances, stream, lambda n, sub: check_rv_row_bound(fuzz_matrix(sub, n, n))
    )


def _campaign_tvneg(instances, stream):
    def one(n, sub):
        extra = int(sub.uniform(1)[0] * 4)  # rectangular n x (n + 0..3)
        return check_tao_vu_negative_moment(fuzz_matrix(sub, n, n + extra))

    return _run_many("negative-second-moment", instances, stream, one)


def _campaign_cauchy(instances, stream):
    def one(n, sub):
        a = fuzz_matrix(sub, n, n)
        count = 1 + int(sub.uniform(1)[0] * (n - 1))
        order = np.argsort(sub.uniform(n))
        return check_cauchy_interlacing(a, order[:count].tolist())

    return _run_many("row-deletion-interlacing", instances, stream, one)


def _campaign_thompson(instances, stream):
    def one(n, sub):
        a = fuzz_matrix(sub, n, n)
        k = int(sub.uniform(1)[0] * 3)  # perturbation rank 0..2
        b = a.copy()
        for _ in range(k):
            u = 2.0 * sub.uniform(n) - 1.0
            v = 2.0 * sub.uniform(n) - 1.0
            b = b + np.outer(u, v)
        return check_thompson_lidskii(a, b)

    return _run_many("low-rank-interlacing", instances, stream, one)


def _campaign_weyl(instances, stream):
    return _run_many(
        "eigen-singular-majorization", instances, stream, lambda n, sub: check_weyl(fuzz_matrix(sub, n, n))
    )


def _campaign_special(instances, stream):
    def one(n, sub):
        u = sub.uniform(2)
        z = complex(3.0 * (2.0 * u[0] - 1.0), 3.0 * (2.0 * u[1] - 1.0))
        return check_special_matrix_A(n, z)

    return _run_many("column-perturbed-identity", instances, stream, one)


def _campaign_concdist(instances, stream):
    replicas = max(200, min(5000, instances * 10))
    return check_distance_concentration(100, exponential(1.0), 50, replicas, stream.substream(0))


LEMMA_IDS = {
    "basic-singular-inequalities": _campaign_basic,
    "row-distance-bound": _campaign_rv,
    "negative-second-moment": _campaign_tvneg,
    "row-deletion-interlacing": _campaign_cauchy,
    "low-rank-interlacing": _campaign_thompson,
    "eigen-singular-majorization": _campaign_weyl,
    "column-perturbed-identity": _campaign_special,
    "row-subspace-distance-concentration": _campaign_concdist,
}


def run_lemma_campaign(lemma_id: str, instances: int, stream: SeededStream) -> CheckReport:
    """Fuzz one named check over seeded instances; worst case wins the report."""
    try:
        campaign = LEMMA_IDS[lemma_id]
    except KeyError:
        raise ValueError(f"unknown lemma id {lemma_id!r}; choose from {sorted(LEMMA_IDS)}") from None
    return campaign(instances, stream)
