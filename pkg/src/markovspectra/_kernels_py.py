"""Pure-Python (numpy) spectral kernels.

Fallback backend used when the compiled extension is unavailable.  Both
backends expose the same functions with identical contracts:

* ``hessenberg_real`` / ``hessenberg_complex`` -- in-place Householder
  reduction to upper Hessenberg form.
* ``hessenberg_qr_eigs_real`` -- Francis implicit double-shift QR on a real
  Hessenberg matrix; returns (real parts, imaginary parts), destroys input.
* ``hessenberg_qr_eigs_complex`` -- explicit single-shift QR with complex
  Givens rotations; returns a complex vector, destroys input.
* ``bidiagonalize_real`` / ``bidiagonalize_complex`` -- Householder
  bidiagonalization of an m x n array (m >= n), destroys input; returns
  nonnegative (diagonal, superdiagonal) with the superdiagonal stored so
  that ``e[j]`` couples ``d[j-1]`` and ``d[j]`` (``e[0]`` unused).
* ``bidiagonal_singular_values`` -- implicit-shift QR iteration on the
  bidiagonal, in place on ``d`` (unsorted, nonnegative on exit).

Deflation uses the relative criterion |h| <= u*(|neighbor| + |neighbor|)
with u = 2**-52 and exceptional shifts fire every 10 stalled sweeps.  The
sweep budget is 40 per eigenvalue, charged against the whole matrix (40*n
in aggregate); the bidiagonal stage budgets 40 sweeps per singular value.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import IterationLimitError

EPS = 2.0**-52
MAX_STALL = 40
EXC_EVERY = 10
_TINY = 1e-290

__all__ = [
    "EPS",
    "MAX_STALL",
    "EXC_EVERY",
    "hessenberg_real",
    "hessenberg_complex",
    "hessenberg_qr_eigs_real",
    "hessenberg_qr_eigs_complex",
    "bidiagonalize_real",
    "bidiagonalize_complex",
    "bidiagonal_singular_values",
]


# ---------------------------------------------------------------------------
# Hessenberg reduction
# ---------------------------------------------------------------------------


def hessenberg_real(h: np.ndarray) -> None:
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        nrm = math.sqrt(float(x @ x))
        if nrm == 0.0:
            continue
        alpha = -nrm if x[0] >= 0 else nrm
        v = x.copy()
        v[0] -= alpha
        vnorm2 = float(v @ v)
        if vnorm2 == 0.0:
            continue
        beta = 2.0 / vnorm2
        w = v @ h[k + 1 :, k:]
        h[k + 1 :, k:] -= beta * np.outer(v, w)
        w2 = h[:, k + 1 :] @ v
        h[:, k + 1 :] -= beta * np.outer(w2, v)
        h[k + 1, k] = alpha
        h[k + 2 :, k] = 0.0


def hessenberg_complex(h: np.ndarray) -> None:
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        nrm = math.sqrt(float((x.conj() @ x).real))
        if nrm == 0.0:
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        alpha = -phase * nrm
        v = x.copy()
        v[0] -= alpha
        vnorm2 = float((v.conj() @ v).real)
        if vnorm2 == 0.0:
            continue
        beta = 2.0 / vnorm2
        w = v.conj() @ h[k + 1 :, k:]
        h[k + 1 :, k:] -= beta * np.outer(v, w)
        w2 = h[:, k + 1 :] @ v
        h[:, k + 1 :] -= beta * np.outer(w2, v.conj())
        h[k + 1, k] = alpha
        h[k + 2 :, k] = 0.0


# ---------------------------------------------------------------------------
# Real Francis double-shift QR (eigenvalues only)
# ---------------------------------------------------------------------------


def _house3(x: float, y: float, z: float):
    nrm = math.sqrt(x * x + y * y + z * z)
    if nrm == 0.0:
        return None, 0.0
    alpha = -nrm if x >= 0 else nrm
    v = np.array([x - alpha, y, z])
    vnorm2 = float(v @ v)
    if vnorm2 == 0.0:
        return None, 0.0
    return v, 2.0 / vnorm2


def _house2(x: float, y: float):
    nrm = math.hypot(x, y)
    if nrm == 0.0:
        return None, 0.0
    alpha = -nrm if x >= 0 else nrm
    v = np.array([x - alpha, y])
    vnorm2 = float(v @ v)
    if vnorm2 == 0.0:
        return None, 0.0
    return v, 2.0 / vnorm2


def _eig_2x2_real(a: float, b: float, c: float, d: float):
    """Eigenvalues of [[a, b], [c, d]] as (re, im) pairs."""
    half_tr = 0.5 * (a + d)
    det = a * d - b * c
    disc = half_tr * half_tr - det
    if disc >= 0.0:
        s = math.sqrt(disc)
        l1 = half_tr + s if half_tr >= 0 else half_tr - s
        l2 = det / l1 if l1 != 0.0 else half_tr - math.copysign(s, half_tr)
        return (l1, 0.0), (l2, 0.0)
    s = math.sqrt(-disc)
    return (half_tr, s), (half_tr, -s)


def hessenberg_qr_eigs_real(h: np.ndarray, max_stall: int = MAX_STALL, exc_every: int = EXC_EVERY):
    n = h.shape[0]
    wr = np.empty(n)
    wi = np.empty(n)
    if n == 1:
        wr[0], wi[0] = h[0, 0], 0.0
        return wr, wi
    hnorm = math.sqrt(float((h * h).sum()))
    hi = n - 1
    stall = 0
    budget = max_stall * n  # sweep budget scales with the number of eigenvalues
    while hi >= 0:
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if s == 0.0:
                s = hnorm
            if abs(h[lo, lo - 1]) <= EPS * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            wr[hi], wi[hi] = h[hi, hi], 0.0
            hi -= 1
            stall = 0
            continue
        if lo == hi - 1:
            (r1, i1), (r2, i2) = _eig_2x2_real(
                h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi]
            )
            wr[hi - 1], wi[hi - 1] = r1, i1
            wr[hi], wi[hi] = r2, i2
            hi -= 2
            stall = 0
            continue
        stall += 1
        budget -= 1
        if budget < 0:
            raise IterationLimitError(
                f"double-shift QR failed to deflate within {max_stall * n} sweeps"
            )
        if stall % exc_every == 0:
            # exceptional double shift anchored at the trailing diagonal entry
            s = abs(h[hi, hi - 1]) + abs(h[hi - 1, hi - 2])
            aa = 0.75 * s + h[hi, hi]
            shift_sum = 2.0 * aa
            shift_prod = aa * aa + 0.4375 * s * s
        else:
            shift_sum = h[hi - 1, hi - 1] + h[hi, hi]
            shift_prod = h[hi - 1, hi - 1] * h[hi, hi] - h[hi - 1, hi] * h[hi, hi - 1]
        h00 = h[lo, lo]
        h10 = h[lo + 1, lo]
        x = h00 * h00 + h[lo, lo + 1] * h10 - shift_sum * h00 + shift_prod
        y = h10 * (h00 + h[lo + 1, lo + 1] - shift_sum)
        z = h10 * h[lo + 2, lo + 1]
        for k in range(lo, hi - 1):
            v, beta = _house3(x, y, z)
            if beta != 0.0:
                q = max(lo, k - 1)
                sub = h[k : k + 3, q : hi + 1]
                w = v @ sub
                sub -= beta * np.outer(v, w)
                r = min(k + 3, hi)
                sub2 = h[lo : r + 1, k : k + 3]
                w2 = sub2 @ v
                sub2 -= beta * np.outer(w2, v)
                if k > lo:
                    h[k + 1, k - 1] = 0.0
                    h[k + 2, k - 1] = 0.0
            x = h[k + 1, k]
            y = h[k + 2, k]
            z = h[k + 3, k] if k < hi - 2 else 0.0
        v2, beta2 = _house2(x, y)
        if beta2 != 0.0:
            q = max(lo, hi - 2)
            sub = h[hi - 1 : hi + 1, q : hi + 1]
            w = v2 @ sub
            sub -= beta2 * np.outer(v2, w)
            sub2 = h[lo : hi + 1, hi - 1 : hi + 1]
            w2 = sub2 @ v2
            sub2 -= beta2 * np.outer(w2, v2)
            if hi - 2 >= lo:
                h[hi, hi - 2] = 0.0
    return wr, wi


# ---------------------------------------------------------------------------
# Complex single-shift QR (eigenvalues only)
# ---------------------------------------------------------------------------


def _eig_2x2_complex(a: complex, b: complex, c: complex, d: complex):
    half_tr = 0.5 * (a + d)
    det = a * d - b * c
    sq = np.sqrt(complex(half_tr * half_tr - det))
    l1 = half_tr + sq
    l2 = half_tr - sq
    if abs(l1) >= abs(l2):
        if l1 != 0:
            l2 = det / l1
    elif l2 != 0:
        l1 = det / l2
    return l1, l2


def _cgivens(a: complex, b: complex):
    """Return (c, s) with c real so that [[c, s], [-conj(s), c]] @ (a, b) = (r, 0)."""
    if b == 0:
        return 1.0, 0.0 + 0.0j
    if a == 0:
        return 0.0, np.conj(b) / abs(b)
    absa = abs(a)
    dd = math.hypot(absa, abs(b))
    c = absa / dd
    s = (a / absa) * np.conj(b) / dd
    return c, s


def hessenberg_qr_eigs_complex(
    h: np.ndarray, max_stall: int = MAX_STALL, exc_every: int = EXC_EVERY
):
    n = h.shape[0]
    w = np.empty(n, dtype=np.complex128)
    if n == 1:
        w[0] = h[0, 0]
        return w
    hnorm = math.sqrt(float((h.real**2 + h.imag**2).sum()))
    hi = n - 1
    stall = 0
    budget = max_stall * n
    cs = np.empty(n)
    sn = np.empty(n, dtype=np.complex128)
    while hi >= 0:
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if s == 0.0:
                s = hnorm
            if abs(h[lo, lo - 1]) <= EPS * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            w[hi] = h[hi, hi]
            hi -= 1
            stall = 0
            continue
        if lo == hi - 1:
            l1, l2 = _eig_2x2_complex(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
            w[hi - 1], w[hi] = l1, l2
            hi -= 2
            stall = 0
            continue
        stall += 1
        budget -= 1
        if budget < 0:
            raise IterationLimitError(
                f"single-shift QR failed to deflate within {max_stall * n} sweeps"
            )
        if stall % exc_every == 0:
            kappa = h[hi, hi] + abs(h[hi, hi - 1]) + abs(h[hi - 1, hi - 2])
        else:
            l1, l2 = _eig_2x2_complex(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
            kappa = l1 if abs(l1 - h[hi, hi]) <= abs(l2 - h[hi, hi]) else l2
        win = h[lo : hi + 1, lo : hi + 1]
        m = hi - lo + 1
        win[np.diag_indices(m)] -= kappa
        for i in range(m - 1):
            c, s = _cgivens(win[i, i], win[i + 1, i])
            cs[i], sn[i] = c, s
            row_i = win[i, i:].copy()
            row_j = win[i + 1, i:]
            win[i, i:] = c * row_i + s * row_j
            win[i + 1, i:] = -np.conj(s) * row_i + c * row_j
            win[i + 1, i] = 0.0
        for i in range(m - 1):
            c, s = cs[i], sn[i]
            col_i = win[: i + 2, i].copy()
            col_j = win[: i + 2, i + 1]
            win[: i + 2, i] = c * col_i + np.conj(s) * col_j
            win[: i + 2, i + 1] = -s * col_i + c * col_j
        win[np.diag_indices(m)] += kappa
    return w


# ---------------------------------------------------------------------------
# Householder bidiagonalization
# ---------------------------------------------------------------------------


def bidiagonalize_real(a: np.ndarray):
    m, n = a.shape
    d = np.zeros(n)
    e = np.zeros(n)
    for j in range(n):
        x = a[j:, j]
        nrm = math.sqrt(float(x @ x))
        if nrm > 0.0:
            alpha = -nrm if x[0] >= 0 else nrm
            v = x.copy()
            v[0] -= alpha
            vnorm2 = float(v @ v)
            if vnorm2 > 0.0:
                beta = 2.0 / vnorm2
                if j < n - 1:
                    w = v @ a[j:, j + 1 :]
                    a[j:, j + 1 :] -= beta * np.outer(v, w)
            d[j] = abs(alpha)
        if j < n - 1:
            x = a[j, j + 1 :]
            nrm = math.sqrt(float(x @ x))
            if nrm > 0.0:
                alpha = -nrm if x[0] >= 0 else nrm
                v = x.copy()
                v[0] -= alpha
                vnorm2 = float(v @ v)
                if vnorm2 > 0.0:
                    beta = 2.0 / vnorm2
                    w = a[j + 1 :, j + 1 :] @ v
                    a[j + 1 :, j + 1 :] -= beta * np.outer(w, v)
                e[j + 1] = abs(alpha)
    return d, e


def bidiagonalize_complex(a: np.ndarray):
    m, n = a.shape
    d = np.zeros(n)
    e = np.zeros(n)
    for j in range(n):
        x = a[j:, j]
        nrm = math.sqrt(float((x.conj() @ x).real))
        if nrm > 0.0:
            x0 = x[0]
            phase = x0 / abs(x0) if x0 != 0 else 1.0
            alpha = -phase * nrm
            v = x.copy()
            v[0] -= alpha
            vnorm2 = float((v.conj() @ v).real)
            if vnorm2 > 0.0:
                beta = 2.0 / vnorm2
                if j < n - 1:
                    w = v.conj() @ a[j:, j + 1 :]
                    a[j:, j + 1 :] -= beta * np.outer(v, w)
            d[j] = nrm
        if j < n - 1:
            x = np.conj(a[j, j + 1 :])
            nrm = math.sqrt(float((x.conj() @ x).real))
            if nrm > 0.0:
                x0 = x[0]
                phase = x0 / abs(x0) if x0 != 0 else 1.0
                alpha = -phase * nrm
                v = x.copy()
                v[0] -= alpha
                vnorm2 = float((v.conj() @ v).real)
                if vnorm2 > 0.0:
                    beta = 2.0 / vnorm2
                    w = a[j + 1 :, j + 1 :] @ v
                    a[j + 1 :, j + 1 :] -= beta * np.outer(w, v.conj())
                e[j + 1] = nrm
    return d, e


# ---------------------------------------------------------------------------
# Bidiagonal implicit-shift QR for singular values
# ---------------------------------------------------------------------------


def _zero_shift_sweep(d: np.ndarray, e: np.ndarray, lo: int, k: int) -> None:
    """One high-relative-accuracy zero-shift pass on the window [lo, k]."""
    cs = 1.0
    oldcs = 1.0
    oldsn = 0.0
    for i in range(lo, k):
        f1 = d[i] * cs
        g1 = e[i + 1]
        r = math.hypot(f1, g1)
        if r == 0.0:
            cs, s = 1.0, 0.0
        else:
            cs, s = f1 / r, g1 / r
        if i > lo:
            e[i] = oldsn * r
        f2 = oldcs * r
        g2 = d[i + 1] * s
        r2 = math.hypot(f2, g2)
        if r2 == 0.0:
            oldcs, oldsn = 1.0, 0.0
        else:
            oldcs, oldsn = f2 / r2, g2 / r2
        d[i] = r2
    hlast = d[k] * cs
    d[k] = hlast * oldcs
    e[k] = hlast * oldsn


def bidiagonal_singular_values(d: np.ndarray, e: np.ndarray, max_stall: int = MAX_STALL) -> None:
    n = d.size
    if n == 0:
        return
    e[0] = 0.0
    bnorm = float(np.abs(d).max(initial=0.0) + np.abs(e).max(initial=0.0))
    if bnorm == 0.0:
        return
    for k in range(n - 1, -1, -1):
        stall = 0
        while True:
            cancel = False
            lo = 0
            for l in range(k, -1, -1):
                if l == 0:
                    lo = 0
                    break
                if abs(e[l]) <= EPS * (abs(d[l - 1]) + abs(d[l])):
                    e[l] = 0.0
                    lo = l
                    break
                if abs(d[l - 1]) <= EPS * bnorm:
                    cancel = True
                    lo = l
                    break
            if cancel:
                # annihilate e[lo] after a negligible diagonal above it
                c = 0.0
                s = 1.0
                for i in range(lo, k + 1):
                    f = s * e[i]
                    e[i] = c * e[i]
                    if abs(f) <= EPS * bnorm:
                        break
                    g = d[i]
                    hh = math.hypot(f, g)
                    d[i] = hh
                    c = g / hh
                    s = -f / hh
                continue
            if lo == k:
                if d[k] < 0.0:
                    d[k] = -d[k]
                break
            stall += 1
            if stall > max_stall:
                raise IterationLimitError(
                    f"bidiagonal QR failed to deflate within {max_stall} sweeps"
                )
            x = d[lo]
            y = d[k - 1]
            g = e[k - 1] if k - 1 >= 1 else 0.0
            hh = e[k]
            z = d[k]
            small_e = abs(hh) < _TINY or (k >= 1 and abs(y) < _TINY)
            if small_e:
                _zero_shift_sweep(d, e, lo, k)
                continue
            f = ((y - z) * (y + z) + (g - hh) * (g + hh)) / (2.0 * hh * y)
            g2 = math.hypot(f, 1.0)
            f = ((x - z) * (x + z) + hh * (y / (f + math.copysign(g2, f)) - hh)) / x
            if not math.isfinite(f):
                _zero_shift_sweep(d, e, lo, k)
                continue
            c = 1.0
            s = 1.0
            for i in range(lo + 1, k + 1):
                g = e[i]
                y = d[i]
                hh = s * g
                g = c * g
                zz = math.hypot(f, hh)
                e[i - 1] = zz
                if zz != 0.0:
                    c = f / zz
                    s = hh / zz
                else:
                    c, s = 1.0, 0.0
                f = x * c + g * s
                g = g * c - x * s
                hh = y * s
                y = y * c
                zz = math.hypot(f, hh)
                d[i - 1] = zz
                if zz != 0.0:
                    c = f / zz
                    s = hh / zz
                else:
                    c, s = 1.0, 0.0
                f = c * g + s * y
                x = c * y - s * g
            e[lo] = 0.0
            e[k] = f
            d[k] = x
