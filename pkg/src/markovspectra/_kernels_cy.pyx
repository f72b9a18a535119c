# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled spectral kernels (Cython twin of ``_kernels_py``).

Same algorithms and deflation criteria as the fallback: Householder
reductions, Francis double-shift QR, complex single-shift QR with Givens
rotations, and implicit-shift bidiagonal QR.  The heavy loops run without
the GIL so replica threads can overlap.
"""

import numpy as np

from libc.math cimport copysign, fabs, hypot, isfinite, sqrt

from .errors import IterationLimitError

cdef double EPS = 2.220446049250313e-16  # 2**-52
cdef double TINY = 1e-290
cdef int DEF_MAX_STALL = 40
cdef int DEF_EXC_EVERY = 10

MAX_STALL = DEF_MAX_STALL
EXC_EVERY = DEF_EXC_EVERY


cdef inline double cmod(double complex z) nogil:
    return hypot(z.real, z.imag)


cdef inline double complex csqrt_principal(double complex z) nogil:
    cdef double r = cmod(z)
    cdef double re, im
    if r == 0.0:
        return 0.0
    re = sqrt(0.5 * (r + z.real))
    im = sqrt(0.5 * (r - z.real))
    if z.imag < 0.0:
        im = -im
    return re + 1j * im


# ---------------------------------------------------------------------------
# Hessenberg reduction
# ---------------------------------------------------------------------------


cdef void _hess_real(double[:, ::1] h, double[::1] v, double[::1] w) nogil:
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t k, i, j, ln
    cdef double nrm, alpha, vnorm2, beta, acc
    for k in range(n - 2):
        ln = n - k - 1  # rows k+1 .. n-1
        nrm = 0.0
        for i in range(ln):
            nrm += h[k + 1 + i, k] * h[k + 1 + i, k]
        nrm = sqrt(nrm)
        if nrm == 0.0:
            continue
        alpha = -nrm if h[k + 1, k] >= 0.0 else nrm
        vnorm2 = 0.0
        for i in range(ln):
            v[i] = h[k + 1 + i, k]
        v[0] -= alpha
        for i in range(ln):
            vnorm2 += v[i] * v[i]
        if vnorm2 == 0.0:
            continue
        beta = 2.0 / vnorm2
        # rows k+1..n-1, columns k..n-1: H <- (I - beta v v^T) H
        for j in range(k, n):
            w[j] = 0.0
        for i in range(ln):
            for j in range(k, n):
                w[j] += v[i] * h[k + 1 + i, j]
        for i in range(ln):
            acc = beta * v[i]
            for j in range(k, n):
                h[k + 1 + i, j] -= acc * w[j]
        # columns k+1..n-1, all rows: H <- H (I - beta v v^T)
        for i in range(n):
            acc = 0.0
            for j in range(ln):
                acc += h[i, k + 1 + j] * v[j]
            acc *= beta
            for j in range(ln):
                h[i, k + 1 + j] -= acc * v[j]
        h[k + 1, k] = alpha
        for i in range(k + 2, n):
            h[i, k] = 0.0


def hessenberg_real(double[:, ::1] h):
    cdef Py_ssize_t n = h.shape[0]
    if n < 3:
        return
    v = np.empty(n, dtype=np.float64)
    w = np.empty(n, dtype=np.float64)
    cdef double[::1] vv = v
    cdef double[::1] wv = w
    with nogil:
        _hess_real(h, vv, wv)


cdef void _hess_complex(double complex[:, ::1] h, double complex[::1] v,
                        double complex[::1] w) nogil:
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t k, i, j, ln
    cdef double nrm, vnorm2, beta
    cdef double complex alpha, phase, acc
    for k in range(n - 2):
        ln = n - k - 1
        nrm = 0.0
        for i in range(ln):
            nrm += h[k + 1 + i, k].real * h[k + 1 + i, k].real \
                 + h[k + 1 + i, k].imag * h[k + 1 + i, k].imag
        nrm = sqrt(nrm)
        if nrm == 0.0:
            continue
        if h[k + 1, k] != 0.0:
            phase = h[k + 1, k] / cmod(h[k + 1, k])
        else:
            phase = 1.0
        alpha = -phase * nrm
        for i in range(ln):
            v[i] = h[k + 1 + i, k]
        v[0] -= alpha
        vnorm2 = 0.0
        for i in range(ln):
            vnorm2 += v[i].real * v[i].real + v[i].imag * v[i].imag
        if vnorm2 == 0.0:
            continue
        beta = 2.0 / vnorm2
        for j in range(k, n):
            w[j] = 0.0
        for i in range(ln):
            acc = v[i].conjugate()
            for j in range(k, n):
                w[j] += acc * h[k + 1 + i, j]
        for i in range(ln):
            acc = beta * v[i]
            for j in range(k, n):
                h[k + 1 + i, j] -= acc * w[j]
        for i in range(n):
            acc = 0.0
            for j in range(ln):
                acc += h[i, k + 1 + j] * v[j]
            acc *= beta
            for j in range(ln):
                h[i, k + 1 + j] -= acc * v[j].conjugate()
        h[k + 1, k] = alpha
        for i in range(k + 2, n):
            h[i, k] = 0.0


def hessenberg_complex(double complex[:, ::1] h):
    cdef Py_ssize_t n = h.shape[0]
    if n < 3:
        return
    v = np.empty(n, dtype=np.complex128)
    w = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] vv = v
    cdef double complex[::1] wv = w
    with nogil:
        _hess_complex(h, vv, wv)


# ---------------------------------------------------------------------------
# Real Francis double-shift QR
# ---------------------------------------------------------------------------


cdef void _eig2x2_real(double a, double b, double c, double d,
                       double* r1, double* i1, double* r2, double* i2) nogil:
    cdef double half_tr = 0.5 * (a + d)
    cdef double det = a * d - b * c
    cdef double disc = half_tr * half_tr - det
    cdef double s
    if disc >= 0.0:
        s = sqrt(disc)
        if half_tr >= 0.0:
            r1[0] = half_tr + s
        else:
            r1[0] = half_tr - s
        i1[0] = 0.0
        if r1[0] != 0.0:
            r2[0] = det / r1[0]
        else:
            r2[0] = half_tr - copysign(s, half_tr)
        i2[0] = 0.0
    else:
        s = sqrt(-disc)
        r1[0] = half_tr
        i1[0] = s
        r2[0] = half_tr
        i2[0] = -s


cdef int _francis(double[:, ::1] h, double[::1] wr, double[::1] wi,
                  int max_stall, int exc_every) nogil:
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t hi, lo, k, i, j, q, r
    cdef int stall
    cdef long budget = (<long> max_stall) * (<long> n)
    cdef double s, shift_sum, shift_prod, h00, h10, x, y, z, aa
    cdef double nrm, alpha, vn2, beta, v0, v1, v2, t
    cdef double r1, i1, r2, i2
    cdef double hnorm = 0.0
    for i in range(n):
        for j in range(n):
            hnorm += h[i, j] * h[i, j]
    hnorm = sqrt(hnorm)
    hi = n - 1
    stall = 0
    while hi >= 0:
        lo = hi
        while lo > 0:
            s = fabs(h[lo - 1, lo - 1]) + fabs(h[lo, lo])
            if s == 0.0:
                s = hnorm
            if fabs(h[lo, lo - 1]) <= EPS * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            wr[hi] = h[hi, hi]
            wi[hi] = 0.0
            hi -= 1
            stall = 0
            continue
        if lo == hi - 1:
            _eig2x2_real(h[hi - 1, hi - 1], h[hi - 1, hi],
                         h[hi, hi - 1], h[hi, hi], &r1, &i1, &r2, &i2)
            wr[hi - 1] = r1
            wi[hi - 1] = i1
            wr[hi] = r2
            wi[hi] = i2
            hi -= 2
            stall = 0
            continue
        stall += 1
        budget -= 1
        if budget < 0:
            return -1
        if stall % exc_every == 0:
            # exceptional double shift anchored at the trailing diagonal entry
            s = fabs(h[hi, hi - 1]) + fabs(h[hi - 1, hi - 2])
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
            nrm = sqrt(x * x + y * y + z * z)
            if nrm != 0.0:
                alpha = -nrm if x >= 0.0 else nrm
                v0 = x - alpha
                v1 = y
                v2 = z
                vn2 = v0 * v0 + v1 * v1 + v2 * v2
                if vn2 != 0.0:
                    beta = 2.0 / vn2
                    q = lo if k - 1 < lo else k - 1
                    for j in range(q, hi + 1):
                        t = beta * (v0 * h[k, j] + v1 * h[k + 1, j] + v2 * h[k + 2, j])
                        h[k, j] -= t * v0
                        h[k + 1, j] -= t * v1
                        h[k + 2, j] -= t * v2
                    r = k + 3 if k + 3 < hi else hi
                    for i in range(lo, r + 1):
                        t = beta * (v0 * h[i, k] + v1 * h[i, k + 1] + v2 * h[i, k + 2])
                        h[i, k] -= t * v0
                        h[i, k + 1] -= t * v1
                        h[i, k + 2] -= t * v2
                    if k > lo:
                        h[k + 1, k - 1] = 0.0
                        h[k + 2, k - 1] = 0.0
            x = h[k + 1, k]
            y = h[k + 2, k]
            z = h[k + 3, k] if k < hi - 2 else 0.0
        nrm = hypot(x, y)
        if nrm != 0.0:
            alpha = -nrm if x >= 0.0 else nrm
            v0 = x - alpha
            v1 = y
            vn2 = v0 * v0 + v1 * v1
            if vn2 != 0.0:
                beta = 2.0 / vn2
                q = lo if hi - 2 < lo else hi - 2
                for j in range(q, hi + 1):
                    t = beta * (v0 * h[hi - 1, j] + v1 * h[hi, j])
                    h[hi - 1, j] -= t * v0
                    h[hi, j] -= t * v1
                for i in range(lo, hi + 1):
                    t = beta * (v0 * h[i, hi - 1] + v1 * h[i, hi])
                    h[i, hi - 1] -= t * v0
                    h[i, hi] -= t * v1
                if hi - 2 >= lo:
                    h[hi, hi - 2] = 0.0
    return 0


def hessenberg_qr_eigs_real(double[:, ::1] h, int max_stall=DEF_MAX_STALL,
                            int exc_every=DEF_EXC_EVERY):
    cdef Py_ssize_t n = h.shape[0]
    wr = np.empty(n, dtype=np.float64)
    wi = np.empty(n, dtype=np.float64)
    cdef double[::1] wrv = wr
    cdef double[::1] wiv = wi
    cdef int status
    if n == 1:
        wr[0] = h[0, 0]
        wi[0] = 0.0
        return wr, wi
    with nogil:
        status = _francis(h, wrv, wiv, max_stall, exc_every)
    if status != 0:
        raise IterationLimitError(
            f"double-shift QR failed to deflate within {max_stall * n} sweeps"
        )
    return wr, wi


# ---------------------------------------------------------------------------
# Complex single-shift QR
# ---------------------------------------------------------------------------


cdef void _ceig2x2(double complex a, double complex b, double complex c,
                   double complex d, double complex* l1, double complex* l2) nogil:
    cdef double complex half_tr = 0.5 * (a + d)
    cdef double complex det = a * d - b * c
    cdef double complex sq = csqrt_principal(half_tr * half_tr - det)
    cdef double complex e1 = half_tr + sq
    cdef double complex e2 = half_tr - sq
    if cmod(e1) >= cmod(e2):
        if e1 != 0.0:
            e2 = det / e1
    elif e2 != 0.0:
        e1 = det / e2
    l1[0] = e1
    l2[0] = e2


cdef int _cqr(double complex[:, ::1] h, double complex[::1] w,
              double[::1] cs, double complex[::1] sn,
              int max_stall, int exc_every) nogil:
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t hi, lo, i, j, m, base
    cdef int stall
    cdef long budget = (<long> max_stall) * (<long> n)
    cdef double s, absa, dd, c
    cdef double complex kappa, l1, l2, gs, row_i, row_j, a, b
    cdef double hnorm = 0.0
    for i in range(n):
        for j in range(n):
            hnorm += h[i, j].real * h[i, j].real + h[i, j].imag * h[i, j].imag
    hnorm = sqrt(hnorm)
    hi = n - 1
    stall = 0
    while hi >= 0:
        lo = hi
        while lo > 0:
            s = cmod(h[lo - 1, lo - 1]) + cmod(h[lo, lo])
            if s == 0.0:
                s = hnorm
            if cmod(h[lo, lo - 1]) <= EPS * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            w[hi] = h[hi, hi]
            hi -= 1
            stall = 0
            continue
        if lo == hi - 1:
            _ceig2x2(h[hi - 1, hi - 1], h[hi - 1, hi],
                     h[hi, hi - 1], h[hi, hi], &l1, &l2)
            w[hi - 1] = l1
            w[hi] = l2
            hi -= 2
            stall = 0
            continue
        stall += 1
        budget -= 1
        if budget < 0:
            return -1
        if stall % exc_every == 0:
            kappa = h[hi, hi] + cmod(h[hi, hi - 1]) + cmod(h[hi - 1, hi - 2])
        else:
            _ceig2x2(h[hi - 1, hi - 1], h[hi - 1, hi],
                     h[hi, hi - 1], h[hi, hi], &l1, &l2)
            if cmod(l1 - h[hi, hi]) <= cmod(l2 - h[hi, hi]):
                kappa = l1
            else:
                kappa = l2
        base = lo
        m = hi - lo + 1
        for i in range(m):
            h[base + i, base + i] -= kappa
        for i in range(m - 1):
            a = h[base + i, base + i]
            b = h[base + i + 1, base + i]
            if b == 0.0:
                cs[i] = 1.0
                sn[i] = 0.0
            elif a == 0.0:
                cs[i] = 0.0
                sn[i] = b.conjugate() / cmod(b)
            else:
                absa = cmod(a)
                dd = hypot(absa, cmod(b))
                cs[i] = absa / dd
                sn[i] = (a / absa) * b.conjugate() / dd
            c = cs[i]
            gs = sn[i]
            for j in range(base + i, hi + 1):
                row_i = h[base + i, j]
                row_j = h[base + i + 1, j]
                h[base + i, j] = c * row_i + gs * row_j
                h[base + i + 1, j] = -gs.conjugate() * row_i + c * row_j
            h[base + i + 1, base + i] = 0.0
        for i in range(m - 1):
            c = cs[i]
            gs = sn[i]
            for j in range(base, base + i + 2):
                row_i = h[j, base + i]
                row_j = h[j, base + i + 1]
                h[j, base + i] = c * row_i + gs.conjugate() * row_j
                h[j, base + i + 1] = -gs * row_i + c * row_j
        for i in range(m):
            h[base + i, base + i] += kappa
    return 0


def hessenberg_qr_eigs_complex(double complex[:, ::1] h, int max_stall=DEF_MAX_STALL,
                               int exc_every=DEF_EXC_EVERY):
    cdef Py_ssize_t n = h.shape[0]
    w = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] wv = w
    cdef int status
    if n == 1:
        w[0] = h[0, 0]
        return w
    cs = np.empty(n, dtype=np.float64)
    sn = np.empty(n, dtype=np.complex128)
    cdef double[::1] csv = cs
    cdef double complex[::1] snv = sn
    with nogil:
        status = _cqr(h, wv, csv, snv, max_stall, exc_every)
    if status != 0:
        raise IterationLimitError(
            f"single-shift QR failed to deflate within {max_stall * n} sweeps"
        )
    return w


# ---------------------------------------------------------------------------
# Householder bidiagonalization
# ---------------------------------------------------------------------------


cdef void _bidiag_real(double[:, ::1] a, double[::1] d, double[::1] e,
                       double[::1] v, double[::1] w) nogil:
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t j, i, jj, ln
    cdef double nrm, alpha, vn2, beta, acc
    for j in range(n):
        ln = m - j
        nrm = 0.0
        for i in range(ln):
            nrm += a[j + i, j] * a[j + i, j]
        nrm = sqrt(nrm)
        if nrm > 0.0:
            alpha = -nrm if a[j, j] >= 0.0 else nrm
            for i in range(ln):
                v[i] = a[j + i, j]
            v[0] -= alpha
            vn2 = 0.0
            for i in range(ln):
                vn2 += v[i] * v[i]
            if vn2 > 0.0 and j < n - 1:
                beta = 2.0 / vn2
                for jj in range(n - j - 1):
                    w[jj] = 0.0
                for i in range(ln):
                    for jj in range(n - j - 1):
                        w[jj] += v[i] * a[j + i, j + 1 + jj]
                for i in range(ln):
                    acc = beta * v[i]
                    for jj in range(n - j - 1):
                        a[j + i, j + 1 + jj] -= acc * w[jj]
            d[j] = fabs(alpha)
        else:
            d[j] = 0.0
        if j < n - 1:
            ln = n - j - 1
            nrm = 0.0
            for jj in range(ln):
                nrm += a[j, j + 1 + jj] * a[j, j + 1 + jj]
            nrm = sqrt(nrm)
            if nrm > 0.0:
                alpha = -nrm if a[j, j + 1] >= 0.0 else nrm
                for jj in range(ln):
                    v[jj] = a[j, j + 1 + jj]
                v[0] -= alpha
                vn2 = 0.0
                for jj in range(ln):
                    vn2 += v[jj] * v[jj]
                if vn2 > 0.0:
                    beta = 2.0 / vn2
                    for i in range(m - j - 1):
                        acc = 0.0
                        for jj in range(ln):
                            acc += a[j + 1 + i, j + 1 + jj] * v[jj]
                        acc *= beta
                        for jj in range(ln):
                            a[j + 1 + i, j + 1 + jj] -= acc * v[jj]
                e[j + 1] = fabs(alpha)
            else:
                e[j + 1] = 0.0


def bidiagonalize_real(double[:, ::1] a):
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    d = np.zeros(n, dtype=np.float64)
    e = np.zeros(n, dtype=np.float64)
    if n == 0:
        return d, e
    v = np.empty(m, dtype=np.float64)
    w = np.empty(max(n, 1), dtype=np.float64)
    cdef double[::1] dv = d
    cdef double[::1] ev = e
    cdef double[::1] vv = v
    cdef double[::1] wv = w
    with nogil:
        _bidiag_real(a, dv, ev, vv, wv)
    return d, e


cdef void _bidiag_complex(double complex[:, ::1] a, double[::1] d, double[::1] e,
                          double complex[::1] v, double complex[::1] w) nogil:
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t j, i, jj, ln
    cdef double nrm, vn2, beta
    cdef double complex alpha, phase, acc
    for j in range(n):
        ln = m - j
        nrm = 0.0
        for i in range(ln):
            nrm += a[j + i, j].real * a[j + i, j].real + a[j + i, j].imag * a[j + i, j].imag
        nrm = sqrt(nrm)
        if nrm > 0.0:
            if a[j, j] != 0.0:
                phase = a[j, j] / cmod(a[j, j])
            else:
                phase = 1.0
            alpha = -phase * nrm
            for i in range(ln):
                v[i] = a[j + i, j]
            v[0] -= alpha
            vn2 = 0.0
            for i in range(ln):
                vn2 += v[i].real * v[i].real + v[i].imag * v[i].imag
            if vn2 > 0.0 and j < n - 1:
                beta = 2.0 / vn2
                for jj in range(n - j - 1):
                    w[jj] = 0.0
                for i in range(ln):
                    acc = v[i].conjugate()
                    for jj in range(n - j - 1):
                        w[jj] += acc * a[j + i, j + 1 + jj]
                for i in range(ln):
                    acc = beta * v[i]
                    for jj in range(n - j - 1):
                        a[j + i, j + 1 + jj] -= acc * w[jj]
            d[j] = nrm
        else:
            d[j] = 0.0
        if j < n - 1:
            ln = n - j - 1
            nrm = 0.0
            for jj in range(ln):
                nrm += a[j, j + 1 + jj].real * a[j, j + 1 + jj].real \
                     + a[j, j + 1 + jj].imag * a[j, j + 1 + jj].imag
            nrm = sqrt(nrm)
            if nrm > 0.0:
                # reflect the conjugated row to a multiple of e1
                acc = a[j, j + 1].conjugate()
                if acc != 0.0:
                    phase = acc / cmod(acc)
                else:
                    phase = 1.0
                alpha = -phase * nrm
                for jj in range(ln):
                    v[jj] = a[j, j + 1 + jj].conjugate()
                v[0] -= alpha
                vn2 = 0.0
                for jj in range(ln):
                    vn2 += v[jj].real * v[jj].real + v[jj].imag * v[jj].imag
                if vn2 > 0.0:
                    beta = 2.0 / vn2
                    for i in range(m - j - 1):
                        acc = 0.0
                        for jj in range(ln):
                            acc += a[j + 1 + i, j + 1 + jj] * v[jj]
                        acc *= beta
                        for jj in range(ln):
                            a[j + 1 + i, j + 1 + jj] -= acc * v[jj].conjugate()
                e[j + 1] = nrm
            else:
                e[j + 1] = 0.0


def bidiagonalize_complex(double complex[:, ::1] a):
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    d = np.zeros(n, dtype=np.float64)
    e = np.zeros(n, dtype=np.float64)
    if n == 0:
        return d, e
    v = np.empty(m, dtype=np.complex128)
    w = np.empty(max(n, 1), dtype=np.complex128)
    cdef double[::1] dv = d
    cdef double[::1] ev = e
    cdef double complex[::1] vv = v
    cdef double complex[::1] wv = w
    with nogil:
        _bidiag_complex(a, dv, ev, vv, wv)
    return d, e


# ---------------------------------------------------------------------------
# Bidiagonal implicit-shift QR for singular values
# ---------------------------------------------------------------------------


cdef void _zero_shift_sweep(double[::1] d, double[::1] e, Py_ssize_t lo, Py_ssize_t k) nogil:
    cdef double cs = 1.0
    cdef double oldcs = 1.0
    cdef double oldsn = 0.0
    cdef double f1, g1, r, s, f2, g2, r2, hlast
    cdef Py_ssize_t i
    for i in range(lo, k):
        f1 = d[i] * cs
        g1 = e[i + 1]
        r = hypot(f1, g1)
        if r == 0.0:
            cs = 1.0
            s = 0.0
        else:
            cs = f1 / r
            s = g1 / r
        if i > lo:
            e[i] = oldsn * r
        f2 = oldcs * r
        g2 = d[i + 1] * s
        r2 = hypot(f2, g2)
        if r2 == 0.0:
            oldcs = 1.0
            oldsn = 0.0
        else:
            oldcs = f2 / r2
            oldsn = g2 / r2
        d[i] = r2
    hlast = d[k] * cs
    d[k] = hlast * oldcs
    e[k] = hlast * oldsn


cdef int _bidiag_qr(double[::1] d, double[::1] e, int max_stall) nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t k, l, lo, i
    cdef int stall, cancel
    cdef double bnorm = 0.0
    cdef double c, s, f, g, hh, x, y, z, zz, g2
    if n == 0:
        return 0
    e[0] = 0.0
    for i in range(n):
        if fabs(d[i]) > bnorm:
            bnorm = fabs(d[i])
    for i in range(n):
        if fabs(e[i]) > bnorm:
            bnorm = fabs(e[i])
    if bnorm == 0.0:
        return 0
    for k in range(n - 1, -1, -1):
        stall = 0
        while True:
            cancel = 0
            lo = 0
            l = k
            while l >= 0:
                if l == 0:
                    lo = 0
                    break
                if fabs(e[l]) <= EPS * (fabs(d[l - 1]) + fabs(d[l])):
                    e[l] = 0.0
                    lo = l
                    break
                if fabs(d[l - 1]) <= EPS * bnorm:
                    cancel = 1
                    lo = l
                    break
                l -= 1
            if cancel:
                c = 0.0
                s = 1.0
                for i in range(lo, k + 1):
                    f = s * e[i]
                    e[i] = c * e[i]
                    if fabs(f) <= EPS * bnorm:
                        break
                    g = d[i]
                    hh = hypot(f, g)
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
                return -1
            x = d[lo]
            y = d[k - 1]
            g = e[k - 1] if k - 1 >= 1 else 0.0
            hh = e[k]
            z = d[k]
            if fabs(hh) < TINY or fabs(y) < TINY:
                _zero_shift_sweep(d, e, lo, k)
                continue
            f = ((y - z) * (y + z) + (g - hh) * (g + hh)) / (2.0 * hh * y)
            g2 = hypot(f, 1.0)
            f = ((x - z) * (x + z) + hh * (y / (f + copysign(g2, f)) - hh)) / x
            if not isfinite(f):
                _zero_shift_sweep(d, e, lo, k)
                continue
            c = 1.0
            s = 1.0
            for i in range(lo + 1, k + 1):
                g = e[i]
                y = d[i]
                hh = s * g
                g = c * g
                zz = hypot(f, hh)
                e[i - 1] = zz
                if zz != 0.0:
                    c = f / zz
                    s = hh / zz
                else:
                    c = 1.0
                    s = 0.0
                f = x * c + g * s
                g = g * c - x * s
                hh = y * s
                y = y * c
                zz = hypot(f, hh)
                d[i - 1] = zz
                if zz != 0.0:
                    c = f / zz
                    s = hh / zz
                else:
                    c = 1.0
                    s = 0.0
                f = c * g + s * y
                x = c * y - s * g
            e[lo] = 0.0
            e[k] = f
            d[k] = x
    return 0


def bidiagonal_singular_values(double[::1] d, double[::1] e, int max_stall=DEF_MAX_STALL):
    cdef int status
    with nogil:
        status = _bidiag_qr(d, e, max_stall)
    if status != 0:
        raise IterationLimitError(
            f"bidiagonal QR failed to deflate within {max_stall} sweeps"
        )
