# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the lambda-shifted binomial sums.

Same algorithms and signatures as ``_kernels_py``; compensated sums use
Neumaier's variant of Kahan summation instead of ``math.fsum``.
"""

from libc.math cimport exp, fabs, pow

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double cabs(double complex)

ctypedef fused num:
    double
    double complex

cdef enum:
    NMAX = 64

cdef double INV_FACTORIAL[NMAX]
cdef double _f = 1.0
cdef int _k
INV_FACTORIAL[0] = 1.0
for _k in range(1, NMAX):
    _f = _f / _k
    INV_FACTORIAL[_k] = _f


cdef struct Acc:
    double s_re
    double c_re
    double s_im
    double c_im


cdef inline void _neumaier(double* s, double* c, double v) noexcept nogil:
    cdef double t = s[0] + v
    if fabs(s[0]) >= fabs(v):
        c[0] += (s[0] - t) + v
    else:
        c[0] += (v - t) + s[0]
    s[0] = t


cdef inline void acc_reset(Acc* acc) noexcept nogil:
    acc.s_re = 0.0
    acc.c_re = 0.0
    acc.s_im = 0.0
    acc.c_im = 0.0


cdef inline void acc_add(Acc* acc, num v) noexcept nogil:
    if num is double:
        _neumaier(&acc.s_re, &acc.c_re, v)
    else:
        _neumaier(&acc.s_re, &acc.c_re, v.real)
        _neumaier(&acc.s_im, &acc.c_im, v.imag)


cdef inline num acc_value(Acc* acc, num kind) noexcept nogil:
    if num is double:
        return acc.s_re + acc.c_re
    else:
        return (acc.s_re + acc.c_re) + 1j * (acc.s_im + acc.c_im)


cdef inline num _expneg(num z) noexcept nogil:
    if num is double:
        return exp(-z)
    else:
        return cexp(-z)


cdef inline double _abs(num z) noexcept nogil:
    if num is double:
        return fabs(z)
    else:
        return cabs(z)


cdef inline num _powreal(num z, double p) noexcept nogil:
    if num is double:
        return pow(z, p)
    else:
        return cexp(p * clog(z))


cdef void _tail(num z, int n, num* out) noexcept nogil:
    cdef num w = _expneg(z)
    cdef int u
    out[0] = w
    for u in range(1, n + 1):
        w = w * z
        out[u] = u * out[u - 1] + w


cdef void _lower(num z, int n, num* out) noexcept nogil:
    cdef num ez = _expneg(z)
    cdef num term = 1.0
    cdef Acc acc
    cdef int k = n + 2
    cdef int u
    cdef num power, top
    acc_reset(&acc)
    acc_add(&acc, term)
    while _abs(term) > 1e-17 and k < n + 2000:
        term = term * z / k
        acc_add(&acc, term)
        k += 1
    power = ez
    for u in range(n + 1):
        power = power * z
    top = power / (n + 1) * acc_value(&acc, term)
    out[n] = top
    power = ez
    for u in range(n):
        power = power * z
    for u in range(n, 0, -1):
        out[u - 1] = (out[u] + power) / u
        if z != 0:
            power = power / z
        else:
            power = 0.0


cdef void _segment_moments(num lo, num hi, int n, num* out) noexcept nogil:
    cdef num t_lo[NMAX]
    cdef num t_hi[NMAX]
    cdef num l_lo[NMAX]
    cdef num l_hi[NMAX]
    cdef int u
    cdef double ahi = _abs(hi)
    _tail(lo, n, t_lo)
    _tail(hi, n, t_hi)
    if ahi >= n + 1:
        for u in range(n + 1):
            out[u] = t_lo[u] - t_hi[u]
        return
    if lo == 0:
        for u in range(n + 1):
            l_lo[u] = 0.0
    else:
        _lower(lo, n, l_lo)
    _lower(hi, n, l_hi)
    for u in range(n + 1):
        if u + 1 > ahi:
            out[u] = l_hi[u] - l_lo[u]
        else:
            out[u] = t_lo[u] - t_hi[u]


cdef int _shells(double a, num lam, num* moments, int rmax, num* total, num* last, num* before) noexcept nogil:
    cdef double ff[NMAX]
    cdef num base[NMAX]
    cdef num lam_pow, inv, c, previous = 0.0
    cdef Acc acc_total, acc_shell
    cdef int r, u, count = 0, complete = 0
    ff[0] = 1.0
    for r in range(1, rmax + 1):
        ff[r] = ff[r - 1] * (a - r)
    lam_pow = _powreal(lam, a - 1.0)
    inv = 1.0 / lam
    for u in range(rmax + 1):
        base[u] = lam_pow * moments[u] * INV_FACTORIAL[u]
        lam_pow = lam_pow * inv
    acc_reset(&acc_total)
    for r in range(rmax + 1):
        if ff[r] == 0.0:
            break
        if r > 0:
            previous = acc_value(&acc_shell, lam)
        acc_reset(&acc_shell)
        for u in range(r + 1):
            c = ff[r] * INV_FACTORIAL[r - u] * base[u]
            if (r - u) % 2:
                c = -c
            acc_add(&acc_total, c)
            acc_add(&acc_shell, c)
            count += 1
        if r == rmax:
            complete = 1
    total[0] = acc_value(&acc_total, lam)
    if complete:
        last[0] = acc_value(&acc_shell, lam)
        before[0] = previous if rmax > 0 else 0.0
    else:
        last[0] = 0.0
        before[0] = 0.0
    return count


def _check(int n):
    if n < 0 or n >= NMAX:
        raise ValueError(f"order {n} outside kernel range [0, {NMAX - 1}]")


cdef list _as_list(num* values, int n):
    return [values[i] for i in range(n)]


def falling(double a, int n):
    _check(n)
    cdef double product = 1.0
    cdef int r
    out = [product]
    for r in range(1, n + 1):
        product *= a - r
        out.append(product)
    return out


def tail_moments(z, int n):
    _check(n)
    cdef double tr[NMAX]
    cdef double complex tc[NMAX]
    if isinstance(z, complex):
        _tail(<double complex> z, n, tc)
        return _as_list(tc, n + 1)
    _tail(<double> z, n, tr)
    return _as_list(tr, n + 1)


def lower_moments(z, int n):
    _check(n)
    cdef double tr[NMAX]
    cdef double complex tc[NMAX]
    if isinstance(z, complex):
        _lower(<double complex> z, n, tc)
        return _as_list(tc, n + 1)
    _lower(<double> z, n, tr)
    return _as_list(tr, n + 1)


def segment_moments(lo, hi, int n):
    _check(n)
    cdef double tr[NMAX]
    cdef double complex tc[NMAX]
    if isinstance(lo, complex) or isinstance(hi, complex):
        _segment_moments(<double complex> lo, <double complex> hi, n, tc)
        return _as_list(tc, n + 1)
    _segment_moments(<double> lo, <double> hi, n, tr)
    return _as_list(tr, n + 1)


def asymptotic_sum(double a, x, lam, int rmax):
    _check(rmax)
    cdef double mr[NMAX]
    cdef double complex mc[NMAX]
    cdef double tr, lr, br
    cdef double complex tc, lc, bc
    cdef int count
    if isinstance(x, complex) or isinstance(lam, complex):
        _tail(<double complex> x, rmax, mc)
        count = _shells(a, <double complex> lam, mc, rmax, &tc, &lc, &bc)
        return tc, lc, count
    _tail(<double> x, rmax, mr)
    count = _shells(a, <double> lam, mr, rmax, &tr, &lr, &br)
    return tr, lr, count


def segments(double a, x, double xi, int rmax, int qmax):
    _check(rmax)
    cdef double mr[NMAX]
    cdef double complex mc[NMAX]
    cdef double xr, tr, lr, br, lam_r
    cdef double complex xc, tc, lc, bc, lam_c
    cdef int q, n_terms = 0
    values = []
    shells = []
    prev_shells = []
    if isinstance(x, complex):
        xc = x
        for q in range(qmax + 1):
            lam_c = 1.0 + xc
            _segment_moments(xc, xi * lam_c, rmax, mc)
            n_terms += _shells(a, lam_c, mc, rmax, &tc, &lc, &bc)
            values.append(tc)
            shells.append(lc)
            prev_shells.append(bc)
            xc = xi * lam_c
        return values, shells, prev_shells, xc, n_terms
    xr = x
    for q in range(qmax + 1):
        lam_r = 1.0 + xr
        _segment_moments(xr, xi * lam_r, rmax, mr)
        n_terms += _shells(a, lam_r, mr, rmax, &tr, &lr, &br)
        values.append(tr)
        shells.append(lr)
        prev_shells.append(br)
        xr = xi * lam_r
    return values, shells, prev_shells, xr, n_terms
