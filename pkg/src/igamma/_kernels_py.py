"""Pure-Python kernels for the lambda-shifted binomial sums.

Reference implementation; ``_kernels_cy`` mirrors it term for term.
Every function accepts a real or complex argument and never branches on
the backend, so the two can be compared directly.
"""

import cmath
import math

_INV_FACTORIAL = [1.0 / math.factorial(k) for k in range(64)]


def _exp(z):
    return cmath.exp(z) if isinstance(z, complex) else math.exp(z)


def _fsum(values):
    if any(isinstance(v, complex) for v in values):
        return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    return math.fsum(values)


def falling(a, n):
    """Products (a-1)(a-2)...(a-r) for r = 0..n."""
    out = [1.0]
    for r in range(1, n + 1):
        out.append(out[-1] * (a - r))
    return out


def tail_moments(z, n):
    """``T_u = int_z^inf t**u e**-t dt`` for u = 0..n by upward recurrence.

    ``T_u = u T_{u-1} + z**u e**-z`` is the Horner form of the finite
    sum ``e**-z * sum_p u!/p! z**p``.
    """
    w = _exp(-z)
    out = [w]
    for u in range(1, n + 1):
        w = w * z
        out.append(u * out[-1] + w)
    return out


def lower_moments(z, n):
    """``L_u = u! - T_u = int_0^z t**u e**-t dt`` for u = 0..n.

    The top order comes from the convergent series
    ``e**-z z**(n+1)/(n+1) * sum_k z**k / ((n+2)...(n+1+k))`` and the rest
    from the downward recurrence ``L_{u-1} = (L_u + z**u e**-z)/u``, which
    is stable. Intended for |z| < n + 1.
    """
    ez = _exp(-z)
    term = 1.0
    acc = [1.0]
    k = n + 2
    while abs(term) > 1e-17 * abs(acc[0]) and k < n + 2000:
        term = term * z / k
        acc.append(term)
        k += 1
    top = ez * z ** (n + 1) / (n + 1) * _fsum(acc)
    out = [top]
    power = ez * z**n
    for u in range(n, 0, -1):
        out.append((out[-1] + power) / u)
        power = power / z if z != 0 else 0.0
    out.reverse()
    return out


def segment_moments(lo, hi, n):
    """``int_lo^hi t**u e**-t dt`` for u = 0..n without catastrophic cancellation.

    Orders with ``u + 1 > |hi|`` are formed as a difference of lower
    integrals; the rest as a difference of upper (finite-sum) tails.
    """
    t_lo = tail_moments(lo, n)
    t_hi = tail_moments(hi, n)
    if abs(hi) >= n + 1:
        return [p - q for p, q in zip(t_lo, t_hi)]
    l_lo = lower_moments(lo, n) if lo != 0 else [0.0] * (n + 1)
    l_hi = lower_moments(hi, n)
    out = []
    for u in range(n + 1):
        if u + 1 > abs(hi):
            out.append(l_hi[u] - l_lo[u])
        else:
            out.append(t_lo[u] - t_hi[u])
    return out


def _binomial_shells(a, lam, moments, rmax):
    """Sum ``ff(a,r) (-1)**(r-u) lam**(a-1-u) M_u / (u!(r-u)!)`` over r <= rmax, u <= r.

    Returns the compensated total, the r = rmax and r = rmax - 1 shells
    (zero when the series terminated before them) and the term count.
    """
    ff = falling(a, rmax)
    lam_pow = [lam ** (a - 1.0)]
    inv = 1.0 / lam
    for _ in range(rmax):
        lam_pow.append(lam_pow[-1] * inv)
    base = [lam_pow[u] * moments[u] * _INV_FACTORIAL[u] for u in range(rmax + 1)]
    terms = []
    shell = []
    prev = []
    for r in range(rmax + 1):
        if ff[r] == 0.0:
            break
        prev = shell
        shell = []
        for u in range(r + 1):
            c = ff[r] * _INV_FACTORIAL[r - u] * base[u]
            shell.append(c if (r - u) % 2 == 0 else -c)
        terms.extend(shell)
    complete = len(shell) == rmax + 1
    last = _fsum(shell) if complete else 0.0
    before = _fsum(prev) if complete and rmax > 0 else 0.0
    return _fsum(terms), last, before, len(terms)


def asymptotic_sum(a, x, lam, rmax):
    """Lambda-family asymptotic sum; returns (total, last shell, term count)."""
    total, last, _, count = _binomial_shells(a, lam, tail_moments(x, rmax), rmax)
    return total, last, count


def segments(a, x, xi, rmax, qmax):
    """Segment contributions for q = 0..qmax.

    Returns ``(values, shells, prev_shells, x_next, n_terms)`` where
    ``shells[q]`` and ``prev_shells[q]`` are the r = rmax and r = rmax - 1
    shells of segment q and ``x_next`` is the start of the first neglected
    segment.
    """
    values = []
    shells = []
    prev_shells = []
    n_terms = 0
    xq = x
    for _ in range(qmax + 1):
        lam = 1.0 + xq
        moments = segment_moments(xq, xi * lam, rmax)
        total, last, before, count = _binomial_shells(a, lam, moments, rmax)
        values.append(total)
        shells.append(last)
        prev_shells.append(before)
        n_terms += count
        xq = xi * lam
    return values, shells, prev_shells, xq, n_terms
