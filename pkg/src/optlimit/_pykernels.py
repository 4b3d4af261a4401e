"""Pure-Python numerical kernels (fallback for the compiled ``_ckernels``)."""

from __future__ import annotations

import math
from fractions import Fraction

PI = math.pi
PI2_6 = PI * PI / 6.0
_NTERMS = 16


def _bernoulli_even(count: int) -> list[Fraction]:
    """B_0, B_2, B_4, ... via the standard recursion."""
    nmax = 2 * count
    b = [Fraction(0)] * (nmax + 1)
    b[0] = Fraction(1)
    for m in range(1, nmax + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * b[k]
            binom = binom * (m + 1 - k) // (k + 1)
        b[m] = -acc / (m + 1)
    return [b[2 * k] for k in range(count)]


# c_k = B_{2k} / (2k+1)!  so that Li2 = -u^2/4 + u * sum_k c_k u^(2k),  u = -log(1-z)
COEFFS = tuple(
    float(bk / math.factorial(2 * k + 1)) for k, bk in enumerate(_bernoulli_even(_NTERMS))
)


def clog(z: complex) -> complex:
    """Principal logarithm with imaginary part in (-pi, pi], signed zeros ignored."""
    x, y = z.real, z.imag
    if y == 0.0:
        if x > 0.0:
            return complex(math.log(x), 0.0)
        if x < 0.0:
            return complex(math.log(-x), PI)
        raise ZeroDivisionError("log of zero")
    return complex(math.log(math.hypot(x, y)), math.atan2(y, x))


def _log1p(x: complex) -> complex:
    """log(1 + x) for Re(1 + x) > 0, accurate when |x| is small."""
    re = 0.5 * math.log1p(x.real * (2.0 + x.real) + x.imag * x.imag)
    return complex(re, math.atan2(x.imag, 1.0 + x.real))


def _series(u: complex) -> complex:
    t = u * u
    acc = COEFFS[_NTERMS - 1]
    for k in range(_NTERMS - 2, -1, -1):
        acc = acc * t + COEFFS[k]
    return u * acc - 0.25 * t


def _li2_unit(z: complex) -> complex:
    """Li2 for |z| <= 1."""
    if z.real > 0.5:
        one_minus = 1.0 - z
        if one_minus == 0:
            return complex(PI2_6, 0.0)
        # reflection; the log(1-z) factor needs the same principal branch
        lz = _log1p(z - 1.0)
        return PI2_6 - lz * clog(one_minus) - _series(-lz)
    return _series(-_log1p(-z))


def li2(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
        if z.real == 0.0:
            return 0j
        if z.real == 1.0:
            return complex(PI2_6, 0.0)
    if z.real * z.real + z.imag * z.imag <= 1.0:
        return _li2_unit(z)
    lm = clog(-z)
    return -_li2_unit(1.0 / z) - PI2_6 - 0.5 * lm * lm


def crossing_value(a: complex, b: complex, c: complex, d: complex) -> complex:
    """Potential of a positive crossing with slot values a, b, c, d."""
    lba = clog(b / a)
    lda = clog(d / a)
    return (-li2(c / b) - li2(c / d) + li2(a * c / (b * d)) + li2(b / a) + li2(d / a)
            - PI2_6 + lba * lda)


def crossing_logder(a: complex, b: complex, c: complex, d: complex):
    """(w_s dW/dw_s) for s = a, b, c, d at a positive crossing."""
    l1cb = clog(1.0 - c / b)
    l1cd = clog(1.0 - c / d)
    l1x = clog(1.0 - a * c / (b * d))
    l1ba = clog(1.0 - b / a)
    l1da = clog(1.0 - d / a)
    lba = clog(b / a)
    lda = clog(d / a)
    da = -l1x + l1ba + l1da - lda - lba
    db = -l1cb + l1x - l1ba + lda
    dc = l1cb + l1cd - l1x
    dd = -l1cd + l1x - l1da + lba
    return (da, db, dc, dd)


def corner_factor(left: complex, here: complex, right: complex, opposite: complex) -> complex:
    """(w_l - w)(w_r - w) / (w_l w_r - w_o w); the orientation-free corner weight."""
    den = left * right - opposite * here
    if den == 0:
        raise ZeroDivisionError("degenerate corner weight")
    return (left - here) * (right - here) / den


def potential_sum(signs, slots, values) -> complex:
    """Sum of signed crossing potentials; ``slots`` index into ``values``."""
    total = 0j
    for s, (ia, ib, ic, id_) in zip(signs, slots):
        v = crossing_value(values[ia], values[ib], values[ic], values[id_])
        total += v if s > 0 else -v
    return total
