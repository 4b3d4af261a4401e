# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels; same algorithms as ``_pykernels``."""

from libc.math cimport log, log1p, atan2, hypot, M_PI

from optlimit._pykernels import COEFFS as _PY_COEFFS

cdef enum:
    NTERMS = 16

cdef double PI2_6 = M_PI * M_PI / 6.0
cdef double _coeffs[NTERMS]

for _k in range(NTERMS):
    _coeffs[_k] = _PY_COEFFS[_k]


cdef inline double complex _mk(double re, double im) noexcept nogil:
    cdef double complex z = re
    z = z + im * 1j
    return z


cdef int _clog(double complex z, double complex *out) noexcept nogil:
    cdef double x = z.real
    cdef double y = z.imag
    if y == 0.0:
        if x > 0.0:
            out[0] = _mk(log(x), 0.0)
            return 0
        if x < 0.0:
            out[0] = _mk(log(-x), M_PI)
            return 0
        return -1
    out[0] = _mk(log(hypot(x, y)), atan2(y, x))
    return 0


cdef inline double complex _log1p(double complex x) noexcept nogil:
    cdef double re = 0.5 * log1p(x.real * (2.0 + x.real) + x.imag * x.imag)
    return _mk(re, atan2(x.imag, 1.0 + x.real))


cdef inline double complex _series(double complex u) noexcept nogil:
    cdef double complex t = u * u
    cdef double complex acc = _coeffs[NTERMS - 1]
    cdef int k
    for k in range(NTERMS - 2, -1, -1):
        acc = acc * t + _coeffs[k]
    return u * acc - 0.25 * t


cdef double complex _li2_unit(double complex z) noexcept nogil:
    cdef double complex one_minus, lz, lom
    if z.real > 0.5:
        one_minus = 1.0 - z
        if one_minus.real == 0.0 and one_minus.imag == 0.0:
            return PI2_6
        lz = _log1p(z - 1.0)
        _clog(one_minus, &lom)
        return PI2_6 - lz * lom - _series(-lz)
    return _series(-_log1p(-z))


cdef double complex _li2(double complex z) noexcept nogil:
    cdef double complex lm
    if z.imag == 0.0:
        z = _mk(z.real, 0.0)
        if z.real == 0.0:
            return 0.0
        if z.real == 1.0:
            return PI2_6
    if z.real * z.real + z.imag * z.imag <= 1.0:
        return _li2_unit(z)
    _clog(-z, &lm)
    return -_li2_unit(1.0 / z) - PI2_6 - 0.5 * lm * lm


def clog(z):
    cdef double complex out
    if _clog(complex(z), &out) != 0:
        raise ZeroDivisionError("log of zero")
    return out


def li2(z):
    return _li2(complex(z))


cdef double complex _crossing_value(double complex a, double complex b,
                                    double complex c, double complex d) noexcept nogil:
    cdef double complex lba, lda
    _clog(b / a, &lba)
    _clog(d / a, &lda)
    return (-_li2(c / b) - _li2(c / d) + _li2(a * c / (b * d)) + _li2(b / a) + _li2(d / a)
            - PI2_6 + lba * lda)


cdef inline bint _zero(double complex z) noexcept nogil:
    return z.real == 0.0 and z.imag == 0.0


def crossing_value(a_, b_, c_, d_):
    cdef double complex a = a_, b = b_, c = c_, d = d_
    if _zero(a) or _zero(b) or _zero(d):
        raise ZeroDivisionError("zero region value")
    return _crossing_value(a, b, c, d)


def crossing_logder(a_, b_, c_, d_):
    cdef double complex a = a_, b = b_, c = c_, d = d_
    cdef double complex l1cb, l1cd, l1x, l1ba, l1da, lba, lda
    cdef int err = 0
    if _zero(a) or _zero(b) or _zero(d):
        raise ZeroDivisionError("zero region value")
    err |= _clog(1.0 - c / b, &l1cb)
    err |= _clog(1.0 - c / d, &l1cd)
    err |= _clog(1.0 - a * c / (b * d), &l1x)
    err |= _clog(1.0 - b / a, &l1ba)
    err |= _clog(1.0 - d / a, &l1da)
    err |= _clog(b / a, &lba)
    err |= _clog(d / a, &lda)
    if err:
        raise ZeroDivisionError("log of zero")
    return (-l1x + l1ba + l1da - lda - lba,
            -l1cb + l1x - l1ba + lda,
            l1cb + l1cd - l1x,
            -l1cd + l1x - l1da + lba)


def corner_factor(left_, here_, right_, opposite_):
    cdef double complex left = left_, here = here_, right = right_, opposite = opposite_
    cdef double complex den = left * right - opposite * here
    if den.real == 0.0 and den.imag == 0.0:
        raise ZeroDivisionError("degenerate corner weight")
    return (left - here) * (right - here) / den


def potential_sum(signs, slots, values):
    cdef double complex total = 0.0
    cdef double complex v
    cdef int s
    cdef double complex a, b, c, d
    for s, (ia, ib, ic, id_) in zip(signs, slots):
        a = values[ia]
        b = values[ib]
        c = values[ic]
        d = values[id_]
        if _zero(a) or _zero(b) or _zero(d):
            raise ZeroDivisionError("zero region value")
        v = _crossing_value(a, b, c, d)
        if s > 0:
            total = total + v
        else:
            total = total - v
    return total
