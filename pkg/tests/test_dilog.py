import cmath
import math
import random

import pytest

from optlimit import _pykernels, dilog

mpmath = pytest.importorskip("mpmath")

try:
    from optlimit import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])
PI2_6 = math.pi ** 2 / 6


def ref(z: complex) -> complex:
    return complex(mpmath.polylog(2, mpmath.mpc(z.real, z.imag)))


def points(n: int, seed: int, radius: float = 4.0):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        z = cmath.rect(radius * rng.random() ** 0.5, 2 * math.pi * rng.random())
        if abs(z.imag) > 1e-6 or z.real < 1:
            out.append(z)
    return out


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_against_mpmath(k):
    worst = 0.0
    for z in points(300, 1) + [0.5, -1, 1j, 0.5 + 0.5j, -0.5 + 0.866j, 3 - 1e-3j, 0.99 + 0.01j]:
        z = complex(z)
        worst = max(worst, abs(k.li2(z) - ref(z)) / max(1.0, abs(ref(z))))
    assert worst < 1e-13


def test_special_values():
    assert abs(dilog.li2(1) - PI2_6) < 1e-13
    assert abs(dilog.li2(-1) + PI2_6 / 2) < 1e-14
    assert dilog.li2(0) == 0
    half = PI2_6 / 2 - math.log(2) ** 2 / 2
    assert abs(dilog.li2(0.5) - half) < 1e-14


def test_on_the_cut_uses_lower_limit_of_imaginary_part():
    # for x > 1 the value carries Im = -pi log x
    x = 3.0
    assert abs(dilog.li2(x).imag + math.pi * math.log(x)) < 1e-12


def test_derivative_matches_log():
    # d/dz Li2(z) = -log(1 - z) / z
    for z in points(40, 7, radius=2.5):
        h = 1e-6
        fd = (dilog.li2(z + h) - dilog.li2(z - h)) / (2 * h)
        assert abs(fd + cmath.log(1 - z) / z) < 1e-6 * max(1.0, abs(fd))


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
def test_backends_agree():
    for z in points(200, 11, radius=6):
        assert abs(_ckernels.li2(z) - _pykernels.li2(z)) < 1e-14 * max(1.0, abs(_pykernels.li2(z)))
        w = (z, 1 + z, 2 - z * 1j, 0.5 + z * z)
        assert abs(_ckernels.crossing_value(*w) - _pykernels.crossing_value(*w)) < 1e-12


@pytest.mark.parametrize("z, expected", [
    (-1, complex(0, math.pi)),
    (1j, complex(0, math.pi / 2)),
    (-1j, complex(0, -math.pi / 2)),
    (math.e, 1),
])
def test_log_principal(z, expected):
    assert abs(dilog.log_principal(z) - expected) < 1e-15


def test_log_of_zero():
    with pytest.raises(ValueError):
        dilog.log_principal(0)


def test_backend_reported():
    assert dilog.BACKEND in ("cython", "python")
