import cmath
import random

import pytest

from optlimit.quandle import (
    INF,
    ParabolicElement,
    cross_ratio,
    det2,
    equal,
    equal_up_to_sign,
    hopf,
    mobius_apply,
    sl2_random,
    star,
    star_inv,
)

try:
    from hypothesis import given, settings
    from hypothesis import strategies as st
except ImportError:  # pragma: no cover
    pytest.skip("hypothesis not installed", allow_module_level=True)

small = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
elements = st.tuples(small, small).filter(lambda ab: abs(ab[0]) + abs(ab[1]) > 1e-3).map(
    lambda ab: ParabolicElement(*ab))


def close(x: ParabolicElement, y: ParabolicElement, tol=1e-9) -> bool:
    scale = max(1.0, abs(x.alpha), abs(x.beta))
    return abs(x.alpha - y.alpha) <= tol * scale and abs(x.beta - y.beta) <= tol * scale


def test_star_small_examples():
    assert star(ParabolicElement(1, 1), ParabolicElement(1, 0)) == ParabolicElement(0, 1)
    assert star_inv(ParabolicElement(0, 1), ParabolicElement(1, 0)) == ParabolicElement(1, 1)


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        ParabolicElement(0, 0)


def test_hopf_examples():
    assert hopf(ParabolicElement(3, 2)) == 1.5
    assert hopf(ParabolicElement(1, 0)) is INF
    assert hopf(ParabolicElement(0, 4)) == 0


@given(elements)
def test_idempotent(x):
    assert close(star(x, x), x)


@given(elements, elements)
def test_star_inverse(x, y):
    assert close(star_inv(star(x, y), y), x, 1e-7)
    assert close(star(star_inv(x, y), y), x, 1e-7)


@settings(max_examples=50)
@given(elements, elements, elements)
def test_self_distributive(x, y, z):
    lhs = star(star(x, y), z)
    rhs = star(star(x, z), star(y, z))
    # x*(-y) = x*y, so the right side is defined up to the sign of y*z only
    assert close(lhs, rhs, 1e-6)


@given(elements, elements, elements)
def test_det_invariant(x, y, a):
    scale = max(1.0, abs(det2(x, y)), abs(x.alpha * y.beta), abs(x.beta * y.alpha))
    assert abs(det2(star(x, a), star(y, a)) - det2(x, y)) <= 1e-6 * scale * max(1, abs(a.alpha), abs(a.beta)) ** 4


@given(elements, elements)
def test_hopf_is_fixed_point_of_mobius(x, y):
    # the Möbius map of y sends h(x) to h(x*y)
    hx, hxy = hopf(x), hopf(star(x, y))
    got = mobius_apply(y, hx)
    if got is INF or hxy is INF:
        return
    assert abs(got - hxy) <= 1e-6 * max(1.0, abs(hxy))


def test_det_antisymmetric_and_sign():
    x, y = ParabolicElement(1 + 2j, -1), ParabolicElement(0.5, 3j)
    assert det2(x, y) == -det2(y, x)
    assert det2(-x, y) == -det2(x, y)
    assert det2(x, x) == 0


def test_equal_helpers():
    x = ParabolicElement(1, 2)
    assert equal(x, ParabolicElement(1 + 1e-12, 2), 1e-9)
    assert not equal(x, -x, 1e-9)
    assert equal_up_to_sign(x, -x, 1e-9)


def test_cross_ratio_invariant_under_sl2():
    rng = random.Random(3)
    pts = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(4)]
    g = sl2_random(rng)
    (a, b), (c, d) = g
    assert abs(a * d - b * c - 1) < 1e-12
    moved = [(a * z + b) / (c * z + d) for z in pts]
    assert cmath.isclose(cross_ratio(*pts), cross_ratio(*moved), rel_tol=1e-9)


def test_cross_ratio_rejects_infinity():
    with pytest.raises(ValueError):
        cross_ratio(INF, 0, 1, 2)


def test_right_multiply_preserves_relation():
    rng = random.Random(8)
    g = sl2_random(rng)
    x, y = ParabolicElement(0.3, 1j), ParabolicElement(-2, 0.7)
    assert close(star(x, y).right_multiply(g), star(x.right_multiply(g), y.right_multiply(g)))
    assert abs(det2(x.right_multiply(g), y.right_multiply(g)) - det2(x, y)) < 1e-12


def test_axioms_on_many_random_triples():
    rng = random.Random(170)

    def el():
        return ParabolicElement(complex(rng.gauss(0, 1), rng.gauss(0, 1)), complex(rng.gauss(0, 1), rng.gauss(0, 1)))

    for _ in range(10_000):
        x, y, z = el(), el(), el()
        assert equal_up_to_sign(star(x, x), x, 1e-9)
        assert equal_up_to_sign(star_inv(star(x, y), y), x, 1e-9)
        assert equal_up_to_sign(star(star(x, y), z), star(star(x, z), star(y, z)), 1e-9)
