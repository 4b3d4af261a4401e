"""Parabolic quandle arithmetic.

An element ``(alpha, beta)`` of C^2 minus the origin stands for the parabolic
matrix ``[[1 + alpha*beta, beta**2], [-alpha**2, 1 - alpha*beta]]``.  The
operation ``x * y`` is the row vector ``x`` times the matrix of ``y``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class ParabolicElement:
    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("(0, 0) is not a quandle element")

    def __neg__(self) -> "ParabolicElement":
        return ParabolicElement(-self.alpha, -self.beta)

    def scale(self, k: complex) -> "ParabolicElement":
        return ParabolicElement(k * self.alpha, k * self.beta)

    def matrix(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        a, b = self.alpha, self.beta
        return ((1 + a * b, b * b), (-a * a, 1 - a * b))

    def right_multiply(self, g) -> "ParabolicElement":
        """Row vector times a 2x2 matrix ``g``; with det g = 1 this is conjugation."""
        (g00, g01), (g10, g11) = g
        a, b = self.alpha, self.beta
        return ParabolicElement(a * g00 + b * g10, a * g01 + b * g11)

    def as_floats(self) -> list[float]:
        return [self.alpha.real, self.alpha.imag, self.beta.real, self.beta.imag]

    @classmethod
    def from_floats(cls, xs) -> "ParabolicElement":
        if len(xs) != 4:
            raise ValueError(f"expected 4 floats, got {len(xs)}")
        return cls(complex(float(xs[0]), float(xs[1])), complex(float(xs[2]), float(xs[3])))


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ExtendedPoint = Union[complex, _Infinity]


def is_infinite(z: ExtendedPoint) -> bool:
    return z is INF


def star(x: ParabolicElement, y: ParabolicElement) -> ParabolicElement:
    a, b = x.alpha, x.beta
    g, d = y.alpha, y.beta
    return ParabolicElement(a * (1 + g * d) - b * g * g, a * d * d + b * (1 - g * d))


def star_inv(x: ParabolicElement, y: ParabolicElement) -> ParabolicElement:
    a, b = x.alpha, x.beta
    g, d = y.alpha, y.beta
    return ParabolicElement(a * (1 - g * d) + b * g * g, -a * d * d + b * (1 + g * d))


def hopf(x: ParabolicElement) -> ExtendedPoint:
    if x.beta == 0:
        return INF
    return x.alpha / x.beta


def det2(x: ParabolicElement, y: ParabolicElement) -> complex:
    return x.alpha * y.beta - y.alpha * x.beta


def mobius_apply(y: ParabolicElement, z: ExtendedPoint) -> ExtendedPoint:
    (m00, m01), (m10, m11) = y.matrix()
    # z * M acting on the row vector (z, 1): numerator m00 z + m10, denominator m01 z + m11
    if z is INF:
        if m01 == 0:
            return INF
        return m00 / m01
    num = m00 * z + m10
    den = m01 * z + m11
    if den == 0:
        return INF
    return num / den


def equal(x: ParabolicElement, y: ParabolicElement, tol: float = 0.0) -> bool:
    """Componentwise equality with relative tolerance ``tol``."""
    scale = max(1.0, abs(x.alpha), abs(x.beta), abs(y.alpha), abs(y.beta))
    return abs(x.alpha - y.alpha) <= tol * scale and abs(x.beta - y.beta) <= tol * scale


def equal_up_to_sign(x: ParabolicElement, y: ParabolicElement, tol: float = 0.0) -> bool:
    return equal(x, y, tol) or equal(x, -y, tol)


def points_close(z: ExtendedPoint, w: ExtendedPoint, tol: float) -> bool:
    if z is INF or w is INF:
        return z is w
    return abs(z - w) <= tol * max(1.0, abs(z), abs(w))


def cross_ratio(z0: ExtendedPoint, z1: ExtendedPoint, z2: ExtendedPoint, z3: ExtendedPoint) -> complex:
    """``[z0, z1, z2, z3] = (z0 - z3)(z1 - z2) / ((z0 - z2)(z1 - z3))`` for finite points."""
    if any(z is INF for z in (z0, z1, z2, z3)):
        raise ValueError("cross_ratio needs finite points")
    return (z0 - z3) * (z1 - z2) / ((z0 - z2) * (z1 - z3))


def sl2_random(rng, radius: float = 2.0):
    """A random matrix of determinant one, for conjugating colorings."""
    def sample():
        r = radius * rng.random() ** 0.5
        return cmath.rect(r, 2 * cmath.pi * rng.random())

    while True:
        g00, g01, g10 = sample(), sample(), sample()
        if abs(g00) > 0.1:
            return ((g00, g01), (g10, (1 + g01 * g10) / g00))
