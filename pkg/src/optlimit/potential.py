"""The potential function of a diagram and the hyperbolicity equations.

Each crossing contributes five dilogarithms of its slot values ``(a, b, c, d)``;
the sign of the crossing picks the formula.  The region equation for ``w_k`` is
``exp(w_k dW/dw_k) = 1`` and factors as a product of rational corner weights.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from . import dilog
from .diagram import SLOT_CORNERS, SLOTS, LinkDiagram
from .errors import DegenerateError

kernels = dilog.kernels
TWO_PI_I = 2j * cmath.pi


@dataclass(frozen=True)
class CrossingPotential:
    crossing: int
    sign: int
    slots: tuple[int, int, int, int]

    def slot_index(self, slot: Union[str, int]) -> int:
        return SLOTS.index(slot) if isinstance(slot, str) else slot

    def corner(self, slot: Union[str, int]) -> int:
        return SLOT_CORNERS[self.sign][self.slot_index(slot)]


Values = Mapping[int, complex]


def _values(w) -> Values:
    return w.values if hasattr(w, "values") and not callable(w.values) else w


def build_potential(d: LinkDiagram) -> list[CrossingPotential]:
    return [CrossingPotential(c.id, c.sign, d.slot_regions(c.id)) for c in d.crossings]


def crossing_value(cp: CrossingPotential, w) -> complex:
    w = _values(w)
    try:
        v = kernels.crossing_value(*(w[r] for r in cp.slots))
    except ZeroDivisionError as exc:
        raise DegenerateError(f"crossing {cp.crossing}: {exc}") from None
    return v if cp.sign > 0 else -v


def eval_W(pot: Sequence[CrossingPotential], w) -> complex:
    w = _values(w)
    index = {}
    vals = []
    for cp in pot:
        for r in cp.slots:
            if r not in index:
                index[r] = len(vals)
                vals.append(complex(w[r]))
    try:
        return kernels.potential_sum([cp.sign for cp in pot],
                                     [tuple(index[r] for r in cp.slots) for cp in pot], vals)
    except ZeroDivisionError as exc:
        raise DegenerateError(f"potential: {exc}") from None


def corner_weight(cp: CrossingPotential, slot, w) -> complex:
    """Closed-form factor of ``exp(w_s dW^j/dw_s)`` contributed by one slot.

    With the slot's neighbours ``l, r`` and the opposite slot ``o`` the weight is
    ``(w_l - w)(w_r - w) / (w_l w_r - w_o w)`` or its reciprocal, depending on
    whether the half-edge clockwise from the corner passes over or under.
    """
    w = _values(w)
    i = cp.slot_index(slot)
    left, here, right, opp = (w[cp.slots[(i + j) % 4]] for j in (-1, 0, 1, 2))
    try:
        x = kernels.corner_factor(left, here, right, opp)
        if cp.corner(i) % 2 == 0:
            if x == 0:
                raise ZeroDivisionError("zero corner weight")
            x = 1 / x
    except ZeroDivisionError as exc:
        raise DegenerateError(f"corner weight at crossing {cp.crossing} slot {SLOTS[i]}: {exc}") from None
    return x


def region_corners(pot: Sequence[CrossingPotential], k: int) -> list[tuple[CrossingPotential, int]]:
    return [(cp, i) for cp in pot for i, r in enumerate(cp.slots) if r == k]


def region_equation(pot: Sequence[CrossingPotential], d, k: int, w) -> complex:
    """Product of the corner weights of region ``k``; equals ``exp(w_k dW/dw_k)``."""
    prod = 1 + 0j
    for cp, i in region_corners(pot, k):
        prod *= corner_weight(cp, i, w)
    return prod


def crossing_logder(cp: CrossingPotential, w) -> tuple[complex, complex, complex, complex]:
    w = _values(w)
    try:
        out = kernels.crossing_logder(*(w[r] for r in cp.slots))
    except ZeroDivisionError as exc:
        raise DegenerateError(f"log-derivative at crossing {cp.crossing}: {exc}") from None
    return out if cp.sign > 0 else tuple(-x for x in out)


def eval_log_derivative(pot: Sequence[CrossingPotential], d, k: int, w) -> complex:
    """``w_k dW/dw_k`` summed term by term in crossing order (principal logs)."""
    total = 0j
    for cp in sorted(pot, key=lambda c: c.crossing):
        if k not in cp.slots:
            continue
        ld = crossing_logder(cp, w)
        for i, r in enumerate(cp.slots):
            if r == k:
                total += ld[i]
    return total


def all_log_derivatives(pot: Sequence[CrossingPotential], w) -> dict[int, complex]:
    out: dict[int, complex] = {}
    for cp in sorted(pot, key=lambda c: c.crossing):
        ld = crossing_logder(cp, w)
        for i, r in enumerate(cp.slots):
            out[r] = out.get(r, 0j) + ld[i]
    return dict(sorted(out.items()))


def residuals(pot: Sequence[CrossingPotential], w) -> dict[int, float]:
    regions = sorted({r for cp in pot for r in cp.slots})
    return {k: abs(region_equation(pot, None, k, w) - 1) for k in regions}


@dataclass(frozen=True)
class PotentialEvaluation:
    W_value: complex
    log_derivatives: dict[int, complex]
    flattening: dict[int, int]
    W0_value: complex
    residuals: dict[int, float]
    flattening_deviation: float

    @property
    def residual_max(self) -> float:
        return max(self.residuals.values(), default=0.0)


def evaluate(pot: Sequence[CrossingPotential], w) -> PotentialEvaluation:
    w = _values(w)
    W = eval_W(pot, w)
    lds = all_log_derivatives(pot, w)
    ms = {}
    dev = 0.0
    W0 = W
    for k, ld in lds.items():
        q = ld / TWO_PI_I
        m = round(q.real)
        ms[k] = m
        dev = max(dev, abs(q - m))
        if m:
            W0 -= TWO_PI_I * m * dilog.log_principal(w[k])
    return PotentialEvaluation(W, lds, ms, W0, residuals(pot, w), dev)


__all__ = [
    "CrossingPotential",
    "PotentialEvaluation",
    "all_log_derivatives",
    "build_potential",
    "corner_weight",
    "crossing_logder",
    "crossing_value",
    "eval_W",
    "eval_log_derivative",
    "evaluate",
    "region_corners",
    "region_equation",
    "residuals",
]
