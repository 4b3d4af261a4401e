"""Complex volume from the corrected potential ``W0`` at a verified solution."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import UnverifiedSolutionError
from .potential import CrossingPotential, PotentialEvaluation, evaluate

PI2 = math.pi ** 2


@dataclass(frozen=True)
class ComplexVolume:
    vol: float
    cs: float
    W0: complex
    residual_max: float
    verified: bool

    def to_text(self) -> str:
        return (f"vol {self.vol:.17g}  cs {self.cs:.17g}  "
                f"W0 {self.W0.real:.17g} {self.W0.imag:.17g}  verified {str(self.verified).lower()}")


def normalize_cs(x: float) -> float:
    """Representative of ``x`` mod pi^2 in (-pi^2/2, pi^2/2]."""
    y = math.fmod(x, PI2)
    if y > PI2 / 2:
        y -= PI2
    elif y <= -PI2 / 2:
        y += PI2
    return y


def from_evaluation(ev: PotentialEvaluation, tolerance: float) -> ComplexVolume:
    ok = ev.residual_max < tolerance and ev.flattening_deviation < max(tolerance, 1e-6)
    W0 = ev.W0_value
    return ComplexVolume(W0.imag, normalize_cs(-W0.real), W0, ev.residual_max, ok)


def eval_W0(pot: Sequence[CrossingPotential], d, w, tolerance: float = 1e-9,
            require_verified: bool = True) -> ComplexVolume:
    cv = from_evaluation(evaluate(pot, w), tolerance)
    if require_verified and not cv.verified:
        raise UnverifiedSolutionError(
            f"solution does not satisfy the hyperbolicity equations (max residual {cv.residual_max:.3g})")
    return cv


def compare_mod_pi2(x: complex, y: complex, tolerance: float = 1e-8) -> tuple[bool, float]:
    """Is ``x - y`` a real integer multiple of pi^2?  Returns (flag, deviation)."""
    diff = complex(x) - complex(y)
    k = round(diff.real / PI2)
    dev = math.hypot(diff.real - k * PI2, diff.imag)
    return dev <= tolerance * max(1.0, abs(x), abs(y)), dev


__all__ = ["ComplexVolume", "compare_mod_pi2", "eval_W0", "from_evaluation", "normalize_cs", "PI2"]
