"""Transport of a solution across Reidemeister moves without re-solving.

Each move fixes the values of the regions it creates by a local formula:

* R1: ``w_c = 2 w_b - w_a``
* R2: ``w_d = w_b`` and ``w_e`` from the (linear) equation of region ``b``
* R3: ``w_d w_g - w_c w_e = w_a w_h - w_b w_f``
* twist: ``w_f = 2 w_a - w_b`` then the R3 relation for ``w_g``

Inverse moves only delete regions; the values of the merged regions are
checked for agreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .coloring import SolutionVector, is_essential
from .diagram import LinkDiagram
from .errors import (
    CrossCheckError,
    DegenerateError,
    EssentialnessLostError,
    OptlimitError,
    UnverifiedSolutionError,
)
from .moves import MoveDescriptor, RegionCorrespondence, apply_move
from .potential import build_potential, corner_weight, evaluate, region_corners, region_equation


def transport_r1(w_a: complex, w_b: complex) -> complex:
    return 2 * w_b - w_a


def transport_r3(w_a, w_b, w_c, w_d, w_e, w_f, w_g=None, w_h=None) -> complex:
    """Solve ``w_d w_g - w_c w_e = w_a w_h - w_b w_f`` for whichever of g, h is missing."""
    if (w_g is None) == (w_h is None):
        raise ValueError("give exactly one of w_g, w_h")
    if w_h is None:
        if w_a == 0:
            raise DegenerateError("R3: w_a = 0")
        return (w_d * w_g - w_c * w_e + w_b * w_f) / w_a
    if w_d == 0:
        raise DegenerateError("R3: w_d = 0")
    return (w_a * w_h - w_b * w_f + w_c * w_e) / w_d


def transport_twist(w_a, w_b=None, w_c=None, w_d=None, w_e=None, w_f=None):
    """Forward ``(w_a, w_b, w_c, w_d, w_e) -> (w_f, w_g)``; reverse ``(w_a, w_f) -> w_b``."""
    if w_b is None:
        return 2 * w_a - w_f
    f = 2 * w_a - w_b
    if w_d == 0:
        raise DegenerateError("twist: w_d = 0")
    return f, (f * w_b - w_a * w_a + w_c * w_e) / w_d


def r2_factor_solve(w_a: complex, w_b: complex, w_c: complex, target: complex = 1) -> complex:
    """``w_e`` with ``(w_a w_c - w_b w_e) / ((w_c - w_b)(w_a - w_b)) = target``."""
    if w_b == 0:
        raise DegenerateError("R2: w_b = 0")
    return (w_a * w_c - target * (w_c - w_b) * (w_a - w_b)) / w_b


def transport_r2(d_after: LinkDiagram, pot_after, w_partial: Mapping[int, complex],
                 roles: Mapping[str, int], tolerance: float = 1e-9) -> tuple[complex, complex]:
    """``(w_d, w_e)`` after an R2 move: ``w_d = w_b``; ``w_e`` from region b's equation."""
    b, dd, e = roles["b"], roles["d"], roles["e"]
    w = dict(w_partial)
    w[dd] = w[b]
    corners = region_corners(pot_after, b)
    linear = [(cp, i) for cp, i in corners if cp.slots[(i + 2) % 4] == e]
    if len(linear) != 1 or any(e in (cp.slots[(i + 1) % 4], cp.slots[(i - 1) % 4]) for cp, i in corners):
        raise DegenerateError("R2: region b does not meet the bigon in exactly one opposite corner")
    cp, i = linear[0]
    known = 1 + 0j
    for cq, j in corners:
        if (cq, j) != (cp, i):
            known *= corner_weight(cq, j, w)
    left, here, right = (w[cp.slots[(i + k) % 4]] for k in (-1, 0, 1))
    num = (left - here) * (right - here)
    if num == 0 or here == 0:
        raise DegenerateError("R2: degenerate site (adjacent values coincide)")
    # the corner weight is num / (left right - w_e here), or its reciprocal
    if cp.corner(i) % 2 == 1:
        den = num * known
    else:
        den = num / known
    w_e = (left * right - den) / here
    w[e] = w_e
    check = abs(region_equation(pot_after, d_after, dd, w) - 1)
    if check > 10 * tolerance:
        raise CrossCheckError(f"R2: region {dd} disagrees with the value from region {b} ({check:.3g})")
    return w[b], w_e


@dataclass(frozen=True)
class TransportRecord:
    step: int
    move: MoveDescriptor
    correspondence: RegionCorrespondence
    created_values: dict[int, complex]
    relations: dict[int, str]
    deleted_regions: tuple[int, ...]
    residual_max: float
    W0: complex
    essential: bool = True

    def to_text(self) -> str:
        lines = [f"step {self.step}: {self.move.to_text()}"]
        for k, v in self.created_values.items():
            lines.append(f"  created {k} = {v.real:.17g} {v.imag:+.17g}i  ({self.relations[k]})")
        if self.deleted_regions:
            lines.append("  deleted " + " ".join(str(r) for r in self.deleted_regions))
        lines.append(f"  max-residual {self.residual_max:.3g}")
        lines.append(f"  W0 {self.W0.real:.17g} {self.W0.imag:.17g}")
        return "\n".join(lines)


def _agree(x: complex, y: complex, tol: float) -> bool:
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def transport_step(d: LinkDiagram, w: Mapping[int, complex], m: MoveDescriptor,
                   tolerance: float = 1e-9):
    """Apply one move; returns (new diagram, new values, correspondence, created, relations)."""
    d2, corr = apply_move(d, m)
    r = corr.roles
    w2 = dict(w)
    created: dict[int, complex] = {}
    rel: dict[int, str] = {}
    check_tol = 1e3 * tolerance
    kind = m.kind

    def put(k, v, why):
        w2[k] = v
        created[k] = v
        rel[k] = why

    if m.base == "R1" and not m.inverse:
        put(r["c"], transport_r1(w[r["a"]], w[r["b"]]), f"2 w{r['b']} - w{r['a']}")
    elif m.base == "R1":
        want = transport_r1(w[r["a"]], w[r["b"]])
        if not _agree(want, w[r["c"]], check_tol):
            raise CrossCheckError(f"{kind}: w{r['c']} != 2 w{r['b']} - w{r['a']}")
    elif m.base == "R2" and not m.inverse:
        pot2 = build_potential(d2)
        wd, we = transport_r2(d2, pot2, w2, r, tolerance)
        put(r["e"], we, f"equation of region {r['b']}")
        put(r["d"], wd, f"w{r['b']}")
        created = {k: created[k] for k in corr.created}
    elif m.base == "R2":
        if not _agree(w[r["b"]], w[r["d"]], check_tol):
            raise CrossCheckError(f"{kind}: merged regions {r['b']} and {r['d']} carry different values")
    elif m.base == "R3":
        put(r["h"], transport_r3(*(w[r[k]] for k in "abcdef"), w_g=w[r["g"]]),
            f"(w{r['d']} w{r['g']} - w{r['c']} w{r['e']} + w{r['b']} w{r['f']}) / w{r['a']}")
    elif kind == "twist":
        wf, wg = transport_twist(w[r["a"]], w[r["b"]], w[r["c"]], w[r["d"]], w[r["e"]])
        put(r["f"], wf, f"2 w{r['a']} - w{r['b']}")
        put(r["g"], wg, f"(w{r['f']} w{r['b']} - w{r['a']}^2 + w{r['c']} w{r['e']}) / w{r['d']}")
    else:  # twist^-1: R3 at the triangle, then remove the kink
        s1, s2 = corr.steps
        q = s1.roles
        mid = transport_r3(*(w[q[k]] for k in "abcdef"), w_g=w[q["g"]])
        wb = transport_twist(w[r["a"]], w_f=w[r["f"]])
        if not _agree(mid, wb, check_tol):
            raise CrossCheckError("twist^-1: the R3 value and 2 w_a - w_f disagree")
        put(r["b"], wb, f"2 w{r['a']} - w{r['f']}")
    for k in corr.deleted:
        w2.pop(k, None)
    w2 = {k: w2[k] for k in d2.region_ids}
    return d2, dict(sorted(w2.items())), corr, created, rel


def transport_sequence(d: LinkDiagram, w, plan: Sequence[MoveDescriptor], tolerance: float = 1e-9,
                       check: bool = True):
    """Transport ``w`` along ``plan``; returns (records, final diagram, final SolutionVector).

    After every step the hyperbolicity equations and essentialness are checked;
    a failure raises with the step index attached to the message.
    """
    values = dict(w.values if isinstance(w, SolutionVector) else w)
    records = []
    cur = d
    for i, m in enumerate(plan, 1):
        try:
            nxt, values, corr, created, rel = transport_step(cur, values, m, tolerance)
        except OptlimitError as exc:
            raise type(exc)(f"step {i} ({m.to_text()}): {exc}") from None
        essential = is_essential(values, nxt.adjacent_pairs, tolerance)
        if check and not essential:
            raise EssentialnessLostError(f"step {i} ({m.to_text()}): solution is no longer essential", step=i)
        try:
            ev = evaluate(build_potential(nxt), values)
        except DegenerateError as exc:
            raise EssentialnessLostError(f"step {i} ({m.to_text()}): {exc}", step=i) from None
        if check and ev.residual_max > tolerance:
            raise UnverifiedSolutionError(
                f"step {i} ({m.to_text()}): max residual {ev.residual_max:.3g} exceeds {tolerance:g}")
        records.append(TransportRecord(i, m, corr, created, rel, tuple(corr.deleted),
                                       ev.residual_max, ev.W0_value, essential))
        cur = nxt
    return records, cur, SolutionVector(values, is_essential(values, cur.adjacent_pairs, tolerance))


__all__ = [
    "TransportRecord",
    "r2_factor_solve",
    "transport_r1",
    "transport_r2",
    "transport_r3",
    "transport_sequence",
    "transport_step",
    "transport_twist",
]
