"""Shadow-colorings: arc colors, region colors, the point ``p``, and solutions.

Arc colors are keyed by PD edge label.  All edges of one over-arc carry the same
color (up to sign); a color file may give any subset of them and the rest is
filled in through the crossing relations.  Across an edge ``E`` the region on
its left is ``s_right * a_E``.
"""

from __future__ import annotations

import cmath
import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import yaml

from .diagram import LinkDiagram
from .errors import (
    ColoringError,
    DegenerateError,
    DiagramSyntaxError,
    RetryBudgetExhausted,
)
from .quandle import (
    INF,
    ParabolicElement,
    det2,
    equal,
    equal_up_to_sign,
    hopf,
    points_close,
    star,
    star_inv,
)

ArcColors = Mapping[int, ParabolicElement]
RegionColors = Mapping[int, ParabolicElement]


@dataclass(frozen=True)
class SolutionVector:
    values: dict[int, complex]
    essential: bool = True

    def __getitem__(self, k: int) -> complex:
        return self.values[k]


@dataclass(frozen=True)
class ShadowColoring:
    arc_colors: dict[int, ParabolicElement]
    region_colors: dict[int, ParabolicElement]
    p: ParabolicElement
    seed_region: Optional[int] = None
    adjacency: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    @property
    def essential(self) -> bool:
        return is_essential(construct_solution(self).values, self.adjacency)


@dataclass(frozen=True)
class ArcColoringReport:
    crossings: dict[int, str]    # "exact", "sign" or "fail"

    @property
    def ok(self) -> bool:
        return all(v != "fail" for v in self.crossings.values())

    @property
    def failed(self) -> list[int]:
        return [c for c, v in self.crossings.items() if v == "fail"]


# ---- arc colors ---------------------------------------------------------------

def _under_out(d: LinkDiagram, cid: int, under_in: ParabolicElement, over: ParabolicElement):
    return star(under_in, over) if d.by_id[cid].sign > 0 else star_inv(under_in, over)


def _under_in(d: LinkDiagram, cid: int, under_out: ParabolicElement, over: ParabolicElement):
    return star_inv(under_out, over) if d.by_id[cid].sign > 0 else star(under_out, over)


def complete_arc_colors(d: LinkDiagram, partial: ArcColors) -> dict[int, ParabolicElement]:
    """Fill in every edge color from a partial assignment via the crossing relations."""
    unknown = [lab for lab in partial if lab not in d.ports_of]
    if unknown:
        raise ColoringError(f"colors given for edges not in the diagram: {sorted(unknown)}")
    colors = dict(partial)
    changed = True
    while changed:
        changed = False
        for c in d.crossings:
            u0, o1, u2, o3 = (colors.get(lab) for lab in c.arcs)
            over = o1 if o1 is not None else o3
            if over is not None and (o1 is None or o3 is None):
                colors[c.arcs[1 if o1 is None else 3]] = over
                changed = True
            if over is None:
                continue
            if u0 is not None and u2 is None:
                colors[c.arcs[2]] = _under_out(d, c.id, u0, over)
                changed = True
            elif u2 is not None and u0 is None:
                colors[c.arcs[0]] = _under_in(d, c.id, u2, over)
                changed = True
    missing = sorted(set(d.ports_of) - set(colors))
    if missing:
        raise ColoringError(f"cannot determine colors of edges {missing}")
    return dict(sorted(colors.items()))


def validate_arc_coloring(d: LinkDiagram, colors: ArcColors, tol: float = 1e-9) -> ArcColoringReport:
    missing = sorted(set(d.ports_of) - set(colors))
    if missing:
        raise ColoringError(f"no color for edges {missing}")
    out = {}
    for c in d.crossings:
        u0, o1, u2, o3 = (colors[lab] for lab in c.arcs)
        want = _under_out(d, c.id, u0, o1)
        if equal(o1, o3, tol) and equal(u2, want, tol):
            out[c.id] = "exact"
        elif equal_up_to_sign(o1, o3, tol) and equal_up_to_sign(u2, want, tol):
            out[c.id] = "sign"
        else:
            out[c.id] = "fail"
    return ArcColoringReport(out)


def require_valid(d: LinkDiagram, colors: ArcColors, tol: float) -> None:
    rep = validate_arc_coloring(d, colors, tol)
    if not rep.ok:
        raise ColoringError(f"arc colors violate the crossing relation at crossings {rep.failed}")


def conjugate_arc_colors(colors: ArcColors, g) -> dict[int, ParabolicElement]:
    """Right-multiply every color by ``g`` in SL(2, C); relations and solutions are unchanged."""
    return {k: v.right_multiply(g) for k, v in colors.items()}


def reverse_arc_colors(d: LinkDiagram, colors: ArcColors, components: Iterable[int]):
    """Colors after reversing the given components: each reversed edge color is multiplied by i."""
    labels = set()
    for i in components:
        labels.update(d.components[i])
    return {k: (v.scale(1j) if k in labels else v) for k, v in colors.items()}


# ---- regions ------------------------------------------------------------------

def propagate_regions(d: LinkDiagram, colors: ArcColors, seed_region: int,
                      seed_color: ParabolicElement, tol: float = 1e-9) -> dict[int, ParabolicElement]:
    if seed_region not in d.regions:
        raise ColoringError(f"no region {seed_region}")
    by_region: dict[int, list] = {}
    for arc in d.arcs.values():
        by_region.setdefault(arc.left, []).append(arc)
        by_region.setdefault(arc.right, []).append(arc)
    out = {seed_region: seed_color}
    todo = deque([seed_region])
    while todo:
        r = todo.popleft()
        s = out[r]
        for arc in by_region[r]:
            a = colors[arc.label]
            pairs = []
            if arc.right == r:
                pairs.append((arc.left, star(s, a)))
            if arc.left == r:
                pairs.append((arc.right, star_inv(s, a)))
            for other, col in pairs:
                if other in out:
                    if not equal(out[other], col, tol):
                        raise ColoringError(
                            f"region colors disagree around region {other} (edge {arc.label}); "
                            "the arc coloring is not consistent")
                else:
                    out[other] = col
                    todo.append(other)
    return dict(sorted(out.items()))


def _distinct(points: Sequence, tol: float) -> bool:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points_close(points[i], points[j], tol):
                return False
    return True


def hopf_images_distinct(d: LinkDiagram, colors: ArcColors, regions: RegionColors, tol: float = 1e-9) -> bool:
    """At every edge the Hopf images of the arc and of both neighbouring regions differ."""
    for arc in d.arcs.values():
        if not _distinct([hopf(colors[arc.label]), hopf(regions[arc.right]), hopf(regions[arc.left])], tol):
            return False
    return True


def p_condition_holds(colors: ArcColors, regions: RegionColors, p: ParabolicElement, tol: float = 1e-9) -> bool:
    hp = hopf(p)
    return not any(points_close(hp, hopf(x), tol)
                   for x in list(colors.values()) + list(regions.values()))


def is_essential(values: Mapping[int, complex], adjacency: Iterable[tuple[int, int]], tol: float = 1e-9) -> bool:
    scale = max((abs(v) for v in values.values()), default=1.0)
    if any(abs(v) <= tol * scale for v in values.values()):
        return False
    for r, s in adjacency:
        if r != s and abs(values[r] - values[s]) <= tol * max(abs(values[r]), abs(values[s])):
            return False
    return True


def construct_solution(sc: ShadowColoring) -> SolutionVector:
    vals = {k: det2(sc.p, s) for k, s in sorted(sc.region_colors.items())}
    return SolutionVector(vals, is_essential(vals, sc.adjacency))


def corners_nondegenerate(d: LinkDiagram, values: Mapping[int, complex], tol: float = 1e-9) -> bool:
    """Every corner-weight numerator and denominator is nonzero."""
    for c in d.crossings:
        w = [values[r] for r in d.slot_regions(c.id)]
        scale = max(abs(x) for x in w) ** 2
        for i in range(4):
            l, h, r, o = w[i - 1], w[i], w[(i + 1) % 4], w[(i + 2) % 4]
            if abs(l * r - o * h) <= tol * scale or abs((l - h) * (r - h)) <= tol * scale:
                return False
    return True


def shadow_coloring(d: LinkDiagram, colors: ArcColors, seed_region: int, seed_color: ParabolicElement,
                    p: ParabolicElement, tol: float = 1e-9) -> ShadowColoring:
    require_valid(d, colors, tol)
    regions = propagate_regions(d, colors, seed_region, seed_color, tol)
    return ShadowColoring(dict(colors), regions, p, seed_region, tuple(d.adjacent_pairs))


def generic_ok(d: LinkDiagram, sc: ShadowColoring, tol: float = 1e-9) -> bool:
    if not hopf_images_distinct(d, sc.arc_colors, sc.region_colors, tol):
        return False
    if not p_condition_holds(sc.arc_colors, sc.region_colors, sc.p, tol):
        return False
    w = construct_solution(sc)
    return w.essential and corners_nondegenerate(d, w.values, tol)


# ---- moves --------------------------------------------------------------------

def transport_arc_colors(old: LinkDiagram, colors: ArcColors, new: LinkDiagram, corr) -> dict[int, ParabolicElement]:
    """Arc colors on the post-move diagram: unchanged outside the move disk."""
    partial = {}
    for lab in new.ports_of:
        if lab in corr.arc_inherit:
            partial[lab] = colors[corr.arc_inherit[lab]]
        elif lab in old.ports_of:
            partial[lab] = colors[lab]
    # edges inside the move disk have no source; the crossing relations fix them
    return complete_arc_colors(new, partial)


def transport_coloring(old: LinkDiagram, sc: ShadowColoring, new: LinkDiagram, corr,
                       tol: float = 1e-9) -> ShadowColoring:
    colors = transport_arc_colors(old, sc.arc_colors, new, corr)
    require_valid(new, colors, tol)
    created = set(corr.created)
    seed = next(r for r in new.region_ids if r not in created and r in sc.region_colors)
    regions = propagate_regions(new, colors, seed, sc.region_colors[seed], tol)
    return ShadowColoring(colors, regions, sc.p, seed, tuple(new.adjacent_pairs))


def plan_diagrams(d: LinkDiagram, plan) -> list:
    from .moves import apply_move

    out = []
    cur = d
    for i, m in enumerate(plan):
        nxt, corr = apply_move(cur, m)
        out.append((cur, nxt, corr))
        cur = nxt
    return out


def _sample_disk(rng: random.Random, radius: float) -> complex:
    r = radius * math.sqrt(rng.random())
    return cmath.rect(r, 2 * math.pi * rng.random())


def select_generic(d: LinkDiagram, colors: ArcColors, move_plan=None, rng_seed: int = 0,
                   budget: int = 64, tol: float = 1e-9, radius: float = 10.0,
                   seed_region: Optional[int] = None) -> ShadowColoring:
    """Pick ``s`` on one region and ``p`` at random until everything is generic.

    The choice is checked on ``d`` and on every diagram produced by ``move_plan``.
    """
    require_valid(d, colors, tol)
    steps = plan_diagrams(d, move_plan or [])
    seed_region = d.region_ids[0] if seed_region is None else seed_region
    rng = random.Random(rng_seed)
    for _ in range(budget):
        s1 = ParabolicElement(_sample_disk(rng, radius), 1)
        p = ParabolicElement(_sample_disk(rng, radius), 1)
        try:
            sc = shadow_coloring(d, colors, seed_region, s1, p, tol)
            if not generic_ok(d, sc, tol):
                continue
            cur = sc
            good = True
            for old, new, corr in steps:
                cur = transport_coloring(old, cur, new, corr, tol)
                if not generic_ok(new, cur, tol):
                    good = False
                    break
        except DegenerateError:
            continue
        if good:
            return sc
    raise RetryBudgetExhausted(f"no generic region coloring found in {budget} attempts")


def normalize_arc_colors(colors: ArcColors, p: ParabolicElement) -> dict[int, ParabolicElement]:
    """Conjugate so that ``p`` becomes ``(1, 0)``; determinants with ``p`` are unchanged.

    Afterwards ``beta`` of every color is ``det(p, color)``, so no Hopf image is
    at infinity when ``p`` is generic.
    """
    p1, p2 = p.alpha, p.beta
    x, z = (1 / p1, 0) if abs(p1) >= abs(p2) else (0, 1 / p2)
    g = ((x, -p2), (z, p1))
    return conjugate_arc_colors(colors, g)


def reconstruct_coloring(d: LinkDiagram, colors: ArcColors, w, tol: float = 1e-9) -> ShadowColoring:
    """Region colors with ``p = (1, 0)`` whose determinants reproduce ``w``."""
    values = w.values if isinstance(w, SolutionVector) else dict(w)
    if not is_essential(values, d.adjacent_pairs, tol):
        raise ColoringError("reconstruction needs an essential solution")
    if any(hopf(colors[lab]) is INF for lab in d.ports_of):
        raise ColoringError("an arc color has Hopf image at infinity; conjugate the arc colors first")
    arc = next(a for a in d.arcs.values() if a.left != a.right)
    al = colors[arc.label]
    if al.beta == 0:
        raise DegenerateError(f"edge {arc.label}: beta = 0")
    wr, wl = values[arc.right], values[arc.left]
    h = (al.alpha * al.beta - 1 + wl / wr) / (al.beta ** 2)
    seed = ParabolicElement(wr * h, wr)
    p = ParabolicElement(1, 0)
    regions = propagate_regions(d, colors, arc.right, seed, tol)
    return ShadowColoring(dict(colors), regions, p, arc.right, tuple(d.adjacent_pairs))


# ---- files --------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _pe_line(v: ParabolicElement) -> str:
    return "[" + ", ".join(_fmt(x) for x in v.as_floats()) + "]"


def _pe(value, what: str) -> ParabolicElement:
    try:
        return ParabolicElement.from_floats([float(x) for x in value])
    except (TypeError, ValueError) as exc:
        raise DiagramSyntaxError(f"{what}: {exc}") from None


@dataclass
class ColorFile:
    arcs: dict[int, ParabolicElement]
    regions: dict[int, ParabolicElement] = field(default_factory=dict)
    p: Optional[ParabolicElement] = None
    seed_region: Optional[int] = None
    seed: Optional[int] = None
    solution: dict[int, complex] = field(default_factory=dict)


def parse_color_file(text: str) -> ColorFile:
    try:
        doc = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise DiagramSyntaxError(f"color file: {exc}") from None
    if not isinstance(doc, dict):
        raise DiagramSyntaxError("color file must be a mapping of sections")
    known = {"arcs", "regions", "p", "seed_region", "seed", "solution"}
    extra = set(doc) - known
    if extra:
        raise DiagramSyntaxError(f"color file: unknown sections {sorted(map(str, extra))}")

    def section(name):
        v = doc.get(name) or {}
        if not isinstance(v, dict):
            raise DiagramSyntaxError(f"color file: section {name} must be a mapping")
        return v

    try:
        arcs = {int(k): _pe(v, f"arc {k}") for k, v in section("arcs").items()}
        regions = {int(k): _pe(v, f"region {k}") for k, v in section("regions").items()}
        sol = {}
        for k, v in section("solution").items():
            if not isinstance(v, (list, tuple)) or len(v) != 2:
                raise DiagramSyntaxError(f"solution {k}: expected [re, im]")
            sol[int(k)] = complex(float(v[0]), float(v[1]))
        p = _pe(doc["p"], "p") if doc.get("p") is not None else None
        seed_region = int(doc["seed_region"]) if doc.get("seed_region") is not None else None
        seed = int(doc["seed"]) if doc.get("seed") is not None else None
    except (TypeError, ValueError) as exc:
        raise DiagramSyntaxError(f"color file: {exc}") from None
    return ColorFile(arcs, regions, p, seed_region, seed, sol)


def format_color_file(arcs: ArcColors = None, regions: RegionColors = None, p=None,
                      seed_region=None, seed=None, solution: Mapping[int, complex] = None) -> str:
    lines = []
    if seed is not None:
        lines.append(f"seed: {seed}")
    if arcs:
        lines.append("arcs:")
        lines += [f"  {k}: {_pe_line(v)}" for k, v in sorted(arcs.items())]
    if regions:
        lines.append("regions:")
        lines += [f"  {k}: {_pe_line(v)}" for k, v in sorted(regions.items())]
    if seed_region is not None:
        lines.append(f"seed_region: {seed_region}")
    if p is not None:
        lines.append(f"p: {_pe_line(p)}")
    if solution:
        lines.append("solution:")
        lines += [f"  {k}: [{_fmt(v.real)}, {_fmt(v.imag)}]" for k, v in sorted(solution.items())]
    return "\n".join(lines) + "\n"


__all__ = [
    "ArcColoringReport",
    "ColorFile",
    "ShadowColoring",
    "SolutionVector",
    "complete_arc_colors",
    "conjugate_arc_colors",
    "construct_solution",
    "corners_nondegenerate",
    "format_color_file",
    "generic_ok",
    "is_essential",
    "hopf_images_distinct",
    "p_condition_holds",
    "parse_color_file",
    "propagate_regions",
    "normalize_arc_colors",
    "reconstruct_coloring",
    "reverse_arc_colors",
    "select_generic",
    "shadow_coloring",
    "transport_arc_colors",
    "transport_coloring",
    "validate_arc_coloring",
]
