"""Oriented link diagrams in PD form, their faces, and slot bookkeeping.

A crossing is written ``X<sign> a b c d``: the four edge labels in
counterclockwise order, starting at the incoming under-strand.  The under-strand
runs from position 0 to position 2.  At a positive crossing the over-strand
enters at position 3 and leaves at position 1; at a negative one it enters at 1
and leaves at 3.

Corner ``k`` of a crossing is the angle between positions ``k`` and ``k + 1``.
The four potential slots ``(a, b, c, d)`` are consecutive counterclockwise
corners, ``a`` sitting between the two outgoing ends and ``c`` between the two
incoming ones.

Optional extensions of the text format, used when a diagram is written back out
after moves:

* ``X+ 2 6 3 5 id=7`` gives a crossing an explicit integer id;
* ``R 4 7:a`` names the region that occupies slot ``a`` of crossing 7 as region 4.

Without ``R`` lines regions get canonical ids 1..n sorted by their smallest
(crossing id, slot) corner.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .errors import (
    DiagramInconsistencyError,
    DiagramSyntaxError,
    DiagramValidationError,
)

SLOTS = ("a", "b", "c", "d")
# corner index occupied by slots a, b, c, d
SLOT_CORNERS = {1: (1, 2, 3, 0), -1: (2, 3, 0, 1)}

Port = tuple[int, int]     # (crossing id, position)
Corner = tuple[int, int]   # (crossing id, corner index)


def over_in_position(sign: int) -> int:
    return 3 if sign > 0 else 1


@dataclass(frozen=True)
class Crossing:
    id: int
    sign: int
    arcs: tuple[int, int, int, int]

    def is_incoming(self, pos: int) -> bool:
        return pos == 0 or pos == over_in_position(self.sign)

    @staticmethod
    def is_over(pos: int) -> bool:
        return pos % 2 == 1

    def slot_corner(self, slot: str | int) -> int:
        i = SLOTS.index(slot) if isinstance(slot, str) else slot
        return SLOT_CORNERS[self.sign][i]

    def corner_slot(self, corner: int) -> int:
        return SLOT_CORNERS[self.sign].index(corner % 4)


@dataclass(frozen=True)
class Arc:
    """A PD edge: the strand piece between two crossings."""

    label: int
    tail: Port
    head: Port
    left: Optional[int] = None
    right: Optional[int] = None
    over_at_tail: bool = False
    over_at_head: bool = False


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    corner_region: Optional[Mapping[Corner, int]] = None
    next_region_id: int = 1
    region_labels: Optional[tuple[tuple[int, int, int], ...]] = field(default=None, compare=False)

    # ---- combinatorics -------------------------------------------------

    @cached_property
    def by_id(self) -> dict[int, Crossing]:
        return {c.id: c for c in self.crossings}

    def crossing(self, cid: int) -> Crossing:
        return self.by_id[cid]

    @property
    def crossing_ids(self) -> list[int]:
        return [c.id for c in self.crossings]

    @property
    def next_crossing_id(self) -> int:
        return max((c.id for c in self.crossings), default=0) + 1

    @cached_property
    def ports_of(self) -> dict[int, list[Port]]:
        out: dict[int, list[Port]] = {}
        for c in self.crossings:
            for pos, lab in enumerate(c.arcs):
                out.setdefault(lab, []).append((c.id, pos))
        return out

    def partner(self, port: Port) -> Port:
        cid, pos = port
        p, q = self.ports_of[self.by_id[cid].arcs[pos]]
        return q if p == port else p

    def is_incoming(self, port: Port) -> bool:
        return self.by_id[port[0]].is_incoming(port[1])

    @cached_property
    def arcs(self) -> dict[int, Arc]:
        out = {}
        for lab in sorted(self.ports_of):
            p, q = self.ports_of[lab]
            tail, head = (q, p) if self.is_incoming(p) else (p, q)
            left = right = None
            if self.corner_region is not None:
                cid, pos = tail
                left = self.corner_region[(cid, pos)]
                right = self.corner_region[(cid, (pos - 1) % 4)]
            out[lab] = Arc(lab, tail, head, left, right,
                           Crossing.is_over(tail[1]), Crossing.is_over(head[1]))
        return out

    @property
    def arc_labels(self) -> list[int]:
        return sorted(self.ports_of)

    @cached_property
    def components(self) -> list[list[int]]:
        """Edge labels of each link component, in strand order."""
        seen: set[int] = set()
        comps = []
        for lab in self.arc_labels:
            if lab in seen:
                continue
            comp = []
            cur = lab
            while cur not in seen:
                seen.add(cur)
                comp.append(cur)
                cid, pos = self.arcs[cur].head
                cur = self.by_id[cid].arcs[(pos + 2) % 4]
            comps.append(comp)
        return comps

    @property
    def component_count(self) -> int:
        return len(self.components)

    def component_of(self, label: int) -> int:
        for i, comp in enumerate(self.components):
            if label in comp:
                return i
        raise KeyError(label)

    # ---- regions -------------------------------------------------------

    @property
    def has_regions(self) -> bool:
        return self.corner_region is not None

    def _need_regions(self):
        if self.corner_region is None:
            raise DiagramValidationError("regions have not been computed")

    @cached_property
    def regions(self) -> dict[int, tuple[Corner, ...]]:
        """Region id -> corners in boundary order (face on the left)."""
        self._need_regions()
        faces = trace_faces(self)
        out = {}
        for face in faces:
            rid = self.corner_region[face[0]]
            out[rid] = tuple(face)
        return dict(sorted(out.items(), key=lambda kv: self.region_key(kv[1])))

    def region_key(self, corners: Iterable[Corner]) -> tuple[int, int]:
        return min((cid, self.by_id[cid].corner_slot(k)) for cid, k in corners)

    @property
    def region_ids(self) -> list[int]:
        return list(self.regions)

    def slot_regions(self, cid: int) -> tuple[int, int, int, int]:
        self._need_regions()
        x = self.by_id[cid]
        return tuple(self.corner_region[(cid, k)] for k in SLOT_CORNERS[x.sign])

    def corner_of(self, cid: int, corner: int) -> int:
        self._need_regions()
        return self.corner_region[(cid, corner % 4)]

    @cached_property
    def adjacent_pairs(self) -> list[tuple[int, int]]:
        """Region pairs separated by an edge (left, right), one entry per edge."""
        return [(a.left, a.right) for a in self.arcs.values()]

    def edges_of_region(self, rid: int) -> list[int]:
        return [lab for lab, a in self.arcs.items() if rid in (a.left, a.right)]

    # ---- text ------------------------------------------------------------

    def to_text(self) -> str:
        lines = []
        explicit = [c.id for c in self.crossings] != list(range(1, len(self.crossings) + 1))
        for c in self.crossings:
            s = "+" if c.sign > 0 else "-"
            line = f"X{s} " + " ".join(str(a) for a in c.arcs)
            if explicit:
                line += f" id={c.id}"
            lines.append(line)
        if self.corner_region is not None and not self._canonical_ids():
            for rid, corners in self.regions.items():
                cid, slot = self.region_key(corners)
                lines.append(f"R {rid} {cid}:{SLOTS[slot]}")
        return "\n".join(lines) + "\n"

    def _canonical_ids(self) -> bool:
        return list(self.regions) == list(range(1, len(self.regions) + 1))


# ---- parsing -----------------------------------------------------------------

_XLINE = re.compile(r"^X([+-])\s+(-?\d+)\s+(-?\d+)\s+(-?\d+)\s+(-?\d+)(?:\s+id=(\d+))?$")
_RLINE = re.compile(r"^R\s+(\d+)\s+(\d+):([abcd])$")


def parse_diagram(text: str) -> LinkDiagram:
    crossings = []
    labels = []
    explicit_ids = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _XLINE.match(line)
        if m:
            sign = 1 if m.group(1) == "+" else -1
            arcs = tuple(int(m.group(i)) for i in range(2, 6))
            cid = int(m.group(6)) if m.group(6) else None
            explicit_ids.append(cid)
            crossings.append((sign, arcs))
            continue
        m = _RLINE.match(line)
        if m:
            labels.append((int(m.group(1)), int(m.group(2)), SLOTS.index(m.group(3))))
            continue
        raise DiagramSyntaxError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if not crossings:
        raise DiagramSyntaxError("no crossings in diagram source")
    if any(i is not None for i in explicit_ids):
        if any(i is None for i in explicit_ids):
            raise DiagramSyntaxError("either all crossings carry id= or none do")
        ids = explicit_ids
        if len(set(ids)) != len(ids):
            raise DiagramSyntaxError("duplicate crossing id")
    else:
        ids = list(range(1, len(crossings) + 1))
    xs = tuple(sorted((Crossing(i, s, a) for i, (s, a) in zip(ids, crossings)), key=lambda c: c.id))
    d = LinkDiagram(xs, region_labels=tuple(labels) if labels else None)
    validate_structure(d)
    return d


def load_diagram(text: str) -> LinkDiagram:
    return compute_regions(parse_diagram(text))


def validate_structure(d: LinkDiagram) -> None:
    counts: dict[int, int] = {}
    for c in d.crossings:
        for lab in c.arcs:
            counts[lab] = counts.get(lab, 0) + 1
    bad = sorted(lab for lab, n in counts.items() if n != 2)
    if bad:
        raise DiagramInconsistencyError(f"edge labels not used exactly twice: {bad}")
    for lab, (p, q) in d.ports_of.items():
        if d.is_incoming(p) == d.is_incoming(q):
            raise DiagramInconsistencyError(
                f"edge {lab}: orientation mismatch, both ends {'incoming' if d.is_incoming(p) else 'outgoing'}")
    # connectedness
    seen = {d.crossings[0].id}
    todo = deque(seen)
    while todo:
        cid = todo.popleft()
        for pos in range(4):
            other = d.partner((cid, pos))[0]
            if other not in seen:
                seen.add(other)
                todo.append(other)
    if len(seen) != len(d.crossings):
        raise DiagramValidationError("diagram is not connected (split links are not supported)")
    for comp in d.components:
        passes = set()
        for lab in comp:
            arc = d.arcs[lab]
            passes.add(arc.over_at_head)
        if passes != {True, False}:
            kind = "over" if passes == {True} else "under"
            raise DiagramValidationError(
                f"component through edges {comp} has only {kind}-crossings")


def trace_faces(d: LinkDiagram) -> list[list[Corner]]:
    unused = {(c.id, k) for c in d.crossings for k in range(4)}
    faces = []
    for c in d.crossings:
        for k in range(4):
            start = (c.id, k)
            if start not in unused:
                continue
            face = []
            cur = start
            while True:
                if cur not in unused:
                    raise DiagramValidationError("face trace failed to close: invalid PD source")
                unused.remove(cur)
                face.append(cur)
                nxt_c, nxt_pos = d.partner(cur)
                cur = (nxt_c, (nxt_pos - 1) % 4)
                if cur == start:
                    break
            faces.append(face)
    return faces


def compute_regions(d: LinkDiagram) -> LinkDiagram:
    """Bind corners to region ids; canonical ids unless ``R`` labels were parsed."""
    faces = trace_faces(d)
    n = len(d.crossings)
    if len(faces) != n + 2:
        raise DiagramValidationError(
            f"Euler check failed: {len(faces)} faces for {n} crossings (expected {n + 2})")
    by_id = d.by_id

    def key(face):
        return min((cid, by_id[cid].corner_slot(k)) for cid, k in face)

    faces.sort(key=key)
    corner_region: dict[Corner, int] = {}
    if d.region_labels:
        slot_face = {}
        for i, face in enumerate(faces):
            for cid, k in face:
                slot_face[(cid, by_id[cid].corner_slot(k))] = i
        assigned: dict[int, int] = {}
        for rid, cid, slot in d.region_labels:
            if (cid, slot) not in slot_face:
                raise DiagramSyntaxError(f"region label {rid}: no crossing {cid}")
            fi = slot_face[(cid, slot)]
            if fi in assigned and assigned[fi] != rid:
                raise DiagramSyntaxError(f"region labels {assigned[fi]} and {rid} name the same face")
            assigned[fi] = rid
        if len(assigned) != len(faces) or len(set(assigned.values())) != len(faces):
            raise DiagramSyntaxError("region labels must name every face exactly once")
        ids = [assigned[i] for i in range(len(faces))]
    else:
        ids = list(range(1, len(faces) + 1))
    for rid, face in zip(ids, faces):
        for corner in face:
            corner_region[corner] = rid
    return LinkDiagram(d.crossings, corner_region, max(ids) + 1)


# ---- mirror, orientation -------------------------------------------------------

def mirror(d: LinkDiagram) -> LinkDiagram:
    """Change every crossing; same projection, same region ids, opposite signs."""
    new = []
    hints = {}
    for c in d.crossings:
        if c.sign > 0:
            arcs = (c.arcs[3], c.arcs[0], c.arcs[1], c.arcs[2])
            shift = -1
        else:
            arcs = (c.arcs[1], c.arcs[2], c.arcs[3], c.arcs[0])
            shift = 1
        new.append(Crossing(c.id, -c.sign, arcs))
        if d.corner_region is not None:
            for j in range(4):
                hints[(c.id, j)] = d.corner_region[(c.id, (j + shift) % 4)]
    out = LinkDiagram(tuple(new))
    if d.corner_region is None:
        return out
    return LinkDiagram(out.crossings, hints, d.next_region_id)


def reverse_components(d: LinkDiagram, components: Iterable[int]) -> LinkDiagram:
    """Reverse the orientation of the given components; regions keep their ids."""
    rev_labels = set()
    for i in components:
        rev_labels.update(d.components[i])
    new = []
    hints = {}
    for c in d.crossings:
        under_rev = c.arcs[0] in rev_labels
        over_rev = c.arcs[1] in rev_labels
        arcs = c.arcs
        shift = 0
        if under_rev:
            arcs = (arcs[2], arcs[3], arcs[0], arcs[1])
            shift = 2
        sign = -c.sign if under_rev != over_rev else c.sign
        new.append(Crossing(c.id, sign, arcs))
        if d.corner_region is not None:
            for j in range(4):
                hints[(c.id, j)] = d.corner_region[(c.id, (j + shift) % 4)]
    out = LinkDiagram(tuple(new), hints if d.corner_region is not None else None, d.next_region_id)
    validate_structure(out)
    return out


# ---- isomorphism ---------------------------------------------------------------

@dataclass(frozen=True)
class Isomorphism:
    crossings: dict[int, int]
    arcs: dict[int, int]
    regions: dict[int, int]


def find_isomorphism(d1: LinkDiagram, d2: LinkDiagram) -> Optional[Isomorphism]:
    """An orientation- and sign-preserving planar isomorphism d1 -> d2, if any."""
    if len(d1.crossings) != len(d2.crossings):
        return None
    if sorted(c.sign for c in d1.crossings) != sorted(c.sign for c in d2.crossings):
        return None
    first = d1.crossings[0]
    for cand in d2.crossings:
        if cand.sign != first.sign:
            continue
        cmap = {first.id: cand.id}
        ok = True
        todo = deque([first.id])
        while todo and ok:
            c1 = todo.popleft()
            c2 = cmap[c1]
            for pos in range(4):
                o1, p1 = d1.partner((c1, pos))
                o2, p2 = d2.partner((c2, pos))
                if p1 != p2 or d1.by_id[o1].sign != d2.by_id[o2].sign:
                    ok = False
                    break
                if o1 in cmap:
                    if cmap[o1] != o2:
                        ok = False
                        break
                else:
                    if o2 in cmap.values():
                        ok = False
                        break
                    cmap[o1] = o2
                    todo.append(o1)
        if not ok or len(cmap) != len(d1.crossings):
            continue
        amap = {}
        for c in d1.crossings:
            for pos in range(4):
                amap[c.arcs[pos]] = d2.by_id[cmap[c.id]].arcs[pos]
        rmap = {}
        if d1.corner_region is not None and d2.corner_region is not None:
            for (cid, k), rid in d1.corner_region.items():
                rmap[rid] = d2.corner_region[(cmap[cid], k)]
        return Isomorphism(cmap, amap, rmap)
    return None
