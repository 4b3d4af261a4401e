"""Reidemeister moves as local rewrites of a PD diagram with stable region ids.

Every primitive move is expressed through one engine, :func:`_rewrite`: some
crossings are removed, new crossings are inserted with their four ports given in
counterclockwise order, and each corner of a new crossing carries a hint naming
the old region it belongs to (or a freshly created one).  Faces of the result are
traced from scratch and matched with the old region ids through those hints, so
region identity survives every move without any global relabelling.

Move plans are text, one move per line::

    R2 @ over=5 under=3 region=4
    R3 @ region=7
    R1 @ edge=2 side=left
    twist @ region=3 edge=9
    R2^-1 @ region=7
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .diagram import (
    SLOTS,
    Corner,
    Crossing,
    LinkDiagram,
    Port,
    trace_faces,
    validate_structure,
)
from .errors import DiagramValidationError, PatternMismatchError

FORWARD = {"R1", "R1'", "R2", "R2'", "R3", "R3'", "twist"}
INVERSE = {k + "^-1" for k in FORWARD}
KINDS = FORWARD | INVERSE


@dataclass(frozen=True)
class MoveDescriptor:
    kind: str
    site: Mapping[str, object] = field(default_factory=dict)
    orientation_data: Optional[Mapping[int, bool]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PatternMismatchError(f"unknown move kind {self.kind!r}")

    @property
    def base(self) -> str:
        return self.kind.replace("^-1", "").rstrip("'")

    @property
    def inverse(self) -> bool:
        return self.kind.endswith("^-1")

    def to_text(self) -> str:
        return f"{self.kind} @ " + " ".join(f"{k}={v}" for k, v in self.site.items())


@dataclass(frozen=True)
class RegionCorrespondence:
    """How regions of the old diagram relate to regions of the new one.

    Ids are stable: a surviving region keeps its id.  ``roles`` names the
    regions of the move template (old ids for surviving or deleted regions, new
    ids for created ones).
    """

    kind: str
    roles: Mapping[str, int]
    created: tuple[int, ...]
    deleted: tuple[int, ...]
    merged: Mapping[int, int] = field(default_factory=dict)
    split: Mapping[int, int] = field(default_factory=dict)
    arc_inherit: Mapping[int, int] = field(default_factory=dict)
    steps: tuple["RegionCorrespondence", ...] = ()

    def survivors(self, old: LinkDiagram) -> list[int]:
        gone = set(self.deleted)
        return [r for r in old.region_ids if r not in gone]


# ---- plan text -----------------------------------------------------------------

_KV = re.compile(r"^([a-z_]+)=(\S+)$")


def _site_value(v: str):
    if re.fullmatch(r"-?\d+", v):
        return int(v)
    if v in ("+", "-"):
        return 1 if v == "+" else -1
    return v


def parse_move(line: str) -> MoveDescriptor:
    if "@" in line:
        kind, rest = line.split("@", 1)
    else:
        kind, rest = line, ""
    kind = kind.strip()
    site = {}
    for tok in rest.split():
        m = _KV.match(tok)
        if not m:
            raise PatternMismatchError(f"bad site token {tok!r} in {line.strip()!r}")
        site[m.group(1)] = _site_value(m.group(2))
    return MoveDescriptor(kind, site)


def parse_move_plan(text: str) -> list[MoveDescriptor]:
    plan = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            plan.append(parse_move(line))
        except PatternMismatchError as exc:
            raise PatternMismatchError(f"plan line {lineno}: {exc}") from None
    return plan


# ---- rewrite engine --------------------------------------------------------------

@dataclass(frozen=True)
class Created:
    name: str
    parent: Optional[int] = None


@dataclass
class NewCrossing:
    cid: int
    ports: list           # 4 tokens, counterclockwise
    over: int             # 0: ports 0/2 are the over line, 1: ports 1/3
    incoming: set         # indices of incoming ports
    hints: list           # 4 corner hints, corner i between ports i and i+1


@dataclass
class _RewriteResult:
    diagram: LinkDiagram
    created: dict
    deleted: tuple
    merged: dict
    inherit: dict


def _rewrite(d: LinkDiagram, removed: set, new: list, joins=(), created_order=(),
             merge_keep: Optional[tuple] = None) -> _RewriteResult:
    wires: dict = {}      # node -> list of wire ids
    wire_list: list = []  # (u, v, old label or None, inherited label or None)

    def wire(u, v, label=None, source=None):
        wires.setdefault(u, []).append(len(wire_list))
        wires.setdefault(v, []).append(len(wire_list))
        wire_list.append((u, v, label, source))

    cut = set()
    for nc in new:
        for tok in nc.ports:
            if tok[0] == "at":
                cut.add((tok[1], tok[2]))
    for lab, (p, q) in d.ports_of.items():
        if p in cut or q in cut:
            _require(p in cut and q in cut, "internal: half-cut edge")
            continue
        wire(("o",) + p, ("o",) + q, label=lab)
    internal: dict = {}
    for nc in new:
        for idx, tok in enumerate(nc.ports):
            node = ("n", nc.cid, idx)
            if tok[0] == "old":
                wire(("o", tok[1], tok[2]), node)
            elif tok[0] == "at":
                port = (tok[1], tok[2])
                wire(("o",) + port, node, source=d.by_id[port[0]].arcs[port[1]])
            elif tok[0] == "int":
                internal.setdefault(tok[1], []).append(node)
            else:
                raise ValueError(tok)
    for name, nodes in internal.items():
        _require(len(nodes) == 2, f"internal: edge {name} has {len(nodes)} ends")
        wire(nodes[0], nodes[1])
    for u, v in joins:
        wire(("o",) + tuple(u), ("o",) + tuple(v))

    def live(node):
        return node[0] == "n" or node[1] not in removed

    live_nodes = [("o", c.id, p) for c in d.crossings if c.id not in removed for p in range(4)]
    live_nodes += [("n", nc.cid, i) for nc in new for i in range(4)]
    used_wires: set = set()
    visited: set = set()
    links = []
    for start in live_nodes:
        if start in visited:
            continue
        ws = wires.get(start, [])
        _require(len(ws) == 1, f"internal: live port {start} has {len(ws)} wires")
        visited.add(start)
        cur, wid = start, ws[0]
        olds, sources = [], []
        while True:
            used_wires.add(wid)
            u, v, lab, src = wire_list[wid]
            if lab is not None:
                olds.append(lab)
                sources.append(lab)
            if src is not None:
                sources.append(src)
            cur = v if u == cur else u
            if live(cur):
                break
            rest = [w for w in wires[cur] if w != wid]
            _require(len(rest) == 1, f"internal: dangling removed port {cur}")
            wid = rest[0]
        visited.add(cur)
        links.append((start, cur, olds, sources))
    for wid, (u, v, _, _) in enumerate(wire_list):
        if wid not in used_wires and len(wires[u]) == 2 and len(wires[v]) == 2:
            raise DiagramValidationError("move would leave a crossing-free component")

    # labels
    used = set()
    next_label = max(d.ports_of) + 1
    label_of = {}
    inherit = {}
    for start, end, olds, sources in links:
        if len(olds) == 1 and olds[0] not in used:
            lab = olds[0]
        else:
            lab = next_label
            next_label += 1
            if sources:
                inherit[lab] = sources[0]
        used.add(lab)
        label_of[start] = lab
        label_of[end] = lab

    # crossings
    rot = {}
    xs = []
    for c in d.crossings:
        if c.id in removed:
            continue
        xs.append(Crossing(c.id, c.sign, tuple(label_of[("o", c.id, p)] for p in range(4))))
    for nc in new:
        under = {(1 - nc.over) % 2, (1 - nc.over) % 2 + 2}
        u = [i for i in under if i in nc.incoming]
        o = [i for i in range(4) if i not in under and i in nc.incoming]
        if len(u) != 1 or len(o) != 1 or len(nc.incoming) != 2:
            raise PatternMismatchError(f"internal: bad orientation at new crossing {nc.cid}")
        u = u[0]
        sign = 1 if (o[0] - u) % 4 == 3 else -1
        arcs = tuple(label_of[("n", nc.cid, (u + j) % 4)] for j in range(4))
        rot[nc.cid] = u
        xs.append(Crossing(nc.cid, sign, arcs))
    xs.sort(key=lambda c: c.id)
    bare = LinkDiagram(tuple(xs))
    if not xs:
        raise DiagramValidationError("move would remove every crossing")
    validate_structure(bare)

    # regions
    hints = {}
    for (cid, k), rid in d.corner_region.items():
        if cid not in removed:
            hints[(cid, k)] = rid
    for nc in new:
        u = rot[nc.cid]
        for i, h in enumerate(nc.hints):
            hints[(nc.cid, (i - u) % 4)] = h
    faces = trace_faces(bare)
    if len(faces) != len(xs) + 2:
        raise DiagramValidationError("move produced a non-planar or split diagram")
    assigned = []
    merged = {}
    for face in faces:
        hs = [hints[c] for c in face]
        tags = {h for h in hs if isinstance(h, Created)}
        olds = {h for h in hs if not isinstance(h, Created)}
        if tags:
            if len(tags) != 1:
                raise PatternMismatchError("internal: two created regions share a face")
            tag = next(iter(tags))
            if olds - ({tag.parent} if tag.parent is not None else set()):
                raise PatternMismatchError("internal: created region overlaps an old one")
            assigned.append((face, tag))
        elif len(olds) == 1:
            assigned.append((face, next(iter(olds))))
        elif olds:
            if merge_keep is None or not olds <= set(merge_keep):
                raise PatternMismatchError(f"internal: unexpected merge of regions {sorted(olds)}")
            keep = merge_keep[0]
            for r in olds:
                if r != keep:
                    merged[r] = keep
            assigned.append((face, keep))
        else:
            raise PatternMismatchError("internal: face without region hint")
    olds_used = [r for _, r in assigned if not isinstance(r, Created)]
    if len(olds_used) != len(set(olds_used)):
        raise PatternMismatchError("internal: a region was split without being declared")
    tags_used = [r for _, r in assigned if isinstance(r, Created)]
    if len(tags_used) != len(set(tags_used)):
        raise PatternMismatchError("internal: created region appears twice")
    nid = d.next_region_id
    created = {}
    for name in created_order:
        for _, r in assigned:
            if isinstance(r, Created) and r.name == name:
                created[name] = nid
                nid += 1
    corner_region = {}
    for face, r in assigned:
        rid = created[r.name] if isinstance(r, Created) else r
        for corner in face:
            corner_region[corner] = rid
    out = LinkDiagram(bare.crossings, corner_region, nid)
    survivors = set(corner_region.values())
    deleted = tuple(r for r in d.region_ids if r not in survivors)
    return _RewriteResult(out, created, deleted, merged, inherit)


# ---- helpers ----------------------------------------------------------------------

def _require(cond, msg):
    if not cond:
        raise PatternMismatchError(msg)


def _get(site, key, kind):
    if key not in site:
        raise PatternMismatchError(f"{kind}: site needs {key}=")
    return site[key]


def _region_corners(d: LinkDiagram, rid: int) -> tuple[Corner, ...]:
    _require(rid in d.regions, f"no region {rid}")
    return d.regions[rid]


# ---- R1 -------------------------------------------------------------------------

def _r1(d: LinkDiagram, edge: int, side: str, sign: int):
    _require(edge in d.arcs, f"R1: no edge {edge}")
    _require(side in ("left", "right"), "R1: side must be left or right")
    arc = d.arcs[edge]
    t, h = arc.tail, arc.head
    b, a = (arc.left, arc.right) if side == "left" else (arc.right, arc.left)
    k = d.next_crossing_id
    c = Created("c")
    tt, hh = ("at",) + t, ("at",) + h
    loop = ("int", "loop")
    if side == "left":
        ports, incoming, hints = [loop, loop, tt, hh], {1, 2}, [c, b, a, b]
    else:
        ports, incoming, hints = [hh, tt, loop, loop], {1, 2}, [a, b, c, b]
    for over in (0, 1):
        nc = NewCrossing(k, ports, over, incoming, hints)
        under = {(1 - over) % 2, (1 - over) % 2 + 2}
        u = next(i for i in under if i in incoming)
        o = next(i for i in range(4) if i not in under and i in incoming)
        if (1 if (o - u) % 4 == 3 else -1) == sign:
            break
    res = _rewrite(d, set(), [nc], created_order=("c",))
    roles = {"a": a, "b": b, "c": res.created["c"]}
    corr = RegionCorrespondence("R1", roles, (res.created["c"],), res.deleted,
                                arc_inherit=res.inherit)
    return res.diagram, corr, k


def _r1_inverse(d: LinkDiagram, site):
    if "region" in site:
        corners = _region_corners(d, site["region"])
        _require(len(corners) == 1, f"R1^-1: region {site['region']} is not a monogon")
        cid, k = corners[0]
    else:
        cid = _get(site, "crossing", "R1^-1")
        _require(cid in d.by_id, f"R1^-1: no crossing {cid}")
        mono = [corners[0] for corners in d.regions.values()
                if len(corners) == 1 and corners[0][0] == cid]
        _require(len(mono) == 1, f"R1^-1: crossing {cid} does not bound exactly one monogon")
        cid, k = mono[0]
    c = d.corner_of(cid, k)
    b = d.corner_of(cid, k + 1)
    a = d.corner_of(cid, k + 2)
    _require(d.corner_of(cid, k + 3) == b, "R1^-1: kink corners do not match the template")
    joins = [((cid, (k + 2) % 4), (cid, (k + 3) % 4))]
    res = _rewrite(d, {cid}, [], joins=joins)
    roles = {"a": a, "b": b, "c": c}
    return res.diagram, RegionCorrespondence("R1^-1", roles, (), res.deleted,
                                             arc_inherit=res.inherit)


# ---- R2 -------------------------------------------------------------------------

def _side_of(arc, b, explicit, name):
    if explicit is not None:
        _require(explicit in ("left", "right"), f"R2: {name}_side must be left or right")
        _require((arc.left if explicit == "left" else arc.right) == b,
                 f"R2: region {b} is not on the {explicit} of edge {arc.label}")
        return explicit == "left"
    _require(b in (arc.left, arc.right), f"R2: edge {arc.label} does not border region {b}")
    _require(arc.left != arc.right, f"R2: edge {arc.label} has region {b} on both sides; give {name}_side=")
    return arc.left == b


def _r2(d: LinkDiagram, site):
    e1 = _get(site, "over", "R2")
    e2 = _get(site, "under", "R2")
    b = _get(site, "region", "R2")
    _require(e1 in d.arcs and e2 in d.arcs, "R2: unknown edge")
    _require(e1 != e2, "R2: over and under edges must differ")
    _require(b in d.regions, f"R2: no region {b}")
    A1, A2 = d.arcs[e1], d.arcs[e2]
    left1 = _side_of(A1, b, site.get("over_side"), "over")
    left2 = _side_of(A2, b, site.get("under_side"), "under")
    a = A1.right if left1 else A1.left
    c = A2.right if left2 else A2.left
    east1, west1 = (A1.tail, A1.head) if left1 else (A1.head, A1.tail)
    west2, east2 = (A2.tail, A2.head) if left2 else (A2.head, A2.tail)
    ye, yw = d.next_crossing_id, d.next_crossing_id + 1
    mid, ubot = ("int", "mid"), ("int", "ubot")
    dtag, etag = Created("d", parent=b), Created("e")
    # ports: E, N, W, S
    in_e = {1} if left1 else {3}
    in_w = {3} if left1 else {1}
    if left2:
        in_w, in_e = in_w | {2}, in_e | {2}
    else:
        in_e, in_w = in_e | {0}, in_w | {0}
    half = site.get("new_half", "east")
    _require(half in ("east", "west"), "R2: new_half must be east or west")
    he, hw = (dtag, b) if half == "east" else (b, dtag)
    east = NewCrossing(ye, [("at",) + east2, ("at",) + east1, mid, ubot], 1, in_e, [he, a, etag, c])
    west = NewCrossing(yw, [mid, ("at",) + west1, ("at",) + west2, ubot], 1, in_w, [a, hw, c, etag])
    res = _rewrite(d, set(), [east, west], created_order=("e", "d"))
    roles = {"a": a, "b": b, "c": c, "d": res.created["d"], "e": res.created["e"]}
    corr = RegionCorrespondence("R2", roles, (res.created["e"], res.created["d"]), res.deleted,
                                split={res.created["d"]: b}, arc_inherit=res.inherit)
    return res.diagram, corr


def _r2_inverse(d: LinkDiagram, site):
    e = _get(site, "region", "R2^-1")
    corners = _region_corners(d, e)
    _require(len(corners) == 2, f"R2^-1: region {e} is not a bigon")
    (x1, k1), (x2, k2) = corners
    _require(x1 != x2, "R2^-1: bigon corners lie on one crossing")
    _require(d.partner((x1, k1)) == (x2, (k2 + 1) % 4), "R2^-1: unexpected bigon shape")
    over_a1 = Crossing.is_over(k1)
    over_a2 = Crossing.is_over((k2 + 1) % 4)
    _require(over_a1 == over_a2, f"R2^-1: bigon {e} is not a Reidemeister II bigon (strands alternate)")
    b1 = d.corner_of(x1, k1 + 2)
    b2 = d.corner_of(x2, k2 + 2)
    _require(b1 != b2, "R2^-1: removing this bigon would split the diagram")
    a = d.corner_of(x1, k1 + 1)
    c = d.corner_of(x1, k1 + 3)
    keep = site.get("keep", min(b1, b2))
    _require(keep in (b1, b2), f"R2^-1: keep={keep} is not one of {b1}, {b2}")
    other = b2 if keep == b1 else b1
    joins = [((x1, (k1 + 2) % 4), (x2, (k2 + 3) % 4)), ((x1, (k1 + 3) % 4), (x2, (k2 + 2) % 4))]
    res = _rewrite(d, {x1, x2}, [], joins=joins, merge_keep=(keep, other))
    roles = {"a": a, "b": keep, "c": c, "d": other, "e": e}
    return res.diagram, RegionCorrespondence("R2^-1", roles, (), res.deleted, merged=res.merged,
                                             arc_inherit=res.inherit)


# ---- R3 -------------------------------------------------------------------------

def _r3(d: LinkDiagram, g: int, kind="R3"):
    corners = _region_corners(d, g)
    _require(len(corners) == 3, f"{kind}: region {g} is not a triangle")
    (x0, k0), (x1, k1), (x2, k2) = corners
    _require(len({x0, x1, x2}) == 3, f"{kind}: triangle {g} does not have three distinct crossings")
    P = [(x0, (k0 + 2) % 4), (x0, (k0 + 3) % 4), (x1, (k1 + 2) % 4),
         (x1, (k1 + 3) % 4), (x2, (k2 + 2) % 4), (x2, (k2 + 3) % 4)]
    over = [Crossing.is_over(p[1]) for p in P]
    # lines A = P0-P3 (x0, x1), B = P1-P4 (x0, x2), C = P2-P5 (x1, x2)
    counts = [over[0] + over[3], over[1] + over[4], over[2] + over[5]]
    _require(sorted(counts) == [0, 1, 2],
             f"{kind}: triangle {g} has no strand passing over both of its crossings")
    middle = counts.index(1)
    S = [d.corner_of(x0, k0 + 2), d.corner_of(x0, k0 + 3), d.corner_of(x1, k1 + 2),
         d.corner_of(x1, k1 + 3), d.corner_of(x2, k2 + 2), d.corner_of(x2, k2 + 3)]
    h = Created("h")
    tok = [("old",) + p for p in P]
    inA, inB, inC = ("int", "A"), ("int", "B"), ("int", "C")
    a_fwd = d.is_incoming(P[0])
    b_fwd = d.is_incoming(P[1])
    c_fwd = d.is_incoming(P[2])
    y1_in = {0 if b_fwd else 2, 1 if c_fwd else 3}
    y2_in = {0 if b_fwd else 2, 3 if a_fwd else 1}
    y3_in = {0 if c_fwd else 2, 3 if a_fwd else 1}
    y1 = NewCrossing(x2, [tok[1], tok[2], inB, inC], 0 if over[4] else 1, y1_in, [S[1], S[2], h, S[0]])
    y2 = NewCrossing(x0, [inB, tok[3], tok[4], inA], 0 if over[1] else 1, y2_in, [S[2], S[3], S[4], h])
    y3 = NewCrossing(x1, [inC, inA, tok[5], tok[0]], 0 if over[2] else 1, y3_in, [h, S[4], S[5], S[0]])
    res = _rewrite(d, {x0, x1, x2}, [y1, y2, y3], created_order=("h",))
    ia = (1 - 2 * middle) % 6
    idd = (ia + 3) % 6
    ce = [S[i] for i in (1, 3, 5) if i != ia]
    bf = [S[i] for i in (0, 2, 4) if i != idd]
    roles = {"a": S[ia], "b": bf[0], "c": ce[0], "d": S[idd], "e": ce[1], "f": bf[1],
             "g": g, "h": res.created["h"]}
    corr = RegionCorrespondence(kind, roles, (res.created["h"],), res.deleted,
                                arc_inherit=res.inherit)
    return res.diagram, corr


# ---- twist ------------------------------------------------------------------------

def _twist(d: LinkDiagram, site):
    b = _get(site, "region", "twist")
    edge = _get(site, "edge", "twist")
    corners = _region_corners(d, b)
    _require(len(corners) == 2, f"twist: region {b} is not a bigon")
    _require(edge in d.arcs, f"twist: no edge {edge}")
    arc = d.arcs[edge]
    _require(b in (arc.left, arc.right) and arc.left != arc.right,
             f"twist: edge {edge} does not separate region {b} from another region")
    side = "right" if arc.left == b else "left"
    signs = [site["sign"]] if "sign" in site else [-1, 1]
    last = None
    for sign in signs:
        d1, c1, _ = _r1(d, edge, side, sign)
        try:
            d2, c2 = _r3(d1, b, "R3")
        except PatternMismatchError as exc:
            last = exc
            continue
        r3 = c2.roles
        roles = {"a": c1.roles["b"], "b": b, "f": c1.roles["c"], "g": r3["h"],
                 "d": r3["a"], "c": r3["b"], "e": r3["f"]}
        _require(r3["d"] == roles["f"], "twist: kink is not opposite the twisted strand")
        corr = RegionCorrespondence("twist", roles, (roles["f"], roles["g"]),
                                    tuple(sorted(set(c1.deleted) | set(c2.deleted))),
                                    arc_inherit=_compose_inherit(d, d1, c1.arc_inherit, c2.arc_inherit),
                                    steps=(c1, c2))
        return d2, corr
    raise PatternMismatchError(f"twist: no kink on edge {edge} makes region {b} an R3 triangle ({last})")


def _twist_inverse(d: LinkDiagram, site):
    g = _get(site, "region", "twist^-1")
    before = {r for r, cs in d.regions.items() if len(cs) == 1}
    d1, c1 = _r3(d, g, "R3^-1")
    new_cids = {cid for cid, _ in d.regions[g]}
    monos = [r for r, cs in d1.regions.items()
             if len(cs) == 1 and cs[0][0] in new_cids and r not in before]
    _require(len(monos) == 1, f"twist^-1: R3 at region {g} does not expose exactly one kink")
    d2, c2 = _r1_inverse(d1, {"region": monos[0]})
    roles = {"g": g, "b": c1.roles["h"], "f": monos[0], "a": c2.roles["b"]}
    corr = RegionCorrespondence("twist^-1", roles, (c1.roles["h"],),
                                tuple(sorted(set(c1.deleted) | set(c2.deleted))),
                                arc_inherit=_compose_inherit(d, d1, c1.arc_inherit, c2.arc_inherit),
                                steps=(c1, c2))
    return d2, corr


def _compose_inherit(d0: LinkDiagram, d1: LinkDiagram, first: Mapping[int, int],
                     second: Mapping[int, int]) -> dict:
    """Edge sources across two moves ``d0 -> d1 -> d2``, as labels of ``d0``."""
    def source(lab):
        if lab in first:
            return first[lab]
        # an edge of d1 that keeps a d0 label, or one drawn inside the first move's disk
        return lab if lab in d0.ports_of and lab in d1.ports_of else None

    out = {lab: src for lab, src in first.items() if lab not in second}
    for new, old in second.items():
        src = source(old)
        if src is not None:
            out[new] = src
    return out


# ---- entry point ------------------------------------------------------------------

def apply_move(d: LinkDiagram, m: MoveDescriptor) -> tuple[LinkDiagram, RegionCorrespondence]:
    if not d.has_regions:
        raise PatternMismatchError("apply_move needs a diagram with regions")
    site = dict(m.site)
    if m.base == "R1" and not m.inverse:
        default_sign = 1 if m.kind == "R1'" else -1
        sign = site.get("sign", default_sign)
        d2, corr, _ = _r1(d, _get(site, "edge", m.kind), site.get("side", "left"), sign)
        return d2, _rename(corr, m.kind)
    if m.base == "R1":
        d2, corr = _r1_inverse(d, site)
        return d2, _rename(corr, m.kind)
    if m.base == "R2" and not m.inverse:
        d2, corr = _r2(d, site)
        return d2, _rename(corr, m.kind)
    if m.base == "R2":
        d2, corr = _r2_inverse(d, site)
        return d2, _rename(corr, m.kind)
    if m.base == "R3":
        d2, corr = _r3(d, _get(site, "region", m.kind), m.kind)
        return d2, corr
    if m.kind == "twist":
        return _twist(d, site)
    return _twist_inverse(d, site)


def _rename(corr: RegionCorrespondence, kind: str) -> RegionCorrespondence:
    return RegionCorrespondence(kind, corr.roles, corr.created, corr.deleted, corr.merged,
                                corr.split, corr.arc_inherit, corr.steps)


def inverse_descriptor(m: MoveDescriptor, corr: RegionCorrespondence) -> MoveDescriptor:
    """A descriptor undoing ``m`` on the diagram it produced."""
    r = corr.roles
    if m.base == "R1" and not m.inverse:
        return MoveDescriptor(m.kind + "^-1", {"region": r["c"]})
    if m.base == "R2" and not m.inverse:
        return MoveDescriptor(m.kind + "^-1", {"region": r["e"], "keep": r["b"]})
    if m.base == "R3":
        inv = m.kind[:-3] if m.inverse else m.kind + "^-1"
        return MoveDescriptor(inv, {"region": r["h"]})
    if m.kind == "twist":
        return MoveDescriptor("twist^-1", {"region": r["g"]})
    raise PatternMismatchError(f"no inverse descriptor for {m.kind}")


def candidate_moves(d: LinkDiagram, kinds=None) -> list[MoveDescriptor]:
    """Every site where a move applies (same order on every call)."""
    kinds = set(kinds or ("R1", "R1'", "R2", "R3", "R1^-1", "R2^-1", "twist", "twist^-1"))
    out = []
    arcs = d.arcs
    for lab in sorted(arcs):
        for side in ("left", "right"):
            for kind in ("R1", "R1'"):
                if kind in kinds:
                    out.append(MoveDescriptor(kind, {"edge": lab, "side": side}))
    for rid, corners in d.regions.items():
        edges = sorted(lab for lab, a in arcs.items() if rid in (a.left, a.right) and a.left != a.right)
        if "R2" in kinds:
            for e1 in edges:
                for e2 in edges:
                    if e1 != e2:
                        out.append(MoveDescriptor("R2", {"over": e1, "under": e2, "region": rid}))
        if len(corners) == 3 and "R3" in kinds:
            out.append(MoveDescriptor("R3", {"region": rid}))
        if len(corners) == 3 and "twist^-1" in kinds:
            out.append(MoveDescriptor("twist^-1", {"region": rid}))
        if len(corners) == 1 and "R1^-1" in kinds:
            out.append(MoveDescriptor("R1^-1", {"region": rid}))
        if len(corners) == 2 and "R2^-1" in kinds:
            out.append(MoveDescriptor("R2^-1", {"region": rid}))
        if len(corners) == 2 and "twist" in kinds:
            for e in edges:
                out.append(MoveDescriptor("twist", {"region": rid, "edge": e}))
    good = []
    for m in out:
        try:
            apply_move(d, m)
        except (PatternMismatchError, DiagramValidationError):
            continue
        good.append(m)
    return good


__all__ = [
    "MoveDescriptor",
    "RegionCorrespondence",
    "apply_move",
    "candidate_moves",
    "inverse_descriptor",
    "parse_move",
    "parse_move_plan",
    "SLOTS",
    "Port",
]
