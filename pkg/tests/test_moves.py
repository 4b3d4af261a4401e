import pytest
from conftest import diagram, read

from optlimit.diagram import find_isomorphism
from optlimit.errors import PatternMismatchError
from optlimit.moves import (
    KINDS,
    MoveDescriptor,
    apply_move,
    candidate_moves,
    inverse_descriptor,
    parse_move,
    parse_move_plan,
)

NAMES = ["kink", "trefoil", "figure8"]


def test_parse_move_values():
    m = parse_move("R1' @ edge=3 side=right sign=+")
    assert m.kind == "R1'" and m.site == {"edge": 3, "side": "right", "sign": 1}
    assert m.base == "R1" and not m.inverse
    assert parse_move("twist^-1 @ region=4").inverse
    assert parse_move(m.to_text()) == m


def test_parse_plan_skips_comments():
    plan = parse_move_plan(read("figure8_mirror.plan"))
    assert [m.kind for m in plan] == ["R2", "R3", "twist", "twist^-1", "R2^-1"]
    assert parse_move_plan("# only a comment\n\n") == []


@pytest.mark.parametrize("text", ["R9 @ edge=1", "R1 @ edge", "R2 @ over=1 under=2 region=x y"])
def test_parse_errors(text):
    with pytest.raises(PatternMismatchError):
        parse_move_plan("R1 @ edge=1\n" + text)


def test_plan_error_names_line():
    with pytest.raises(PatternMismatchError, match="line 2"):
        parse_move_plan("R1 @ edge=1\nbogus @ a=1")


@pytest.mark.parametrize("move", [
    "R1 @ edge=99",
    "R1^-1 @ region=1",
    "R2^-1 @ region=1",
    "R3 @ region=1",
    "twist @ region=1 edge=1",
])
def test_pattern_mismatch(fig8, move):
    with pytest.raises(PatternMismatchError):
        apply_move(fig8, parse_move(move))


def test_all_kinds_known():
    assert {"R1", "R2", "R3", "twist"} <= KINDS
    assert all(k.replace("^-1", "") in KINDS for k in KINDS)


@pytest.mark.parametrize("name, count", [("kink", 10), ("trefoil", 48), ("figure8", 64)])
def test_candidate_counts(name, count):
    assert len(candidate_moves(diagram(name))) == count


def _same_up_to_names(a, b, renamed: int):
    iso = find_isomorphism(a, b)
    assert iso is not None
    moved = [k for k, v in iso.regions.items() if k != v]
    assert len(moved) <= renamed


@pytest.mark.parametrize("name", NAMES)
def test_forward_moves_undo(name):
    d = diagram(name)
    for m in candidate_moves(d, ("R1", "R1'", "R2", "twist")):
        d2, corr = apply_move(d, m)
        assert len(d2.regions) == len(d.regions) + len(corr.created) - len(corr.deleted)
        back, _ = apply_move(d2, inverse_descriptor(m, corr))
        # twist retires the bigon id and creates a fresh one
        # edge labels may be fresh; twist also retires the bigon id for a new one
        _same_up_to_names(back, d, 1 if m.kind == "twist" else 0)


def test_r3_is_an_involution_up_to_names(fig8):
    d2, _ = apply_move(fig8, parse_move("R2 @ over=7 under=2 region=4 new_half=west"))
    m = parse_move("R3 @ region=4")
    d3, corr = apply_move(d2, m)
    assert corr.created and corr.deleted == (4,)
    back, _ = apply_move(d3, inverse_descriptor(m, corr))
    _same_up_to_names(back, d2, 1)


def test_moves_keep_untouched_region_ids(fig8):
    d2, corr = apply_move(fig8, MoveDescriptor("R1", {"edge": 5, "side": "left"}))
    assert set(fig8.region_ids) <= set(d2.region_ids)
    assert set(d2.region_ids) - set(fig8.region_ids) == set(corr.created)
