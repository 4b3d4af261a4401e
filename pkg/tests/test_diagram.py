import pytest
from conftest import diagram, read

from optlimit.diagram import (
    find_isomorphism,
    load_diagram,
    mirror,
    parse_diagram,
    reverse_components,
)
from optlimit.errors import DiagramInconsistencyError, DiagramSyntaxError
from optlimit.moves import apply_move, parse_move

NAMES = ["kink", "trefoil", "figure8"]


@pytest.mark.parametrize("name, crossings, edges, regions", [
    ("kink", 1, 2, 3),
    ("trefoil", 3, 6, 5),
    ("figure8", 4, 8, 6),
])
def test_counts(name, crossings, edges, regions):
    d = diagram(name)
    assert len(d.crossings) == crossings
    assert len(d.ports_of) == edges
    assert len(d.regions) == regions
    assert d.component_count == 1


@pytest.mark.parametrize("name", NAMES)
def test_euler_and_corner_count(name):
    d = diagram(name)
    # a connected 4-valent plane graph has n + 2 faces and 4n corners
    assert len(d.regions) == len(d.crossings) + 2
    assert sum(len(c) for c in d.regions.values()) == 4 * len(d.crossings)


def test_region_hints_are_honoured(fig8):
    assert fig8.slot_regions(1) == (3, 2, 1, 4)
    assert fig8.slot_regions(2) == (1, 2, 3, 6)
    assert fig8.slot_regions(3) == (6, 3, 4, 5)
    assert fig8.slot_regions(4) == (4, 1, 6, 5)


def test_adjacency_is_along_edges(fig8):
    pairs = {frozenset(p) for p in fig8.adjacent_pairs}
    assert frozenset((1, 2)) in pairs
    assert frozenset((1, 5)) not in pairs


@pytest.mark.parametrize("text, err", [
    ("", DiagramSyntaxError),
    ("# nothing here\n", DiagramSyntaxError),
    ("X+ 1 2 3", DiagramSyntaxError),
    ("Y 1 2 3 4", DiagramSyntaxError),
    ("X+ 1 2 3 4", DiagramInconsistencyError),
    ("X+ 1 2 2 1", DiagramInconsistencyError),
])
def test_bad_input(text, err):
    with pytest.raises(err):
        load_diagram(text)


@pytest.mark.parametrize("name", NAMES)
def test_text_round_trip(name):
    d = diagram(name)
    again = load_diagram(d.to_text())
    assert again.to_text() == d.to_text()
    assert again.regions == d.regions


def test_parse_without_regions_then_trace():
    d = parse_diagram(read("trefoil.pd"))
    assert not d.has_regions
    assert load_diagram(read("trefoil.pd")).has_regions


@pytest.mark.parametrize("name", NAMES)
def test_mirror_is_an_involution(name):
    d = diagram(name)
    m = mirror(d)
    assert [c.sign for c in m.crossings] == [-c.sign for c in d.crossings]
    assert mirror(m).to_text() == d.to_text()
    assert set(m.regions) == set(d.regions)


@pytest.mark.parametrize("name", NAMES)
def test_reverse_orientation_keeps_regions(name):
    d = diagram(name)
    r = reverse_components(d, [0])
    assert sorted(r.regions) == sorted(d.regions)
    assert reverse_components(r, [0]).to_text() == d.to_text()


def test_isomorphism_with_itself(fig8):
    iso = find_isomorphism(fig8, fig8)
    assert iso is not None
    assert len(iso.regions) == 6


def test_trefoil_is_not_its_mirror():
    d = diagram("trefoil")
    assert find_isomorphism(d, mirror(d)) is None


def test_r2_adds_two_regions(fig8):
    d2, corr = apply_move(fig8, parse_move("R2 @ over=7 under=2 region=4"))
    assert len(d2.regions) == 8
    assert len(d2.crossings) == 6
    assert corr.created == (7, 8)
