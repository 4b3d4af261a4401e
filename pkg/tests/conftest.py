from __future__ import annotations

from pathlib import Path

import pytest

from optlimit.coloring import (
    complete_arc_colors,
    construct_solution,
    parse_color_file,
    shadow_coloring,
)
from optlimit.diagram import load_diagram
from optlimit.quandle import ParabolicElement

DATA = Path(__file__).resolve().parent.parent / "data"

T_MINUS = complex(-0.5, -(3 ** 0.5) / 2)
T_PLUS = complex(-0.5, (3 ** 0.5) / 2)

# 2 Im Li2(exp(i pi/3)), evaluated with mpmath at 30 digits
FIG8_VOLUME = 2.02988321281930725004240510855

def read(name: str) -> str:
    return (DATA / name).read_text()

def diagram(name: str):
    return load_diagram(read(name + ".pd"))

def fig8_arc_colors(t: complex) -> dict[int, ParabolicElement]:
    d = diagram("figure8")
    a = [ParabolicElement(0, t), ParabolicElement(1, 0), ParabolicElement(-t, 1 + t), ParabolicElement(-t, t)]
    return complete_arc_colors(d, {1: a[0], 3: a[1], 5: a[2], 7: a[3]})

def fig8_coloring(t: complex):
    d = diagram("figure8")
    return d, shadow_coloring(d, fig8_arc_colors(t), 1, ParabolicElement(1, 1), ParabolicElement(2, 1))

def fig8_expected(t: complex) -> dict[int, complex]:
    return {1: 1, 2: 2, 3: 3 * t + 5, 4: 6 * t + 7, 5: 4 * t + 9, 6: 2 * t + 3}

def sample_colors(name: str) -> dict[int, ParabolicElement]:
    fname = "figure8_tminus.colors" if name == "figure8" else name + ".colors"
    return complete_arc_colors(diagram(name), parse_color_file(read(fname)).arcs)

@pytest.fixture
def fig8():
    return diagram("figure8")

@pytest.fixture(params=[T_MINUS, T_PLUS], ids=["t-", "t+"])
def root(request):
    return request.param

@pytest.fixture
def fig8_solution(root):
    d, sc = fig8_coloring(root)
    return d, sc, construct_solution(sc)

def rel(x: complex, y: complex) -> float:
    return abs(x - y) / max(1.0, abs(y))

