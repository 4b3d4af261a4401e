import cmath
import random

import pytest
from conftest import diagram, fig8_expected

from optlimit.diagram import mirror
from optlimit.errors import DegenerateError
from optlimit.potential import (
    CrossingPotential,
    all_log_derivatives,
    build_potential,
    corner_weight,
    crossing_value,
    eval_log_derivative,
    eval_W,
    evaluate,
    region_equation,
)

NAMES = ["kink", "trefoil", "figure8"]


def random_point(d, rng):
    return {k: complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for k in d.region_ids}


def test_slot_a_weight():
    cp = CrossingPotential(1, 1, (1, 2, 3, 4))
    w = {1: 1, 2: 2, 3: 1, 4: 2}
    assert abs(corner_weight(cp, "a", w) - 1 / 3) < 1e-15
    neg = CrossingPotential(1, -1, (1, 2, 3, 4))
    assert abs(corner_weight(neg, "b", w) - 1 / corner_weight(cp, "b", w)) < 1e-15


def test_b_d_symmetry():
    rng = random.Random(2)
    for _ in range(50):
        a, b, c, d = (complex(rng.gauss(0, 2), rng.gauss(0, 2)) for _ in range(4))
        x = crossing_value(CrossingPotential(1, 1, (1, 2, 3, 4)), {1: a, 2: b, 3: c, 4: d})
        y = crossing_value(CrossingPotential(1, 1, (1, 2, 3, 4)), {1: a, 2: d, 3: c, 4: b})
        # swapping b and d can only shift the value by a multiple of 4 pi^2 through branches
        k = round((x - y).real / (4 * cmath.pi ** 2))
        assert abs(x - y - 4 * cmath.pi ** 2 * k) < 1e-9


@pytest.mark.parametrize("name", NAMES)
def test_log_derivative_is_finite_difference(name):
    d = diagram(name)
    pot = build_potential(d)
    rng = random.Random(5)
    h = 1e-7
    for _ in range(10):
        w = random_point(d, rng)
        lds = all_log_derivatives(pot, w)
        for k in d.region_ids:
            up, dn = dict(w), dict(w)
            up[k] += h * w[k]
            dn[k] -= h * w[k]
            fd = (eval_W(pot, up) - eval_W(pot, dn)) / (2 * h)
            assert abs(fd - lds[k]) <= 1e-5 * max(1.0, abs(lds[k]))
            assert eval_log_derivative(pot, d, k, w) == pytest.approx(lds[k], abs=1e-12)


@pytest.mark.parametrize("name", NAMES)
def test_exp_log_derivative_is_corner_product(name):
    d = diagram(name)
    pot = build_potential(d)
    rng = random.Random(6)
    for _ in range(20):
        w = random_point(d, rng)
        lds = all_log_derivatives(pot, w)
        for k in d.region_ids:
            prod = region_equation(pot, d, k, w)
            assert abs(cmath.exp(lds[k]) - prod) <= 1e-11 * max(1.0, abs(prod))


@pytest.mark.parametrize("name", NAMES)
def test_mirror_negates(name):
    d = diagram(name)
    m = mirror(d)
    pot, mpot = build_potential(d), build_potential(m)
    w = random_point(d, random.Random(9))
    assert abs(eval_W(mpot, w) + eval_W(pot, w)) < 1e-12
    for cp, mcp in zip(pot, mpot):
        assert cp.slots == mcp.slots and cp.sign == -mcp.sign


def test_solution_values(root):
    d = diagram("figure8")
    ev = evaluate(build_potential(d), fig8_expected(root))
    assert ev.residual_max < 1e-12
    assert ev.flattening_deviation < 1e-12
    assert sorted(set(ev.flattening.values())) == [-1, 0, 1]


def test_zero_value_is_degenerate():
    d = diagram("kink")
    w = {k: 1.0 + k for k in d.region_ids}
    w[d.region_ids[0]] = 0
    with pytest.raises(DegenerateError):
        evaluate(build_potential(d), w)
