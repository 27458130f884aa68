from __future__ import annotations

from fractions import Fraction

import pytest

from joinmirror.bmodel import CHARTS, fit_x0_operator, frobenius_solve, mirror_map
from joinmirror.cohomology import ring_projective_space
from joinmirror.givental import (a_model_x0, a_model_x1, gamma1_5_check, gw_from_j,
                                 i_function_x0, i_function_x1, j_grassmannian_2_5,
                                 j_projective, mirror_transform, x0_geometry,
                                 x1_geometry)
from joinmirror.periods import period_x0, period_x1
from joinmirror.reference import BPS_X1


def test_j_projective_low_degrees():
    p2 = ring_projective_space(2)
    h = p2.cls("h")
    assert j_projective(p2, [h], [2], (0,)) == p2.one()
    # at z = 1, 1/(1+h)^3 = 1 - 3h + 6h^2
    assert j_projective(p2, [h], [2], (1,)) == p2.one() - h * 3 + h * h * 6


def test_j_grassmannian_degree_zero():
    j = j_grassmannian_2_5(0)
    assert j == j.ring.one()


def test_gamma1_5_convention():
    assert gamma1_5_check(8)


def test_i_function_scalar_parts():
    assert i_function_x0(6).scalar().rename(("x",)) == period_x0(6)
    s = i_function_x1(6).scalar()
    assert s.rename(("z1", "z2")) == period_x1(6)
    assert s[(1, 1)] == 152 and s[(0, 0)] == 1
    assert i_function_x0(4).scalar()[(2,)] == 361


def test_mirror_map_lowest_order():
    res = mirror_transform(i_function_x1(4), x1_geometry().D)
    for i, f in enumerate(res.forward):
        unit = tuple(int(j == i) for j in range(2))
        assert f[unit] == 1
        assert all(sum(e) >= 1 for e, _ in f.items())


def test_normalized_j_has_no_correction_at_first_order():
    res = mirror_transform(i_function_x1(5), x1_geometry().D)
    first = res.J.z_coefficient(1)
    assert all(not any(b) or c.is_zero() for b, c in first.terms.items())


def test_mirror_map_agrees_with_frobenius_x1():
    res = mirror_transform(i_function_x1(6), x1_geometry().D)
    chart = CHARTS["100"]
    forward, _ = mirror_map(frobenius_solve(chart.operators(), chart, 6))
    assert [f.rename(("x1", "x2")) for f in forward] == list(res.forward)


def test_mirror_map_agrees_with_frobenius_x0():
    res = mirror_transform(i_function_x0(6), [x0_geometry().L])
    forward, _ = mirror_map(frobenius_solve([fit_x0_operator()], None, 6))
    assert forward[0].rename(("x",)) == res.forward[0]


def test_gw_x1_printed_values():
    N, n = a_model_x1(4)
    assert N[(0, 1)] == 120 and N[(1, 1)] == 2085
    assert N[(0, 2)] == 120
    assert n[(2, 2)] == 569475


def test_bps_x1_table_and_symmetry():
    _, n = a_model_x1(6)
    for beta, v in n.items():
        assert v == n[beta[::-1]]
        if beta in BPS_X1:
            assert v == BPS_X1[beta]


def test_x0_bps_integral():
    _, n = a_model_x0(5)
    assert all(isinstance(v, int) for v in n.values())
    assert n[(1,)] == 325


def test_divisor_pairings_must_agree():
    res = mirror_transform(i_function_x1(3), x1_geometry().D)
    res.divisors = [res.divisors[0], res.divisors[0] * Fraction(2)]
    with pytest.raises(ArithmeticError):
        gw_from_j(res)
