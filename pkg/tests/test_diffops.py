from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from joinmirror.diffops import (P1, P2, ThetaOperator, annihilates, fit_operator,
                                in_span, op_apply, q_operators, to_lcs010)
from joinmirror.periods import apery_series, period_x1, period_x1_lcs010
from joinmirror.series import Polynomial, TruncatedSeries, exponents_up_to

XY = ("z1", "z2")


def theta(variables, i):
    return ThetaOperator.theta(variables, i)


def mono(variables, exp, c=1):
    return ThetaOperator.multiplication(variables, exp, c)


def test_theta_eigenvalue():
    x = TruncatedSeries.variable(("x",), 4, "x")
    assert op_apply(theta(("x",), 0), x) == x


def test_p2_shape_on_monomial():
    s = TruncatedSeries.monomial(XY, 5, (1, 1))
    expected = TruncatedSeries(XY, 5, {(2, 1): 1, (1, 2): -1})
    assert op_apply(P2, s) == expected


def test_p1_p2_annihilate_period():
    omega = period_x1(12)
    assert annihilates(P1, omega, 11) == (True, None)
    assert annihilates(P2, omega, 11) == (True, None)


def test_theta_does_not_annihilate():
    ok, bad = annihilates(theta(XY, 0), period_x1(6), 5)
    assert not ok and bad == (1, 0)


def test_printed_p20_coefficient():
    z1, z2 = Polynomial.gens(XY)
    p20 = z1 * z1 + z1 * z2 * 11 + z2 * z2 * 10 + z1 * 11 + z2 * 11 - 1
    c = P1.coefficient((2, 0))
    assert c == p20 or c == -p20


def test_fit_recovers_p1():
    ops = fit_operator(period_x1(12), 2, 2)
    assert len(ops) == 1
    assert ops[0].proportional_to(P1)
    assert ops[0] == P1


def test_fit_cubic_shape_contains_p2():
    ops = fit_operator(period_x1(12), 3, 1)
    assert in_span(P2, ops)


def test_fit_apery_operator():
    (op,) = fit_operator(apery_series(20), 2, 2)
    x = ("x",)
    t = theta(x, 0)
    X = mono(x, (1,))
    one = ThetaOperator(x, {((0,), (0,)): 1})
    expected = t * t - X * (t * t * 11 + t * 11 + one * 3) - X * X * (t + one) * (t + one)
    assert op.proportional_to(expected)


def test_fit_geometric_series():
    geo = TruncatedSeries(("x",), 10, {(k,): 1 for k in range(11)})
    (op,) = fit_operator(geo, 1, 1)
    x = ("x",)
    expected = theta(x, 0) - mono(x, (1,)) * theta(x, 0) - mono(x, (1,))
    assert op.proportional_to(expected)
    assert annihilates(op, geo, 10)[0]


def test_fit_insufficient_data():
    with pytest.raises(ValueError):
        fit_operator(apery_series(6), 2, 2)


def test_fit_empty_nullspace():
    with pytest.raises(ValueError):
        fit_operator(apery_series(30), 1, 1)


def test_conjugation_examples():
    x = ("x",)
    t = theta(x, 0)
    one = ThetaOperator(x, {((0,), (0,)): 1})
    assert t.conjugate_by_monomial((1,)) == t - one
    assert P1.conjugate_by_monomial((0, 0)) == P1


def test_change_coordinates_identity_and_inversion():
    assert P1.change_torus_coordinates(((1, 0), (0, 1)), (1, 1), XY) == P1
    t = theta(("x",), 0)
    assert t.change_torus_coordinates(((-1,),), (1,), ("w",)) == -theta(("w",), 0)


def test_q_operators_annihilate_secondary_period():
    pi = period_x1_lcs010(12)
    q1, q2 = q_operators()
    assert annihilates(q1, pi, 11)[0]
    assert annihilates(q2, pi, 11)[0]


def test_literal_q2_fails():
    # without the w0 gauge the transported P2 does not kill the printed period
    moved = P2.change_torus_coordinates(((-1, 0), (-1, 1)), (-1, 1), ("w0", "w2"))
    literal = ThetaOperator(("w0", "w2"), {(a, t): c for (a, t), c in P2.items()})
    assert not annihilates(literal, period_x1_lcs010(10), 9)[0]
    assert to_lcs010(P2).proportional_to(moved.conjugate_by_monomial((-1, 0)).clear_monomial())


def test_operator_file_round_trip():
    for op in (P1, P2) + q_operators():
        assert ThetaOperator.loads(op.dumps()) == op


def test_p1_file_format_line():
    lines = P1.dumps().splitlines()
    assert lines[0] == "# variables: z1 z2"
    assert any(line.startswith("2 0 : ") for line in lines)


# -- properties --------------------------------------------------------------------------------

coef = st.integers(-4, 4)
keys = st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)),
                 st.tuples(st.integers(0, 2), st.integers(0, 2)))
operators = st.dictionaries(keys, coef, max_size=5).map(lambda d: ThetaOperator(XY, d))
series = st.dictionaries(st.sampled_from(list(exponents_up_to(2, 6))), coef,
                         max_size=12).map(lambda d: TruncatedSeries(XY, 6, d))


@given(operators, operators, series)
def test_composition_matches_sequential_application(a, b, s):
    lhs = op_apply(a.compose(b), s)
    rhs = op_apply(a, op_apply(b, s))
    assert lhs.agrees_with(rhs)


@given(operators, st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_conjugation_round_trip(op, e):
    back = op.conjugate_by_monomial(e).conjugate_by_monomial(tuple(-x for x in e))
    assert back == op


@given(operators)
def test_normal_form_is_fixpoint(op):
    if op.is_zero():
        return
    n = op.normalize()
    assert n.normalize() == n
    assert n.proportional_to(op)


@given(st.lists(st.integers(1, 3), min_size=2, max_size=2), st.integers(-3, 3))
def test_fit_round_trip(roots, c):
    # hypergeometric: theta (theta + b) s = c x (theta + a) s
    x = ("x",)
    a, b = roots
    coeffs = {(0,): Fraction(1)}
    for k in range(1, 13):
        coeffs[(k,)] = coeffs[(k - 1,)] * Fraction((k - 1) + a, k + b) * (c or 1)
    s = TruncatedSeries(x, 12, coeffs)
    for op in fit_operator(s, 2, 1):
        assert annihilates(op, s, 12)[0]
