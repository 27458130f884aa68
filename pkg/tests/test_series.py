from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from joinmirror.series import (Polynomial, TruncatedSeries, exponents_up_to,
                               format_polynomial, parse_polynomial, reversion,
                               series_add, series_hadamard_total, series_mul,
                               series_reciprocal)
from joinmirror.periods import apery_series, multinomial_cube_series, period_x1

X = ("x",)
XY = ("x1", "x2")


def S(variables, cap, coeffs):
    return TruncatedSeries(variables, cap, coeffs)


def test_add_examples():
    assert series_add(S(X, 3, {(0,): 1, (1,): 3}), S(X, 3, {(1,): 2})) == S(X, 3, {(0,): 1, (1,): 5})
    a = S(XY, 4, {(1, 2): Fraction(1, 3)})
    assert a + TruncatedSeries.zero(XY, 4) == a
    assert S(XY, 2, {(1, 0): 1}) + S(XY, 2, {(0, 1): 1}) == S(XY, 2, {(1, 0): 1, (0, 1): 1})


def test_add_takes_smaller_cap():
    s = S(X, 5, {(4,): 1}) + S(X, 2, {(0,): 1})
    assert s.cap == 2 and s == S(X, 2, {(0,): 1})


def test_variable_mismatch_raises():
    with pytest.raises(ValueError):
        S(X, 2, {}) + S(("y",), 2, {})
    with pytest.raises(ValueError):
        series_mul(S(X, 2, {}), S(XY, 2, {}))


def test_mul_examples():
    assert series_mul(S(X, 2, {(0,): 1, (1,): 1}), S(X, 2, {(0,): 1, (1,): -1})) == S(X, 2, {(0,): 1, (2,): -1})
    a = S(XY, 3, {(1, 1): 2, (0, 3): -1})
    assert a * TruncatedSeries.one(XY, 3) == a
    b = S(XY, 1, {(0, 0): 1, (1, 0): 1, (0, 1): 1})
    assert b * b == S(XY, 1, {(0, 0): 1, (1, 0): 2, (0, 1): 2})


def test_reciprocal_examples():
    assert series_reciprocal(S(X, 3, {(0,): 1, (1,): -1})) == S(X, 3, {(k,): 1 for k in range(4)})
    assert series_reciprocal(TruncatedSeries.one(X, 4)) == TruncatedSeries.one(X, 4)
    r = series_reciprocal(S(XY, 2, {(0, 0): 1, (1, 0): 3}))
    assert r == S(XY, 2, {(0, 0): 1, (1, 0): -3, (2, 0): 9})


def test_reciprocal_needs_unit():
    with pytest.raises(ZeroDivisionError):
        series_reciprocal(S(X, 3, {(1,): 1}))


def test_hadamard_recovers_two_parameter_period():
    h = series_hadamard_total(apery_series(8), multinomial_cube_series(8))
    assert h == period_x1(8).rename(XY)
    assert h[(1, 1)] == 152


def test_hadamard_rejects_two_variable_first_argument():
    with pytest.raises(ValueError):
        series_hadamard_total(S(XY, 2, {}), S(XY, 2, {}))


def test_series_file_round_trip():
    s = S(XY, 4, {(0, 0): 1, (2, 1): Fraction(-7, 3), (0, 4): 5})
    text = s.dumps()
    assert text.splitlines()[0].startswith("#")
    assert TruncatedSeries.loads(text) == s


def test_storage_drops_terms_above_cap():
    s = S(X, 2, {(0,): 1, (5,): 9})
    assert dict(s.items()) == {(0,): 1}


def test_exp_log_inverse():
    a = S(XY, 5, {(1, 0): 2, (0, 1): Fraction(1, 2), (1, 1): -3})
    assert a.exp().log() == a


def test_reversion_inverts_map():
    x, y = (TruncatedSeries.variable(XY, 6, v) for v in XY)
    forward = [x * (x * 3 + y).exp(), y * (x - y * 2).exp()]
    inverse = reversion(forward)
    assert [f.substitute(inverse) for f in forward] == [x, y]


def test_polynomial_format_round_trip():
    p = Polynomial(("z1", "z2"), {(2, 0): 1, (1, 1): 11, (0, 0): -1, (0, 1): Fraction(3, 4)})
    assert parse_polynomial(format_polynomial(p), ("z1", "z2")) == p


# -- properties --------------------------------------------------------------------------------

small = st.fractions(min_value=-20, max_value=20, max_denominator=6)
CAP = 4
exps = list(exponents_up_to(2, CAP))


def series_strategy(unit=False):
    coeffs = st.dictionaries(st.sampled_from(exps), small, max_size=len(exps))

    def build(d, c0):
        if unit:
            d = dict(d)
            d[(0, 0)] = c0
        return S(XY, CAP, d)

    nonzero = small.filter(bool)
    return st.builds(build, coeffs, nonzero)


@given(series_strategy(), series_strategy(), series_strategy())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a


@given(series_strategy(unit=True))
def test_reciprocal_property(u):
    assert u * u.reciprocal() == TruncatedSeries.one(XY, CAP)


@given(series_strategy())
def test_hadamard_with_ones_is_identity(b):
    ones = S(("t",), CAP, {(k,): 1 for k in range(CAP + 1)})
    assert series_hadamard_total(ones, b) == b


@given(series_strategy())
def test_dumps_loads_property(a):
    assert TruncatedSeries.loads(a.dumps()) == a
