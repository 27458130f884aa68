from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from joinmirror.bps import bps_from_gw, gw_from_bps


def test_multiple_cover_forward():
    N = gw_from_bps({(0, 1): 120, (0, 2): 105})
    assert N[(0, 2)] == 120


def test_primitive_classes_unchanged():
    n = {(1, 0): 7, (1, 1): 2085, (2, 3): 11}
    assert gw_from_bps(n) == n


def test_non_integral_raises():
    with pytest.raises(ValueError):
        bps_from_gw({(1,): Fraction(1, 2)})
    assert bps_from_gw({(1,): Fraction(1, 2)}, require_integral=False)[(1,)] == Fraction(1, 2)


degrees = st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any)


@given(st.dictionaries(degrees, st.integers(-1000, 1000)))
def test_round_trip(n):
    full = {b: n.get(b, 0) for b in [(i, j) for i in range(5) for j in range(5) if i or j]}
    assert bps_from_gw(gw_from_bps(full)) == full
