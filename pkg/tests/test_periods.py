from __future__ import annotations

from joinmirror.periods import (apery_gamma1_5, apery_series, multinomial_cube_series,
                                period_x0, period_x1, period_x1_lcs010)
from joinmirror.series import series_hadamard_total


def test_apery_values():
    assert [apery_gamma1_5(d) for d in range(6)] == [1, 3, 19, 147, 1251, 11253]


def test_period_x0_coefficients():
    s = period_x0(6)
    assert (s[(0,)], s[(1,)], s[(2,)]) == (1, 9, 361)


def test_period_x1_coefficients():
    s = period_x1(6)
    assert (s[(0, 0)], s[(1, 0)], s[(1, 1)]) == (1, 3, 152)


def test_period_lcs010_coefficients():
    s = period_x1_lcs010(6)
    assert (s[(0, 0)], s[(1, 0)], s[(0, 1)]) == (1, 3, 1)


def test_period_x1_is_hadamard_product():
    assert period_x1(10).rename(("x1", "x2")) == series_hadamard_total(
        apery_series(10), multinomial_cube_series(10))


def test_restriction_to_axis_is_apery():
    axis = period_x1(10).restrict({1: 0})
    assert {e[0]: c for e, c in axis.items()} == {e[0]: c for e, c in apery_series(10).items()}


def test_symmetry():
    s = period_x1(9)
    assert s.permute([1, 0]).rename(s.variables) == s
    w = period_x1_lcs010(9)
    assert w.permute([1, 0]).rename(w.variables) != w


def test_cache_round_trip(tmp_path, monkeypatch, caplog):
    monkeypatch.setenv("JOINMIRROR_CACHE", str(tmp_path))
    cold = period_x1(9)
    files = list(tmp_path.glob("*.series"))
    assert len(files) == 1
    assert period_x1(9) == cold
    files[0].write_text("garbage : :\n")
    with caplog.at_level("WARNING"):
        assert period_x1(9) == cold
    assert "corrupted" in caplog.text
