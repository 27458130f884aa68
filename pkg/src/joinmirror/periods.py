"""Closed-form period series of the mirror families."""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .cache import cached_series
from .series import TruncatedSeries, exponents_up_to, series_hadamard_total

__all__ = [
    "apery_gamma1_5",
    "apery_series",
    "multinomial_cube_series",
    "period_x0",
    "period_x1",
    "period_x1_lcs010",
]


@lru_cache(maxsize=None)
def apery_gamma1_5(d: int) -> int:
    """sum_k C(d,k)^2 C(d+k,k): 1, 3, 19, 147, 1251, ..."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return sum(comb(d, k) ** 2 * comb(d + k, k) for k in range(d + 1))


def _cube_ratio(d1: int, d2: int) -> int:
    return (factorial(d1 + d2) // (factorial(d1) * factorial(d2))) ** 3


def apery_series(cap: int, name: str = "x") -> TruncatedSeries:
    return TruncatedSeries((name,), cap, {(d,): apery_gamma1_5(d) for d in range(cap + 1)})


def multinomial_cube_series(cap: int, variables=("x1", "x2")) -> TruncatedSeries:
    """sum (d1+d2)!^3/(d1!^3 d2!^3) x1^d1 x2^d2."""
    return TruncatedSeries(variables, cap,
                           {e: _cube_ratio(*e) for e in exponents_up_to(2, cap)})


def period_x0(cap: int) -> TruncatedSeries:
    """sum A_d^2 x^d."""
    return cached_series(
        "period_x0",
        lambda: TruncatedSeries(("x",), cap,
                                {(d,): apery_gamma1_5(d) ** 2 for d in range(cap + 1)}),
        cap=cap)


def period_x1(cap: int, variables=("z1", "z2")) -> TruncatedSeries:
    """Two-parameter period: A_{d1+d2} (d1+d2)!^3/(d1!^3 d2!^3)."""
    series = cached_series(
        "period_x1",
        lambda: series_hadamard_total(apery_series(cap), multinomial_cube_series(cap)),
        cap=cap)
    return series.rename(variables)


def period_x1_lcs010(cap: int, variables=("w0", "w2")) -> TruncatedSeries:
    """Holomorphic period at the [0,1,0] point: A_{d0} (d0+d2)!^3/(d0!^3 d2!^3)."""
    return cached_series(
        "period_x1_lcs010",
        lambda: TruncatedSeries(variables, cap,
                                {(d0, d2): apery_gamma1_5(d0) * _cube_ratio(d0, d2)
                                 for d0, d2 in exponents_up_to(2, cap)}),
        cap=cap).rename(variables)
