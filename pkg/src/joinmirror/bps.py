"""Genus-zero multiple-cover formula: N_beta = sum over k | beta of n_{beta/k} / k^3."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Mapping, Tuple

Degree = Tuple[int, ...]


def _content(beta: Degree) -> int:
    g = 0
    for b in beta:
        g = gcd(g, b)
    return g


def gw_from_bps(n: Mapping[Degree, object]) -> Dict[Degree, Fraction]:
    """Forward direction: BPS numbers to Gromov-Witten invariants (same support bound)."""
    out: Dict[Degree, Fraction] = {}
    for beta in n:
        total = Fraction(0)
        for k in range(1, _content(beta) + 1):
            if _content(beta) % k == 0:
                total += Fraction(n.get(tuple(b // k for b in beta), 0)) / k ** 3
        out[beta] = total
    return out


def bps_from_gw(N: Mapping[Degree, object], require_integral: bool = True) -> Dict[Degree, Fraction | int]:
    """Invert the multiple-cover formula.

    Degrees are processed in order of increasing size, so every proper
    divisor beta/k is already known.  Raises ValueError on a non-integral
    result when `require_integral` is set."""
    n: Dict[Degree, Fraction] = {}
    for beta in sorted(N, key=lambda b: (sum(b), b)):
        if not any(beta):
            continue
        value = Fraction(N[beta])
        c = _content(beta)
        for k in range(2, c + 1):
            if c % k == 0:
                value -= n.get(tuple(b // k for b in beta), Fraction(0)) / k ** 3
        n[beta] = value
    if require_integral:
        bad = {b: v for b, v in n.items() if v.denominator != 1}
        if bad:
            beta = min(bad, key=lambda b: (sum(b), b))
            raise ValueError(f"non-integral BPS number at {beta}: {bad[beta]}")
        return {b: int(v) for b, v in n.items()}
    return n
