from __future__ import annotations

from fractions import Fraction

import pytest

from joinmirror.bmodel import (CHARTS, YukawaFallback, b_model_transported, b_model_x0,
                               bps_extract, discriminant_polynomial, fit_x0_operator,
                               frobenius_solve, gw_from_yukawa, kappa_zero_based,
                               mirror_map, run_chart, transport_lcs, x1_couplings,
                               yukawa_from_gw, yukawa_q_expansion, yukawa_solve)
from joinmirror.cohomology import kappa_x0, kappa_x1, kappa_y1
from joinmirror.diffops import P2, ThetaOperator, annihilates
from joinmirror.givental import a_model_x1
from joinmirror.periods import period_x0, period_x1, period_x1_lcs010
from joinmirror.reference import BPS_Y1
from joinmirror.series import Polynomial


@pytest.fixture(scope="module")
def couplings():
    return x1_couplings()


@pytest.fixture(scope="module")
def basis100():
    chart = CHARTS["100"]
    return frobenius_solve(chart.operators(), chart, 7)


def test_discriminant_shape():
    dis = discriminant_polynomial()
    assert {sum(e) for e, _ in dis.items()} == {6}
    assert all(c.denominator == 1 for _, c in dis.items())


def test_discriminant_on_a_coordinate_line():
    dis = discriminant_polynomial()
    z0, z1, z2 = Polynomial.gens(("z0", "z1", "z2"))
    line = Polynomial(dis.variables, {e: c for e, c in dis.items() if e[2] == 0})
    assert line == (z1 * z1 - z0 * z1 * 11 - z0 * z0) ** 3


@pytest.mark.parametrize("name, period", [("100", period_x1), ("010", period_x1_lcs010),
                                          ("001", period_x1_lcs010)])
def test_frobenius_holomorphic_period(name, period):
    chart = CHARTS[name]
    basis = frobenius_solve(chart.operators(), chart, 8)
    assert basis.omega0 == period(8).rename(chart.variables)
    assert basis.dimension == 6
    assert all(s.constant_term() == 0 for s in basis.single_log)


def test_chart_operators_annihilate_chart_periods():
    for name in ("010", "001"):
        chart = CHARTS[name]
        pi = chart.period(10)
        assert all(annihilates(op, pi, 9)[0] for op in chart.operators())


def test_mirror_map_inverse(basis100):
    forward, inverse = mirror_map(basis100)
    for i, f in enumerate(forward):
        unit = tuple(int(j == i) for j in range(2))
        assert f[unit] == 1
    assert [f.substitute(list(inverse)) for f in forward] == [
        f.variable(f.variables, f.cap, v) for f, v in zip(forward, forward[0].variables)]


def test_couplings_normalization_and_symmetry(couplings):
    kappa = kappa_zero_based(kappa_x1())
    assert couplings.value_at_origin() == kappa
    assert couplings[(0, 0, 1)] == couplings[(1, 0, 0)] == couplings[(0, 1, 0)]
    assert couplings.metadata["fallback_used"] is False
    assert couplings.metadata["solution_dimension"] == 1
    assert couplings.denominator == CHARTS["100"].discriminant() or \
        couplings.denominator == -CHARTS["100"].discriminant()


def test_q_expansion_matches_a_model(couplings, basis100):
    N, _ = a_model_x1(6)
    K = yukawa_q_expansion(couplings, basis100)
    target = yukawa_from_gw(N, couplings.value_at_origin(), K[(0, 0, 0)].variables, 7)
    for abc, series in K.items():
        assert series.agrees_with(target[abc], through=5)
    n = bps_extract(K, couplings.value_at_origin())
    assert (n[(0, 1)], n[(1, 1)], n[(2, 2)]) == (120, 2085, 569475)


def test_transport_round_trip(couplings):
    for name in ("010", "001"):
        there = transport_lcs(couplings, CHARTS["100"], CHARTS[name])
        back = transport_lcs(there, CHARTS[name], CHARTS["100"])
        assert back.equals(couplings)


def test_transported_constant_terms_match_y1(couplings):
    there = transport_lcs(couplings, CHARTS["100"], CHARTS["010"])
    assert there.value_at_origin() == kappa_zero_based(kappa_y1())


def test_transported_bps():
    n = b_model_transported(4, "010").bps
    assert (n[(0, 1)], n[(1, 0)], n[(1, 1)], n[(2, 2)]) == (30, 105, 330, 6585)
    assert all(n[b] == BPS_Y1[b] for b in n if b in BPS_Y1)


def test_chart_001_mirrors_010():
    a = b_model_transported(4, "010").bps
    b = b_model_transported(4, "001").bps
    assert a == b


def test_fallback_recovers_couplings(couplings, basis100):
    # P2 alone leaves several couplings free; matching low degrees pins them down
    N, _ = a_model_x1(6)
    dis = CHARTS["100"].discriminant()
    C = yukawa_solve([P2], [dis], kappa_zero_based(kappa_x1()), max_exponent=1,
                     fallback=YukawaFallback(basis100, N, 2))
    assert C.metadata["fallback_used"] and C.metadata["matching_degree"] == 2
    assert C.metadata["solution_dimension"] > 1
    assert C.equals(couplings)
    K = yukawa_q_expansion(C, basis100)
    N_b = gw_from_yukawa(K, C.value_at_origin())
    assert all(N_b[b] == N[b] for b in N_b if sum(b) > 2)


def test_underdetermined_without_fallback():
    dis = CHARTS["100"].discriminant()
    with pytest.raises(ArithmeticError):
        yukawa_solve([P2], [dis], kappa_zero_based(kappa_x1()), max_exponent=1)


def test_x0_operator():
    op = fit_x0_operator()
    assert op.order() == 4
    assert annihilates(op, period_x0(12), 11)[0]
    x = Polynomial.gens(("x",))[0]
    lead = op.coefficient((4,))
    expected = (x - 1) ** 2 * (x + 1) * (x * x - x * 123 + 1)
    assert lead == expected or lead == -expected


def test_x0_pipeline():
    r = b_model_x0(5)
    assert r.basis.dimension == 4
    assert r.couplings.value_at_origin() == {(0, 0, 0): kappa_x0()}
    assert r.bps[(1,)] == 325 and r.bps[(2,)] == 3200
    assert all(isinstance(v, int) for v in r.bps.values())


def test_missing_log_solution_reported():
    op = ThetaOperator(("x",), {((0,), (1,)): 1, ((1,), (0,)): -1})
    with pytest.raises(ArithmeticError, match="large complex structure"):
        frobenius_solve([op], None, 4)


def test_indicial_degeneration_reported():
    op = ThetaOperator(("x",), {((0,), (1,)): 1, ((0,), (0,)): -1, ((1,), (0,)): -1})
    with pytest.raises(ArithmeticError, match=r"degeneration at exponent \(1,\)"):
        frobenius_solve([op], None, 4)
