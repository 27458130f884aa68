"""Reproduction harness: each acceptance check recomputes its numbers from
scratch and compares them with the published values."""

from __future__ import annotations

import random
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List

from .series import TruncatedSeries, exponents_up_to, series_hadamard_total


class Check:
    def __init__(self, ident: str, title: str):
        self.ident = ident
        self.title = title
        self.passed = True
        self.items: List[dict] = []
        self.notes: List[str] = []
        self.error: str | None = None
        self.seconds = 0.0

    def compare(self, label: str, computed, expected, required: bool = True) -> bool:
        ok = computed == expected
        self.items.append({"label": label, "computed": _plain(computed),
                           "expected": _plain(expected), "ok": ok, "required": required})
        if required and not ok:
            self.passed = False
        return ok

    def require(self, label: str, condition: bool) -> bool:
        return self.compare(label, bool(condition), True)

    def to_json(self) -> dict:
        return {"id": self.ident, "title": self.title, "passed": self.passed,
                "items": self.items, "notes": self.notes, "error": self.error,
                "seconds": round(self.seconds, 2)}

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        failed = [i["label"] for i in self.items if i["required"] and not i["ok"]]
        tail = f" ({self.error})" if self.error else (f" failed: {', '.join(failed[:5])}" if failed else "")
        return f"{self.ident} {status} {self.title}{tail}"


def _plain(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


# -- individual checks --------------------------------------------------------------------------


def check_a1(c: Check):
    from .diffops import P1, P2, fit_operator, in_span
    from .periods import period_x1
    omega = period_x1(12)
    fitted = fit_operator(omega, 2, 2)
    c.compare("order-2 nullspace dimension", len(fitted), 1)
    op = fitted[0]
    c.require("fitted operator proportional to P1", op.proportional_to(P1))
    for t in [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]:
        c.compare(f"p{t[0]}{t[1]}", str(op.coefficient(t)), str(P1.coefficient(t)))
    cubic = fit_operator(omega, 3, 1)
    c.require("P2 in the cubic-shape nullspace", in_span(P2, cubic))


def check_a2(c: Check):
    from .diffops import P1, P2, annihilates
    from .periods import period_x1
    omega = period_x1(12)
    for name, op in (("P1", P1), ("P2", P2)):
        ok, bad = annihilates(op, omega, 11)
        c.compare(f"{name} annihilates omega0 through degree 11", ok, True)
        if bad is not None:
            c.notes.append(f"{name} first fails at {bad}")


def check_a3(c: Check):
    from .diffops import annihilates, q_operators
    from .periods import period_x1_lcs010
    pi = period_x1_lcs010(12)
    for name, op in zip(("Q1", "Q2"), q_operators()):
        ok, bad = annihilates(op, pi, 11)
        c.compare(f"{name} annihilates the [0,1,0] period through degree 11", ok, True)


_A4_SPOTS = {(0, 1): 120, (1, 1): 2085, (2, 2): 569475, (3, 3): 418812780}
_A6_SPOTS = {(1, 1): 330, (2, 1): 2865, (2, 2): 6585, (3, 3): 283755}


def _compare_table(c: Check, computed, reference, low: int, high: int, spots):
    for beta in sorted(computed):
        if beta not in reference or sum(beta) > high:
            continue
        c.compare(f"n{beta}", computed[beta], reference[beta], required=sum(beta) >= low)
    for beta, v in spots.items():
        c.compare(f"n{beta} (printed)", computed.get(beta), v)


def check_a4(c: Check):
    from .givental import a_model_x1
    from .reference import BPS_X1
    _, n = a_model_x1(6)
    _compare_table(c, n, BPS_X1, 1, 6, _A4_SPOTS)


def check_a5(c: Check):
    from .bmodel import b_model_x1
    from .givental import a_model_x1
    N, n = a_model_x1(6)
    result = b_model_x1(6)
    m = result.couplings.metadata.get("matching_degree", 0) if \
        result.couplings.metadata.get("fallback_used") else 0
    c.notes.append(f"fallback used: {bool(m)}")
    if m:
        c.compare("fallback matching degree at most 3", m <= 3, True)
    for beta in sorted(N):
        if sum(beta) > m:
            c.compare(f"N{beta}", result.gw.get(beta), N[beta])
            c.compare(f"n{beta}", result.bps.get(beta), n[beta])


def check_a6(c: Check):
    from .bmodel import b_model_transported
    from .reference import BPS_Y1
    result = b_model_transported(6, "010")
    _compare_table(c, result.bps, BPS_Y1, 2, 6, _A6_SPOTS)
    low = [i for i in c.items if not i["required"]]
    bad = [i["label"] for i in low if not i["ok"]]
    c.notes.append("degree below 2: " + (f"discrepancies at {', '.join(bad)}" if bad
                                         else f"all {len(low)} entries agree"))


def check_a7(c: Check):
    from .bmodel import b_model_x0, fit_x0_operator
    from .diffops import annihilates
    from .givental import a_model_x0
    from .periods import period_x0
    op = fit_x0_operator()
    c.compare("operator order", op.order(), 4)
    ok, _ = annihilates(op, period_x0(12), 11)
    c.compare("annihilates sum A_d^2 x^d through degree 11", ok, True)
    _, n_a = a_model_x0(6)
    result = b_model_x0(6, op)
    for d in range(1, 7):
        c.compare(f"n{d}", result.bps.get((d,)), n_a[(d,)])
        c.compare(f"n{d} integral", isinstance(result.bps.get((d,)), int), True)


def check_a8(c: Check):
    from .hodge import PAIRINGS, euler_resolved, hodge_table
    c.compare("e(X1* resolved)", euler_resolved(PAIRINGS["X1*"]), 90)
    expected = {"X0*": (51, 1), "X1*": (47, 2), "X2*": (47, 2), "X3*": (43, 3)}
    table = hodge_table(0)
    for name, (h11, h21) in expected.items():
        row = table[name]
        c.compare(f"{name} (h11, h21)", (row["h11"], row["h21"]), (h11, h21))
        c.compare(f"{name} mirror swap", row["mirror_swap_holds"], True)


def check_a9(c: Check):
    from .cohomology import (calabi_yau_x0, calabi_yau_x1, calabi_yau_y1,
                             intersection_number, ring_grassmannian_2_5,
                             ring_projective_space, resolved_join_x0,
                             resolved_join_x1, resolved_join_y1)
    from .givental import gamma1_5_check
    gr = ring_grassmannian_2_5()
    s1 = gr.cls("s1")
    c.compare("integral of sigma1^6 on G(2,5)", intersection_number(gr, [s1] * 6), 5)
    small = [ring_projective_space(2), ring_projective_space(4), gr]
    for ring in small:
        c.require(f"{ring.name} associative", ring.check_associative())
    joins = [f()[0] for f in (resolved_join_x1, resolved_join_y1, resolved_join_x0)]
    for ring in joins:
        c.require(f"{ring.name} associative on 300 sampled triples", ring.check_associative(300))
    for ring in small + joins:
        c.require(f"{ring.name} graded", ring.check_graded())
        c.require(f"{ring.name} Poincare non-degenerate", ring.is_poincare_nondegenerate())
    for name, f in (("X1", calabi_yau_x1), ("Y1", calabi_yau_y1), ("X0", calabi_yau_x0)):
        ring = f().ring
        c.require(f"{name} ring associative", ring.check_associative())
        c.require(f"{name} ring Poincare non-degenerate", ring.is_poincare_nondegenerate())
    c.compare("series identities on 100 random cases", series_identity_failures(100), 0)
    c.require("Gamma1(5) convention check", gamma1_5_check())


def random_series(rng: random.Random, variables=("x", "y"), cap: int = 5,
                  unit: bool = False) -> TruncatedSeries:
    coeffs = {}
    for e in exponents_up_to(len(variables), cap):
        if rng.random() < 0.6:
            coeffs[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    if unit:
        coeffs[(0,) * len(variables)] = Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.randint(1, 3))
    return TruncatedSeries(variables, cap, coeffs)


def series_identity_failures(cases: int, seed: int = 5) -> int:
    """Ring axioms, reciprocal and Hadamard identities on random series; returns failures."""
    rng = random.Random(seed)
    failures = 0
    for _ in range(cases):
        a, b, c = (random_series(rng) for _ in range(3))
        u = random_series(rng, unit=True)
        ones = TruncatedSeries(("t",), 5, {(k,): 1 for k in range(6)})
        ok = ((a * b) * c == a * (b * c) and a * b == b * a
              and a * (b + c) == a * b + a * c
              and u * u.reciprocal() == TruncatedSeries.one(a.variables, 5)
              and series_hadamard_total(ones, a) == a)
        failures += not ok
    return failures


CHECKS: Dict[str, tuple] = {
    "A1": ("operator recovery by fitting", check_a1, "diffops"),
    "A2": ("P1 and P2 annihilate the period", check_a2, "diffops"),
    "A3": ("gauge-transformed operators at [0,1,0]", check_a3, "diffops"),
    "A4": ("A-model BPS numbers of X1", check_a4, "givental"),
    "A5": ("A-model and B-model agree at [1,0,0]", check_a5, "bmodel"),
    "A6": ("transported BPS numbers of Y1", check_a6, "bmodel"),
    "A7": ("one-parameter family of X0", check_a7, "bmodel"),
    "A8": ("Schoen Hodge numbers", check_a8, "hodge"),
    "A9": ("structural suites", check_a9, "cohomology"),
}


def run_check(ident: str) -> Check:
    title, fn, module = CHECKS[ident]
    c = Check(ident, title)
    start = time.perf_counter()
    try:
        fn(c)
    except Exception as exc:
        c.passed = False
        frames = traceback.extract_tb(exc.__traceback__)
        where = next((f.filename.rsplit("/", 1)[-1] for f in reversed(frames)
                      if "joinmirror" in f.filename), module)
        c.error = f"{where}: {type(exc).__name__}: {exc}"
    c.seconds = time.perf_counter() - start
    return c


def reproduce(idents=None, jobs: int = 1, progress: Callable[[Check], None] | None = None) -> List[Check]:
    idents = list(idents or CHECKS)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(run_check, idents))
        if progress:
            for r in results:
                progress(r)
        return results
    results = []
    for ident in idents:
        r = run_check(ident)
        if progress:
            progress(r)
        results.append(r)
    return results
