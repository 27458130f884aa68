"""
B-model side: Frobenius solutions, mirror maps, Yukawa couplings and their
instanton expansions at the large complex structure points of the
two-parameter family, plus the one-parameter family for X0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

from .bps import bps_from_gw
from .diffops import (LCS010_MATRIX, LCS010_SIGNS, P1, P2, ThetaOperator,
                      fit_operator, to_lcs010)
from .linalg import nullspace, rank, solve
from .periods import period_x1, period_x1_lcs010
from .series import (Exponent, Polynomial, TruncatedSeries, exponents_up_to,
                     reversion)

Triple = Tuple[int, ...]


# -- discriminant ---------------------------------------------------------------------------------


def discriminant_polynomial() -> Polynomial:
    """prod over the roots of t^2 + 11t - 1 of ((t z0 + z1 + z2)^3 - 27 t z0 z1 z2).

    Elements a + b t of Q[z][t]/(t^2 + 11t - 1) have norm a^2 - 11ab - b^2."""
    v = ("z0", "z1", "z2")
    z0, z1, z2 = Polynomial.gens(v)

    def mul(x, y):
        (a, b), (c, d) = x, y
        # t^2 = 1 - 11t
        return (a * c + b * d, a * d + b * c - b * d * 11)

    lin = (z1 + z2, z0)
    cube = mul(mul(lin, lin), lin)
    f = (cube[0], cube[1] - z0 * z1 * z2 * 27)
    a, b = f
    return a * a - a * b * 11 - b * b


def homogeneous_to_chart(poly: Polynomial, chart: "LcsChart") -> Polynomial:
    """Evaluate a homogeneous polynomial at the chart's homogeneous coordinates."""
    images = chart.homogeneous_coordinates
    out = {}
    for exp, c in poly.items():
        term = {(0,) * len(chart.variables): c}
        for (scale, mono), k in zip(images, exp):
            new = {}
            for e, v in term.items():
                if mono is None:
                    new[e] = v * Fraction(scale) ** k
                else:
                    new[tuple(x + k * m for x, m in zip(e, mono))] = v * Fraction(scale) ** k
            term = new
        for e, v in term.items():
            out[e] = out.get(e, 0) + v
    return Polynomial(chart.variables, out)


# -- charts ----------------------------------------------------------------------------------------


@dataclass
class LcsChart:
    """A large complex structure chart.

    z_j = signs[j] * prod_i w_i^matrix[j][i] expresses the affine coordinates
    of the [1,0,0] chart; the chart's holomorphic period is gauge * (a period
    of the [1,0,0] family), with gauge a monomial exponent in the chart variables."""

    name: str
    point: Tuple[int, int, int]
    variables: Tuple[str, ...]
    matrix: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...]
    gauge: Tuple[int, ...]
    homogeneous_coordinates: Tuple[Tuple[int, Tuple[int, ...] | None], ...]
    period: Callable[[int], TruncatedSeries]
    operators: Callable[[], List[ThetaOperator]]

    def discriminant(self) -> Polynomial:
        return homogeneous_to_chart(discriminant_polynomial(), self)


def _ops_100():
    return [P1, P2]


def _ops_010():
    return [to_lcs010(P1), to_lcs010(P2)]


def _ops_001():
    matrix = ((-1, 1), (-1, 0))
    out = []
    for op in (P1, P2):
        moved = op.change_torus_coordinates(matrix, (1, -1), ("u0", "u1"))
        out.append(moved.conjugate_by_monomial((-1, 0)).clear_monomial().normalize())
    return out


CHARTS: Dict[str, LcsChart] = {
    "100": LcsChart("100", (1, 0, 0), ("z1", "z2"), ((1, 0), (0, 1)), (1, 1), (0, 0),
                    ((1, None), (-1, (1, 0)), (-1, (0, 1))),
                    lambda cap: period_x1(cap), _ops_100),
    "010": LcsChart("010", (0, 1, 0), ("w0", "w2"), LCS010_MATRIX, LCS010_SIGNS, (-1, 0),
                    ((1, (1, 0)), (1, None), (-1, (0, 1))),
                    lambda cap: period_x1_lcs010(cap), _ops_010),
    "001": LcsChart("001", (0, 0, 1), ("u0", "u1"), ((-1, 1), (-1, 0)), (1, -1), (-1, 0),
                    ((1, (1, 0)), (-1, (0, 1)), (1, None)),
                    lambda cap: period_x1_lcs010(cap, ("u0", "u1")), _ops_001),
}


# -- Frobenius solutions --------------------------------------------------------------------------


def _log_monomials(nvars: int, max_log: int) -> List[Exponent]:
    return list(exponents_up_to(nvars, max_log))


def _theta_on_logs(poly_theta: Dict[Exponent, Fraction], shift: Exponent,
                   logs: List[Exponent]) -> List[List[Fraction]]:
    """Matrix of P(shift + d/dlog) on polynomials in the logs (columns = input monomials)."""
    index = {m: i for i, m in enumerate(logs)}
    mat = [[Fraction(0)] * len(logs) for _ in logs]
    for col, mono in enumerate(logs):
        for t, c in poly_theta.items():
            # prod_i (shift_i + D_i)^{t_i} applied to l^mono
            partial = {mono: Fraction(c)}
            for i, ti in enumerate(t):
                for _ in range(ti):
                    nxt = {}
                    for m, v in partial.items():
                        if shift[i]:
                            nxt[m] = nxt.get(m, 0) + v * shift[i]
                        if m[i]:
                            lower = tuple(x - (j == i) for j, x in enumerate(m))
                            nxt[lower] = nxt.get(lower, 0) + v * m[i]
                    partial = nxt
            for m, v in partial.items():
                if v:
                    mat[index[m]][col] += v
    return mat


class FrobeniusBasis:
    """Holomorphic period and single-log corrections at an LCS point.

    omega_i = omega0 * log(z_i) + single_log[i]."""

    def __init__(self, omega0: TruncatedSeries, single_log: List[TruncatedSeries],
                 dimension: int, verified_degree: int, log_solutions=None):
        self.omega0 = omega0
        self.single_log = single_log
        self.dimension = dimension
        self.verified_degree = verified_degree
        self.log_solutions = log_solutions or {}


def frobenius_solve(ops: Sequence[ThetaOperator], chart: LcsChart | None, cap: int,
                    max_log: int = 4) -> FrobeniusBasis:
    """Solve the operator system degree by degree with log-polynomial coefficients.

    At exponent n each operator contributes sum_a P_a(n - a + D) p_{n-a}, where
    P_a collects the theta-polynomial multiplying z^a and D differentiates in
    the logs.  Initial data p_0 ranges over the kernel of the z^0 parts; later
    coefficients are solved uniquely, and incompatible right-hand sides cut
    down the initial data.  The dimension reported is what survives."""
    variables = ops[0].variables
    n = len(variables)
    logs = _log_monomials(n, max_log)
    K = len(logs)
    split = []
    for op in ops:
        by_a: Dict[Exponent, Dict[Exponent, Fraction]] = {}
        for (a, t), c in op.items():
            if min(a) < 0:
                raise ValueError("operators must have polynomial coefficients")
            by_a.setdefault(a, {})[t] = c
        split.append(by_a)
    zero = (0,) * n
    indicial_rows = []
    for by_a in split:
        indicial_rows.extend(_theta_on_logs(by_a.get(zero, {}), zero, logs))
    params = nullspace(indicial_rows, K)
    P = len(params)
    # coefficient p_e as a K x P matrix: column j is the log polynomial for param j
    coeff: Dict[Exponent, List[List[Fraction]]] = {
        zero: [[params[j][i] for j in range(P)] for i in range(K)]}
    constraints: List[List[Fraction]] = []
    cache: Dict[Tuple[int, Exponent, Exponent], List[List[Fraction]]] = {}

    def block(k, a, shift):
        key = (k, a, shift)
        if key not in cache:
            cache[key] = _theta_on_logs(split[k].get(a, {}), shift, logs)
        return cache[key]

    for total in range(1, cap + 1):
        for e in _exponents_of(n, total):
            A_rows, B_rows = [], []
            for k, by_a in enumerate(split):
                rhs = [[Fraction(0)] * P for _ in range(K)]
                for a in by_a:
                    if a == zero:
                        continue
                    src = tuple(x - y for x, y in zip(e, a))
                    if min(src) < 0:
                        continue
                    mat = block(k, a, src)
                    prev = coeff[src]
                    for i in range(K):
                        row = mat[i]
                        for l in range(K):
                            if row[l]:
                                pl = prev[l]
                                for j in range(P):
                                    if pl[j]:
                                        rhs[i][j] -= row[l] * pl[j]
                A_rows.extend(block(k, zero, e))
                B_rows.extend(rhs)
            if rank(A_rows, K) < K:
                raise ArithmeticError(f"indicial degeneration at exponent {e}")
            sol = _solve_many(A_rows, B_rows, K, P)
            for i, row in enumerate(A_rows):
                resid = [sum((row[l] * sol[l][j] for l in range(K) if row[l]), Fraction(0))
                         - B_rows[i][j] for j in range(P)]
                if any(resid):
                    constraints.append(resid)
            coeff[e] = sol
    dim = P - (rank(constraints, P) if constraints else 0)

    def solution_for(initial: Exponent) -> Dict[Exponent, TruncatedSeries]:
        """Series coefficients of each log monomial for the solution whose
        z^0 coefficient is the single log monomial `initial`."""
        target = [Fraction(int(m == initial)) for m in logs]
        rows = [[params[j][i] for j in range(P)] for i in range(K)]
        try:
            x = solve(rows + constraints, target + [0] * len(constraints), P)
        except ValueError:
            raise ArithmeticError(f"no solution with leading log monomial {initial}; "
                                  "the origin is not a large complex structure point") from None
        out = {}
        for li, m in enumerate(logs):
            terms = {e: sum((c[li][j] * x[j] for j in range(P) if x[j]), Fraction(0))
                     for e, c in coeff.items()}
            s = TruncatedSeries(variables, cap, terms)
            if not s.is_zero():
                out[m] = s
        return out

    holo = solution_for(zero)
    omega0 = holo[zero]
    single = []
    for i in range(n):
        unit = tuple(int(j == i) for j in range(n))
        sol = solution_for(unit)
        if sol.get(unit) != omega0:
            raise ArithmeticError("log coefficient of a single-log solution is not omega0")
        single.append(sol.get(zero, TruncatedSeries.zero(variables, cap)))
    if chart is not None and not omega0.agrees_with(chart.period(cap).rename(variables)):
        raise ArithmeticError(f"holomorphic solution differs from the period at chart {chart.name}")
    return FrobeniusBasis(omega0, single, dim, cap)


def _exponents_of(n, total):
    from .series import exponents_of_degree
    return exponents_of_degree(n, total)


def _solve_many(A_rows, B_rows, K, P) -> List[List[Fraction]]:
    """Least-rows exact solve of A X = B for an injective A: pick K independent rows."""
    chosen, basis = [], []
    for i, row in enumerate(A_rows):
        if rank(basis + [row], K) > len(basis):
            basis.append(row)
            chosen.append(i)
            if len(basis) == K:
                break
    cols = []
    for j in range(P):
        cols.append(solve(basis, [B_rows[i][j] for i in chosen], K))
    return [[cols[j][l] for j in range(P)] for l in range(K)]


# -- mirror map ----------------------------------------------------------------------------------


def mirror_map(basis: FrobeniusBasis) -> Tuple[List[TruncatedSeries], Tuple[TruncatedSeries, ...]]:
    """q_i = z_i exp(s_i / omega0) and the inverse z_i(q)."""
    inv = basis.omega0.reciprocal()
    variables = basis.omega0.variables
    cap = basis.omega0.cap
    forward = []
    for i, s in enumerate(basis.single_log):
        z = TruncatedSeries.variable(variables, cap, variables[i])
        forward.append(z * (s * inv).exp())
    return forward, reversion(forward)


# -- Yukawa couplings ----------------------------------------------------------------------------


def sorted_triples(n: int) -> List[Triple]:
    return [tuple(t) for t in combinations_with_replacement(range(n), 3)]


class YukawaSet:
    """C_abc = numerators[abc] / denominator, symmetric in abc (indices from 0)."""

    def __init__(self, variables: Sequence[str], numerators: Mapping[Triple, Polynomial],
                 denominator: Polynomial, metadata: dict | None = None):
        self.variables = tuple(variables)
        self.numerators = {tuple(sorted(k)): v for k, v in numerators.items()}
        self.denominator = denominator
        self.metadata = dict(metadata or {})

    def __getitem__(self, abc) -> Tuple[Polynomial, Polynomial]:
        return self.numerators[tuple(sorted(abc))], self.denominator

    def equals(self, other: "YukawaSet") -> bool:
        if self.variables != other.variables:
            return False
        return all(self.numerators[k] * other.denominator == other.numerators[k] * self.denominator
                   for k in self.numerators)

    def scale(self, factor) -> "YukawaSet":
        return YukawaSet(self.variables, {k: v * Fraction(factor) for k, v in self.numerators.items()},
                         self.denominator, self.metadata)

    def value_at_origin(self) -> Dict[Triple, Fraction]:
        d0 = self.denominator.constant_term()
        if not d0:
            raise ZeroDivisionError("denominator vanishes at the origin")
        return {k: v.constant_term() / d0 for k, v in self.numerators.items()}


def _w_expansion(gamma: Exponent) -> List[Tuple[str, Triple, int | None, Fraction]]:
    """Express W_gamma = <Omega, theta^gamma Omega> through C and theta C.

    Returns terms (kind, triple, derivative index, coefficient)."""
    order = sum(gamma)
    idx = [i for i, k in enumerate(gamma) for _ in range(k)]
    if order <= 2:
        return []
    if order == 3:
        return [("C", tuple(sorted(idx)), None, Fraction(1))]
    if order == 4:
        out = []
        for pos in range(4):
            rest = idx[:pos] + idx[pos + 1:]
            out.append(("dC", tuple(sorted(rest)), idx[pos], Fraction(1, 2)))
        return out
    raise ValueError("only orders up to four are available")


def transversality_relations(ops: Sequence[ThetaOperator]) -> List[ThetaOperator]:
    """All m o L with m a theta monomial and total order 3 or 4."""
    out = []
    n = ops[0].nvars
    zero = (0,) * n
    for op in ops:
        o = op.order()
        for k in range(0, 5 - o):
            if o + k < 3:
                continue
            for t in exponents_up_to(n, k):
                if sum(t) != k:
                    continue
                prefix = ThetaOperator(op.variables, {(zero, t): 1})
                out.append(prefix.compose(op))
    return out


def _yukawa_system(ops, denominator: Polynomial, num_degree: int):
    variables = ops[0].variables
    n = len(variables)
    triples = sorted_triples(n)
    monos = list(exponents_up_to(n, num_degree))
    unknowns = [(tr, m) for tr in triples for m in monos]
    col_of = {u: i for i, u in enumerate(unknowns)}
    theta_den = [denominator.theta(i) for i in range(n)]
    rows: List[Dict[Exponent, Dict[int, Fraction]]] = []
    for rel in transversality_relations(ops):
        max_order = rel.order()
        eq: Dict[Exponent, Dict[int, Fraction]] = {}

        def add(poly: Polynomial, col: int, factor: Fraction):
            for e, c in poly.items():
                slot = eq.setdefault(e, {})
                slot[col] = slot.get(col, 0) + c * factor

        for (a, gamma), q in rel.items():
            for kind, tr, di, w in _w_expansion(gamma):
                for m in monos:
                    col = col_of[(tr, m)]
                    base = Polynomial.monomial(variables, tuple(x + y for x, y in zip(a, m)), q * w)
                    if max_order == 3:
                        add(base, col, Fraction(1))
                    elif kind == "C":
                        add(base * denominator, col, Fraction(1))
                    else:
                        add(base * (denominator * m[di] - theta_den[di]), col, Fraction(1))
        for e, slot in eq.items():
            rows.append(slot)
    dense = [[slot.get(i, 0) for i in range(len(unknowns))] for slot in rows]
    return unknowns, dense


def denominator_candidates(factors: Sequence[Polynomial], max_exponent: int = 2) -> List[Polynomial]:
    """Products of the given factors with exponents up to max_exponent, smallest first."""
    variables = factors[0].variables
    combos = list(exponents_up_to(len(factors), max_exponent * len(factors)))
    combos = [c for c in combos if max(c, default=0) <= max_exponent]
    combos.sort(key=lambda c: (sum(f.degree() * k for f, k in zip(factors, c)), c))
    out = []
    for c in combos:
        p = Polynomial.constant(variables, 1)
        for f, k in zip(factors, c):
            p = p * (f ** k)
        out.append(p)
    return out


def yukawa_solve(ops: Sequence[ThetaOperator], factors: Sequence[Polynomial],
                 kappa: Mapping[Triple, object], max_exponent: int = 2,
                 extra_degree: int = 0, fallback: "YukawaFallback | None" = None) -> YukawaSet:
    """Solve the transversality relations for the couplings.

    Denominators are tried in increasing degree; the first ansatz with a
    non-trivial solution space wins.  A one-dimensional space is scaled so
    the values at the origin equal kappa (indices from 0).  A larger space
    is cut down by `fallback`, if given, and is an error otherwise."""
    variables = ops[0].variables
    for den in denominator_candidates(factors, max_exponent):
        unknowns, rows = _yukawa_system(ops, den, den.degree() + extra_degree)
        basis = nullspace(rows, len(unknowns))
        if not basis:
            continue
        sets = []
        for vec in basis:
            nums: Dict[Triple, Dict[Exponent, Fraction]] = {}
            for (tr, m), c in zip(unknowns, vec):
                if c:
                    nums.setdefault(tr, {})[m] = c
            sets.append(YukawaSet(variables, {tr: Polynomial(variables, nums.get(tr, {}))
                                              for tr in sorted_triples(len(variables))}, den))
        if len(sets) > 1:
            if fallback is None:
                raise ArithmeticError(f"transversality relations leave {len(sets)} free couplings")
            try:
                out = fallback.match(sets, kappa)
            except ArithmeticError:
                continue
            out.metadata.update({"denominator": str(den), "solution_dimension": len(sets)})
            return out
        found = sets[0]
        return normalize_yukawa(found, kappa, {"denominator": str(den), "solution_dimension": 1,
                                               "fallback_used": False})
    raise ArithmeticError("no denominator in the ansatz admits a solution")


def yukawa_from_gw(N: Mapping[Exponent, object], kappa: Mapping[Triple, object],
                   variables: Sequence[str], cap: int) -> Dict[Triple, TruncatedSeries]:
    """The inverse of gw_from_yukawa: kappa_abc + sum N_beta beta_a beta_b beta_c q^beta."""
    n = len(variables)
    out = {}
    for abc in sorted_triples(n):
        coeffs = {(0,) * n: Fraction(kappa.get(abc, 0))}
        for beta, v in N.items():
            if any(beta) and sum(beta) < cap:
                coeffs[beta] = Fraction(v) * beta[abc[0]] * beta[abc[1]] * beta[abc[2]]
        out[abc] = TruncatedSeries(variables, cap, coeffs)
    return out


class YukawaFallback:
    """Fix the couplings left free by the transversality relations by matching
    a known instanton expansion through total degree `degree`.

    The expansion is linear in the numerators once the mirror map is fixed, so
    the match is a linear system on the coefficients of the solution basis.
    Agreement above `degree` is then an honest check."""

    def __init__(self, basis: FrobeniusBasis, gw: Mapping[Exponent, object], degree: int):
        self.basis = basis
        self.gw = dict(gw)
        self.degree = degree

    def match(self, sets: Sequence[YukawaSet], kappa: Mapping[Triple, object]) -> YukawaSet:
        variables = sets[0].variables
        kappa = {tuple(sorted(k)): Fraction(v) for k, v in kappa.items()}
        target = yukawa_from_gw(self.gw, kappa, variables, self.degree + 1)
        expansions = [yukawa_q_expansion(S, self.basis) for S in sets]
        rows, rhs = [], []
        for abc in sorted_triples(len(variables)):
            for e in exponents_up_to(len(variables), self.degree):
                rows.append([K[abc][e] for K in expansions])
                rhs.append(target[abc][e])
        if rank(rows, len(sets)) < len(sets):
            raise ArithmeticError(f"matching through degree {self.degree} does not fix the couplings")
        try:
            coeffs = solve(rows, rhs, len(sets))
        except ValueError:
            raise ArithmeticError("no combination of couplings matches the given expansion") from None
        nums = {}
        for abc in sorted_triples(len(variables)):
            total = Polynomial(variables)
            for a, S in zip(coeffs, sets):
                total = total + S.numerators[abc] * a
            nums[abc] = total
        return YukawaSet(variables, nums, sets[0].denominator,
                         {"fallback_used": True, "matching_degree": self.degree})


def normalize_yukawa(C: YukawaSet, kappa: Mapping[Triple, object], metadata=None) -> YukawaSet:
    values = C.value_at_origin()
    kappa = {tuple(sorted(k)): Fraction(v) for k, v in kappa.items()}
    scale = None
    for k, v in values.items():
        if v:
            s = kappa.get(k, Fraction(0)) / v
            if scale is None:
                scale = s
            elif s != scale:
                raise ArithmeticError("couplings at the origin are not proportional to kappa")
    if scale is None or scale == 0:
        raise ArithmeticError("couplings vanish at the origin")
    out = C.scale(scale)
    if out.value_at_origin() != {k: kappa.get(k, Fraction(0)) for k in values}:
        raise ArithmeticError("couplings at the origin are not proportional to kappa")
    out.metadata.update(metadata or {})
    return out


def yukawa_q_expansion(C: YukawaSet, basis: FrobeniusBasis) -> Dict[Triple, TruncatedSeries]:
    """K_abc(q) = C_ijk(z(q)) / omega0^2 * prod dlog z / dlog q.

    Dividing z_i(q) by q_i costs one degree, so the result is exact through
    one less than the cap of the Frobenius basis."""
    variables = C.variables
    cap = basis.omega0.cap
    n = len(variables)
    _, inverse = mirror_map(basis)
    z_of_q = [s.rename(variables) for s in inverse]
    omega_q = basis.omega0.substitute(z_of_q)
    den_q = C.denominator.to_series(variables, cap).substitute(z_of_q)
    prefactor = (omega_q * omega_q * den_q).reciprocal()
    jac = []
    for i in range(n):
        unit = tuple(int(j == i) for j in range(n))
        ratio = TruncatedSeries(variables, cap - 1,
                                {tuple(x - y for x, y in zip(e, unit)): c
                                 for e, c in z_of_q[i].items()})
        logratio = ratio.log()
        jac.append([logratio.theta(a) + int(a == i) for a in range(n)])
    c_q = {}
    for tr, num in C.numerators.items():
        c_q[tr] = num.to_series(variables, cap).substitute(z_of_q) * prefactor
    out = {}
    for abc in sorted_triples(n):
        total = TruncatedSeries.zero(variables, cap)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    term = c_q[tuple(sorted((i, j, k)))]
                    if term.is_zero():
                        continue
                    total = total + term * jac[i][abc[0]] * jac[j][abc[1]] * jac[k][abc[2]]
        out[abc] = total
    return out


def gw_from_yukawa(K: Mapping[Triple, TruncatedSeries], kappa: Mapping[Triple, object]
                   ) -> Dict[Exponent, Fraction]:
    """Read N_beta from K_abc = kappa_abc + sum N_beta beta_a beta_b beta_c q^beta.

    Every triple with a nonzero weight must give the same N_beta."""
    some = next(iter(K.values()))
    n = some.nvars
    table = {}
    for beta in exponents_up_to(n, some.cap):
        if not any(beta):
            for abc, s in K.items():
                if s[beta] != Fraction(kappa.get(abc, 0)):
                    raise ArithmeticError(f"classical term of K{abc} is {s[beta]}")
            continue
        values = set()
        for abc, s in K.items():
            w = beta[abc[0]] * beta[abc[1]] * beta[abc[2]]
            if w:
                values.add(s[beta] / w)
            elif s[beta]:
                raise ArithmeticError(f"K{abc} has an unexpected term at {beta}")
        if len(values) > 1:
            raise ArithmeticError(f"couplings disagree at {beta}: {values}")
        table[beta] = values.pop() if values else Fraction(0)
    return table


def bps_extract(K: Mapping[Triple, TruncatedSeries], kappa: Mapping[Triple, object]) -> Dict[Exponent, int]:
    return bps_from_gw(gw_from_yukawa(K, kappa))


# -- transport between charts --------------------------------------------------------------------


def _substitute_chart(poly: Polynomial, chart: LcsChart) -> Polynomial:
    """Rewrite a polynomial in the [1,0,0] coordinates in chart coordinates (Laurent)."""
    images = [(s, row) for s, row in zip(chart.signs, chart.matrix)]
    return Polynomial(chart.variables, poly.substitute_monomials(images, chart.variables))


def _substitute_inverse(poly: Polynomial, chart: LcsChart, target_vars) -> Polynomial:
    """Rewrite a polynomial in chart coordinates in the [1,0,0] coordinates."""
    inv = _integer_inverse(chart.matrix)
    # w_i = sign-adjusted prod z_j^inv[i][j]; signs: w_i = prod_j (s_j z_j)^inv[i][j]
    images = []
    for i in range(len(chart.variables)):
        scale = Fraction(1)
        for j, k in enumerate(inv[i]):
            scale *= Fraction(chart.signs[j]) ** k
        images.append((scale, tuple(inv[i])))
    return Polynomial(tuple(target_vars), poly.substitute_monomials(images, target_vars))


def _integer_inverse(m):
    n = len(m)
    if n == 1:
        return [[m[0][0]]]
    (a, b), (c, d) = m
    det = a * d - b * c
    return [[d * det, -b * det], [-c * det, a * det]]


def _split_monomial(p: Polynomial) -> Tuple[Exponent, Polynomial]:
    """p = w^low * q with q a polynomial not divisible by any variable."""
    n = p.nvars
    low = tuple(min(e[i] for e, _ in p.items()) for i in range(n))
    return low, p.shift(tuple(-x for x in low))


def _cubic_transform(C: Dict[Triple, Polynomial], M, n) -> Dict[Triple, Polynomial]:
    """C'_abc = sum C_ijk M[i][a] M[j][b] M[k][c]."""
    out = {}
    for abc in sorted_triples(n):
        total = None
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    w = M[i][abc[0]] * M[j][abc[1]] * M[k][abc[2]]
                    if w:
                        term = C[tuple(sorted((i, j, k)))] * w
                        total = term if total is None else total + term
        out[abc] = total if total is not None else C[abc] * 0
    return out


def _to_base(C: YukawaSet, chart: LcsChart) -> YukawaSet:
    base_vars = CHARTS["100"].variables
    if chart.name == "100":
        return C
    # theta_z = (M^T)^{-1} theta_w, so C^z_ijk = sum C^w_abc Minv-transposed factors
    minv = _integer_inverse(chart.matrix)
    # theta_{z_j} = sum_a minvT[j][a] theta_{w_a}; minvT[j][a] = minv[a][j]
    T = [[minv[a][j] for j in range(len(minv))] for a in range(len(minv))]
    n = len(base_vars)
    nums = {k: _substitute_inverse(v, chart, base_vars) for k, v in C.numerators.items()}
    den = _substitute_inverse(C.denominator, chart, base_vars)
    nums = _cubic_transform(nums, T, n)
    # undo the gauge: C_base = gauge^-2 C_chart, gauge = w^chart.gauge in base coordinates
    gauge = _substitute_inverse(Polynomial.monomial(chart.variables, chart.gauge), chart, base_vars)
    (gexp, gc), = gauge.items()
    factor = Polynomial.monomial(base_vars, tuple(-2 * x for x in gexp), gc ** -2)
    nums = {k: v * factor for k, v in nums.items()}
    return _tidy(YukawaSet(base_vars, nums, den, C.metadata))


def _from_base(C: YukawaSet, chart: LcsChart) -> YukawaSet:
    if chart.name == "100":
        return C
    n = len(chart.variables)
    nums = {k: _substitute_chart(v, chart) for k, v in C.numerators.items()}
    den = _substitute_chart(C.denominator, chart)
    nums = _cubic_transform(nums, chart.matrix, n)
    factor = Polynomial.monomial(chart.variables, tuple(2 * x for x in chart.gauge))
    nums = {k: v * factor for k, v in nums.items()}
    return _tidy(YukawaSet(chart.variables, nums, den, C.metadata))


def _tidy(C: YukawaSet) -> YukawaSet:
    """Move monomial factors of the denominator into the numerators."""
    low, den = _split_monomial(C.denominator)
    shift = tuple(-x for x in low)
    c = den.constant_term()
    nums = {k: v.shift(shift) for k, v in C.numerators.items()}
    if c:
        nums = {k: v * (1 / c) for k, v in nums.items()}
        den = den * (1 / c)
    return YukawaSet(C.variables, nums, den, C.metadata)


def transport_lcs(C: YukawaSet, from_chart: LcsChart, to_chart: LcsChart) -> YukawaSet:
    """Carry couplings between charts: cubic-form change of the log-derivatives
    and the square of the gauge ratio of the holomorphic periods."""
    return _from_base(_to_base(C, from_chart), to_chart)


# -- pipelines ----------------------------------------------------------------------------------


def kappa_zero_based(kappa: Mapping[Tuple[int, ...], object]) -> Dict[Triple, Fraction]:
    return {tuple(i - 1 for i in k): Fraction(v) for k, v in kappa.items()}


def x1_couplings() -> YukawaSet:
    """Couplings of the two-parameter family at [1,0,0], normalized by the
    triple intersections of X1."""
    from .cohomology import kappa_x1
    chart = CHARTS["100"]
    z1, z2 = Polynomial.gens(chart.variables)
    return yukawa_solve(chart.operators(), [z1 + z2, chart.discriminant()],
                        kappa_zero_based(kappa_x1()))


class BModelResult:
    def __init__(self, chart, couplings, basis, expansion, gw, bps):
        self.chart = chart
        self.couplings = couplings
        self.basis = basis
        self.expansion = expansion
        self.gw = gw
        self.bps = bps


def run_chart(C: YukawaSet, chart: LcsChart, max_degree: int,
              ops: Sequence[ThetaOperator] | None = None) -> BModelResult:
    basis = frobenius_solve(list(ops or chart.operators()), chart, max_degree + 1)
    K = yukawa_q_expansion(C, basis)
    N = gw_from_yukawa(K, C.value_at_origin())
    return BModelResult(chart.name, C, basis, K, N, bps_from_gw(N))


def b_model_x1(max_degree: int) -> BModelResult:
    return run_chart(x1_couplings(), CHARTS["100"], max_degree)


def b_model_transported(max_degree: int, chart: str = "010") -> BModelResult:
    """Couplings carried from [1,0,0] to another LCS chart and expanded there."""
    target = CHARTS[chart]
    C = transport_lcs(x1_couplings(), CHARTS["100"], target)
    return run_chart(C, target, max_degree)


def fit_x0_operator(cap: int = 100, max_coeff_degree: int = 8) -> ThetaOperator:
    """Smallest-coefficient-degree operator of order four annihilating sum A_d^2 x^d."""
    from .periods import period_x0
    series = period_x0(cap)
    for e in range(1, max_coeff_degree + 1):
        try:
            ops = fit_operator(series, 4, e)
        except ValueError:
            continue
        if len(ops) != 1:
            raise ArithmeticError(f"{len(ops)} independent operators at coefficient degree {e}")
        return ops[0]
    raise ArithmeticError("no order-four operator found")


def b_model_x0(max_degree: int, operator: ThetaOperator | None = None) -> BModelResult:
    """One-parameter pipeline: fitted operator, coupling with the leading
    coefficient as denominator, normalized by the degree of X0."""
    from .cohomology import kappa_x0
    L = operator or fit_x0_operator()
    lead = L.coefficient((4,))
    C = yukawa_solve([L], [lead], {(0, 0, 0): kappa_x0()}, max_exponent=1)
    basis = frobenius_solve([L], None, max_degree + 1)
    K = yukawa_q_expansion(C, basis)
    N = gw_from_yukawa(K, C.value_at_origin())
    return BModelResult("x0", C, basis, K, N, bps_from_gw(N))
