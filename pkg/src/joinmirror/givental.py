"""
I-functions of the linear sections X0 and X1 and the A-model extraction of
genus-zero invariants.

Every coefficient here is homogeneous once z is given degree 1, so we set
z = 1 and remember the overall z-weight instead: a class of complex degree k
inside a coefficient of z-weight w stands for that class times z^(w-k).  On a
threefold this keeps exactly the z^0 ... z^-3 parts that matter.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Mapping, Sequence, Tuple

from .bps import bps_from_gw
from .cohomology import (GradedRing, RingClass, SubvarietyRing, calabi_yau_x0,
                         calabi_yau_x1, embed, pullback, ring_grassmannian_2_5)
from .periods import apery_gamma1_5
from .series import TruncatedSeries, exponents_up_to, reversion

Degree = Tuple[int, ...]


# -- ring-valued helpers (z = 1) ---------------------------------------------------------------


def inverse_linear(ring: GradedRing, nilpotent: RingClass, m: int) -> RingClass:
    """(m + N)^-1 for nilpotent N, as a finite geometric series."""
    result = ring.zero()
    term = ring.one() * Fraction(1, m)
    for _ in range(ring.dim + 1):
        result = result + term
        term = term * nilpotent * Fraction(-1, m)
        if term.is_zero():
            break
    return result


def rising_product(ring: GradedRing, x: RingClass, d: int, power: int) -> RingClass:
    """prod_{m=1}^{d} (x + m)^power, with power possibly negative."""
    result = ring.one()
    for m in range(1, d + 1):
        factor = x + m if power > 0 else inverse_linear(ring, x, m)
        for _ in range(abs(power)):
            result = result * factor
    return result


# -- J-functions --------------------------------------------------------------------------------


def j_projective(ring: GradedRing, hyperplanes: Sequence[RingClass], dims: Sequence[int],
                 degree: Degree) -> RingClass:
    """J-function coefficient of a product of projective spaces at z = 1.

    prod_i 1/prod_{m=1}^{d_i} (h_i + m)^{n_i + 1}; its z-weight is
    -sum (n_i + 1) d_i."""
    result = ring.one()
    for h, n, d in zip(hyperplanes, dims, degree):
        if d < 0:
            raise ValueError("degrees must be non-negative")
        result = result * rising_product(ring, h, d, -(n + 1))
    return result


def _alternant_to_schubert(coeffs: Dict[Tuple[int, int], Fraction]) -> Dict[Tuple[int, int], Fraction]:
    """Divide an antisymmetric polynomial in two Chern roots by x1 - x2.

    x1^p x2^q - x1^q x2^p (p > q) becomes the Schur class sigma_{p-1,q}, which
    vanishes in G(2,5) unless p - 1 <= 3."""
    out: Dict[Tuple[int, int], Fraction] = {}
    for (p, q), c in coeffs.items():
        if p <= q or not c:
            continue
        if coeffs.get((q, p), 0) != -c:
            raise ArithmeticError("abelianized J-function is not antisymmetric")
        if p - 1 <= 3:
            out[(p - 1, q)] = out.get((p - 1, q), 0) + c
    return out


@lru_cache(maxsize=None)
def _grassmannian_j_schur(d: int) -> Tuple[Tuple[Tuple[int, int], Fraction], ...]:
    roots = ("x1", "x2")
    cap = 7
    x1 = TruncatedSeries.variable(roots, cap, "x1")
    x2 = TruncatedSeries.variable(roots, cap, "x2")
    total = TruncatedSeries.zero(roots, cap)
    for d1 in range(d + 1):
        d2 = d - d1
        denom = TruncatedSeries.one(roots, cap)
        for m in range(1, d1 + 1):
            denom = denom * (x1 + m) ** 5
        for m in range(1, d2 + 1):
            denom = denom * (x2 + m) ** 5
        total = total + (x1 - x2 + (d1 - d2)) * denom.reciprocal()
    total = total.scale((-1) ** d)
    schur = _alternant_to_schubert(dict(total.items()))
    return tuple(sorted(schur.items()))


def j_grassmannian_2_5(d: int, ring: GradedRing | None = None) -> RingClass:
    """Degree-d coefficient of the small J-function of G(2,5) at z = 1 (z-weight -5d).

    Built from the abelian quotient P^4 x P^4: the sum over d1 + d2 = d of
    (x1 - x2 + (d1 - d2)) / (prod (x1+m)^5 prod (x2+m)^5), times (-1)^d,
    divided by the Vandermonde x1 - x2."""
    if d < 0:
        raise ValueError("d must be non-negative")
    ring = ring or ring_grassmannian_2_5()
    out = ring.zero()
    for (a, b), c in _grassmannian_j_schur(d):
        label = "1" if (a, b) == (0, 0) else (f"s{a}" if b == 0 else f"s{a}{b}")
        out = out + ring.cls(label, c)
    return out


def gamma1_5_check(max_degree: int = 6) -> bool:
    """Twisted Grassmannian J-function at class 1 reproduces sum_k C(d,k)^2 C(d+k,k)."""
    ring = ring_grassmannian_2_5()
    unit = ring.index("1")
    for d in range(max_degree + 1):
        value = j_grassmannian_2_5(d, ring).coords.get(unit, Fraction(0)) * factorial(d) ** 5
        if value != apery_gamma1_5(d):
            return False
    return True


# -- cohomology-valued series -------------------------------------------------------------------


class CohomologySeries:
    """Novikov series with coefficients in a cohomology ring, at z = 1.

    terms[beta] is a RingClass; its degree-2k part is the coefficient of
    z^(zweight - k)."""

    def __init__(self, ring: GradedRing, novikov: Sequence[str], cap: int,
                 terms: Mapping[Degree, RingClass], zweight: int = 0):
        self.ring = ring
        self.novikov = tuple(novikov)
        self.cap = cap
        self.zweight = zweight
        self.terms = {tuple(b): c for b, c in terms.items() if sum(b) <= cap and not c.is_zero()}

    def __getitem__(self, beta) -> RingClass:
        return self.terms.get(tuple(beta), self.ring.zero())

    def components(self) -> List[TruncatedSeries]:
        """One scalar series per basis class."""
        out = []
        for i in range(self.ring.rank):
            out.append(TruncatedSeries(self.novikov, self.cap,
                                       {b: c.coords.get(i, 0) for b, c in self.terms.items()}))
        return out

    @classmethod
    def from_components(cls, ring, comps: Sequence[TruncatedSeries], zweight: int = 0):
        novikov, cap = comps[0].variables, min(c.cap for c in comps)
        terms: Dict[Degree, Dict[int, Fraction]] = {}
        for i, s in enumerate(comps):
            for b, v in s.items():
                terms.setdefault(b, {})[i] = v
        return cls(ring, novikov, cap, {b: RingClass(ring, d) for b, d in terms.items()}, zweight)

    def z_coefficient(self, k: int) -> "CohomologySeries":
        """The part multiplying z^(zweight - k): classes of complex degree k."""
        return CohomologySeries(self.ring, self.novikov, self.cap,
                                {b: c.part(2 * k) for b, c in self.terms.items()}, self.zweight)

    def scalar(self) -> TruncatedSeries:
        """Coefficient series of the unit class."""
        return self.components()[self.ring.index("1")]


def ring_series_multiply(ring: GradedRing, a: Sequence[TruncatedSeries],
                         b: Sequence[TruncatedSeries]) -> List[TruncatedSeries]:
    zero = a[0] * 0
    out = [zero for _ in range(ring.rank)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if bj.is_zero():
                continue
            for k, c in ring.basis_product(i, j).items():
                out[k] = out[k] + (ai * bj).scale(c)
    return out


def ring_series_exp(ring: GradedRing, n: Sequence[TruncatedSeries]) -> List[TruncatedSeries]:
    """exp of a nilpotent (positive-degree) ring-valued series."""
    unit = ring.index("1")
    zero = n[0] * 0
    result = [zero for _ in range(ring.rank)]
    result[unit] = zero + 1
    term = list(result)
    for k in range(1, ring.dim + 1):
        term = [t.scale(Fraction(1, k)) for t in ring_series_multiply(ring, term, n)]
        result = [r + t for r, t in zip(result, term)]
    return result


# -- the two geometries -------------------------------------------------------------------------


class _X1Geometry:
    def __init__(self):
        self.cy = calabi_yau_x1()
        self.ring = self.cy.ring
        self.D = [self.cy.divisor("D1"), self.cy.divisor("D2")]
        self.L = self.cy.restrict(_join_classes_x1(self.cy)["L"], 2)
        self.schubert = _restricted_schubert(self.cy, _grassmannian_embedding_x1(self.cy))


def _join_classes_x1(cy: SubvarietyRing) -> Dict[str, RingClass]:
    bundle = cy.ambient
    base = bundle.bundle_base
    gr, pp = base.factors
    p2a, p2b = pp.factors
    h1 = pullback(bundle, embed(base, 1, embed(pp, 0, p2a.cls("h1"))))
    h2 = pullback(bundle, embed(base, 1, embed(pp, 1, p2b.cls("h2"))))
    s1 = pullback(bundle, embed(base, 0, gr.cls("s1")))
    L = RingClass(bundle, {base.rank: 1})
    return {"L": L, "H1": s1, "H2": h1 + h2}


def _grassmannian_embedding_x1(cy: SubvarietyRing):
    bundle = cy.ambient
    base = bundle.bundle_base
    gr = base.factors[0]
    return gr, lambda x: pullback(bundle, embed(base, 0, x))


def _restricted_schubert(cy: SubvarietyRing, embedding) -> Dict[str, RingClass]:
    gr, lift = embedding
    out = {}
    for i, label in enumerate(gr.labels):
        deg = gr.degrees[i]
        if deg <= 2 * cy.dim:
            out[label] = cy.restrict(lift(gr.basis_class(i)), deg)
        else:
            out[label] = cy.ring.zero()
    return out


def _restrict_grassmannian_class(schubert: Dict[str, RingClass], x: RingClass, ring) -> RingClass:
    out = ring.zero()
    for i, c in x.coords.items():
        out = out + schubert[x.ring.labels[i]] * c
    return out


@lru_cache(maxsize=1)
def x1_geometry() -> _X1Geometry:
    geo = _X1Geometry()
    if not gamma1_5_check():
        raise AssertionError("Grassmannian J-function fails the Apery-number convention check")
    return geo


class _X0Geometry:
    def __init__(self):
        self.cy = calabi_yau_x0()
        bundle = self.cy.ambient
        base = bundle.bundle_base
        gr = base.factors[0]
        self.ring = self.cy.ring
        self.L = self.cy.divisor("L")
        first = (gr, lambda x: pullback(bundle, embed(base, 0, x)))
        second = (gr, lambda x: pullback(bundle, embed(base, 1, x)))
        self.schubert = (_restricted_schubert(self.cy, first),
                         _restricted_schubert(self.cy, second))


@lru_cache(maxsize=1)
def x0_geometry() -> _X0Geometry:
    geo = _X0Geometry()
    if not gamma1_5_check():
        raise AssertionError("Grassmannian J-function fails the Apery-number convention check")
    return geo


def i_function_x1(cap: int) -> CohomologySeries:
    """I-function of X1 restricted to its cohomology, Novikov degrees (d1, d2)."""
    geo = x1_geometry()
    ring, L = geo.ring, geo.L
    terms = {}
    for d1, d2 in exponents_up_to(2, cap):
        d = d1 + d2
        jgr = _restrict_grassmannian_class(geo.schubert, j_grassmannian_2_5(d), ring)
        coeff = rising_product(ring, L, d, 8) * jgr
        coeff = coeff * j_projective(ring, geo.D, (2, 2), (d1, d2))
        terms[(d1, d2)] = coeff
    return CohomologySeries(ring, ("x1", "x2"), cap, terms)


def i_function_x0(cap: int) -> CohomologySeries:
    """I-function of X0 restricted to its cohomology, one Novikov degree d."""
    geo = x0_geometry()
    ring, L = geo.ring, geo.L
    terms = {}
    for d in range(cap + 1):
        jgr = j_grassmannian_2_5(d)
        first = _restrict_grassmannian_class(geo.schubert[0], jgr, ring)
        second = _restrict_grassmannian_class(geo.schubert[1], jgr, ring)
        terms[(d,)] = rising_product(ring, L, d, 10) * first * second
    return CohomologySeries(ring, ("x",), cap, terms)


# -- mirror transformation and extraction -------------------------------------------------------


class MirrorResult:
    """I0, the mirror map x -> q, its inverse, and the normalized J-function in q."""

    def __init__(self, I0, corrections, forward, inverse, J, divisors):
        self.I0 = I0
        self.corrections = corrections
        self.forward = forward
        self.inverse = inverse
        self.J = J
        self.divisors = divisors

    def __iter__(self):
        return iter((self.I0, list(self.forward), self.J))


def mirror_transform(I: CohomologySeries, divisors: Sequence[RingClass]) -> MirrorResult:
    """Normalize by I0, strip the z^-1 divisor part, and re-expand in q.

    The z^-1 coefficient of I on divisor D_a divided by I0 is the mirror-map
    correction g_a, with q_a = x_a exp(g_a).  J = exp(-sum g_a D_a / z) I / I0,
    written in q via the inverse map."""
    ring = I.ring
    comps = I.components()
    unit = ring.index("1")
    I0 = comps[unit]
    if I0.constant_term() != 1:
        raise ValueError("I-function must start with the unit class")
    inv0 = I0.reciprocal()
    normalized = [c * inv0 for c in comps]
    corrections = []
    for D in divisors:
        (idx, one), = D.coords.items()
        if one != 1:
            raise ValueError("divisors must be basis classes")
        corrections.append(normalized[idx])
    shift = [TruncatedSeries.zero(I.novikov, I.cap) for _ in range(ring.rank)]
    for D, g in zip(divisors, corrections):
        (idx, _), = D.coords.items()
        shift[idx] = shift[idx] - g
    J_x = ring_series_multiply(ring, ring_series_exp(ring, shift), normalized)
    gens = [TruncatedSeries.variable(I.novikov, I.cap, v) for v in I.novikov]
    forward = [x * g.exp() for x, g in zip(gens, corrections)]
    inverse = reversion(forward)
    J_q = [c.substitute(list(inverse)) for c in J_x]
    return MirrorResult(I0, corrections, forward, inverse,
                        CohomologySeries.from_components(ring, J_q), divisors)


def gw_from_j(result: MirrorResult) -> Dict[Degree, Fraction]:
    """Genus-zero invariants N_beta from the z^-2 part of J.

    Pairing it with D_b gives sum_beta N_beta beta_b q^beta; every divisor
    with beta_b != 0 must give the same N_beta."""
    J = result.J
    second = J.z_coefficient(2)
    pairings = []
    for D in result.divisors:
        comps = {}
        for beta, c in second.terms.items():
            comps[beta] = (c * D).integrate()
        pairings.append(comps)
    table: Dict[Degree, Fraction] = {}
    for beta in exponents_up_to(len(J.novikov), J.cap):
        if not any(beta):
            continue
        values = {pairings[b].get(beta, Fraction(0)) / beta[b]
                  for b in range(len(beta)) if beta[b]}
        if len(values) != 1:
            raise ArithmeticError(f"divisor pairings disagree at degree {beta}: {values}")
        table[beta] = values.pop()
    return table


def a_model_x1(max_degree: int) -> Tuple[Dict[Degree, Fraction], Dict[Degree, int]]:
    geo = x1_geometry()
    result = mirror_transform(i_function_x1(max_degree), geo.D)
    N = gw_from_j(result)
    return N, bps_from_gw(N)


def a_model_x0(max_degree: int) -> Tuple[Dict[Degree, Fraction], Dict[Degree, int]]:
    geo = x0_geometry()
    result = mirror_transform(i_function_x0(max_degree), [geo.L])
    N = gw_from_j(result)
    return N, bps_from_gw(N)
