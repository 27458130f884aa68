"""
Finite-dimensional graded cohomology rings with an integration functional.

A :class:`GradedRing` has a basis of homogeneous classes (degrees are real
degrees, so divisors sit in degree 2), a product given on basis pairs, and an
integration vector.  Products on basis pairs are computed on demand and
memoized, which keeps large bundle rings cheap: only the products actually
needed for an integral are ever evaluated.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from typing import Callable, Dict, List, Sequence, Tuple

from .linalg import rank, solve

Vector = Dict[int, Fraction]


class GradedRing:
    """Commutative graded ring over Q with a basis and an integration map."""

    def __init__(self, labels: Sequence[str], degrees: Sequence[int], dim: int,
                 multiply: Callable[[int, int], Vector], integrals: Dict[int, Fraction],
                 name: str = ""):
        if len(labels) != len(degrees):
            raise ValueError("labels and degrees differ in length")
        self.labels = list(labels)
        self.degrees = list(degrees)
        self.dim = dim
        self.name = name
        self._multiply = multiply
        self._table: Dict[Tuple[int, int], Vector] = {}
        self.integrals = {i: Fraction(v) for i, v in integrals.items() if v}
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        tops = [i for i, d in enumerate(self.degrees) if d == 2 * dim]
        if len(tops) != 1:
            raise ValueError(f"expected one top-degree class, found {len(tops)}")
        self.top = tops[0]
        if self.integrals.get(self.top) != 1:
            raise ValueError("the top class must integrate to 1")

    def __repr__(self):
        return f"GradedRing({self.name or '?'}, rank={self.rank}, dim={self.dim})"

    @property
    def rank(self) -> int:
        return len(self.labels)

    def basis_product(self, i: int, j: int) -> Vector:
        key = (i, j) if i <= j else (j, i)
        hit = self._table.get(key)
        if hit is None:
            if self.degrees[i] + self.degrees[j] > 2 * self.dim:
                hit = {}
            else:
                hit = {k: Fraction(v) for k, v in self._multiply(*key).items() if v}
            self._table[key] = hit
        return hit

    def index(self, label: str) -> int:
        return self._index[label]

    def cls(self, label: str, coeff=1) -> "RingClass":
        return RingClass(self, {self._index[label]: Fraction(coeff)})

    def one(self) -> "RingClass":
        units = [i for i, d in enumerate(self.degrees) if d == 0]
        return RingClass(self, {units[0]: Fraction(1)})

    def zero(self) -> "RingClass":
        return RingClass(self, {})

    def basis_class(self, i: int) -> "RingClass":
        return RingClass(self, {i: Fraction(1)})

    def integrate(self, x: "RingClass") -> Fraction:
        return sum((c * self.integrals.get(i, 0) for i, c in x.coords.items()), Fraction(0))

    def indices_of_degree(self, degree: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    # -- structural checks -------------------------------------------------------------

    def check_associative(self, samples: int | None = None, seed: int = 0) -> bool:
        """All basis triples, or `samples` of them drawn with a fixed seed."""
        n = self.rank
        triples = combinations_with_replacement(range(n), 3)
        if samples is not None:
            rng = random.Random(seed)
            triples = [tuple(rng.randrange(n) for _ in range(3)) for _ in range(samples)]
        for i, j, k in triples:
            a, b, c = self.basis_class(i), self.basis_class(j), self.basis_class(k)
            if (a * b) * c != a * (b * c) or (a * c) * b != a * (b * c):
                return False
        return True

    def check_graded(self) -> bool:
        for i in range(self.rank):
            for j in range(i, self.rank):
                target = self.degrees[i] + self.degrees[j]
                if any(self.degrees[k] != target for k in self.basis_product(i, j)):
                    return False
        return True

    def pairing_matrix(self) -> List[List[Fraction]]:
        n = self.rank
        return [[self.integrate(self.basis_class(i) * self.basis_class(j)) for j in range(n)]
                for i in range(n)]

    def is_poincare_nondegenerate(self) -> bool:
        return rank(self.pairing_matrix(), self.rank) == self.rank


class RingClass:
    """An element of a :class:`GradedRing`, stored by basis coordinates."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: GradedRing, coords: Dict[int, object]):
        self.ring = ring
        self.coords = {}
        for i, c in coords.items():
            if not 0 <= i < ring.rank:
                raise IndexError(f"basis index {i} out of range")
            c = Fraction(c)
            if c:
                self.coords[i] = c

    def __repr__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"{c}*{self.ring.labels[i]}" for i, c in sorted(self.coords.items()))

    def __eq__(self, other):
        if isinstance(other, RingClass):
            return self.ring is other.ring and self.coords == other.coords
        if other == 0:
            return not self.coords
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def _lift(self, other) -> "RingClass":
        if isinstance(other, RingClass):
            if other.ring is not self.ring:
                raise ValueError("classes live in different rings")
            return other
        return self.ring.one() * Fraction(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coords)
        for i, c in other.coords.items():
            out[i] = out.get(i, 0) + c
        return RingClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RingClass(self.ring, {i: -c for i, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingClass(self.ring, {i: c * other for i, c in self.coords.items()})
        other = self._lift(other)
        out: Dict[int, Fraction] = {}
        for i, a in self.coords.items():
            for j, b in other.coords.items():
                for k, c in self.ring.basis_product(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return RingClass(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RingClass":
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def integrate(self) -> Fraction:
        return self.ring.integrate(self)

    def is_zero(self) -> bool:
        return not self.coords

    def part(self, degree: int) -> "RingClass":
        return RingClass(self.ring, {i: c for i, c in self.coords.items()
                                     if self.ring.degrees[i] == degree})

    def degree(self) -> int | None:
        """Common degree of a homogeneous class (None for zero)."""
        degs = {self.ring.degrees[i] for i in self.coords}
        if len(degs) > 1:
            raise ValueError("class is not homogeneous")
        return degs.pop() if degs else None


def intersection_number(ring: GradedRing, word: Sequence[RingClass]) -> Fraction:
    """Integral of the product of the classes in `word`."""
    return reduce(lambda a, b: a * b, word, ring.one()).integrate()


# -- concrete rings ---------------------------------------------------------------------------


def ring_projective_space(n: int, name: str = "h") -> GradedRing:
    """Q[h]/(h^{n+1}) with the integral of h^n equal to 1."""
    if n < 1:
        raise ValueError("n must be positive")
    labels = ["1"] + [name if k == 1 else f"{name}^{k}" for k in range(1, n + 1)]

    def mult(i, j):
        return {i + j: 1} if i + j <= n else {}

    return GradedRing(labels, [2 * k for k in range(n + 1)], n, mult, {n: 1}, name=f"P{n}")


_PARTITIONS_2_5 = [(a, b) for a in range(4) for b in range(a + 1)]
_PARTITIONS_2_5.sort(key=lambda p: (p[0] + p[1], -p[0]))


def _pieri(k: int, vec: Dict[Tuple[int, int], int]) -> Dict[Tuple[int, int], int]:
    """Multiply a combination of sigma_{a,b} by the special class sigma_k in G(2,5)."""
    if k == 0:
        return dict(vec)
    if k < 0 or k > 3:
        return {}
    out: Dict[Tuple[int, int], int] = {}
    for (a, b), c in vec.items():
        total = a + b + k
        for d in range(b, a + 1):
            e = total - d
            if a <= e <= 3:
                out[(e, d)] = out.get((e, d), 0) + c
    return {p: c for p, c in out.items() if c}


def _schubert_times(a: int, b: int, vec) -> Dict[Tuple[int, int], int]:
    """sigma_{a,b} * vec via sigma_{a,b} = sigma_a sigma_b - sigma_{a+1} sigma_{b-1}."""
    first = _pieri(a, _pieri(b, vec))
    second = _pieri(a + 1, _pieri(b - 1, vec)) if b >= 1 else {}
    out = dict(first)
    for p, c in second.items():
        out[p] = out.get(p, 0) - c
    return {p: c for p, c in out.items() if c}


def ring_grassmannian_2_5() -> GradedRing:
    """Schubert-basis cohomology of G(2,5): ten classes sigma_{a,b}, 3 >= a >= b >= 0."""
    parts = _PARTITIONS_2_5
    index = {p: i for i, p in enumerate(parts)}
    labels = ["1" if p == (0, 0) else
              (f"s{p[0]}" if p[1] == 0 else f"s{p[0]}{p[1]}") for p in parts]

    def mult(i, j):
        a, b = parts[i]
        prod = _schubert_times(a, b, {parts[j]: 1})
        return {index[p]: c for p, c in prod.items()}

    return GradedRing(labels, [2 * (a + b) for a, b in parts], 6, mult,
                      {index[(3, 3)]: 1}, name="G(2,5)")


def ring_product(a: GradedRing, b: GradedRing) -> GradedRing:
    """Kunneth product; basis pairs in row-major order (index = i*rank(b) + j)."""
    nb = b.rank
    labels, degrees = [], []
    for i in range(a.rank):
        for j in range(nb):
            la, lb = a.labels[i], b.labels[j]
            labels.append(la if lb == "1" else lb if la == "1" else f"{la}*{lb}")
            degrees.append(a.degrees[i] + b.degrees[j])

    def mult(p, q):
        i1, j1 = divmod(p, nb)
        i2, j2 = divmod(q, nb)
        out = {}
        for k, c in a.basis_product(i1, i2).items():
            for l, d in b.basis_product(j1, j2).items():
                out[k * nb + l] = c * d
        return out

    integrals = {i * nb + j: ca * cb for i, ca in a.integrals.items()
                 for j, cb in b.integrals.items()}
    ring = GradedRing(labels, degrees, a.dim + b.dim, mult, integrals,
                      name=f"{a.name}x{b.name}")
    ring.factors = (a, b)
    return ring


def embed(product_ring: GradedRing, factor: int, x: RingClass) -> RingClass:
    """Pull back a class from one factor of a two-factor product."""
    a, b = product_ring.factors
    nb = b.rank
    if factor == 0:
        one = b.index("1")
        return RingClass(product_ring, {i * nb + one: c for i, c in x.coords.items()})
    one = a.index("1")
    return RingClass(product_ring, {one * nb + j: c for j, c in x.coords.items()})


def ring_projective_bundle(base: GradedRing, chern: Sequence[RingClass], r: int,
                           name: str = "xi") -> GradedRing:
    """Projective bundle of lines in a rank-r bundle E over `base`.

    `chern` lists c_1(E), ..., c_k(E) (k <= r).  The adjoined class xi is
    c_1(O(1)) and satisfies xi^r + c_1 xi^{r-1} + ... + c_r = 0; the integral
    of xi^{r-1} times the base point class is 1.  Basis: xi^k * b for k < r,
    at index k*rank(base) + index(b)."""
    if len(chern) > r:
        raise ValueError("more Chern classes than the rank")
    for i, c in enumerate(chern, start=1):
        if c.ring is not base:
            raise ValueError("Chern classes must live in the base ring")
        deg = c.degree()
        if deg is not None and deg != 2 * i:
            raise ValueError(f"c_{i} has degree {deg}")
    nb = base.rank
    cs = list(chern) + [base.zero()] * (r - len(chern))
    # reductions[m] = coefficients R_k (base classes) with xi^m = sum_k xi^k R_k
    reductions: List[List[RingClass]] = []
    for m in range(r):
        reductions.append([base.one() if k == m else base.zero() for k in range(r)])

    def power(m: int) -> List[RingClass]:
        while len(reductions) <= m:
            prev = reductions[-1]
            nxt = [base.zero()] + prev[:-1]
            top = prev[-1]
            if not top.is_zero():
                for i in range(1, r + 1):
                    nxt[r - i] = nxt[r - i] - cs[i - 1] * top
            reductions.append(nxt)
        return reductions[m]

    labels, degrees = [], []
    for k in range(r):
        for j in range(nb):
            lb = base.labels[j]
            lx = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            labels.append(lb if not lx else lx if lb == "1" else f"{lx}*{lb}")
            degrees.append(2 * k + base.degrees[j])

    def mult(p, q):
        k1, j1 = divmod(p, nb)
        k2, j2 = divmod(q, nb)
        bprod = RingClass(base, base.basis_product(j1, j2))
        out: Dict[int, Fraction] = {}
        for k, coeff in enumerate(power(k1 + k2)):
            if coeff.is_zero():
                continue
            for l, c in (coeff * bprod).coords.items():
                out[k * nb + l] = out.get(k * nb + l, 0) + c
        return out

    integrals = {(r - 1) * nb + j: c for j, c in base.integrals.items()}
    ring = GradedRing(labels, degrees, base.dim + r - 1, mult, integrals,
                      name=f"P({base.name})")
    ring.bundle_base = base
    ring.bundle_rank = r
    return ring


def pullback(bundle: GradedRing, x: RingClass) -> RingClass:
    """Pull a base class back to a projective bundle ring."""
    return RingClass(bundle, dict(x.coords))


def relative_hyperplane(bundle: GradedRing) -> RingClass:
    return RingClass(bundle, {bundle.bundle_base.rank: 1})


def chern_of_dual_tautological_sub_p2(ring: GradedRing, h: RingClass, copies: int = 1) -> List[RingClass]:
    """Chern classes of K^{+copies}, where 0 -> K -> H^0(O(1)) x O -> O(1) -> 0 on P^2.

    c(K) = 1/(1+h) = 1 - h + h^2."""
    total = ring.one() - h + h * h
    full = total ** copies
    return [full.part(2 * i) for i in range(1, 2 * copies + 1) if not full.part(2 * i).is_zero()]


# -- restriction to a complete intersection ------------------------------------------------


class SubvarietyRing:
    """Cohomology generated by divisors on a complete intersection.

    The ring is the quotient of the subring generated by `generators` by the
    kernel of the pairing (a, b) -> integral of e*a*b, where `e` is the class
    of the subvariety in the ambient ring.  Integration on the result is
    integration against e."""

    def __init__(self, ambient: GradedRing, fundamental: RingClass,
                 generators: Dict[str, RingClass], dim: int):
        self.ambient = ambient
        self.fundamental = fundamental
        self.names = list(generators)
        self.generators = generators
        self.dim = dim
        self._monomial_cache: Dict[Tuple[int, ...], RingClass] = {}
        self._basis: Dict[int, List[Tuple[int, ...]]] = {}
        self._pair_rows: Dict[int, List[List[Fraction]]] = {}
        for k in range(dim + 1):
            self._choose_basis(k)
        self.ring = self._build_ring()

    def _monomial_times_e(self, exps: Tuple[int, ...]) -> RingClass:
        """e * prod g_i^exps_i, built incrementally."""
        hit = self._monomial_cache.get(exps)
        if hit is not None:
            return hit
        if not any(exps):
            val = self.fundamental
        else:
            i = max(j for j, x in enumerate(exps) if x)
            prev = list(exps)
            prev[i] -= 1
            val = self._monomial_times_e(tuple(prev)) * self.generators[self.names[i]]
        self._monomial_cache[exps] = val
        return val

    def monomials(self, k: int) -> List[Tuple[int, ...]]:
        n = len(self.names)
        out = []
        for combo in combinations_with_replacement(range(n), k):
            exps = [0] * n
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
        return out

    def integral_of_monomial(self, exps: Tuple[int, ...]) -> Fraction:
        return self._monomial_times_e(tuple(exps)).integrate()

    def _pairing_row(self, exps, k):
        other = self.monomials(self.dim - k)
        return [self.integral_of_monomial(tuple(a + b for a, b in zip(exps, o))) for o in other]

    def _choose_basis(self, k: int):
        chosen, rows = [], []
        for m in self.monomials(k):
            row = self._pairing_row(m, k)
            if rank(rows + [row], len(row)) > len(rows):
                chosen.append(m)
                rows.append(row)
        self._basis[k] = chosen
        self._pair_rows[k] = rows

    def coordinates(self, exps: Tuple[int, ...]) -> Dict[int, Fraction]:
        """Express a monomial in the chosen basis of its degree."""
        k = sum(exps)
        if k > self.dim:
            return {}
        rows = self._pair_rows[k]
        if not rows:
            return {}
        target = self._pairing_row(exps, k)
        # solve sum_i c_i rows[i] = target
        cols = [[rows[i][j] for i in range(len(rows))] for j in range(len(target))]
        coeffs = solve(cols, target, len(rows))
        offset = sum(len(self._basis[d]) for d in range(k))
        return {offset + i: c for i, c in enumerate(coeffs) if c}

    def _label(self, exps):
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, exps) if e]
        return "*".join(parts) if parts else "1"

    def _build_ring(self) -> GradedRing:
        flat = [m for k in range(self.dim + 1) for m in self._basis[k]]
        if len(self._basis[self.dim]) != 1:
            raise ValueError("top degree of the restricted ring is not one-dimensional")
        labels = [self._label(m) for m in flat]
        labels[-1] = "pt"
        degrees = [2 * sum(m) for m in flat]
        top_index = len(flat) - 1

        def mult(i, j):
            # the last basis element is the point class, not the monomial it came from
            if top_index in (i, j):
                return {top_index: Fraction(1)} if min(i, j) == 0 else {}
            exps = tuple(a + b for a, b in zip(flat[i], flat[j]))
            if sum(exps) == self.dim:
                return {top_index: self.integral_of_monomial(exps)}
            return self.coordinates(exps)

        ring = GradedRing(labels, degrees, self.dim, mult, {top_index: 1}, name="restricted")
        ring.monomial_basis = flat
        return ring

    def divisor(self, name: str) -> RingClass:
        exps = tuple(int(n == name) for n in self.names)
        return RingClass(self.ring, self.coordinates(exps))

    def restrict(self, x: RingClass, degree: int) -> RingClass:
        """Image of an ambient class of the given degree (pairing against monomials)."""
        k = degree // 2
        rows = self._pair_rows[k]
        target = [(self.fundamental * x * self._monomial_class(o)).integrate()
                  for o in self.monomials(self.dim - k)]
        if not rows:
            if any(target):
                raise ValueError("class is not in the span of the generators")
            return self.ring.zero()
        cols = [[rows[i][j] for i in range(len(rows))] for j in range(len(target))]
        coeffs = solve(cols, target, len(rows))
        offset = sum(len(self._basis[d]) for d in range(k))
        if k == self.dim:
            return RingClass(self.ring, {offset: target[0]})
        return RingClass(self.ring, {offset + i: c for i, c in enumerate(coeffs)})

    def _monomial_class(self, exps):
        result = self.ambient.one()
        for name, e in zip(self.names, exps):
            for _ in range(e):
                result = result * self.generators[name]
        return result

    def triple_intersections(self, names: Sequence[str] | None = None) -> Dict[Tuple[str, str, str], Fraction]:
        names = list(names or self.names)
        out = {}
        for combo in combinations_with_replacement(range(len(names)), 3):
            exps = [0] * len(self.names)
            for i in combo:
                exps[self.names.index(names[i])] += 1
            out[tuple(names[i] for i in combo)] = self.integral_of_monomial(tuple(exps))
        return out


# -- the geometries ---------------------------------------------------------------------------


def resolved_join_x1() -> Tuple[GradedRing, Dict[str, RingClass]]:
    """The eleven-dimensional resolved join over G(2,5) x P^2 x P^2 and its
    named divisor classes L, H1, H2, D1, D2."""
    gr = ring_grassmannian_2_5()
    p2a = ring_projective_space(2, "h1")
    p2b = ring_projective_space(2, "h2")
    pp = ring_product(p2a, p2b)
    base = ring_product(gr, pp)
    h1 = embed(base, 1, embed(pp, 0, p2a.cls("h1")))
    h2 = embed(base, 1, embed(pp, 1, p2b.cls("h2")))
    s1 = embed(base, 0, gr.cls("s1"))
    H1, H2 = s1, h1 + h2
    bundle = ring_projective_bundle(base, [-(H1 + H2), H1 * H2], 2, name="L")
    return bundle, {"L": relative_hyperplane(bundle), "H1": pullback(bundle, H1),
                    "H2": pullback(bundle, H2), "D1": pullback(bundle, h1),
                    "D2": pullback(bundle, h2)}


def resolved_join_y1() -> Tuple[GradedRing, Dict[str, RingClass]]:
    """The fourteen-dimensional resolved join over G(2,5) x P_{P^2}(K^{+3}).

    Named classes: L (relative hyperplane), H1 (sigma_1), H2 (relative
    hyperplane of the inner bundle) and D (hyperplane of the inner P^2)."""
    gr = ring_grassmannian_2_5()
    p2 = ring_projective_space(2, "h")
    inner = ring_projective_bundle(p2, chern_of_dual_tautological_sub_p2(p2, p2.cls("h"), 3),
                                   6, name="x")
    base = ring_product(gr, inner)
    s1 = embed(base, 0, gr.cls("s1"))
    x = embed(base, 1, relative_hyperplane(inner))
    d = embed(base, 1, pullback(inner, p2.cls("h")))
    bundle = ring_projective_bundle(base, [-(s1 + x), s1 * x], 2, name="L")
    return bundle, {"L": relative_hyperplane(bundle), "H1": pullback(bundle, s1),
                    "H2": pullback(bundle, x), "D": pullback(bundle, d)}


def resolved_join_x0() -> Tuple[GradedRing, Dict[str, RingClass]]:
    """The thirteen-dimensional resolved join over G(2,5) x G(2,5)."""
    gr = ring_grassmannian_2_5()
    base = ring_product(gr, gr)
    H1 = embed(base, 0, gr.cls("s1"))
    H2 = embed(base, 1, gr.cls("s1"))
    bundle = ring_projective_bundle(base, [-(H1 + H2), H1 * H2], 2, name="L")
    return bundle, {"L": relative_hyperplane(bundle), "H1": pullback(bundle, H1),
                    "H2": pullback(bundle, H2)}


def calabi_yau_x1() -> SubvarietyRing:
    """X1: eight sections of L, generated by D1, D2."""
    ambient, cl = resolved_join_x1()
    x = SubvarietyRing(ambient, cl["L"] ** 8, {"D1": cl["D1"], "D2": cl["D2"]}, 3)
    x.classes = cl
    return x


def calabi_yau_y1() -> SubvarietyRing:
    """Y1: eleven sections of L, generated by L and D."""
    ambient, cl = resolved_join_y1()
    y = SubvarietyRing(ambient, cl["L"] ** 11, {"L": cl["L"], "D": cl["D"]}, 3)
    y.classes = cl
    return y


def calabi_yau_x0() -> SubvarietyRing:
    """X0: ten sections of L, generated by L."""
    ambient, cl = resolved_join_x0()
    x = SubvarietyRing(ambient, cl["L"] ** 10, {"L": cl["L"]}, 3)
    x.classes = cl
    return x


def kappa_x1() -> Dict[Tuple[int, int, int], Fraction]:
    """Triple intersections of D1, D2 on X1, keyed by sorted 1-based index triples."""
    x = calabi_yau_x1()
    return {tuple(int(n[1]) for n in k): v for k, v in x.triple_intersections().items()}


def kappa_y1() -> Dict[Tuple[int, int, int], Fraction]:
    """Triple intersections on Y1 in the basis (L', D') = (1, 2)."""
    y = calabi_yau_y1()
    code = {"L": 1, "D": 2}
    return {tuple(code[n] for n in k): v for k, v in y.triple_intersections().items()}


def kappa_x0() -> Fraction:
    return calabi_yau_x0().integral_of_monomial((3,))
