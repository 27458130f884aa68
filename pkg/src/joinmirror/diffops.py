"""
Differential operators in the logarithmic derivations theta_i = z_i d/dz_i.

An operator is stored in normal order: a sum of terms c * z^a * theta^t with
the coordinate monomial on the left.  Coordinate exponents may be negative
(Laurent coefficients), which happens in the middle of chart changes;
:meth:`ThetaOperator.clear_monomial` brings such an operator back to a
polynomial one.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, List, Mapping, Sequence, Tuple

from .linalg import nullspace, rank
from .series import (Exponent, Polynomial, TruncatedSeries, as_fraction,
                     exponents_up_to, format_polynomial, parse_polynomial)

Key = Tuple[Exponent, Exponent]  # (coordinate exponent, theta exponent)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _theta_eigen(exp: Exponent, theta: Exponent) -> int:
    v = 1
    for e, t in zip(exp, theta):
        if t:
            v *= e ** t
    return v


class ThetaOperator:
    """sum of c * z^a * theta^t, kept in normal order."""

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Key, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        store: Dict[Key, Fraction] = {}
        for (a, t), c in (terms or {}).items():
            a, t = tuple(a), tuple(t)
            if len(a) != n or len(t) != n or min(t, default=0) < 0:
                raise ValueError(f"bad term {(a, t)}")
            c = as_fraction(c)
            v = store.get((a, t), Fraction(0)) + c
            if v:
                store[(a, t)] = v
            else:
                store.pop((a, t), None)
        self._terms = store

    # -- constructors -------------------------------------------------------------

    @classmethod
    def from_polynomials(cls, variables: Sequence[str],
                         by_theta: Mapping[Exponent, Polynomial]) -> "ThetaOperator":
        """Build from a map theta-exponent -> coefficient polynomial."""
        terms = {}
        for t, poly in by_theta.items():
            for a, c in poly.items():
                terms[(a, tuple(t))] = c
        return cls(variables, terms)

    @classmethod
    def theta(cls, variables: Sequence[str], index: int) -> "ThetaOperator":
        n = len(tuple(variables))
        unit = tuple(int(i == index) for i in range(n))
        return cls(variables, {((0,) * n, unit): 1})

    @classmethod
    def multiplication(cls, variables: Sequence[str], exp: Exponent, coeff=1) -> "ThetaOperator":
        n = len(tuple(variables))
        return cls(variables, {(tuple(exp), (0,) * n): coeff})

    # -- views ----------------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def items(self):
        return self._terms.items()

    def coefficients(self) -> Dict[Exponent, Polynomial]:
        """Map theta-exponent -> coefficient polynomial (Laurent exponents allowed)."""
        out: Dict[Exponent, Dict[Exponent, Fraction]] = {}
        for (a, t), c in self._terms.items():
            out.setdefault(t, {})[a] = c
        return {t: Polynomial(self.variables, d) for t, d in out.items()}

    def coefficient(self, theta: Exponent) -> Polynomial:
        return Polynomial(self.variables,
                          {a: c for (a, t), c in self._terms.items() if t == tuple(theta)})

    def is_zero(self) -> bool:
        return not self._terms

    def order(self) -> int:
        return max((sum(t) for _, t in self._terms), default=-1)

    def coordinate_degree(self) -> int:
        return max((sum(a) for a, _ in self._terms), default=0)

    def min_coordinate_degree(self) -> int:
        return min((sum(a) for a, _ in self._terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, ThetaOperator):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    def __repr__(self):
        return f"ThetaOperator({self.variables}, {len(self._terms)} terms)"

    def __str__(self):
        parts = []
        for t, poly in sorted(self.coefficients().items(), reverse=True):
            th = " ".join(f"th{i + 1}^{k}" if k > 1 else f"th{i + 1}"
                          for i, k in enumerate(t) if k)
            parts.append(f"({format_polynomial(poly)})" + (f" {th}" if th else ""))
        return " + ".join(parts) if parts else "0"

    # -- algebra ----------------------------------------------------------------------

    def _check(self, other: "ThetaOperator"):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch {self.variables} != {other.variables}")

    def __add__(self, other: "ThetaOperator") -> "ThetaOperator":
        self._check(other)
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return ThetaOperator(self.variables, terms)

    def __neg__(self):
        return ThetaOperator(self.variables, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "ThetaOperator":
        factor = as_fraction(factor)
        return ThetaOperator(self.variables, {k: c * factor for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self.compose(other)

    __rmul__ = scale

    def compose(self, other: "ThetaOperator") -> "ThetaOperator":
        """self o other, using theta^A z^b = z^b (theta + b)^A."""
        self._check(other)
        out: Dict[Key, Fraction] = {}
        for (a, ta), ca in self._terms.items():
            for (b, tb), cb in other._terms.items():
                for shifted, w in _shift_theta_power(ta, b).items():
                    key = (_add(a, b), _add(shifted, tb))
                    out[key] = out.get(key, 0) + ca * cb * w
        return ThetaOperator(self.variables, out)

    def apply(self, s: TruncatedSeries) -> TruncatedSeries:
        """Act on a series.

        Output coefficients are exact through total degree
        cap + min(0, lowest coordinate degree); the result carries that cap."""
        if s.variables != self.variables:
            raise ValueError(f"variable mismatch {self.variables} != {s.variables}")
        cap = s.cap + min(0, self.min_coordinate_degree())
        if cap < 0:
            return TruncatedSeries.zero(s.variables, 0)
        out: Dict[Exponent, Fraction] = {}
        for e, c in s.items():
            for (a, t), k in self._terms.items():
                f = _add(e, a)
                if min(f) < 0 or sum(f) > cap:
                    continue
                w = _theta_eigen(e, t)
                if w:
                    out[f] = out.get(f, 0) + k * c * w
        return TruncatedSeries(s.variables, cap, out)

    def conjugate_by_monomial(self, exp: Exponent, scale=1) -> "ThetaOperator":
        """m o self o m^-1 for m = scale * z^exp.

        The scale cancels; theta_i is replaced by theta_i - exp_i."""
        if as_fraction(scale) == 0:
            raise ZeroDivisionError("monomial scale must be nonzero")
        exp = tuple(-x for x in exp)
        out: Dict[Key, Fraction] = {}
        for (a, t), c in self._terms.items():
            for shifted, w in _shift_theta_power(t, exp).items():
                key = (a, shifted)
                out[key] = out.get(key, 0) + c * w
        return ThetaOperator(self.variables, out)

    def change_torus_coordinates(self, matrix: Sequence[Sequence[int]],
                                 signs: Sequence = None,
                                 new_variables: Sequence[str] | None = None) -> "ThetaOperator":
        """Rewrite in coordinates w with z_j = signs[j] * prod_i w_i^matrix[j][i].

        Then theta_{w_i} = sum_j matrix[j][i] theta_{z_j}, so theta_z is the
        inverse transpose of the matrix applied to theta_w."""
        n = self.nvars
        mat = [list(map(int, row)) for row in matrix]
        if len(mat) != n or any(len(r) != n for r in mat):
            raise ValueError("square exponent matrix required")
        det = _int_det(mat)
        if abs(det) != 1:
            raise ValueError("exponent matrix must be unimodular")
        signs = [as_fraction(s) for s in (signs or [1] * n)]
        new_variables = tuple(new_variables or self.variables)
        # theta_z = (M^T)^{-1} theta_w, an integer matrix
        mt_inv = _int_inverse([[mat[j][i] for j in range(n)] for i in range(n)])
        theta_images = []
        for j in range(n):
            row = {}
            for i in range(n):
                if mt_inv[j][i]:
                    unit = tuple(int(k == i) for k in range(n))
                    row[((0,) * n, unit)] = mt_inv[j][i]
            theta_images.append(ThetaOperator(new_variables, row))
        one = ThetaOperator(new_variables, {((0,) * n, (0,) * n): 1})
        result = ThetaOperator(new_variables)
        for (a, t), c in self._terms.items():
            coeff = c
            new_a = [0] * n
            for j, k in enumerate(a):
                coeff *= signs[j] ** k
                for i in range(n):
                    new_a[i] += mat[j][i] * k
            term = ThetaOperator(new_variables, {(tuple(new_a), (0,) * n): coeff})
            th = one
            for j, k in enumerate(t):
                for _ in range(k):
                    th = th.compose(theta_images[j])
            result = result + term.compose(th)
        return result

    def left_multiply(self, exp: Exponent, scale=1) -> "ThetaOperator":
        scale = as_fraction(scale)
        return ThetaOperator(self.variables,
                             {(_add(a, exp), t): c * scale for (a, t), c in self._terms.items()})

    def clear_monomial(self) -> "ThetaOperator":
        """Left-multiply by the smallest monomial making every coordinate
        exponent non-negative with no common monomial factor."""
        if not self._terms:
            return self
        n = self.nvars
        low = [min(a[i] for a, _ in self._terms) for i in range(n)]
        return self.left_multiply(tuple(-x for x in low))

    def normalize(self) -> "ThetaOperator":
        """Coprime integer coefficients, first nonzero coefficient positive.

        Terms are ordered by (theta exponent, coordinate exponent)."""
        if not self._terms:
            return self
        lcm = 1
        for c in self._terms.values():
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, int(c * lcm))
        first = min(self._terms, key=lambda k: (k[1], k[0]))
        factor = Fraction(lcm, g)
        if self._terms[first] < 0:
            factor = -factor
        return self.scale(factor)

    def proportional_to(self, other: "ThetaOperator") -> bool:
        return self.normalize() == other.normalize()

    # -- file format ---------------------------------------------------------------------

    def dumps(self) -> str:
        lines = [f"# variables: {' '.join(self.variables)}"]
        for t, poly in sorted(self.coefficients().items()):
            lines.append(f"{' '.join(map(str, t))} : {format_polynomial(poly)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ThetaOperator":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        header = lines[0].lstrip("#").strip()
        if not header.startswith("variables:"):
            raise ValueError("missing operator header")
        variables = tuple(header.split(":", 1)[1].split())
        by_theta = {}
        for ln in lines[1:]:
            lhs, rhs = ln.split(":", 1)
            t = tuple(int(x) for x in lhs.split())
            by_theta[t] = parse_polynomial(rhs, variables)
        return cls.from_polynomials(variables, by_theta)


def _shift_theta_power(t: Exponent, shift: Exponent) -> Dict[Exponent, int]:
    """Expand prod_i (theta_i + shift_i)^{t_i} into theta monomials."""
    factors = []
    for ti, si in zip(t, shift):
        factors.append([(k, comb(ti, k) * si ** (ti - k)) for k in range(ti + 1)
                        if si or k == ti])
    out: Dict[Exponent, int] = {}
    for combo in product(*factors):
        w = 1
        for _, c in combo:
            w *= c
        if w:
            key = tuple(k for k, _ in combo)
            out[key] = out.get(key, 0) + w
    return out


def _int_det(m: List[List[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _int_det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(n))


def _int_inverse(m: List[List[int]]) -> List[List[int]]:
    n = len(m)
    det = _int_det(m)
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            cof = (-1) ** (i + j) * (_int_det(minor) if minor else 1)
            inv[j][i] = Fraction(cof, det)
    for row in inv:
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix not invertible over the integers")
    return [[int(x) for x in row] for row in inv]


def op_apply(op: ThetaOperator, s: TruncatedSeries) -> TruncatedSeries:
    return op.apply(s)


def annihilates(op: ThetaOperator, s: TruncatedSeries,
                through_degree: int | None = None) -> Tuple[bool, Exponent | None]:
    """(True, None) if op(s) vanishes through `through_degree`, otherwise
    (False, first failing exponent in degree-then-lex order)."""
    image = op.apply(s)
    limit = image.cap if through_degree is None else through_degree
    if limit > image.cap:
        raise ValueError(f"only degrees <= {image.cap} are exact")
    bad = [e for e, _ in image.items() if sum(e) <= limit]
    if not bad:
        return True, None
    return False, min(bad, key=lambda e: (sum(e), tuple(-x for x in e)))


def operator_shape(nvars: int, theta_degree: int, coeff_degree: int) -> List[Key]:
    """All (coordinate exponent, theta exponent) pairs within the bounds."""
    return [(a, t) for t in exponents_up_to(nvars, theta_degree)
            for a in exponents_up_to(nvars, coeff_degree)]


def fit_operator(s: TruncatedSeries, theta_degree: int, coeff_degree: int,
                 margin: int = 2) -> List[ThetaOperator]:
    """Basis of all operators of the given shape annihilating `s` through its cap.

    Raises ValueError when the series gives fewer than `margin` times as
    many conditions as unknowns, or when nothing of that shape annihilates s."""
    shape = operator_shape(s.nvars, theta_degree, coeff_degree)
    targets = list(exponents_up_to(s.nvars, s.cap))
    if len(targets) < margin * len(shape):
        raise ValueError(f"insufficient data: {len(targets)} conditions for "
                         f"{len(shape)} unknowns")
    coeffs = dict(s.items())
    rows = []
    for n in targets:
        row = []
        for a, t in shape:
            e = tuple(x - y for x, y in zip(n, a))
            if min(e) < 0:
                row.append(0)
                continue
            c = coeffs.get(e)
            row.append(c * _theta_eigen(e, t) if c else 0)
        rows.append(row)
    basis = nullspace(rows, len(shape))
    if not basis:
        raise ValueError("no operator of this shape annihilates the series")
    ops = [ThetaOperator(s.variables, dict(zip(shape, v))).normalize() for v in basis]
    return ops


def in_span(op: ThetaOperator, basis: Sequence[ThetaOperator]) -> bool:
    """Whether op is a rational linear combination of the given operators."""
    keys = sorted({k for b in list(basis) + [op] for k, _ in b.items()})
    rows = [[b._terms.get(k, 0) for k in keys] for b in basis]
    before = rank(rows, len(keys)) if rows else 0
    return before == rank(rows + [[op._terms.get(k, 0) for k in keys]], len(keys))


# The two operators annihilating the two-parameter period at [1,0,0].

def _p1() -> ThetaOperator:
    v = ("z1", "z2")

    def poly(d):
        return Polynomial(v, d)

    by_theta = {
        (2, 0): poly({(2, 0): 1, (1, 1): 11, (0, 2): 10, (1, 0): 11, (0, 1): 11, (0, 0): -1}),
        (1, 1): poly({(2, 0): 5, (1, 1): 10, (0, 2): 5, (1, 0): 22, (0, 1): 22, (0, 0): 1}),
        (0, 2): poly({(2, 0): 10, (1, 1): 11, (0, 2): 1, (1, 0): 11, (0, 1): 11, (0, 0): -1}),
        # (z1+z2)(2z1+5z2+11)
        (1, 0): poly({(2, 0): 2, (1, 1): 7, (0, 2): 5, (1, 0): 11, (0, 1): 11}),
        # (z1+z2)(5z1+2z2+11)
        (0, 1): poly({(2, 0): 5, (1, 1): 7, (0, 2): 2, (1, 0): 11, (0, 1): 11}),
        # (z1+z2)(z1+z2+3)
        (0, 0): poly({(2, 0): 1, (1, 1): 2, (0, 2): 1, (1, 0): 3, (0, 1): 3}),
    }
    return ThetaOperator.from_polynomials(v, by_theta)


def _p2() -> ThetaOperator:
    v = ("z1", "z2")
    return ThetaOperator(v, {((1, 0), (0, 3)): 1, ((0, 1), (3, 0)): -1})


P1 = _p1()
P2 = _p2()

# Chart at [0,1,0]: z1 = -1/w0, z2 = w2/w0.
LCS010_MATRIX = ((-1, 0), (-1, 1))
LCS010_SIGNS = (-1, 1)
LCS010_VARIABLES = ("w0", "w2")


def to_lcs010(op: ThetaOperator) -> ThetaOperator:
    """Carry an operator from the [1,0,0] chart to the [0,1,0] chart.

    The period there is w0 times a section of weight -1, so the operator is
    conjugated by w0^-1 (theta_w0 -> theta_w0 + 1) and then cleared of its
    monomial prefactor."""
    moved = op.change_torus_coordinates(LCS010_MATRIX, LCS010_SIGNS, LCS010_VARIABLES)
    return moved.conjugate_by_monomial((-1, 0)).clear_monomial().normalize()


def q_operators() -> Tuple[ThetaOperator, ThetaOperator]:
    return to_lcs010(P1), to_lcs010(P2)
