"""
Exact multivariate power series truncated by total degree, and exact
multivariate polynomials.

Both types store coefficients sparsely in a dict keyed by exponent tuples,
with :class:`fractions.Fraction` values.  Zero coefficients are never stored.
Values are treated as immutable once constructed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]

DEFAULT_CAP = 12


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def exponents_up_to(nvars: int, cap: int) -> Iterator[Exponent]:
    """All exponent tuples in `nvars` variables with total degree <= cap,
    ordered by total degree, then lexicographically."""
    for total in range(cap + 1):
        yield from exponents_of_degree(nvars, total)


def exponents_of_degree(nvars: int, total: int) -> Iterator[Exponent]:
    if nvars == 0:
        if total == 0:
            yield ()
        return
    if nvars == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in exponents_of_degree(nvars - 1, total - first):
            yield (first,) + rest


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class VariableMismatch(ValueError):
    pass


class TruncatedSeries:
    """A power series in `variables` known exactly through total degree `cap`."""

    __slots__ = ("variables", "cap", "_coeffs")

    def __init__(self, variables: Sequence[str], cap: int,
                 coeffs: Mapping[Exponent, object] | None = None):
        if cap < 0:
            raise ValueError("cap must be non-negative")
        self.variables = tuple(variables)
        self.cap = int(cap)
        n = len(self.variables)
        store: Dict[Exponent, Fraction] = {}
        for exp, value in (coeffs or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent {exp} for variables {self.variables}")
            if sum(exp) > self.cap:
                continue
            value = as_fraction(value)
            if value:
                store[exp] = store.get(exp, Fraction(0)) + value
                if not store[exp]:
                    del store[exp]
        self._coeffs = store

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, variables, cap, coeffs: Dict[Exponent, Fraction]) -> "TruncatedSeries":
        obj = object.__new__(cls)
        obj.variables = variables
        obj.cap = cap
        obj._coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, variables: Sequence[str], cap: int) -> "TruncatedSeries":
        return cls(variables, cap)

    @classmethod
    def one(cls, variables: Sequence[str], cap: int) -> "TruncatedSeries":
        return cls.constant(variables, cap, 1)

    @classmethod
    def constant(cls, variables: Sequence[str], cap: int, value) -> "TruncatedSeries":
        return cls(variables, cap, {(0,) * len(tuple(variables)): value})

    @classmethod
    def monomial(cls, variables: Sequence[str], cap: int, exp: Exponent,
                 coeff=1) -> "TruncatedSeries":
        return cls(variables, cap, {tuple(exp): coeff})

    @classmethod
    def variable(cls, variables: Sequence[str], cap: int, name: str) -> "TruncatedSeries":
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if sum(exp) != 1:
            raise KeyError(name)
        return cls(variables, cap, {exp: 1})

    @classmethod
    def from_function(cls, variables: Sequence[str], cap: int,
                      fn: Callable[[Exponent], object]) -> "TruncatedSeries":
        variables = tuple(variables)
        return cls(variables, cap,
                   {e: fn(e) for e in exponents_up_to(len(variables), cap)})

    # -- accessors -------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __getitem__(self, exp) -> Fraction:
        if isinstance(exp, int):
            exp = (exp,)
        exp = tuple(exp)
        if sum(exp) > self.cap:
            raise IndexError(f"degree {sum(exp)} beyond cap {self.cap}")
        return self._coeffs.get(exp, Fraction(0))

    coefficient = __getitem__

    def items(self) -> Iterable[Tuple[Exponent, Fraction]]:
        return self._coeffs.items()

    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._coeffs)

    def constant_term(self) -> Fraction:
        return self._coeffs.get((0,) * self.nvars, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def valuation(self) -> int:
        """Lowest total degree with a nonzero coefficient (cap+1 if zero)."""
        if not self._coeffs:
            return self.cap + 1
        return min(sum(e) for e in self._coeffs)

    def degree_slice(self, total: int) -> Dict[Exponent, Fraction]:
        return {e: c for e, c in self._coeffs.items() if sum(e) == total}

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.variables}, cap={self.cap}, {self.format_terms(8)})"

    def format_terms(self, limit: int | None = None) -> str:
        keys = sorted(self._coeffs, key=lambda e: (sum(e), tuple(-x for x in e)))
        parts = []
        for e in keys[:limit]:
            mono = "*".join(f"{v}^{k}" if k > 1 else v
                            for v, k in zip(self.variables, e) if k)
            c = self._coeffs[e]
            parts.append(f"{c}" if not mono else f"{c}*{mono}")
        if limit is not None and len(keys) > limit:
            parts.append("...")
        return " + ".join(parts) if parts else "0"

    # -- comparisons -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return (self.variables == other.variables and self.cap == other.cap
                    and self._coeffs == other._coeffs)
        if isinstance(other, (int, Fraction)):
            return self == TruncatedSeries.constant(self.variables, self.cap, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, self.cap, frozenset(self._coeffs.items())))

    def agrees_with(self, other: "TruncatedSeries", through: int | None = None) -> bool:
        """Coefficient equality through total degree `through` (default: common cap)."""
        self._check(other)
        limit = min(self.cap, other.cap) if through is None else through
        keys = set(self._coeffs) | set(other._coeffs)
        return all(self[e] == other[e] for e in keys if sum(e) <= limit)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "TruncatedSeries") -> None:
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} != {other.variables}")

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, Polynomial):
            return other.to_series(self.variables, self.cap)
        return TruncatedSeries.constant(self.variables, self.cap, other)

    def truncate(self, cap: int) -> "TruncatedSeries":
        cap = min(cap, self.cap)
        return TruncatedSeries._raw(self.variables, cap,
                                    {e: c for e, c in self._coeffs.items() if sum(e) <= cap})

    def __add__(self, other) -> "TruncatedSeries":
        other = self._coerce(other)
        cap = min(self.cap, other.cap)
        out = {e: c for e, c in self._coeffs.items() if sum(e) <= cap}
        for e, c in other._coeffs.items():
            if sum(e) > cap:
                continue
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TruncatedSeries._raw(self.variables, cap, out)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries._raw(self.variables, self.cap,
                                    {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def scale(self, factor) -> "TruncatedSeries":
        factor = as_fraction(factor)
        if not factor:
            return TruncatedSeries.zero(self.variables, self.cap)
        return TruncatedSeries._raw(self.variables, self.cap,
                                    {e: c * factor for e, c in self._coeffs.items()})

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        cap = min(self.cap, other.cap)
        out: Dict[Exponent, Fraction] = {}
        b_items = sorted(other._coeffs.items(), key=lambda t: sum(t[0]))
        b_deg = [sum(e) for e, _ in b_items]
        for ea, ca in self._coeffs.items():
            room = cap - sum(ea)
            if room < 0:
                continue
            for (eb, cb), db in zip(b_items, b_deg):
                if db > room:
                    break
                e = _add_exp(ea, eb)
                out[e] = out.get(e, 0) + ca * cb
        return TruncatedSeries._raw(self.variables, cap, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / as_fraction(other))
        return self * self._coerce(other).reciprocal()

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            return self.reciprocal() ** (-n)
        result = TruncatedSeries.one(self.variables, self.cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        a0 = self.constant_term()
        if not a0:
            raise ZeroDivisionError("series has zero constant term")
        inv0 = 1 / a0
        n = self.nvars
        result: Dict[Exponent, Fraction] = {(0,) * n: inv0}
        tail = [(e, c) for e, c in self._coeffs.items() if any(e)]
        # b_e = -inv0 * sum_{f != 0} a_f b_{e-f}, solved degree by degree
        for total in range(1, self.cap + 1):
            for e in exponents_of_degree(n, total):
                acc = Fraction(0)
                for f, c in tail:
                    g = tuple(x - y for x, y in zip(e, f))
                    if min(g) < 0:
                        continue
                    b = result.get(g)
                    if b:
                        acc += c * b
                if acc:
                    result[e] = -acc * inv0
        return TruncatedSeries._raw(self.variables, self.cap, result)

    # -- calculus ----------------------------------------------------------------

    def theta(self, index: int) -> "TruncatedSeries":
        """Logarithmic derivative x_i d/dx_i."""
        return TruncatedSeries._raw(self.variables, self.cap,
                                    {e: c * e[index] for e, c in self._coeffs.items() if e[index]})

    def shift(self, exp: Exponent, cap: int | None = None) -> "TruncatedSeries":
        """Multiply by the monomial x^exp, keeping terms up to `cap` (default self.cap)."""
        cap = self.cap if cap is None else cap
        out = {}
        for e, c in self._coeffs.items():
            f = _add_exp(e, exp)
            if sum(f) <= cap:
                out[f] = c
        return TruncatedSeries._raw(self.variables, cap, out)

    def exp(self) -> "TruncatedSeries":
        """exp(self) for a series with zero constant term."""
        if self.constant_term():
            raise ValueError("exp needs a zero constant term")
        result = TruncatedSeries.one(self.variables, self.cap)
        term = result
        for k in range(1, self.cap + 1):
            term = (term * self).scale(Fraction(1, k))
            if term.is_zero():
                break
            result = result + term
        return result

    def log(self) -> "TruncatedSeries":
        """log(self) for a series with constant term 1."""
        if self.constant_term() != 1:
            raise ValueError("log needs constant term 1")
        u = self - 1
        result = TruncatedSeries.zero(self.variables, self.cap)
        power = TruncatedSeries.one(self.variables, self.cap)
        for k in range(1, self.cap + 1):
            power = power * u
            if power.is_zero():
                break
            result = result + power.scale(Fraction((-1) ** (k + 1), k))
        return result

    def substitute(self, images: Sequence["TruncatedSeries"]) -> "TruncatedSeries":
        """Compose: replace variable i by images[i] (series without constant term).

        The images may live in a different variable set; the result uses
        theirs, with cap min(self.cap, image caps)."""
        if len(images) != self.nvars:
            raise ValueError("one image per variable required")
        target = images[0]
        for img in images:
            target._check(img)
            if img.constant_term():
                raise ValueError("substituted series must vanish at the origin")
        cap = min([self.cap] + [img.cap for img in images])
        powers = []
        for img in images:
            img = img.truncate(cap)
            row = [TruncatedSeries.one(target.variables, cap)]
            maxpow = max((e[len(powers)] for e in self._coeffs), default=0)
            for _ in range(maxpow):
                row.append(row[-1] * img)
            powers.append(row)
        out = TruncatedSeries.zero(target.variables, cap)
        acc: Dict[Exponent, Fraction] = {}
        for e, c in self._coeffs.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = powers[i][k] if term is None else term * powers[i][k]
            if term is None:
                term = TruncatedSeries.one(target.variables, cap)
            for f, v in term._coeffs.items():
                acc[f] = acc.get(f, 0) + c * v
        out = TruncatedSeries(target.variables, cap, acc)
        return out

    def restrict(self, fixed: Mapping[int, int]) -> "TruncatedSeries":
        """Keep only terms whose exponent at index i equals fixed[i] (e.g. set x_i = 0)."""
        return TruncatedSeries._raw(
            self.variables, self.cap,
            {e: c for e, c in self._coeffs.items()
             if all(e[i] == k for i, k in fixed.items())})

    def permute(self, order: Sequence[int]) -> "TruncatedSeries":
        """Reorder variables: new variable j is old variable order[j]."""
        variables = tuple(self.variables[i] for i in order)
        return TruncatedSeries._raw(variables, self.cap,
                                    {tuple(e[i] for i in order): c
                                     for e, c in self._coeffs.items()})

    def rename(self, variables: Sequence[str]) -> "TruncatedSeries":
        variables = tuple(variables)
        if len(variables) != self.nvars:
            raise ValueError("wrong number of variable names")
        return TruncatedSeries._raw(variables, self.cap, dict(self._coeffs))

    # -- serialization -----------------------------------------------------------

    def dumps(self) -> str:
        lines = [f"# variables: {' '.join(self.variables)}; cap: {self.cap}"]
        for e in sorted(self._coeffs):
            c = self._coeffs[e]
            lines.append(f"{' '.join(map(str, e))} : {c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "TruncatedSeries":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("#"):
            raise ValueError("missing series header")
        header = lines[0].lstrip("#").strip()
        fields = dict(part.split(":", 1) for part in header.split(";"))
        fields = {k.strip(): v.strip() for k, v in fields.items()}
        variables = tuple(fields["variables"].split())
        cap = int(fields["cap"])
        coeffs = {}
        for ln in lines[1:]:
            lhs, rhs = ln.split(":")
            exp = tuple(int(t) for t in lhs.split())
            if len(exp) != len(variables):
                raise ValueError(f"bad term line {ln!r}")
            if exp in coeffs:
                raise ValueError(f"duplicate term {exp}")
            coeffs[exp] = Fraction(rhs.strip())
        return cls(variables, cap, coeffs)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    return a.reciprocal()


def series_hadamard_total(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Multiply each coefficient of `b` at multi-index d by the coefficient of
    the one-variable series `a` at total degree |d|."""
    if a.nvars != 1:
        raise ValueError("first argument must be a one-variable series")
    cap = min(a.cap, b.cap)
    return TruncatedSeries(b.variables, cap,
                           {e: c * a[(sum(e),)] for e, c in b.items() if sum(e) <= cap})


class Polynomial:
    """Exact multivariate polynomial with rational coefficients."""

    __slots__ = ("variables", "_coeffs")

    def __init__(self, variables: Sequence[str], coeffs: Mapping[Exponent, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        store: Dict[Exponent, Fraction] = {}
        for exp, value in (coeffs or {}).items():
            exp = tuple(int(x) for x in exp)
            if len(exp) != n:
                raise ValueError(f"bad exponent {exp}")
            value = as_fraction(value)
            if value:
                v = store.get(exp, Fraction(0)) + value
                if v:
                    store[exp] = v
                else:
                    store.pop(exp, None)
        self._coeffs = store

    @classmethod
    def _raw(cls, variables, coeffs):
        obj = object.__new__(cls)
        obj.variables = variables
        obj._coeffs = coeffs
        return obj

    @classmethod
    def constant(cls, variables, value) -> "Polynomial":
        return cls(variables, {(0,) * len(tuple(variables)): value})

    @classmethod
    def monomial(cls, variables, exp, coeff=1) -> "Polynomial":
        return cls(variables, {tuple(exp): coeff})

    @classmethod
    def gens(cls, variables) -> Tuple["Polynomial", ...]:
        variables = tuple(variables)
        n = len(variables)
        return tuple(cls(variables, {tuple(int(i == j) for j in range(n)): 1}) for i in range(n))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def items(self):
        return self._coeffs.items()

    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._coeffs)

    def __getitem__(self, exp) -> Fraction:
        return self._coeffs.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int:
        return max((sum(e) for e in self._coeffs), default=-1)

    def constant_term(self) -> Fraction:
        return self._coeffs.get((0,) * self.nvars, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self._coeffs.items())))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise VariableMismatch(f"{self.variables} != {other.variables}")
            return other
        return Polynomial.constant(self.variables, other)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return other + self
        other = self._coerce(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.variables, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return other * self
        if isinstance(other, (int, Fraction)):
            other = as_fraction(other)
            if not other:
                return Polynomial(self.variables)
            return Polynomial._raw(self.variables, {e: c * other for e, c in self._coeffs.items()})
        other = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for ea, ca in self._coeffs.items():
            for eb, cb in other._coeffs.items():
                e = _add_exp(ea, eb)
                out[e] = out.get(e, 0) + ca * cb
        return Polynomial._raw(self.variables, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial.constant(self.variables, 1)
        for _ in range(n):
            result = result * self
        return result

    def theta(self, index: int) -> "Polynomial":
        return Polynomial._raw(self.variables,
                               {e: c * e[index] for e, c in self._coeffs.items() if e[index]})

    def shift(self, exp: Exponent) -> "Polynomial":
        return Polynomial._raw(self.variables,
                               {_add_exp(e, exp): c for e, c in self._coeffs.items()})

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self._coeffs.items():
            term = c
            for x, k in zip(point, e):
                term *= as_fraction(x) ** k
            total += term
        return total

    def to_series(self, variables: Sequence[str] | None = None, cap: int = DEFAULT_CAP) -> TruncatedSeries:
        variables = self.variables if variables is None else tuple(variables)
        if variables != self.variables:
            raise VariableMismatch(f"{self.variables} != {variables}")
        return TruncatedSeries(variables, cap, self._coeffs)

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._coeffs:
            return Fraction(1)
        lcm = 1
        for c in self._coeffs.values():
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        g = 0
        for c in self._coeffs.values():
            g = math.gcd(g, int(c * lcm))
        return Fraction(g, lcm)

    def substitute_monomials(self, images: Sequence[Tuple[Fraction, Exponent]],
                             variables: Sequence[str]) -> Dict[Exponent, Fraction]:
        """Replace variable i by sign_i * w^exp_i.  Returns a Laurent polynomial
        as a dict (exponents may be negative) in the new variables."""
        out: Dict[Exponent, Fraction] = {}
        m = len(tuple(variables))
        for e, c in self._coeffs.items():
            coeff = c
            new = [0] * m
            for (scale, img), k in zip(images, e):
                coeff *= as_fraction(scale) ** k
                for j in range(m):
                    new[j] += img[j] * k
            key = tuple(new)
            out[key] = out.get(key, 0) + coeff
        return {e: c for e, c in out.items() if c}

    def divide_exact(self, other: "Polynomial") -> "Polynomial":
        """Exact division; raises ValueError if `other` does not divide self."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError
        order = lambda e: (sum(e), e)  # graded lex
        lead_b = max(other._coeffs, key=order)
        cb = other._coeffs[lead_b]
        rem = dict(self._coeffs)
        quot: Dict[Exponent, Fraction] = {}
        while rem:
            lead = max(rem, key=order)
            diff = tuple(x - y for x, y in zip(lead, lead_b))
            if min(diff) < 0:
                raise ValueError("not divisible")
            q = rem[lead] / cb
            quot[diff] = q
            for e, c in other._coeffs.items():
                f = _add_exp(e, diff)
                v = rem.get(f, 0) - q * c
                if v:
                    rem[f] = v
                else:
                    rem.pop(f, None)
        return Polynomial._raw(self.variables, quot)


def format_polynomial(p: Polynomial) -> str:
    """Render as ``c * z1^a z2^b + ...`` with exact rational coefficients."""
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p._coeffs, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = p._coeffs[e]
        mono = " ".join(f"{v}^{k}" if k != 1 else v for v, k in zip(p.variables, e) if k)
        parts.append(f"{c} * {mono}" if mono else f"{c}")
    return " + ".join(parts)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Inverse of :func:`format_polynomial`."""
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    text = text.strip()
    if text == "0":
        return Polynomial(variables)
    coeffs: Dict[Exponent, Fraction] = {}
    for chunk in text.split(" + "):
        if "*" in chunk:
            cpart, mpart = chunk.split("*", 1)
        else:
            cpart, mpart = chunk, ""
        exp = [0] * len(variables)
        for factor in mpart.split():
            name, _, power = factor.partition("^")
            exp[index[name]] += int(power) if power else 1
        key = tuple(exp)
        coeffs[key] = coeffs.get(key, 0) + Fraction(cpart.strip())
    return Polynomial(variables, coeffs)


def series_from_sequence(values: Sequence, name: str = "x") -> TruncatedSeries:
    """One-variable series with the given coefficient list."""
    return TruncatedSeries((name,), len(values) - 1, {(i,): v for i, v in enumerate(values)})


def reversion(forward: Sequence[TruncatedSeries]) -> Tuple[TruncatedSeries, ...]:
    """Invert a map q_i = x_i * exp(g_i(x)) given as the list of series q_i(x).

    Returns x_i(q) in the same variable names (interpreted as q).  Each q_i
    must have the form x_i * (c + ...) with c = 1."""
    variables = forward[0].variables
    cap = min(f.cap for f in forward)
    n = len(forward)
    units = []
    for i, f in enumerate(forward):
        unit = {}
        for e, c in f.items():
            if e[i] == 0:
                raise ValueError("forward map must be divisible by its variable")
            unit[tuple(x - (j == i) for j, x in enumerate(e))] = c
        u = TruncatedSeries(variables, cap, unit)
        if u.constant_term() != 1:
            raise ValueError("forward map must be x_i*(1 + ...)")
        units.append(u)
    gens = [TruncatedSeries.variable(variables, cap, v) for v in variables]
    # x = q / u(x); each sweep fixes one more total degree
    xs = list(gens)
    for _ in range(cap + 1):
        new = []
        for i in range(n):
            inv_u = units[i].substitute(xs).reciprocal()
            new.append(gens[i] * inv_u)
        if new == xs:
            break
        xs = new
    return tuple(xs)
