"""Sparse multivariate polynomials and rational functions over exact rationals.

Everything downstream (forms, anchors, pencils, certificates) is built on the
two arithmetic classes here.  Design points that the rest of the package
relies on:

* a ``VarTable`` fixes the variable order once; monomials are compared
  lexicographically in declared order (earlier variables weigh more) which is
  exactly Python tuple comparison on exponent vectors;
* ``Polynomial`` stores ``{exponent tuple: Fraction}`` with no zero entries;
* ``RationalFunction`` is always reduced (gcd of numerator and denominator is
  a unit) with a monic denominator under the monomial order, so structural
  equality coincides with equality in the fraction field;
* the pencil parameter and symbolic constants are ordinary ring variables but
  are fenced off from every differential operator.

Polynomial gcds use a fraction-free subresultant remainder sequence,
recursing on the most recently declared variable that actually occurs.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .errors import (
    DivisionByZero,
    ForbiddenVariable,
    NegativeExponent,
    ParseError,
    PoleAtPoint,
    SamplingExhausted,
    TableMismatch,
    UnknownVariable,
)

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class VarKind(enum.Enum):
    """Role of a variable in the ambient ring."""

    MANIFOLD = "manifold"
    PENCIL = "pencil_parameter"
    APPENDED = "appended_coordinate"
    CONSTANT = "constant"

    @property
    def geometric(self) -> bool:
        # geometric variables carry differentials and coordinate indices
        return self in (VarKind.MANIFOLD, VarKind.APPENDED)


@dataclass(frozen=True)
class VarTable:
    """Ordered list of variable names with their roles."""

    names: tuple[str, ...]
    kinds: tuple[VarKind, ...]

    def __post_init__(self):
        if len(self.names) != len(self.kinds):
            raise TableMismatch("names and kinds have different lengths")
        seen = set()
        for name in self.names:
            if not _IDENT_RE.fullmatch(name):
                raise ParseError(f"invalid variable name {name!r}")
            if name in seen:
                raise TableMismatch(f"duplicate variable {name!r}")
            seen.add(name)
        for kind in (VarKind.PENCIL, VarKind.APPENDED):
            if sum(1 for k in self.kinds if k is kind) > 1:
                raise TableMismatch(f"more than one {kind.value} variable")

    @staticmethod
    def build(entries) -> "VarTable":
        """Create a table from ``[(name, kind-or-string), ...]`` or names."""
        names, kinds = [], []
        for entry in entries:
            if isinstance(entry, str):
                name, kind = entry, VarKind.MANIFOLD
            else:
                name, kind = entry
                if isinstance(kind, str):
                    kind = VarKind(kind)
            names.append(name)
            kinds.append(kind)
        return VarTable(tuple(names), tuple(kinds))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def kind_of(self, name: str) -> VarKind:
        return self.kinds[self.index(name)]

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def geometric_indices(self) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.kinds) if k.geometric)

    @property
    def dim(self) -> int:
        """Number of geometric variables (the manifold dimension)."""
        return len(self.geometric_indices)

    @property
    def pencil_index(self):
        for i, k in enumerate(self.kinds):
            if k is VarKind.PENCIL:
                return i
        return None

    @property
    def appended_index(self):
        for i, k in enumerate(self.kinds):
            if k is VarKind.APPENDED:
                return i
        return None

    def extend(self, name: str, kind: VarKind) -> "VarTable":
        """New table with one variable appended (existing indices keep)."""
        return VarTable(self.names + (name,), self.kinds + (kind,))

    def require_same(self, other: "VarTable"):
        if self != other:
            raise TableMismatch(
                f"variable tables differ: {self.names} vs {other.names}"
            )


def _coerce_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


class Polynomial:
    """Sparse polynomial: mapping from exponent tuples to Fractions."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: dict):
        self.table = table
        self.terms = {e: c for e, c in terms.items() if c}

    # --- constructors -----------------------------------------------------

    @staticmethod
    def zero(table: VarTable) -> "Polynomial":
        return Polynomial(table, {})

    @staticmethod
    def constant(table: VarTable, value) -> "Polynomial":
        value = _coerce_fraction(value)
        if not value:
            return Polynomial.zero(table)
        return Polynomial(table, {(0,) * table.size: value})

    @staticmethod
    def one(table: VarTable) -> "Polynomial":
        return Polynomial.constant(table, 1)

    @staticmethod
    def variable(table: VarTable, name: str) -> "Polynomial":
        i = table.index(name)
        exp = [0] * table.size
        exp[i] = 1
        return Polynomial(table, {tuple(exp): Fraction(1)})

    @staticmethod
    def monomial(table: VarTable, exponents, coeff=1) -> "Polynomial":
        return Polynomial(table, {tuple(exponents): _coerce_fraction(coeff)})

    # --- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def leading(self):
        """(exponent tuple, coefficient) of the lex-largest monomial."""
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def degree_in(self, index: int) -> int:
        """Largest exponent of the variable at ``index`` (-1 for zero)."""
        if self.is_zero():
            return -1
        return max(e[index] for e in self.terms)

    def variables_present(self):
        present = set()
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    present.add(i)
        return present

    def involves(self, index: int) -> bool:
        return any(e[index] for e in self.terms)

    # --- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self.table.require_same(other.table)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.table, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e, 0) + c
            if acc:
                terms[e] = acc
            else:
                terms.pop(e, None)
        return Polynomial(self.table, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce_fraction(other)
            if not c:
                return Polynomial.zero(self.table)
            return Polynomial(
                self.table, {e: k * c for e, k in self.terms.items()}
            )
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                acc = terms.get(e, 0) + ca * cb
                if acc:
                    terms[e] = acc
                else:
                    terms.pop(e, None)
        return Polynomial(self.table, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise NegativeExponent(f"exponent must be an unsigned integer, got {n}")
        result = Polynomial.one(self.table)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.table, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __repr__(self):
        return f"Polynomial({self.render()!r})"

    # --- calculus / evaluation ----------------------------------------------

    def derivative(self, index: int) -> "Polynomial":
        """Partial derivative along a geometric variable."""
        kind = self.table.kinds[index]
        if not kind.geometric:
            raise ForbiddenVariable(
                f"cannot differentiate along {self.table.names[index]!r} "
                f"({kind.value})"
            )
        terms: dict = {}
        for e, c in self.terms.items():
            p = e[index]
            if not p:
                continue
            new = list(e)
            new[index] = p - 1
            terms[tuple(new)] = c * p
        return Polynomial(self.table, terms)

    def evaluate(self, point: "RationalPoint") -> Fraction:
        self.table.require_same(point.table)
        total = Fraction(0)
        for e, c in self.terms.items():
            value = c
            for i, p in enumerate(e):
                if p:
                    value *= point.values[i] ** p
            total += value
        return total

    def substitute(self, mapping: dict) -> "RationalFunction":
        """Replace named variables by exact values or expressions."""
        return RationalFunction.from_polynomial(self)._substitute(mapping)

    # --- display --------------------------------------------------------------

    def render(self) -> str:
        """Canonical text, re-parseable by ``parse_expr``."""
        if self.is_zero():
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for i, p in enumerate(e):
                if p == 1:
                    factors.append(self.table.names[i])
                elif p:
                    factors.append(f"{self.table.names[i]}^{p}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = _render_fraction(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_render_fraction(mag)}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _render_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# --- gcd machinery -----------------------------------------------------------


def poly_exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact quotient p/q; raises if the division leaves a remainder."""
    p.table.require_same(q.table)
    if q.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if q.is_constant():
        return p * (1 / q.constant_value())
    quot = Polynomial.zero(p.table)
    rem = p
    eq, cq = q.leading()
    while not rem.is_zero():
        er, cr = rem.leading()
        diff = tuple(a - b for a, b in zip(er, eq))
        if any(d < 0 for d in diff):
            raise DivisionByZero("polynomial division is not exact")
        t = Polynomial.monomial(p.table, diff, cr / cq)
        quot = quot + t
        rem = rem - t * q
    return quot


def _monic(p: Polynomial) -> Polynomial:
    if p.is_zero():
        return p
    _, c = p.leading()
    return p * (1 / c)


def _monomial_content(p: Polynomial):
    """Componentwise min of all exponent vectors."""
    it = iter(p.terms)
    acc = list(next(it))
    for e in it:
        for i, x in enumerate(e):
            if x < acc[i]:
                acc[i] = x
    return tuple(acc)


def _shift_down(p: Polynomial, mono) -> Polynomial:
    if not any(mono):
        return p
    return Polynomial(
        p.table,
        {tuple(a - b for a, b in zip(e, mono)): c for e, c in p.terms.items()},
    )


def _univariate_view(p: Polynomial, v: int):
    """Coefficients of powers of variable ``v``: {power: Polynomial}."""
    coeffs: dict = {}
    for e, c in p.terms.items():
        d = e[v]
        stripped = list(e)
        stripped[v] = 0
        bucket = coeffs.setdefault(d, {})
        bucket[tuple(stripped)] = bucket.get(tuple(stripped), 0) + c
    return {d: Polynomial(p.table, t) for d, t in coeffs.items()}


def _from_univariate(table: VarTable, v: int, coeffs: dict) -> Polynomial:
    terms: dict = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            lifted = list(e)
            lifted[v] += d
            terms[tuple(lifted)] = terms.get(tuple(lifted), 0) + c
    return Polynomial(table, terms)


def _lc_in(p: Polynomial, v: int) -> Polynomial:
    view = _univariate_view(p, v)
    return view[max(view)]


def _content_in(p: Polynomial, v: int) -> Polynomial:
    acc = None
    for coeff in _univariate_view(p, v).values():
        acc = coeff if acc is None else poly_gcd(acc, coeff)
        if acc.is_constant():
            break
    return _monic(acc)


def _prem(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    """Pseudo-remainder of a by b in the variable v."""
    n, m = a.degree_in(v), b.degree_in(v)
    lb = _lc_in(b, v)
    steps = n - m + 1
    r = a
    vpoly = Polynomial.variable(a.table, a.table.names[v])
    while not r.is_zero() and r.degree_in(v) >= m:
        d = r.degree_in(v) - m
        r = lb * r - _lc_in(r, v) * b * vpoly**d
        steps -= 1
    return lb**steps * r if steps else r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd under the table's monomial order (1 for coprime inputs)."""
    a.table.require_same(b.table)
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    ma, mb = _monomial_content(a), _monomial_content(b)
    shared = tuple(min(x, y) for x, y in zip(ma, mb))
    a0, b0 = _shift_down(a, ma), _shift_down(b, mb)
    common = Polynomial.monomial(a.table, shared)
    if a0.is_constant() or b0.is_constant():
        return common
    vs = a0.variables_present() | b0.variables_present()
    v = max(vs)
    if not a0.involves(v):
        return common * _monic(poly_gcd(a0, _content_in(b0, v)))
    if not b0.involves(v):
        return common * _monic(poly_gcd(_content_in(a0, v), b0))
    ca, cb = _content_in(a0, v), _content_in(b0, v)
    pa, pb = poly_exact_div(a0, ca), poly_exact_div(b0, cb)
    cont = poly_gcd(ca, cb)
    prim = _prs_gcd(pa, pb, v)
    return _monic(common * cont * prim)


def _prs_gcd(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    """Subresultant remainder sequence gcd of primitive-in-v inputs."""
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    g = Polynomial.one(a.table)
    h = Polynomial.one(a.table)
    while True:
        d = a.degree_in(v) - b.degree_in(v)
        r = _prem(a, b, v)
        if r.is_zero():
            prim = poly_exact_div(b, _content_in(b, v))
            return prim if prim.involves(v) else Polynomial.one(a.table)
        if b.degree_in(v) == 0:
            return Polynomial.one(a.table)
        a, b = b, poly_exact_div(r, g * h**d)
        g = _lc_in(a, v)
        if d == 1:
            h = g
        elif d > 1:
            h = poly_exact_div(g**d, h ** (d - 1))


# --- rational functions --------------------------------------------------------


class RationalFunction:
    """Reduced fraction of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        num.table.require_same(den.table)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            num = Polynomial.zero(num.table)
            den = Polynomial.one(num.table)
        else:
            g = poly_gcd(num, den)
            if not (g.is_constant() and g.constant_value() == 1):
                num = poly_exact_div(num, g)
                den = poly_exact_div(den, g)
            _, lead = den.leading()
            if lead != 1:
                inv = 1 / lead
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    # --- constructors ----------------------------------------------------------

    @staticmethod
    def from_polynomial(p: Polynomial) -> "RationalFunction":
        return RationalFunction(p, Polynomial.one(p.table))

    @staticmethod
    def zero(table: VarTable) -> "RationalFunction":
        return RationalFunction.from_polynomial(Polynomial.zero(table))

    @staticmethod
    def one(table: VarTable) -> "RationalFunction":
        return RationalFunction.from_polynomial(Polynomial.one(table))

    @staticmethod
    def constant(table: VarTable, value) -> "RationalFunction":
        return RationalFunction.from_polynomial(Polynomial.constant(table, value))

    @staticmethod
    def variable(table: VarTable, name: str) -> "RationalFunction":
        return RationalFunction.from_polynomial(Polynomial.variable(table, name))

    # --- structure ---------------------------------------------------------------

    @property
    def table(self) -> VarTable:
        return self.num.table

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == Polynomial.one(self.table)

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self.render()} is not a polynomial")
        return self.num

    def involves(self, index: int) -> bool:
        return self.num.involves(index) or self.den.involves(index)

    # --- arithmetic -----------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            self.table.require_same(other.table)
            return other
        if isinstance(other, Polynomial):
            return RationalFunction.from_polynomial(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(self.table, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise NegativeExponent(f"exponent must be an unsigned integer, got {n}")
        return RationalFunction(self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            coerced = self._coerce(other)
            if coerced is None:
                return NotImplemented
            other = coerced
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __repr__(self):
        return f"RationalFunction({self.render()!r})"

    # --- calculus / evaluation ----------------------------------------------------

    def derivative(self, index: int) -> "RationalFunction":
        dn = self.num.derivative(index)
        dd = self.den.derivative(index)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(
            dn * self.den - self.num * dd, self.den * self.den
        )

    def evaluate(self, point: "RationalPoint") -> Fraction:
        bottom = self.den.evaluate(point)
        if bottom == 0:
            raise PoleAtPoint(f"denominator {self.den.render()} vanishes")
        return self.num.evaluate(point) / bottom

    def substitute(self, mapping: dict) -> "RationalFunction":
        """Replace named variables by Fractions, Polynomials, or fractions
        of polynomials; the rest of the table is left symbolic."""
        return self._substitute(mapping)

    def _substitute(self, mapping: dict) -> "RationalFunction":
        table = self.table
        values = {}
        for name, value in mapping.items():
            i = table.index(name)
            if isinstance(value, (int, Fraction)):
                value = RationalFunction.constant(table, value)
            elif isinstance(value, Polynomial):
                value = RationalFunction.from_polynomial(value)
            values[i] = value

        def sub_poly(p: Polynomial) -> RationalFunction:
            total = RationalFunction.zero(table)
            for e, c in p.terms.items():
                kept = [0] * table.size
                piece = RationalFunction.constant(table, c)
                for i, power in enumerate(e):
                    if not power:
                        continue
                    if i in values:
                        piece = piece * values[i] ** power
                    else:
                        kept[i] = power
                piece = piece * Polynomial.monomial(table, kept)
                total = total + piece
            return total

        bottom = sub_poly(self.den)
        if bottom.is_zero():
            raise PoleAtPoint("substitution makes the denominator vanish")
        return sub_poly(self.num) / bottom

    def render(self) -> str:
        if self.is_polynomial():
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"


def migrate_polynomial(p: Polynomial, new_table: VarTable) -> Polynomial:
    """Move a polynomial between tables where one extends the other by
    trailing variables.  Restriction requires the dropped variables to be
    absent from every term."""
    old_table = p.table
    if old_table == new_table:
        return p
    small, large = sorted((old_table, new_table), key=lambda t: t.size)
    if (
        large.names[: small.size] != small.names
        or large.kinds[: small.size] != small.kinds
    ):
        raise TableMismatch(
            "tables differ beyond trailing variables; cannot migrate"
        )
    n = new_table.size
    terms = {}
    for e, c in p.terms.items():
        if len(e) > n:
            if any(e[n:]):
                extra = ", ".join(
                    old_table.names[i] for i in range(n, len(e)) if e[i]
                )
                raise ForbiddenVariable(
                    f"term involves {extra}; cannot restrict to the base table"
                )
            terms[e[:n]] = c
        else:
            terms[e + (0,) * (n - len(e))] = c
    return Polynomial(new_table, terms)


def migrate_ratfun(v: RationalFunction, new_table: VarTable) -> RationalFunction:
    """Table migration for reduced fractions; reduction and the monic
    denominator survive trailing-variable adjunction, so skip both."""
    if v.table == new_table:
        return v
    out = RationalFunction.__new__(RationalFunction)
    out.num = migrate_polynomial(v.num, new_table)
    out.den = migrate_polynomial(v.den, new_table)
    return out


def coefficients_in(value: RationalFunction, name: str) -> dict:
    """Decompose by powers of one variable: {power: RationalFunction}.

    The denominator must be free of the variable (true for every pencil
    polynomial this package produces; anything else is a logic error)."""
    table = value.table
    i = table.index(name)
    if value.den.involves(i):
        raise DivisionByZero(
            f"denominator {value.den.render()} involves {name!r}; "
            "no coefficient decomposition"
        )
    out = {}
    for power, coeff in _univariate_view(value.num, i).items():
        rf = RationalFunction(coeff, value.den)
        if not rf.is_zero():
            out[power] = rf
    return out


# --- rational points -----------------------------------------------------------------


@dataclass(frozen=True)
class RationalPoint:
    """Exact values for every variable of a table."""

    table: VarTable
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.table.size:
            raise TableMismatch("point has the wrong number of values")
        object.__setattr__(
            self, "values", tuple(_coerce_fraction(v) for v in self.values)
        )

    @staticmethod
    def from_mapping(table: VarTable, mapping: dict) -> "RationalPoint":
        missing = [n for n in table.names if n not in mapping]
        if missing:
            raise TableMismatch(f"point missing values for {missing}")
        return RationalPoint(table, tuple(mapping[n] for n in table.names))

    def value_of(self, name: str) -> Fraction:
        return self.values[self.table.index(name)]

    def as_mapping(self) -> dict:
        return dict(zip(self.table.names, self.values))


SAMPLE_BOUND = 10**6
SAMPLE_RETRIES = 50


def sample_point(table: VarTable, avoid, rng: Random,
                 retries: int = SAMPLE_RETRIES) -> RationalPoint:
    """Uniform integer point avoiding the vanishing loci of ``avoid``.

    ``avoid`` holds Polynomials or RationalFunctions that must be defined
    and nonzero at the sampled point.  Deterministic for a given rng state."""
    guards = list(avoid)
    for _ in range(retries):
        point = RationalPoint(
            table,
            tuple(
                Fraction(rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND))
                for _ in table.names
            ),
        )
        try:
            if all(_guard_value(g, point) != 0 for g in guards):
                return point
        except PoleAtPoint:
            continue
    raise SamplingExhausted(
        f"no admissible point in {retries} draws "
        f"({len(guards)} guard polynomials)"
    )


def _guard_value(guard, point: RationalPoint) -> Fraction:
    if isinstance(guard, Polynomial):
        return guard.evaluate(point)
    return guard.evaluate(point)


# --- parsing ------------------------------------------------------------------


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(
                f"unexpected character {stripped[0]!r}",
                len(text) - len(stripped),
            )
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser for the expression grammar.

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*          (plus '/' in fraction mode)
    factor := base ('^' uint)?
    base   := rational | ident | '(' expr ')'

    No implicit multiplication; whitespace is insignificant."""

    def __init__(self, text: str, table: VarTable, allow_division: bool):
        self.tokens = _tokenize(text)
        self.table = table
        self.allow_division = allow_division
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self):
        value = self.expr()
        kind, tok, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {tok!r}", pos)
        return value

    def expr(self):
        negate = False
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.term()
                acc = acc + rhs if value == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                acc = acc * self.factor()
            elif kind == "op" and value == "/" and self.allow_division:
                self.advance()
                rhs = self.factor()
                if rhs.is_zero():
                    raise DivisionByZero(f"division by zero at position {pos}")
                acc = acc / rhs
            else:
                return acc

    def factor(self):
        base = self.base()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, pos = self.peek()
            if kind == "op" and value == "-":
                raise NegativeExponent("negative exponent", pos)
            if kind != "num":
                raise ParseError("expected an unsigned integer exponent", pos)
            self.advance()
            base = base**value
        return base

    def base(self):
        kind, value, pos = self.peek()
        if kind == "num":
            self.advance()
            numerator = value
            denominator = 1
            # in strict mode a '/' binds only inside a rational literal
            if not self.allow_division:
                kind2, v2, _ = self.peek()
                kind3, v3, p3 = self.tokens[self.i + 1] if self.i + 1 < len(
                    self.tokens
                ) else ("end", None, 0)
                if kind2 == "op" and v2 == "/" and kind3 == "num":
                    self.advance()
                    self.advance()
                    if v3 == 0:
                        raise DivisionByZero(
                            f"zero denominator at position {p3}"
                        )
                    denominator = v3
            return self.make_constant(Fraction(numerator, denominator))
        if kind == "ident":
            self.advance()
            return self.make_variable(value)
        if kind == "op" and value == "(":
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {value!r}" if value else "unexpected end of input", pos)

    def make_constant(self, q: Fraction):
        if self.allow_division:
            return RationalFunction.constant(self.table, q)
        return Polynomial.constant(self.table, q)

    def make_variable(self, name: str):
        if self.allow_division:
            return RationalFunction.variable(self.table, name)
        return Polynomial.variable(self.table, name)


def parse_expr(text: str, table: VarTable) -> Polynomial:
    """Parse polynomial expression text (strict grammar, no division)."""
    return _Parser(text, table, allow_division=False).parse()


def parse_ratfun(text: str, table: VarTable) -> RationalFunction:
    """Parse a rational expression ('/' divides, left associative)."""
    return _Parser(text, table, allow_division=True).parse()
