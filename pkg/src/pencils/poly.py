"""Sparse multivariate polynomials over a FieldSpec.

Every polynomial lives in the fixed variable universe (x, y, alpha, s):
exponent vectors are 4-tuples.  `alpha` is the pencil parameter and `s` a
curve-branch parameter.  Canonical term order is graded lex, x > y > alpha > s.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import FieldMismatch, NotDivisible, ZeroPolynomial
from .field import QQ, FieldSpec, Scalar, join_fields

VARS = ("x", "y", "alpha", "s")
NVARS = len(VARS)
X, Y, ALPHA, S = range(NVARS)
_ZERO_EXP = (0,) * NVARS


def var_index(v) -> int:
    if isinstance(v, int):
        if not 0 <= v < NVARS:
            raise ValueError(f"no variable with index {v}")
        return v
    try:
        return VARS.index(v)
    except ValueError:
        raise ValueError(f"unknown variable {v!r}") from None


def unit_exp(i: int, k: int = 1) -> tuple:
    e = [0] * NVARS
    e[i] = k
    return tuple(e)


def grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


class MultiPoly:
    """Immutable sparse polynomial: exponent tuple -> Scalar, zeros never stored."""

    __slots__ = ("terms", "field", "_hash")

    def __init__(self, terms: Mapping | None = None, field: FieldSpec = QQ):
        clean = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(c, Scalar):
                    c = Scalar.coerce(c, field)
                elif c.b and c.field != field:
                    field = join_fields(field, c.field)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self.field = field
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, field: FieldSpec) -> MultiPoly:
        p = object.__new__(cls)
        p.terms = terms
        p.field = field
        p._hash = None
        return p

    @classmethod
    def zero(cls, field: FieldSpec = QQ) -> MultiPoly:
        return cls._raw({}, field)

    @classmethod
    def const(cls, c, field: FieldSpec = QQ) -> MultiPoly:
        c = Scalar.coerce(c, field)
        field = join_fields(field, c.field) if c.b else field
        return cls._raw({_ZERO_EXP: c} if c else {}, field)

    @classmethod
    def var(cls, v, field: FieldSpec = QQ) -> MultiPoly:
        return cls._raw({unit_exp(var_index(v)): Scalar(1, 0, field)}, field)

    @classmethod
    def monomial(cls, e: tuple, c=1, field: FieldSpec = QQ) -> MultiPoly:
        return cls({tuple(e): c}, field)

    def in_field(self, field: FieldSpec) -> MultiPoly:
        if field == self.field:
            return self
        join_fields(self.field, field)
        if not self.field.is_rational:
            raise FieldMismatch(f"cannot move polynomial over {self.field} to {field}")
        return MultiPoly._raw({e: c.in_field(field) for e, c in self.terms.items()}, field)

    # -- basic queries -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get(_ZERO_EXP, Scalar(0, 0, self.field))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, v) -> int:
        i = var_index(v)
        return max((e[i] for e in self.terms), default=-1)

    def used_vars(self) -> tuple:
        used = [False] * NVARS
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(i for i in range(NVARS) if used[i])

    def leading_exp(self) -> tuple:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return max(self.terms, key=grlex_key)

    def leading_coeff(self) -> Scalar:
        return self.terms[self.leading_exp()]

    def homogeneous_part(self, k: int) -> MultiPoly:
        return MultiPoly._raw({e: c for e, c in self.terms.items() if sum(e) == k}, self.field)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- equality ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = MultiPoly.const(other, self.field)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic --------------------------------------------------------
    def _lift(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return MultiPoly.const(other, self.field)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        field = join_fields(self.field, o.field)
        terms = dict(self.terms)
        for e, c in o.terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return MultiPoly._raw(terms, field)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        field = join_fields(self.field, other.field)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                c = c1 * c2
                if e in terms:
                    s = terms[e] + c
                    if s:
                        terms[e] = s
                    else:
                        del terms[e]
                else:
                    terms[e] = c
        return MultiPoly._raw(terms, field)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c) -> MultiPoly:
        c = Scalar.coerce(c, self.field)
        if not c:
            return MultiPoly.zero(join_fields(self.field, c.field))
        field = join_fields(self.field, c.field)
        return MultiPoly._raw({e: v * c for e, v in self.terms.items()}, field)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(Scalar.coerce(other, self.field).inverse())
        if isinstance(other, MultiPoly):
            return exact_div(self, other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_exp(self, e: tuple) -> MultiPoly:
        """Multiply by the monomial with exponent e."""
        return MultiPoly._raw(
            {tuple(a + b for a, b in zip(k, e)): c for k, c in self.terms.items()}, self.field
        )

    def monic(self) -> MultiPoly:
        if not self.terms:
            return self
        return self.scale(self.leading_coeff().inverse())

    # -- calculus and evaluation -------------------------------------------
    def diff(self, v) -> MultiPoly:
        i = var_index(v)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                terms[tuple(ne)] = c * k
        return MultiPoly._raw(terms, self.field)

    def evaluate(self, point: Mapping) -> Scalar:
        """Evaluate at a full assignment {var: scalar}; unassigned variables must not occur."""
        values = {var_index(k): Scalar.coerce(v, self.field) for k, v in point.items()}
        total = Scalar(0, 0, self.field)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    if i not in values:
                        raise ValueError(f"no value for {VARS[i]}")
                    term = term * values[i] ** k
            total = total + term
        return total

    def subs(self, assignment: Mapping) -> MultiPoly:
        """Substitute scalars or polynomials for variables; absent variables are left alone."""
        if not assignment:
            return self
        subs = {}
        for k, v in assignment.items():
            i = var_index(k)
            subs[i] = v if isinstance(v, MultiPoly) else MultiPoly.const(v, self.field)
        field = self.field
        for v in subs.values():
            field = join_fields(field, v.field)
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = subs[i] ** k
            return powers[key]

        result = MultiPoly.zero(field)
        for e, c in self.terms.items():
            kept = tuple(0 if i in subs else k for i, k in enumerate(e))
            term = MultiPoly._raw({kept: c}, field)
            for i, k in enumerate(e):
                if k and i in subs:
                    term = term * power(i, k)
            result = result + term
        return result

    def translate(self, shifts: Mapping) -> MultiPoly:
        """f(x + a, y + b, ...) for shifts {var: scalar}."""
        return self.subs(
            {k: MultiPoly.var(k, self.field) + Scalar.coerce(v, self.field) for k, v in shifts.items()}
        )

    # -- univariate views --------------------------------------------------
    def coeffs_in(self, v) -> dict:
        """{degree in v: coefficient polynomial free of v}."""
        i = var_index(v)
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: MultiPoly._raw(t, self.field) for k, t in out.items()}

    @classmethod
    def from_coeffs(cls, coeffs: Mapping, v, field: FieldSpec = QQ) -> MultiPoly:
        i = var_index(v)
        result = cls.zero(field)
        for k, c in coeffs.items():
            if c:
                result = result + c.shift_exp(unit_exp(i, k))
        return result

    def univariate_coeffs(self, v) -> list:
        """Dense scalar coefficient list (index = degree) of a polynomial in v alone."""
        i = var_index(v)
        if any(any(k for j, k in enumerate(e) if j != i) for e in self.terms):
            raise ValueError(f"polynomial is not univariate in {VARS[i]}")
        n = self.degree(i)
        out = [Scalar(0, 0, self.field)] * (n + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs: Iterable, v, field: FieldSpec = QQ) -> MultiPoly:
        i = var_index(v)
        return cls({unit_exp(i, k): c for k, c in enumerate(coeffs)}, field)

    # -- printing ----------------------------------------------------------
    def to_str(self, names=VARS[:3] + ("s",), gen: str = "t") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k
            )
            negative = False
            if c.b == 0:
                negative = c.a < 0
                mag = -c.a if negative else c.a
                if mono:
                    body = mono if mag == 1 else f"{mag}*{mono}"
                else:
                    body = str(mag)
            elif c.a == 0:
                negative = c.b < 0
                mag = -c.b if negative else c.b
                coeff = gen if mag == 1 else f"{mag}*{gen}"
                body = f"{coeff}*{mono}" if mono else coeff
            else:
                coeff = f"({c.to_str(gen)})"
                body = f"{coeff}*{mono}" if mono else coeff
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(("- " if negative else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r})"


def const(c, field: FieldSpec = QQ) -> MultiPoly:
    return MultiPoly.const(c, field)


def variables(field: FieldSpec = QQ):
    """(x, y) as polynomials over `field`."""
    return MultiPoly.var("x", field), MultiPoly.var("y", field)


def poly_arith(lhs: MultiPoly, rhs: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: MultiPoly, v) -> MultiPoly:
    return f.diff(v)


def evaluate(f: MultiPoly, point: Mapping) -> Scalar:
    return f.evaluate(point)


def substitute(f: MultiPoly, v, value) -> MultiPoly:
    return f.subs({v: value})


def divmod_poly(f: MultiPoly, g: MultiPoly) -> tuple:
    """Multivariate division by a single divisor in grlex order: f = q*g + r."""
    if g.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    field = join_fields(f.field, g.field)
    lg = g.leading_exp()
    lc_inv = g.terms[lg].inverse()
    q = {}
    r = {}
    p = dict(f.terms)
    gterms = list(g.terms.items())
    while p:
        le = max(p, key=grlex_key)
        lc = p[le]
        d = tuple(a - b for a, b in zip(le, lg))
        if min(d) < 0:
            r[le] = lc
            del p[le]
            continue
        c = lc * lc_inv
        q[d] = q[d] + c if d in q else c
        for e, gc in gterms:
            ne = (e[0] + d[0], e[1] + d[1], e[2] + d[2], e[3] + d[3])
            val = gc * c
            if ne in p:
                s = p[ne] - val
                if s:
                    p[ne] = s
                else:
                    del p[ne]
            else:
                p[ne] = -val
    return MultiPoly._raw(q, field), MultiPoly._raw(r, field)


def exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    q, r = divmod_poly(f, g)
    if r:
        raise NotDivisible(f"{g} does not divide {f}")
    return q


def divides(f: MultiPoly, g: MultiPoly) -> bool:
    """True iff f divides g."""
    if f.is_zero():
        return g.is_zero()
    return divmod_poly(g, f)[1].is_zero()
