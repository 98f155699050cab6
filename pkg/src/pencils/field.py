"""Exact scalars: the rationals and quadratic extensions Q(t), t^2 = u*t + v."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import FieldMismatch, InvalidSpec


def is_rational_square(q: Fraction) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


@dataclass(frozen=True)
class FieldSpec:
    """Q when `u` and `v` are None, otherwise Q(t) with t^2 = u*t + v."""

    u: Fraction | None = None
    v: Fraction | None = None

    @property
    def is_rational(self) -> bool:
        return self.u is None

    @property
    def discriminant(self) -> Fraction | None:
        if self.is_rational:
            return None
        return self.u * self.u + 4 * self.v

    @property
    def imaginary(self) -> bool:
        return not self.is_rational and self.discriminant < 0

    def contains(self, other: FieldSpec) -> bool:
        return other.is_rational or other == self

    def minpoly_text(self) -> str | None:
        if self.is_rational:
            return None
        from .poly import MultiPoly

        t = MultiPoly.var("x")
        p = t * t - t * self.u - self.v
        return p.to_str(names=("t", "", "", ""))

    def __str__(self):
        return "Q" if self.is_rational else f"Q(t), {self.minpoly_text()} = 0"


QQ = FieldSpec()


@lru_cache(maxsize=None)
def _quadratic(u: Fraction, v: Fraction) -> FieldSpec:
    return FieldSpec(u, v)


def quadratic_field(u, v) -> FieldSpec:
    """Q(t) with t^2 = u*t + v; u^2 + 4v must not be a rational square."""
    u, v = Fraction(u), Fraction(v)
    if is_rational_square(u * u + 4 * v):
        raise InvalidSpec(f"t^2 - ({u})t - ({v}) is reducible over Q")
    return _quadratic(u, v)


def join_fields(f: FieldSpec, g: FieldSpec) -> FieldSpec:
    # Q embeds in every field; two distinct quadratic fields never mix.
    if f is g or f == g:
        return f
    if f.is_rational:
        return g
    if g.is_rational:
        return f
    raise FieldMismatch(f"cannot combine {f} with {g}")


class Scalar:
    """a + b*t over a FieldSpec, with a, b rational."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a=0, b=0, field: FieldSpec = QQ):
        a = a if type(a) is Fraction else Fraction(a)
        b = b if type(b) is Fraction else Fraction(b)
        if b and field.is_rational:
            raise FieldMismatch("irrational part on a rational scalar")
        self.a = a
        self.b = b
        self.field = field

    @classmethod
    def coerce(cls, value, field: FieldSpec = QQ) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value, 0, field)
        if isinstance(value, str):
            return cls(Fraction(value), 0, field)
        raise TypeError(f"cannot make a scalar from {value!r}")

    @classmethod
    def gen(cls, field: FieldSpec) -> Scalar:
        if field.is_rational:
            raise FieldMismatch("Q has no generator t")
        return cls(0, 1, field)

    def in_field(self, field: FieldSpec) -> Scalar:
        if self.field == field:
            return self
        if self.b == 0:
            return Scalar(self.a, 0, field)
        raise FieldMismatch(f"{self} does not lie in {field}")

    # -- predicates --------------------------------------------------------
    def __bool__(self):
        return bool(self.a) or bool(self.b)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.a == other.a and self.b == other.b and self.field == other.field

    def __hash__(self):
        return hash((self.a, self.b)) if self.b else hash(self.a)

    # -- arithmetic --------------------------------------------------------
    def _other(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other, 0, self.field)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a + o.a, self.b + o.b, join_fields(self.field, o.field))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a - o.a, self.b - o.b, join_fields(self.field, o.field))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        field = join_fields(self.field, o.field)
        if self.b == 0 or o.b == 0:
            return Scalar(self.a * o.a, self.a * o.b + self.b * o.a, field)
        bd = self.b * o.b
        return Scalar(
            self.a * o.a + bd * field.v,
            self.a * o.b + self.b * o.a + bd * field.u,
            field,
        )

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        """Image under the nontrivial automorphism t -> u - t."""
        if self.b == 0:
            return self
        return Scalar(self.a + self.b * self.field.u, -self.b, self.field)

    def norm(self) -> Fraction:
        if self.b == 0:
            return self.a * self.a
        u, v = self.field.u, self.field.v
        return self.a * self.a + self.a * self.b * u - self.b * self.b * v

    def trace(self) -> Fraction:
        return 2 * self.a + (self.b * self.field.u if self.b else 0)

    def inverse(self) -> Scalar:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.b == 0:
            return Scalar(1 / self.a, 0, self.field)
        n = self.norm()
        c = self.conjugate()
        return Scalar(c.a / n, c.b / n, self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar(1, 0, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- printing ----------------------------------------------------------
    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return self.to_str()

    def to_str(self, gen: str = "t") -> str:
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        if b == 1:
            bt = gen
        elif b == -1:
            bt = f"-{gen}"
        else:
            bt = f"{b}*{gen}"
        if a == 0:
            return bt
        sep = "" if bt.startswith("-") else "+"
        return f"{a}{sep}{bt}"


ZERO = Scalar(0)
ONE = Scalar(1)
