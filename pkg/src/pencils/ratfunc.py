"""Reduced rational functions num/den over a FieldSpec."""
from __future__ import annotations

from fractions import Fraction

from .errors import ZeroPolynomial
from .field import FieldSpec, Scalar, join_fields
from .gcd import gcd
from .poly import MultiPoly, exact_div


class RationalFunction:
    """num/den with gcd(num, den) = 1 and den monic; zero is 0/1."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, reduce: bool = True):
        if den is None:
            den = MultiPoly.const(1, num.field)
        if not den:
            raise ZeroPolynomial("zero denominator")
        field = join_fields(num.field, den.field)
        num, den = num.in_field(field), den.in_field(field)
        if not num:
            den = MultiPoly.const(1, field)
        elif reduce and not den.is_constant():
            g = gcd(num, den)
            if not g.is_constant():
                num, den = exact_div(num, g), exact_div(den, g)
        lc = den.leading_coeff()
        if lc != 1:
            inv = lc.inverse()
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    @classmethod
    def lift(cls, value, field=None) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, MultiPoly):
            return cls(value)
        from .field import QQ

        return cls(MultiPoly.const(value, field or QQ))

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar, MultiPoly)):
            other = RationalFunction.lift(other, self.field)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = RationalFunction.lift(other, self.field)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-RationalFunction.lift(other, self.field))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = RationalFunction.lift(other, self.field)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction.lift(other, self.field)
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFunction.lift(other, self.field) / self

    def diff(self, v) -> RationalFunction:
        return RationalFunction(
            self.num.diff(v) * self.den - self.num * self.den.diff(v), self.den * self.den
        )

    def evaluate(self, point) -> Scalar:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.evaluate(point) / d

    def subs(self, assignment) -> RationalFunction:
        return RationalFunction(self.num.subs(assignment), self.den.subs(assignment))

    def to_str(self) -> str:
        if self.den.is_constant():
            return self.num.to_str()
        return f"({self.num.to_str()})/({self.den.to_str()})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunction({self.to_str()!r})"
