"""Polynomial 1-forms A dx + B dy in the affine chart."""
from __future__ import annotations

from dataclasses import dataclass

from .field import FieldSpec, join_fields
from .poly import MultiPoly


@dataclass(frozen=True)
class OneForm:
    A: MultiPoly
    B: MultiPoly

    def __post_init__(self):
        field = join_fields(self.A.field, self.B.field)
        object.__setattr__(self, "A", self.A.in_field(field))
        object.__setattr__(self, "B", self.B.in_field(field))

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    def is_zero(self) -> bool:
        return not self.A and not self.B

    def __add__(self, other: OneForm) -> OneForm:
        return OneForm(self.A + other.A, self.B + other.B)

    def __sub__(self, other: OneForm) -> OneForm:
        return OneForm(self.A - other.A, self.B - other.B)

    def __neg__(self) -> OneForm:
        return OneForm(-self.A, -self.B)

    def scale(self, c) -> OneForm:
        if isinstance(c, MultiPoly):
            return OneForm(self.A * c, self.B * c)
        return OneForm(self.A.scale(c), self.B.scale(c))

    def wedge(self, other: OneForm) -> MultiPoly:
        """Coefficient of dx^dy in self ^ other."""
        return self.A * other.B - self.B * other.A

    def d(self) -> MultiPoly:
        """Coefficient of dx^dy in the exterior derivative."""
        return self.B.diff("x") - self.A.diff("y")

    def to_str(self) -> str:
        parts = []
        for coeff, diff in ((self.A, "dx"), (self.B, "dy")):
            if coeff:
                parts.append(f"({coeff.to_str()}) {diff}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_str()
