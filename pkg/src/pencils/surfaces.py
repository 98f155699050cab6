"""Arithmetic statements for linear pencils on tori and on primary Hopf surfaces."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldMismatch, InvalidSpec, NonInvertibleScalar, RealQuadraticTau
from .field import QQ, FieldSpec, Scalar, join_fields, quadratic_field
from .poly import X, Y, MultiPoly

GENERIC = "generic"
QUADRATIC = "quadratic"


@dataclass(frozen=True)
class TorusSpec:
    """E = C/<1, tau>: tau generic (no complex multiplication) or imaginary quadratic."""

    kind: str
    field: FieldSpec = QQ

    def __post_init__(self):
        if self.kind not in (GENERIC, QUADRATIC):
            raise InvalidSpec(f"unknown tau kind {self.kind!r}")
        if self.kind == QUADRATIC:
            if self.field.is_rational:
                raise InvalidSpec("quadratic tau needs a quadratic field")
            if not self.field.imaginary:
                raise RealQuadraticTau(f"{self.field} is real: tau must be imaginary quadratic")

    @classmethod
    def generic(cls) -> TorusSpec:
        return cls(GENERIC)

    @classmethod
    def quadratic(cls, u, v) -> TorusSpec:
        return cls(QUADRATIC, quadratic_field(u, v))


def endomorphism_algebra(T: TorusSpec) -> FieldSpec:
    """End(E) (x) Q: Q for generic tau, Q(tau) for CM tau."""
    if T.kind == GENERIC:
        return QQ
    if not T.field.imaginary:
        raise RealQuadraticTau(f"{T.field} is real")
    return T.field


def ip_linear_torus_membership(T: TorusSpec, alpha) -> bool:
    """Is alpha in End(E) (x) Q?"""
    alg = endomorphism_algebra(T)
    if not isinstance(alpha, Scalar):
        alpha = Scalar.coerce(alpha, QQ)
    if alg.is_rational:
        return alpha.is_rational
    if not alpha.field.is_rational and alpha.field != alg:
        raise FieldMismatch(f"alpha lies in {alpha.field}, tau generates {alg}")
    return True


@dataclass(frozen=True)
class HopfSpec:
    """f(x, y) = (a x + lam y^r, b y) with lam = 0 or a = b^r; 0 < |a| <= |b| < 1 is assumed."""

    a: Scalar
    b: Scalar
    lam: Scalar
    r: int = 1

    def __post_init__(self):
        field = join_fields(join_fields(_field(self.a), _field(self.b)), _field(self.lam))
        for name in ("a", "b", "lam"):
            object.__setattr__(self, name, Scalar.coerce(getattr(self, name), field))
        if not isinstance(self.r, int) or self.r < 1:
            raise InvalidSpec("r must be a positive integer")
        if self.lam and self.a != self.b ** self.r:
            raise InvalidSpec("lam != 0 requires a = b^r")

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    def to_report(self):
        return {"a": self.a, "b": self.b, "lambda": self.lam, "r": self.r}


def _field(c) -> FieldSpec:
    return c.field if isinstance(c, Scalar) else QQ


def _apply(H: HopfSpec, g: tuple) -> tuple:
    g1, g2 = g
    return (g1.scale(H.a) + (g2 ** H.r).scale(H.lam), g2.scale(H.b))


def _apply_inverse(H: HopfSpec, g: tuple) -> tuple:
    ai, bi = H.a.inverse(), H.b.inverse()
    g1, g2 = g
    y = g2.scale(bi)
    return ((g1 - (y ** H.r).scale(H.lam)).scale(ai), y)


def hopf_iterate(H: HopfSpec, n: int) -> tuple:
    """f^n as a pair of polynomials, by repeated composition."""
    g = (MultiPoly.var(X, H.field), MultiPoly.var(Y, H.field))
    if n < 0 and (not H.a or not H.b):
        raise NonInvertibleScalar("negative iterate needs a and b invertible")
    step = _apply if n >= 0 else _apply_inverse
    for _ in range(abs(n)):
        g = step(H, g)
    return g


def hopf_closed_form(H: HopfSpec, n: int) -> tuple:
    """(a^n x + n lam a^(n-1) y^r, b^n y)."""
    if n < 0 and (not H.a or not H.b):
        raise NonInvertibleScalar("negative iterate needs a and b invertible")
    x, y = MultiPoly.var(X, H.field), MultiPoly.var(Y, H.field)
    first = x.scale(H.a ** n)
    if n and H.lam:
        first = first + (y ** H.r).scale(H.lam * n * H.a ** (n - 1))
    return (first, y.scale(H.b ** n))


def hopf_closed_form_check(H: HopfSpec, n: int) -> bool:
    return hopf_iterate(H, n) == hopf_closed_form(H, n)


@dataclass(frozen=True)
class SectionMeets:
    alpha: Scalar
    solutions: tuple  # (n, first coordinate, second coordinate)

    @property
    def distinct(self) -> bool:
        pts = [s[1:] for s in self.solutions]
        return len(set(pts)) == len(pts)

    def to_report(self):
        return {
            "alpha": self.alpha,
            "solutions": [{"n": n, "u": u, "v": v} for n, u, v in self.solutions],
            "pairwise_distinct": self.distinct,
        }


def hopf_section_meets(H: HopfSpec, alpha, N: int) -> SectionMeets:
    """Intersections n = 1..N of the leaf L_alpha with the cross-section.

    alpha != 0: x = (b^n - 1)/alpha and x' = (b^n - 1)/(a^n alpha) - n lam/a;
    alpha = 0:  x = a^(-n) - n lam/a and y = b^n.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    alpha = Scalar.coerce(alpha, H.field)
    if not H.a:
        raise NonInvertibleScalar("a must be nonzero")
    sols = []
    for n in range(1, N + 1):
        bn, an = H.b ** n, H.a ** n
        shift = H.lam * n / H.a
        if alpha:
            sols.append((n, (bn - 1) / alpha, (bn - 1) / (an * alpha) - shift))
        else:
            sols.append((n, an.inverse() - shift, bn))
    return SectionMeets(alpha, tuple(sols))
