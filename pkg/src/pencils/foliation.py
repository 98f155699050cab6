"""Foliations of P^2 given by a polynomial 1-form in the affine chart.

The form is w = A dx + B dy with dual vector field Y = B d/dx - A d/dy, so
(P, Q) = (B, -A) and w(Y) = 0.  The two other standard charts are

    chart 2:  x = 1/u, y = v/u     (covers the line at infinity except [0:1:0])
    chart 3:  x = s/w, y = 1/w     (origin is [0:1:0])

and chart polynomials reuse the variable slots x, y for (u, v) and (s, w).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import inf

from .errors import (
    ConstantCurve,
    DegenerateSingularity,
    InconsistentTangency,
    InvariantCurve,
    NonInvariantCurve,
    NonIsolatedSingularities,
    NonSmoothBranch,
    UnsupportedDegenerate,
    ZeroForm,
)
from .field import FieldSpec, Scalar, join_fields
from .forms import OneForm
from .gcd import gcd, resultant
from .ideals import (
    buchberger,
    dimension_along,
    fulton_multiplicity,
    local_dimension,
    quotient_dimension,
    rational_roots,
)
from .poly import S, X, Y, MultiPoly, divides, exact_div

CHARTS = (1, 2, 3)


@dataclass(frozen=True)
class Point:
    x: Scalar
    y: Scalar

    @classmethod
    def of(cls, x, y, field: FieldSpec | None = None) -> Point:
        from .field import QQ

        field = field or QQ
        return cls(Scalar.coerce(x, field), Scalar.coerce(y, field))

    def as_dict(self) -> dict:
        return {X: self.x, Y: self.y}

    def __iter__(self):
        return iter((self.x, self.y))

    def to_report(self):
        return [self.x.to_str(), self.y.to_str()]

    def __str__(self):
        return f"({self.x.to_str()}, {self.y.to_str()})"


@dataclass(frozen=True)
class LineBundleDegrees:
    """Degrees on P^2 of the normal, tangent and canonical bundles of a degree-d foliation."""

    d: int

    @property
    def normal(self) -> int:
        return self.d + 2

    @property
    def tangent(self) -> int:
        return 1 - self.d

    @property
    def canonical(self) -> int:
        return -3

    def consistent(self) -> bool:
        # K_X = N^* (x) T^*
        return self.normal + self.tangent == -self.canonical


@dataclass(frozen=True)
class AffineFoliation:
    A: MultiPoly
    B: MultiPoly
    normalized: bool = False

    def __post_init__(self):
        if not self.A and not self.B:
            raise ZeroForm("foliation defined by the zero form")
        field = join_fields(self.A.field, self.B.field)
        object.__setattr__(self, "A", self.A.in_field(field))
        object.__setattr__(self, "B", self.B.in_field(field))

    @classmethod
    def from_form(cls, form: OneForm, normalize_form: bool = True) -> AffineFoliation:
        if normalize_form:
            return normalize(form.A, form.B)[0]
        return cls(form.A, form.B)

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    @property
    def form(self) -> OneForm:
        return OneForm(self.A, self.B)

    @property
    def P(self) -> MultiPoly:
        return self.B

    @property
    def Q(self) -> MultiPoly:
        return -self.A

    @cached_property
    def degree(self) -> int:
        return projective_degree(self)

    def apply(self, f: MultiPoly) -> MultiPoly:
        """Y(f) = B f_x - A f_y."""
        return self.B * f.diff(X) - self.A * f.diff(Y)

    def chart(self, k: int) -> AffineFoliation:
        """The foliation written in standard chart k (1, 2 or 3)."""
        if k == 1:
            return self
        A, B = chart_form(self.A, self.B, self.degree, k)
        return AffineFoliation(A, B, self.normalized)

    def to_str(self) -> str:
        return self.form.to_str()


def chart_form(A: MultiPoly, B: MultiPoly, d: int, k: int) -> tuple:
    """Coefficients of u^(d+2) * (pulled-back form) in chart k, for a degree-d form."""
    if k == 1:
        return A, B
    ha, hb = chart_poly(A, d + 1, k), chart_poly(B, d + 1, k)
    first = MultiPoly.var(X, ha.field)
    second = MultiPoly.var(Y, ha.field)
    if k == 2:
        # x = 1/u, y = v/u
        return -exact_div(ha + second * hb, first), hb
    if k == 3:
        # x = s/w, y = 1/w
        return ha, -exact_div(first * ha + hb, second)
    raise ValueError(f"unknown chart {k}")


def chart_poly(p: MultiPoly, m: int, k: int) -> MultiPoly:
    """u^m p(1/u, v/u) for chart 2, w^m p(s/w, 1/w) for chart 3 (m >= deg p)."""
    if k == 1:
        return p
    terms = {}
    for e, c in p.terms.items():
        i, j = e[X], e[Y]
        if i + j > m:
            raise ValueError("chart degree below polynomial degree")
        if k == 2:
            ne = (m - i - j, j) + e[2:]
        else:
            ne = (i, m - i - j) + e[2:]
        terms[ne] = c
    return MultiPoly._raw(terms, p.field)


def normalize(A: MultiPoly, B: MultiPoly) -> tuple:
    """Divide out gcd(A, B); returns (foliation, removed factor)."""
    if not A and not B:
        raise ZeroForm("cannot normalize the zero form")
    field = join_fields(A.field, B.field)
    A, B = A.in_field(field), B.in_field(field)
    g = gcd(A, B)
    if g.is_constant():
        return AffineFoliation(A, B, normalized=True), MultiPoly.const(1, field)
    return AffineFoliation(exact_div(A, g), exact_div(B, g), normalized=True), g


def projective_degree(F: AffineFoliation) -> int:
    m = max(F.A.total_degree(), F.B.total_degree())
    bm, am = F.B.homogeneous_part(m), F.A.homogeneous_part(m)
    x, y = MultiPoly.var(X, F.field), MultiPoly.var(Y, F.field)
    # y*P_m - x*Q_m with (P, Q) = (B, -A)
    if not (y * bm + x * am):
        return m - 1
    return m


# -- singular points ------------------------------------------------------------

def milnor_number(F: AffineFoliation, p) -> int:
    return fulton_multiplicity(F.B, -F.A, p)


def common_zeros(f: MultiPoly, g: MultiPoly) -> list:
    """K-rational common zeros of two coprime polynomials in x, y."""
    field = join_fields(f.field, g.field)
    fy, gy = f.degree(Y), g.degree(Y)
    if not f or not g:
        raise NonIsolatedSingularities("zero polynomial has no isolated zeros")
    if fy > 0 and gy > 0:
        r = resultant(f, g, Y)
        if not r:
            raise NonIsolatedSingularities("curves share a component")
        xs = [] if r.is_constant() else rational_roots(r, field)
    else:
        free = f if fy <= 0 else g
        xs = [] if free.is_constant() else rational_roots(free, field)
    pts = []
    for x0 in xs:
        f0, g0 = f.subs({X: x0}), g.subs({X: x0})
        if not f0 and not g0:
            raise NonIsolatedSingularities("curves share a vertical line")
        h = gcd(f0, g0) if (f0 and g0) else (f0 or g0).monic()
        if h.is_constant():
            continue
        for y0 in rational_roots(h, field):
            pts.append(Point(x0.in_field(field), y0.in_field(field)))
    return pts


@dataclass(frozen=True)
class SingularPoint:
    chart: int
    point: Point
    milnor: int

    def homogeneous(self) -> tuple:
        """[X:Y:Z] coordinates."""
        a, b = self.point.x, self.point.y
        one = Scalar(1, 0, a.field)
        if self.chart == 1:
            return (a, b, one)
        if self.chart == 2:
            return (one, b, a)
        return (a, one, b)

    def to_report(self):
        return {
            "chart": self.chart,
            "point": self.point.to_report(),
            "homogeneous": [c.to_str() for c in self.homogeneous()],
            "milnor": self.milnor,
        }


def _check_isolated(F: AffineFoliation):
    for k in CHARTS:
        G = F.chart(k)
        if not gcd(G.A, G.B).is_constant():
            raise NonIsolatedSingularities(f"common factor of the form in chart {k}")


def singular_points(F: AffineFoliation) -> list:
    """K-rational singular points, each listed once, in charts 1, 2 (u = 0) and 3 (origin)."""
    _check_isolated(F)
    out = []
    for p in common_zeros(F.B, F.A):
        out.append(SingularPoint(1, p, milnor_number(F, p)))
    G2 = F.chart(2)
    a0, b0 = G2.A.subs({X: 0}), G2.B.subs({X: 0})
    if not a0 and not b0:
        vs = None
    else:
        h = gcd(a0, b0) if (a0 and b0) else (a0 or b0).monic()
        vs = [] if h.is_constant() else rational_roots(h, F.field)
    for v0 in vs or []:
        p = Point(Scalar(0, 0, F.field), v0)
        out.append(SingularPoint(2, p, milnor_number(G2, p)))
    G3 = F.chart(3)
    origin = Point.of(0, 0, F.field)
    mu = milnor_number(G3, origin)
    if mu:
        out.append(SingularPoint(3, origin, mu))
    return out


def milnor_total(F: AffineFoliation) -> int:
    """Total Milnor number over P^2: d^2 + d + 1 for isolated singularities."""
    _check_isolated(F)
    affine = quotient_dimension(buchberger([F.A, F.B]))
    G2, G3 = F.chart(2), F.chart(3)
    at_infinity = dimension_along([G2.A, G2.B], "x")
    top = local_dimension([G3.A, G3.B], (0, 0))
    total = affine + at_infinity + top
    if total == inf:
        raise NonIsolatedSingularities("infinite Milnor total")
    return total


def baum_bott_nondegenerate(F: AffineFoliation, p) -> Scalar:
    """(tr J)^2 / det J for the Jacobian J of (P, Q) = (B, -A) at p."""
    if not isinstance(p, Point):
        p = Point.of(*p, field=F.field)
    at = p.as_dict()
    bx, by = F.B.diff(X).evaluate(at), F.B.diff(Y).evaluate(at)
    ax, ay = F.A.diff(X).evaluate(at), F.A.diff(Y).evaluate(at)
    tr = bx - ay
    det = ax * by - bx * ay
    if not det:
        raise DegenerateSingularity(f"det J = 0 at {p}")
    return tr * tr / det


def baum_bott_total(F: AffineFoliation) -> int:
    return (F.degree + 2) ** 2


@dataclass
class BaumBottReport:
    total: int
    local: list = dc_field(default_factory=list)  # (SingularPoint, Scalar)
    all_rational: bool = False
    degenerate: list = dc_field(default_factory=list)

    def local_sum(self):
        if not self.local:
            return Scalar(0)
        acc = self.local[0][1] * 0
        for _, v in self.local:
            acc = acc + v
        return acc

    def to_report(self):
        return {
            "total": self.total,
            "all_singularities_rational": self.all_rational,
            "local": [
                {"point": sp.to_report(), "baum_bott": v.to_str()} for sp, v in self.local
            ],
            "local_sum": self.local_sum().to_str(),
        }


def baum_bott_report(F: AffineFoliation) -> BaumBottReport:
    """Local Baum-Bott indices at all K-rational singular points.

    A single degenerate point gets (d+2)^2 minus the sum of the others, which
    requires every singularity to be K-rational.
    """
    pts = singular_points(F)
    total = baum_bott_total(F)
    all_rational = sum(sp.milnor for sp in pts) == milnor_total(F)
    rep = BaumBottReport(total, all_rational=all_rational)
    pending = []
    for sp in pts:
        try:
            rep.local.append((sp, baum_bott_nondegenerate(F.chart(sp.chart), sp.point)))
        except DegenerateSingularity:
            pending.append(sp)
    rep.degenerate = pending
    if len(pending) == 1 and all_rational:
        rep.local.append((pending[0], Scalar(total, 0, F.field) - rep.local_sum()))
    elif len(pending) > 1:
        raise UnsupportedDegenerate(f"{len(pending)} degenerate singular points")
    elif pending:
        raise UnsupportedDegenerate("degenerate point with non-rational singularities")
    return rep


def baum_bott_index(F: AffineFoliation, p, chart: int = 1) -> Scalar:
    if not isinstance(p, Point):
        p = Point.of(*p, field=F.field)
    try:
        return baum_bott_nondegenerate(F.chart(chart), p)
    except DegenerateSingularity:
        rep = baum_bott_report(F)
        for sp, v in rep.local:
            if sp.chart == chart and sp.point == p:
                return v
        raise


# -- invariant curves and tangency ----------------------------------------------

def is_invariant(F: AffineFoliation, f: MultiPoly) -> bool:
    if f.is_constant():
        raise ConstantCurve("constant curve")
    return divides(f, F.apply(f))


def tangency_index(F: AffineFoliation, f: MultiPoly, p) -> int:
    if is_invariant(F, f):
        raise InvariantCurve("curve is invariant; tangency order undefined")
    return fulton_multiplicity(f, F.apply(f), p)


def tangency_total(F: AffineFoliation, f: MultiPoly, points=None, smooth: bool = False) -> int:
    """Sum of tangency orders, over `points` or over all of P^2 via the three charts.

    With smooth=True the global total is checked against k(d+2) - (3k - k^2).
    """
    if is_invariant(F, f):
        raise InvariantCurve("curve is invariant; tangency order undefined")
    if points is not None:
        return sum(tangency_index(F, f, p) for p in points)
    k = f.total_degree()
    total = quotient_dimension(buchberger([f, F.apply(f)]))
    for chart in (2, 3):
        G = F.chart(chart)
        fc = chart_poly(f, k, chart)
        gens = [fc, G.apply(fc)]
        total += dimension_along(gens, "x") if chart == 2 else local_dimension(gens, (0, 0))
    if smooth:
        expected = global_relations(F.degree, k, invariant=False).tang
        if total != expected:
            raise InconsistentTangency(f"tangency total {total} != expected {expected}")
    return total


def _series_div(num: list, den: list, n: int) -> list:
    """Power-series quotient num/den mod s^n, den[0] != 0."""
    out = []
    rem = (num + [Scalar(0)] * n)[:n]
    inv = den[0].inverse()
    for i in range(n):
        c = rem[i] * inv
        out.append(c)
        for j, dj in enumerate(den):
            if i + j < n:
                rem[i + j] = rem[i + j] - c * dj
    return out


def _series(p: MultiPoly, n: int, field) -> list:
    coeffs = p.in_field(field).univariate_coeffs(S) if p else []
    zero = Scalar(0, 0, field)
    return [(coeffs[i] if i < len(coeffs) else zero) for i in range(n)]


def gsv_smooth_branch(F: AffineFoliation, f: MultiPoly, branch, p, order: int = 12):
    """Tangential vanishing order of Y along a smooth branch gamma(s) through p.

    `branch` is a pair of polynomials in the variable s with gamma(0) = p.
    Solves Y(gamma(s)) = c(s) gamma'(s) mod s^order and returns ord_s c.
    """
    if not is_invariant(F, f):
        raise NonInvariantCurve("GSV index needs an invariant curve")
    if not isinstance(p, Point):
        p = Point.of(*p, field=F.field)
    gx, gy = branch
    field = join_fields(F.field, join_fields(gx.field, gy.field))
    at0 = {S: 0}
    if gx.evaluate(at0) != p.x or gy.evaluate(at0) != p.y:
        raise ValueError("branch does not pass through p at s = 0")
    dg = [gx.diff(S), gy.diff(S)]
    vals = [F.B.subs({X: gx, Y: gy}), -F.A.subs({X: gx, Y: gy})]
    dser = [_series(q, order, field) for q in dg]
    vser = [_series(q, order, field) for q in vals]
    lead = next((i for i in (0, 1) if dser[i][0]), None)
    if lead is None:
        raise NonSmoothBranch("gamma'(0) = 0")
    c = _series_div(vser[lead], dser[lead], order)
    other = 1 - lead
    for i in range(order):
        prod = Scalar(0, 0, field)
        for j in range(i + 1):
            prod = prod + c[j] * dser[other][i - j]
        if prod != vser[other][i]:
            raise InconsistentTangency("Y is not tangent to the branch to the requested order")
    return next((i for i, ci in enumerate(c) if ci), inf)


# -- global bookkeeping ---------------------------------------------------------

@dataclass(frozen=True)
class GlobalRelations:
    d: int
    k: int
    invariant: bool
    n_dot_c: int
    t_dot_c: int
    c_dot_c: int
    tang: int | None
    z: int | None
    chi: int | None

    def to_report(self):
        return {k: v for k, v in self.__dict__.items()}


def global_relations(d: int, k: int, invariant: bool) -> GlobalRelations:
    """Intersection numbers of N, T with a degree-k curve and the implied tangency/Z counts."""
    n_dot_c, t_dot_c, c_dot_c = k * (d + 2), k * (1 - d), k * k
    if invariant:
        z = n_dot_c - c_dot_c
        return GlobalRelations(d, k, True, n_dot_c, t_dot_c, c_dot_c, None, z, t_dot_c + z)
    return GlobalRelations(d, k, False, n_dot_c, t_dot_c, c_dot_c, c_dot_c - t_dot_c, None, None)


@dataclass(frozen=True)
class IndexBookkeeping:
    """Darboux/Baum-Bott totals on P^2 for a degree-d foliation.

    m(F) = c2 + BB + N.K with N.K = -3(d+2); equivalently c2 + BB - N.(-K).
    """

    d: int

    @property
    def c2(self) -> int:
        return 3

    @property
    def baum_bott(self) -> int:
        return (self.d + 2) ** 2

    @property
    def n_dot_k(self) -> int:
        return LineBundleDegrees(self.d).normal * LineBundleDegrees(self.d).canonical

    @property
    def milnor(self) -> int:
        return self.c2 + self.baum_bott + self.n_dot_k

    def consistent(self) -> bool:
        return self.milnor == self.d ** 2 + self.d + 1 and self.baum_bott == LineBundleDegrees(self.d).normal ** 2

    def to_report(self):
        return {
            "d": self.d,
            "c2": self.c2,
            "baum_bott": self.baum_bott,
            "normal_dot_canonical": self.n_dot_k,
            "milnor": self.milnor,
            "darboux": self.d ** 2 + self.d + 1,
        }


def index_summary(F: AffineFoliation) -> dict:
    """Degrees, totals and local indices at K-rational singular points."""
    d = F.degree
    out = {
        "degree": d,
        "bundles": {
            "normal": d + 2,
            "tangent": 1 - d,
            "canonical": -3,
        },
        "milnor_total": milnor_total(F),
        "bookkeeping": IndexBookkeeping(d).to_report(),
    }
    try:
        rep = baum_bott_report(F)
        out["baum_bott"] = rep.to_report()
    except UnsupportedDegenerate as exc:
        out["baum_bott"] = {"total": baum_bott_total(F), "local": "unsupported", "reason": str(exc)}
    return out

