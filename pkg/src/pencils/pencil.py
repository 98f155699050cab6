"""Pencils w + alpha*eta: tangency divisor, members, NI set, curvature, invariance of Delta."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import inf

from .errors import (
    FactorDoesNotDivideTangency,
    NoRationalPointFound,
    ProportionalForms,
)
from .field import FieldSpec, Scalar, join_fields, quadratic_field
from .foliation import AffineFoliation, chart_form, normalize
from .forms import OneForm
from .gcd import gcd, gcd_many, lc_in, resultant, squarefree_part
from .ideals import rational_roots
from .parser import PencilDocument
from .poly import ALPHA, X, Y, MultiPoly, divides, exact_div
from .ratfunc import RationalFunction

INFINITY = "infinity"


def _is_infinity(alpha) -> bool:
    return alpha is None or alpha is inf or (isinstance(alpha, str) and alpha.lower() in ("inf", "infinity", "oo"))


@dataclass(frozen=True)
class Pencil:
    """The pencil {w + alpha*eta}, w = A dx + B dy, eta = C dx + D dy."""

    omega: OneForm
    eta: OneForm
    label: str | None = None

    def __post_init__(self):
        field = join_fields(self.omega.field, self.eta.field)
        object.__setattr__(self, "omega", OneForm(self.omega.A.in_field(field), self.omega.B.in_field(field)))
        object.__setattr__(self, "eta", OneForm(self.eta.A.in_field(field), self.eta.B.in_field(field)))
        if not self.tangency:
            raise ProportionalForms("w and eta are proportional: the tangency polynomial vanishes")

    @classmethod
    def from_document(cls, doc: PencilDocument) -> Pencil:
        return cls(doc.omega, doc.eta, doc.label)

    @property
    def field(self) -> FieldSpec:
        return self.omega.field

    @property
    def A(self):
        return self.omega.A

    @property
    def B(self):
        return self.omega.B

    @property
    def C(self):
        return self.eta.A

    @property
    def D(self):
        return self.eta.B

    @cached_property
    def tangency(self) -> MultiPoly:
        return self.omega.wedge(self.eta)

    def generic_form(self) -> tuple:
        """(A + alpha*C, B + alpha*D) with alpha as a polynomial variable."""
        a = MultiPoly.var(ALPHA, self.field)
        return self.A + a * self.C, self.B + a * self.D

    @cached_property
    def degree(self) -> int:
        """Projective degree of a generic member."""
        F, G = self.generic_form()
        m = max(_xy_degree(F), _xy_degree(G))
        x, y = MultiPoly.var(X, self.field), MultiPoly.var(Y, self.field)
        if not (y * _xy_part(G, m) + x * _xy_part(F, m)):
            return m - 1
        return m

    def swapped(self) -> Pencil:
        return Pencil(self.eta, self.omega, self.label)

    def to_report(self):
        return {"label": self.label, "omega": self.omega, "eta": self.eta, "field": self.field}


def _xy_degree(p: MultiPoly) -> int:
    return max((e[X] + e[Y] for e in p.terms), default=-1)


def _xy_part(p: MultiPoly, m: int) -> MultiPoly:
    return MultiPoly._raw({e: c for e, c in p.terms.items() if e[X] + e[Y] == m}, p.field)


def tangency_polynomial(P: Pencil) -> MultiPoly:
    """T = A*D - B*C."""
    return P.tangency


def tangency_order_at_infinity(P: Pencil) -> int:
    """Multiplicity of the line at infinity in Delta, read off the chart-2 tangency polynomial."""
    d = P.degree
    a2, b2 = chart_form(P.A, P.B, d, 2)
    c2, d2 = chart_form(P.C, P.D, d, 2)
    t2 = a2 * d2 - b2 * c2
    return min(e[X] for e in t2.terms)


def line_at_infinity_in_delta(P: Pencil) -> bool:
    return P.tangency.total_degree() < 2 * P.degree + 1


# -- members ------------------------------------------------------------------------

@dataclass(frozen=True)
class Member:
    alpha: object
    foliation: AffineFoliation
    factor: MultiPoly

    @property
    def non_isolated(self) -> bool:
        return not self.factor.is_constant()

    def to_report(self):
        return {
            "alpha": self.alpha if not _is_infinity(self.alpha) else INFINITY,
            "form": self.foliation.form,
            "degree": self.foliation.degree,
            "extracted_factor": self.factor,
        }


def member(P: Pencil, alpha) -> Member:
    """Normalized member w + alpha*eta; alpha = infinity gives eta."""
    if _is_infinity(alpha):
        F, factor = normalize(P.C, P.D)
        return Member(INFINITY, F, factor)
    a = Scalar.coerce(alpha, P.field)
    F, factor = normalize(P.A + P.C.scale(a), P.B + P.D.scale(a))
    return Member(a, F, factor)


# -- NI(P) --------------------------------------------------------------------------

@dataclass(frozen=True)
class NiEntry:
    """alpha (Scalar, INFINITY, or a K-irreducible polynomial in alpha) with its common factor."""

    alpha: object
    factor: object
    verified: bool
    where: str = "affine"

    def to_report(self):
        return {"alpha": self.alpha, "factor": self.factor, "verified": self.verified, "where": self.where}


@dataclass
class NiReport:
    entries: list = dc_field(default_factory=list)
    candidates: list = dc_field(default_factory=list)
    line_at_infinity_in_delta: bool = False

    def values(self, include_line_at_infinity: bool = False) -> list:
        """alpha values with an affine common factor (plus eta's, as INFINITY)."""
        return [
            e.alpha for e in self.entries if include_line_at_infinity or e.where == "affine"
        ]

    def to_report(self):
        return {
            "entries": self.entries,
            "candidate_polynomials": self.candidates,
            "line_at_infinity_in_delta": self.line_at_infinity_in_delta,
        }


def _alpha_content(p: MultiPoly) -> MultiPoly | None:
    """gcd of the alpha-polynomials multiplying each x,y-monomial; None if p is zero."""
    if not p:
        return None
    groups: dict = {}
    for e, c in p.terms.items():
        key = (e[X], e[Y], e[3])
        groups.setdefault(key, {})[(0, 0, e[ALPHA], 0)] = c
    return gcd_many(MultiPoly._raw(t, p.field) for t in groups.values())


def _candidate_polys(F: MultiPoly, G: MultiPoly) -> list:
    out = []
    for p in (F, G):
        c = _alpha_content(p)
        if c is not None and not c.is_constant():
            out.append(c)
    for v in (Y, X):
        if F.degree(v) <= 0 or G.degree(v) <= 0:
            continue
        r = resultant(F, G, v)
        if not r:
            out.append(MultiPoly.const(0, F.field))
            continue
        c = _alpha_content(r)
        if not c.is_constant():
            out.append(c)
        lf, lg = _alpha_content(lc_in(F, v)), _alpha_content(lc_in(G, v))
        if lf is not None and lg is not None:
            both = gcd(lf, lg)
            if not both.is_constant():
                out.append(both)
    return out


def _common_factor_at(F: MultiPoly, G: MultiPoly, a: Scalar) -> MultiPoly:
    f, g = F.subs({ALPHA: a}), G.subs({ALPHA: a})
    if not f and not g:
        return MultiPoly.const(0, a.field)
    return gcd(f, g) if (f and g) else (f or g).monic()


def ni_set(P: Pencil) -> NiReport:
    """Parameters alpha for which the member has a curve of singularities."""
    F, G = P.generic_form()
    report = NiReport(line_at_infinity_in_delta=line_at_infinity_in_delta(P))
    cands = _candidate_polys(F, G)
    # members singular along the whole line at infinity: u | both chart-2 coefficients
    a2, b2 = chart_form(F, G, P.degree, 2)
    at_inf = []
    for p in (a2.subs({X: 0}), b2.subs({X: 0})):
        c = _alpha_content(p)
        at_inf.append(c)
    if at_inf[0] is None or at_inf[1] is None:
        inf_poly = at_inf[1] if at_inf[0] is None else at_inf[0]
    else:
        inf_poly = gcd(at_inf[0], at_inf[1])
    report.candidates = [c for c in cands if c] + (
        [inf_poly] if inf_poly is not None and not inf_poly.is_constant() else []
    )
    seen = set()
    symbolic = []
    for c in cands:
        if not c:
            continue
        residual = squarefree_part(c)
        for r in rational_roots(residual, P.field):
            residual = exact_div(residual, MultiPoly.var(ALPHA, P.field) - r)
            if r in seen:
                continue
            seen.add(r)
            h = _common_factor_at(F, G, r)
            if not h.is_constant():
                report.entries.append(NiEntry(r, h, True))
        if not residual.is_constant() and residual.monic() not in symbolic:
            symbolic.append(residual.monic())
    for res in symbolic:
        report.entries.append(_symbolic_entry(F, G, res, P.field))
    if inf_poly is not None and not inf_poly.is_constant():
        for r in rational_roots(inf_poly, P.field):
            report.entries.append(NiEntry(r, "line at infinity", True, "infinity"))
    # alpha = infinity: the member eta
    h = gcd(P.C, P.D) if (P.C and P.D) else (P.C or P.D).monic()
    if not h.is_constant():
        report.entries.append(NiEntry(INFINITY, h, True))
    elif tangency_order_at_infinity_member(P.C, P.D, P.degree):
        report.entries.append(NiEntry(INFINITY, "line at infinity", True, "infinity"))
    return report


def tangency_order_at_infinity_member(A: MultiPoly, B: MultiPoly, d: int) -> bool:
    """True when u divides both chart-2 coefficients of a degree-d form."""
    a2, b2 = chart_form(A, B, d, 2)
    return not a2.subs({X: 0}) and not b2.subs({X: 0})


def _symbolic_entry(F, G, poly: MultiPoly, field: FieldSpec) -> NiEntry:
    """Verify a residual alpha-polynomial; irreducible quadratics over Q are checked in Q(theta)."""
    coeffs = poly.monic().univariate_coeffs(ALPHA)
    if field.is_rational and len(coeffs) == 3:
        # theta^2 = -c1*theta - c0
        try:
            K = quadratic_field(-coeffs[1].a, -coeffs[0].a)
        except Exception:
            K = None
        if K is not None:
            theta = Scalar.gen(K)
            h = _common_factor_at(F.in_field(K), G.in_field(K), theta)
            return NiEntry(poly, h if not h.is_constant() else None, not h.is_constant())
    return NiEntry(poly, None, False)


# -- curvature ----------------------------------------------------------------------

@dataclass(frozen=True)
class CurvatureData:
    p: RationalFunction
    q: RationalFunction
    curvature: RationalFunction

    @property
    def flat(self) -> bool:
        return self.curvature.is_zero()

    def to_report(self):
        return {"theta": {"dx": self.p, "dy": self.q}, "curvature": self.curvature, "flat": self.flat}


def curvature(P: Pencil) -> CurvatureData:
    """theta = p dx + q dy with dw = theta^w, d(eta) = theta^eta; curvature = q_x - p_y."""
    T = P.tangency
    r1, r2 = P.omega.d(), P.eta.d()
    p = RationalFunction(P.A * r2 - P.C * r1, T)
    q = RationalFunction(P.B * r2 - P.D * r1, T)
    return CurvatureData(p, q, q.diff(X) - p.diff(Y))


def is_flat(P: Pencil) -> bool:
    return curvature(P).flat


# -- invariance of Delta --------------------------------------------------------------

@dataclass(frozen=True)
class FactorVerdict:
    factor: MultiPoly
    invariant_omega: bool
    invariant_eta: bool

    @property
    def invariant(self) -> bool:
        return self.invariant_omega and self.invariant_eta

    def to_report(self):
        return {
            "factor": self.factor,
            "invariant": self.invariant,
            "invariant_omega": self.invariant_omega,
            "invariant_eta": self.invariant_eta,
        }


@dataclass(frozen=True)
class DeltaInvariance:
    verdicts: list
    covers_delta: bool

    @property
    def all_invariant(self) -> bool:
        return all(v.invariant for v in self.verdicts)

    @property
    def delta_invariant(self) -> bool:
        return self.all_invariant and self.covers_delta

    def to_report(self):
        return {
            "factors": self.verdicts,
            "covers_delta": self.covers_delta,
            "all_invariant": self.all_invariant,
            "delta_invariant": self.delta_invariant,
        }


def form_preserves(form: OneForm, f: MultiPoly) -> bool:
    """f divides Y(f) for Y = B d/dx - A d/dy (the raw form, no normalization)."""
    return divides(f, form.B * f.diff(X) - form.A * f.diff(Y))


def delta_component_invariance(P: Pencil, factors) -> DeltaInvariance:
    T = P.tangency
    verdicts = []
    prod = MultiPoly.const(1, P.field)
    for f in factors:
        f = f.in_field(P.field)
        if f.is_constant() or not divides(f, T):
            raise FactorDoesNotDivideTangency(f"{f.to_str()} does not divide the tangency polynomial")
        verdicts.append(FactorVerdict(f, form_preserves(P.omega, f), form_preserves(P.eta, f)))
        prod = prod * f
    covers = prod.monic() == squarefree_part(T).monic()
    return DeltaInvariance(verdicts, covers)


# -- fibers of a first integral -------------------------------------------------------

def _points_on(g: MultiPoly, field: FieldSpec, bound: int = 6):
    for k in range(bound + 1):
        for x0 in ((k, -k) if k else (0,)):
            h = g.subs({X: x0})
            if h and not h.is_constant():
                for y0 in rational_roots(h, field):
                    yield (Scalar.coerce(x0, field), y0)
        for y0 in ((k, -k) if k else (0,)):
            h = g.subs({Y: y0})
            if h and not h.is_constant():
                for x0 in rational_roots(h, field):
                    yield (x0, Scalar.coerce(y0, field))


def is_fiber_component(g: MultiPoly, first_integral: RationalFunction, point=None):
    """Level c with {g = 0} inside {f = c}; INFINITY for a polar component; None otherwise."""
    f = first_integral
    if f.num.is_constant() and f.den.is_constant():
        raise ValueError("first integral must be nonconstant")
    field = join_fields(g.field, f.field)
    pts = [point] if point is not None else _points_on(g, field)
    chosen = None
    for pt in pts:
        px, py = (Scalar.coerce(c, field) for c in pt)
        if g.evaluate({X: px, Y: py}):
            raise ValueError("supplied point is not on the curve")
        if f.den.evaluate({X: px, Y: py}):
            chosen = (px, py)
            break
    if chosen is None:
        if divides(g, f.den):
            return INFINITY
        raise NoRationalPointFound(f"no rational point found on {g.to_str()}")
    c = f.num.evaluate({X: chosen[0], Y: chosen[1]}) / f.den.evaluate({X: chosen[0], Y: chosen[1]})
    level = f.num - f.den.scale(c)
    if level and divides(g, level):
        return c
    return None


# -- expected tangency diagnostics ---------------------------------------------------------

@dataclass
class TangencyComparison:
    computed: MultiPoly
    expected: MultiPoly
    scalar: Scalar | None
    factor_checks: list
    computed_monic: MultiPoly
    expected_monic: MultiPoly

    @property
    def match(self) -> bool:
        return self.scalar is not None

    def differences(self) -> list:
        """Terms of monic(computed) - monic(expected)."""
        diff = self.computed_monic - self.expected_monic
        return [MultiPoly._raw({e: c}, diff.field) for e, c in diff.sorted_terms()]

    def to_report(self):
        return {
            "match": self.match,
            "scalar": self.scalar,
            "computed": self.computed,
            "expected": self.expected,
            "factor_checks": [{"factor": f, "divides_computed": ok} for f, ok in self.factor_checks],
            "monic_difference_terms": self.differences(),
        }


def compare_tangency(T: MultiPoly, expected: MultiPoly, factors=()) -> TangencyComparison:
    """Is T a nonzero scalar multiple of `expected`?  Also checks each stated factor."""
    field = join_fields(T.field, expected.field)
    T, expected = T.in_field(field), expected.in_field(field)
    tm = T.monic() if T else T
    em = expected.monic() if expected else expected
    scalar = None
    if T and expected and tm == em:
        scalar = T.leading_coeff() / expected.leading_coeff()
    checks = [(f, bool(f) and divides(f.in_field(field), T)) for f in factors]
    return TangencyComparison(T, expected, scalar, checks, tm, em)

