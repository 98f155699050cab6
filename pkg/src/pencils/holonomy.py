"""Riccati pencils, their holonomy generators and the classification of I_p.

For a flat pencil w + alpha*eta with eta = C dx, the member is
dy + (A/B + alpha*C/B) dx, and flatness forces C/B = a(x) p2(y) with
deg p2 <= 2.  A Moebius change of y brings p2 to z (multiplicative case,
dz/z = -alpha a dx) or to a constant (affine case, dz = -alpha lam a dx).
Loops are positively oriented around each finite pole c_j of a, so the
generator exponent is mu_j = -res_{c_j}(a).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from math import isqrt, lcm

from .errors import (
    AlphaOutsideField,
    DegYTooLarge,
    IrrationalPoles,
    NonSplitP2,
    NotAFibration,
    NotFlat,
)
from .field import QQ, FieldSpec, Scalar, is_rational_square, join_fields
from .foliation import is_invariant, singular_points
from .ideals import rational_roots, root_of_unity_order
from .pencil import Pencil, curvature, member
from .poly import X, Y, MultiPoly, divmod_poly, exact_div
from .ratfunc import RationalFunction

MULTIPLICATIVE = "multiplicative"
AFFINE = "affine"


@dataclass(frozen=True)
class ScaledPeriod:
    """The number 2*pi*i*coefficient."""

    coefficient: Scalar

    def __add__(self, other: ScaledPeriod) -> ScaledPeriod:
        if not isinstance(other, ScaledPeriod):
            return NotImplemented
        return ScaledPeriod(self.coefficient + other.coefficient)

    def __sub__(self, other: ScaledPeriod) -> ScaledPeriod:
        if not isinstance(other, ScaledPeriod):
            return NotImplemented
        return ScaledPeriod(self.coefficient - other.coefficient)

    def __neg__(self) -> ScaledPeriod:
        return ScaledPeriod(-self.coefficient)

    def __mul__(self, c) -> ScaledPeriod:
        if isinstance(c, ScaledPeriod):
            raise TypeError("product of two periods is not a period")
        return ScaledPeriod(self.coefficient * c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, ScaledPeriod):
            return self.coefficient / c.coefficient  # ratio is a plain scalar
        return ScaledPeriod(self.coefficient / c)

    def __bool__(self):
        return bool(self.coefficient)

    def __eq__(self, other):
        if isinstance(other, ScaledPeriod):
            return self.coefficient == other.coefficient
        if other == 0:
            return not self.coefficient
        return NotImplemented

    def __hash__(self):
        return hash(("2pi i", self.coefficient))

    def to_str(self) -> str:
        c = self.coefficient
        if not c:
            return "0"
        return f"2*pi*i*({c.to_str()})"

    def to_report(self):
        return self.to_str()


@dataclass(frozen=True)
class Pole:
    c: Scalar
    order: int
    residue: Scalar
    principal_part: tuple  # coefficients of (x-c)^-order ... (x-c)^-1

    def to_report(self):
        return {"pole": self.c, "order": self.order, "residue": self.residue}


@dataclass(frozen=True)
class RiccatiPencil:
    a: RationalFunction
    kind: str
    lam: Scalar | None
    poles: tuple
    normalization: str
    twist: RationalFunction | None = None
    twist_poles: tuple = ()

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    @property
    def infinity_residue(self) -> Scalar:
        acc = Scalar(0, 0, self.field)
        for p in self.poles:
            acc = acc - p.residue
        return acc

    def to_report(self):
        return {
            "a": self.a,
            "kind": self.kind,
            "lambda": self.lam,
            "poles": list(self.poles),
            "residue_at_infinity": self.infinity_residue,
            "normalization": self.normalization,
            "twist": self.twist,
        }


@dataclass(frozen=True)
class MultiplicativeGenerator:
    """z -> exp(2 pi i (mu*alpha + nu)) z."""

    mu: Scalar
    nu: Scalar

    def to_report(self):
        return {"mu": self.mu, "nu": self.nu}


@dataclass(frozen=True)
class AffineGenerator:
    """z -> lam*z + a*alpha + b."""

    lam: Scalar
    a: ScaledPeriod
    b: ScaledPeriod

    def to_report(self):
        return {"lambda": self.lam, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class HolonomyPresentation:
    kind: str
    generators: tuple
    field: FieldSpec
    poles: tuple = ()
    infinity_residue: Scalar | None = None

    def to_report(self):
        return {
            "kind": self.kind,
            "generators": list(self.generators),
            "poles": [p.c for p in self.poles],
            "residue_at_infinity": self.infinity_residue,
        }


def multiplicative(mus, nus=None, field: FieldSpec | None = None) -> HolonomyPresentation:
    """Presentation from explicit (mu_j, nu_j) data."""
    nus = nus if nus is not None else [0] * len(mus)
    fld = field
    if fld is None:
        fld = QQ
        for v in list(mus) + list(nus):
            if isinstance(v, Scalar):
                fld = join_fields(fld, v.field)
    gens = tuple(
        MultiplicativeGenerator(Scalar.coerce(m, fld), Scalar.coerce(n, fld)) for m, n in zip(mus, nus)
    )
    return HolonomyPresentation(MULTIPLICATIVE, gens, fld)


def affine(lams, a_coeffs, b_coeffs, field: FieldSpec | None = None) -> HolonomyPresentation:
    """Presentation z -> lam_j z + 2 pi i (a_j alpha + b_j) from coefficient lists."""
    fld = field or QQ
    if field is None:
        for v in list(lams) + list(a_coeffs) + list(b_coeffs):
            if isinstance(v, Scalar):
                fld = join_fields(fld, v.field)
    gens = tuple(
        AffineGenerator(
            Scalar.coerce(lm, fld),
            ScaledPeriod(Scalar.coerce(a, fld)),
            ScaledPeriod(Scalar.coerce(b, fld)),
        )
        for lm, a, b in zip(lams, a_coeffs, b_coeffs)
    )
    return HolonomyPresentation(AFFINE, gens, fld)


# -- normal form ------------------------------------------------------------------

def _base_point(f: RationalFunction, field: FieldSpec):
    for k in range(1, 8):
        for x0 in (k, -k, Fraction(1, k + 1)):
            for y0 in (k, -k, Fraction(1, k + 2)):
                pt = {X: Scalar.coerce(x0, field), Y: Scalar.coerce(y0, field)}
                if f.den.evaluate(pt) and f.num.evaluate(pt):
                    return pt
    raise NotFlat("no base point found for the separation of variables")


def _separate(P: RationalFunction):
    """Write P = a(x) * p(y) with p(y0) = 1, or raise NotFlat."""
    pt = _base_point(P, P.field)
    a = P.subs({Y: pt[Y]})
    p = P.subs({X: pt[X]}) / P.evaluate(pt)
    if a * p != P:
        raise NotFlat("C/B does not factor as a(x)*p2(y)")
    return a, p


def _laurent(num: MultiPoly, den: MultiPoly, c: Scalar) -> tuple:
    """Pole order and principal part of num/den at x = c."""
    h_num = num.translate({X: c})
    h_den = den.translate({X: c})
    m = min(e[X] for e in h_den.terms)
    e_den = exact_div(h_den, MultiPoly.monomial((m, 0, 0, 0), 1, den.field))
    nc = h_num.univariate_coeffs(X) if h_num else [Scalar(0, 0, num.field)]
    dc = e_den.univariate_coeffs(X)
    zero = Scalar(0, 0, num.field)
    rem = [(nc[i] if i < len(nc) else zero) for i in range(m)]
    out = []
    inv = dc[0].inverse()
    for i in range(m):
        q = rem[i] * inv
        out.append(q)
        for j, dj in enumerate(dc):
            if i + j < m:
                rem[i + j] = rem[i + j] - q * dj
    # out[k] is the coefficient of (x-c)^(k-m)
    while out and not out[0]:
        out.pop(0)
        m -= 1
    return m, tuple(out)


def partial_fraction_poles(a: RationalFunction) -> tuple:
    """Poles of a(x) with orders and residues; the denominator must split over K."""
    field = a.field
    den = a.den
    if den.is_constant():
        return ()
    roots = rational_roots(den, field)
    rest = den
    for r in roots:
        lin = MultiPoly.var(X, field) - r
        while True:
            q, rem = divmod_poly(rest, lin)
            if rem:
                break
            rest = q
    if not rest.is_constant():
        raise IrrationalPoles(f"denominator factor {rest.to_str()} has no roots in {field}")
    poles = []
    for r in roots:
        order, pp = _laurent(a.num, den, r)
        if order <= 0:
            continue
        poles.append(Pole(r, order, pp[-1], pp))
    return tuple(poles)


def _monic_split(a: RationalFunction):
    """a = c * a1 with numerator and denominator of a1 monic."""
    c = a.num.leading_coeff()
    return c, RationalFunction(a.num.scale(c.inverse()), a.den)


def riccati_normal_form(P: Pencil) -> RiccatiPencil:
    """Normal form of a flat pencil whose eta defines the fibration dx = 0."""
    if P.D:
        raise NotAFibration("eta must be of the form C dx")
    if P.C.is_zero():
        raise NotAFibration("eta vanishes")
    if not curvature(P).flat:
        raise NotFlat("pencil has nonzero curvature")
    field = P.field
    Pxy = RationalFunction(P.C, P.B)
    a, p2 = _separate(Pxy)
    if not p2.is_polynomial():
        raise DegYTooLarge("p2 is not a polynomial in y")
    p2 = p2.num.scale(p2.den.leading_coeff().inverse())
    if p2.degree(Y) > 2 or p2.degree(X) > 0:
        raise DegYTooLarge(f"deg_y p2 = {p2.degree(Y)} > 2")
    twist = None
    if P.A:
        t = RationalFunction(P.A, P.B) / RationalFunction(p2)
        if t.num.degree(Y) > 0 or t.den.degree(Y) > 0:
            raise NotFlat("A/B is not a(x)*p2(y) for the same p2")
        twist = t
    coeffs = p2.univariate_coeffs(Y) if not p2.is_constant() else [p2.constant_term()]
    deg = len(coeffs) - 1
    c = coeffs[-1]
    if deg == 0:
        kind, scale, note = AFFINE, c, "z = y"
    elif deg == 1:
        y0 = -coeffs[0] / c
        kind, scale, note = MULTIPLICATIVE, c, f"z = y - ({y0.to_str()})"
    else:
        roots = rational_roots(p2, field)
        if not roots:
            raise NonSplitP2(f"p2 = {p2.monic().to_str()} has no root in {field}")
        if len(roots) == 2:
            r1, r2 = roots
            kind, scale = MULTIPLICATIVE, c * (r1 - r2)
            note = f"z = (y - ({r1.to_str()}))/(y - ({r2.to_str()}))"
        else:
            r = roots[0]
            kind, scale, note = AFFINE, c, f"z = -1/(y - ({r.to_str()}))"
    a = a * RationalFunction(MultiPoly.const(scale, field))
    lam = None
    if kind == AFFINE:
        lam, a = _monic_split(a)
        if twist is not None:
            twist = twist * RationalFunction(MultiPoly.const(scale / lam, field))
    elif twist is not None:
        twist = twist * RationalFunction(MultiPoly.const(scale, field))
    poles = partial_fraction_poles(a)
    twist_poles = partial_fraction_poles(twist) if twist is not None else ()
    return RiccatiPencil(a, kind, lam, poles, note, twist, twist_poles)


def holonomy_generators(R: RiccatiPencil) -> HolonomyPresentation:
    """One generator per finite pole of a (and of the twist, if any)."""
    field = R.field
    zero = Scalar(0, 0, field)
    res_a = {p.c: p.residue for p in R.poles}
    res_t = {p.c: p.residue for p in R.twist_poles}
    centers = sorted(set(res_a) | set(res_t), key=lambda z: (z.b, z.a))
    gens = []
    for cj in centers:
        r, r0 = res_a.get(cj, zero), res_t.get(cj, zero)
        if R.kind == MULTIPLICATIVE:
            gens.append(MultiplicativeGenerator(-r, -r0))
        else:
            gens.append(AffineGenerator(Scalar(1, 0, field), ScaledPeriod(-R.lam * r), ScaledPeriod(-R.lam * r0)))
    total = zero
    for p in R.poles:
        total = total + p.residue
    assert total + R.infinity_residue == 0
    return HolonomyPresentation(R.kind, tuple(gens), field, R.poles, R.infinity_residue)


# -- finiteness -------------------------------------------------------------------

@dataclass(frozen=True)
class FinitenessCertificate:
    finite: bool
    order: int | None = None
    failing: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.finite

    def to_report(self):
        return {"finite": self.finite, "order": self.order, "failing_generator": self.failing, "reason": self.reason}


def _alpha_in(alpha, field: FieldSpec) -> Scalar:
    if isinstance(alpha, Scalar):
        if not field.contains(alpha.field):
            raise AlphaOutsideField(f"alpha lies in {alpha.field}, not in {field}")
        return alpha.in_field(field)
    try:
        return Scalar.coerce(alpha, field)
    except Exception as exc:
        raise AlphaOutsideField(str(exc)) from None


def group_is_finite(H: HolonomyPresentation, alpha) -> FinitenessCertificate:
    alpha = _alpha_in(alpha, H.field)
    if H.kind == MULTIPLICATIVE:
        order = 1
        for j, g in enumerate(H.generators):
            v = g.mu * alpha + g.nu
            if not v.is_rational:
                return FinitenessCertificate(False, failing=j, reason=f"mu*alpha+nu = {v.to_str()} is not rational")
            order = lcm(order, v.a.denominator)
        return FinitenessCertificate(True, order)
    order = 1
    fixed = None
    for j, g in enumerate(H.generators):
        n = root_of_unity_order(g.lam)
        if n is None:
            return FinitenessCertificate(False, failing=j, reason=f"lambda = {g.lam.to_str()} is not a root of unity")
        shift = g.a * alpha + g.b
        if g.lam == 1:
            if shift:
                return FinitenessCertificate(False, failing=j, reason="nonzero translation")
            continue
        fp = shift / (1 - g.lam)
        if fixed is None:
            fixed = fp
        elif fp != fixed:
            return FinitenessCertificate(False, failing=j, reason="no common fixed point")
        order = lcm(order, n)
    return FinitenessCertificate(True, order)


# -- classification of I_p ------------------------------------------------------------

FINITE = "Finite"
ALL_OF_IS = "AllOfIS"
QCOSET = "QCoset"


@dataclass(frozen=True)
class IpClassification:
    verdict: str
    lam: Scalar | None = None
    beta: Scalar | None = None
    witness: str = ""

    def contains(self, alpha) -> bool:
        """Membership of alpha in the coset lam*Q + beta (QCoset verdicts only)."""
        if self.verdict != QCOSET:
            raise ValueError("membership is only defined for QCoset verdicts")
        return ((Scalar.coerce(alpha, self.lam.field) - self.beta) / self.lam).is_rational

    def same_coset(self, other: IpClassification) -> bool:
        if self.verdict != QCOSET or other.verdict != QCOSET:
            return self.verdict == other.verdict
        ratio = other.lam / self.lam
        return ratio.is_rational and bool(ratio) and ((other.beta - self.beta) / self.lam).is_rational

    def to_report(self):
        out = {"verdict": self.verdict, "witness": self.witness}
        if self.verdict == QCOSET:
            out.update({"lambda": self.lam, "beta": self.beta})
        return out


def classify_ip(H: HolonomyPresentation) -> IpClassification:
    """Finite | AllOfIS | QCoset(lam, beta) for {alpha in K : G_alpha finite}."""
    if H.kind == AFFINE:
        return _classify_affine(H)
    gens = H.generators
    nonzero = [j for j, g in enumerate(gens) if g.mu]
    if not nonzero:
        bad = [j for j, g in enumerate(gens) if not g.nu.is_rational]
        if bad:
            return IpClassification(FINITE, witness=f"generator {bad[0]} has irrational nu and mu = 0")
        return IpClassification(ALL_OF_IS, witness="all mu vanish and all nu are rational")
    j1 = nonzero[0]
    mu1 = gens[j1].mu
    s1 = None  # t-part of s = mu1*alpha
    for j, g in enumerate(gens):
        q = g.mu / mu1
        if not q.is_rational:
            return IpClassification(FINITE, witness=f"mu_{j}/mu_{j1} = {q.to_str()} is irrational")
        if not q:
            if not g.nu.is_rational:
                return IpClassification(FINITE, witness=f"generator {j} has mu = 0 and irrational nu")
            continue
        cand = -g.nu.b / q.a
        if s1 is None:
            s1 = cand
        elif s1 != cand:
            return IpClassification(FINITE, witness="no common base point beta in K")
    field = H.field
    lam = Scalar(1, 0, field) / mu1
    beta = Scalar(0, s1, field) / mu1 if s1 else Scalar(0, 0, field)
    return IpClassification(QCOSET, lam, beta, witness=f"generator {j1} fixes the slope")


def _classify_affine(H: HolonomyPresentation) -> IpClassification:
    ref_a = ref_b = None
    for j, g in enumerate(H.generators):
        if root_of_unity_order(g.lam) is None:
            return IpClassification(FINITE, witness=f"lambda_{j} is not a root of unity")
        if g.lam == 1:
            if g.a or g.b:
                return IpClassification(FINITE, witness=f"translation of generator {j} vanishes for at most one alpha")
            continue
        fa, fb = g.a / (1 - g.lam), g.b / (1 - g.lam)
        if ref_a is None:
            ref_a, ref_b = fa, fb
        elif fa != ref_a or fb != ref_b:
            return IpClassification(FINITE, witness="fixed points coincide for at most one alpha")
    return IpClassification(ALL_OF_IS, witness="finiteness conditions hold identically in alpha")


# -- transformations of presentations ---------------------------------------------------

def conjugate(H: HolonomyPresentation, kind: str, param=None) -> HolonomyPresentation:
    """Conjugate every generator by one Moebius map of the fiber coordinate.

    kind = "inversion" (z -> 1/z, multiplicative), "translation" (z -> z + c with c a
    ScaledPeriod, affine) or "scaling" (z -> k z).
    """
    if kind == "inversion":
        if H.kind != MULTIPLICATIVE:
            raise ValueError("inversion conjugation needs a multiplicative presentation")
        gens = tuple(MultiplicativeGenerator(-g.mu, -g.nu) for g in H.generators)
    elif kind == "translation":
        if H.kind != AFFINE:
            raise ValueError("translation conjugation needs an affine presentation")
        c = param if isinstance(param, ScaledPeriod) else ScaledPeriod(Scalar.coerce(param, H.field))
        gens = tuple(AffineGenerator(g.lam, g.a, g.b + c * (1 - g.lam)) for g in H.generators)
    elif kind == "scaling":
        k = Scalar.coerce(param, H.field)
        if not k:
            raise ValueError("scaling by zero")
        if H.kind == MULTIPLICATIVE:
            gens = H.generators
        else:
            gens = tuple(AffineGenerator(g.lam, g.a * k, g.b * k) for g in H.generators)
    else:
        raise ValueError(f"unknown conjugation {kind!r}")
    return replace(H, generators=gens)


def reparametrize(H: HolonomyPresentation, c) -> HolonomyPresentation:
    """Presentation of the pencil with alpha replaced by c*alpha."""
    c = Scalar.coerce(c, H.field)
    if not c:
        raise ValueError("reparametrization by zero")
    if H.kind == MULTIPLICATIVE:
        gens = tuple(MultiplicativeGenerator(g.mu * c, g.nu) for g in H.generators)
    else:
        gens = tuple(AffineGenerator(g.lam, g.a * c, g.b) for g in H.generators)
    return replace(H, generators=gens)


# -- side conditions ------------------------------------------------------------------

@dataclass
class SideConditions:
    alpha: Scalar
    degree: int
    components: list = dc_field(default_factory=list)
    singularities: list = dc_field(default_factory=list)

    def to_report(self):
        return {
            "alpha": self.alpha,
            "degree": self.degree,
            "components": self.components,
            "singularities": self.singularities,
        }


def eigenvalue_ratio(F, p) -> Scalar | None:
    """Rational ratio of the Jacobian eigenvalues at p, or None (degenerate or irrational)."""
    at = {X: p.x, Y: p.y}
    bx, by = F.B.diff(X).evaluate(at), F.B.diff(Y).evaluate(at)
    ax, ay = F.A.diff(X).evaluate(at), F.A.diff(Y).evaluate(at)
    tr, det = bx - ay, ax * by - bx * ay
    if not det:
        return None
    beta = tr * tr / det
    if not beta.is_rational:
        return None
    b = beta.a
    disc = b * (b - 4)
    if disc < 0 or not is_rational_square(disc):
        return None
    root = Fraction(isqrt(disc.numerator), isqrt(disc.denominator))
    return Scalar((b - 2 - root) / 2, 0, F.field)


def side_conditions_report(P: Pencil, alpha, components=()) -> SideConditions:
    """Audit the hypotheses behind 'infinitely many compact invariant curves' for member alpha."""
    alpha = _alpha_in(alpha, P.field)
    F = member(P, alpha).foliation
    d = F.degree
    rep = SideConditions(alpha, d)
    for name, C in (components.items() if isinstance(components, dict) else enumerate(components)):
        k = C.total_degree()
        z = k * (d + 2) - k * k
        rep.components.append(
            {"curve": C, "label": str(name), "invariant": is_invariant(F, C), "Z": z, "Z_at_least_1": z >= 1}
        )
    linear = F.A.total_degree() <= 1 and F.B.total_degree() <= 1
    for sp in singular_points(F):
        G = F.chart(sp.chart)
        rho = eigenvalue_ratio(G, sp.point)
        if rho is None:
            status = "unknown"
        elif linear and sp.chart == 1 and (rho != 1 or _scalar_jacobian(G, sp.point)):
            status = "holds"
        else:
            status = "likely"
        rep.singularities.append({"point": sp, "eigenvalue_ratio": rho, "local_first_integral": status})
    return rep


def _scalar_jacobian(F, p) -> bool:
    at = {X: p.x, Y: p.y}
    bx, by = F.B.diff(X).evaluate(at), F.B.diff(Y).evaluate(at)
    ax, ay = F.A.diff(X).evaluate(at), F.A.diff(Y).evaluate(at)
    return not by and not ax and bx == -ay
