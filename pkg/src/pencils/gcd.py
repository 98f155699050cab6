"""Subresultant remainder sequences, resultants and multivariate gcd."""
from __future__ import annotations

from .errors import DegreeZeroInput, ZeroPolynomial
from .field import join_fields
from .poly import MultiPoly, exact_div, unit_exp, var_index


def lc_in(f: MultiPoly, v) -> MultiPoly:
    """Leading coefficient of f viewed as a polynomial in v."""
    i = var_index(v)
    d = f.degree(i)
    return MultiPoly._raw(
        {e[:i] + (0,) + e[i + 1:]: c for e, c in f.terms.items() if e[i] == d}, f.field
    )


def prem(a: MultiPoly, b: MultiPoly, v) -> MultiPoly:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, in the variable v."""
    i = var_index(v)
    db = b.degree(i)
    if db < 0:
        raise ZeroPolynomial("pseudo-division by zero")
    lcb = lc_in(b, i)
    r = a
    e = max(a.degree(i) - db + 1, 0)
    while r and r.degree(i) >= db:
        dr = r.degree(i)
        r = r * lcb - lc_in(r, i) * b.shift_exp(unit_exp(i, dr - db))
        e -= 1
    if e:
        r = r * lcb ** e
    return r


def subresultant_prs(f: MultiPoly, g: MultiPoly, v) -> list:
    """Subresultant polynomial remainder sequence of f, g in the variable v."""
    i = var_index(v)
    a, b = (f, g) if f.degree(i) >= g.degree(i) else (g, f)
    seq = [a, b]
    if not b:
        return seq[:1]
    gg = hh = MultiPoly.const(1, a.field)
    while True:
        delta = a.degree(i) - b.degree(i)
        r = prem(a, b, i)
        if not r:
            return seq
        a, b = b, exact_div(r, gg * hh ** delta)
        seq.append(b)
        gg = lc_in(a, i)
        hh = exact_div(gg ** delta, hh ** (delta - 1)) if delta >= 1 else hh
        if b.degree(i) == 0:
            return seq


def resultant(f: MultiPoly, g: MultiPoly, v) -> MultiPoly:
    """Res_v(f, g) = det of the Sylvester matrix with f's rows first.

    Sign convention: Res(f, g) = lc(f)^deg(g) * prod g(roots of f), so
    Res_y(y - 1, y + 1) = 2.  Computed by the subresultant algorithm.
    """
    i = var_index(v)
    field = join_fields(f.field, g.field)
    m, n = f.degree(i), g.degree(i)
    if m <= 0 or n <= 0:
        raise DegreeZeroInput(f"resultant needs positive degree in {v}")
    a, b = f, g
    sign = 1
    if m < n:
        a, b = b, a
        if m % 2 and n % 2:
            sign = -1
    gg = hh = MultiPoly.const(1, field)
    while True:
        da, db = a.degree(i), b.degree(i)
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = prem(a, b, i)
        if not r:
            return MultiPoly.zero(field)
        a, b = b, exact_div(r, gg * hh ** delta)
        gg = lc_in(a, i)
        hh = exact_div(gg ** delta, hh ** (delta - 1)) if delta >= 1 else hh
        if b.degree(i) == 0:
            da = a.degree(i)
            res = exact_div(b ** da, hh ** (da - 1)) if da >= 1 else b
            return res if sign > 0 else -res


def content(f: MultiPoly, v) -> MultiPoly:
    """gcd of the coefficients of f as a polynomial in v (monic)."""
    c = None
    for coeff in f.coeffs_in(v).values():
        c = coeff.monic() if c is None else gcd(c, coeff)
        if c.is_constant():
            return MultiPoly.const(1, f.field)
    return c if c is not None else MultiPoly.zero(f.field)


def primitive_part(f: MultiPoly, v) -> MultiPoly:
    return exact_div(f, content(f, v))


_PROBES = (2, -1, 3, -2, 5, 7, -3, 11)


def _coprime_by_specialization(a: MultiPoly, b: MultiPoly, i: int) -> bool:
    """Certify gcd(a, b) = 1 (a, b primitive in variable i) via one integer specialization.

    If h | a, b with deg_i h > 0, then h stays of the same degree at any point where
    lc_i(a) does not vanish, so a constant specialized gcd proves coprimality.
    """
    others = sorted((set(a.used_vars()) | set(b.used_vars())) - {i})
    if not others:
        return False
    la, lb = lc_in(a, i), lc_in(b, i)
    for k in range(len(_PROBES)):
        point = {v: _PROBES[(k + j) % len(_PROBES)] for j, v in enumerate(others)}
        if la.subs(point) and lb.subs(point):
            sa, sb = a.subs(point), b.subs(point)
            return _prs_gcd(sa, sb, i).is_constant()
    return False


def _prs_gcd(a: MultiPoly, b: MultiPoly, i: int) -> MultiPoly:
    # a, b primitive in variable i, both of positive degree.
    if a.degree(i) < b.degree(i):
        a, b = b, a
    if len(set(a.used_vars()) | set(b.used_vars())) > 1 and _coprime_by_specialization(a, b, i):
        return MultiPoly.const(1, a.field)
    gg = hh = MultiPoly.const(1, a.field)
    while True:
        delta = a.degree(i) - b.degree(i)
        r = prem(a, b, i)
        if not r:
            return primitive_part(b, i)
        if r.degree(i) == 0:
            return MultiPoly.const(1, a.field)
        a, b = b, exact_div(r, gg * hh ** delta)
        gg = lc_in(a, i)
        hh = exact_div(gg ** delta, hh ** (delta - 1)) if delta >= 1 else hh


def gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic greatest common divisor (leading coefficient 1 in grlex order)."""
    field = join_fields(f.field, g.field)
    if not f and not g:
        raise ZeroPolynomial("gcd(0, 0) is undefined")
    if not f:
        return g.monic().in_field(field)
    if not g:
        return f.monic().in_field(field)
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(1, field)
    used = sorted(set(f.used_vars()) | set(g.used_vars()))
    i = used[-1]
    df, dg = f.degree(i), g.degree(i)
    if df == 0:
        return gcd(f, content(g, i))
    if dg == 0:
        return gcd(content(f, i), g)
    cf, cg = content(f, i), content(g, i)
    pf, pg = exact_div(f, cf), exact_div(g, cg)
    c = gcd(cf, cg)
    return (c * _prs_gcd(pf, pg, i)).monic()


def gcd_multivariate(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    return gcd(f, g)


def gcd_many(polys) -> MultiPoly:
    out = None
    for p in polys:
        if out is None:
            out = p.monic() if p else p
        elif p:
            out = gcd(out, p) if out else p.monic()
        if out is not None and out and out.is_constant():
            return out
    if out is None or not out:
        raise ZeroPolynomial("gcd of zero polynomials")
    return out


def squarefree_part(f: MultiPoly) -> MultiPoly:
    """f / gcd(f, all partial derivatives)."""
    if not f:
        raise ZeroPolynomial("squarefree part of zero")
    if f.is_constant():
        return MultiPoly.const(1, f.field)
    g = gcd_many([f] + [f.diff(i) for i in f.used_vars()])
    return exact_div(f, g)


def is_squarefree(f: MultiPoly) -> bool:
    return squarefree_part(f).total_degree() == f.total_degree()
