"""Intersection multiplicities, Groebner bases and roots in the coefficient field."""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, inf, isqrt, lcm

from .errors import ZeroPolynomial
from .field import QQ, FieldSpec, Scalar, is_rational_square, join_fields
from .gcd import gcd, resultant
from .poly import MultiPoly, X, Y, exact_div, unit_exp, var_index

INFINITE = inf


# -- Fulton's algorithm ---------------------------------------------------------

def _x_order(coeffs) -> int:
    for k, c in enumerate(coeffs):
        if c:
            return k
    return -1


def _fulton_origin(f: MultiPoly, g: MultiPoly) -> int:
    # f, g coprime in K[x, y].
    total = 0
    y = MultiPoly.var(Y, f.field)
    while True:
        if f.constant_term() or g.constant_term():
            return total
        f0 = f.subs({Y: 0})
        g0 = g.subs({Y: 0})
        r = f0.degree(X) if f0 else -1
        s = g0.degree(X) if g0 else -1
        if r > s:
            f, g, f0, g0, r, s = g, f, g0, f0, s, r
        if r < 0:
            # y divides f: I(f, g) = I(y, g) + I(f/y, g), and I(y, g) = ord_x g(x, 0).
            if s < 0:
                raise ValueError("curves share the component y = 0")
            total += _x_order(g0.univariate_coeffs(X))
            f = exact_div(f, y)
            continue
        ratio = g0.terms[unit_exp(X, s)] / f0.terms[unit_exp(X, r)]
        g = g - f.shift_exp(unit_exp(X, s - r)).scale(ratio)


def fulton_multiplicity(f: MultiPoly, g: MultiPoly, p=(0, 0)):
    """Local intersection number I(p; f, g) of plane curves; INFINITE on a shared component."""
    px, py = _point_coords(p, join_fields(f.field, g.field))
    if not f or not g:
        if f.evaluate({X: px, Y: py}) and g.evaluate({X: px, Y: py}):
            return 0
        return INFINITE
    _check_plane(f, g)
    if f.evaluate({X: px, Y: py}) or g.evaluate({X: px, Y: py}):
        return 0
    f = f.translate({X: px, Y: py})
    g = g.translate({X: px, Y: py})
    h = gcd(f, g)
    if not h.is_constant():
        if not h.constant_term():
            return INFINITE
        f, g = exact_div(f, h), exact_div(g, h)
    return _fulton_origin(f, g)


def _point_coords(p, field: FieldSpec):
    if hasattr(p, "x") and hasattr(p, "y"):
        p = (p.x, p.y)
    try:
        px, py = p
    except (TypeError, ValueError):
        raise TypeError(f"point must be a pair of scalars, got {p!r}") from None
    out = []
    for c in (px, py):
        if isinstance(c, float):
            raise TypeError("point coordinates must be exact scalars")
        out.append(Scalar.coerce(c, field))
    return tuple(out)


def _check_plane(*polys):
    for p in polys:
        if any(i not in (X, Y) for i in p.used_vars()):
            raise ValueError("expected polynomials in x and y only")


# -- Groebner bases (grevlex, x > y > alpha > s) ---------------------------------

def grevlex_key(e: tuple) -> tuple:
    return (sum(e), tuple(-k for k in reversed(e)))


def _lead(terms: dict) -> tuple:
    return max(terms, key=grevlex_key)


def _divides_exp(a: tuple, b: tuple) -> bool:
    return all(i <= j for i, j in zip(a, b))


class GroebnerBasis:
    """Reduced Groebner basis in grevlex order."""

    def __init__(self, polys, field: FieldSpec):
        self.polys = polys
        self.field = field
        self.leads = [_lead(p.terms) for p in polys]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def is_unit(self) -> bool:
        return any(not any(e) for e in self.leads)

    def reduce(self, f: MultiPoly) -> MultiPoly:
        return _normal_form(f.terms, self.polys, self.leads, f.field)

    def contains(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero()


def _normal_form(terms: dict, basis, leads, field) -> MultiPoly:
    p = dict(terms)
    r = {}
    while p:
        le = _lead(p)
        c = p[le]
        for g, lg in zip(basis, leads):
            if _divides_exp(lg, le):
                d = tuple(a - b for a, b in zip(le, lg))
                m = c / g.terms[lg]
                for e, gc in g.terms.items():
                    ne = (e[0] + d[0], e[1] + d[1], e[2] + d[2], e[3] + d[3])
                    val = gc * m
                    if ne in p:
                        s = p[ne] - val
                        if s:
                            p[ne] = s
                        else:
                            del p[ne]
                    else:
                        p[ne] = -val
                break
        else:
            r[le] = c
            del p[le]
    return MultiPoly._raw(r, field)


def buchberger(generators) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `generators` (grevlex)."""
    generators = list(generators)
    if not generators:
        raise ValueError("empty generator list")
    field = QQ
    for g in generators:
        field = join_fields(field, g.field)
    basis = [g.in_field(field).monic() for g in generators if g]
    if not basis:
        return GroebnerBasis([], field)
    leads = [_lead(g.terms) for g in basis]
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        pairs.sort(key=lambda ij: grevlex_key(tuple(map(max, leads[ij[0]], leads[ij[1]]))))
        i, j = pairs.pop(0)
        li, lj = leads[i], leads[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        m = tuple(map(max, li, lj))
        si = basis[i].shift_exp(tuple(a - b for a, b in zip(m, li)))
        sj = basis[j].shift_exp(tuple(a - b for a, b in zip(m, lj)))
        s = si - sj
        r = _normal_form(s.terms, basis, leads, field)
        if r:
            r = r.monic()
            basis.append(r)
            leads.append(_lead(r.terms))
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
            if not any(leads[-1]):
                return GroebnerBasis([MultiPoly.const(1, field)], field)
    # minimal basis
    keep = []
    for k, lk in enumerate(leads):
        if any(
            _divides_exp(leads[m], lk) and (leads[m] != lk or m < k)
            for m in range(len(leads))
            if m != k
        ):
            continue
        keep.append(k)
    polys = [basis[k] for k in keep]
    lds = [leads[k] for k in keep]
    # interreduce
    reduced = []
    for k, p in enumerate(polys):
        others = polys[:k] + polys[k + 1:]
        other_leads = lds[:k] + lds[k + 1:]
        lt = {lds[k]: p.terms[lds[k]]}
        tail = {e: c for e, c in p.terms.items() if e != lds[k]}
        tail_nf = _normal_form(tail, others, other_leads, field)
        reduced.append((MultiPoly._raw(lt, field) + tail_nf).monic())
    reduced.sort(key=lambda p: grevlex_key(_lead(p.terms)))
    return GroebnerBasis(reduced, field)


def quotient_dimension(basis: GroebnerBasis, variables=("x", "y")):
    """dim_K K[variables]/I by counting standard monomials; INFINITE if unbounded."""
    idx = [var_index(v) for v in variables]
    if not basis.polys:
        return INFINITE
    if basis.is_unit():
        return 0
    bounds = {}
    for le in basis.leads:
        nz = [i for i, k in enumerate(le) if k]
        if len(nz) == 1:
            i = nz[0]
            bounds[i] = min(bounds.get(i, le[i]), le[i])
    if any(i not in bounds for i in idx):
        return INFINITE
    count = 0
    for exps in product(*(range(bounds[i]) for i in idx)):
        e = [0, 0, 0, 0]
        for i, k in zip(idx, exps):
            e[i] = k
        e = tuple(e)
        if not any(_divides_exp(le, e) for le in basis.leads):
            count += 1
    return count


def ideal_dimension(generators, variables=("x", "y")):
    return quotient_dimension(buchberger(generators), variables)


def _power_generators(variables, n: int, field):
    """Generators of (variables)^n."""
    idx = [var_index(v) for v in variables]
    out = []
    for exps in product(range(n + 1), repeat=len(idx)):
        if sum(exps) == n:
            e = [0, 0, 0, 0]
            for i, k in zip(idx, exps):
                e[i] = k
            out.append(MultiPoly.monomial(tuple(e), 1, field))
    return out


def local_dimension(generators, point=(0, 0), variables=("x", "y")):
    """dim of the localization of K[x,y]/I at a K-rational point.

    Computes dim K[x,y]/(I + m^N) for N = 1, 2, ... until two consecutive
    values agree; by Nakayama the local ideal then contains m^N.
    """
    generators = [g for g in generators if g]
    field = QQ
    for g in generators:
        field = join_fields(field, g.field)
    px, py = _point_coords(point, field)
    moved = [g.in_field(field).translate({X: px, Y: py}) for g in generators]
    gb = buchberger(moved) if moved else GroebnerBasis([], field)
    if gb.is_unit():
        return 0
    prev = None
    n = 1
    while True:
        d = quotient_dimension(buchberger(list(gb.polys) + _power_generators(variables, n, field)), variables)
        if d == prev:
            return d
        prev = d
        n += 1


def dimension_along(generators, v, variables=("x", "y")):
    """Total multiplicity of V(I) on the hyperplane {v = 0}: dim K[..]/(I + v^N) stabilized."""
    generators = [g for g in generators if g]
    if not generators:
        return INFINITE
    field = QQ
    for g in generators:
        field = join_fields(field, g.field)
    gb = buchberger([g.in_field(field) for g in generators])
    if gb.is_unit():
        return 0
    i = var_index(v)
    prev = None
    n = 1
    while True:
        d = quotient_dimension(
            buchberger(list(gb.polys) + [MultiPoly.monomial(unit_exp(i, n), 1, field)]), variables
        )
        if d == INFINITE:
            return INFINITE
        if d == prev:
            return d
        prev = d
        n += 1


# -- roots in K -----------------------------------------------------------------

def _divisors(n: int) -> list:
    n = abs(n)
    primes = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            primes[d] = primes.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        primes[n] = primes.get(n, 0) + 1
    divs = [1]
    for p, k in primes.items():
        divs = [a * p ** j for a in divs for j in range(k + 1)]
    return sorted(divs)


def _rational_roots_q(coeffs) -> list:
    """Rational roots of a polynomial with rational coefficients (dense, index = degree)."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ZeroPolynomial("roots of the zero polynomial")
    roots = []
    k = 0
    while k < len(coeffs) and coeffs[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        coeffs = coeffs[k:]
    if len(coeffs) <= 1:
        return roots
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    a0, an = ints[0], ints[-1]

    def value(r):
        acc = Fraction(0)
        for c in reversed(ints):
            acc = acc * r + c
        return acc

    found = set()
    for q in _divisors(an):
        for p in _divisors(a0):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if r not in found and value(r) == 0:
                    found.add(r)
    return roots + sorted(found)


def _poly_coeffs(f: MultiPoly):
    used = f.used_vars()
    if len(used) > 1:
        raise ValueError("rational_roots expects a univariate polynomial")
    v = used[0] if used else X
    return v, f.univariate_coeffs(v)


def _eval_dense(coeffs, z: Scalar) -> Scalar:
    acc = Scalar(0, 0, z.field)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def rational_roots(f: MultiPoly, field: FieldSpec | None = None) -> list:
    """All roots of a univariate f lying in the coefficient field K (distinct, sorted)."""
    if not f:
        raise ZeroPolynomial("roots of the zero polynomial")
    K = join_fields(f.field, field or f.field)
    _, coeffs = _poly_coeffs(f)
    coeffs = [c.in_field(K) for c in coeffs]
    if all(c.b == 0 for c in coeffs):
        h = [c.a for c in coeffs]
        rational_coeffs = True
    else:
        # norm f * conj(f) has rational coefficients
        conj = [c.conjugate() for c in coeffs]
        prod = [Scalar(0, 0, K)] * (2 * len(coeffs) - 1)
        for i, a in enumerate(coeffs):
            for j, b in enumerate(conj):
                prod[i + j] = prod[i + j] + a * b
        h = [c.a for c in prod]
        rational_coeffs = False
    found = []
    for r in _rational_roots_q(h):
        z = Scalar(r, 0, K)
        if rational_coeffs or not _eval_dense(coeffs, z):
            found.append(z)
    if not K.is_rational:
        for z in _irrational_roots_in(h, K):
            if not _eval_dense(coeffs, z) and z not in found:
                found.append(z)
    return sorted(found, key=lambda z: (z.b, z.a))


def _irrational_roots_in(h, K: FieldSpec) -> list:
    """Roots a + b*t (b != 0) in K of h in Q[z], via z = X + Y*delta with delta^2 = D."""
    D = K.discriminant  # delta = 2t - u
    n = len(h) - 1
    while n > 0 and h[n] == 0:
        n -= 1
    if n < 2:
        return []
    E = MultiPoly.zero(QQ)
    O = MultiPoly.zero(QQ)
    for k in range(n + 1):
        ck = h[k]
        if not ck:
            continue
        for j in range(k + 1):
            c = ck * comb(k, j)
            if j % 2 == 0:
                E = E + MultiPoly.monomial((k - j, j // 2, 0, 0), c * D ** (j // 2))
            else:
                O = O + MultiPoly.monomial((k - j, (j - 1) // 2, 0, 0), c * D ** ((j - 1) // 2))
    if not E or not O:
        return []
    xs = []
    if E.degree(Y) > 0 and O.degree(Y) > 0:
        R = resultant(E, O, Y)
        if R:
            xs = _rational_roots_q([c.a for c in R.univariate_coeffs(X)])
    else:
        free = O if O.degree(Y) <= 0 else E
        if not free.is_constant():
            xs = _rational_roots_q([c.a for c in free.univariate_coeffs(X)])
    out = []
    for x0 in xs:
        e0 = E.subs({X: x0})
        o0 = O.subs({X: x0})
        if not e0 and not o0:
            continue
        g = gcd(e0, o0) if (e0 and o0) else (e0 or o0)
        if g.is_constant():
            continue
        ws = _rational_roots_q([c.a for c in g.univariate_coeffs(Y)])
        for w in ws:
            if w <= 0 and D > 0 or w == 0:
                continue
            if not is_rational_square(w):
                continue
            y0 = Fraction(isqrt(w.numerator), isqrt(w.denominator))
            for sgn in (1, -1):
                # x0 + sgn*y0*(2t - u)
                b = 2 * sgn * y0
                a = x0 - sgn * y0 * K.u
                out.append(Scalar(a, b, K))
    return out


def root_of_unity_order(s: Scalar):
    """Smallest n <= 6 with s^n = 1, or None."""
    if not s:
        raise ValueError("zero is not a root of unity")
    p = Scalar(1, 0, s.field)
    for n in range(1, 7):
        p = p * s
        if p == 1:
            return n
    return None
