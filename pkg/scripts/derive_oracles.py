#!/usr/bin/env python3
"""Recompute the frozen reference values in tests/data/derived_oracles.json with sympy.

sympy is used only here and in the tests, never by the package.  Run:

    python3 scripts/derive_oracles.py            # rewrite the JSON file
    python3 scripts/derive_oracles.py --check    # compare against the frozen file
"""
import argparse
import json
from pathlib import Path

import sympy as sp
from sympy.polys.subresultants_qq_zz import sylvester

x, y, u, v, s, w = sp.symbols("x y u v s w")
OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "derived_oracles.json"

PENCILS = {
    "P2": ((-(6 * y - 12 * x * y), 4 * x - 9 * x**2 + y**2), (-3 * (x**2 - y**2), 2 * y - 4 * x * y)),
    "P3": ((-2 * y * (y**2 - 1), -4 * x + x**3 + 3 * x * y**2), (-2 * x * (y**2 - 1), x**2 * y - y**3)),
    "P3p": (
        (-y * (-2 - 3 * x * y + x**3), -x + 2 * y**2 - 4 * x**2 * y + x**4),
        (-(3 * x * y - x**3 + 2 * y**3), 2 * y - x**2 + x * y**2),
    ),
    "P4": ((-(y**3 - 1) * y, (x**3 - 1) * x), (-(y**3 - 1) * x**2, (x**3 - 1) * y**2)),
}


def text(e) -> str:
    return str(sp.expand(e)).replace("**", "^")


def factor_texts(e) -> list:
    _, factors = sp.factor_list(sp.expand(e))
    return sorted(text(f) for f, _ in factors)


def curvature(omega, eta):
    (A, B), (C, D) = omega, eta
    p, q = sp.symbols("p q")
    sol = sp.solve(
        [p * B - q * A - (sp.diff(B, x) - sp.diff(A, y)), p * D - q * C - (sp.diff(D, x) - sp.diff(C, y))],
        [p, q],
        dict=True,
    )[0]
    return sp.factor(sp.diff(sol[q], x) - sp.diff(sol[p], y))


def staircase(gens, gens_vars, order="grevlex"):
    """Number of standard monomials of the ideal (None if infinite)."""
    G = sp.groebner(gens, *gens_vars, order=order)
    leads = [sp.Poly(g, *gens_vars).monoms(order=order)[0] for g in G.exprs]
    if any(all(e == 0 for e in m) for m in leads):
        return 0
    bounds = []
    for i in range(len(gens_vars)):
        pure = [m[i] for m in leads if all(m[j] == 0 for j in range(len(m)) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    import itertools

    count = 0
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(all(e[i] >= m[i] for i in range(len(m))) for m in leads):
            count += 1
    return count


def local_origin_dimension(f, g):
    """dim of the local ring at 0 via (f, g) + m^N stabilized."""
    prev = None
    n = 1
    while True:
        extra = [x**i * y**(n - i) for i in range(n + 1)]
        d = staircase([f, g] + extra, (x, y))
        if d == prev:
            return d
        prev, n = d, n + 1


def milnor_total(A, B):
    """Darboux-style total via three charts with sympy Groebner bases."""
    P, Q = B, -A
    m = max(sp.Poly(A, x, y).total_degree(), sp.Poly(B, x, y).total_degree())
    top = sp.expand(y * sp.Poly(P, x, y).as_expr() - x * sp.Poly(Q, x, y).as_expr())
    hom = lambda e, k: sum(  # noqa: E731
        c * x**i * y**j for (i, j), c in sp.Poly(e, x, y).terms() if i + j == k
    )
    d = m - 1 if sp.expand(y * hom(P, m) - x * hom(Q, m)) == 0 else m
    del top
    affine = staircase([A, B], (x, y))
    # chart 2: x = 1/u, y = v/u
    A2 = sp.expand(-(u ** (d + 2)) * (A + v * B).subs({x: 1 / u, y: v / u}, simultaneous=True) / u**2 * u)
    A2 = sp.simplify(-u**d * (A + v * B).subs({x: 1 / u, y: v / u}, simultaneous=True))
    B2 = sp.simplify(u ** (d + 1) * B.subs({x: 1 / u, y: v / u}, simultaneous=True))
    A2, B2 = sp.expand(A2), sp.expand(B2)
    prev = None
    n = 1
    while True:
        G = sp.groebner([A2, B2, u**n], u, v, order="grevlex")
        dd = staircase(list(G.exprs), (u, v))
        if dd == prev:
            break
        prev, n = dd, n + 1
    at_inf = prev
    A3 = sp.expand(w ** (d + 1) * A.subs({x: s / w, y: 1 / w}, simultaneous=True))
    B3 = sp.expand(-(w**d) * (s * A + B).subs({x: s / w, y: 1 / w}, simultaneous=True))
    A3s, B3s = A3.subs({s: x, w: y}), B3.subs({s: x, w: y})
    top_pt = local_origin_dimension(sp.expand(A3s), sp.expand(B3s))
    return d, affine + at_inf + top_pt


def derive() -> dict:
    data = {"tangency": {}, "tangency_factors": {}, "curvature": {}}
    for name, (om, et) in PENCILS.items():
        (A, B), (C, D) = om, et
        T = sp.expand(A * D - B * C)
        data["tangency"][name] = text(T)
        data["tangency_factors"][name] = factor_texts(T)
        data["curvature"][name] = text(sp.numer(sp.together(curvature(om, et))))
    fixture = curvature((y, sp.Integer(1)), (x, sp.Integer(1)))
    data["curvature"]["fixture"] = str(sp.factor(fixture)).replace("**", "^")
    data["curvature"]["fixture_numerator"] = text(sp.numer(sp.together(fixture)))
    data["resultant"] = {
        "Res_y(y^2-x, y-x)": text(sylvester(y**2 - x, y - x, y).det()),
        "Res_y(y-1, y+1)": text(sylvester(y - 1, y + 1, y).det()),
    }
    data["gcd"] = {"gcd(x^4-x, x^3-1)": text(sp.gcd(x**4 - x, x**3 - 1))}
    data["dense_product"] = text((4 * x - 9 * x**2 + y**2) * (2 * y - 4 * x * y))
    data["dense_P4_product"] = text((x**3 - 1) * (y**3 - 1) * (x**3 - y**3))
    data["local_dimension"] = {
        "I(0; y, y-x^2)": local_origin_dimension(y, y - x**2),
        "I(0; y-x^2, x)": local_origin_dimension(y - x**2, x),
        "I(0; y-x^3, x^2)": local_origin_dimension(y - x**3, x**2),
        "I(0; y, x^2)": local_origin_dimension(y, x**2),
    }
    zeta = sp.Rational(-1, 2) + sp.sqrt(3) * sp.I / 2
    data["roots_x3m1_Qzeta3"] = sorted(str(sp.nsimplify(r)) for r in sp.roots(x**3 - 1, x))
    data["zeta_check"] = bool(sp.simplify(zeta**3 - 1) == 0)
    totals = {}
    for name, (A, B) in {
        "radial_d0": (-y, x),
        "diag_d1": (-2 * y, x),
        "P2_alpha0": PENCILS["P2"][0],
        "P4_alpha0": PENCILS["P4"][0],
    }.items():
        d, m = milnor_total(sp.expand(A), sp.expand(B))
        totals[name] = {"degree": d, "milnor_total": m}
    data["milnor_totals"] = totals
    return data


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    data = derive()
    if args.check:
        frozen = json.loads(OUT.read_text())
        ok = frozen == data
        print("oracles match frozen file" if ok else "oracle drift detected")
        raise SystemExit(0 if ok else 1)
    OUT.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
