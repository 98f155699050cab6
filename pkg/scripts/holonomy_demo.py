#!/usr/bin/env python3
"""Walk through the Riccati normal form and I_p classification for a few pencils."""
from fractions import Fraction

from pencils.field import QQ, Scalar, quadratic_field
from pencils.holonomy import (
    classify_ip,
    group_is_finite,
    holonomy_generators,
    multiplicative,
    riccati_normal_form,
)
from pencils.parser import emit_report, parse_one_form
from pencils.pencil import Pencil

QI = quadratic_field(0, -1)

PENCILS = [
    ("x dy + alpha*y dx", "x dy", "y dx", QQ),
    ("two poles", "x*(x-1) dy", "y*(3*x-1) dx", QQ),
    ("twisted", "x dy - 1/2*y dx", "y dx", QQ),
    ("affine", "x dy", "3 dx", QQ),
    ("split over Q(i)", "x dy", "(y^2+1) dx", QI),
]


def main():
    for title, w, e, field in PENCILS:
        P = Pencil(parse_one_form(w, field), parse_one_form(e, field))
        R = riccati_normal_form(P)
        H = holonomy_generators(R)
        print(f"== {title}: w = {w}, eta = {e}")
        print(emit_report({"normal_form": R, "holonomy": H, "classification": classify_ip(H)}))
        for alpha in (Fraction(3, 7), 2):
            cert = group_is_finite(H, Scalar.coerce(alpha, field))
            print(f"   alpha = {alpha}: finite = {cert.finite}, order = {cert.order}")
    K = quadratic_field(0, 2)
    H = multiplicative([1, Scalar.gen(K)])
    print("== mu = (1, sqrt 2):", classify_ip(H).verdict)


if __name__ == "__main__":
    main()
