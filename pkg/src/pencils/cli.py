"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 mathematical precondition failure,
3 mismatch against an expectation stored in the pencil file.
"""
from __future__ import annotations

import argparse
import sys
from importlib.resources import files

from .errors import InputError, MathError, ParseError, PencilsError
from .field import QQ
from .foliation import (
    Point,
    baum_bott_index,
    index_summary,
    is_invariant,
    milnor_number,
    tangency_total,
)
from .holonomy import classify_ip, holonomy_generators, multiplicative, riccati_normal_form
from .parser import (
    emit_report,
    parse_minpoly,
    parse_pencil_file,
    parse_poly,
    parse_product_factors,
    parse_scalar,
)
from .pencil import (
    Pencil,
    compare_tangency,
    curvature,
    delta_component_invariance,
    form_preserves,
    line_at_infinity_in_delta,
    member,
    ni_set,
)
from .surfaces import (
    HopfSpec,
    TorusSpec,
    endomorphism_algebra,
    hopf_closed_form_check,
    hopf_iterate,
    hopf_section_meets,
    ip_linear_torus_membership,
)

EXAMPLES = ("P2", "P3", "P3p", "P4")

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_EXPECT = 0, 1, 2, 3


class ExpectMismatch(Exception):
    def __init__(self, report):
        super().__init__("expectation mismatch")
        self.report = report


def example_text(name: str) -> str:
    if name not in EXAMPLES:
        raise InputError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    return files("pencils.data").joinpath(f"{name}.pencil").read_text(encoding="utf-8")


def _read(path: str) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(args):
    doc = parse_pencil_file(_read(args.file))
    return doc, Pencil.from_document(doc)


def _alpha(text: str, field):
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return "infinity"
    return parse_scalar(text, field)


def _point(text: str, field) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError("--point expects 'x,y'")
    return Point(parse_scalar(parts[0], field), parse_scalar(parts[1], field))


def _tangency_comparison(doc, T):
    factors = parse_product_factors(doc.expect_tangency_text, doc.field)
    return compare_tangency(T, doc.expect_tangency, factors)


# -- subcommands -------------------------------------------------------------------

def cmd_tangency(args):
    doc, P = _load(args)
    T = P.tangency
    out = {
        "label": doc.label,
        "tangency": T,
        "total_degree": T.total_degree(),
        "pencil_degree": P.degree,
        "line_at_infinity_in_delta": line_at_infinity_in_delta(P),
    }
    if args.expect:
        if doc.expect_tangency is None:
            raise InputError("no [expect] tangency in the input")
        cmp = _tangency_comparison(doc, T)
        out["expect"] = cmp
        if not cmp.match:
            raise ExpectMismatch(out)
    return out


def cmd_flat(args):
    doc, P = _load(args)
    c = curvature(P)
    out = {
        "label": doc.label,
        "flat": c.flat,
        "curvature": c.curvature,
        "curvature_numerator": c.curvature.num,
        "theta": {"dx": c.p, "dy": c.q},
    }
    if args.expect and doc.expect_flat is not None and doc.expect_flat != c.flat:
        out["expected_flat"] = doc.expect_flat
        raise ExpectMismatch(out)
    return out


def cmd_member(args):
    doc, P = _load(args)
    m = member(P, _alpha(args.alpha, P.field))
    return m


def cmd_ni(args):
    doc, P = _load(args)
    return {"label": doc.label, "ni": ni_set(P)}


def cmd_indices(args):
    doc, P = _load(args)
    m = member(P, _alpha(args.alpha, P.field))
    F = m.foliation
    out = {"alpha": m.alpha, "form": F.form, "extracted_factor": m.factor}
    out.update(index_summary(F))
    if args.point:
        p = _point(args.point, P.field)
        mu = milnor_number(F, p)
        local = {"point": p, "milnor": mu}
        if mu:
            local["baum_bott"] = baum_bott_index(F, p)
        out["at_point"] = local
    return out


def cmd_invariant(args):
    doc, P = _load(args)
    if args.curve in doc.curves:
        f, label = doc.curves[args.curve], args.curve
    else:
        f, label = parse_poly(args.curve, P.field), None
    out = {
        "curve": f,
        "label": label,
        "invariant_omega": form_preserves(P.omega, f),
        "invariant_eta": form_preserves(P.eta, f),
    }
    out["invariant_pencil"] = out["invariant_omega"] and out["invariant_eta"]
    if args.alpha is not None:
        F = member(P, _alpha(args.alpha, P.field)).foliation
        inv = is_invariant(F, f)
        out["member"] = {"alpha": args.alpha, "invariant": inv}
        if not inv:
            out["member"]["tangency_total"] = tangency_total(F, f)
    return out


def cmd_delta_check(args):
    doc, P = _load(args)
    T = P.tangency
    out = {"label": doc.label, "tangency": T}
    if doc.curves:
        out["components"] = delta_component_invariance(P, list(doc.curves.values()))
    if doc.expect_tangency is not None:
        cmp = _tangency_comparison(doc, T)
        out["expect"] = cmp
        if not cmp.match:
            raise ExpectMismatch(out)
    return out


def cmd_riccati(args):
    doc, P = _load(args)
    R = riccati_normal_form(P)
    return {"normal_form": R, "holonomy": holonomy_generators(R)}


def _scalar_list(text: str, field):
    return [parse_scalar(s, field) for s in text.split(",") if s.strip()]


def cmd_classify_ip(args):
    if args.mu is not None:
        field = parse_minpoly(args.field) if args.field else QQ
        mus = _scalar_list(args.mu, field)
        nus = _scalar_list(args.nu, field) if args.nu else None
        if nus is not None and len(nus) != len(mus):
            raise InputError("--mu and --nu must have the same length")
        H = multiplicative(mus, nus, field)
    else:
        doc, P = _load(args)
        H = holonomy_generators(riccati_normal_form(P))
    return {"holonomy": H, "classification": classify_ip(H)}


def cmd_torus(args):
    if args.tau.strip().lower() == "generic":
        T = TorusSpec.generic()
    else:
        K = parse_minpoly(args.tau)
        T = TorusSpec.quadratic(K.u, K.v)
    alg = endomorphism_algebra(T)
    field = parse_minpoly(args.field) if args.field else alg
    alpha = parse_scalar(args.alpha, field)
    return {
        "endomorphism_algebra": alg,
        "alpha": alpha,
        "member": ip_linear_torus_membership(T, alpha),
    }


def _parse_params(text: str, field) -> HopfSpec:
    values = {}
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise InputError(f"expected key=value in --params, got {item!r}")
        k, v = (s.strip() for s in item.split("=", 1))
        values[k] = v
    unknown = set(values) - {"a", "b", "lambda", "r"}
    if unknown or not {"a", "b"} <= set(values):
        raise InputError("--params needs a, b and optionally lambda, r")
    try:
        r = int(values.get("r", "1"))
    except ValueError:
        raise InputError("r must be an integer") from None
    return HopfSpec(
        parse_scalar(values["a"], field),
        parse_scalar(values["b"], field),
        parse_scalar(values.get("lambda", "0"), field),
        r,
    )


def cmd_hopf(args):
    field = parse_minpoly(args.field) if args.field else QQ
    H = _parse_params(args.params, field)
    fx, fy = hopf_iterate(H, args.n)
    out = {
        "spec": H,
        "n": args.n,
        "iterate": [fx, fy],
        "closed_form_agrees": hopf_closed_form_check(H, args.n),
    }
    if args.alpha is not None:
        out["section_meets"] = hopf_section_meets(H, parse_scalar(args.alpha, field), args.N)
    return out


def cmd_example(args):
    text = example_text(args.name)
    if args.report:
        doc = parse_pencil_file(text)
        P = Pencil.from_document(doc)
        out = {
            "label": doc.label,
            "tangency": P.tangency,
            "flat": curvature(P).flat,
            "ni": ni_set(P),
        }
        if doc.curves:
            out["components"] = delta_component_invariance(P, list(doc.curves.values()))
        if doc.expect_tangency is not None:
            out["expect"] = _tangency_comparison(doc, P.tangency)
        return out
    return text


# -- driver ------------------------------------------------------------------------

class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1), not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="pencils", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", nargs="?", default="-", help="pencil file ('-' or omitted: stdin)")
        return p

    p = with_file("tangency", "tangency polynomial A*D - B*C")
    p.add_argument("--expect", action="store_true", help="compare with [expect] tangency")
    p.set_defaults(func=cmd_tangency)

    p = with_file("flat", "curvature and flatness")
    p.add_argument("--expect", action="store_true", help="compare with [expect] flat")
    p.set_defaults(func=cmd_flat)

    p = with_file("member", "normalized member w + alpha*eta")
    p.add_argument("--alpha", required=True, help="scalar or 'inf'")
    p.set_defaults(func=cmd_member)

    with_file("ni", "parameters with non-isolated singularities").set_defaults(func=cmd_ni)

    p = with_file("indices", "Milnor/Baum-Bott data of a member")
    p.add_argument("--alpha", required=True)
    p.add_argument("--point", help="x,y")
    p.set_defaults(func=cmd_indices)

    p = with_file("invariant", "invariance of a curve")
    p.add_argument("--curve", required=True, help="label from [curves] or a polynomial")
    p.add_argument("--alpha", help="also test the member at alpha")
    p.set_defaults(func=cmd_invariant)

    with_file("delta-check", "component invariance and expected tangency").set_defaults(func=cmd_delta_check)
    with_file("riccati", "Riccati normal form and holonomy generators").set_defaults(func=cmd_riccati)

    p = with_file("classify-ip", "classification of the first-integral parameter set")
    p.add_argument("--mu", help="comma-separated exponents (instead of a pencil file)")
    p.add_argument("--nu", help="comma-separated twists")
    p.add_argument("--field", help="minimal polynomial, e.g. 't^2+1'")
    p.set_defaults(func=cmd_classify_ip)

    p = sub.add_parser("torus", help="End(E) (x) Q membership")
    p.add_argument("--tau", required=True, help="'generic' or a minimal polynomial in t")
    p.add_argument("--alpha", required=True)
    p.add_argument("--field", help="field of alpha if different from Q(tau)")
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("hopf", help="Hopf contraction iterates")
    p.add_argument("--params", required=True, help="a=..,b=..,lambda=..,r=..")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", help="leaf parameter for the section intersections")
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--field", help="minimal polynomial for quadratic parameters")
    p.set_defaults(func=cmd_hopf)

    p = sub.add_parser("example", help="bundled example pencils")
    p.add_argument("name", choices=EXAMPLES)
    p.add_argument("--emit", action="store_true", help="print the pencil file (default)")
    p.add_argument("--report", action="store_true", help="print an analysis report instead")
    p.set_defaults(func=cmd_example)
    return ap


def _error_report(exc: PencilsError) -> dict:
    out = {"error": exc.name, "message": str(exc)}
    if isinstance(exc, ParseError):
        out["line"] = exc.line
        out["offset"] = exc.offset
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except ExpectMismatch as exc:
        stdout.write(emit_report(exc.report) + "\n")
        cmp = exc.report.get("expect")
        if cmp is not None:
            stderr.write(f"expected: {cmp.expected.to_str()}\ncomputed: {cmp.computed.to_str()}\n")
        else:
            stderr.write("expectation mismatch\n")
        return EXIT_EXPECT
    except InputError as exc:
        stdout.write(emit_report(_error_report(exc)) + "\n")
        return EXIT_INPUT
    except MathError as exc:
        stdout.write(emit_report(_error_report(exc)) + "\n")
        return EXIT_MATH
    if isinstance(result, str):
        stdout.write(result)
    else:
        stdout.write(emit_report(result) + "\n")
    return EXIT_OK


def main():
    sys.exit(run())

