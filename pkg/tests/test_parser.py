"""Expression parser, pencil documents and reports."""
import json

import pytest
from hypothesis import given, settings

from conftest import QI, one_forms, polys
from pencils.cli import EXAMPLES, example_text
from pencils.errors import ParseError, UndeclaredField
from pencils.field import Scalar
from pencils.forms import OneForm
from pencils.parser import (
    emit_report,
    parse_minpoly,
    parse_one_form,
    parse_pencil_file,
    parse_poly,
    parse_product_factors,
    parse_rational_function,
    parse_scalar,
    print_canonical,
)
from pencils.poly import X, Y, MultiPoly

P = parse_poly


def test_parse_poly_examples(oracles):
    p = P("4*x - 9*x^2 + y^2")
    assert p.terms[(1, 0, 0, 0)] == 4 and p.terms[(2, 0, 0, 0)] == -9 and p.terms[(0, 2, 0, 0)] == 1
    assert P("0").is_zero()
    big = P("(x^3-1)*(y^3-1)*(x^3-y^3)")
    assert big.total_degree() == 9 and big == P(oracles["dense_P4_product"])


def test_parse_one_form_examples():
    w = parse_one_form("(4*x-9*x^2+y^2) dy - (6*y-12*x*y) dx")
    assert w == OneForm(P("-(6*y-12*x*y)"), P("4*x-9*x^2+y^2"))
    assert parse_one_form("dx") == OneForm(P("1"), P("0"))
    xy = parse_one_form("y dx + x dy")
    assert xy == OneForm(P("y"), P("x")) and xy.d().is_zero()


def test_quadratic_coefficients_and_undeclared_generator():
    f = parse_minpoly("t^2 + 1")
    assert f == QI
    p = P("(1+2*t)*x - t", f)
    assert p.terms[(1, 0, 0, 0)] == Scalar(1, 2, QI)
    with pytest.raises(UndeclaredField):
        P("t*x")


def test_parse_errors_are_located():
    with pytest.raises(ParseError) as exc:
        P("x + * y")
    assert exc.value.offset == 4
    with pytest.raises(ParseError):
        P("x/y")  # division only by constants in polynomials
    assert parse_rational_function("x/y").den == P("y")
    with pytest.raises(ParseError):
        parse_scalar("x")


def test_product_factors():
    fs = parse_product_factors("(x^3-1)*(y^3-1)*(x^3-y^3)")
    assert fs == [P("x^3-1"), P("y^3-1"), P("x^3-y^3")]
    assert parse_product_factors("2*(y^2-1)") == [P("y^2-1")]
    assert parse_product_factors("x^2 - y") == [P("x^2 - y")]


@settings(max_examples=120)
@given(polys(max_deg=4, max_terms=6))
def test_round_trip_polys(p):
    text = print_canonical(p)
    q = P(text)
    assert q == p and print_canonical(q) == text


@settings(max_examples=120)
@given(polys(max_deg=3, max_terms=5, field=QI))
def test_round_trip_quadratic(p):
    assert P(print_canonical(p), QI) == p


@given(one_forms())
def test_round_trip_forms(w):
    assert parse_one_form(print_canonical(w)) == w


def test_bundled_documents_parse_and_preserve_metadata():
    for name in EXAMPLES:
        doc = parse_pencil_file(example_text(name))
        assert doc.label == name and doc.expect_flat is True
        assert doc.expect_tangency_text is not None and doc.curves
        again = parse_pencil_file(doc.to_text())
        assert again.omega == doc.omega and again.eta == doc.eta
        assert again.expect_tangency_text == doc.expect_tangency_text
    p2 = parse_pencil_file(example_text("P2"))
    # the stated string is kept verbatim, including its -6*x^2*y^3 term
    assert "-6*x^2*y^3" in p2.expect_tangency_text


DOC = """[field]
kind = Q(t) ; minpoly = "t^2 + 1"

[pencil]
omega = "x dy"
eta = "t*y dx"

[curves]
axis = "x"
"""


def test_quadratic_document():
    doc = parse_pencil_file(DOC)
    assert doc.field == QI and doc.eta.A == P("t*y", QI)


@pytest.mark.parametrize("key", ["kind", "omega", "eta", "[field]", "[pencil]"])
def test_deleting_required_key_gives_located_error(key):
    lines = DOC.splitlines()
    if key.startswith("["):
        # drop the whole section
        start = lines.index(key)
        end = next((i for i in range(start + 1, len(lines)) if lines[i].startswith("[")), len(lines))
        lines = lines[:start] + lines[end:]
    else:
        lines = [ln for ln in lines if not ln.startswith(key)]
    with pytest.raises(ParseError) as exc:
        parse_pencil_file("\n".join(lines))
    assert exc.value.line is not None


def test_every_single_line_deletion_of_required_entries_is_rejected():
    base = example_text("P4")
    lines = base.splitlines()
    required = [i for i, ln in enumerate(lines) if ln.split("=")[0].strip() in ("kind", "omega", "eta")]
    assert len(required) == 3
    for i in required:
        with pytest.raises(ParseError) as exc:
            parse_pencil_file("\n".join(lines[:i] + lines[i + 1:]))
        assert exc.value.line is not None


def test_duplicate_and_unknown_keys():
    with pytest.raises(ParseError) as exc:
        parse_pencil_file(DOC + 'axis = "y"\n')
    assert exc.value.line == 10
    with pytest.raises(ParseError):
        parse_pencil_file(DOC.replace("[curves]", "[curvez]"))
    with pytest.raises(UndeclaredField):
        parse_pencil_file(DOC.replace('kind = Q(t) ; minpoly = "t^2 + 1"', "kind = Q"))


def test_emit_report_is_stable_json():
    rep = {"b": P("x^2 - y"), "a": [Scalar(1, 2, QI), None, True], "inf": float("inf")}
    text = emit_report(rep)
    assert json.loads(text) == {"a": ["1+2*t", None, True], "b": "x^2 - y", "inf": "infinite"}
    assert text == emit_report(dict(reversed(list(rep.items()))))


def test_canonical_order_is_deterministic():
    assert print_canonical(P("y + x^2 + 1 + x*y")) == "x^2 + x*y + y + 1"
    assert MultiPoly.var(X) * MultiPoly.var(Y) == P("y*x")
