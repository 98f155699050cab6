"""Command-line front end: exit codes, reports and bundled examples."""
import io
import json
import subprocess
import sys

import pytest

from pencils.cli import EXAMPLES, example_text, run
from pencils.parser import parse_poly

XY = """[field]
kind = Q
[pencil]
omega = "x dy"
eta = "y dx"
[curves]
axis = "x"
"""

NONFLAT = """[field]
kind = Q
[pencil]
omega = "y dx + dy"
eta = "x dx + dy"
[expect]
flat = true
"""


def call(argv, stdin_text=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin_text is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin_text)
        try:
            code = run(argv, out, err)
        finally:
            sys.stdin = old
    else:
        code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def xy_file(tmp_path):
    p = tmp_path / "xy.pencil"
    p.write_text(XY)
    return str(p)


def test_example_p4_piped_into_tangency():
    code, text, _ = call(["example", "P4"])
    assert code == 0
    code, out, _ = call(["tangency"], stdin_text=text)
    assert code == 0
    rep = json.loads(out)
    assert parse_poly(rep["tangency"]) == parse_poly("(x^3-1)*(y^3-1)*(x^3-y^3)")
    assert rep["total_degree"] == 9 and rep["pencil_degree"] == 4


def test_flat_on_nonflat_fixture(tmp_path):
    f = tmp_path / "nf.pencil"
    f.write_text(NONFLAT)
    code, out, _ = call(["flat", str(f)])
    rep = json.loads(out)
    assert code == 0 and rep["flat"] is False
    assert parse_poly(rep["curvature_numerator"]) == parse_poly("x + 1")
    code, out, _ = call(["flat", "--expect", str(f)])
    assert code == 3


def test_p2_delta_check_mismatch_exit_3():
    _, text, _ = call(["example", "P2", "--emit"])
    code, out, err = call(["delta-check"], stdin_text=text)
    assert code == 3
    rep = json.loads(out)
    assert rep["expect"]["match"] is False
    assert "expected: " in err and "computed: " in err and "x^2*y^3" in err
    assert rep["components"]["delta_invariant"] is True


def test_exit_codes(tmp_path, xy_file):
    assert call(["tangency", str(tmp_path / "missing.pencil")])[0] == 1
    bad = tmp_path / "bad.pencil"
    bad.write_text(XY.replace('omega = "x dy"', 'omega = "x dy +"'))
    code, out, _ = call(["tangency", str(bad)])
    rep = json.loads(out)
    assert code == 1 and rep["error"] == "ParseError" and rep["line"] == 4
    code, out, _ = call(["riccati", str(tmp_path / "nf.pencil")])
    assert code == 1
    nf = tmp_path / "nf2.pencil"
    nf.write_text(NONFLAT.replace('eta = "x dx + dy"', 'eta = "x dx"'))
    code, out, _ = call(["riccati", str(nf)])
    assert code == 2 and json.loads(out)["error"] == "NotFlat"
    with pytest.raises(SystemExit) as exc:
        call(["no-such-command"])
    assert exc.value.code == 1


def test_member_ni_indices_invariant(xy_file):
    code, out, _ = call(["member", xy_file, "--alpha", "0"])
    assert code == 0 and json.loads(out)["extracted_factor"] == "x"
    code, out, _ = call(["member", xy_file, "--alpha", "inf"])
    assert json.loads(out)["extracted_factor"] == "y"
    code, out, _ = call(["ni", xy_file])
    alphas = [e["alpha"] for e in json.loads(out)["ni"]["entries"] if e["where"] == "affine"]
    assert alphas == ["0", "infinity"]
    code, out, _ = call(["indices", xy_file, "--alpha", "2", "--point", "0,0"])
    rep = json.loads(out)
    assert rep["milnor_total"] == 3 and rep["at_point"]["milnor"] == 1
    assert rep["at_point"]["baum_bott"] == "-1/2"
    code, out, _ = call(["invariant", xy_file, "--curve", "axis"])
    assert json.loads(out)["invariant_pencil"] is True
    code, out, _ = call(["invariant", xy_file, "--curve", "y - x^2", "--alpha", "2"])
    assert json.loads(out)["member"]["tangency_total"] == 4


def test_riccati_and_classify(xy_file):
    code, out, _ = call(["riccati", xy_file])
    rep = json.loads(out)
    assert code == 0 and rep["normal_form"]["kind"] == "multiplicative"
    assert rep["holonomy"]["generators"] == [{"mu": "-1", "nu": "0"}]
    code, out, _ = call(["classify-ip", xy_file])
    assert json.loads(out)["classification"]["verdict"] == "QCoset"
    code, out, _ = call(["classify-ip", "--mu", "1,t", "--field", "t^2-2"])
    assert json.loads(out)["classification"]["verdict"] == "Finite"


def test_torus_and_hopf():
    code, out, _ = call(["torus", "--tau", "t^2+1", "--alpha", "2+3*t"])
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = call(["torus", "--tau", "generic", "--alpha", "5/3"])
    assert json.loads(out)["member"] is True
    assert call(["torus", "--tau", "t^2-2", "--alpha", "1"])[0] == 2
    code, out, _ = call(["hopf", "--params", "a=1/2,b=1/2,lambda=1", "--n", "3", "--alpha", "1", "--N", "25"])
    rep = json.loads(out)
    assert rep["iterate"] == ["1/8*x + 3/4*y", "1/8*y"] and rep["closed_form_agrees"]
    assert rep["section_meets"]["pairwise_distinct"] and len(rep["section_meets"]["solutions"]) == 25
    assert call(["hopf", "--params", "a=1/2,b=1/3,lambda=1", "--n", "1"])[0] == 2
    assert call(["hopf", "--params", "a=1/2", "--n", "1"])[0] == 1


@pytest.mark.parametrize("name", EXAMPLES)
def test_example_reports_are_stable(name):
    a = call(["example", name, "--report"])
    b = call(["example", name, "--report"])
    assert a == b and a[0] == 0
    rep = json.loads(a[1])
    assert rep["flat"] is True and rep["components"]["delta_invariant"] is True
    assert call(["example", name, "--emit"])[1] == example_text(name)


def test_module_entry_point_pipe():
    emit = subprocess.run([sys.executable, "-m", "pencils", "example", "P4"], capture_output=True, text=True)
    res = subprocess.run(
        [sys.executable, "-m", "pencils", "tangency"], input=emit.stdout, capture_output=True, text=True
    )
    assert res.returncode == 0
    assert "x^6*y^3" in json.loads(res.stdout)["tangency"]
