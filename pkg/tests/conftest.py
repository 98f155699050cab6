"""Shared fixtures and hypothesis strategies."""
import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pencils.field import QQ, Scalar, quadratic_field
from pencils.forms import OneForm
from pencils.poly import MultiPoly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"
QI = quadratic_field(0, -1)  # t^2 = -1
QZETA3 = quadratic_field(-1, -1)  # t^2 + t + 1 = 0


@pytest.fixture(scope="session")
def oracles():
    return json.loads((DATA / "derived_oracles.json").read_text())


def sympy_text(s: str) -> str:
    """sympy's printing uses ** and implicit spacing; the package parser wants ^."""
    return s.replace("**", "^")


small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(-4, 4)


@st.composite
def polys(draw, max_deg=3, max_terms=5, field=QQ, allow_zero=True, nvars=2):
    n = draw(st.integers(0 if allow_zero else 1, max_terms))
    terms = {}
    for _ in range(n):
        e = [draw(st.integers(0, max_deg)) for _ in range(nvars)]
        while sum(e) > max_deg:
            k = e.index(max(e))
            e[k] -= 1
        e = tuple(e) + (0,) * (4 - nvars)
        a = draw(small_fracs)
        b = draw(small_fracs) if not field.is_rational else Fraction(0)
        c = Scalar(a, b, field)
        terms[e] = terms.get(e, Scalar(0, 0, field)) + c
    p = MultiPoly({e: c for e, c in terms.items() if c}, field)
    if not allow_zero and p.is_zero():
        p = MultiPoly.const(1, field)
    return p


@st.composite
def one_forms(draw, max_deg=2):
    A = draw(polys(max_deg=max_deg, max_terms=4))
    B = draw(polys(max_deg=max_deg, max_terms=4))
    if A.is_zero() and B.is_zero():
        B = MultiPoly.const(1)
    return OneForm(A, B)


@st.composite
def scalars(draw, field=QQ):
    b = draw(small_fracs) if not field.is_rational else Fraction(0)
    return Scalar(draw(small_fracs), b, field)


# -- acceptance summary --------------------------------------------------------------

ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
