"""Exact computations for pencils of foliations on the projective plane."""
from .errors import InputError, MathError, PencilsError
from .field import QQ, FieldSpec, Scalar, quadratic_field
from .forms import OneForm
from .parser import (
    parse_minpoly,
    parse_one_form,
    parse_pencil_file,
    parse_poly,
    parse_rational_function,
    parse_scalar,
)
from .pencil import Pencil, curvature, is_flat, member, ni_set, tangency_polynomial
from .poly import MultiPoly
from .ratfunc import RationalFunction

__version__ = "0.1.0"

__all__ = [
    "FieldSpec",
    "InputError",
    "MathError",
    "MultiPoly",
    "OneForm",
    "Pencil",
    "PencilsError",
    "QQ",
    "RationalFunction",
    "Scalar",
    "curvature",
    "is_flat",
    "member",
    "ni_set",
    "parse_minpoly",
    "parse_one_form",
    "parse_pencil_file",
    "parse_poly",
    "parse_rational_function",
    "parse_scalar",
    "quadratic_field",
    "tangency_polynomial",
]
