"""Text grammar for scalars, polynomials, 1-forms and pencil files.

Expressions use explicit `*`, `^` with nonnegative integer literals, integer
and `a/b` rational constants, the variables x, y (plus alpha and s), and the
field generator `t`.  A pencil file is a line-oriented key/value document::

    [field]
    kind = Q(t) ; minpoly = "t^2 + 1"
    [pencil]
    label = "example"
    omega = "(4*x - 9*x^2 + y^2) dy - (6*y - 12*x*y) dx"
    eta = "(2*y - 4*x*y) dy - 3*(x^2 - y^2) dx"
    first_integral = "x/y"
    [curves]
    L = "x - 1"
    [expect]
    tangency = "..." ; flat = true
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import FieldMismatch, InvalidSpec, ParseError, UndeclaredField
from .field import QQ, FieldSpec, Scalar, quadratic_field
from .forms import OneForm
from .poly import MultiPoly, X, var_index
from .ratfunc import RationalFunction

MAX_EXPONENT = 4096

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_VARIABLE_NAMES = {"x": "x", "y": "y", "alpha": "alpha", "s": "s"}


class _Tokens:
    def __init__(self, text: str):
        self.items = []  # (kind, value, offset)
        pos = 0
        n = len(text)
        while pos < n:
            m = _TOKEN.match(text, pos)
            if m.group(0).strip() == "":
                break
            if m.group(1) is not None:
                self.items.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.items.append(("id", m.group(2), m.start(2)))
            else:
                ch = m.group(3)
                if ch not in "+-*/^()":
                    raise ParseError(f"unexpected character {ch!r}", _byte_offset(text, m.start(3)))
                self.items.append(("op", ch, m.start(3)))
            pos = m.end()
        self.items.append(("end", None, len(text)))
        self.i = 0
        self.text = text

    def peek(self, k: int = 0):
        return self.items[min(self.i + k, len(self.items) - 1)]

    def next(self):
        tok = self.items[self.i]
        self.i += 1
        return tok

    def offset(self, tok) -> int:
        return _byte_offset(self.text, tok[2])


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


class _Parser:
    """Recursive descent over (num, den) pairs; reduction happens once at the end."""

    def __init__(self, text, field, allow_division, form_mode=False, names=None):
        self.tokens = _Tokens(text)
        self.field = field
        self.allow_division = allow_division
        self.form_mode = form_mode
        self.names = names

    def error(self, message, tok=None):
        tok = tok or self.tokens.peek()
        raise ParseError(message, self.tokens.offset(tok))

    def is_diff(self, tok) -> bool:
        return self.form_mode and tok[0] == "id" and tok[1] in ("dx", "dy")

    # expr := term (('+'|'-') term)*
    def expr(self):
        value = self.term()
        while self.tokens.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.tokens.next()[1]
            rhs = self.term()
            value = self.combine(value, rhs, op)
        return value

    def combine(self, a, b, op):
        (n1, d1), (n2, d2) = a, b
        if d1 == d2:
            return (n1 + n2 if op == "+" else n1 - n2), d1
        n = n1 * d2 + n2 * d1 if op == "+" else n1 * d2 - n2 * d1
        return n, d1 * d2

    # term := unary (('*'|'/') unary)*
    def term(self):
        value = self.unary()
        while True:
            tok = self.tokens.peek()
            if tok[0] != "op" or tok[1] not in "*/":
                return value
            if self.is_diff(self.tokens.peek(1)):
                return value
            self.tokens.next()
            rhs = self.unary()
            if tok[1] == "*":
                value = (value[0] * rhs[0], value[1] * rhs[1])
            else:
                if not rhs[0]:
                    self.error("division by zero", tok)
                if not self.allow_division and not rhs[0].is_constant():
                    self.error("division by a non-constant polynomial", tok)
                value = (value[0] * rhs[1], value[1] * rhs[0])

    def unary(self):
        tok = self.tokens.peek()
        if tok[:2] == ("op", "-"):
            self.tokens.next()
            n, d = self.unary()
            return -n, d
        if tok[:2] == ("op", "+"):
            self.tokens.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tokens.peek()[:2] == ("op", "^"):
            self.tokens.next()
            tok = self.tokens.next()
            if tok[0] != "num":
                self.error("exponent must be a nonnegative integer literal", tok)
            k = int(tok[1])
            if k > MAX_EXPONENT:
                self.error(f"exponent {k} exceeds {MAX_EXPONENT}", tok)
            base = (base[0] ** k, base[1] ** k)
        return base

    def atom(self):
        tok = self.tokens.next()
        one = MultiPoly.const(1, self.field)
        kind, value = tok[0], tok[1]
        if kind == "num":
            return MultiPoly.const(int(value), self.field), one
        if kind == "id":
            if self.names is not None and value in self.names:
                return MultiPoly.var(self.names[value], self.field), one
            if value in _VARIABLE_NAMES:
                return MultiPoly.var(_VARIABLE_NAMES[value], self.field), one
            if value == "t":
                if self.field.is_rational:
                    raise UndeclaredField(
                        f"generator t used but the field is Q (offset {self.tokens.offset(tok)})"
                    )
                return MultiPoly.const(Scalar.gen(self.field), self.field), one
            if self.is_diff(tok):
                self.error(f"{value} must follow a coefficient", tok)
            self.error(f"unknown identifier {value!r}", tok)
        if (kind, value) == ("op", "("):
            inner = self.expr()
            close = self.tokens.next()
            if close[:2] != ("op", ")"):
                self.error("expected ')'", close)
            return inner
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected token {value!r}", tok)

    def finish(self):
        tok = self.tokens.peek()
        if tok[0] != "end":
            self.error(f"unexpected trailing input {tok[1]!r}", tok)

    # form := ['+'|'-'] fterm (('+'|'-') fterm)*
    def one_form(self) -> OneForm:
        zero = MultiPoly.zero(self.field)
        coeffs = {"dx": [zero, MultiPoly.const(1, self.field)], "dy": [zero, MultiPoly.const(1, self.field)]}
        seen = False
        sign = 1
        first = True
        while True:
            tok = self.tokens.peek()
            if tok[:2] in (("op", "+"), ("op", "-")):
                self.tokens.next()
                sign = -1 if tok[1] == "-" else 1
            elif not first:
                break
            num, den, which = self.form_term()
            if sign < 0:
                num = -num
            acc = coeffs[which]
            if acc[1] == den:
                acc[0] = acc[0] + num
            else:
                acc[0], acc[1] = acc[0] * den + num * acc[1], acc[1] * den
            seen = True
            first = False
            sign = 1
            if self.tokens.peek()[0] == "end":
                break
        self.finish()
        if not seen:
            self.error("a 1-form needs a dx or dy term")
        A = _to_poly(*coeffs["dx"])
        B = _to_poly(*coeffs["dy"])
        return OneForm(A, B)

    def form_term(self):
        tok = self.tokens.peek()
        one = MultiPoly.const(1, self.field)
        if self.is_diff(tok):
            self.tokens.next()
            return one, one, tok[1]
        num, den = self.term()
        tok = self.tokens.peek()
        if tok[:2] == ("op", "*") and self.is_diff(self.tokens.peek(1)):
            self.tokens.next()
            tok = self.tokens.peek()
        if not self.is_diff(tok):
            self.error("expected dx or dy", tok)
        self.tokens.next()
        return num, den, tok[1]


def _to_poly(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    if not den.is_constant():
        raise ParseError("coefficient is not a polynomial")
    return num.scale(den.constant_term().inverse())


def parse_poly(text: str, field: FieldSpec = QQ) -> MultiPoly:
    """Parse a polynomial; division is allowed only by nonzero constants."""
    p = _Parser(text, field, allow_division=False)
    num, den = p.expr()
    p.finish()
    return _to_poly(num, den)


def parse_scalar(text: str, field: FieldSpec = QQ) -> Scalar:
    poly = parse_poly(text, field)
    if not poly.is_constant():
        raise ParseError(f"{text!r} is not a constant")
    return poly.constant_term()


def parse_rational_function(text: str, field: FieldSpec = QQ) -> RationalFunction:
    p = _Parser(text, field, allow_division=True)
    num, den = p.expr()
    p.finish()
    return RationalFunction(num, den)


def parse_one_form(text: str, field: FieldSpec = QQ) -> OneForm:
    """Parse `<expr> dx + <expr> dy` (either term optional, signs allowed)."""
    return _Parser(text, field, allow_division=False, form_mode=True).one_form()


def parse_minpoly(text: str) -> FieldSpec:
    """Field from a monic quadratic `t^2 - u*t - v`."""
    poly = _Parser(text, QQ, allow_division=False, names={"t": "x"})
    num, den = poly.expr()
    poly.finish()
    p = _to_poly(num, den)
    if p.used_vars() not in ((X,), ()) or p.degree(X) != 2:
        raise ParseError(f"minimal polynomial {text!r} must be quadratic in t")
    c = p.univariate_coeffs(X)
    lead = c[2]
    u = -(c[1] / lead)
    v = -(c[0] / lead)
    return quadratic_field(u.a, v.a)


# -- canonical printing ----------------------------------------------------------

def print_canonical(value) -> str:
    if isinstance(value, (MultiPoly, RationalFunction, OneForm)):
        return value.to_str()
    if isinstance(value, Scalar):
        return value.to_str()
    if isinstance(value, FieldSpec):
        return "Q" if value.is_rational else value.minpoly_text()
    if isinstance(value, (int, Fraction)):
        return str(value)
    raise TypeError(f"no canonical form for {type(value).__name__}")


# -- pencil documents ------------------------------------------------------------

SECTIONS = {
    "field": {"kind", "minpoly"},
    "pencil": {"omega", "eta", "label", "first_integral"},
    "curves": None,  # any label
    "expect": {"tangency", "flat"},
}
REQUIRED = {"field": ("kind",), "pencil": ("omega", "eta")}


@dataclass
class PencilDocument:
    field: FieldSpec
    omega: OneForm
    eta: OneForm
    omega_text: str
    eta_text: str
    label: str | None = None
    curves: dict = dc_field(default_factory=dict)
    curve_texts: dict = dc_field(default_factory=dict)
    first_integral: RationalFunction | None = None
    first_integral_text: str | None = None
    expect_tangency: MultiPoly | None = None
    expect_tangency_text: str | None = None
    expect_flat: bool | None = None

    def to_text(self) -> str:
        lines = ["[field]"]
        if self.field.is_rational:
            lines.append("kind = Q")
        else:
            lines.append(f'kind = Q(t) ; minpoly = "{self.field.minpoly_text()}"')
        lines.append("")
        lines.append("[pencil]")
        if self.label is not None:
            lines.append(f'label = "{self.label}"')
        lines.append(f'omega = "{self.omega_text}"')
        lines.append(f'eta = "{self.eta_text}"')
        if self.first_integral_text is not None:
            lines.append(f'first_integral = "{self.first_integral_text}"')
        if self.curve_texts:
            lines.append("")
            lines.append("[curves]")
            for name, text in self.curve_texts.items():
                lines.append(f'{name} = "{text}"')
        if self.expect_tangency_text is not None or self.expect_flat is not None:
            lines.append("")
            lines.append("[expect]")
            if self.expect_tangency_text is not None:
                lines.append(f'tangency = "{self.expect_tangency_text}"')
            if self.expect_flat is not None:
                lines.append(f"flat = {'true' if self.expect_flat else 'false'}")
        return "\n".join(lines) + "\n"


def _split_entries(line: str, lineno: int):
    """Split `k = v ; k = "v"` into (key, raw value, quoted) triples."""
    entries = []
    buf = []
    in_quote = False
    for ch in line:
        if ch == '"':
            in_quote = not in_quote
        if ch == ";" and not in_quote:
            entries.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    if in_quote:
        raise ParseError("unterminated string", line=lineno)
    entries.append("".join(buf))
    out = []
    for entry in entries:
        if not entry.strip():
            continue
        if "=" not in entry:
            raise ParseError(f"expected key = value, got {entry.strip()!r}", line=lineno)
        key, _, value = entry.partition("=")
        key, value = key.strip(), value.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", key):
            raise ParseError(f"invalid key {key!r}", line=lineno)
        quoted = len(value) >= 2 and value[0] == '"' and value[-1] == '"'
        if quoted:
            value = value[1:-1]
        out.append((key, value, quoted))
    return out


def _strip_comment(line: str) -> str:
    in_quote = False
    for i, ch in enumerate(line):
        if ch == '"':
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return line[:i]
    return line


def parse_pencil_file(text: str) -> PencilDocument:
    sections: dict = {}
    header_line: dict = {}
    key_line: dict = {}
    current = None
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        m = re.fullmatch(r"\[\s*([A-Za-z]+)\s*\]", line)
        if m:
            current = m.group(1).lower()
            if current not in SECTIONS:
                raise ParseError(f"unknown section [{current}]", line=lineno)
            if current in sections:
                raise ParseError(f"duplicate section [{current}]", line=lineno)
            sections[current] = {}
            header_line[current] = lineno
            continue
        if current is None:
            raise ParseError("entry outside of any section", line=lineno)
        for key, value, quoted in _split_entries(line, lineno):
            allowed = SECTIONS[current]
            if allowed is not None and key not in allowed:
                raise ParseError(f"unknown key {key!r} in [{current}]", line=lineno)
            if key in sections[current]:
                raise ParseError(f"duplicate key {key!r} in [{current}]", line=lineno)
            sections[current][key] = value
            key_line[(current, key)] = lineno

    end_line = len(lines) + 1
    for section, keys in REQUIRED.items():
        if section not in sections:
            raise ParseError(f"missing required section [{section}]", line=end_line)
        for key in keys:
            if key not in sections[section]:
                raise ParseError(
                    f"missing required key {key!r} in [{section}]", line=header_line[section]
                )

    def located(section, key, fn):
        lineno = key_line[(section, key)]
        try:
            return fn(sections[section][key])
        except ParseError as exc:
            raise ParseError(f"[{section}] {key}: {exc}", line=lineno) from None
        except (UndeclaredField, FieldMismatch, InvalidSpec) as exc:
            raise type(exc)(f"[{section}] {key} (line {lineno}): {exc}") from None

    fsec = sections["field"]
    kind = fsec["kind"].replace(" ", "")
    if kind == "Q":
        if "minpoly" in fsec:
            raise ParseError("minpoly given for kind = Q", line=key_line[("field", "minpoly")])
        fld = QQ
    elif kind == "Q(t)":
        if "minpoly" not in fsec:
            raise ParseError("kind = Q(t) requires minpoly", line=key_line[("field", "kind")])
        fld = located("field", "minpoly", parse_minpoly)
    else:
        raise ParseError(f"field kind must be Q or Q(t), got {kind!r}", line=key_line[("field", "kind")])

    psec = sections["pencil"]
    omega = located("pencil", "omega", lambda s: parse_one_form(s, fld))
    eta = located("pencil", "eta", lambda s: parse_one_form(s, fld))
    doc = PencilDocument(
        field=fld,
        omega=omega,
        eta=eta,
        omega_text=psec["omega"],
        eta_text=psec["eta"],
        label=psec.get("label"),
    )
    if "first_integral" in psec:
        doc.first_integral = located("pencil", "first_integral", lambda s: parse_rational_function(s, fld))
        doc.first_integral_text = psec["first_integral"]
    for name, text_value in sections.get("curves", {}).items():
        poly = located("curves", name, lambda s: parse_poly(s, fld))
        if poly.is_constant():
            raise ParseError(f"curve {name!r} is constant", line=key_line[("curves", name)])
        doc.curves[name] = poly
        doc.curve_texts[name] = text_value
    esec = sections.get("expect", {})
    if "tangency" in esec:
        doc.expect_tangency = located("expect", "tangency", lambda s: parse_poly(s, fld))
        doc.expect_tangency_text = esec["tangency"]
    if "flat" in esec:
        flag = esec["flat"].lower()
        if flag not in ("true", "false"):
            raise ParseError("flat must be true or false", line=key_line[("expect", "flat")])
        doc.expect_flat = flag == "true"
    return doc


def parse_product_factors(text: str, field: FieldSpec = QQ) -> list:
    """Top-level `*` factors of an expression, each parsed as a polynomial.

    Constant factors are dropped.  Used to split stated tangency products.
    """
    depth = 0
    pieces = []
    buf = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            pieces.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    pieces.append("".join(buf))
    # A top-level +/- means the text is a sum, not a product.
    for piece in pieces:
        depth = 0
        for i, ch in enumerate(piece):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch in "+-" and depth == 0 and piece[:i].strip():
                return [parse_poly(text, field)]
    factors = []
    for piece in pieces:
        poly = parse_poly(piece, field)
        if not poly.is_constant():
            factors.append(poly)
    return factors


# -- reports ----------------------------------------------------------------------

def to_jsonable(value):
    """Convert results to JSON-ready data with canonical polynomial strings."""
    from math import inf

    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return "infinite" if value == inf else value
    if isinstance(value, (MultiPoly, RationalFunction, OneForm, Scalar, FieldSpec, Fraction)):
        return print_canonical(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_report"):
        return to_jsonable(value.to_report())
    raise TypeError(f"cannot serialize {type(value).__name__}")


def emit_report(result) -> str:
    """Stable-key JSON text."""
    return json.dumps(to_jsonable(result), sort_keys=True, indent=2)
