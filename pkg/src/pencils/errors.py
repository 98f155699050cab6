"""Exception hierarchy.

Two families matter to callers (and to the CLI exit codes): `InputError` for
malformed input, `MathError` for inputs that parse but violate a mathematical
precondition.  The class name doubles as the error name in reports.
"""


class PencilsError(Exception):
    """Base class for every error raised by the package."""

    @property
    def name(self) -> str:
        return type(self).__name__


class InputError(PencilsError):
    pass


class MathError(PencilsError):
    pass


class ParseError(InputError):
    """Syntax error; `offset` is a byte offset into the parsed text."""

    def __init__(self, message, offset=None, line=None):
        self.offset = offset
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class FieldMismatch(InputError):
    pass


class UndeclaredField(InputError):
    pass


class ZeroPolynomial(MathError, ZeroDivisionError):
    pass


class NotDivisible(MathError):
    pass


class DegreeZeroInput(MathError):
    pass


class ZeroForm(MathError):
    pass


class DegenerateSingularity(MathError):
    pass


class UnsupportedDegenerate(MathError):
    pass


class NonIsolatedSingularities(MathError):
    pass


class InvariantCurve(MathError):
    pass


class NonInvariantCurve(MathError):
    pass


class NonSmoothBranch(MathError):
    pass


class InconsistentTangency(MathError):
    pass


class ConstantCurve(MathError):
    pass


class ProportionalForms(MathError):
    pass


class FactorDoesNotDivideTangency(MathError):
    pass


class NoRationalPointFound(MathError):
    pass


class NotAFibration(MathError):
    pass


class DegYTooLarge(MathError):
    pass


class NonSplitP2(MathError):
    pass


class IrrationalPoles(MathError):
    pass


class NotFlat(MathError):
    pass


class AlphaOutsideField(MathError):
    pass


class RealQuadraticTau(MathError):
    pass


class NonInvertibleScalar(MathError):
    pass


class InvalidSpec(MathError):
    pass
