"""
Exception hierarchy for the TGWA workbench

InputError subclasses mean the request itself was malformed (exit code 2);
AssertionFailure subclasses mean a mathematical check did not hold (exit
code 1). Everything else is a plain TGWAError.
"""


class TGWAError(Exception):
    """Base class for all workbench errors"""

    exit_code = 1


class InputError(TGWAError):
    """Malformed input: bad syntax, schema or unsupported request"""

    exit_code = 2


class AssertionFailure(TGWAError):
    """A verified identity failed"""

    exit_code = 1


# scalars
class DivisionByZero(TGWAError):
    pass


class FieldMismatch(TGWAError):
    pass


class ZeroInput(TGWAError):
    pass


class NotASquare(InputError):
    pass


# basering
class RingMismatch(TGWAError):
    pass


class SingularAffineMap(InputError):
    pass


class UnsupportedAutomorphismShape(InputError):
    pass


class InfiniteOrder(InputError):
    pass


# tgwa-core
class NonCommutingSigmas(InputError):
    pass


class ZeroT(InputError):
    pass


class BoundExceeded(TGWAError):
    def __init__(self, i: int, j: int, bound: int):
        super().__init__(f"V_{i}{j} has no dependence within {bound} iterations")
        self.i = i
        self.j = j
        self.bound = bound


# algebra-a1n / algebra-a2
class NotTypeA1n(InputError):
    pass


class ProfileMismatch(TGWAError):
    pass


class DenominatorVanishes(TGWAError):
    def __init__(self, index: int):
        super().__init__(f"S_{index} vanishes")
        self.index = index


class ZeroLambda2(InputError):
    pass


class DivisionByZeroPolynomial(TGWAError):
    pass


# fixedring
class CoprimalityViolation(InputError):
    pass


class HypothesisViolation(InputError):
    pass


class InheritanceFailure(AssertionFailure):
    pass


# weightmod
class FiniteOrbitUnsupported(InputError):
    pass


class UnsupportedResidueComputation(InputError):
    pass


class PositionOutsideSupport(TGWAError):
    pass


class RelationViolated(AssertionFailure):
    def __init__(self, which: str):
        super().__init__(f"relation violated: {which}")
        self.which = which


class SpinInconclusive(InputError):
    pass


class WindowTooSmall(InputError):
    pass


# scenario handling
class ExpressionSyntaxError(InputError):
    """Expression could not be parsed; `column` is 1-based"""

    def __init__(self, message: str, text: str, column: int, location: str = ""):
        self.message = message
        self.text = text
        self.column = column
        self.location = location
        where = f"{location}: " if location else ""
        super().__init__(f"{where}{message} at column {column} in {text!r}")

    def at(self, location: str) -> "ExpressionSyntaxError":
        """Same error, tagged with the scenario path of the expression"""
        return ExpressionSyntaxError(self.message, self.text, self.column, location)


class ScenarioSyntaxError(InputError):
    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class SchemaError(InputError):
    """Scenario structure rejected; `path` is the dotted location inside the scenario"""

    def __init__(self, message: str, path: str = "", line: int = None, column: int = None):
        self.path = path
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        at = f"{path}: " if path else ""
        super().__init__(f"{where}{at}{message}")


class UnsupportedFeature(InputError):
    pass
