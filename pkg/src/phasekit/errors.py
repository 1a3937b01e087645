"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` for bad inputs and
violated preconditions, :class:`NumericalError` for failures of an otherwise
well-posed computation. The CLI maps them to exit codes 1 and 2.
"""


class PhaseKitError(Exception):
    """Base class for every error raised by phasekit."""


class ValidationError(PhaseKitError, ValueError):
    """An input violates a documented constraint."""

    def __init__(self, field, constraint):
        self.field = field
        self.constraint = constraint
        super().__init__(f"{field}: {constraint}")


class ParseError(PhaseKitError, ValueError):
    """Config text is not valid JSON."""

    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class NumericalError(PhaseKitError, ArithmeticError):
    """A computation could not produce a result."""


class PathIntersectsSolenoidCore(ValidationError):
    def __init__(self, distance, core_radius):
        super().__init__(
            "path",
            f"passes {distance:.6g} from the solenoid axis, inside core radius {core_radius:.6g}",
        )


class MismatchedEndpoints(ValidationError):
    def __init__(self, detail):
        super().__init__("paths", detail)


class OutOfSpan(ValidationError):
    def __init__(self, screen_point, span):
        super().__init__("screen_point", f"{screen_point!r} outside screen span {span!r}")


class ZeroActionTarget(ValidationError):
    def __init__(self):
        super().__init__("level", "integer rule with n = 0 has zero action and no orbit")


class InvalidCharge(ValidationError):
    def __init__(self):
        super().__init__("charge", "must be nonzero for a Coulomb orbit")


class EmptyList(ValidationError):
    def __init__(self, field="amplitudes"):
        super().__init__(field, "must be non-empty")


class EnergyBelowMinimum(ValidationError):
    def __init__(self, energy, vmin):
        super().__init__("energy", f"{energy!r} is not above the potential minimum {vmin!r}")


class EnergyNotBracketed(NumericalError):
    def __init__(self, energy, ceiling):
        super().__init__(f"energy {energy!r} is not below the tabulated ceiling {ceiling!r}")


class BracketNotFound(NumericalError):
    pass


class DivergentAverage(NumericalError):
    def __init__(self, modulus):
        super().__init__(f"total amplitude modulus {modulus:.3e} is too small to divide by")


class TooFewPeaks(NumericalError):
    def __init__(self, found, needed=3):
        super().__init__(f"found {found} interior maxima, need at least {needed}")
