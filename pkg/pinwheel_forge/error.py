class ForgeError(Exception):
    """Base class of all errors raised by pinwheel_forge."""


class ConfigError(ForgeError):
    """Raised when the registry configuration is bad."""


def conflict_keyfunc(action):
    code_info = action.code_info
    if code_info is None:
        return 0
    return (code_info.path, code_info.lineno)


class ConflictError(ConfigError):
    """Raised when two directives register the same thing.

    Describes where in the code the directives are in conflict.
    """

    def __init__(self, actions):
        actions.sort(key=conflict_keyfunc)
        self.actions = actions
        result = ["Conflict between:"]
        for action in actions:
            code_info = action.code_info
            if code_info is None:
                continue
            result.append("  %s" % code_info.filelineno())
            result.append("    %s" % code_info.sourceline)
        super().__init__("\n".join(result))


class DirectiveReportError(ConfigError):
    """Raised when there's a problem with a directive.

    Describes where in the code the problem occurred.
    """

    def __init__(self, message, code_info):
        result = [message]
        if code_info is not None:
            result.append("  %s" % code_info.filelineno())
            result.append("    %s" % code_info.sourceline)
        super().__init__("\n".join(result))


class DirectiveError(ConfigError):
    """Raised by an action that cannot be performed.

    It is converted into a :exc:`DirectiveReportError` during commit.
    """


class TopologicalSortError(ValueError):
    """Raised if dependencies cannot be sorted topologically."""


class AlgebraError(ForgeError):
    """Base class of exact arithmetic errors."""


class NoDominantRoot(AlgebraError):
    """The polynomial has no real root larger than one."""


class DivisionByZero(AlgebraError, ZeroDivisionError):
    """Inverse of an algebraic number equal to zero."""


class PrecisionExhausted(AlgebraError):
    """Interval refinement hit the configured iteration cap."""


class DegreeCapExceeded(AlgebraError):
    """The cyclotomic search bound exceeds the configured cap."""


class NotPrimitive(AlgebraError):
    """The substitution matrix is not primitive."""


class NoConvergence(AlgebraError):
    """Power iteration did not reach the tolerance."""


class AngleError(ForgeError):
    """Base class of angle errors."""


class RegistryMismatch(AngleError):
    """Orientations from different generator registries were combined."""


class TilingError(ForgeError):
    """Base class of tiling errors."""


class BadIndex(TilingError):
    """A child references a prototile that does not exist."""


class FactorNotGreaterThanOne(TilingError):
    """The substitution factor is not larger than one."""


class PrototileMismatch(TilingError):
    """A patch tile references a prototile unknown to the rule."""


class MemoryCap(TilingError):
    """The projected tile count exceeds the configured cap."""


class NotCentered(TilingError):
    """The patch does not contain the origin."""


class NoProvenance(TilingError):
    """The patch was not generated as a supertile."""


class ProbeTooLarge(TilingError):
    """The probe does not fit into the supertile."""


class OverflowGuard(TilingError):
    """Integer matrix powers exceed the memory cap."""


class FamilyError(ForgeError):
    """Base class of family construction errors."""


class SpecViolation(FamilyError):
    """The family parameters are out of range."""


class VerifyFailed(FamilyError):
    """A rule did not pass geometric verification.

    The failing :class:`pinwheel_forge.tiling.VerifyReport` is available
    as the ``report`` attribute.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class RectangleNotFound(FamilyError):
    """The altitude rectangle of the Pythia construction is missing."""


class ConventionUnresolved(FamilyError):
    """No tipi convention passes verification."""


class RenderError(ForgeError):
    """Base class of serialization and rendering errors."""


class EmptyPatch(RenderError):
    """Rendering an empty patch without permission."""


class SchemaError(RenderError):
    """A rule or patch file does not match the schema."""
