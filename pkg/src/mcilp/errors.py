"""Exception hierarchy shared by all mcilp modules.

Every error raised on a violated contract derives from :class:`Error`, so
callers can catch one base type at API boundaries (CLI, service) and map it
to an exit code or HTTP status.
"""


class Error(Exception):
    """Base class for all mcilp errors."""


class EmptyPolyhedron(Error):
    """An operation that requires a nonempty polyhedron received an empty one."""


class UnboundedPolyhedron(Error):
    """An operation that requires a bounded polyhedron received an unbounded one."""


class NonSimplicialCone(Error):
    """A simplicial-cone operation received a cone with dependent generators."""


class DegenerateSubstitution(Error):
    """A monomial substitution mapped some denominator exponent to zero."""


class NonGenericLambda(Error):
    """A direction vector is orthogonal to some denominator exponent."""


class DimensionMismatch(Error):
    """Operands live in different ambient dimensions."""


class NonNormalizedInput(Error):
    """An operand was not orientation-normalized as the operation requires."""


class UniverseViolation(Error):
    """A verification sample fell outside the declared universe box."""


class TooLarge(Error):
    """A brute-force scan would exceed the configured size guard."""


class EmptySet(Error):
    """An operation that requires a nonempty encoded set received the empty one."""


class NegativeMoment(Error):
    """A moment sum came out negative, contradicting the nonnegativity premise."""


class ParseError(Error):
    """A text input (problem file, norm spec, serialized function) is malformed."""
