"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` (the class name) so the
command-line front end can report it as JSON.
"""


class HorolifError(Exception):
    """Base class for all package errors."""

    @property
    def code(self):
        return type(self).__name__


class ParseError(HorolifError, ValueError):
    pass


class NotIrreducible(HorolifError, ValueError):
    pass


class OutOfDomain(HorolifError, ValueError):
    pass


class DimensionMismatch(HorolifError, ValueError):
    pass


class InvalidLengths(HorolifError, ValueError):
    pass


class SuspensionInvalid(HorolifError, ValueError):
    pass


class NotUnimodular(HorolifError, ValueError):
    pass


class DegenerateTransversal(HorolifError, ValueError):
    pass


class LengthCollapse(HorolifError, ValueError):
    pass


class CollisionObstruction(HorolifError, ValueError):
    pass


class NotInNullSpace(HorolifError, ValueError):
    pass


class NonpositiveParameter(HorolifError, ValueError):
    pass


class NotPositivePair(HorolifError, ValueError):
    pass


class InequalityViolation(HorolifError, AssertionError):
    """A proven inequality failed numerically; always a bug."""


ERROR_CODES = {
    cls.__name__: i + 10
    for i, cls in enumerate(
        [
            ParseError,
            NotIrreducible,
            OutOfDomain,
            DimensionMismatch,
            InvalidLengths,
            SuspensionInvalid,
            NotUnimodular,
            DegenerateTransversal,
            LengthCollapse,
            CollisionObstruction,
            NotInNullSpace,
            NonpositiveParameter,
            NotPositivePair,
            InequalityViolation,
        ]
    )
}
