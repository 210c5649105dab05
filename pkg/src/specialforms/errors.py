"""Error types shared by the whole package.

Three failure modes are distinguished so the command line tool can map them
onto distinct exit codes: bad input values, violated call preconditions, and
requests that exceed a configured size cap.
"""


class SpecialFormsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SpecialFormsError):
    """An input value is outside the domain of the operation."""


class PreconditionError(SpecialFormsError):
    """A structural precondition on the input objects does not hold."""


class CapacityError(SpecialFormsError):
    """The requested computation exceeds a configured size cap."""
