"""Exception hierarchy shared by the library and the command line."""


class DesignError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DesignError, ValueError):
    """Bad user input: malformed files, violated preconditions, bad arguments."""


class FormatError(InputError):
    """A uset-v1 or chartab-v1 file does not match its schema."""


class UnitarityError(InputError):
    """A matrix fails the unitarity check."""

    def __init__(self, index, deviation, tol):
        self.index = index
        self.deviation = deviation
        super().__init__(
            f"matrix {index} is not unitary: max |U^dag U - I| = {deviation:.3e} > {tol:.1e}"
        )


class PreconditionError(InputError):
    """A bound or routine was called outside its range of validity."""


class GroupTooLargeError(DesignError):
    """Group closure exceeded its size budget."""


class InvariantViolation(DesignError):
    """An internal mathematical invariant failed; the numerics cannot be trusted."""
