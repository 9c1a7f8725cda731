from __future__ import annotations


class ClbError(Exception):
    """Root of everything this package raises on purpose."""


class InputError(ClbError, ValueError):
    """Bad or inconsistent input. The CLI maps it to exit code 1."""


class ShapeError(InputError):
    pass


class MembershipError(InputError):
    """An operator / group element / twisted element is not where it was claimed to be."""


class PreconditionError(InputError):
    pass


class BudgetError(InputError):
    pass


class InconsistentSystemError(InputError):
    """A linear system has no solution (as opposed to a trivial kernel)."""


class InternalCheckError(ClbError, AssertionError):
    """A constructed object failed its own invariant checker."""


class VerificationFailure(ClbError):
    """A verify or shadow run found counterexamples. The CLI maps it to exit code 2."""

    def __init__(self, message: str, failures: int = 0):
        super().__init__(message)
        self.failures = int(failures)
