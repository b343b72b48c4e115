"""Exception types shared by every module.

Each class carries the CLI exit code it maps to, so the front end can
translate failures without a lookup table.
"""


class PartialActError(Exception):
    exit_code = 1

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MalformedInput(PartialActError):
    """Input has the wrong shape: rank mismatch, unknown label, bad JSON."""

    exit_code = 1


class ValidationError(MalformedInput):
    """A structural invariant is broken; ``offenders`` lists what broke it."""

    def __init__(self, message, offenders=None):
        super().__init__(message)
        self.offenders = list(offenders or [])


class PreconditionError(PartialActError):
    """The operation is well formed but not defined for this input."""

    exit_code = 4


class UnsupportedBackend(PreconditionError):
    pass


class RequiresExtension(PreconditionError):
    """A group-mode operation was asked of a cone-only system."""


class FreenessError(PreconditionError):
    pass


class SigmaFreenessError(PreconditionError):
    pass


class IntertwiningError(PreconditionError):
    pass
