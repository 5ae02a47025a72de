"""Exception hierarchy. Each class maps to one CLI exit code."""


class DivSymError(Exception):
    exit_code = 1


class InputError(DivSymError, ValueError):
    """Malformed input file or value."""

    exit_code = 2


class PreconditionError(DivSymError, ValueError):
    """Input parses but violates an operation's precondition."""

    exit_code = 3


class CapExceeded(DivSymError):
    """A configured size cap (permutations, states, trials) would be exceeded."""

    exit_code = 4


class VerificationError(DivSymError):
    """Two computation routes that must agree did not."""

    exit_code = 5
