"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class SemiquiverError(Exception):
    exit_code = 1


class InputError(SemiquiverError, ValueError):
    """Malformed or invalid input (bad table, bad file, non-associative data)."""

    exit_code = 1


class SizeError(InputError):
    """Enumeration exceeded the configured element cap."""


class PreconditionError(SemiquiverError, ValueError):
    """A valid input that an operation is not defined for (e.g. a non-RRBG)."""

    exit_code = 2


class ConsistencyError(SemiquiverError, AssertionError):
    """Two independent routes disagreed, or an integrality check failed."""

    exit_code = 3
