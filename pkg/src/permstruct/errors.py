"""Exception types shared across the package."""


class PermStructError(Exception):
    """Base class for every error raised by permstruct."""


class ParseError(PermStructError, ValueError):
    """Malformed cycle notation or group file."""


class DegreeMismatch(PermStructError, ValueError):
    pass


class BudgetExceeded(PermStructError):
    """An enumeration or coset-action budget would be exceeded.

    Raised instead of returning a possibly wrong answer; callers that can
    degrade gracefully (certificate replay, the CLI) catch this type.
    """

    def __init__(self, what: str, needed: int, limit: int):
        super().__init__(f"{what}: needs {needed}, budget is {limit}")
        self.what = what
        self.needed = needed
        self.limit = limit


class NotASubgroup(PermStructError, ValueError):
    pass


class NotNormal(PermStructError, ValueError):
    pass


class NotSoluble(PermStructError, ValueError):
    pass


class NotSemisimple(PermStructError, ValueError):
    """The group is not a direct product of nonabelian simple groups."""


class NotAFactorization(PermStructError, ValueError):
    pass


class PreconditionError(PermStructError, ValueError):
    """Inputs violate the hypotheses of a property being probed."""
