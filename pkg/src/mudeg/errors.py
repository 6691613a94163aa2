"""Exception types shared across the package."""


class MudegError(Exception):
    """Base class for all errors raised by mudeg."""


class CapExceeded(MudegError):
    """A configured resource cap was exceeded.

    kind is one of "order", "subgroups", "cosets".  actual carries the size
    that broke the cap when it is known exactly (e.g. the group order).
    """

    def __init__(self, kind, limit, actual=None, detail=None):
        self.kind = kind
        self.limit = limit
        self.actual = actual
        if actual is not None:
            msg = f"{kind} cap exceeded: {actual} > {limit}"
        else:
            msg = f"{kind} cap exceeded (limit {limit})"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class ExprError(MudegError):
    """Parse or semantic error in a group expression or presentation file."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
