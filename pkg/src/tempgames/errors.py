"""Exception hierarchy shared by all solver modules."""


class TempGamesError(Exception):
    """Base class for every error raised by this package."""


class ArenaError(TempGamesError, ValueError):
    pass


class UnknownVertex(ArenaError):
    pass


class DuplicateVertex(ArenaError):
    pass


class InvalidObjective(ArenaError):
    pass


class ResourceLimit(TempGamesError):
    """A configured cap on states, horizon or period was exceeded."""


class StateSpaceLimit(ResourceLimit):
    pass


class PeriodOverflow(ResourceLimit):
    pass


class OnePlayerOnly(TempGamesError, ValueError):
    pass


class ParseError(TempGamesError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class KindMismatch(ParseError):
    pass


class UnquantifiedVariable(ParseError):
    pass


class TooLarge(TempGamesError, ValueError):
    pass


class NotNormalized(TempGamesError, ValueError):
    pass


class ClauseTooWide(TempGamesError, ValueError):
    pass


class WidthExceeded(TempGamesError, ValueError):
    pass
