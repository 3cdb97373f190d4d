"""Exception hierarchy shared by every layer of the package."""


class AutzLabError(Exception):
    """Base class for all errors raised by autzlab."""


class PresentationSyntaxError(AutzLabError, ValueError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GeneratorIndexError(AutzLabError, IndexError):
    pass


class NonPrimeError(AutzLabError, ValueError):
    pass


class InconsistentPresentation(AutzLabError):
    """Realization showed the presentation does not define a group of order p^n."""


class NotNormal(AutzLabError):
    pass


class NotAbelian(AutzLabError):
    pass


class NotApplicable(AutzLabError):
    pass


class NotPurelyNonabelian(AutzLabError):
    pass


class NotRegular(AutzLabError):
    pass


class ScopeExceeded(AutzLabError):
    """A brute-force routine was asked to run beyond its documented size limit."""


class UnknownTheoremId(AutzLabError, KeyError):
    pass
