"""Exception hierarchy shared by every module."""


class AnalysisError(Exception):
    """Base class for failures that the CLI reports with exit code 1."""


class FormatError(AnalysisError):
    """A ``dpa v1`` document could not be read."""


class BadHeader(FormatError):
    pass


class UnknownSymbol(FormatError):
    pass


class DuplicateEdge(FormatError):
    pass


class MissingEdge(FormatError):
    pass


class BadRank(FormatError):
    pass


class InvalidForgetful(FormatError):
    """A document with ``eps`` edges violates the forgetful-automaton invariants."""


class AlphabetMismatch(AnalysisError):
    pass


class EmptyInfix(AnalysisError):
    pass


class Diverged(AnalysisError):
    """Learning exceeded the configured state bound."""


class SuiteFailure(AnalysisError):
    def __init__(self, prop, fixture, counterexample):
        super().__init__(f"{prop} failed on {fixture}: {counterexample}")
        self.prop = prop
        self.fixture = fixture
        self.counterexample = counterexample
