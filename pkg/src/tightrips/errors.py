"""Exception hierarchy shared by all tightrips modules.

Exit-code mapping used by the CLI: invalid input (including schema and
connectivity problems) maps to 2, resource budget overruns to 3, and
verification *results* that fail (a map that is not tight, a Lipschitz
violation) are ordinary return values reported with exit code 1, never
exceptions.
"""


class TightripsError(Exception):
    """Base class for all library errors."""


class InvalidInputError(TightripsError):
    """Caller supplied an argument outside an operation's domain."""


class ConnectivityError(InvalidInputError):
    """Graph is not connected; raised at construction time."""


class NoCycleError(InvalidInputError):
    """Operation requires a graph with first Betti number >= 1."""


class HypothesisViolationError(InvalidInputError):
    """A stated theorem hypothesis (e.g. loop is a shortest cycle) fails."""


class InvalidBasepointError(InvalidInputError):
    """No legal combing basepoint can be derived from the requested one."""


class ResourceBudgetError(TightripsError):
    """A configured size budget (simplex count, functional count) was hit."""


class InternalConsistencyError(TightripsError):
    """A bookkeeping invariant failed; indicates a bug, not bad input."""
