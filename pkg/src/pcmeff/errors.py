"""Exception types shared across the toolkit."""


class PcmError(Exception):
    """Base class for all toolkit errors."""


class ParseError(PcmError):
    """Input text is not well-formed in the declared matrix format."""


class ValidationError(PcmError):
    """Matrix or weight data violates a structural invariant."""


class ConvergenceError(PcmError):
    """Power iteration failed to reach tolerance within the iteration cap."""


class NumericalError(PcmError):
    """Solver tableau conditioning degraded beyond recovery."""


class ConsistentInput(PcmError):
    """The strict index set is empty: the vector reproduces the matrix
    exactly, so it is efficient and the efficiency program is pointless."""


class EqualityWitness(PcmError):
    """Some ratio matches its matrix entry exactly, which certifies weak
    efficiency without solving the weak-efficiency program."""


class PreconditionError(PcmError):
    """Operation invoked on data that violates its stated precondition."""


class VerdictConflict(PcmError):
    """The linear-program verdict and the digraph verdict disagree.

    Diagnostic: carries both raw outcomes so the caller can inspect which
    tolerance was crossed.
    """

    def __init__(self, message: str, *, lp_optimum=None, graph_verdict=None,
                 detail=None):
        super().__init__(message)
        self.lp_optimum = lp_optimum
        self.graph_verdict = graph_verdict
        self.detail = detail or {}
