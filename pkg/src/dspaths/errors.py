"""Exception hierarchy.

Every error raised deliberately by the library derives from ``DSPError`` so
the CLI can map it onto an exit code without catching unrelated bugs.
"""


class DSPError(Exception):
    exit_code = 2


class InputError(DSPError):
    """Bad graph file or bad query (exit code 2)."""


class GraphFormatError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedHeader(GraphFormatError):
    pass


class MalformedLine(GraphFormatError):
    pass


class IndexOutOfRange(GraphFormatError):
    pass


class SelfLoop(GraphFormatError):
    pass


class DuplicateEdge(GraphFormatError):
    pass


class NonPositiveUndirectedWeight(GraphFormatError):
    pass


class KindMismatch(InputError):
    pass


class InfeasibleEdgeCount(InputError):
    pass


class NegativeCycle(InputError):
    def __init__(self, message="graph contains a negative-weight cycle", cycle=None):
        self.cycle = cycle
        super().__init__(message)


class ZeroCycle(InputError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("graph contains a zero-weight cycle: " + " -> ".join(map(str, self.cycle)))


class NonPositiveWeight(InputError):
    pass


class NotADag(InputError):
    pass


class TerminalsNotDistinct(InputError):
    pass


class UnreachableTerminal(InputError):
    pass


class InstanceTooLarge(InputError):
    pass


class RootMissing(InputError):
    pass


class Unreachable(InputError):
    pass


class CapExceeded(InputError):
    pass


class PrecedenceViolated(InputError):
    pass


class InternalError(DSPError):
    """Assertion-grade failure inside an algorithm (exit code 3)."""

    exit_code = 3


class MissingSubproblem(InternalError):
    pass


class NoIntersectingPair(InternalError):
    pass


class InternalFlowInfeasible(InternalError):
    pass


class RandomizedFailure(DSPError):
    """A random evaluation hit a root; retrying with a fresh seed fixes it."""

    exit_code = 3


class ReportingFailed(RandomizedFailure):
    pass


class FlowInfeasible(RandomizedFailure):
    pass
