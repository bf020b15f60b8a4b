"""Exception hierarchy shared by every feasflow module."""

from __future__ import annotations


class FeasFlowError(Exception):
    """Base class for all errors raised by feasflow."""


class ImportImbalance(FeasFlowError, ValueError):
    """The vertex imports do not sum to zero."""

    def __init__(self, residual: int):
        self.residual = int(residual)
        super().__init__(f"imports sum to {self.residual}, expected 0")


class NotStronglyConnected(FeasFlowError, ValueError):
    """A spanning search from the root failed to reach every vertex."""

    def __init__(self, direction: str, reached: int, n: int):
        self.direction = direction
        self.reached = int(reached)
        self.n = int(n)
        super().__init__(
            f"network is not strongly connected: {direction} search from the "
            f"root reached {self.reached} of {self.n} vertices"
        )


class CapacityTooSmall(FeasFlowError, ValueError):
    """Some arc capacity is below the threshold the algorithm needs."""

    def __init__(self, arc: int, capacity: int, required: int):
        self.arc = int(arc)
        self.capacity = int(capacity)
        self.required = int(required)
        super().__init__(
            f"arc {self.arc + 1} has capacity {self.capacity} < required {self.required}"
        )


class NegativeDemandAtProcessing(FeasFlowError, AssertionError):
    """Internal invariant violation: a vertex reached the demand pass with d(w) < 0."""

    def __init__(self, vertex: int, value: int | None = None):
        self.vertex = int(vertex)
        self.value = value
        extra = "" if value is None else f" (d = {value})"
        super().__init__(f"negative net demand at vertex {self.vertex + 1}{extra}")


class LengthMismatch(FeasFlowError, ValueError):
    """A flow does not have one value per arc."""

    def __init__(self, got: int, expected: int):
        self.got = int(got)
        self.expected = int(expected)
        super().__init__(f"flow has {self.got} values, network has {self.expected} arcs")


class ParseError(FeasFlowError, ValueError):
    """Malformed network or flow document."""

    def __init__(self, reason: str, line: int | None = None):
        self.reason = reason
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + reason)


class NetworkSyntaxError(ParseError):
    pass


class RangeError(ParseError):
    pass


class DuplicateImport(ParseError):
    pass


class SpecInvalid(FeasFlowError, ValueError):
    """A generator specification violates its invariants."""


class Disagreement(FeasFlowError):
    """Solver, verifier and oracle disagree about an instance."""
