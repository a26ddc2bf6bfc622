"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HCPError(Exception):
    """Base class for all package errors."""


class InvalidDigraph(HCPError, ValueError):
    pass


class ParseError(HCPError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegreeTooHigh(HCPError):
    def __init__(self, vertex: int, degree: int):
        self.vertex = vertex
        self.degree = degree
        super().__init__(f"projector vertex {vertex} has degree {degree} > 2")


class NotPerfect(HCPError):
    pass


class NoPerfectMatching(HCPError):
    """Raised when some component has an odd number of vertices."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"no perfect matching: odd path component {witness}")


class CapExceeded(HCPError):
    pass


class TooLarge(HCPError):
    pass


class Unsatisfiable(HCPError):
    pass


class DegreeOutsideClass(HCPError):
    pass


class NotHamiltonianAfterUnsplit(HCPError):
    pass


class RankMismatch(HCPError, AssertionError):
    pass


class BudgetTooSmall(HCPError):
    pass


class SizeOutOfGuard(HCPError):
    pass
