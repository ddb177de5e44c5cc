"""Exception hierarchy shared by all pipeline stages.

Every error carries enough context to be printed as a one-line diagnostic
by the CLI. ``exit_code`` is the process status the CLI maps it to.
"""

from __future__ import annotations


class BookbindError(Exception):
    exit_code = 2


class ParseError(BookbindError):
    exit_code = 1

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class EulerViolation(BookbindError):
    def __init__(self, v: int, e: int, f: int, component: int = 0):
        self.v, self.e, self.f = v, e, f
        self.component = component
        super().__init__(
            f"component {component}: V-E+F = {v}-{e}+{f} = {v - e + f} != 2"
        )


class BipartitenessViolation(BookbindError):
    exit_code = 1


class DegreeViolation(BookbindError):
    exit_code = 1

    def __init__(self, point: int, degree: int, k: int):
        self.point, self.degree, self.k = point, degree, k
        super().__init__(f"point {point} has degree {degree} (k={k})")


class MalformedFace(BookbindError):
    pass


class NonSimpleOuterCycle(BookbindError):
    exit_code = 3


class OddBindingCount(BookbindError):
    exit_code = 3


class OuterplanarityViolation(BookbindError):
    exit_code = 3


class NotThreeColorable(BookbindError):
    exit_code = 3


class MergeConflict(BookbindError):
    pass


class CoverageError(BookbindError):
    pass


class UnknownVertex(BookbindError):
    pass


class SizeLimitExceeded(BookbindError):
    pass


class OddK(BookbindError):
    pass


class StructureError(BookbindError):
    """A structural assumption of the 2-level decomposition failed."""

    exit_code = 3
