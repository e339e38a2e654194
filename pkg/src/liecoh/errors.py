"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LieCohError(Exception):
    """Base class for all errors raised by liecoh."""


class NonSquare(LieCohError):
    pass


class ZeroPolynomial(LieCohError):
    pass


class NonSplit(LieCohError):
    """An eigenvalue computation needed a root outside the rationals."""


class JacobiViolation(LieCohError):
    def __init__(self, i: int, j: int, k: int, residual):
        self.triple = (i, j, k)
        self.residual = residual
        shown = residual.items() if isinstance(residual, dict) else enumerate(residual)
        terms = ", ".join(f"e{m + 1}: {c}" for m, c in shown if c)
        super().__init__(f"Jacobi identity fails on basis triple (e{i + 1}, e{j + 1}, e{k + 1}): residual {{{terms}}}")


class NotSolvable(LieCohError):
    pass


class SearchExhausted(LieCohError):
    pass


class NotADerivation(LieCohError):
    def __init__(self, index: int, detail: str = ""):
        self.index = index
        super().__init__(f"matrix {index} is not a derivation{': ' + detail if detail else ''}")


class NotCommuting(LieCohError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"operators {i} and {j} do not commute")


class NotSemisimple(LieCohError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"operator {index} is not semisimple")


class ModuleMismatch(LieCohError):
    pass


class CommutationFailure(LieCohError):
    pass


class NotAnIdeal(LieCohError):
    pass


class WrongCodimension(LieCohError):
    pass


class ComplexTooLarge(LieCohError):
    pass


class NotAlternating(LieCohError):
    pass


class TauNonzero(LieCohError):
    pass


class OutOfRange(LieCohError):
    pass


class ExtensionViolation(LieCohError):
    """Raised when (alpha, rho) fails one of the extension identities."""

    def __init__(self, kind: str, where: tuple, residual=None):
        self.kind = kind
        self.where = where
        self.residual = residual
        super().__init__(f"{kind} fails at {where}: residual {residual}")


class TheoremCheckFailure(LieCohError):
    """A computed quantity contradicts a proved statement; always a bug or bad input."""


class ParseError(LieCohError):
    def __init__(self, line: int | None, reason: str):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")
