"""Exception hierarchy shared by every thetakit module."""


class ThetaKitError(Exception):
    """Base class; ``name`` is what the CLI prints for domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class DomainError(ThetaKitError, ValueError):
    pass


class NoConvergence(ThetaKitError, ArithmeticError):
    def __init__(self, what: str, terms: int):
        super().__init__(f"{what}: no convergence after {terms} terms")
        self.what = what
        self.terms = terms


class OutsideStrip(ThetaKitError, ValueError):
    def __init__(self, what: str, ratio: float):
        super().__init__(f"{what}: strip ratio {ratio:.6g} >= 1")
        self.ratio = ratio


class PoleAtV(ThetaKitError, ZeroDivisionError):
    pass


class PoleAtLatticePoint(ThetaKitError, ZeroDivisionError):
    pass


class SeedFailure(ThetaKitError, ArithmeticError):
    pass


class ZeroConstantTerm(ThetaKitError, ZeroDivisionError):
    pass


class BadConstantTerm(ThetaKitError, ValueError):
    def __init__(self, op: str, value):
        super().__init__(f"{op}: inadmissible constant term {value}")
        self.value = value


class NonUnitFactor(ThetaKitError, ValueError):
    pass


class DivisionByZero(ThetaKitError, ZeroDivisionError):
    pass


class Overflow(ThetaKitError, OverflowError):
    pass
