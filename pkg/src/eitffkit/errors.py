"""Exception hierarchy.

Three families map onto CLI exit codes: verification failures (2),
precondition/usage problems (3) and numerical trouble (4).
"""

from __future__ import annotations


class EitffError(Exception):
    exit_code = 1


class VerificationError(EitffError):
    """An object failed one of its defining axioms."""

    exit_code = 2


class PreconditionError(EitffError):
    exit_code = 3


class NumericalError(EitffError):
    exit_code = 4


# --- verification -----------------------------------------------------------


class AxiomViolation(VerificationError):
    def __init__(self, axiom: str, location=None, detail: str = ""):
        self.axiom = axiom
        self.location = location
        self.detail = detail
        msg = f"axiom {axiom} fails"
        if location is not None:
            msg += f" at {location}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InconsistentC(VerificationError):
    pass


class NotTwoEigenvalues(VerificationError):
    def __init__(self, count: int, values=()):
        self.count = count
        self.values = tuple(values)
        super().__init__(f"expected exactly two eigenvalues, found {count}: {self.values}")


class NotScaledProjection(VerificationError):
    pass


class NotIsoclinic(VerificationError):
    def __init__(self, pair, spread: float):
        self.pair = pair
        self.spread = spread
        super().__init__(f"cross-Gram of blocks {pair} is not isoclinic (spread {spread:.3e})")


class NotTight(VerificationError):
    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(f"frame operator deviates from a multiple of I by {deviation:.3e}")


class ExactCountFailure(VerificationError):
    def __init__(self, i: int, j: int, residue: int, count: int, expected):
        self.i, self.j, self.residue, self.count = i, j, residue, count
        super().__init__(
            f"rows ({i}, {j}): residue {residue} occurs {count} times, expected {expected}"
        )


class WrongBlockShape(VerificationError):
    def __init__(self, location, detail: str = ""):
        self.location = location
        super().__init__(f"block {location} is not of the form [[a, b], [b, -a]] {detail}".strip())


# --- preconditions ----------------------------------------------------------


class OutOfRange(PreconditionError):
    pass


class ZeroElement(PreconditionError):
    pass


class NotHermitian(PreconditionError):
    pass


class NotPrime(PreconditionError):
    pass


class NotExactMode(PreconditionError):
    pass


class DivisibilityFailure(PreconditionError):
    pass


class DegenerateIrrep(PreconditionError):
    pass


class CapExceeded(PreconditionError):
    pass


class NotAffine(PreconditionError):
    def __init__(self, location):
        self.location = location
        super().__init__(f"block {location} is not an affine map x -> +-x + b")


class EvenModulus(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError):
    pass


class FiberTooSmall(PreconditionError):
    pass


class NotTransitive(PreconditionError):
    pass


# --- numerics ---------------------------------------------------------------


class NoConvergence(NumericalError):
    pass


class AmbiguousClustering(NumericalError):
    pass
