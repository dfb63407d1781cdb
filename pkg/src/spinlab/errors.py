"""Exception types raised across spinlab.

Everything derives from :class:`SpinlabError`.  The CLI maps any
``SpinlabError`` to exit code 1 (a verification or precondition failure
on well-formed input); malformed input and bad flags map to exit code 2.
"""

from __future__ import annotations


class SpinlabError(Exception):
    """Base class; ``kind`` is the short name reported by the CLI."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class OrderMismatch(SpinlabError):
    pass


class ZeroEntry(SpinlabError):
    def __init__(self, i: int, j: int, value: complex):
        super().__init__(f"entry ({i}, {j}) = {value!r} is below the zero threshold")
        self.i, self.j, self.value = i, j, value


class NotInvertible(SpinlabError):
    pass


class NotSchurInvertible(SpinlabError):
    pass


class IllConditioned(SpinlabError):
    def __init__(self, j: int, cond: float):
        super().__init__(f"eigenvector basis for column {j} has condition number {cond:.3e}")
        self.j, self.cond = j, cond


class NotInAlgebra(SpinlabError):
    def __init__(self, residual: float):
        super().__init__(f"matrix is not in the algebra (projection residual {residual:.3e})")
        self.residual = residual


class NotSchurClosed(SpinlabError):
    pass


class NotCommutative(SpinlabError):
    pass


class NotClosed(SpinlabError):
    pass


class NotBoseMesner(SpinlabError):
    def __init__(self, axiom: str, detail: str = ""):
        super().__init__(f"not a Bose-Mesner algebra: {axiom} fails" + (f" ({detail})" if detail else ""))
        self.axiom = axiom


class AmbiguousPairing(SpinlabError):
    pass


class NotInvertiblePair(SpinlabError):
    pass


class ValidationFailure(SpinlabError):
    def __init__(self, condition: str, indices=None, residual: float | None = None):
        msg = f"condition {condition} fails"
        if indices is not None:
            msg += f" at {tuple(int(v) for v in indices)}"
        if residual is not None:
            msg += f" (residual {residual:.3e})"
        super().__init__(msg)
        self.condition, self.indices, self.residual = condition, indices, residual


class ConditionFailure(ValidationFailure):
    """A spin-model condition (I), (II) or (III) fails."""


class SingularD(SpinlabError):
    pass


class NotPermutation(SpinlabError):
    pass


class InconsistentGauge(SpinlabError):
    pass


class NotHadamard(SpinlabError):
    pass


class BadParameters(SpinlabError):
    pass


class VerificationFailure(SpinlabError):
    pass


class StructureMismatch(SpinlabError):
    pass


class NotSymmetricA(SpinlabError):
    pass


class WrongShape(SpinlabError):
    def __init__(self, block: str, reason: str):
        super().__init__(f"block {block}: {reason}")
        self.block, self.reason = block, reason


class NotEquitable(SpinlabError):
    def __init__(self, index: int, residual: float):
        super().__init__(f"partition is not equitable for basis element {index} (residual {residual:.3e})")
        self.index, self.residual = index, residual


class EmptySubset(SpinlabError):
    pass


class NotDimensionTwo(SpinlabError):
    pass


class NotTwoValued(SpinlabError):
    pass


class ZeroWeight(SpinlabError):
    pass


class NoConvergence(SpinlabError):
    def __init__(self, best_residuals):
        best = ", ".join(f"{r:.3e}" for r in best_residuals[:5])
        super().__init__(f"no start converged; best residuals: {best}")
        self.best_residuals = list(best_residuals)


class NotImprimitive(SpinlabError):
    pass


class NoDuality(SpinlabError):
    pass


class DimensionTooLarge(SpinlabError):
    pass


class AxiomFailure(SpinlabError):
    def __init__(self, axiom: str, witness=None):
        msg = f"axiom ({axiom}) fails"
        if witness is not None:
            msg += f"; witness {witness}"
        super().__init__(msg)
        self.axiom, self.witness = axiom, witness


class TooLarge(SpinlabError):
    pass
