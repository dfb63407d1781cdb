"""Dense complex matrices, Schur calculus and the endomorphisms X, Delta, Y.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The three
basic endomorphisms of the space of n x n matrices are

* ``X_C(M) = C M``            (:class:`LeftMult`)
* ``Delta_C(M) = C o M``      (:class:`SchurMult`, entrywise product)
* ``Y_C(M) = M C^T``          (:class:`RightMultTranspose`)

and compositions of them (:class:`Composite`).  All of them act on stacks
of matrices of shape ``(..., n, n)``, which lets identities between
endomorphisms be checked on the whole standard basis ``E_ij`` at once.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import NotInvertible, NotSchurInvertible, OrderMismatch, ZeroEntry

Matrix = np.ndarray


@dataclass(frozen=True)
class Tolerance:
    """Comparison thresholds.

    Two numbers x, y compare equal when ``|x - y| <= abs_eps + rel_eps * max(|x|, |y|)``.
    ``rank_eps`` is the relative singular-value cutoff used for every rank
    decision.  ``angle_eps`` (derived) is the threshold on relative projection
    residuals and principal-angle sines when deciding subspace membership.
    """

    abs_eps: float = 1e-9
    rel_eps: float = 1e-9
    rank_eps: float = 1e-8

    def __post_init__(self):
        if min(self.abs_eps, self.rel_eps, self.rank_eps) < 0 or self.rank_eps == 0:
            raise ValueError("tolerances must be non-negative and rank_eps positive")

    @property
    def angle_eps(self) -> float:
        return 100.0 * self.rank_eps

    @classmethod
    def from_env(cls, var: str = "SPINLAB_TOL") -> "Tolerance":
        raw = os.environ.get(var)
        if not raw:
            return cls()
        eps = float(raw)
        return cls(abs_eps=eps, rel_eps=eps)

    def as_dict(self) -> dict:
        return {"abs_eps": self.abs_eps, "rel_eps": self.rel_eps, "rank_eps": self.rank_eps}


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Check:
    """Outcome of a numerical verification.

    ``residual`` is the largest absolute deviation observed, so callers can
    assert margins and not only the boolean.
    """

    ok: bool
    residual: float
    detail: str = ""

    def __bool__(self) -> bool:
        return bool(self.ok)


@dataclass
class Report:
    """Named checks plus informational values, as produced by the structure verifiers."""

    checks: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[str]:
        return [name for name, c in self.checks.items() if not c.ok]

    def worst_residual(self) -> float:
        finite = [c.residual for c in self.checks.values()]
        return max(finite, default=0.0)

    def raise_if_failed(self, exc_type=None) -> "Report":
        if not self.ok:
            from .errors import VerificationFailure

            exc_type = exc_type or VerificationFailure
            name = self.failures()[0]
            c = self.checks[name]
            raise exc_type(f"{name} fails (residual {c.residual:.3e}) {c.detail}".strip())
        return self

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": {k: {"ok": bool(c.ok), "residual": float(c.residual), "detail": c.detail}
                       for k, c in self.checks.items()},
            "values": dict(self.values),
        }


# --------------------------------------------------------------------------
# construction and comparison

def as_matrix(M, name: str = "matrix") -> Matrix:
    """Return ``M`` as a square, finite complex128 array."""
    arr = np.asarray(M, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise OrderMismatch(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def same_order(*mats: Matrix) -> int:
    n = mats[0].shape[0]
    for M in mats[1:]:
        if M.shape != (n, n):
            raise OrderMismatch(f"orders differ: {mats[0].shape} vs {M.shape}")
    return n


def ones(n: int) -> Matrix:
    return np.ones((n, n), dtype=np.complex128)


def eye(n: int) -> Matrix:
    return np.eye(n, dtype=np.complex128)


def unit_matrices(n: int) -> np.ndarray:
    """Stack of the standard basis matrices, shape ``(n*n, n, n)``; slot i*n+j holds E_ij."""
    E = np.zeros((n * n, n, n), dtype=np.complex128)
    idx = np.arange(n * n)
    E[idx, idx // n, idx % n] = 1.0
    return E


def max_residual(x, y) -> float:
    d = np.abs(np.asarray(x) - np.asarray(y))
    return float(d.max()) if d.size else 0.0


def close(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    x = np.asarray(x)
    y = np.asarray(y)
    bound = tol.abs_eps + tol.rel_eps * np.maximum(np.abs(x), np.abs(y))
    return bool(np.all(np.abs(x - y) <= bound))


def compare(x, y, tol: Tolerance = DEFAULT_TOL, detail: str = "") -> Check:
    return Check(close(x, y, tol), max_residual(x, y), detail)


def is_invertible(A: Matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    s = np.linalg.svd(A, compute_uv=False)
    return bool(s[0] > 0 and s[-1] > tol.rank_eps * s[0])


def is_schur_invertible(A: Matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    return bool(np.min(np.abs(A)) > tol.abs_eps)


def require_invertible(A: Matrix, name: str, tol: Tolerance = DEFAULT_TOL) -> None:
    if not is_invertible(A, tol):
        raise NotInvertible(f"{name} is singular within rank tolerance {tol.rank_eps:g}")


def require_schur_invertible(A: Matrix, name: str, tol: Tolerance = DEFAULT_TOL) -> None:
    if not is_schur_invertible(A, tol):
        i, j = np.unravel_index(np.argmin(np.abs(A)), A.shape)
        raise NotSchurInvertible(f"{name} has a zero entry at ({i}, {j})")


def is_diagonal(D: Matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    off = D - np.diag(np.diag(D))
    return bool(np.all(np.abs(off) <= tol.abs_eps))


def is_permutation_matrix(P: Matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    P = np.asarray(P)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        return False
    zero_one = np.all((np.abs(P) <= tol.abs_eps) | (np.abs(P - 1) <= tol.abs_eps))
    rounded = np.rint(P.real)
    return bool(zero_one and np.all(rounded.sum(0) == 1) and np.all(rounded.sum(1) == 1))


def permutation_order(P: Matrix) -> int:
    """Multiplicative order of a permutation matrix (lcm of cycle lengths)."""
    perm = np.argmax(np.rint(np.abs(P)), axis=0)  # column j has its 1 in row perm[j]
    seen = np.zeros(len(perm), dtype=bool)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, j = 0, start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


# --------------------------------------------------------------------------
# Schur calculus

def schur_product(A, B) -> Matrix:
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    same_order(A, B)
    return A * B


def schur_inverse(A, tol: Tolerance = DEFAULT_TOL) -> Matrix:
    """Entrywise reciprocal; raises :class:`ZeroEntry` on a vanishing entry."""
    A = as_matrix(A, "A")
    small = np.abs(A) <= tol.abs_eps
    if small.any():
        i, j = np.argwhere(small)[0]
        raise ZeroEntry(int(i), int(j), complex(A[i, j]))
    return 1.0 / A


def is_type_ii(A, tol: Tolerance = DEFAULT_TOL) -> Check:
    """A is type II when ``A (A^{-s})^T = n I`` (A^{-s} the Schur inverse)."""
    A = as_matrix(A, "A")
    if not is_schur_invertible(A, tol):
        return Check(False, math.inf, "not Schur invertible")
    n = A.shape[0]
    return compare(A @ (1.0 / A).T, n * eye(n), tol, "A (A^-s)^T vs nI")


def eigvec_table(A, B) -> np.ndarray:
    """Array ``Y`` of shape (n, n, n) with ``Y[i, j] = A e_i o B e_j``."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    same_order(A, B)
    return A.T[:, None, :] * B.T[None, :, :]


# --------------------------------------------------------------------------
# endomorphisms of the matrix space

class Endomorphism:
    """Linear map on n x n matrices, applied lazily to stacks ``(..., n, n)``."""

    n: int

    def __call__(self, M: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __matmul__(self, other: "Endomorphism") -> "Composite":
        """``(f @ g)(M) = f(g(M))``."""
        left = self.parts if isinstance(self, Composite) else (self,)
        right = other.parts if isinstance(other, Composite) else (other,)
        return Composite(left + right)

    def matrix(self) -> np.ndarray:
        """Materialize as an n^2 x n^2 matrix acting on row-major vectorizations."""
        n = self.n
        images = self(unit_matrices(n))
        return images.reshape(n * n, n * n).T

    def on_basis(self) -> np.ndarray:
        return self(unit_matrices(self.n))


@dataclass(frozen=True, eq=False)
class LeftMult(Endomorphism):
    C: np.ndarray

    @property
    def n(self) -> int:
        return self.C.shape[0]

    def __call__(self, M):
        return self.C @ M


@dataclass(frozen=True, eq=False)
class SchurMult(Endomorphism):
    C: np.ndarray

    @property
    def n(self) -> int:
        return self.C.shape[0]

    def __call__(self, M):
        return self.C * M


@dataclass(frozen=True, eq=False)
class RightMultTranspose(Endomorphism):
    C: np.ndarray

    @property
    def n(self) -> int:
        return self.C.shape[0]

    def __call__(self, M):
        return M @ self.C.T


@dataclass(frozen=True, eq=False)
class Composite(Endomorphism):
    """Composition; ``parts[0]`` is applied last (right-to-left, like ∘)."""

    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise ValueError("empty composite")
        n = self.parts[0].n
        if any(p.n != n for p in self.parts):
            raise OrderMismatch("composite of endomorphisms of different orders")

    @property
    def n(self) -> int:
        return self.parts[0].n

    def __call__(self, M):
        for part in reversed(self.parts):
            M = part(M)
        return M


def X(C) -> LeftMult:
    return LeftMult(as_matrix(C, "C"))


def Delta(C) -> SchurMult:
    return SchurMult(as_matrix(C, "C"))


def Y(C) -> RightMultTranspose:
    return RightMultTranspose(as_matrix(C, "C"))


def compose(*maps: Endomorphism) -> Composite:
    return Composite(tuple(maps))


def apply_endomorphism(e: Endomorphism, M) -> Matrix:
    M = np.asarray(M, dtype=np.complex128)
    if M.shape[-2:] != (e.n, e.n):
        raise OrderMismatch(f"endomorphism of order {e.n} applied to shape {M.shape}")
    return e(M)


def operators_equal(lhs: Endomorphism, rhs: Endomorphism, tol: Tolerance = DEFAULT_TOL) -> Check:
    """Compare two endomorphisms on every standard basis matrix E_ij."""
    if lhs.n != rhs.n:
        raise OrderMismatch("endomorphisms of different orders")
    E = unit_matrices(lhs.n)
    return compare(lhs(E), rhs(E), tol)


def schur_multiplier_of(op: Endomorphism, tol: Tolerance = DEFAULT_TOL) -> Matrix | None:
    """Return S when ``op == Delta_S``, else None.

    ``op`` is a Schur multiplier exactly when it maps each E_ij to a multiple of E_ij.
    """
    n = op.n
    images = op(unit_matrices(n))
    idx = np.arange(n * n)
    S = images[idx, idx // n, idx % n].reshape(n, n)
    if not close(images, S.reshape(-1, 1, 1) * unit_matrices(n), tol):
        return None
    return S


@dataclass(frozen=True)
class ExchangeReport:
    """Truth values of the two exchanged identities; ok when they agree."""

    first: Check
    second: Check

    @property
    def ok(self) -> bool:
        return self.first.ok == self.second.ok

    def __bool__(self) -> bool:
        return self.ok


def verify_exchange(A, B, C, Q, R, S, tol: Tolerance = DEFAULT_TOL) -> ExchangeReport:
    """Check the exchange biconditional on the standard basis.

    ``X_A Delta_B X_C = Delta_Q X_R Delta_S`` holds exactly when
    ``X_A Delta_C X_B = Delta_R X_Q Delta_{S^T}`` does.  The report is truthy
    when both identities have the same truth value.
    """
    A, B, C, Q, R, S = (as_matrix(M) for M in (A, B, C, Q, R, S))
    same_order(A, B, C, Q, R, S)
    first = operators_equal(compose(X(A), Delta(B), X(C)), compose(Delta(Q), X(R), Delta(S)), tol)
    second = operators_equal(compose(X(A), Delta(C), X(B)), compose(Delta(R), X(Q), Delta(S.T)), tol)
    return ExchangeReport(first, second)


def kron(*mats: Matrix) -> Matrix:
    out = np.ones((1, 1), dtype=np.complex128)
    for M in mats:
        out = np.kron(out, M)
    return out


def blocks(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return np.block([[np.asarray(b, dtype=np.complex128) for b in row] for row in grid])


def split_blocks(M: Matrix, k: int) -> list[list[Matrix]]:
    """Split an (k*m) x (k*m) matrix into a k x k grid of m x m blocks."""
    size = M.shape[0]
    if size % k:
        raise OrderMismatch(f"order {size} not divisible by {k}")
    m = size // k
    return [[M[p * m:(p + 1) * m, q * m:(q + 1) * m] for q in range(k)] for p in range(k)]


def diag(values: Iterable[complex]) -> Matrix:
    return np.diag(np.asarray(list(values), dtype=np.complex128))
