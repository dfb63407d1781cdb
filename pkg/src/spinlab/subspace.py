"""Subspaces of the n x n complex matrices.

A :class:`MatrixSubspace` stores an orthonormal basis of row-major
vectorized matrices (inner product ``<X, Y> = sum conj(X) * Y``).  Rank
decisions use a singular-value cutoff relative to the largest singular
value; membership decisions use the relative projection residual
``||M - proj(M)|| / ||M||``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .core import DEFAULT_TOL, Tolerance, eye, ones
from .errors import OrderMismatch


def _orthonormal_rows(vectors: np.ndarray, tol: Tolerance) -> np.ndarray:
    """Orthonormal basis (as rows) of the row space of ``vectors``."""
    if vectors.shape[0] == 0:
        return vectors
    _, s, vh = np.linalg.svd(vectors, full_matrices=False)
    if s.size == 0 or s[0] <= tol.abs_eps:
        return vectors[:0]
    rank = int(np.sum(s > tol.rank_eps * s[0]))
    return vh[:rank]


@dataclass(frozen=True, eq=False)
class SubspaceFlags:
    contains_identity: bool
    contains_all_ones: bool
    schur_closed: bool
    transpose_closed: bool
    mult_closed: bool
    commutative: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


class MatrixSubspace:
    """A subspace of n x n matrices with an orthonormal basis."""

    def __init__(self, n: int, rows: np.ndarray):
        rows = np.asarray(rows, dtype=np.complex128).reshape(-1, n * n)
        self.n = n
        self._rows = rows
        self._rows.setflags(write=False)

    # ---- construction -------------------------------------------------
    @classmethod
    def span(cls, mats: Iterable[np.ndarray], n: int | None = None,
             tol: Tolerance = DEFAULT_TOL) -> "MatrixSubspace":
        mats = [np.asarray(M, dtype=np.complex128) for M in mats]
        if n is None:
            if not mats:
                raise ValueError("cannot infer the order of an empty span")
            n = mats[0].shape[0]
        for M in mats:
            if M.shape != (n, n):
                raise OrderMismatch(f"expected {n}x{n} matrices, got {M.shape}")
        if not mats:
            return cls(n, np.zeros((0, n * n), dtype=np.complex128))
        vecs = np.stack([M.reshape(-1) for M in mats])
        return cls(n, _orthonormal_rows(vecs, tol))

    @classmethod
    def zero(cls, n: int) -> "MatrixSubspace":
        return cls(n, np.zeros((0, n * n), dtype=np.complex128))

    @classmethod
    def full(cls, n: int) -> "MatrixSubspace":
        return cls(n, np.eye(n * n, dtype=np.complex128))

    # ---- basic queries -------------------------------------------------
    @property
    def dim(self) -> int:
        return self._rows.shape[0]

    @property
    def basis(self) -> np.ndarray:
        """Orthonormal basis as an array of shape (dim, n, n)."""
        return self._rows.reshape(-1, self.n, self.n)

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    def coordinates(self, M: np.ndarray) -> np.ndarray:
        return self._rows.conj() @ np.asarray(M, dtype=np.complex128).reshape(-1)

    def project(self, M: np.ndarray) -> np.ndarray:
        return (self.coordinates(M) @ self._rows).reshape(self.n, self.n)

    def residual(self, M: np.ndarray) -> float:
        """Relative distance of M from the subspace (0 for M = 0)."""
        M = np.asarray(M, dtype=np.complex128)
        norm = np.linalg.norm(M)
        if norm == 0:
            return 0.0
        return float(np.linalg.norm(M - self.project(M)) / norm)

    def contains(self, M: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.residual(M) <= tol.angle_eps

    def absolute_residual(self, M: np.ndarray) -> float:
        M = np.asarray(M, dtype=np.complex128)
        return float(np.linalg.norm(M - self.project(M)))

    def max_residual_of(self, mats: Iterable[np.ndarray]) -> float:
        return max((self.residual(M) for M in mats), default=0.0)

    def distance(self, other: "MatrixSubspace") -> float:
        """Largest mutual projection residual of the two orthonormal bases."""
        if self.n != other.n:
            return float("inf")
        return max(self.max_residual_of(other.basis), other.max_residual_of(self.basis))

    def equals(self, other: "MatrixSubspace", tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.n == other.n and self.dim == other.dim and self.distance(other) <= tol.angle_eps

    def issubspace(self, other: "MatrixSubspace", tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.n == other.n and other.max_residual_of(self.basis) <= tol.angle_eps

    # ---- derived subspaces ----------------------------------------------
    def intersect(self, other: "MatrixSubspace", tol: Tolerance = DEFAULT_TOL) -> "MatrixSubspace":
        """Intersection via principal angles between the two bases."""
        if self.n != other.n:
            raise OrderMismatch("subspaces of different orders")
        if self.dim == 0 or other.dim == 0:
            return MatrixSubspace.zero(self.n)
        U, V = self._rows, other._rows
        outside = U - (U @ V.conj().T) @ V  # component of each U row orthogonal to V
        _, s, vh = np.linalg.svd(outside.T, full_matrices=True)
        s_full = np.zeros(U.shape[0])
        s_full[: s.size] = s
        keep = s_full <= tol.angle_eps
        coeffs = vh[keep].conj()
        return MatrixSubspace(self.n, _orthonormal_rows(coeffs @ U, tol))

    def __add__(self, other: "MatrixSubspace") -> "MatrixSubspace":
        return MatrixSubspace.span(list(self.basis) + list(other.basis), self.n)

    def map(self, f: Callable[[np.ndarray], np.ndarray], n: int | None = None,
            tol: Tolerance = DEFAULT_TOL) -> "MatrixSubspace":
        images = [f(M) for M in self.basis]
        return MatrixSubspace.span(images, n or (images[0].shape[0] if images else self.n), tol)

    def transpose(self) -> "MatrixSubspace":
        return self.map(lambda M: M.T)

    # ---- structure ------------------------------------------------------
    def flags(self, tol: Tolerance = DEFAULT_TOL) -> SubspaceFlags:
        n, basis = self.n, self.basis
        # products of unit-norm basis elements may cancel to rounding noise, so
        # closure is judged by the absolute residual (relative to the factors)
        inside = lambda M: self.absolute_residual(M) <= tol.angle_eps
        pairs = [(a, b) for a in range(self.dim) for b in range(a, self.dim)]
        commutative = all(
            np.linalg.norm(basis[a] @ basis[b] - basis[b] @ basis[a]) <= tol.angle_eps
            for a, b in pairs
        )
        return SubspaceFlags(
            contains_identity=self.contains(eye(n), tol),
            contains_all_ones=self.contains(ones(n), tol),
            schur_closed=all(inside(basis[a] * basis[b]) for a, b in pairs),
            transpose_closed=all(inside(M.T) for M in basis),
            mult_closed=all(
                inside(basis[a] @ basis[b]) and inside(basis[b] @ basis[a])
                for a, b in pairs
            ),
            commutative=commutative,
        )

    def __repr__(self) -> str:
        return f"MatrixSubspace(n={self.n}, dim={self.dim})"
