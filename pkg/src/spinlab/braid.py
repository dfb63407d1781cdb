"""Braid group representations from a pair of matrices.

For a pair (A, B) of n x n matrices and m strands, the generators act on
``(C^n)^{(x)k}`` with ``k = ceil(m/2)``:

* ``g_{2h-1}`` applies A to tensor factor h;
* ``g_{2h}`` multiplies ``e_{r_1} (x) ... (x) e_{r_k}`` by ``B[r_h, r_{h+1}]``.

Vectors are stored as arrays of shape ``(batch, n, ..., n)`` and nothing of
size ``n^k x n^k`` is ever formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import DEFAULT_TOL, Check, Report, Tolerance, as_matrix, require_invertible, require_schur_invertible, same_order
from .errors import DimensionTooLarge
from .jones import check_one_sided

DIMENSION_CAP = 2 ** 18
FULL_BASIS_LIMIT = 1024
CHUNK = 256


@dataclass(frozen=True)
class BraidWord:
    """A word in the generators; letter i > 0 is sigma_i, -i its inverse."""

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("a braid needs at least two strands")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise ValueError(f"generator index {x} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        return cls(strands, tuple(int(tok) for tok in text.replace(",", " ").split()))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ValueError("words on different numbers of strands")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True, eq=False)
class BraidRep:
    A: np.ndarray
    B: np.ndarray
    m: int
    A_inv: np.ndarray
    B_schur_inv: np.ndarray

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def k(self) -> int:
        return math.ceil(self.m / 2)

    @property
    def dimension(self) -> int:
        return self.n ** self.k

    def describe(self, i: int) -> str:
        if i % 2:
            return f"g_{i}: A on tensor factor {(i + 1) // 2}"
        return f"g_{i}: weight B[r_{i // 2}, r_{i // 2 + 1}]"

    # -- action on batches of tensors -------------------------------------
    def apply_generator(self, X: np.ndarray, letter: int) -> np.ndarray:
        """Apply g_i (letter i) or its inverse (letter -i) to every tensor of the batch."""
        i = abs(letter)
        if i % 2:
            factor = (i + 1) // 2  # 1-based tensor factor
            M = self.A if letter > 0 else self.A_inv
            Y = np.tensordot(M, X, axes=([1], [factor]))
            return np.moveaxis(Y, 0, factor)
        h = i // 2
        weight = self.B if letter > 0 else self.B_schur_inv
        shape = [1] * (self.k + 1)
        shape[h], shape[h + 1] = self.n, self.n
        return X * weight.reshape(shape)

    def apply(self, word: BraidWord | Sequence[int], X: np.ndarray) -> np.ndarray:
        """Image of the batch under the word (the last letter acts first)."""
        letters = word.letters if isinstance(word, BraidWord) else tuple(word)
        for letter in reversed(letters):
            X = self.apply_generator(X, letter)
        return X

    def basis_chunks(self, chunk: int = CHUNK) -> Iterable[tuple[np.ndarray, np.ndarray]]:
        """Standard basis tensors in batches, with their flat indices."""
        N = self.dimension
        for start in range(0, N, chunk):
            idx = np.arange(start, min(N, start + chunk))
            X = np.zeros((len(idx), N), dtype=np.complex128)
            X[np.arange(len(idx)), idx] = 1.0
            yield idx, X.reshape((len(idx),) + (self.n,) * self.k)


def build_rep(A, B, m: int, cap: int = DIMENSION_CAP, tol: Tolerance = DEFAULT_TOL) -> BraidRep:
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    n = same_order(A, B)
    if m < 2:
        raise ValueError("a braid needs at least two strands")
    k = math.ceil(m / 2)
    if n ** k > cap:
        raise DimensionTooLarge(f"n^k = {n}^{k} exceeds the cap {cap}")
    require_invertible(A, "A", tol)
    require_schur_invertible(B, "B", tol)
    return BraidRep(A, B, m, np.linalg.inv(A), 1.0 / B)


def _probe_vectors(rep: BraidRep, seed: int = 0) -> np.ndarray:
    """The full standard basis when small, otherwise a fixed batch of random tensors."""
    N = rep.dimension
    shape = (rep.n,) * rep.k
    if N <= FULL_BASIS_LIMIT:
        return np.eye(N, dtype=np.complex128).reshape((N,) + shape)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((64, N)) + 1j * rng.standard_normal((64, N))
    return X.reshape((64,) + shape)


def _same_action(rep: BraidRep, X: np.ndarray, left: Sequence[int], right: Sequence[int], tol: Tolerance) -> Check:
    L, R = rep.apply(left, X), rep.apply(right, X)
    scale = max(1.0, float(np.abs(L).max()), float(np.abs(R).max()))
    res = float(np.abs(L - R).max())
    return Check(res <= tol.abs_eps + tol.rel_eps * scale, res)


def verify_braid_relations(rep: BraidRep, tol: Tolerance = DEFAULT_TOL) -> Report:
    """Braid and far-commutation relations, cross-checked against the pair conditions.

    The relation for (1, 2) holds exactly when (A, B) is a one-sided Jones
    pair and the relation for (2, 3) exactly when (A, B^T) is one.
    """
    X = _probe_vectors(rep)
    m = rep.m
    report = Report(values={"n": rep.n, "m": m, "k": rep.k})
    for i in range(1, m - 1):
        report.checks[f"braid ({i},{i + 1})"] = _same_action(rep, X, (i, i + 1, i), (i + 1, i, i + 1), tol)
    for i in range(1, m):
        for j in range(i + 2, m):
            report.checks[f"commute ({i},{j})"] = _same_action(rep, X, (i, j), (j, i), tol)
    for i in range(1, m):
        report.checks[f"inverse {i}"] = _same_action(rep, X, (i, -i), (), tol)

    first = check_one_sided(rep.A, rep.B, tol)
    second = check_one_sided(rep.A, rep.B.T, tol)
    report.values["one_sided_A_B"] = first.ok
    report.values["one_sided_A_BT"] = second.ok
    if m >= 3:
        agree = report.checks["braid (1,2)"].ok == first.ok
        report.checks["(1,2) relation matches one-sided (A, B)"] = Check(agree, 0.0 if agree else 1.0)
    if m >= 4:
        agree = report.checks["braid (2,3)"].ok == second.ok
        report.checks["(2,3) relation matches one-sided (A, B^T)"] = Check(agree, 0.0 if agree else 1.0)
    return report


def braid_relations_hold(report: Report) -> bool:
    return all(c.ok for name, c in report.checks.items() if name.startswith(("braid", "commute", "inverse")))


def link_normalization(A, B) -> tuple[np.ndarray, np.ndarray]:
    """Rescale an invertible pair by ``sqrt(n)/tr(A)`` so that the Markov trace conditions hold."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    n = A.shape[0]
    scale = np.sqrt(n) / np.trace(A)
    return scale * A, scale * B


def link_conditions(A, B, tol: Tolerance = DEFAULT_TOL) -> Check:
    """``A o I = A^{-1} o I = n^{-1/2} I`` and ``B J = B^{-s} J = sqrt(n) J``."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    n = A.shape[0]
    r = np.sqrt(n)
    res = max(
        float(np.abs(np.diag(A) - 1 / r).max()),
        float(np.abs(np.diag(np.linalg.inv(A)) - 1 / r).max()),
        float(np.abs(B.sum(axis=1) - r).max()),
        float(np.abs((1.0 / B).sum(axis=1) - r).max()),
    )
    return Check(res <= tol.abs_eps + tol.rel_eps * r, res)


def braid_trace(rep: BraidRep, word: BraidWord, normalize: bool = False) -> complex:
    """Trace of the endomorphism represented by the word.

    With ``normalize`` the pair is first rescaled by ``sqrt(n)/tr(A)``.
    The trace is accumulated chunk by chunk over the standard basis.
    """
    if word.strands != rep.m:
        raise ValueError(f"word has {word.strands} strands, representation has {rep.m}")
    if normalize:
        A, B = link_normalization(rep.A, rep.B)
        rep = BraidRep(A, B, rep.m, np.linalg.inv(A), 1.0 / B)
    partial = []
    for idx, X in rep.basis_chunks():
        Y = rep.apply(word, X).reshape(len(idx), -1)
        partial.append(Y[np.arange(len(idx)), idx].sum())
    return complex(math.fsum(z.real for z in partial) + 1j * math.fsum(z.imag for z in partial))
