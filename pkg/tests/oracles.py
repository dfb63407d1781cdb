"""Brute-force reference computations, deliberately independent of spinlab internals."""

from __future__ import annotations

import itertools
from functools import reduce

import numpy as np


def nomura_by_brute_force(A: np.ndarray, B: np.ndarray, rank_eps: float = 1e-8) -> np.ndarray:
    """Orthonormal basis (rows of vec(M)) of all M having every A e_i o B e_j as an eigenvector.

    For each vector y the condition is ``(I - y y^*/|y|^2) M y = 0``, which is
    linear in vec(M); the algebra is the null space of all these constraints
    stacked together over the full n^2-dimensional matrix space.
    """
    n = A.shape[0]
    rows = []
    for i, j in itertools.product(range(n), repeat=2):
        y = A[:, i] * B[:, j]
        proj = np.eye(n) - np.outer(y, y.conj()) / np.vdot(y, y)
        # (proj M y)_r = sum_{s,t} proj[r, s] M[s, t] y[t]   ->  coefficient of M[s, t]
        rows.append(np.einsum("rs,t->rst", proj, y).reshape(n, n * n))
    C = np.concatenate(rows)
    _, s, vh = np.linalg.svd(C)
    rank = int(np.sum(s > rank_eps * s[0]))
    null = vh[rank:].conj()
    return null


def eigenvalue_table(M: np.ndarray, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """S[i, j] with M (A e_i o B e_j) = S[i, j] (A e_i o B e_j), by least squares per vector."""
    n = A.shape[0]
    S = np.zeros((n, n), dtype=np.complex128)
    for i, j in itertools.product(range(n), repeat=2):
        y = A[:, i] * B[:, j]
        S[i, j] = np.vdot(y, M @ y) / np.vdot(y, y)
    return S


def projection_residual(basis_rows: np.ndarray, M: np.ndarray) -> float:
    v = M.reshape(-1)
    proj = basis_rows.T @ (basis_rows.conj() @ v)
    return float(np.linalg.norm(v - proj) / max(np.linalg.norm(v), 1e-300))


# --------------------------------------------------------------------------
# dense braid representation

def dense_generator(A: np.ndarray, B: np.ndarray, m: int, i: int) -> np.ndarray:
    """Full n^k x n^k matrix of generator i acting on k = ceil(m/2) tensor factors."""
    n = A.shape[0]
    k = (m + 1) // 2
    if i % 2:
        h = (i + 1) // 2
        factors = [np.eye(n)] * (h - 1) + [A] + [np.eye(n)] * (k - h)
        return reduce(np.kron, factors)
    h = i // 2
    diag = np.zeros(n ** k, dtype=np.complex128)
    for idx, r in enumerate(itertools.product(range(n), repeat=k)):
        diag[idx] = B[r[h - 1], r[h]]
    return np.diag(diag)


def dense_word(A: np.ndarray, B: np.ndarray, m: int, letters) -> np.ndarray:
    n = A.shape[0]
    k = (m + 1) // 2
    out = np.eye(n ** k, dtype=np.complex128)
    for letter in letters:
        g = dense_generator(A, B, m, abs(letter))
        out = out @ (g if letter > 0 else np.linalg.inv(g))
    return out


# --------------------------------------------------------------------------
# triple counting

def triple_counts(matrices) -> tuple[bool, dict]:
    """Plain quadruple loop: (regular?, {(type, (i, j, k)): count})."""
    n = matrices[0].shape[0]
    R = np.zeros((n, n), dtype=int)
    for idx, M in enumerate(matrices):
        R[np.asarray(M).real > 0.5] = idx
    table: dict = {}
    for x, y, z in itertools.product(range(n), repeat=3):
        kind = (R[x, y], R[x, z], R[y, z])
        counts: dict = {}
        for w in range(n):
            key = (R[w, x], R[w, y], R[w, z])
            counts[key] = counts.get(key, 0) + 1
        if kind in table:
            if table[kind] != counts:
                return False, {}
        else:
            table[kind] = counts
    flat = {(kind, ijk): c for kind, counts in table.items() for ijk, c in counts.items()}
    return True, flat
