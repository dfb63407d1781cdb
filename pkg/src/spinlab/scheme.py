"""Association schemes from 01-matrices, triple regularity and hyper-duality.

Relations are stored as an integer matrix ``R`` with ``R[x, y] = i`` when
``(A_i)[x, y] = 1``.  Triple regularity asks that the number of w with
``R[w, x] = i``, ``R[w, y] = j``, ``R[w, z] = k`` depends only on
``(i, j, k)`` and the type ``(R[x, y], R[x, z], R[y, z])`` of the triple.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    Check,
    Delta,
    Report,
    Tolerance,
    X,
    as_matrix,
    compose,
    eye,
)
from .errors import AxiomFailure, TooLarge
from .nomura import SchemeData, assemble_scheme, duality_map, nomura_algebra, principal_idempotents, type_ii_nomura
from .spin import loop_variable_from_sums
from .subspace import MatrixSubspace

log = logging.getLogger(__name__)

TRIPLE_CAP = 150
SPAN_CHECK_CAP = 12
SPAN_ENTRY_CAP = 2 ** 24  # entries of the n^4 x D^3 coefficient matrix
HYPER_CAP = 144


# --------------------------------------------------------------------------
# axioms

def validate_scheme(matrices: Sequence, tol: Tolerance = DEFAULT_TOL) -> SchemeData:
    """Check the association-scheme axioms and assemble both bases.

    Axioms: (01) entries are 0 or 1, (a) A_0 = I, (b) the sum is J,
    (c) closure under transpose, (d) products lie in the span with
    non-negative integer coefficients, (e) commutativity.
    """
    A = [as_matrix(M, f"A_{i}") for i, M in enumerate(matrices)]
    if not A:
        raise AxiomFailure("b", "no matrices")
    n = A[0].shape[0]
    eps = tol.abs_eps
    for i, M in enumerate(A):
        if M.shape != (n, n):
            raise AxiomFailure("01", f"A_{i} has shape {M.shape}")
        off = np.minimum(np.abs(M), np.abs(M - 1))
        if off.max() > eps:
            x, y = np.unravel_index(np.argmax(off), off.shape)
            raise AxiomFailure("01", (i, int(x), int(y)))
    A = [np.rint(M.real).astype(np.complex128) for M in A]
    if np.abs(A[0] - eye(n)).max() > eps:
        raise AxiomFailure("a", "A_0 is not the identity")
    total = sum(A).real
    if np.abs(total - 1).max() > eps:
        x, y = np.unravel_index(np.argmax(np.abs(total - 1)), total.shape)
        raise AxiomFailure("b", (int(x), int(y)))
    for i, M in enumerate(A):
        if not any(np.abs(M.T - N).max() <= eps for N in A):
            raise AxiomFailure("c", i)
    sizes = [float(M.sum().real) for M in A]
    for i, j in itertools.product(range(len(A)), repeat=2):
        prod = A[i] @ A[j]
        coeffs = [np.sum(A[k] * prod).real / sizes[k] for k in range(len(A))]
        recon = sum(c * M for c, M in zip(coeffs, A))
        if np.abs(recon - prod).max() > eps * max(1.0, np.abs(prod).max()):
            raise AxiomFailure("d", (i, j))
        if any(abs(c - round(c)) > eps or round(c) < 0 for c in coeffs):
            raise AxiomFailure("d", (i, j))
        if np.abs(prod - A[j] @ A[i]).max() > eps:
            raise AxiomFailure("e", (i, j))
    space = MatrixSubspace.span(A, n, tol)
    E = principal_idempotents(space, tol)
    return assemble_scheme(A, E, tol)


def relation_matrix(sd: SchemeData) -> np.ndarray:
    R = np.zeros((sd.n, sd.n), dtype=np.int64)
    for i, M in enumerate(sd.schur_basis):
        R[np.abs(M) > 0.5] = i
    return R


# --------------------------------------------------------------------------
# triple regularity

@dataclass(frozen=True, eq=False)
class TripleRegularity:
    """Outcome of the triple count.

    ``table[i, j, k, r, s, t]`` is the number of w in relations (i, j, k) to
    (x, y, z) for any triple of type (r, s, t) (zero for types that do not
    occur); it is only meaningful when ``regular`` is true.
    """

    regular: bool
    table: np.ndarray | None
    types: tuple
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.regular


def triply_regular_check(sd: SchemeData, cap: int = TRIPLE_CAP) -> TripleRegularity:
    n = sd.n
    if n > cap:
        raise TooLarge(f"n = {n} exceeds the triple-count cap {cap}")
    R = relation_matrix(sd)
    D = len(sd.schur_basis)
    D3 = D ** 3
    offsets = np.arange(n)[None, :] * D3
    table = np.zeros((D,) * 6, dtype=np.int64)
    seen = np.zeros((D, D, D), dtype=bool)
    for x in range(n):
        if x and x % 25 == 0:
            log.info("triple count: %d of %d base points", x, n)
        for y in range(n):
            base = R[:, x] * D + R[:, y]
            codes = base[:, None] * D + R + offsets  # (w, z)
            counts = np.bincount(codes.ravel(), minlength=n * D3).reshape(n, D, D, D)
            r = R[x, y]
            for z in range(n):
                s, t = R[x, z], R[y, z]
                if not seen[r, s, t]:
                    seen[r, s, t] = True
                    table[:, :, :, r, s, t] = counts[z]
                elif not np.array_equal(table[:, :, :, r, s, t], counts[z]):
                    return TripleRegularity(False, None, (), (x, y, z))
    types = tuple(map(tuple, np.argwhere(seen).tolist()))
    return TripleRegularity(True, table, types)


def triple_span_check(sd: SchemeData, tol: Tolerance = DEFAULT_TOL, cap: int = SPAN_CHECK_CAP) -> Report:
    """Operator form of triple regularity, solved as a linear system.

    Each ``X_{A_i^T} Delta_{A_j} X_{A_k}`` is expanded over the operators
    ``Delta_{A_r} X_{A_s} Delta_{A_t^T}``; the coefficients are returned in
    ``values["kappa"]`` with the same index order as the count table.
    """
    n = sd.n
    if n > cap:
        raise TooLarge(f"n = {n} exceeds the span-check cap {cap}")
    A = sd.schur_basis
    D = len(A)
    if n ** 4 * D ** 3 > SPAN_ENTRY_CAP:
        raise TooLarge(f"n^4 D^3 = {n ** 4 * D ** 3} coefficients exceed the cap {SPAN_ENTRY_CAP}")
    rhs_ops = np.stack([compose(Delta(A[r]), X(A[s]), Delta(A[t].T)).matrix().reshape(-1)
                        for r, s, t in itertools.product(range(D), repeat=3)], axis=1)
    kappa = np.zeros((D,) * 6)
    worst = 0.0
    for i, j, k in itertools.product(range(D), repeat=3):
        target = compose(X(A[i].T), Delta(A[j]), X(A[k])).matrix().reshape(-1)
        coeffs, *_ = np.linalg.lstsq(rhs_ops, target, rcond=None)
        worst = max(worst, float(np.abs(rhs_ops @ coeffs - target).max()))
        kappa[i, j, k] = coeffs.real.reshape(D, D, D)
    rep = Report(values={"kappa": kappa})
    rep.checks["X Delta X in span of Delta X Delta"] = Check(worst <= tol.angle_eps * n, worst)
    return rep


# --------------------------------------------------------------------------
# hyper-duality

def hyper_duality_check(W, d=None, cap: int = HYPER_CAP, tol: Tolerance = DEFAULT_TOL) -> Report:
    """Conjugation by ``Lambda = X_{W^T} Delta_{W^{-s}} X_W`` on the n^2-dimensional space.

    Checks that Lambda also equals ``d Delta_{W^{-s}} X_W Delta_{W^{-sT}}``,
    that conjugation sends ``X_R`` to ``Delta_{Theta(R)}`` for R in N_W and
    ``Delta_S`` to ``X_R`` for the algebra of ``(W^{-s}, W)``, and that
    applying it twice transposes.
    """
    W = as_matrix(W, "W")
    n = W.shape[0]
    if n * n > cap:
        raise TooLarge(f"n^2 = {n * n} exceeds the cap {cap}")
    Ws = 1.0 / W
    if d is None:
        d = loop_variable_from_sums(W)
    Lam = compose(X(W.T), Delta(Ws), X(W)).matrix()
    Lam_inv = np.linalg.inv(Lam)
    conj = lambda M: Lam_inv @ M @ Lam
    scale = max(1.0, float(np.abs(Lam).max()))
    rep = Report(values={"n": n})

    other = complex(d) * compose(Delta(Ws), X(W), Delta(Ws.T)).matrix()
    res = float(np.abs(Lam - other).max())
    rep.checks["two expressions of Lambda agree"] = Check(res <= tol.angle_eps * scale, res)

    nd = type_ii_nomura(W, tol)
    worst_a = worst_sq = 0.0
    for R in nd.basis:
        S = duality_map(nd, R, verify=False)
        XR = X(R).matrix()
        worst_a = max(worst_a, float(np.abs(conj(XR) - Delta(S).matrix()).max()))
        worst_sq = max(worst_sq, float(np.abs(conj(conj(XR)) - X(R.T).matrix()).max()))
    nd2 = nomura_algebra(Ws, W, tol)
    worst_b = 0.0
    for R in nd2.basis:
        S = duality_map(nd2, R, verify=False)
        worst_b = max(worst_b, float(np.abs(conj(Delta(S).matrix()) - X(R).matrix()).max()))
    bound = tol.angle_eps * n
    rep.checks["X_R conjugates to Delta_Theta(R)"] = Check(worst_a <= bound, worst_a)
    rep.checks["Delta_S conjugates to X_R"] = Check(worst_b <= bound, worst_b)
    rep.checks["conjugating twice transposes"] = Check(worst_sq <= bound, worst_sq)
    return rep
