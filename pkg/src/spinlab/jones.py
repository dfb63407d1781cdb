"""Jones pairs, four-weight spin models and gauge transformations.

A pair (A, B) with A invertible and B Schur invertible is a one-sided
Jones pair when ``X_A Delta_B X_A = Delta_B X_A Delta_B``; entrywise

    sum_x A[k, x] A[x, i] B[x, j] = B[i, j] A[k, i] B[k, j]   for all i, j, k.

It is a Jones pair when (A, B^T) is one-sided as well, and invertible
when in addition A is Schur invertible and B is invertible.  Invertible
Jones pairs are the same thing as four-weight spin models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import (
    DEFAULT_TOL,
    Check,
    Tolerance,
    as_matrix,
    compare,
    eye,
    is_diagonal,
    is_invertible,
    is_permutation_matrix,
    is_schur_invertible,
    is_type_ii,
    ones,
    permutation_order,
    require_invertible,
    require_schur_invertible,
    same_order,
)
from .errors import (
    InconsistentGauge,
    NotInvertiblePair,
    NotPermutation,
    SingularD,
    ValidationFailure,
)


def default_d(n: int, sign: int = 1) -> float:
    """Loop variable with d^2 = n; ``sign`` picks the branch."""
    return (1 if sign >= 0 else -1) * math.sqrt(n)


def _scaled_check(lhs: np.ndarray, rhs: np.ndarray, tol: Tolerance, detail: str = "") -> Check:
    """Entrywise comparison of an identity, reporting the worst index on failure."""
    diff = np.abs(lhs - rhs)
    bound = tol.abs_eps + tol.rel_eps * np.maximum(np.abs(lhs), np.abs(rhs))
    ok = bool(np.all(diff <= bound))
    resid = float(diff.max()) if diff.size else 0.0
    if not ok:
        where = np.unravel_index(np.argmax(diff - bound), diff.shape)
        detail = f"{detail} worst at {tuple(int(v) for v in where)}".strip()
    return Check(ok, resid, detail)


def one_sided_residual_table(A: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the scalar one-sided condition, indexed [k, i, j]."""
    lhs = np.einsum("kx,xi,xj->kij", A, A, B, optimize=True)
    rhs = B[None, :, :] * A[:, :, None] * B[:, None, :]
    return lhs, rhs


def check_one_sided(A, B, tol: Tolerance = DEFAULT_TOL) -> Check:
    """Evaluate the scalar one-sided Jones condition for every (i, j, k)."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    same_order(A, B)
    require_invertible(A, "A", tol)
    require_schur_invertible(B, "B", tol)
    lhs, rhs = one_sided_residual_table(A, B)
    return _scaled_check(lhs, rhs, tol, "one-sided condition [k, i, j]")


@dataclass(frozen=True, eq=False)
class JonesPair:
    A: np.ndarray
    B: np.ndarray
    one_sided: bool
    two_sided: bool
    invertible: bool
    d: complex | None = None
    a: complex | None = None
    residual: float = 0.0

    @property
    def n(self) -> int:
        return self.A.shape[0]


def check_jones_pair(A, B, tol: Tolerance = DEFAULT_TOL, d_sign: int = 1) -> JonesPair:
    """Certify (A, B) as one-sided / two-sided / invertible.

    For an invertible pair the consequences of invertibility are verified
    too (A and B type II, constant diagonal of A, constant line sums of B)
    and ``d = +-sqrt(n)`` and ``a = d tr(A)/n`` are recorded.
    """
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    n = same_order(A, B)
    first = check_one_sided(A, B, tol)
    second = check_one_sided(A, B.T, tol)
    two_sided = first.ok and second.ok
    residual = max(first.residual, second.residual)
    invertible = False
    d = a = None
    if two_sided and is_schur_invertible(A, tol) and is_invertible(B, tol):
        trace = np.trace(A)
        consequences = [
            is_type_ii(A, tol),
            is_type_ii(B, tol),
            compare(np.diag(A), np.full(n, trace / n), tol),
            compare(B @ ones(n), trace * ones(n), tol),
            compare(B.T @ ones(n), trace * ones(n), tol),
        ]
        invertible = all(consequences)
        if invertible:
            d = complex(default_d(n, d_sign))
            a = d * trace / n
    return JonesPair(A, B, first.ok, two_sided, invertible, d, a, residual)


def require_invertible_pair(jp: JonesPair) -> None:
    if not jp.invertible:
        raise NotInvertiblePair("pair is not an invertible Jones pair")


# --------------------------------------------------------------------------
# four-weight spin models

@dataclass(frozen=True, eq=False)
class FourWeightSpinModel:
    W1: np.ndarray
    W2: np.ndarray
    W3: np.ndarray
    W4: np.ndarray
    d: complex
    a: complex

    @property
    def n(self) -> int:
        return self.W1.shape[0]


@dataclass(frozen=True)
class FourWeightReport:
    checks: dict

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def first_failure(self) -> tuple[str, Check] | None:
        for name, c in self.checks.items():
            if not c.ok:
                return name, c
        return None

    def __bool__(self) -> bool:
        return self.ok


def check_four_weight(m: FourWeightSpinModel, tol: Tolerance = DEFAULT_TOL) -> FourWeightReport:
    """Evaluate conditions (I), (II) and (III) of a four-weight spin model."""
    W1, W2, W3, W4 = (as_matrix(M) for M in (m.W1, m.W2, m.W3, m.W4))
    n = same_order(W1, W2, W3, W4)
    d, a = complex(m.d), complex(m.a)
    J = ones(n)
    checks = {
        "d^2=n": compare(d * d, n, tol),
        "I:W1 diagonal": _scaled_check(np.diag(W1), np.full(n, a), tol),
        "I:W3 diagonal": _scaled_check(np.diag(W3), np.full(n, 1 / a), tol),
        "I:W2 row sums": _scaled_check(W2 @ J, d / a * J, tol),
        "I:W2 column sums": _scaled_check(W2.T @ J, d / a * J, tol),
        "I:W4 row sums": _scaled_check(W4 @ J, d * a * J, tol),
        "I:W4 column sums": _scaled_check(W4.T @ J, d * a * J, tol),
        "II:W1 o W3^T": _scaled_check(W1 * W3.T, J, tol),
        "II:W2 o W4^T": _scaled_check(W2 * W4.T, J, tol),
        "II:W1 W3": _scaled_check(W1 @ W3, n * eye(n), tol),
        "II:W2 W4": _scaled_check(W2 @ W4, n * eye(n), tol),
    }
    # (III), first form: sum_x W1[a,x] W1[x,b] W4[c,x] = d W1[a,b] W4[c,a] W4[c,b]
    lhs = np.einsum("ax,xb,cx->abc", W1, W1, W4, optimize=True)
    rhs = d * W1[:, :, None] * W4.T[:, None, :] * W4.T[None, :, :]
    checks["III:first"] = _scaled_check(lhs, rhs, tol, "[a, b, c]")
    # second form: sum_x W1[x,a] W1[b,x] W4[x,c] = d W1[b,a] W4[a,c] W4[b,c]
    lhs = np.einsum("xa,bx,xc->abc", W1, W1, W4, optimize=True)
    rhs = d * W1.T[:, :, None] * W4[:, None, :] * W4[None, :, :]
    checks["III:second"] = _scaled_check(lhs, rhs, tol, "[a, b, c]")
    return FourWeightReport(checks)


def _raise_first(report: FourWeightReport) -> None:
    failure = report.first_failure()
    if failure is None:
        return
    name, c = failure
    raise ValidationFailure(name, None, c.residual)


def to_four_weight(jp: JonesPair, tol: Tolerance = DEFAULT_TOL, d: complex | None = None) -> FourWeightSpinModel:
    """``(dA, n B^{-1}, d A^{-1}, B; d)`` for an invertible Jones pair."""
    require_invertible_pair(jp)
    n = jp.n
    d = complex(jp.d if d is None else d)
    a = d * np.trace(jp.A) / n
    m = FourWeightSpinModel(d * jp.A, n * np.linalg.inv(jp.B), d * np.linalg.inv(jp.A), jp.B.copy(), d, a)
    _raise_first(check_four_weight(m, tol))
    return m


def from_four_weight(m: FourWeightSpinModel, tol: Tolerance = DEFAULT_TOL) -> JonesPair:
    """The invertible Jones pair ``(W1/d, W4)`` of a validated four-weight model."""
    _raise_first(check_four_weight(m, tol))
    A = m.W1 / m.d
    jp = check_jones_pair(A, m.W4, tol)
    if not jp.invertible:
        raise ValidationFailure("Jones pair", None, jp.residual)
    return replace(jp, d=complex(m.d), a=complex(m.d) * np.trace(A) / jp.n)


# --------------------------------------------------------------------------
# gauge transformations

def _recheck(A, B, like: JonesPair, tol: Tolerance) -> JonesPair:
    sign = 1 if like.d is None or complex(like.d).real >= 0 else -1
    return check_jones_pair(A, B, tol, d_sign=sign)


def odd_gauge(jp: JonesPair, D, tol: Tolerance = DEFAULT_TOL) -> JonesPair:
    """``(D^{-1} A D, B)`` for an invertible diagonal D, re-certified."""
    D = as_matrix(D, "D")
    if not is_diagonal(D, tol) or np.min(np.abs(np.diag(D))) <= tol.abs_eps:
        raise SingularD("D must be an invertible diagonal matrix")
    dvals = np.diag(D)
    return _recheck(jp.A * dvals[None, :] / dvals[:, None], jp.B, jp, tol)


def even_gauge(jp: JonesPair, P, tol: Tolerance = DEFAULT_TOL) -> JonesPair:
    """``(A, B P)`` for a permutation matrix P, re-certified."""
    P = as_matrix(P, "P")
    if not is_permutation_matrix(P, tol):
        raise NotPermutation("P is not a permutation matrix")
    return _recheck(jp.A, jp.B @ np.rint(P.real), jp, tol)


def diagonal_ratio_gauge(M, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Diagonal entries D with ``M[i, j] = D[i] / D[j]`` and D[0] = 1.

    Propagates along the star spanning tree rooted at 0 and checks the
    multiplicative cocycle condition on every other edge.
    """
    M = as_matrix(M, "M")
    if not is_schur_invertible(M, tol):
        raise InconsistentGauge("ratio matrix has a zero entry, the constraint graph is not complete")
    D = M[:, 0] / M[0, 0]
    predicted = D[:, None] / D[None, :]
    check = compare(predicted, M, tol)
    if not check.ok:
        raise InconsistentGauge(f"ratios are not of the form D_i/D_j (residual {check.residual:.3e})")
    return D


def recover_odd_gauge(A, C, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Diagonal D with ``A = D C D^{-1}`` (A and C sharing a one-sided partner)."""
    A = as_matrix(A, "A")
    C = as_matrix(C, "C")
    same_order(A, C)
    if not is_schur_invertible(C, tol):
        raise InconsistentGauge("C has a zero entry")
    D = np.diag(diagonal_ratio_gauge(A / C, tol))
    if not compare(D @ C @ np.linalg.inv(D), A, tol).ok:
        raise InconsistentGauge("recovered diagonal does not conjugate C to A")
    return D


def recover_even_gauge(B, C, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Permutation P with ``C = B P`` (B and C sharing a one-sided partner)."""
    B = as_matrix(B, "B")
    C = as_matrix(C, "C")
    require_invertible(B, "B", tol)
    raw = np.linalg.solve(B, C)
    P = np.rint(raw.real)
    if not is_permutation_matrix(P, tol) or np.abs(raw - P).max() > tol.angle_eps * max(1.0, np.abs(raw).max()):
        raise NotPermutation("B^{-1} C is not a permutation matrix")
    P = P.astype(np.complex128)
    if not compare(B @ P, C, tol).ok:
        raise NotPermutation("B P does not reproduce C")
    return P


def symmetrize_odd(jp: JonesPair, tol: Tolerance = DEFAULT_TOL) -> tuple[JonesPair, np.ndarray]:
    """Odd-gauge equivalent pair with symmetric first matrix.

    Finds D with ``A = D A^T D^{-1}``, takes the principal square root
    ``D1`` of D and returns ``(D1^{-1} A D1, B)`` together with D1.
    """
    A = as_matrix(jp.A, "A")
    n = A.shape[0]
    if compare(A, A.T, tol).ok:
        return jp, eye(n)
    D = diagonal_ratio_gauge(A / A.T, tol)
    D1 = np.sqrt(D)
    sym = A * D1[None, :] / D1[:, None]
    out = _recheck(sym, jp.B, jp, tol)
    if not compare(sym, sym.T, tol).ok:
        raise InconsistentGauge("conjugated matrix is not symmetric")
    return out, np.diag(D1)


def transpose_permutation(B, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Permutation P with ``B^T = B P`` (exists for an invertible Jones pair)."""
    return recover_even_gauge(B, np.asarray(B).T, tol)


def symmetrize_even(jp: JonesPair, tol: Tolerance = DEFAULT_TOL) -> tuple[JonesPair, np.ndarray]:
    """Even-gauge equivalent pair with symmetric second matrix.

    With ``P = B^{-1} B^T`` of odd order 2r - 1, ``Q = P^r`` makes B Q
    symmetric.  Even orders have no such recipe and are refused.
    """
    require_invertible_pair(jp)
    P = transpose_permutation(jp.B, tol)
    order = permutation_order(P)
    if order % 2 == 0:
        raise NotPermutation(f"B^{{-1}} B^T has even order {order}; no symmetrizing permutation is prescribed")
    r = (order + 1) // 2
    Q = np.linalg.matrix_power(np.rint(P.real), r).astype(np.complex128)
    out = even_gauge(jp, Q, tol)
    if not compare(out.B, out.B.T, tol).ok:
        raise NotPermutation("B Q is not symmetric")
    return out, Q


# --------------------------------------------------------------------------
# spin-model index

@dataclass(frozen=True, eq=False)
class IndexReport:
    index: int
    P: np.ndarray
    D: np.ndarray


def spin_index(W, tol: Tolerance = DEFAULT_TOL) -> IndexReport:
    """Order of the permutation ``n^{-1} W^{-s} W`` of a spin model.

    Also confirms ``(W^{-s})^T o W = D J D^{-1}`` for a diagonal D.
    """
    W = as_matrix(W, "W")
    n = W.shape[0]
    require_schur_invertible(W, "W", tol)
    raw = (1.0 / W) @ W / n
    P = np.rint(raw.real)
    if not is_permutation_matrix(P, tol) or np.abs(raw - P).max() > tol.angle_eps:
        raise NotPermutation("n^{-1} W^{-s} W is not a permutation matrix")
    D = diagonal_ratio_gauge((1.0 / W).T * W, tol)
    return IndexReport(permutation_order(P), P.astype(np.complex128), np.diag(D))
