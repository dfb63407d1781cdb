"""Spin models and the Potts, Abelian-group and Hadamard families.

A spin model with loop variable d (d^2 = n) is a matrix W with

(I)   ``W o I = a I`` and ``W J = W^T J = d a^{-1} J``;
(II)  W type II;
(III) ``sum_x W[k,x] W[x,i] / W[j,x] = d W[k,i] / (W[j,i] W[j,k])``.

W is a spin model exactly when ``(W/d, (W^{-s})^T)`` is an invertible Jones
pair, which :func:`verify_spin_model` uses as an independent cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    Check,
    Delta,
    Tolerance,
    X,
    as_matrix,
    blocks,
    compare,
    compose,
    eye,
    is_schur_invertible,
    is_type_ii,
    kron,
    ones,
    operators_equal,
)
from .errors import BadParameters, ConditionFailure, NotHadamard, VerificationFailure
from .jones import JonesPair, check_jones_pair, check_one_sided
from .nomura import type_ii_nomura


@dataclass(frozen=True, eq=False)
class SpinModel:
    W: np.ndarray
    d: complex
    a: complex
    residual: float = 0.0

    @property
    def n(self) -> int:
        return self.W.shape[0]


def _witness(diff: np.ndarray, bound: np.ndarray) -> tuple:
    return tuple(int(v) for v in np.unravel_index(np.argmax(diff - bound), diff.shape))


def _entrywise(lhs, rhs, tol: Tolerance) -> tuple[bool, float, tuple | None]:
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    diff = np.abs(lhs - rhs)
    bound = tol.abs_eps + tol.rel_eps * np.maximum(np.abs(lhs), np.abs(rhs))
    ok = bool(np.all(diff <= bound))
    return ok, float(diff.max()) if diff.size else 0.0, None if ok else _witness(diff, bound)


def loop_variable_from_sums(W: np.ndarray) -> complex:
    """d = a * (row sum) for a matrix with constant diagonal a and constant row sums."""
    return complex(W[0, 0] * W[0].sum())


def type_iii_tables(W: np.ndarray, d: complex) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of condition (III), indexed [k, i, j]."""
    Winv = 1.0 / W
    lhs = np.einsum("kx,xi,jx->kij", W, W, Winv, optimize=True)
    rhs = d * W[:, :, None] * Winv.T[None, :, :] * Winv.T[:, None, :]
    return lhs, rhs


def spin_conditions(W, d, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Residual and witness for each of the conditions (I), (II), (III)."""
    W = as_matrix(W, "W")
    n = W.shape[0]
    d = complex(d)
    out = {}
    if not is_schur_invertible(W, tol):
        out["II"] = (False, math.inf, tuple(int(v) for v in np.unravel_index(np.argmin(np.abs(W)), W.shape)))
        return out
    a = W[0, 0]
    diag_ok, diag_res, diag_w = _entrywise(np.diag(W), np.full(n, a), tol)
    row_ok, row_res, row_w = _entrywise(W.sum(1), np.full(n, d / a), tol)
    col_ok, col_res, col_w = _entrywise(W.sum(0), np.full(n, d / a), tol)
    dn_ok = abs(d * d - n) <= tol.abs_eps + tol.rel_eps * n
    out["I"] = (diag_ok and row_ok and col_ok and dn_ok, max(diag_res, row_res, col_res, abs(d * d - n)),
                diag_w or row_w or col_w)
    t2 = is_type_ii(W, tol)
    out["II"] = (t2.ok, t2.residual, None)
    lhs, rhs = type_iii_tables(W, d)
    out["III"] = _entrywise(lhs, rhs, tol)
    return out


def spin_model_pair(W, d, tol: Tolerance = DEFAULT_TOL) -> JonesPair:
    """The Jones pair ``(W/d, (W^{-s})^T)`` of a spin model."""
    W = as_matrix(W, "W")
    sign = 1 if complex(d).real >= 0 else -1
    return check_jones_pair(W / d, (1.0 / W).T, tol, d_sign=sign)


def verify_spin_model(W, d=None, tol: Tolerance = DEFAULT_TOL) -> SpinModel:
    """Check (I), (II), (III) directly and through the Jones-pair characterization.

    When ``d`` is omitted it is read off as ``a * (row sum)``.
    Raises :class:`ConditionFailure` naming the first failing condition.
    """
    W = as_matrix(W, "W")
    if d is None:
        if not is_schur_invertible(W, tol):
            raise ConditionFailure("II", None, math.inf)
        d = loop_variable_from_sums(W)
    d = complex(d)
    conditions = spin_conditions(W, d, tol)
    for name in ("I", "II", "III"):
        if name in conditions and not conditions[name][0]:
            _, res, witness = conditions[name]
            raise ConditionFailure(name, witness, res)
    pair = spin_model_pair(W, d, tol)
    if not pair.invertible:
        raise VerificationFailure("conditions hold but (W/d, W^{-sT}) is not an invertible Jones pair")
    residual = max(r for _, r, _ in conditions.values())
    return SpinModel(W, d, complex(W[0, 0]), residual)


def is_spin_model(W, d=None, tol: Tolerance = DEFAULT_TOL) -> bool:
    try:
        verify_spin_model(W, d, tol)
    except (ConditionFailure, VerificationFailure):
        return False
    return True


# --------------------------------------------------------------------------
# Potts models

def potts_parameters(n: int, root_choice: int = 0) -> tuple[complex, complex]:
    """(t, u) with ``t + 1/t = 2 - n`` and ``u^4 = -t``.

    ``root_choice`` in 0..7: ``root_choice // 4`` picks the root t (the one
    with the + sign first), ``root_choice % 4`` multiplies the principal
    fourth root of -t by that power of i.
    """
    if n < 2:
        raise BadParameters("Potts models need n >= 2")
    if not 0 <= root_choice < 8:
        raise BadParameters("root_choice must be in 0..7")
    b = 2.0 - n
    disc = cmath.sqrt(b * b - 4)
    t = (b + disc) / 2 if root_choice // 4 == 0 else (b - disc) / 2
    u = complex(-t) ** 0.25 * (1j ** (root_choice % 4))
    return complex(t), complex(u)


def potts_matrix(n: int, u: complex) -> np.ndarray:
    return -u**3 * eye(n) + (ones(n) - eye(n)) / u


def potts(n: int, root_choice: int = 0, u: complex | None = None, tol: Tolerance = DEFAULT_TOL) -> SpinModel:
    """Potts model ``-u^3 I + u^{-1}(J - I)`` with loop variable ``-u^2 - u^{-2}``."""
    if u is None:
        _, u = potts_parameters(n, root_choice)
    u = complex(u)
    return verify_spin_model(potts_matrix(n, u), -u**2 - u**-2, tol)


def potts_type_ii(n: int, sign: int = 1) -> np.ndarray:
    """The type-II matrix ``tI + (J - I)`` with ``t + 1/t = 2 - n``."""
    b = 2.0 - n
    t = (b + sign * cmath.sqrt(b * b - 4)) / 2
    return t * eye(n) + ones(n) - eye(n)


# --------------------------------------------------------------------------
# Abelian groups

def fourier_matrix(m: int, power: int = 1) -> np.ndarray:
    zeta = cmath.exp(2j * math.pi * power / m)
    x = np.arange(m)
    return zeta ** np.outer(x, x) if m > 1 else np.ones((1, 1), dtype=np.complex128)


def abelian_character_matrix(orders) -> np.ndarray:
    """Character table of ``Z_{m1} x ... x Z_{mk}`` (Kronecker product of Fourier matrices)."""
    orders = list(orders)
    if not orders or any(int(m) < 1 for m in orders):
        raise BadParameters("group orders must be positive")
    return kron(*(fourier_matrix(int(m)) for m in orders))


def cyclic_spin_model(n: int, omega: complex | None = None, tol: Tolerance = DEFAULT_TOL) -> SpinModel:
    """Scaled ``omega^{(x-y)^2}`` for odd n.

    With G the Gauss sum (the common row sum), ``c^4 = n / G^2`` makes
    ``c W`` satisfy ``d^2 = n`` with ``d = c^2 G``; c is the principal root.
    """
    if n < 1 or n % 2 == 0:
        raise BadParameters("the cyclic construction is only supported for odd n")
    if omega is None:
        omega = cmath.exp(2j * math.pi / n)
    omega = complex(omega)
    if abs(omega**n - 1) > 1e-9 or any(abs(omega**k - 1) <= 1e-9 for k in range(1, n)):
        raise BadParameters("omega must be a primitive n-th root of unity")
    x = np.arange(n)
    W0 = omega ** (((x[:, None] - x[None, :]) ** 2) % n)
    gauss = W0[0].sum()
    c = complex(n / gauss**2) ** 0.25
    return verify_spin_model(c * W0, c * c * gauss, tol)


# --------------------------------------------------------------------------
# Hadamard spin models

def sylvester_hadamard(n: int) -> np.ndarray:
    if n < 1 or n & (n - 1):
        raise BadParameters("Sylvester construction needs a power of two")
    H = np.ones((1, 1))
    while H.shape[0] < n:
        H = np.block([[H, H], [H, -H]])
    return H.astype(np.complex128)


def is_hadamard(H, tol: Tolerance = DEFAULT_TOL) -> bool:
    H = np.asarray(H, dtype=np.complex128)
    n = H.shape[0]
    pm = np.all(np.abs(np.abs(H.real) - 1) <= tol.abs_eps) and np.all(np.abs(H.imag) <= tol.abs_eps)
    return bool(pm and compare(H @ H.T, n * eye(n), tol).ok)


def hadamard_block_matrix(A, B, C, eps: int) -> np.ndarray:
    """The 4n x 4n matrix with blocks A, +-B, +-eps B^T, C."""
    Bt = eps * B.T
    return blocks([
        [A, A, B, -B],
        [A, A, -B, B],
        [Bt, -Bt, C, C],
        [-Bt, Bt, C, C],
    ])


def hadamard_spin_model(H, eps: int = 1, omega: complex | None = None, u: complex | None = None,
                        tol: Tolerance = DEFAULT_TOL) -> SpinModel:
    """Spin model of order 4n from an n x n Hadamard matrix.

    Blocks: a Potts model A of order n (loop d), ``omega H`` with
    ``omega^4 = eps``.  The result has loop variable 2d; it is symmetric for
    eps = 1 and not for eps = -1.
    """
    H = as_matrix(H, "H")
    n = H.shape[0]
    if not is_hadamard(H, tol):
        raise NotHadamard("H must be a +-1 matrix with H H^T = nI")
    if eps not in (1, -1):
        raise BadParameters("eps must be +1 or -1")
    if omega is None:
        omega = 1.0 if eps == 1 else cmath.exp(1j * math.pi / 4)
    omega = complex(omega)
    if abs(omega**4 - eps) > 1e-9:
        raise BadParameters("omega must satisfy omega^4 = eps")
    if u is None:
        _, u = potts_parameters(n)
    u = complex(u)
    if abs((u**2 + u**-2) ** 2 - n) > 1e-9 * max(1, n):
        raise BadParameters("u must satisfy (u^2 + u^-2)^2 = n")
    A = potts_matrix(n, u)
    d = -u**2 - u**-2
    W = hadamard_block_matrix(A, omega * H, A, eps)
    return verify_spin_model(W, 2 * d, tol)


@dataclass(frozen=True)
class BlockCheckReport:
    conditions: dict
    assembled_is_spin: bool

    @property
    def all_hold(self) -> bool:
        return all(c.ok for c in self.conditions.values())

    @property
    def consistent(self) -> bool:
        """The four conditions hold exactly when the assembled matrix is a spin model."""
        return self.all_hold == self.assembled_is_spin


def general_hadamard_block_check(A, B, C, eps: int, d, tol: Tolerance = DEFAULT_TOL) -> BlockCheckReport:
    """Evaluate the four block conditions and independently test the assembled matrix."""
    A, B, C = (as_matrix(M) for M in (A, B, C))
    d = complex(d)
    conds = {}
    conds["a"] = is_type_ii(B, tol)
    sym = [compare(M, M.T, tol) for M in (A, C)]
    spin = [is_spin_model(M, d, tol) for M in (A, C)]
    conds["b"] = Check(all(sym) and all(spin), max(s.residual for s in sym))
    if conds["a"].ok and is_schur_invertible(A, tol):
        BsT = (1.0 / B).T
        Ainv_s = 1.0 / A
        lhs = compose(X(C), Delta(BsT), X(B.T))
        rhs = compose(Delta(BsT), X(B.T), Delta(d * Ainv_s))
        conds["c"] = operators_equal(lhs, rhs, tol)
        lhs = compose(X(C), Delta(BsT), X(BsT))
        rhs = compose(Delta(B.T), X(B.T), Delta(eps * d * Ainv_s))
        conds["d"] = operators_equal(lhs, rhs, tol)
    else:
        conds["c"] = Check(False, math.inf, "needs Schur-invertible A and B")
        conds["d"] = Check(False, math.inf, "needs Schur-invertible A and B")
    W = hadamard_block_matrix(A, B, C, eps)
    return BlockCheckReport(conds, is_spin_model(W, 2 * d, tol))


def hadamard_eigenvalue_check(W, d, tol: Tolerance = DEFAULT_TOL) -> Check:
    """Every vector ``W e_h o W^{-s} e_k`` is an eigenvector of W with eigenvalue ``d / W[h, k]``.

    For the block models above d is the full loop variable 2d of the block construction.
    """
    W = as_matrix(W, "W")
    Winv = 1.0 / W
    Yv = W.T[:, None, :] * Winv.T[None, :, :]
    lhs = np.einsum("xy,hky->hkx", W, Yv)
    rhs = (complex(d) / W)[:, :, None] * Yv
    return compare(lhs, rhs, tol)


# --------------------------------------------------------------------------
# W in its own Nomura algebra

@dataclass(frozen=True, eq=False)
class SelfMembershipReport:
    in_algebra: bool
    residual: float
    scale: complex | None
    d: complex | None
    is_spin: bool

    @property
    def ok(self) -> bool:
        return self.in_algebra and self.is_spin

    def __bool__(self) -> bool:
        return self.ok


def w_in_nomura_check(W, tol: Tolerance = DEFAULT_TOL) -> SelfMembershipReport:
    """Is W in N_W, and if so is some scalar multiple cW a spin model?

    The scale comes from condition (I): with diagonal w and row sum r,
    ``c^4 w^2 r^2 = n``; the principal root is taken and d = c^2 w r.
    """
    W = as_matrix(W, "W")
    n = W.shape[0]
    nd = type_ii_nomura(W, tol)
    residual = nd.space.residual(W)
    if residual > tol.angle_eps:
        return SelfMembershipReport(False, residual, None, None, False)
    w, r = W[0, 0], W[0].sum()
    if abs(w * r) <= tol.abs_eps:
        return SelfMembershipReport(True, residual, None, None, False)
    c = complex(n / (w * r) ** 2) ** 0.25
    d = c * c * w * r
    return SelfMembershipReport(True, residual, c, d, is_spin_model(c * W, d, tol))


def one_sided_variants(W, d, tol: Tolerance = DEFAULT_TOL) -> tuple[Check, Check]:
    """One-sided checks for ``(W/d, W^{-sT})`` and ``(W/d, W^{-s})``."""
    W = as_matrix(W, "W")
    return check_one_sided(W / d, (1.0 / W).T, tol), check_one_sided(W / d, 1.0 / W, tol)
