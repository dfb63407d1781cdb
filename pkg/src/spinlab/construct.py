"""Type-II matrices and spin models built from an invertible Jones pair.

From an invertible Jones pair (A, B) of order n this module builds

* the 2n x 2n type-II matrix ``W = [[A^T, -A^T], [B^{-sT} C, B^{-sT} C]]``
  (C diagonal with ``A^T = C^{-2} A C^2``);
* the 4n x 4n symmetric spin models V (loop 2d) and ``V' = D V D`` (loop -2d)
  when A is symmetric;

and checks the predicted structure of their Nomura algebras, together with
quotients, induced subspaces, the subscheme of N_V and the classification
of pairs of dimension two.
"""

from __future__ import annotations

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
    blocks,
    compare,
    compose,
    eye,
    is_type_ii,
    ones,
    schur_multiplier_of,
    split_blocks,
)
from .errors import (
    EmptySubset,
    NotDimensionTwo,
    NotEquitable,
    NotInAlgebra,
    NotSymmetricA,
    NotTwoValued,
    StructureMismatch,
    VerificationFailure,
    WrongShape,
)
from .jones import JonesPair, check_jones_pair, diagonal_ratio_gauge, require_invertible_pair
from .nomura import (
    INTEGRALITY_EPS,
    NomuraData,
    duality_map,
    is_bose_mesner,
    nomura_algebra,
    principal_idempotents,
    type_ii_nomura,
)
from .spin import spin_conditions, w_in_nomura_check
from .subspace import MatrixSubspace


def _zeros(n: int) -> np.ndarray:
    return np.zeros((n, n), dtype=np.complex128)


def _membership(space: MatrixSubspace, M: np.ndarray, tol: Tolerance, detail: str = "") -> Check:
    res = space.residual(M)
    return Check(res <= tol.angle_eps, res, detail)


def _theta(nd: NomuraData, M: np.ndarray) -> np.ndarray | None:
    if np.abs(M).max() <= nd.tol.abs_eps:
        # block averaging leaves rounding noise where a block vanishes
        return np.zeros_like(M)
    try:
        return duality_map(nd, M, verify=False)
    except NotInAlgebra:
        return None


# --------------------------------------------------------------------------
# the 2n x 2n matrix W

@dataclass(frozen=True, eq=False)
class WBundle:
    W: np.ndarray
    C: np.ndarray
    source: JonesPair


def transpose_gauge(A, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Diagonal C with ``A^T = C^{-2} A C^2`` (C = I for symmetric A).

    With D from ``A = D A^T D^{-1}`` we have ``A^T = D^{-1} A D``, so C is
    the principal square root of D.
    """
    A = as_matrix(A, "A")
    n = A.shape[0]
    if compare(A, A.T, tol).ok:
        return eye(n)
    D = diagonal_ratio_gauge(A / A.T, tol)
    C = np.diag(np.sqrt(D))
    C2, C2inv = C @ C, np.diag(1.0 / np.diag(C) ** 2)
    if not compare(C2inv @ A @ C2, A.T, tol).ok:
        raise StructureMismatch("transpose gauge C does not satisfy A^T = C^-2 A C^2")
    return C


def build_W(jp: JonesPair, tol: Tolerance = DEFAULT_TOL) -> WBundle:
    require_invertible_pair(jp)
    A, B = jp.A, jp.B
    C = transpose_gauge(A, tol)
    lower = (1.0 / B).T @ C
    W = blocks([[A.T, -A.T], [lower, lower]])
    check = is_type_ii(W, tol)
    if not check.ok:
        raise VerificationFailure(f"W is not type II (residual {check.residual:.3e})")
    return WBundle(W, C, jp)


def verify_NW_structure(wb: WBundle, tol: Tolerance = DEFAULT_TOL) -> Report:
    """Compare N_W and N_{W^T} with the bases predicted from the pair."""
    A, B, C = wb.source.A, wb.source.B, wb.C
    n = A.shape[0]
    Cinv = np.diag(1.0 / np.diag(C))
    C2, C2inv = C @ C, Cinv @ Cinv
    Z = _zeros(n)

    ndA = type_ii_nomura(A, tol)
    ndB = type_ii_nomura(B, tol)
    ndAB = nomura_algebra(A, B, tol)
    ndW = type_ii_nomura(wb.W, tol)
    ndWT = type_ii_nomura(wb.W.T, tol)
    r = ndA.dim
    rep = Report(values={"n": n, "dim_N_A": r, "dim_N_AB": ndAB.dim, "dim_N_W": ndW.dim, "dim_N_WT": ndWT.dim})
    rep.checks["dim N_W = 2 dim N_A"] = Check(ndW.dim == 2 * r, float(abs(ndW.dim - 2 * r)))
    rep.checks["dim N_W^T = 2 dim N_A"] = Check(ndWT.dim == 2 * r, float(abs(ndWT.dim - 2 * r)))

    E = principal_idempotents(ndA.space, tol)
    F = principal_idempotents(ndAB.space, tol)

    schur_pred = []
    for Ei in E:
        TA, TB = _theta(ndA, Ei), _theta(ndB, Ei)
        if TA is None or TB is None:
            rep.checks["principal idempotent of N_A in N_B"] = Check(False, np.inf)
            continue
        schur_pred.append(blocks([[TA, Z], [Z, TB.T]]))
    for Fj in F:
        top = _theta(ndAB, Fj)
        bottom = _theta(ndAB, C2 @ Fj.T @ C2inv)
        if top is None or bottom is None:
            rep.checks["C^2 F^T C^-2 in N_AB"] = Check(False, np.inf)
            continue
        schur_pred.append(blocks([[Z, top], [bottom.T, Z]]))
    if schur_pred:
        stack = np.stack(schur_pred)
        rounded = np.rint(stack.real)
        zero_one = float(np.abs(stack - rounded).max())
        rep.checks["predicted Schur idempotents are 01"] = Check(
            zero_one <= INTEGRALITY_EPS and set(np.unique(rounded)) <= {0.0, 1.0}, zero_one)
        rep.checks["predicted Schur idempotents sum to J"] = compare(stack.sum(0), ones(2 * n), tol)
        res = ndW.space.max_residual_of(schur_pred)
        span = MatrixSubspace.span(schur_pred, 2 * n, tol)
        rep.checks["predicted Schur basis spans N_W"] = Check(
            res <= tol.angle_eps and span.dim == ndW.dim, max(res, span.distance(ndW.space)))

    principal_pred = [0.5 * blocks([[Ei.T, Ei.T], [Ei.T, Ei.T]]) for Ei in E]
    for Fj in F:
        K = C @ Fj.T @ Cinv
        principal_pred.append(0.5 * blocks([[K, -K], [-K, K]]))
    stack = np.stack(principal_pred)
    gram = np.einsum("aij,bjk->abik", stack, stack)
    target = np.zeros_like(gram)
    idx = np.arange(len(principal_pred))
    target[idx, idx] = stack
    rep.checks["predicted principal idempotents are orthogonal idempotents"] = compare(gram, target, tol)
    rep.checks["predicted principal idempotents sum to I"] = compare(stack.sum(0), eye(2 * n), tol)
    res = ndWT.space.max_residual_of(principal_pred)
    span = MatrixSubspace.span(principal_pred, 2 * n, tol)
    rep.checks["predicted principal basis spans N_W^T"] = Check(
        res <= tol.angle_eps and span.dim == ndWT.dim, max(res, span.distance(ndWT.space)))

    rep.checks["[[0, B], [B^T, 0]] in N_W"] = _membership(ndW.space, blocks([[Z, B], [B.T, Z]]), tol)
    K = Cinv @ A @ C
    rep.checks["[[K, -K], [-K, K]] in N_W^T"] = _membership(ndWT.space, blocks([[K, -K], [-K, K]]), tol)

    same = ndW.space.equals(ndWT.space, tol)
    rep.values["N_W equals N_W^T"] = bool(same)
    if same:
        rep.checks["equal algebras force a spin-model multiple of B"] = Check(w_in_nomura_check(B, tol).ok, 0.0)
    return rep


# --------------------------------------------------------------------------
# the 4n x 4n spin models V and V'

@dataclass(frozen=True, eq=False)
class VBundle:
    V: np.ndarray
    Vprime: np.ndarray
    d: complex
    source: JonesPair
    nomura: NomuraData | None = None


def assemble_V(A: np.ndarray, B: np.ndarray, d: complex) -> tuple[np.ndarray, np.ndarray]:
    Bs = 1.0 / B
    dA = d * A
    V = blocks([
        [dA, -dA, Bs, Bs],
        [-dA, dA, Bs, Bs],
        [Bs.T, Bs.T, dA, -dA],
        [Bs.T, Bs.T, -dA, dA],
    ])
    n = A.shape[0]
    sign = np.concatenate([np.ones(2 * n), -np.ones(2 * n)])
    return V, sign[:, None] * V * sign[None, :]


def build_V(jp: JonesPair, tol: Tolerance = DEFAULT_TOL, verify: bool = True) -> VBundle:
    """V and V' from an invertible Jones pair with symmetric A.

    With ``verify`` both are checked as symmetric spin models (loop 2d and
    -2d), ``Theta_V(V) = 2d V^{-s}`` is confirmed and the duality maps of V
    and V' are compared on a basis of N_V.
    """
    require_invertible_pair(jp)
    A, B = jp.A, jp.B
    if not compare(A, A.T, tol).ok:
        raise NotSymmetricA("A must be symmetric; apply symmetrize_odd first")
    d = complex(jp.d)
    V, Vp = assemble_V(A, B, d)
    if not verify:
        return VBundle(V, Vp, d, jp)
    for name, M, loop in (("V", V, 2 * d), ("V'", Vp, -2 * d)):
        if not compare(M, M.T, tol).ok:
            raise VerificationFailure(f"{name} is not symmetric")
        conds = spin_conditions(M, loop, tol)
        bad = [k for k, (ok, _, _) in conds.items() if not ok]
        if bad:
            raise VerificationFailure(f"{name} fails spin-model condition {bad[0]}")
    ndV = type_ii_nomura(V, tol)
    ndVp = type_ii_nomura(Vp, tol)
    if not ndV.space.equals(ndVp.space, tol):
        raise VerificationFailure("N_V and N_V' differ")
    theta_V = duality_map(ndV, V)
    if not compare(theta_V, 2 * d / V, tol).ok:
        raise VerificationFailure("Theta_V(V) differs from 2d V^-s")
    for M in ndV.basis:
        if np.abs(duality_map(ndV, M, verify=False) - duality_map(ndVp, M, verify=False)).max() > tol.angle_eps:
            raise VerificationFailure("Theta_V and Theta_V' differ on N_V")
    return VBundle(V, Vp, d, jp, ndV)


@dataclass(frozen=True, eq=False)
class NVDecomposition:
    F: np.ndarray
    R: np.ndarray
    G: np.ndarray
    H: np.ndarray
    H1: np.ndarray
    R1: np.ndarray
    shape_residual: float


def decompose_NV_element(M: np.ndarray, B: np.ndarray) -> NVDecomposition:
    """Split a 4n x 4n matrix into the blocks (F, R, G, H, H1, R1) by block averaging."""
    g = split_blocks(M, 4)
    Binv = np.linalg.inv(B)
    F, R = (g[0][0] + g[0][1]) / 2, (g[0][0] - g[0][1]) / 2
    G, H = (g[0][2] + g[0][3]) / 2, (g[0][2] - g[0][3]) / 2
    H1 = (g[2][0] - g[2][1]) / 2
    R1 = (g[2][2] - g[2][3]) / 2
    predicted = blocks([
        [F + R, F - R, G + H, G - H],
        [F - R, F + R, G - H, G + H],
        [Binv @ G @ B.T + H1, Binv @ G @ B.T - H1, Binv @ F @ B + R1, Binv @ F @ B - R1],
        [Binv @ G @ B.T - H1, Binv @ G @ B.T + H1, Binv @ F @ B - R1, Binv @ F @ B + R1],
    ])
    return NVDecomposition(F, R, G, H, H1, R1, float(np.abs(predicted - M).max()))


def _schur_multiplier_pair(lhs, rhs, tol: Tolerance) -> Check:
    S_left = schur_multiplier_of(lhs, tol)
    S_right = schur_multiplier_of(rhs, tol)
    if S_left is None or S_right is None:
        return Check(False, np.inf, "not a Schur multiplier")
    return compare(S_left, S_right, tol)


def subscheme_NV_space(jp: JonesPair, tol: Tolerance = DEFAULT_TOL) -> MatrixSubspace:
    """Span of the block-diagonal family (F, R, R1 linked by the duality condition) and J-hat."""
    A, B = jp.A, jp.B
    n = A.shape[0]
    Binv = np.linalg.inv(B)
    Z = _zeros(n)
    ndA = type_ii_nomura(A, tol)
    ndBT = type_ii_nomura(B.T, tol)
    ndAB = nomura_algebra(A, B, tol)
    mats = []
    for F in ndA.basis:
        K = Binv @ F @ B
        mats.append(blocks([[F, F, Z, Z], [F, F, Z, Z], [Z, Z, K, K], [Z, Z, K, K]]))
    for R in ndAB.basis:
        target = duality_map(ndA, A * R, verify=False).T
        R1 = ndBT.preimage(target) / A
        mats.append(blocks([[R, -R, Z, Z], [-R, R, Z, Z], [Z, Z, R1, -R1], [Z, Z, -R1, R1]]))
    J = ones(n)
    mats.append(blocks([[Z, Z, J, J], [Z, Z, J, J], [J, J, Z, Z], [J, J, Z, Z]]))
    return MatrixSubspace.span(mats, 4 * n, tol)


def verify_NV_structure(vb: VBundle, tol: Tolerance = DEFAULT_TOL) -> Report:
    """Check N_V against the block description and the surrounding facts.

    Every basis element of N_V is split into (F, R, G, H, H1, R1) and the side
    conditions are tested.  The dimension is reported and compared with the
    proven bounds ``3r <= dim <= 3r + n`` (r = dim N_A); equality with 4r is
    only recorded.
    """
    A, B = vb.source.A, vb.source.B
    n = A.shape[0]
    ndV = vb.nomura or type_ii_nomura(vb.V, tol)
    ndA = type_ii_nomura(A, tol)
    ndBT = type_ii_nomura(B.T, tol)
    ndAB = nomura_algebra(A, B, tol)
    r = ndA.dim
    rep = Report(values={"n": n, "dim_N_A": r, "dim_N_V": ndV.dim, "equals_4r": ndV.dim == 4 * r})
    rep.checks["dim N_V >= 3r"] = Check(ndV.dim >= 3 * r, 0.0)
    rep.checks["dim N_V <= 3r + n"] = Check(ndV.dim <= 3 * r + n, 0.0)

    I, J, Z = eye(n), ones(n), _zeros(n)
    IJ = blocks([[J, J, Z, Z], [J, J, Z, Z], [Z, Z, J, J], [Z, Z, J, J]])
    rep.checks["I_2 x J_2n in N_V"] = _membership(ndV.space, IJ, tol)
    if rep.checks["I_2 x J_2n in N_V"].ok:
        expected = 2 * n * blocks([[I, I, Z, Z], [I, I, Z, Z], [Z, Z, I, I], [Z, Z, I, I]])
        rep.checks["Theta_V(I_2 x J_2n)"] = compare(duality_map(ndV, IJ), expected, tol)

    shape = side_F = side_R = side_G = side_R1 = side_H = 0.0
    Binv, BinvT = np.linalg.inv(B), np.linalg.inv(B).T
    Ainv, As, Bs = np.linalg.inv(A), 1.0 / A, 1.0 / B
    h_ok = True
    for M in ndV.basis:
        dec = decompose_NV_element(M, B)
        shape = max(shape, dec.shape_residual)
        side_F = max(side_F, ndA.space.residual(dec.F) * max(np.linalg.norm(dec.F), 0.0) / max(np.linalg.norm(M), 1e-300))
        side_R = max(side_R, ndAB.space.residual(dec.R) * np.linalg.norm(dec.R) / max(np.linalg.norm(M), 1e-300))
        side_G = max(side_G, ndAB.dual_space.residual(dec.G) * np.linalg.norm(dec.G) / max(np.linalg.norm(M), 1e-300))
        left = _theta(ndBT, A * dec.R1)
        right = _theta(ndA, A * dec.R)
        if left is None or right is None:
            side_R1 = np.inf
        else:
            side_R1 = max(side_R1, float(np.abs(left.T - right).max()) / max(np.abs(M).max(), 1e-300))
        first = _schur_multiplier_pair(
            compose(X(Ainv), Delta(Bs), X(dec.H), Delta(As), X(Binv)),
            compose(X(B), Delta(A), X(dec.H1), Delta(B), X(A)), tol)
        second = _schur_multiplier_pair(
            compose(X(B.T), Delta(A), X(dec.H), Delta(B.T), X(A)),
            compose(X(Ainv), Delta(Bs.T), X(dec.H1), Delta(As), X(BinvT)), tol)
        h_ok = h_ok and first.ok and second.ok
        side_H = max(side_H, first.residual, second.residual)
    eps = tol.angle_eps
    rep.checks["block shape"] = Check(shape <= eps * max(1.0, np.abs(vb.V).max()), shape)
    rep.checks["F in N_A"] = Check(side_F <= eps, side_F)
    rep.checks["R in N_A,B"] = Check(side_R <= eps, side_R)
    rep.checks["G in N'_A,B"] = Check(side_G <= eps, side_G)
    rep.checks["R1 linked to R by the dualities"] = Check(side_R1 <= eps * n, side_R1)
    rep.checks["H, H1 operator identities"] = Check(h_ok, side_H)

    sub = subscheme_NV_space(vb.source, tol)
    bm = is_bose_mesner(sub, tol)
    rep.values["dim_subscheme"] = sub.dim
    rep.checks["subscheme contained in N_V"] = Check(sub.issubspace(ndV.space, tol), ndV.space.max_residual_of(sub.basis))
    rep.checks["subscheme is Bose-Mesner of dim 2r + 1"] = Check(bm.ok and sub.dim == 2 * r + 1, 0.0, ",".join(bm.failing))

    square = max(
        (float(np.abs(duality_map(ndV, duality_map(ndV, M, verify=False), verify=False) - 4 * n * M.T).max())
         for M in ndV.basis),
        default=0.0,
    )
    rep.checks["Theta_V^2 = 4n transpose"] = Check(square <= eps * 4 * n, square)
    return rep


def extract_pair_from_V(V, d, tol: Tolerance = DEFAULT_TOL, variant: str = "V") -> JonesPair:
    """Read (A, B) back from a matrix with the block pattern of V (or V').

    The diagonal 2n x 2n blocks must be ``[[dA, -dA], [-dA, dA]]`` with the
    same A twice; the off-diagonal blocks must be constant 2 x 2 grids of G
    and G^T, with ``G = B^{-s}`` for V and ``G = -B^{-s}`` for V'.  The
    returned pair is certified by :func:`check_jones_pair` (it need not be a
    Jones pair).
    """
    V = as_matrix(V, "V")
    if V.shape[0] % 4:
        raise WrongShape("V", "order is not divisible by 4")
    if variant not in ("V", "V'"):
        raise ValueError("variant must be 'V' or \"V'\"")
    d = complex(d)
    g = split_blocks(V, 4)
    scale = max(1.0, float(np.abs(V).max()))
    bound = tol.angle_eps * scale

    def expect(label: str, M: np.ndarray, ref: np.ndarray, reason: str) -> None:
        if np.abs(M - ref).max() > bound:
            raise WrongShape(label, reason)

    dA = g[0][0]
    for p, q, sign in ((0, 1, -1), (1, 0, -1), (1, 1, 1), (2, 2, 1), (2, 3, -1), (3, 2, -1), (3, 3, 1)):
        expect(f"({p + 1},{q + 1})", g[p][q], sign * dA, "diagonal blocks must be +-dA with the (1,1) pattern")
    G = g[0][2]
    for p, q in ((0, 3), (1, 2), (1, 3)):
        expect(f"({p + 1},{q + 1})", g[p][q], G, "upper off-diagonal blocks must all equal the (1,3) block")
    for p, q in ((2, 0), (2, 1), (3, 0), (3, 1)):
        expect(f"({p + 1},{q + 1})", g[p][q], G.T, "lower off-diagonal blocks must equal the transposed (1,3) block")
    if np.min(np.abs(G)) <= tol.abs_eps:
        raise WrongShape("(1,3)", "off-diagonal block has a zero entry")
    A = dA / d
    B = (1.0 / G) if variant == "V" else (-1.0 / G)
    sign = 1 if d.real >= 0 else -1
    return check_jones_pair(A, B, tol, d_sign=sign)


# --------------------------------------------------------------------------
# quotients and induced subspaces

@dataclass(frozen=True, eq=False)
class EquitablePartition:
    classes: tuple
    S: np.ndarray

    @classmethod
    def from_classes(cls, classes: Sequence[Sequence[int]], m: int | None = None) -> "EquitablePartition":
        classes = tuple(tuple(int(x) for x in c) for c in classes)
        flat = [x for c in classes for x in c]
        if m is None:
            m = len(flat)
        if any(len(c) == 0 for c in classes):
            raise ValueError("classes must be non-empty")
        if sorted(flat) != list(range(m)):
            raise ValueError("classes must partition 0..m-1")
        S = np.zeros((m, len(classes)), dtype=np.complex128)
        for k, c in enumerate(classes):
            S[list(c), k] = 1.0
        return cls(classes, S)

    @classmethod
    def pairing(cls, n: int, offsets: Sequence[int] = (0,)) -> "EquitablePartition":
        """Classes {o + i, o + n + i}; offsets 0 and 2n give the 4n-point pairing."""
        classes = [(o + i, o + n + i) for o in offsets for i in range(n)]
        return cls.from_classes(classes, 2 * n * len(offsets))


def quotient_matrix(M: np.ndarray, S: np.ndarray) -> tuple[np.ndarray, float]:
    BM = np.linalg.solve(S.T @ S, S.T @ M @ S)
    return BM, float(np.abs(M @ S - S @ BM).max())


def quotient_algebra(space: MatrixSubspace, part: EquitablePartition, tol: Tolerance = DEFAULT_TOL) -> MatrixSubspace:
    """Span of the quotients ``B_M`` with ``M S = S B_M`` over a basis of the space."""
    if part.S.shape[0] != space.n:
        raise ValueError("partition size does not match the order of the space")
    quotients = []
    for idx, M in enumerate(space.basis):
        BM, res = quotient_matrix(M, part.S)
        if res > tol.angle_eps:
            raise NotEquitable(idx, res)
        quotients.append(BM)
    return MatrixSubspace.span(quotients, part.S.shape[1], tol)


def induced_space(space: MatrixSubspace, Y: Sequence[int], tol: Tolerance = DEFAULT_TOL) -> tuple[MatrixSubspace, bool]:
    """Span of the principal submatrices ``M_Y`` and whether it is Bose-Mesner."""
    Y = list(Y)
    if not Y:
        raise EmptySubset("index subset is empty")
    sub = MatrixSubspace.span([M[np.ix_(Y, Y)] for M in space.basis], len(Y), tol)
    return sub, is_bose_mesner(sub, tol).ok


# --------------------------------------------------------------------------
# pairs of dimension two

@dataclass(frozen=True, eq=False)
class Dim2Report:
    n: int
    values: tuple  # (a, b): B = a (J - N) + b N
    N: np.ndarray
    k: int
    lam: int
    design_ok: bool
    two_graph: dict | None


def _two_values(M: np.ndarray, tol: Tolerance) -> tuple[complex, complex, np.ndarray]:
    flat = M.reshape(-1)
    first = flat[0]
    scale = max(1.0, float(np.abs(flat).max()))
    same = np.abs(flat - first) <= tol.angle_eps * scale
    others = flat[~same]
    if others.size == 0 or np.abs(others - others[0]).max() > tol.angle_eps * scale:
        raise NotTwoValued("matrix does not take exactly two values")
    return first, others[0], same.reshape(M.shape)


def dim2_classify(jp: JonesPair, tol: Tolerance = DEFAULT_TOL) -> Dim2Report:
    """Symmetric design of B, and regular two-graph of A when A is symmetric.

    N is the indicator of the less frequent value of B (the value at (0, 0)
    when both are equally frequent).
    """
    A, B = jp.A, jp.B
    n = A.shape[0]
    dim = nomura_algebra(A, B, tol).dim
    if dim != 2:
        raise NotDimensionTwo(f"N_A,B has dimension {dim}")
    v0, v1, mask0 = _two_values(B, tol)
    count0 = int(mask0.sum())
    if count0 <= n * n - count0:
        N, a, b = mask0.astype(float), v1, v0
    else:
        N, a, b = (~mask0).astype(float), v0, v1
    NNt = N @ N.T
    k, lam = int(round(NNt[0, 0])), int(round(NNt[0, 1])) if n > 1 else 0
    design_ok = bool(np.array_equal(NNt, lam * (np.ones((n, n)) - np.eye(n)) + k * np.eye(n)))
    two_graph = None
    if compare(A, A.T, tol).ok and n > 1:
        c = A[0, 0]
        x = A[0, 1]
        M = (A - c * eye(n)) / x
        pm_ok = compare(M * M, ones(n) - eye(n), tol).ok and compare(np.diag(M), np.zeros(n), tol).ok
        basis = np.stack([eye(n).reshape(-1), M.reshape(-1)], axis=1)
        coeffs, *_ = np.linalg.lstsq(basis, (M @ M).reshape(-1), rcond=None)
        quad_res = float(np.abs(basis @ coeffs - (M @ M).reshape(-1)).max())
        two_graph = {
            "c": complex(c), "scale": complex(x), "M": M,
            "plus_minus_one": bool(pm_ok),
            "quadratic_minimal_polynomial": quad_res <= tol.angle_eps * n,
            "minimal_polynomial": (complex(coeffs[0]), complex(coeffs[1])),
        }
    return Dim2Report(n, (complex(a), complex(b)), N, k, lam, design_ok, two_graph)
