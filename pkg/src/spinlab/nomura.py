"""Nomura algebras, duality maps and Bose-Mesner structure.

For a pair (A, B) put ``Y_ij = A e_i o B e_j``.  The Nomura algebra N_{A,B}
is the set of matrices having every Y_ij as an eigenvector, and the duality
map sends such a matrix M to the table ``Theta(M)[i, j]`` of eigenvalues.

When A is invertible and B has no zero entry, the vectors Y_1j..Y_nj form a
basis for each j, so N_{A,B} is the intersection over j of the commutative
algebras ``P_j D P_j^{-1}`` (D diagonal, P_j with columns Y_ij).  The
computation parametrizes the first of these by the diagonal and cuts it
down one column at a time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    Check,
    Delta,
    Tolerance,
    X,
    as_matrix,
    compare,
    compose,
    eigvec_table,
    eye,
    kron,
    ones,
    operators_equal,
    require_invertible,
    require_schur_invertible,
    same_order,
)
from .errors import (
    AmbiguousPairing,
    IllConditioned,
    NotBoseMesner,
    NotClosed,
    NotCommutative,
    NotInAlgebra,
    NotSchurClosed,
)
from .subspace import MatrixSubspace, SubspaceFlags

INTEGRALITY_EPS = 1e-6
_GENERIC_SEED = 20240601


# --------------------------------------------------------------------------
# the algebra and its duality map

@dataclass(frozen=True, eq=False)
class NomuraData:
    A: np.ndarray
    B: np.ndarray
    space: MatrixSubspace
    theta_images: tuple
    dual_space: MatrixSubspace
    tol: Tolerance = DEFAULT_TOL

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    def theta(self, M: np.ndarray, verify: bool = False) -> np.ndarray:
        return duality_map(self, M, verify=verify)

    def theta_linear(self, M: np.ndarray) -> np.ndarray:
        """Theta(M) from the stored images, by linearity (M must be in the algebra)."""
        coords = self.space.coordinates(M)
        return np.tensordot(coords, np.stack(self.theta_images), axes=1)

    def preimage(self, S: np.ndarray) -> np.ndarray:
        """The matrix M in the algebra with Theta(M) = S."""
        S = np.asarray(S, dtype=np.complex128)
        images = np.stack([T.reshape(-1) for T in self.theta_images]).T
        coeffs, *_ = np.linalg.lstsq(images, S.reshape(-1), rcond=None)
        err = np.linalg.norm(images @ coeffs - S.reshape(-1)) / max(np.linalg.norm(S), 1e-300)
        if err > self.tol.angle_eps:
            raise NotInAlgebra(float(err))
        return np.tensordot(coeffs, self.basis, axes=1)


def _rayleigh_table(M: np.ndarray, Y: np.ndarray) -> tuple[np.ndarray, float]:
    """Eigenvalue table <Y_ij, M Y_ij>/<Y_ij, Y_ij> and the worst relative residual."""
    MY = np.einsum("xy,ijy->ijx", M, Y)
    norms = np.einsum("ijx,ijx->ij", Y.conj(), Y).real
    S = np.einsum("ijx,ijx->ij", Y.conj(), MY) / norms
    resid = np.linalg.norm(MY - S[..., None] * Y, axis=-1)
    scale = np.linalg.norm(M, 2) * np.sqrt(norms)
    rel = resid / np.where(scale > 0, scale, 1.0)
    return S, float(rel.max()) if rel.size else 0.0


def nomura_algebra(A, B, tol: Tolerance = DEFAULT_TOL) -> NomuraData:
    """Compute N_{A,B} together with Theta_{A,B} on an orthonormal basis."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    n = same_order(A, B)
    require_invertible(A, "A", tol)
    require_schur_invertible(B, "B", tol)

    # P_j = diag(B e_j) A has the vectors Y_1j..Y_nj as its columns.
    Ainv = np.linalg.inv(A)
    for j in range(n):
        cond = np.linalg.cond(B[:, j][:, None] * A)
        if not np.isfinite(cond) or cond > 1.0 / tol.rank_eps:
            raise IllConditioned(j, float(cond))

    # Unknown: theta (the diagonal in the j = 0 frame).  M = P_0 diag(theta) P_0^{-1}.
    # Column j demands that K diag(theta) K^{-1} be diagonal, K = P_j^{-1} P_0.
    coeffs = np.eye(n, dtype=np.complex128)
    off = ~np.eye(n, dtype=bool)
    for j in range(1, n):
        ratio = B[:, 0] / B[:, j]
        K = Ainv @ (ratio[:, None] * A)           # P_j^{-1} P_0
        L = Ainv @ ((1.0 / ratio)[:, None] * A)   # P_0^{-1} P_j
        constraint = (K[:, None, :] * L.T[None, :, :])[off]  # rows (a, b), a != b; columns k
        scale = np.linalg.norm(constraint, 2) if constraint.size else 0.0
        if scale <= tol.abs_eps:
            continue
        reduced = constraint @ coeffs
        _, s, vh = np.linalg.svd(reduced, full_matrices=True)
        s_full = np.zeros(vh.shape[0])
        s_full[: s.size] = s
        null = vh[s_full <= tol.rank_eps * scale].conj().T
        coeffs = coeffs @ null
        if coeffs.shape[1] == 0:
            break

    P0 = B[:, 0][:, None] * A
    P0inv = Ainv / B[:, 0][None, :]
    mats = [P0 @ (theta[:, None] * P0inv) for theta in coeffs.T]
    space = MatrixSubspace.span(mats, n, tol)

    Y = eigvec_table(A, B)
    images = []
    for M in space.basis:
        S, rel = _rayleigh_table(M, Y)
        if rel > tol.angle_eps:
            raise IllConditioned(-1, 1.0 / max(rel, 1e-300))
        images.append(S)
    dual = MatrixSubspace.span(images, n, tol)
    return NomuraData(A, B, space, tuple(images), dual, tol)


def duality_map(nd: NomuraData, M, verify: bool = True) -> np.ndarray:
    """Theta_{A,B}(M), read off as Rayleigh quotients on the vectors Y_ij.

    With ``verify`` the operator identity ``X_M Delta_B X_A = Delta_B X_A Delta_S``
    is checked on every E_ij as well.
    """
    tol = nd.tol
    M = as_matrix(M, "M")
    residual = nd.space.residual(M)
    if residual > tol.angle_eps:
        raise NotInAlgebra(residual)
    S, rel = _rayleigh_table(M, eigvec_table(nd.A, nd.B))
    if rel > tol.angle_eps:
        raise NotInAlgebra(rel)
    if verify:
        lhs = compose(X(M), Delta(nd.B), X(nd.A))
        rhs = compose(Delta(nd.B), X(nd.A), Delta(S))
        E = lhs.on_basis()
        F = rhs.on_basis()
        scale = max(np.abs(E).max(), np.abs(F).max(), 1.0)
        if np.abs(E - F).max() > tol.angle_eps * scale:
            raise NotInAlgebra(float(np.abs(E - F).max() / scale))
    return S


def xdx_identity(R, S, A, B, tol: Tolerance = DEFAULT_TOL) -> Check:
    """Check ``X_R Delta_B X_A = Delta_B X_A Delta_S`` on the standard basis."""
    return operators_equal(compose(X(R), Delta(B), X(A)), compose(Delta(B), X(A), Delta(S)), tol)


def type_ii_nomura(A, tol: Tolerance = DEFAULT_TOL) -> NomuraData:
    """N_A = N_{A, A^{-s}} for a type-II matrix A."""
    A = as_matrix(A, "A")
    return nomura_algebra(A, 1.0 / A, tol)


# --------------------------------------------------------------------------
# idempotent bases

def _cluster(values: np.ndarray, eps: float) -> list[list[int]]:
    """Greedy deterministic clustering of complex vectors (rows) within eps."""
    reps: list[np.ndarray] = []
    classes: list[list[int]] = []
    for idx, v in enumerate(values):
        for c, rep in enumerate(reps):
            if np.max(np.abs(v - rep)) <= eps:
                classes[c].append(idx)
                break
        else:
            reps.append(v)
            classes.append([idx])
    return classes


def schur_idempotent_basis(space: MatrixSubspace, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """01-matrix basis of a Schur-closed space containing J.

    Positions (i, j) are grouped by the tuple of values the basis matrices
    take there; the indicator matrices of the groups are the Schur
    idempotents.  Groups are ordered by their first position in row-major
    order, so the group of (0, 0) comes first.
    """
    n = space.n
    if not space.contains(ones(n), tol):
        raise NotSchurClosed("space does not contain J")
    basis = space.basis
    values = basis.reshape(space.dim, n * n).T
    scale = max(np.abs(values).max(), 1e-300)
    classes = _cluster(values, INTEGRALITY_EPS * scale)
    if len(classes) != space.dim:
        raise NotSchurClosed(f"{len(classes)} entry classes for a space of dimension {space.dim}")
    out = []
    for cls in classes:
        E = np.zeros(n * n, dtype=np.complex128)
        E[cls] = 1.0
        E = E.reshape(n, n)
        if not space.contains(E, tol):
            raise NotSchurClosed("an entry-class indicator is not in the space")
        out.append(E)
    return out


def principal_idempotents(space: MatrixSubspace, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Primitive idempotents of a commutative matrix algebra containing I.

    A generic element of the algebra is diagonalized; its eigenprojections
    are the principal idempotents.  ``J/n`` is listed first when present,
    the rest are ordered by rank and then by the generic eigenvalue.
    """
    n = space.n
    if not space.contains(eye(n), tol):
        raise NotClosed("space does not contain I")
    flags = space.flags(tol)
    if not flags.commutative:
        raise NotCommutative("basis elements do not commute")
    if not flags.mult_closed:
        raise NotClosed("space is not closed under multiplication")

    rng = np.random.default_rng(_GENERIC_SEED)
    for _ in range(8):
        c = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
        M = np.tensordot(c, space.basis, axes=1)
        w, V = np.linalg.eig(M)
        scale = max(np.abs(w).max(), 1.0)
        groups = _cluster(w[:, None], INTEGRALITY_EPS * scale)
        if len(groups) == space.dim:
            break
    else:
        raise NotClosed("could not separate the eigenspaces of a generic element")

    Vinv = np.linalg.inv(V)
    idems = []
    for g in groups:
        E = V[:, g] @ Vinv[g, :]
        idems.append((space.project(E), np.mean(w[g]), len(g)))
    total = sum(E for E, _, _ in idems)
    if not compare(total, eye(n), tol).ok and np.abs(total - eye(n)).max() > tol.angle_eps:
        raise NotClosed("eigenprojections do not sum to I")

    J_over_n = ones(n) / n
    def key(item):
        E, lam, rank = item
        is_j = np.abs(E - J_over_n).max() <= tol.angle_eps
        return (0 if is_j else 1, rank, round(lam.real, 6), round(lam.imag, 6))
    idems.sort(key=key)
    return [E for E, _, _ in idems]


# --------------------------------------------------------------------------
# Bose-Mesner algebras and association-scheme data

@dataclass(frozen=True, eq=False)
class BoseMesnerReport:
    ok: bool
    flags: SubspaceFlags
    failing: tuple

    def __bool__(self) -> bool:
        return self.ok


def is_bose_mesner(space: MatrixSubspace, tol: Tolerance = DEFAULT_TOL) -> BoseMesnerReport:
    flags = space.flags(tol)
    failing = tuple(name for name, value in flags.as_dict().items() if not value)
    return BoseMesnerReport(not failing, flags, failing)


@dataclass(frozen=True, eq=False)
class SchemeData:
    """Both bases of a Bose-Mesner algebra and the tables relating them.

    ``A_i = sum_j P[j, i] E_j``, ``Q = n P^{-1}``, ``A_i^T = A_{T[i]}`` and
    ``A_i A_j = sum_k p[i, j, k] A_k``.
    """

    schur_basis: tuple
    principal_basis: tuple
    P: np.ndarray
    Q: np.ndarray
    T: tuple
    p: np.ndarray

    @property
    def n(self) -> int:
        return self.schur_basis[0].shape[0]

    @property
    def classes(self) -> int:
        """Number of non-identity relations (d)."""
        return len(self.schur_basis) - 1

    def transpose_matrix(self) -> np.ndarray:
        m = len(self.T)
        Tm = np.zeros((m, m))
        for i, j in enumerate(self.T):
            Tm[j, i] = 1.0
        return Tm

    def schur_coordinates(self, M: np.ndarray) -> np.ndarray:
        """Coefficients c with M = sum c_i A_i (least squares for M outside the span)."""
        return np.array([np.sum(A * M) / np.sum(A).real for A in self.schur_basis])

    def principal_coordinates(self, M: np.ndarray) -> np.ndarray:
        """Coefficients c with M = sum c_j E_j."""
        return np.array([np.trace(E @ M) / np.trace(E).real for E in self.principal_basis])

    def reordered(self, order: Sequence[int]) -> "SchemeData":
        """Same scheme with the principal idempotents permuted: new E_k = old E_order[k]."""
        E = tuple(self.principal_basis[k] for k in order)
        P = self.P[list(order), :]
        return SchemeData(self.schur_basis, E, P, self.n * np.linalg.inv(P), self.T, self.p)

    def validate(self, tol: Tolerance = DEFAULT_TOL) -> Check:
        n = self.n
        A, E = self.schur_basis, self.principal_basis
        checks = [
            compare(A[0], eye(n), tol),
            compare(sum(A), ones(n), tol),
            compare(sum(E), eye(n), tol),
        ]
        for i, j in itertools.product(range(len(A)), repeat=2):
            checks.append(compare(A[i] * A[j], A[i] if i == j else 0 * A[i], tol))
            checks.append(compare(E[i] @ E[j], E[i] if i == j else 0 * E[i], tol))
        for i in range(len(A)):
            checks.append(compare(A[i].T, A[self.T[i]], tol))
            checks.append(compare(A[i], sum(self.P[j, i] * E[j] for j in range(len(E))), tol))
        checks.append(compare(self.Q, n * np.linalg.inv(self.P), tol))
        worst = max(c.residual for c in checks)
        return Check(all(checks), worst)


def assemble_scheme(schur_basis: Sequence[np.ndarray], principal_basis: Sequence[np.ndarray],
                    tol: Tolerance = DEFAULT_TOL) -> SchemeData:
    """Eigenmatrices, transpose map and intersection numbers from both bases."""
    A = [np.asarray(M, dtype=np.complex128) for M in schur_basis]
    E = [np.asarray(M, dtype=np.complex128) for M in principal_basis]
    n, m = A[0].shape[0], len(A)
    sizes = np.array([np.sum(M).real for M in A])
    P = np.array([[np.trace(A[i] @ E[j]) / np.trace(E[j]) for i in range(m)] for j in range(m)])
    Q = n * np.linalg.inv(P)

    T = []
    for M in A:
        hits = [k for k in range(m) if np.abs(M.T - A[k]).max() <= tol.abs_eps]
        if len(hits) != 1:
            raise NotBoseMesner("transpose closure", "transpose of a Schur idempotent is not a Schur idempotent")
        T.append(hits[0])

    p = np.zeros((m, m, m))
    for i, j in itertools.product(range(m), repeat=2):
        prod = A[i] @ A[j]
        coeffs = np.array([np.sum(A[k] * prod) / sizes[k] for k in range(m)])
        recon = np.tensordot(coeffs, np.stack(A), axes=1)
        if np.abs(recon - prod).max() > INTEGRALITY_EPS * max(1.0, np.abs(prod).max()):
            raise NotBoseMesner("multiplicative closure", f"A_{i} A_{j} is not in the span")
        if np.abs(coeffs.imag).max() > INTEGRALITY_EPS or np.abs(coeffs.real - np.rint(coeffs.real)).max() > INTEGRALITY_EPS:
            raise NotBoseMesner("integrality", f"A_{i} A_{j} has non-integral intersection numbers")
        if (np.rint(coeffs.real) < 0).any():
            raise NotBoseMesner("non-negativity", f"A_{i} A_{j} has a negative intersection number")
        p[i, j] = np.rint(coeffs.real)
    return SchemeData(tuple(A), tuple(E), P, Q, tuple(T), p)


def scheme_from_space(space: MatrixSubspace, tol: Tolerance = DEFAULT_TOL) -> SchemeData:
    report = is_bose_mesner(space, tol)
    if not report.ok:
        raise NotBoseMesner(report.failing[0])
    A = schur_idempotent_basis(space, tol)
    if np.abs(A[0] - eye(space.n)).max() > tol.abs_eps:
        raise NotBoseMesner("contains_identity", "I is not a Schur idempotent")
    E = principal_idempotents(space, tol)
    sd = assemble_scheme(A, E, tol)
    check = sd.validate(tol)
    if not check.ok:
        raise NotBoseMesner("scheme invariants", f"residual {check.residual:.3e}")
    return sd


# --------------------------------------------------------------------------
# dualities

@dataclass(frozen=True, eq=False)
class SelfDualityReport:
    ok: bool
    residual: float
    pairing: tuple | None  # pairing[i] = j  means  Theta(E_j) = A_i
    P: np.ndarray | None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def duality_pairing(sd: SchemeData, theta_images: Sequence[np.ndarray], tol: Tolerance = DEFAULT_TOL) -> tuple:
    """Order of the principal idempotents with Theta(E_order[i]) = A_i.

    Each Theta(E_j) must be (numerically) one of the Schur idempotents and the
    matching must be one-to-one; anything else is reported as ambiguous.
    """
    n = sd.n
    Th = np.stack([np.asarray(T, dtype=np.complex128) for T in theta_images])
    order = [None] * len(sd.schur_basis)
    for j in range(len(sd.principal_basis)):
        image = np.tensordot(sd.Q[:, j] / n, Th, axes=1)  # E_j = n^{-1} sum_i Q[i, j] A_i
        dists = [np.abs(image - A).max() for A in sd.schur_basis]
        hits = [i for i, dist in enumerate(dists) if dist <= tol.angle_eps * max(1.0, n)]
        if len(hits) != 1:
            raise AmbiguousPairing(f"Theta(E_{j}) matches {len(hits)} Schur idempotents (closest {min(dists):.2e})")
        if order[hits[0]] is not None:
            raise AmbiguousPairing(f"two principal idempotents map to A_{hits[0]}")
        order[hits[0]] = j
    return tuple(order)


def check_formal_self_duality(sd: SchemeData, theta_images: Sequence[np.ndarray],
                              tol: Tolerance = DEFAULT_TOL) -> SelfDualityReport:
    """Verify that ``A_i -> theta_images[i]`` extends to a duality of the algebra.

    Checks Theta(MN) = Theta(M) o Theta(N), Theta(M o N) = Theta(M) Theta(N)/n and
    Theta(Theta(M)) = n M^T on the Schur basis, then reorders the principal
    idempotents so that Theta(E_i) = A_i and checks P^2 = n T.
    """
    n, m = sd.n, len(sd.schur_basis)
    A = sd.schur_basis
    Th = np.stack([np.asarray(T, dtype=np.complex128) for T in theta_images])
    theta = lambda M: np.tensordot(sd.schur_coordinates(M), Th, axes=1)

    span = MatrixSubspace.span(A, n, tol)
    worst = max(span.residual(T) for T in Th)
    if worst > tol.angle_eps:
        return SelfDualityReport(False, worst, None, None, "Theta does not map the algebra to itself")
    residuals = []
    for i, j in itertools.product(range(m), repeat=2):
        residuals.append(np.abs(theta(A[i] @ A[j]) - Th[i] * Th[j]).max())
        residuals.append(np.abs(theta(A[i] * A[j]) - Th[i] @ Th[j] / n).max())
    for i in range(m):
        residuals.append(np.abs(theta(Th[i]) - n * A[i].T).max())
    worst = float(max(residuals))
    if worst > tol.angle_eps * n:
        return SelfDualityReport(False, worst, None, None, "duality identities fail")
    try:
        order = duality_pairing(sd, Th, tol)
    except AmbiguousPairing as exc:
        return SelfDualityReport(False, worst, None, None, str(exc))
    aligned = sd.reordered(order)
    p2 = np.abs(aligned.P @ aligned.P - n * sd.transpose_matrix()).max()
    worst = max(worst, float(p2))
    return SelfDualityReport(bool(p2 <= tol.angle_eps * n), worst, order, aligned.P)


def theta_on_schur_basis(nd: NomuraData, sd: SchemeData) -> list[np.ndarray]:
    return [duality_map(nd, A, verify=False) for A in sd.schur_basis]


# --------------------------------------------------------------------------
# transformations of the pair

@dataclass(frozen=True, eq=False)
class TransformReport:
    ok: bool
    residuals: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def monomial_transform_check(A, B, *, D=None, E=None, F=None, P=None, Q=None, R=None,
                             tol: Tolerance = DEFAULT_TOL) -> TransformReport:
    """Compare N_{A,B} with the algebras of its diagonal and permutation transforms.

    Diagonal scaling: N_{DAE, D^{-1}BF} = N_{A,B} with the same duality image.
    Permutations:     N_{PAQ, PBR} = P N_{A,B} P^{-1}, Theta(P M P^{-1}) = Q^T Theta(M) R.
    """
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    n = A.shape[0]
    I = eye(n)
    D, E, F = (I if M is None else as_matrix(M) for M in (D, E, F))
    P, Q, R = (I if M is None else as_matrix(M) for M in (P, Q, R))
    base = nomura_algebra(A, B, tol)

    scaled = nomura_algebra(D @ A @ E, np.linalg.inv(D) @ B @ F, tol)
    res = {"scaling_space": base.space.distance(scaled.space) if base.dim == scaled.dim else np.inf}
    res["scaling_theta"] = max(
        (np.abs(duality_map(scaled, M, verify=False) - T).max() for M, T in zip(base.basis, base.theta_images)),
        default=0.0,
    )

    permuted = nomura_algebra(P @ A @ Q, P @ B @ R, tol)
    Pinv = np.linalg.inv(P)
    conj = base.space.map(lambda M: P @ M @ Pinv)
    res["perm_space"] = conj.distance(permuted.space) if conj.dim == permuted.dim else np.inf
    res["perm_theta"] = max(
        (np.abs(duality_map(permuted, P @ M @ Pinv, verify=False) - Q.T @ T @ R).max()
         for M, T in zip(base.basis, base.theta_images)),
        default=0.0,
    )
    ok = res["scaling_space"] <= tol.angle_eps and res["perm_space"] <= tol.angle_eps
    ok = ok and res["scaling_theta"] <= tol.angle_eps * n and res["perm_theta"] <= tol.angle_eps * n
    return TransformReport(bool(ok), {k: float(v) for k, v in res.items()})


def tensor_nomura_check(A1, B1, A2, B2, tol: Tolerance = DEFAULT_TOL) -> TransformReport:
    """N_{A1 x A2, B1 x B2} = N_{A1,B1} x N_{A2,B2}, for the algebra and its dual."""
    left = nomura_algebra(A1, B1, tol)
    right = nomura_algebra(A2, B2, tol)
    whole = nomura_algebra(kron(A1, A2), kron(B1, B2), tol)
    prod = MatrixSubspace.span([kron(M, N) for M in left.basis for N in right.basis], tol=tol)
    dual = MatrixSubspace.span([kron(M, N) for M in left.theta_images for N in right.theta_images], tol=tol)
    res = {
        "dim_product": float(abs(whole.dim - left.dim * right.dim)),
        "space": prod.distance(whole.space) if prod.dim == whole.dim else np.inf,
        "dual_space": dual.distance(whole.dual_space) if dual.dim == whole.dual_space.dim else np.inf,
    }
    ok = res["dim_product"] == 0 and res["space"] <= tol.angle_eps and res["dual_space"] <= tol.angle_eps
    return TransformReport(bool(ok), {k: float(v) for k, v in res.items()})
