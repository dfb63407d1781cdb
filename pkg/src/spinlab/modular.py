"""Modular invariance equation and the search for four-weight spin models.

For a formally self-dual Bose-Mesner algebra with eigenmatrix P (ordered so
that the duality sends E_i to A_i, hence ``P^2 = n T``) a weight vector t
satisfies the modular invariance equation when ``(P D)^3 = t_0 d^3 I`` with
``D = diag(t)``.  Every spin model ``W = sum t_i A_i^T`` in the algebra gives a
solution.

Solutions are computed projectively: with ``s = t / t_0`` the equation
says ``(P diag(s))^3 = kappa I`` for some scalar kappa, and then
``t = lambda s`` with ``lambda^2 = d^3 / kappa``.  Both signs of lambda are
returned.

The twisted system couples the equation for V (loop 2d) with the one for
V' (weights on the index set J negated, loop -2d); it drives the search for
invertible Jones pairs through the algebra N_V.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .construct import extract_pair_from_V
from .core import DEFAULT_TOL, Tolerance, as_matrix, blocks, ones
from .errors import (
    AmbiguousPairing,
    BadParameters,
    NoConvergence,
    NoDuality,
    NotImprimitive,
    WrongShape,
    ZeroWeight,
)
from .jones import JonesPair
from .nomura import (
    NomuraData,
    SchemeData,
    check_formal_self_duality,
    duality_pairing,
    scheme_from_space,
    theta_on_schur_basis,
    type_ii_nomura,
)

log = logging.getLogger(__name__)

CONVERGENCE_EPS = 1e-11
DEDUP_EPS = 1e-6
STARTS_PER_UNKNOWN = 64
MAX_ITERATIONS = 80
BATCH = 64
DIRECT_LIMIT = 6


@dataclass(frozen=True, eq=False)
class ModularInvarianceProblem:
    """Eigenmatrix P (duality ordering), loop variable d and optional I/J split.

    ``d`` is the loop variable of the spin model being sought, so for the
    search through N_V it is twice the loop variable of the Jones pair.
    """

    P: np.ndarray
    d: complex
    T: np.ndarray
    index_sets: tuple | None = None

    def __post_init__(self):
        P = as_matrix(self.P, "P")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "d", complex(self.d))
        if self.index_sets is not None:
            I, J = (tuple(sorted(int(x) for x in s)) for s in self.index_sets)
            if set(I) & set(J) or set(I) | set(J) != set(range(P.shape[0])):
                raise BadParameters("index sets must partition the classes")
            if 0 not in I:
                raise BadParameters("the identity relation must lie in the first index set")
            object.__setattr__(self, "index_sets", (I, J))

    @property
    def size(self) -> int:
        return self.P.shape[0]

    @property
    def order(self) -> int:
        """Number of points n of the underlying scheme (``d^2``)."""
        return int(round((self.d * self.d).real))

    def duality_residual(self) -> float:
        return float(np.abs(self.P @ self.P - self.order * self.T).max())

    def require_self_dual(self, tol: Tolerance = DEFAULT_TOL) -> None:
        res = self.duality_residual()
        if res > tol.angle_eps * self.order:
            raise NoDuality(f"P^2 differs from {self.order} T (residual {res:.3e})")

    @property
    def signs(self) -> np.ndarray:
        """+1 on I and -1 on J (all +1 without an I/J split)."""
        sigma = np.ones(self.size)
        if self.index_sets is not None:
            sigma[list(self.index_sets[1])] = -1.0
        return sigma

    @classmethod
    def from_scheme(cls, scheme: SchemeData, theta_images: Sequence[np.ndarray], d,
                    index_sets=None, tol: Tolerance = DEFAULT_TOL) -> "ModularInvarianceProblem":
        report = check_formal_self_duality(scheme, theta_images, tol)
        if not report.ok:
            raise NoDuality(report.detail or f"duality check fails (residual {report.residual:.3e})")
        return cls(report.P, d, scheme.transpose_matrix(), index_sets)

    @classmethod
    def from_spin_model(cls, W, d, tol: Tolerance = DEFAULT_TOL) -> tuple["ModularInvarianceProblem", np.ndarray]:
        """Problem for the Nomura algebra of a spin model, with the model's own weights."""
        W = as_matrix(W, "W")
        nd = type_ii_nomura(W, tol)
        scheme = scheme_from_space(nd.space, tol)
        problem = cls.from_scheme(scheme, theta_on_schur_basis(nd, scheme), d, tol=tol)
        return problem, weights_of(W, scheme)


def weights_of(W: np.ndarray, scheme: SchemeData) -> np.ndarray:
    """The t with ``W = sum t_i A_i^T``, read off one entry per relation."""
    t = []
    for A in scheme.schur_basis:
        i, j = np.argwhere(np.abs(A.T) > 0.5)[0]
        t.append(W[i, j])
    return np.array(t, dtype=np.complex128)


def matrix_from_weights(t, scheme: SchemeData) -> np.ndarray:
    return sum(ti * A.T for ti, A in zip(t, scheme.schur_basis))


def theta_images_from_pairing(scheme: SchemeData, pairing: Sequence[int]) -> list[np.ndarray]:
    """Images of the Schur idempotents under the duality with ``Theta(E_pairing[i]) = A_i``.

    Since ``A_k = sum_j P[j, k] E_j``, ``Theta(A_k) = sum_i P[pairing[i], k] A_i``.
    """
    pairing = [int(j) for j in pairing]
    m = len(scheme.schur_basis)
    if sorted(pairing) != list(range(m)):
        raise BadParameters(f"pairing must be a permutation of 0..{m - 1}")
    A = np.stack(scheme.schur_basis)
    return [np.tensordot(scheme.P[pairing, k], A, axes=1) for k in range(m)]


@dataclass(frozen=True, eq=False)
class MISolution:
    t: np.ndarray
    residual: float

    @property
    def projective(self) -> np.ndarray:
        return self.t / self.t[0]


def _check_weights(t) -> np.ndarray:
    t = np.asarray(t, dtype=np.complex128).reshape(-1)
    if np.min(np.abs(t)) == 0:
        raise ZeroWeight("weights must be nonzero")
    return t


def modular_residual(P: np.ndarray, t: np.ndarray, d: complex, sign: float = 1.0) -> float:
    """``max |(P diag(t))^3 - sign t_0 d^3 I|``."""
    M = P * t[None, :]
    return float(np.abs(M @ M @ M - sign * t[0] * d ** 3 * np.eye(len(t))).max())


def check_modular_invariance(p: ModularInvarianceProblem, t, tol: Tolerance = DEFAULT_TOL) -> float:
    t = _check_weights(t)
    if t.shape[0] != p.size:
        raise BadParameters(f"expected {p.size} weights, got {t.shape[0]}")
    return modular_residual(p.P, t, p.d)


def check_twisted(p: ModularInvarianceProblem, t, tol: Tolerance = DEFAULT_TOL) -> float:
    """Worst residual of the V equation and of the V' equation (weights on J negated)."""
    t = _check_weights(t)
    return max(modular_residual(p.P, t, p.d), modular_residual(p.P, t * p.signs, p.d, sign=-1.0))


# --------------------------------------------------------------------------
# solver

def _cube_and_jacobian(P: np.ndarray, s: np.ndarray, sigma: np.ndarray):
    """``G = (P diag(sigma s))^3`` for a batch of s and its derivatives in s.

    Returns G with shape (b, m, m) and dG with shape (b, m, m, m) where
    dG[:, k] is the derivative with respect to s_k.
    """
    M = P[None, :, :] * (sigma * s)[:, None, :]
    M2 = M @ M
    G = M2 @ M
    MP = M @ P
    M2P = M2 @ P
    m = P.shape[0]
    dG = (P.T[None, :, :, None] * M2[:, :, None, :]
          + np.transpose(MP, (0, 2, 1))[:, :, :, None] * M[:, :, None, :])
    diag_term = np.zeros_like(dG)
    idx = np.arange(m)
    diag_term[:, idx, :, idx] = np.transpose(M2P, (2, 0, 1))
    dG = (dG + diag_term) * sigma[None, :, None, None]
    return G, dG


def _system(P: np.ndarray, s: np.ndarray, sigmas: Sequence[np.ndarray], factors: Sequence[float]):
    """Residual vector of ``(P diag(sigma s))^3 = factor kappa I`` and its Jacobian.

    kappa is the mean diagonal entry of the first cube.  Only s_1.. are
    unknowns (s_0 = 1).
    """
    m = P.shape[0]
    eye_m = np.eye(m)
    b = s.shape[0]
    cubes = [_cube_and_jacobian(P, s, sigma) for sigma in sigmas]
    G0, dG0 = cubes[0]
    kappa = np.trace(G0, axis1=1, axis2=2) / m
    dkappa = np.trace(dG0, axis1=2, axis2=3) / m
    F, Jac = [], []
    for (G, dG), factor in zip(cubes, factors):
        F.append((G - factor * kappa[:, None, None] * eye_m).reshape(b, -1))
        Jk = dG - factor * dkappa[:, :, None, None] * eye_m
        Jac.append(Jk.reshape(b, m, -1).transpose(0, 2, 1))
    F = np.concatenate(F, axis=1)
    Jac = np.concatenate(Jac, axis=1)[:, :, 1:]
    return F, Jac, kappa


def _relative(F: np.ndarray, kappa: np.ndarray) -> np.ndarray:
    return np.abs(F).max(axis=1) / np.maximum(np.abs(kappa), 1e-300)


def _residual_only(P, s, sigmas, factors) -> tuple[np.ndarray, np.ndarray]:
    cubes = []
    for sigma in sigmas:
        M = P[None, :, :] * (sigma * s)[:, None, :]
        cubes.append(M @ M @ M)
    m = P.shape[0]
    kappa = np.trace(cubes[0], axis1=1, axis2=2) / m
    worst = np.zeros(len(s))
    for G, factor in zip(cubes, factors):
        diff = G - factor * kappa[:, None, None] * np.eye(m)
        worst = np.maximum(worst, np.abs(diff).reshape(len(s), -1).max(axis=1))
    return worst / np.maximum(np.abs(kappa), 1e-300), kappa


def _newton(P, sigmas, factors, s, max_iter: int = MAX_ITERATIONS):
    """Damped Gauss-Newton (Levenberg-Marquardt) on a batch of starting points.

    A start is abandoned when ten iterations fail to halve its residual.
    """
    b, m = s.shape
    s = s.copy()
    res, kappa = _residual_only(P, s, sigmas, factors)
    mu = np.full(b, 1e-6)
    alive = np.ones(b, dtype=bool)
    checkpoint = res.copy()
    for it in range(max_iter):
        active = alive & (res > CONVERGENCE_EPS)
        if not active.any():
            break
        idx = np.flatnonzero(active)
        F, Ja, _ = _system(P, s[idx], sigmas, factors)
        JH = np.conj(np.transpose(Ja, (0, 2, 1)))
        normal = JH @ Ja
        scale = np.abs(np.diagonal(normal, axis1=1, axis2=2)).max(axis=1)
        normal = normal + (mu[idx] * np.maximum(scale, 1.0))[:, None, None] * np.eye(m - 1)
        step = -np.linalg.solve(normal, JH @ F[:, :, None])[:, :, 0]
        current = s[idx]
        best, best_res, best_kappa = current.copy(), res[idx].copy(), kappa[idx].copy()
        pending = np.ones(len(idx), dtype=bool)
        damp = 1.0
        for _ in range(8):
            trial = current.copy()
            trial[:, 1:] += damp * step
            rt, kt = _residual_only(P, trial, sigmas, factors)
            better = pending & (rt < best_res)
            best[better], best_res[better], best_kappa[better] = trial[better], rt[better], kt[better]
            pending &= ~better
            if not pending.any():
                break
            damp /= 2
        mu[idx] = np.where(pending, np.minimum(mu[idx] * 10, 1e6), np.maximum(mu[idx] / 10, 1e-12))
        s[idx], res[idx], kappa[idx] = best, best_res, best_kappa
        if it % 10 == 9:
            alive &= (res < checkpoint / 2) | (res <= CONVERGENCE_EPS)
            checkpoint = res.copy()
    return s, res, kappa


def _torus_starts(m: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    s = np.exp(2j * np.pi * rng.random((count, m)))
    s[:, 0] = 1.0
    return s


def distinct_rows(rows, eps: float = DEDUP_EPS) -> np.ndarray:
    """Indices of the first occurrence of each row, rows closer than eps (relative) being equal."""
    rows = np.asarray(rows)
    if len(rows) == 0:
        return np.zeros(0, dtype=int)
    kept = [0]
    scale = np.maximum(1.0, np.abs(rows).max(axis=1))
    for i in range(1, len(rows)):
        ref = rows[kept]
        dist = np.abs(ref - rows[i]).max(axis=1)
        if (dist > eps * scale[kept]).all():
            kept.append(i)
    return np.array(kept)


def _dedup(candidates: list[np.ndarray]) -> list[np.ndarray]:
    return [candidates[i] for i in distinct_rows(np.array(candidates))]


def _sort_key(sol: MISolution):
    flat = []
    for z in sol.t:
        flat.extend([round(z.real, 8), round(z.imag, 8)])
    return (round(sol.residual, 12), tuple(flat))


def _scale_solutions(projective: Sequence[np.ndarray], kappas: Sequence[complex], d3: complex) -> list[np.ndarray]:
    out = []
    for s, kappa in zip(projective, kappas):
        lam = np.sqrt(d3 / kappa)
        out.extend([lam * s, -lam * s])
    return out


def _fixed_point_seeds(p: ModularInvarianceProblem, count: int, seed: int) -> np.ndarray:
    """Projective seeds from the square system ``Theta(W) = d W^{-s}``.

    In Schur coordinates ``c = T t`` this reads ``(P c)_j c_j = d`` for every
    j: one quadratic equation per unknown, so plain Newton converges from
    almost every start.  Every spin model ``sum t_i A_i^T`` in the algebra
    solves it, which makes its solutions good starting points for the
    (overdetermined) modular invariance system.
    """
    Tm = p.T
    PT = p.P @ Tm
    delta = p.d
    rng = np.random.default_rng(seed + 1)
    t = np.exp(2j * np.pi * rng.random((count, p.size))) * np.sqrt(abs(delta) / p.size)

    def residual(t):
        return (PT @ t.T * (Tm @ t.T)).T - delta

    for _ in range(MAX_ITERATIONS):
        f = residual(t)
        r = np.abs(f).max(axis=1)
        if (r <= CONVERGENCE_EPS * abs(delta)).all():
            break
        c = (Tm @ t.T).T
        q = (PT @ t.T).T
        jac = PT[None] * c[:, :, None] + q[:, :, None] * Tm[None]
        singular = np.abs(np.linalg.det(jac)) < 1e-300
        jac[singular] += np.eye(p.size) * 1e-8
        step = np.linalg.solve(jac, -f[:, :, None])[:, :, 0]
        damp = np.ones(count)
        for _ in range(10):
            worse = np.abs(residual(t + damp[:, None] * step)).max(axis=1) > r
            if not worse.any():
                break
            damp[worse] /= 2
        t = t + damp[:, None] * step
    r = np.abs(residual(t)).max(axis=1) / abs(delta)
    good = (r <= 1e-8) & (np.abs(t).min(axis=1) > 1e-8)
    seeds = t[good] / t[good][:, :1]
    return seeds[distinct_rows(seeds, 1e-4)].reshape(-1, p.size)


def _null_basis(M: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    _, sv, vh = np.linalg.svd(M)
    rank = int((sv > tol * max(sv[0], 1.0)).sum()) if sv.size else 0
    return np.conj(vh[rank:]).T


def _twisted_seeds(p: ModularInvarianceProblem, count: int, seed: int) -> np.ndarray:
    """Projective seeds from the fixed-point equations of V and V' together.

    Writing ``c = T t`` and splitting c into its parts on I and J, the
    equations ``Theta(V) = d V^{-s}`` and ``Theta(V') = -d V'^{-s}`` are
    equivalent to the linear conditions ``P_II c_I = 0``, ``P_JJ c_J = 0``
    and the bilinear ones ``c_I o (P_IJ c_J) = d``, ``c_J o (P_JI c_I) = d``.
    The bilinear system lives on two null spaces of half the size.
    """
    I, J = (list(x) for x in p.index_sets)
    P, delta = p.P, p.d
    NI = _null_basis(P[np.ix_(I, I)])
    NJ = _null_basis(P[np.ix_(J, J)])
    if NI.shape[1] == 0 or NJ.shape[1] == 0:
        return np.zeros((0, p.size), dtype=np.complex128)
    K1 = P[np.ix_(I, J)] @ NJ
    K2 = P[np.ix_(J, I)] @ NI
    rx, ry = NI.shape[1], NJ.shape[1]
    rng = np.random.default_rng(seed + 2)
    z = (rng.standard_normal((count, rx + ry)) + 1j * rng.standard_normal((count, rx + ry)))
    z *= np.sqrt(abs(delta)) / np.sqrt(rx + ry)

    def evaluate(z):
        x, y = z[:, :rx], z[:, rx:]
        cI, cJ = x @ NI.T, y @ NJ.T
        uI, uJ = y @ K1.T, x @ K2.T
        F = np.concatenate([cI * uI - delta, cJ * uJ - delta], axis=1)
        return F, cI, cJ, uI, uJ

    F, cI, cJ, uI, uJ = evaluate(z)
    mu = np.full(count, 1e-6)
    for _ in range(3 * MAX_ITERATIONS):
        res = np.abs(F).max(axis=1)
        active = res > CONVERGENCE_EPS * abs(delta)
        if not active.any():
            break
        a = np.flatnonzero(active)
        top = np.concatenate([uI[a, :, None] * NI[None], cI[a, :, None] * K1[None]], axis=2)
        bottom = np.concatenate([cJ[a, :, None] * K2[None], uJ[a, :, None] * NJ[None]], axis=2)
        jac = np.concatenate([top, bottom], axis=1)
        JH = np.conj(np.transpose(jac, (0, 2, 1)))
        normal = JH @ jac
        scale = np.abs(np.diagonal(normal, axis1=1, axis2=2)).max(axis=1)
        normal = normal + (mu[a] * np.maximum(scale, 1.0))[:, None, None] * np.eye(rx + ry)
        step = -np.linalg.solve(normal, JH @ F[a][:, :, None])[:, :, 0]
        trial = z[a] + step
        Ft = evaluate(trial)[0]
        better = np.abs(Ft).max(axis=1) < res[a]
        z[a[better]] = trial[better]
        mu[a] = np.where(better, np.maximum(mu[a] / 10, 1e-12), np.minimum(mu[a] * 10, 1e8))
        F, cI, cJ, uI, uJ = evaluate(z)
    good = np.abs(F).max(axis=1) <= 1e-8 * abs(delta)
    cI, cJ = cI[good], cJ[good]
    nonzero = (np.abs(cI).min(axis=1) > 1e-8) & (np.abs(cJ).min(axis=1) > 1e-8)
    cI, cJ = cI[nonzero], cJ[nonzero]
    # solutions come in families (mu c_I, c_J / mu); compare them up to mu
    keys = np.concatenate([cI / cI[:, :1], cJ / cJ[:, :1]], axis=1)
    seeds = []
    for k in distinct_rows(keys, 1e-4):
        ci, cj = cI[k], cJ[k]
        for nu in _family_scales(p, ci, cj, rng):
            c = np.zeros(p.size, dtype=np.complex128)
            c[I], c[J] = np.sqrt(nu) * ci, cj / np.sqrt(nu)
            t = p.T.T @ c
            seeds.append(t / t[0])
    return np.array(seeds).reshape(-1, p.size)


def _family_scales(p: ModularInvarianceProblem, cI: np.ndarray, cJ: np.ndarray, rng) -> list[complex]:
    """Values nu = mu^2 where ``(mu c_I, c_J / mu)`` best satisfies the V equation.

    Along the family, ``mu^3 ((P D)^3 - t_0 d^3 I)`` is a cubic in nu with
    matrix coefficients; the candidates are the roots of a random scalar
    combination of its entries, ranked by the full residual.
    """
    I, J = (list(x) for x in p.index_sets)
    c = np.zeros(p.size, dtype=np.complex128)
    c[I] = cI
    tI = p.T.T @ c
    c = np.zeros(p.size, dtype=np.complex128)
    c[J] = cJ
    tJ = p.T.T @ c
    MI, MJ = p.P * tI[None, :], p.P * tJ[None, :]
    eye_m = np.eye(p.size)
    coeff = {3: MI @ MI @ MI, 1: MI @ MI @ MJ + MI @ MJ @ MI + MJ @ MI @ MI,
             -1: MI @ MJ @ MJ + MJ @ MI @ MJ + MJ @ MJ @ MI, -3: MJ @ MJ @ MJ}
    coeff[1] = coeff[1] - tI[0] * p.d ** 3 * eye_m
    # multiply by mu^3: nu^3 C3 + nu^2 C1 + nu C-1 + C-3
    stack = [coeff[3], coeff[1], coeff[-1], coeff[-3]]
    weights = rng.standard_normal(eye_m.size) + 1j * rng.standard_normal(eye_m.size)
    poly = [np.sum(C.reshape(-1) * weights) for C in stack]
    roots = [r for r in np.roots(poly) if abs(r) > 1e-12] if np.abs(poly).max() > 0 else []

    def residual(nu):
        total = sum(C * nu ** (3 - k) for k, C in enumerate(stack))
        return np.abs(total).max() / max(abs(nu) ** 1.5, 1e-300)

    ranked = sorted(roots, key=residual)
    return ranked[:1] + [r for r in ranked[1:] if residual(r) <= 1e-6]


def _run_batches(p, sigmas, factors, s0):
    if len(s0) == 0:
        empty = np.zeros(0)
        return np.zeros((0, p.size), dtype=np.complex128), empty, empty.astype(np.complex128)
    parts = [_newton(p.P, sigmas, factors, s0[k:k + BATCH]) for k in range(0, len(s0), BATCH)]
    return tuple(np.concatenate(x) for x in zip(*parts))


def _solve(p: ModularInvarianceProblem, sigmas, factors, residual_fn, starts: int | None, seed: int,
           tol: Tolerance) -> list[MISolution]:
    """Multi-start damped Newton on the projective system.

    Starts come from two sources: points on the unit torus (for systems of
    at most ``DIRECT_LIMIT`` weights, where the direct system is cheap) and
    the solutions of the square fixed-point system, which reach the spin
    models of larger algebras.
    """
    m = p.size
    count = starts if starts is not None else STARTS_PER_UNKNOWN * max(1, m - 1)
    if p.index_sets is None:
        s0 = _fixed_point_seeds(p, count, seed)
    else:
        s0 = _twisted_seeds(p, count, seed)
    if m <= DIRECT_LIMIT:
        s0 = np.concatenate([_torus_starts(m, count, seed), s0])
    s, res, kappa = _run_batches(p, sigmas, factors, s0)
    good = (res <= CONVERGENCE_EPS) & (np.abs(kappa) > 1e-12)
    if len(s):
        good &= np.abs(s).min(axis=1) > 1e-8
    if not good.any():
        raise NoConvergence(sorted(res.tolist()) or [float("inf")])
    order = np.array([i for i in np.argsort(res) if good[i]])
    unique = order[distinct_rows(s[order])]
    kept, kappas = list(s[unique]), list(kappa[unique])
    weights = _scale_solutions(kept, kappas, p.d ** 3)
    sols = [MISolution(t, residual_fn(t)) for t in weights]
    return sorted(sols, key=_sort_key)


def solve_modular_invariance(p: ModularInvarianceProblem, tol: Tolerance = DEFAULT_TOL,
                             starts: int | None = None, seed: int = 0) -> list[MISolution]:
    """All weight vectors found for ``(P D)^3 = t_0 d^3 I``.

    Two classes are solved in closed form: ``s = t_1/t_0`` satisfies
    ``s + 1/s = 2 - n``.  Larger systems use seeded multi-start damped
    Newton; solutions are deduplicated and sorted by residual.
    """
    p.require_self_dual(tol)
    residual_fn = lambda t: modular_residual(p.P, t, p.d)
    if p.size == 2:
        n = p.order
        roots = np.roots([1.0, n - 2.0, 1.0]).astype(np.complex128)
        projective = _dedup([np.array([1.0, r], dtype=np.complex128) for r in roots])
        kappas = []
        for s in projective:
            M = p.P * s[None, :]
            kappas.append(np.trace(M @ M @ M) / 2)
        sols = [MISolution(t, residual_fn(t)) for t in _scale_solutions(projective, kappas, p.d ** 3)]
        return sorted(sols, key=_sort_key)
    return _solve(p, [np.ones(p.size)], [1.0], residual_fn, starts, seed, tol)


def solve_twisted(p: ModularInvarianceProblem, tol: Tolerance = DEFAULT_TOL,
                  starts: int | None = None, seed: int = 0) -> list[tuple[MISolution, MISolution]]:
    """Weights solving the V equation and the V' equation together.

    Each result is a pair (weights of V, weights of V'); the second vector
    is the first with the entries on J negated.
    """
    if p.index_sets is None:
        raise BadParameters("the twisted system needs index sets I and J")
    p.require_self_dual(tol)
    sigma = p.signs
    residual_fn = lambda t: check_twisted(p, t, tol)
    sols = _solve(p, [np.ones(p.size), sigma], [1.0, -1.0], residual_fn, starts, seed, tol)
    out = []
    for sol in sols:
        tp = sol.t * sigma
        out.append((sol, MISolution(tp, modular_residual(p.P, tp, p.d, sign=-1.0))))
    return out


# --------------------------------------------------------------------------
# the four-weight search

def imprimitive_index_sets(scheme: SchemeData, tol: Tolerance = DEFAULT_TOL) -> tuple[tuple, tuple]:
    """Split the relations into those inside the two 2n-blocks (I) and those between them (J)."""
    N = scheme.n
    if N % 4:
        raise NotImprimitive(f"order {N} is not divisible by 4")
    half = N // 2
    Jh, Z = ones(half), np.zeros((half, half))
    inside = blocks([[Jh, Z], [Z, Jh]])
    I = [i for i, A in enumerate(scheme.schur_basis) if np.abs(A.T * (1 - inside)).max() <= tol.abs_eps]
    J = [j for j, A in enumerate(scheme.schur_basis) if np.abs(A.T * inside).max() <= tol.abs_eps]
    if len(I) + len(J) != len(scheme.schur_basis):
        raise NotImprimitive("some relation meets both the diagonal and the off-diagonal blocks")
    if not I or not J:
        raise NotImprimitive("I_2 x J_2n is not a sum of Schur idempotents")
    return tuple(I), tuple(J)


@dataclass
class SearchLog:
    """Outcome of each stage; ``outcomes`` lists (candidate, stage, message)."""

    index_sets: tuple | None = None
    pairing: tuple | None = None
    solutions: int = 0
    outcomes: list = field(default_factory=list)

    def record(self, candidate: int | None, stage: str, message: str) -> None:
        log.info("candidate %s stage %s: %s", candidate, stage, message)
        self.outcomes.append((candidate, stage, message))

    def stages(self) -> list[str]:
        return [stage for _, stage, _ in self.outcomes]


def search_four_weight(scheme: SchemeData, d, *, theta_images: Sequence[np.ndarray] | None = None,
                       nomura: NomuraData | None = None, tol: Tolerance = DEFAULT_TOL,
                       starts: int | None = None, seed: int = 0) -> tuple[list[JonesPair], SearchLog]:
    """Look for invertible Jones pairs whose V lies in the given imprimitive scheme.

    ``d`` is the loop variable of the pair (the spin models V have loop 2d).
    The duality is given either as the images of the Schur idempotents or
    as the Nomura data of a type-II matrix whose algebra is the scheme.
    Stages: (a) index sets, (b) duality, (c) eigenmatrix, (d) solve,
    (e) assemble V, (f) extract (A, B), (g) certify the pair.
    """
    d = complex(d)
    slog = SearchLog()
    I, J = imprimitive_index_sets(scheme, tol)
    slog.index_sets = (I, J)
    slog.record(None, "a", f"|I| = {len(I)}, |J| = {len(J)}")

    if theta_images is None:
        if nomura is None:
            raise NoDuality("no duality supplied")
        theta_images = theta_on_schur_basis(nomura, scheme)
    try:
        slog.pairing = duality_pairing(scheme, theta_images, tol)
    except AmbiguousPairing as exc:
        raise NoDuality(str(exc)) from exc
    slog.record(None, "b", f"pairing {slog.pairing}")

    problem = ModularInvarianceProblem.from_scheme(scheme, theta_images, 2 * d, (I, J), tol)
    slog.record(None, "c", f"P^2 = {problem.order} T (residual {problem.duality_residual():.2e})")

    try:
        solutions = solve_twisted(problem, tol, starts=starts, seed=seed)
    except NoConvergence as exc:
        slog.record(None, "d", f"no solution: {exc}")
        return [], slog
    slog.solutions = len(solutions)
    slog.record(None, "d", f"{len(solutions)} solutions")

    found = []
    for k, (sol, _) in enumerate(solutions):
        V = matrix_from_weights(sol.t, scheme)
        try:
            jp = extract_pair_from_V(V, d, tol)
        except WrongShape as exc:
            slog.record(k, "f", f"V lacks the block structure: {exc}")
            continue
        if not jp.invertible:
            slog.record(k, "g", "retrieved (A, B) is not an invertible Jones pair")
            continue
        slog.record(k, "ok", "invertible Jones pair")
        found.append(jp)
    return found, slog
