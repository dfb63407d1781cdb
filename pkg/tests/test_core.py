import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cases import catalogue, potts_pair
from spinlab.core import (
    Check,
    Delta,
    Report,
    Tolerance,
    X,
    Y,
    apply_endomorphism,
    compose,
    eye,
    is_type_ii,
    kron,
    ones,
    operators_equal,
    schur_inverse,
    schur_multiplier_of,
    schur_product,
    split_blocks,
    blocks,
    unit_matrices,
    verify_exchange,
)
from spinlab.errors import OrderMismatch, VerificationFailure, ZeroEntry
from spinlab.nomura import type_ii_nomura

CATALOGUE = catalogue()


def random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def test_schur_product_examples():
    assert np.array_equal(schur_product(eye(2), ones(2)), eye(2))
    M = np.array([[1, 2], [3, 4]])
    assert np.array_equal(schur_product(ones(2), M), M)
    assert np.array_equal(schur_product(M, [[2, 0], [0, 2]]), [[2, 0], [0, 8]])


def test_schur_inverse_examples():
    assert np.array_equal(schur_inverse(ones(3)), ones(3))
    assert np.allclose(schur_inverse([[1, 2], [4, 1]]), [[1, 0.5], [0.25, 1]])
    with pytest.raises(ZeroEntry):
        schur_inverse([[1, 0], [1, 1]])


def test_type_ii_examples():
    assert is_type_ii([[1, 1], [1, -1]]).ok
    assert not is_type_ii(eye(3)).ok
    t = (-3 + math.sqrt(5)) / 2
    assert is_type_ii(t * eye(5) + ones(5) - eye(5)).ok


@given(st.sampled_from(sorted(CATALOGUE)), st.sampled_from(sorted(CATALOGUE)))
def test_kronecker_product_of_type_ii_is_type_ii(left, right):
    assert is_type_ii(kron(CATALOGUE[left], CATALOGUE[right])).ok


@given(st.sampled_from(sorted(CATALOGUE)), st.integers(0, 2 ** 32 - 1))
def test_type_ii_survives_monomial_scaling(name, seed):
    rng = np.random.default_rng(seed)
    A = CATALOGUE[name]
    n = A.shape[0]
    D1 = np.diag(np.exp(1j * rng.uniform(0, 6, n)) * rng.uniform(0.5, 2, n))
    D2 = np.diag(np.exp(1j * rng.uniform(0, 6, n)) * rng.uniform(0.5, 2, n))
    P = np.eye(n)[rng.permutation(n)]
    assert is_type_ii(D1 @ P @ A @ D2).ok


def test_endomorphism_identities():
    rng = np.random.default_rng(1)
    M = random_complex(rng, 3)
    assert np.allclose(apply_endomorphism(X(eye(3)), M), M)
    assert np.allclose(apply_endomorphism(Delta(ones(3)), M), M)
    A, B = random_complex(rng, 3), random_complex(rng, 3)
    E = unit_matrices(3)
    op = compose(X(A), Delta(B), X(A))
    for i in range(3):
        for j in range(3):
            assert np.allclose(op(E[i, j]), A @ (B * (A @ E[i, j])))


@given(st.integers(0, 2 ** 32 - 1))
def test_composite_matrix_acts_on_row_major_vectors(seed):
    rng = np.random.default_rng(seed)
    A, B, C, M = (random_complex(rng, 3) for _ in range(4))
    op = compose(X(A), Delta(B), Y(C))
    assert np.allclose(op.matrix() @ M.reshape(-1), op(M).reshape(-1))
    assert np.allclose(op(M), A @ (B * (M @ C.T)))


def test_schur_multiplier_detection():
    rng = np.random.default_rng(2)
    B = random_complex(rng, 3)
    assert np.allclose(schur_multiplier_of(Delta(B)), B)
    assert schur_multiplier_of(X(random_complex(rng, 3))) is None


def test_exchange_from_nomura_pair():
    # X_M Delta_B X_A = Delta_B X_A Delta_S for M in N_{A,B}; the exchanged identity must hold too
    A = CATALOGUE["order3"]
    B = 1.0 / A
    nd = type_ii_nomura(A)
    for M, S in zip(nd.basis, nd.theta_images):
        report = verify_exchange(M, B, A, B, A, S)
        assert report.first.ok and report.second.ok


def test_exchange_vacuous_when_both_fail():
    rng = np.random.default_rng(3)
    mats = [random_complex(rng, 3) for _ in range(6)]
    report = verify_exchange(*mats)
    assert not report.first.ok and not report.second.ok
    assert report.ok


def test_exchange_for_one_sided_pair():
    jp = potts_pair(4)
    report = verify_exchange(jp.A, jp.B, jp.A, jp.B, jp.A, jp.B)
    assert report.first.ok and report.second.ok


def test_operators_equal_reports_residual():
    rng = np.random.default_rng(4)
    A = random_complex(rng, 3)
    assert operators_equal(X(A), X(A)).ok
    check = operators_equal(X(A), X(A + 1e-3))
    assert not check.ok and check.residual >= 1e-3


def test_blocks_round_trip():
    rng = np.random.default_rng(5)
    grid = [[random_complex(rng, 2) for _ in range(3)] for _ in range(3)]
    M = blocks(grid)
    back = split_blocks(M, 3)
    assert all(np.array_equal(back[p][q], grid[p][q]) for p in range(3) for q in range(3))
    with pytest.raises(OrderMismatch):
        split_blocks(M, 4)


def test_tolerance_from_environment(monkeypatch):
    monkeypatch.setenv("SPINLAB_TOL", "1e-6")
    tol = Tolerance.from_env()
    assert tol.abs_eps == tol.rel_eps == 1e-6
    monkeypatch.delenv("SPINLAB_TOL")
    assert Tolerance.from_env() == Tolerance()


def test_report_raises_on_failure():
    rep = Report(checks={"good": Check(True, 0.0), "bad": Check(False, 0.5)})
    assert not rep.ok and rep.failures() == ["bad"] and rep.worst_residual() == 0.5
    with pytest.raises(VerificationFailure, match="bad"):
        rep.raise_if_failed()
