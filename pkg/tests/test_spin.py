import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cases import order4_family
from spinlab.core import eye, ones
from spinlab.errors import BadParameters, ConditionFailure, NotHadamard
from spinlab.jones import spin_index
from spinlab.spin import (
    abelian_character_matrix,
    cyclic_spin_model,
    fourier_matrix,
    general_hadamard_block_check,
    hadamard_eigenvalue_check,
    hadamard_spin_model,
    is_spin_model,
    one_sided_variants,
    potts,
    potts_matrix,
    potts_parameters,
    spin_conditions,
    sylvester_hadamard,
    verify_spin_model,
    w_in_nomura_check,
)

H4 = sylvester_hadamard(4)


def test_potts_with_unit_parameter():
    model = potts(4, u=1)
    assert np.allclose(model.W, -eye(4) + (ones(4) - eye(4)))
    assert np.isclose(model.d, -2)


@pytest.mark.parametrize("root_choice", range(8))
def test_potts_order_two_roots(root_choice):
    t, u = potts_parameters(2, root_choice)
    assert np.isclose(abs(t), 1) and np.isclose(t.real, 0, atol=1e-12)
    model = potts(2, root_choice)
    assert np.isclose(model.d ** 2, 2)


@pytest.mark.parametrize("root_choice", [0, 4])
def test_potts_order_five_both_roots(root_choice):
    t, _ = potts_parameters(5, root_choice)
    assert np.isclose(t + 1 / t, -3)
    model = potts(5, root_choice)
    assert is_spin_model(model.W, model.d)


@given(st.integers(2, 9), st.integers(0, 7))
def test_potts_family_is_spin(n, root_choice):
    model = potts(n, root_choice)
    assert np.isclose(model.d ** 2, n)
    assert np.allclose(model.W, model.W.T)


def test_potts_parameter_errors():
    with pytest.raises(BadParameters):
        potts_parameters(1)
    with pytest.raises(BadParameters):
        potts_parameters(4, 8)


def test_character_tables():
    assert np.allclose(abelian_character_matrix([2]), [[1, 1], [1, -1]])
    assert np.allclose(abelian_character_matrix([5]), fourier_matrix(5))
    Z22 = abelian_character_matrix([2, 2])
    assert np.allclose(np.abs(Z22.imag), 0) and set(np.unique(Z22.real)) == {-1.0, 1.0}
    assert np.allclose(Z22 @ Z22.conj().T, 4 * eye(4))
    with pytest.raises(BadParameters):
        abelian_character_matrix([0])


@pytest.mark.parametrize("n", [3, 5, 7])
def test_cyclic_models(n):
    model = cyclic_spin_model(n)
    assert np.isclose(model.d ** 2, n)
    assert w_in_nomura_check(model.W).in_algebra


def test_cyclic_model_with_other_root():
    model = cyclic_spin_model(5, cmath.exp(4j * math.pi / 5))
    assert is_spin_model(model.W, model.d)


def test_cyclic_model_rejects_even_order_and_bad_root():
    with pytest.raises(BadParameters):
        cyclic_spin_model(4)
    with pytest.raises(BadParameters):
        cyclic_spin_model(5, 1.0)


def test_hadamard_matrix_is_not_a_spin_model():
    H = np.array([[1, 1], [1, -1]], dtype=complex)
    with pytest.raises(ConditionFailure) as info:
        verify_spin_model(H, math.sqrt(2))
    assert info.value.condition == "I"
    assert not is_spin_model(np.kron(H, H), 2)


def test_condition_table_names_witness():
    W = potts(5).W.copy()
    W[1, 3] *= 1.001
    W[3, 1] *= 1.001
    conditions = spin_conditions(W, potts(5).d)
    ok, residual, witness = conditions["III"]
    assert not ok and residual > 0 and witness is not None


def test_symmetric_hadamard_model():
    model = hadamard_spin_model(H4, 1)
    assert model.n == 16 and np.allclose(model.W, model.W.T)
    assert np.isclose(model.d ** 2, 16)
    assert hadamard_eigenvalue_check(model.W, model.d).ok


def test_non_symmetric_hadamard_model():
    model = hadamard_spin_model(H4, -1, cmath.exp(1j * math.pi / 4))
    assert not np.allclose(model.W, model.W.T)
    assert spin_index(model.W).index == 2


def test_hadamard_parameter_errors():
    with pytest.raises(NotHadamard):
        hadamard_spin_model(order4_family(2.0))
    with pytest.raises(BadParameters):
        hadamard_spin_model(H4, 2)
    with pytest.raises(BadParameters):
        hadamard_spin_model(H4, -1, 1.0)
    with pytest.raises(BadParameters):
        hadamard_spin_model(H4, 1, u=1.0 + 0.5j)


@pytest.mark.parametrize("eps,omega", [(1, 1.0), (-1, cmath.exp(1j * math.pi / 4))])
def test_block_conditions_for_potts_instantiation(eps, omega):
    _, u = potts_parameters(4)
    A = potts_matrix(4, u)
    d = -u ** 2 - u ** -2
    report = general_hadamard_block_check(A, omega * H4, A, eps, d)
    assert report.all_hold and report.assembled_is_spin and report.consistent


def test_block_conditions_detect_bad_blocks():
    _, u = potts_parameters(4)
    A = potts_matrix(4, u)
    d = -u ** 2 - u ** -2
    B = H4.copy()
    B[0, 1] = 0.9
    report = general_hadamard_block_check(A, B, A, 1, d)
    assert not report.conditions["a"].ok and not report.assembled_is_spin
    C = A.copy()
    C[0, 1] += 0.1
    report = general_hadamard_block_check(A, H4, C, 1, d)
    assert not report.conditions["b"].ok and report.consistent


def test_self_membership():
    assert w_in_nomura_check(cyclic_spin_model(5).W).ok
    assert w_in_nomura_check(potts(4).W).ok
    assert not w_in_nomura_check(order4_family(2.0)).in_algebra


def test_self_membership_recovers_scale():
    model = potts(5)
    report = w_in_nomura_check(3 * model.W)
    assert report.ok
    assert is_spin_model(report.scale * 3 * model.W, report.d)


def test_both_one_sided_variants_for_symmetric_model():
    model = potts(5)
    first, second = one_sided_variants(model.W, model.d)
    assert first.ok and second.ok
