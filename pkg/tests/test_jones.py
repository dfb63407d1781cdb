import numpy as np
import pytest
from hypothesis import given, strategies as st

from cases import cyclic_pair, gauged_pair, hadamard16, potts_pair
from spinlab.core import eye, kron, ones, schur_inverse
from spinlab.errors import (
    InconsistentGauge,
    NotInvertible,
    NotInvertiblePair,
    NotPermutation,
    NotSchurInvertible,
    SingularD,
    ValidationFailure,
)
from spinlab.jones import (
    FourWeightSpinModel,
    check_four_weight,
    check_jones_pair,
    check_one_sided,
    even_gauge,
    from_four_weight,
    odd_gauge,
    recover_even_gauge,
    recover_odd_gauge,
    spin_index,
    symmetrize_even,
    symmetrize_odd,
    to_four_weight,
    transpose_permutation,
)
from spinlab.spin import cyclic_spin_model, potts, spin_model_pair

PAIRS = {"potts4": potts_pair(4), "potts5": potts_pair(5), "cyclic3": cyclic_pair(3), "cyclic5": cyclic_pair(5)}


def random_diagonal(rng, n):
    return np.diag(rng.uniform(0.5, 2, n) * np.exp(1j * rng.uniform(0, 2 * np.pi, n)))


def test_identity_with_ones_is_one_sided():
    assert check_one_sided(eye(4), ones(4)).ok
    jp = check_jones_pair(eye(4), ones(4))
    assert jp.one_sided and jp.two_sided and not jp.invertible


def test_spin_model_gives_one_sided_pair():
    W, d = potts(4).W, potts(4).d
    assert check_one_sided(W / d, schur_inverse(W).T).ok


@pytest.mark.parametrize("name", sorted(PAIRS))
def test_column_diagonal_pair_is_one_sided(name):
    jp = PAIRS[name]
    for j in range(jp.n):
        assert check_one_sided(jp.A, np.diag(jp.B[:, j]) @ ones(jp.n)).ok


def test_one_sided_preconditions():
    with pytest.raises(NotInvertible):
        check_one_sided(ones(3), ones(3))
    with pytest.raises(NotSchurInvertible):
        check_one_sided(eye(3), eye(3))


def test_tensor_of_pairs_is_jones_pair():
    a, b = PAIRS["potts4"], PAIRS["cyclic3"]
    jp = check_jones_pair(kron(a.A, b.A), kron(a.B, b.B))
    assert jp.two_sided and jp.invertible


def test_cyclic_pair_is_invertible():
    jp = PAIRS["cyclic5"]
    assert jp.invertible and np.isclose(jp.d ** 2, 5)
    assert np.isclose(jp.a, jp.d * np.trace(jp.A) / 5)


def test_perturbed_pair_is_rejected():
    jp = PAIRS["potts5"]
    bad = check_jones_pair(jp.A + 1e-3 * np.eye(5)[0:1].T @ np.eye(5)[1:2], jp.B)
    assert not bad.one_sided and bad.residual > 1e-5


# --------------------------------------------------------------------------
# four-weight models

@pytest.mark.parametrize("name", sorted(PAIRS))
def test_four_weight_round_trip(name):
    jp = PAIRS[name]
    m = to_four_weight(jp)
    assert check_four_weight(m).ok
    back = from_four_weight(m)
    assert np.allclose(back.A, jp.A) and np.allclose(back.B, jp.B)


def test_jones_type_components():
    model = potts(4)
    m = to_four_weight(potts_pair(4))
    assert np.allclose(m.W1, model.W)
    assert np.allclose(m.W4, schur_inverse(model.W).T)
    back = from_four_weight(m)
    assert np.allclose(back.A, model.W / model.d)


def test_to_four_weight_needs_invertible_pair():
    with pytest.raises(NotInvertiblePair):
        to_four_weight(check_jones_pair(eye(3), ones(3)))


def test_corrupted_diagonal_is_a_validation_failure():
    m = to_four_weight(PAIRS["cyclic5"])
    W1 = m.W1.copy()
    W1[2, 2] *= 1.01
    bad = FourWeightSpinModel(W1, m.W2, m.W3, m.W4, m.d, m.a)
    report = check_four_weight(bad)
    assert not report.checks["I:W1 diagonal"].ok
    with pytest.raises(ValidationFailure):
        from_four_weight(bad)


# --------------------------------------------------------------------------
# gauges

def test_identity_gauges_change_nothing():
    jp = PAIRS["potts4"]
    same = odd_gauge(jp, eye(4))
    assert np.allclose(same.A, jp.A) and np.allclose(same.B, jp.B)
    same = even_gauge(jp, eye(4))
    assert np.allclose(same.A, jp.A) and np.allclose(same.B, jp.B)


@given(st.sampled_from(sorted(PAIRS)), st.integers(0, 2 ** 32 - 1))
def test_odd_gauge_preserves_pairs(name, seed):
    jp = PAIRS[name]
    D = random_diagonal(np.random.default_rng(seed), jp.n)
    out = odd_gauge(jp, D)
    assert out.two_sided and out.invertible
    assert np.allclose(recover_odd_gauge(out.A, jp.A) @ D / D[0, 0], eye(jp.n))


def test_cyclic_shift_keeps_one_sided():
    jp = PAIRS["cyclic5"]
    shift = np.roll(eye(5), 1, axis=1)
    out = even_gauge(jp, shift)
    assert out.one_sided
    assert np.allclose(recover_even_gauge(jp.B, out.B), shift)


def test_gauge_argument_errors():
    jp = PAIRS["potts4"]
    with pytest.raises(SingularD):
        odd_gauge(jp, np.diag([1, 0, 1, 1]))
    with pytest.raises(SingularD):
        odd_gauge(jp, ones(4))
    with pytest.raises(NotPermutation):
        even_gauge(jp, 2 * eye(4))
    with pytest.raises(NotPermutation):
        recover_even_gauge(jp.B, jp.B + 1)
    with pytest.raises(InconsistentGauge):
        recover_odd_gauge(jp.A, jp.A.T + np.eye(4))


def test_symmetric_input_is_unchanged():
    jp = PAIRS["potts5"]
    out, D = symmetrize_odd(jp)
    assert out is jp and np.allclose(D, eye(5))


@given(st.sampled_from(sorted(PAIRS)), st.integers(0, 1000))
def test_symmetrize_recovers_symmetric_conjugate(name, seed):
    jp = PAIRS[name]
    skewed = gauged_pair(jp, seed)
    out, D1 = symmetrize_odd(skewed)
    assert np.allclose(out.A, out.A.T)
    assert np.allclose(np.linalg.inv(D1) @ skewed.A @ D1, out.A)
    assert out.invertible


def test_transpose_permutation_and_even_symmetrization():
    jp = PAIRS["cyclic5"]
    P = transpose_permutation(jp.B)
    assert np.allclose(jp.B @ P, jp.B.T)
    out, Q = symmetrize_even(jp)
    assert np.allclose(out.B, out.B.T)


def test_even_symmetrization_refuses_even_order():
    model = hadamard16(-1)
    jp = spin_model_pair(model.W, model.d)
    assert jp.invertible
    with pytest.raises(NotPermutation):
        symmetrize_even(jp)


# --------------------------------------------------------------------------
# index

@pytest.mark.parametrize("n", [3, 4, 5])
def test_symmetric_spin_model_has_index_one(n):
    report = spin_index(potts(n).W)
    assert report.index == 1 and np.allclose(report.P, eye(n))


def test_cyclic_model_index():
    W = cyclic_spin_model(5).W
    assert spin_index(W).index == 1


def test_hadamard_model_index_two():
    report = spin_index(hadamard16(-1).W)
    assert report.index == 2
    P = np.rint(report.P.real)
    assert np.allclose(P @ P, eye(16)) and not np.allclose(P, eye(16))


def test_index_of_non_spin_matrix_is_refused():
    H = np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1j, -1j], [1, -1, -1j, 1j]])
    with pytest.raises((NotPermutation, InconsistentGauge)):
        spin_index(H * np.array([1, 2, 3, 4])[:, None])
