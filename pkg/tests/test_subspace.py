import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinlab.core import eye, ones
from spinlab.errors import OrderMismatch
from spinlab.subspace import MatrixSubspace


def random_mats(seed, count, n=3):
    rng = np.random.default_rng(seed)
    return [rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for _ in range(count)]


def test_span_drops_dependent_matrices():
    space = MatrixSubspace.span([eye(3), ones(3), 2 * eye(3) - ones(3)])
    assert space.dim == 2
    assert space.contains(3 * eye(3) + 5j * ones(3))
    assert not space.contains(np.diag([1.0, 0, 0]))


def test_basis_is_orthonormal():
    space = MatrixSubspace.span(random_mats(0, 4))
    gram = space.rows.conj() @ space.rows.T
    assert np.allclose(gram, np.eye(4))


def test_zero_and_full():
    assert MatrixSubspace.zero(3).dim == 0
    full = MatrixSubspace.full(2)
    assert full.dim == 4 and full.contains(np.array([[1, 2], [3, 4]]))
    assert MatrixSubspace.span([], 3).dim == 0


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        MatrixSubspace.span([eye(2), eye(3)])
    with pytest.raises(ValueError):
        MatrixSubspace.span([])


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 5), st.integers(1, 5))
def test_intersection_dimension_formula(seed, a, b):
    # two random subspaces of the 9-dimensional space meet in max(0, a + b - 9) dimensions,
    # plus whatever is shared on purpose
    shared = random_mats(seed, 1)
    left = MatrixSubspace.span(shared + random_mats(seed + 1, a))
    right = MatrixSubspace.span(shared + random_mats(seed + 2, b))
    meet = left.intersect(right)
    assert meet.dim == max(1, left.dim + right.dim - 9)
    assert meet.issubspace(left) and meet.issubspace(right)
    assert meet.contains(shared[0])


def test_equality_ignores_spanning_set():
    mats = random_mats(5, 3)
    one = MatrixSubspace.span(mats)
    other = MatrixSubspace.span([mats[0] + mats[1], mats[1] - 2 * mats[2], mats[2]])
    assert one.equals(other) and one.distance(other) < 1e-12
    assert not one.equals(MatrixSubspace.span(mats[:2]))


def test_residual_and_projection():
    space = MatrixSubspace.span([eye(2)])
    M = np.array([[1.0, 1.0], [0.0, 1.0]])
    assert np.allclose(space.project(M), eye(2))
    assert np.isclose(space.residual(M), 1 / np.sqrt(3))
    assert space.residual(np.zeros((2, 2))) == 0.0


def test_flags_of_standard_spaces():
    flags = MatrixSubspace.span([eye(3), ones(3)]).flags()
    assert all(flags.as_dict().values())
    diag = MatrixSubspace.span([np.diag(np.eye(3)[k]) for k in range(3)]).flags()
    assert not diag.contains_all_ones and diag.schur_closed and diag.commutative
    upper = MatrixSubspace.span([eye(2), np.array([[0, 1], [0, 0]])]).flags()
    assert not upper.transpose_closed and upper.commutative and upper.mult_closed


def test_map_and_transpose():
    upper = MatrixSubspace.span([np.array([[0, 1], [0, 0]])])
    assert upper.transpose().contains(np.array([[0, 0], [1, 0]]))
    doubled = upper.map(lambda M: np.kron(M, eye(2)))
    assert doubled.n == 4 and doubled.dim == 1


def test_sum_of_subspaces():
    a = MatrixSubspace.span([eye(2)])
    b = MatrixSubspace.span([ones(2)])
    assert (a + b).dim == 2
