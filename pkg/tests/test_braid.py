import numpy as np
import pytest
from hypothesis import given, strategies as st

from cases import cyclic_pair, potts_pair
from oracles import dense_word
from spinlab.braid import (
    FULL_BASIS_LIMIT,
    BraidWord,
    braid_relations_hold,
    braid_trace,
    build_rep,
    link_conditions,
    link_normalization,
    verify_braid_relations,
)
from spinlab.core import eye, ones
from spinlab.errors import DimensionTooLarge, NotInvertible

PAIRS = {"potts3": potts_pair(3), "potts4": potts_pair(4), "cyclic3": cyclic_pair(3)}


def words(strands, max_len=6):
    letter = st.integers(1, strands - 1).flatmap(lambda i: st.sampled_from([i, -i]))
    return st.lists(letter, max_size=max_len).map(lambda xs: BraidWord(strands, tuple(xs)))


def test_word_validation_and_algebra():
    w = BraidWord.parse("1 -2, 3", 4)
    assert w.letters == (1, -2, 3) and len(w) == 3
    assert (w * w.inverse()).letters == (1, -2, 3, -3, 2, -1)
    with pytest.raises(ValueError):
        BraidWord(3, (3,))
    with pytest.raises(ValueError):
        BraidWord(1)
    with pytest.raises(ValueError):
        BraidWord(3, (1,)) * BraidWord(4, (1,))


@pytest.mark.parametrize("m", [3, 4, 5])
def test_identity_pair_satisfies_all_relations(m):
    report = verify_braid_relations(build_rep(eye(3), ones(3), m))
    assert report.ok and braid_relations_hold(report)


def test_jones_pair_relations_at_six_strands():
    jp = PAIRS["cyclic3"]
    report = verify_braid_relations(build_rep(jp.A, jp.B, 6))
    assert report.ok and report.values["k"] == 3


@given(st.sampled_from(sorted(PAIRS)), st.integers(2, 5), st.data())
def test_action_matches_dense_oracle(name, m, data):
    jp = PAIRS[name]
    word = data.draw(words(m))
    rep = build_rep(jp.A, jp.B, m)
    dense = dense_word(jp.A, jp.B, m, word.letters)
    assert np.isclose(braid_trace(rep, word), np.trace(dense), rtol=1e-9, atol=1e-9)
    N = rep.dimension
    X = np.eye(N, dtype=complex).reshape((N,) + (rep.n,) * rep.k)
    got = rep.apply(word, X).reshape(N, N).T
    assert np.allclose(got, dense, atol=1e-9)


def test_empty_word_trace_is_dimension():
    rep = build_rep(eye(2), ones(2), 3)
    assert braid_trace(rep, BraidWord(3)) == 4


def test_trefoil_closure_matches_dense_computation():
    jp = potts_pair(2)
    A, B = link_normalization(jp.A, jp.B)
    rep = build_rep(jp.A, jp.B, 2)
    trefoil = BraidWord(2, (1, 1, 1))
    expected = np.trace(dense_word(A, B, 2, trefoil.letters))
    assert np.isclose(braid_trace(rep, trefoil, normalize=True), expected, rtol=1e-12)


def test_normalized_pairs_meet_link_conditions():
    for jp in PAIRS.values():
        assert link_conditions(*link_normalization(jp.A, jp.B)).ok


def test_trace_rejects_mismatched_strands():
    rep = build_rep(eye(2), ones(2), 3)
    with pytest.raises(ValueError):
        braid_trace(rep, BraidWord(4))


def test_dimension_cap_and_preconditions():
    with pytest.raises(DimensionTooLarge):
        build_rep(eye(5), ones(5), 12, cap=1000)
    with pytest.raises(NotInvertible):
        build_rep(ones(3), ones(3), 3)
    with pytest.raises(ValueError):
        build_rep(eye(3), ones(3), 1)


def test_large_representation_uses_probe_vectors():
    jp = PAIRS["potts3"]
    rep = build_rep(jp.A, jp.B, 16)
    assert rep.dimension > FULL_BASIS_LIMIT
    report = verify_braid_relations(rep)
    assert report.ok
