import itertools
import random

import pytest
from hypothesis import given, strategies as st

from superalg import (
    AlgebraSignature,
    MatrixDense,
    NotAMatrixError,
    QQi,
    SignatureError,
    State,
    embed_column,
    embed_matrix,
    embed_row,
    extract_matrix,
    generalized_matrix,
    indices,
    monomial,
    op_generator_theta,
    projector,
)
from superalg.matrix_iso import column_state, generalized_coefficients

from conftest import gaussian

SIG2 = AlgebraSignature(2)
SIG3 = AlgebraSignature(3)


@st.composite
def matrices(draw, n=3):
    return MatrixDense.from_rows([[draw(gaussian()) for _ in range(n)] for _ in range(n)])


def test_identity_embeds_to_rank_one_projector():
    assert embed_matrix(MatrixDense.identity(3), SIG3) == projector(SIG3, 1)
    assert extract_matrix(projector(SIG3, 1)) == MatrixDense.identity(3)


def test_embed_action_example():
    xi2 = QQi(4, -1)
    m = MatrixDense.from_rows([[0, 1], [0, 0]])
    assert embed_matrix(m, SIG2) @ State.basis_state(SIG2, 2, coeff=xi2) == State.basis_state(SIG2, 1, coeff=xi2)


def test_extract_rejects_non_matrix():
    with pytest.raises(NotAMatrixError):
        extract_matrix(op_generator_theta(SIG2, 1))


def test_embed_rejects_wrong_size():
    with pytest.raises((SignatureError, ValueError)):
        embed_matrix(MatrixDense.identity(3), SIG2)


def test_column_and_row():
    v, w = [QQi(1, 2), 3, QQi(0, -1)], [2, QQi(1, 1), 5]
    one = State(SIG3, {0: 1})
    assert embed_column(v, SIG3) @ one == State.linear(SIG3, v)
    dot = sum((QQi.coerce(a) * QQi.coerce(b) for a, b in zip(w, v)), QQi(0))
    assert (embed_row(w, SIG3) @ embed_column(v, SIG3)) @ one == State(SIG3, {0: dot})
    assert embed_column(v, SIG3) @ State.basis_state(SIG3, 1) == State.zero(SIG3)


@given(matrices(), matrices(), gaussian())
def test_homomorphism(a, b, lam):
    ea, eb = embed_matrix(a, SIG3), embed_matrix(b, SIG3)
    assert embed_matrix(a @ b, SIG3) == ea @ eb
    assert embed_matrix(a + b, SIG3) == ea + eb
    assert embed_matrix(a.scale(lam), SIG3) == ea.scale(lam)
    assert embed_matrix(a.T, SIG3) == ea.T
    assert embed_matrix(a.conjugate(), SIG3) == ea.conjugate()
    assert extract_matrix(ea) == a


@given(matrices(), st.lists(gaussian(), min_size=3, max_size=3))
def test_matrix_vector_correspondence(m, v):
    one = State(SIG3, {0: 1})
    lhs = embed_matrix(m, SIG3) @ (embed_column(v, SIG3) @ one)
    assert lhs == column_state(m @ v, SIG3)


def test_matrix_inside_larger_algebra():
    sig = AlgebraSignature(4, 2)
    m = MatrixDense.from_rows([[1, 2, 0, 0], [3, 4, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    op = embed_matrix(m, sig)
    for mask in sig.basis():
        if len(indices(mask)) != 1:
            assert op @ State(sig, {mask: 1}) == State.zero(sig)


def test_generalized_specializations():
    rng = random.Random(3)
    m = MatrixDense.from_rows([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
    coeffs = {((a,), (b,)): m[a - 1, b - 1] for a in range(1, 4) for b in range(1, 4)}
    assert generalized_matrix(1, 1, coeffs, SIG3) == embed_matrix(m, SIG3)
    w = [1, -2, QQi(0, 1)]
    assert generalized_matrix(0, 1, {((), (b,)): w[b - 1] for b in (1, 2, 3)}, SIG3) == embed_row(w, SIG3)
    assert generalized_matrix(1, 0, {((a,), ()): w[a - 1] for a in (1, 2, 3)}, SIG3) == embed_column(w, SIG3)


def test_generalized_rank_two_example():
    op = generalized_matrix(2, 1, {((1, 2), (1,)): 1}, SIG2)
    assert op @ State.basis_state(SIG2, 1) == State.basis_state(SIG2, 1, 2)
    assert op @ State.basis_state(SIG2, 2) == State.zero(SIG2)
    assert op @ State(SIG2, {0: 1}) == State.zero(SIG2)


@pytest.mark.parametrize("bad", [((2, 1), (1,)), ((1, 1), (1,)), ((1,), (1,)), ((1, 4), (1,))])
def test_generalized_rejects_bad_multi_index(bad):
    with pytest.raises((ValueError, SignatureError)):
        generalized_matrix(2, 1, {bad: 1}, SIG3)


def _random_general(rng, l, k, sig):
    ups = list(itertools.combinations(range(1, sig.n_total + 1), l))
    los = list(itertools.combinations(range(1, sig.n_total + 1), k))
    return {(u, w): rng.randint(-3, 3) for u in ups for w in los if rng.random() < 0.6}


@pytest.mark.parametrize("l,k,j", [(2, 1, 0), (1, 2, 1), (3, 2, 1), (0, 1, 2), (2, 2, 2)])
def test_generalized_composition_oracle(l, k, j):
    sig = AlgebraSignature(4)
    rng = random.Random(l * 100 + k * 10 + j)
    a, b = _random_general(rng, l, k, sig), _random_general(rng, k, j, sig)
    want = {}
    for (u, mid), x in a.items():
        for (mid2, low), y in b.items():
            if mid == mid2:
                want[(u, low)] = want.get((u, low), 0) + x * y
    want = {key: v for key, v in want.items() if v}
    got = generalized_matrix(l, k, a, sig) @ generalized_matrix(k, j, b, sig)
    assert {key: v for key, v in generalized_coefficients(got, l, j).items()} == want
    assert got == generalized_matrix(l, j, want, sig)


def test_rank_one_commutation():
    for a in (1, 2, 3):
        assert projector(SIG3, 1) @ op_generator_theta(SIG3, a) == op_generator_theta(SIG3, a) @ projector(SIG3, 0)
