import pytest
from hypothesis import given, strategies as st

from superalg import (
    AlgebraSignature,
    Operator,
    QQi,
    SignatureError,
    State,
    Word,
    derivative,
    left_mult_theta,
    monomial,
    op_add,
    op_apply,
    op_compose,
    op_conjugate,
    op_generator_deriv,
    op_generator_theta,
    op_identity,
    op_scale,
    op_transpose,
    op_zero,
    projector,
    rank,
    rank_project_oracle,
)
from superalg.operators import DERIV, THETA, operator_from_words

from conftest import gaussian

SIG2 = AlgebraSignature(2)
SIG3 = AlgebraSignature(3)


def th(a, sig=SIG2):
    return op_generator_theta(sig, a)


def d(a, sig=SIG2):
    return op_generator_deriv(sig, a)


def rank_oracle(sig, k):
    return Operator(sig, {(m, m): 1 for m in sig.basis() if rank(m) == k})


def test_generator_examples():
    one = State(SIG2, {0: 1})
    assert th(1) @ one == State.basis_state(SIG2, 1)
    psi = State(SIG2, {0: 3, monomial(2): QQi(1, 1)})
    assert op_identity(SIG2) @ psi == psi
    assert d(2) @ State.basis_state(SIG2, 1, 2) == State.basis_state(SIG2, 1, coeff=-1)


def test_algebra_examples():
    assert op_add(op_compose(th(1), d(1)), op_compose(d(1), th(1))) == op_identity(SIG2)
    assert op_scale(0, th(1)) == op_zero(SIG2)
    assert op_compose(th(1), th(1)) == op_zero(SIG2)


def test_apply_examples():
    xi1, xi2 = QQi(2, 1), QQi(-3, 5)
    psi = State.linear(SIG2, [xi1, xi2])
    assert op_apply(th(2) @ d(1), psi) == State.basis_state(SIG2, 2, coeff=xi1)
    assert op_apply(op_zero(SIG2), psi) == State.zero(SIG2)
    assert op_apply(op_identity(SIG2), State(SIG2, {0: 1, 1: 1})) == State(SIG2, {0: 1, 1: 1})


def test_transpose_examples():
    assert op_transpose(th(1)) == d(1)
    assert op_transpose(th(1) @ d(2)) == th(2) @ d(1)
    assert op_transpose(op_identity(SIG2)) == op_identity(SIG2)
    assert Word(((THETA, 1), (DERIV, 2))).transpose() == Word(((THETA, 2), (DERIV, 1)))


def test_conjugate_examples():
    a = th(1).scale(QQi(0, 1))
    assert op_conjugate(a) == th(1).scale(QQi(0, -1))
    real = th(1) @ d(2) + op_identity(SIG2).scale(3)
    assert op_conjugate(real) == real


def test_projector_examples():
    p2 = projector(SIG2, 2)
    assert p2 @ State.basis_state(SIG2, 1, 2) == State.basis_state(SIG2, 1, 2)
    assert p2 @ State.basis_state(SIG2, 1) == State.zero(SIG2)
    total = projector(SIG2, 0) + projector(SIG2, 1) + projector(SIG2, 2)
    assert total == op_identity(SIG2)
    with pytest.raises(SignatureError):
        projector(SIG2, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_projectors_equal_rank_oracle(n):
    sig = AlgebraSignature(n)
    ps = [projector(sig, k) for k in range(n + 1)]
    total = op_zero(sig)
    for k, p in enumerate(ps):
        assert p == rank_oracle(sig, k)
        assert p @ p == p
        assert p.T == p
        total = total + p
        for j in range(k):
            assert p @ ps[j] == op_zero(sig)
    assert total == op_identity(sig)
    if n >= 1:
        for a in range(1, n + 1):
            assert ps[1] @ op_generator_theta(sig, a) == op_generator_theta(sig, a) @ ps[0]


def test_projector_family_on_states():
    sig = AlgebraSignature(4)
    psi = State(sig, {m: m + 1 for m in sig.basis()})
    for k in range(5):
        assert projector(sig, k) @ psi == rank_project_oracle(k, psi)


def test_operator_matches_state_functions():
    sig = AlgebraSignature(4)
    psi = State(sig, {m: QQi(m, 1) for m in sig.basis()})
    for a in range(1, 5):
        assert op_generator_theta(sig, a) @ psi == left_mult_theta(a, psi)
        assert op_generator_deriv(sig, a) @ psi == derivative(a, psi)


def test_equality_is_extensional():
    # th(1) d(1) + d(1) th(1) is built differently from the identity but acts the same
    built = operator_from_words(SIG3, [Word(((THETA, 1), (DERIV, 1))), Word(((DERIV, 1), (THETA, 1)))])
    assert built == op_identity(SIG3)
    assert th(1, SIG3) != d(1, SIG3)


def test_signature_mismatch():
    with pytest.raises(SignatureError):
        th(1) @ th(1, SIG3)
    with pytest.raises(SignatureError):
        Operator(SIG2, {(4, 0): 1})


letters = st.tuples(st.sampled_from([THETA, DERIV]), st.integers(1, 3))


@given(st.lists(letters, max_size=6), gaussian())
def test_word_transpose_is_matrix_transpose(word, c):
    w = Word(tuple(word), c)
    assert w.transpose().to_operator(SIG3) == w.to_operator(SIG3).T


@given(st.lists(letters, min_size=1, max_size=4), st.lists(letters, min_size=1, max_size=4),
       gaussian())
def test_operator_laws(w1, w2, lam):
    a = Word(tuple(w1)).to_operator(SIG3)
    b = Word(tuple(w2)).to_operator(SIG3)
    assert (a @ b).T == b.T @ a.T
    assert (a + b).scale(lam) == a.scale(lam) + b.scale(lam)
    assert (a @ b).conjugate() == a.conjugate() @ b.conjugate()
    assert a.scale(lam).conjugate() == a.conjugate().scale(lam.conjugate())
    psi = State(SIG3, {m: m - 2 for m in SIG3.basis()})
    assert (a @ b) @ psi == a @ (b @ psi)
