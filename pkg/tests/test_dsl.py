import random
from fractions import Fraction

import pytest

from superalg import AlgebraSignature, JetScalar, MatrixDense, QQi, State, embed_matrix, monomial
from superalg import dsl
from superalg.dsl import Gen, Ident, Num, Product, Proj, Scale, Sum
from superalg.operators import op_generator_deriv, op_generator_theta, op_identity

SIG3 = AlgebraSignature(3)
SIG2 = AlgebraSignature(2)


def ev(src, sig=SIG3):
    return dsl.evaluate(dsl.parse(src, sig), sig)


def test_parse_tree():
    tree = dsl.parse("th(1)*d(2)*P(1) + 2*I", SIG3)
    assert tree == Sum((
        Product((Gen("th", 1), Gen("d", 2), Proj(1))),
        Scale(QQi(2), Ident()),
    ))


@pytest.mark.parametrize("src,fragment", [
    ("th(5)", "1:4: generator index 5 outside 1..3"),
    ("th(1) +\n  foo", "2:3: unknown symbol 'foo'"),
    ("th(1", "expected"),
    ("1 / 0", "zero"),
    ("s(2, 1)", "increasing"),
    ("P(4)", "rank"),
])
def test_parse_errors(src, fragment):
    with pytest.raises(dsl.DslError) as err:
        dsl.parse(src, SIG3)
    assert fragment in str(err.value)


def test_evaluation_examples():
    assert ev("th(1)*d(1) + d(1)*th(1)") == op_identity(SIG3)
    assert ev("P(0)+P(1)+P(2)", SIG2) == op_identity(SIG2)
    assert ev("conj(i*th(1))") == op_generator_theta(SIG3, 1).scale(QQi(0, -1))
    assert ev("T(th(2))") == op_generator_deriv(SIG3, 2)


def test_states_and_scalars():
    assert ev("th(2)*s(1)") == State.basis_state(SIG3, 1, 2, coeff=-1)
    assert ev("(1/2 + 3*i)*s()") == State(SIG3, {0: QQi(Fraction(1, 2), 3)})
    assert ev("2*eps(1,3)") == JetScalar.eps("e_1_3", 2)
    assert ev("mat(1,2;3,4)", SIG2) == embed_matrix(MatrixDense.from_rows([[1, 2], [3, 4]]), SIG2)
    assert ev("row(1,1)*col(2,3)*s()", SIG2) == State(SIG2, {0: 5})
    assert ev("-s(1,2) + s(1,2)") == State.zero(SIG3)
    assert ev("th(1)*s(2,3)") == State(SIG3, {monomial(1, 2, 3): 1})


@pytest.mark.parametrize("src", ["s(1)*th(1)", "s(1)*s(2)", "th(1) + s(1)", "col(1,2)"])
def test_type_errors(src):
    with pytest.raises((dsl.DslTypeError, dsl.DslError)):
        ev(src)


@pytest.mark.parametrize("src", [
    "th(1)*d(2)*P(1) + 2*I",
    "-(1/3)*T(th(1)*d(3)) - conj(i*P(2))",
    "mat(1,0,0;0,(1 + i),0;0,0,-2)*s(1)",
    "eps(2,3)*th(2) + eps(1,3)*th(1)",
])
def test_print_parse_fixed_point(src):
    tree = dsl.parse(src, SIG3)
    printed = dsl.to_source(tree)
    assert dsl.parse(printed, SIG3) == tree
    assert dsl.to_source(dsl.parse(printed, SIG3)) == printed


def test_random_round_trip():
    rng = random.Random(0)
    for _ in range(200):
        tree = dsl.random_expression(rng, SIG3)
        assert dsl.parse(dsl.to_source(tree), SIG3) == tree
