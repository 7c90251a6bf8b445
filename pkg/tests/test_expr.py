import pytest
from expr_corpus import CORPUS
from hypothesis import given, settings
from hypothesis import strategies as st

from weylbrauer.envs import NumberFieldEnv, TensorSquare, WeylEnv
from weylbrauer.expr import Add, ExprError, Gen, Int, Inv, Mul, Neg, Pow, Sqrt, Sub, evaluate, generators_used, parse, to_text
from weylbrauer.ring.fields import QuadraticField, QuadraticFieldElement
from weylbrauer.weyl import WeylContext, format_element


@pytest.mark.parametrize("text", CORPUS)
def test_round_trip_fixed_point(text):
    tree = parse(text)
    printed = to_text(tree)
    assert parse(printed) == tree
    assert to_text(parse(printed)) == printed


leaves = st.one_of(
    st.integers(0, 30).map(Int),
    st.builds(Gen, st.sampled_from("xy"), st.integers(1, 4)),
    st.integers(2, 7).map(Sqrt),
)
trees = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.builds(Add, kids, kids),
        st.builds(Sub, kids, kids),
        st.builds(Mul, kids, kids),
        st.builds(Neg, kids),
        st.builds(Inv, kids),
        st.builds(Pow, kids, st.integers(0, 4)),
    ),
    max_leaves=12,
)


@settings(max_examples=300)
@given(trees)
def test_round_trip_random_trees(tree):
    assert parse(to_text(tree)) == tree


def test_precedence():
    assert parse("-x1*x2") == Neg(Mul(Gen("x", 1), Gen("x", 2)))
    assert parse("x1 - x2 - x1") == Sub(Sub(Gen("x", 1), Gen("x", 2)), Gen("x", 1))
    assert parse("2*x1^3") == Mul(Int(2), Pow(Gen("x", 1), 3))
    assert parse("x1 + -x2") == Add(Gen("x", 1), Neg(Gen("x", 2)))


@pytest.mark.parametrize(
    "text,pos",
    [
        ("x1*(x2", 6),
        ("x1 + $", 5),
        ("x1 ^ ^", 5),
        ("x1^2^3", 4),
        ("x1x2", 0),
        ("sqrt(x1)", 5),
        ("", 0),
        ("x1 )", 3),
        ("x0", 0),
        ("foo", 0),
    ],
)
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(ExprError) as info:
        parse(text)
    assert info.value.position == pos


@pytest.fixture
def A31():
    return WeylEnv(WeylContext(3, 1))


def test_evaluation_examples(A31):
    assert A31.parse("x1*x2 - x2*x1 + 1").is_zero()
    assert A31.parse("x1^0") == A31.ctx.one()
    assert format_element(A31.parse("x2^2*x1")) == "x1*x2^2 + 2*x2"
    assert A31.parse("inv(2)*x1") == A31.parse("2*x1")


def test_tensor_square_evaluation():
    ts = TensorSquare(3, 1)
    assert not ts.reduce(ts.parse("(x1 - y1)^3"))
    assert not ts.reduce(ts.parse("x1*y2 - y2*x1"))
    assert ts.reduce(ts.parse("x1*x2 - x2*x1 + 1")) == {}


def test_evaluation_errors(A31):
    with pytest.raises(ExprError) as info:
        A31.parse("x1 + x3")
    assert info.value.position == 5
    with pytest.raises(ExprError):
        A31.parse("y1")
    with pytest.raises(ExprError):
        A31.parse("inv(3)")
    with pytest.raises(ExprError):
        A31.parse("inv(x1)")
    with pytest.raises(ExprError):
        A31.parse("sqrt(2)")


def test_number_field_context():
    K = NumberFieldEnv(QuadraticField(2))
    assert K.parse("sqrt(2)*sqrt(2) - 2") == 0
    assert K.parse("(1 + sqrt(2))*(1 - sqrt(2))") == -1
    assert K.parse("inv(1 + sqrt(2))") == QuadraticFieldElement(-1, 1, 2)
    with pytest.raises(ExprError):
        K.parse("x1")


def test_generators_used():
    assert generators_used(parse("x1*y2 + inv(2)*x1^2")) == {("x", 1), ("y", 2)}


def test_evaluate_accepts_text(A31):
    assert evaluate("x1*x2", A31) == A31.parse("x1*x2")
