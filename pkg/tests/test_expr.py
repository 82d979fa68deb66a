import pytest
from hypothesis import given, strategies as st

from kronq.bases import cheb_elem
from kronq.cluster import xdelta, xvar_rec
from kronq.expr import (
    BinOp,
    Cheb,
    Delta,
    ExprSyntaxError,
    Num,
    Pow,
    QPow,
    XVar,
    eval_expr,
    evaluate,
    parse_expr,
    to_source,
)
from kronq.qlaurent import LaurentQ
from kronq.qtorus import TorusElem

atoms = st.one_of(
    st.integers(0, 20).map(Num),
    st.integers(-6, 6).map(QPow),
    st.integers(-4, 6).map(XVar),
    st.tuples(st.sampled_from("zs"), st.integers(0, 4)).map(lambda t: Cheb(*t)),
    st.just(Delta()),
)
exprs = st.recursive(
    atoms,
    lambda kids: st.one_of(
        st.tuples(st.sampled_from("+-*"), kids, kids).map(lambda t: BinOp(*t)),
        st.tuples(kids, st.integers(0, 3)).map(lambda t: Pow(*t)),
    ),
    max_leaves=8,
)


def test_delta_identity():
    assert evaluate("q^{1/2}*(X[0]*X[3] - q^{2/2}*X[1]*X[2])") == xdelta()


def test_basic_atoms():
    assert parse_expr("z[2]") == Cheb("z", 2)
    assert eval_expr(parse_expr("z[2]")) == cheb_elem("first", 2)
    assert evaluate("s[3]") == cheb_elem("second", 3)
    assert evaluate("Z") == xdelta()
    assert evaluate("2") == TorusElem.scalar(2)
    assert evaluate("X[0]*X[2]") == TorusElem({(2, 0): LaurentQ.q(1), (0, 0): 1})


def test_precedence_and_associativity():
    assert parse_expr("1+2*X[1]^2") == BinOp("+", Num(1), BinOp("*", Num(2), Pow(XVar(1), 2)))
    assert parse_expr("X[1]-X[2]-X[3]") == BinOp("-", BinOp("-", XVar(1), XVar(2)), XVar(3))
    assert evaluate("X[1]^0") == TorusElem.scalar(1)


def test_noncommutative_products():
    a, b = evaluate("X[1]*X[2]"), evaluate("X[2]*X[1]")
    assert a != b
    assert a == b.scale(LaurentQ.q(1))


@pytest.mark.parametrize(
    "src,offset",
    [("X[1]*", 5), ("", 0), ("X[1] + + X[2]", 7), ("(X[1]", 5), ("z[-1]", 0), ("X[1]^x", 5), ("q", 0), ("X[1] X[2]", 5), ("é+X[1]", 0), ("X[1]+é", 5)],
)
def test_syntax_errors(src, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(src)
    assert info.value.offset == offset


@given(exprs)
def test_print_parse_roundtrip(e):
    assert parse_expr(to_source(e)) == e


def test_cluster_relation_via_expressions():
    for m in range(-3, 5):
        lhs = evaluate(f"X[{m - 1}]*X[{m + 1}]")
        assert lhs == (xvar_rec(m) ** 2).scale(LaurentQ.q(1)) + 1
