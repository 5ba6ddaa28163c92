from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contentlab.errors import ElaborationError, ExprSyntaxError, MalformedDescriptor
from contentlab.parser import (
    BinOp,
    Neg,
    Num,
    Pow,
    Var,
    parse_coeffs,
    parse_descriptor,
    parse_element,
    parse_expr,
    parse_group,
    parse_group_element,
    parse_ideal,
    parse_ring,
    unparse,
)
from contentlab.rings import QQ, ZZ, BiPolyQ, HahnVal, UniPoly
from contentlab.valgroup import Affine, ConvergentQuad, Finite, LexZ, Quad, Z

nums = st.builds(Num, st.fractions(min_value=0, max_value=50, max_denominator=9))
names = st.builds(Var, st.sampled_from(["x", "y", "T", "t"]))
exprs = st.recursive(
    nums | names,
    lambda sub: st.one_of(
        st.builds(Neg, sub),
        st.builds(BinOp, st.sampled_from(["+", "-", "*"]), sub, sub),
        st.builds(Pow, sub, st.tuples(st.integers(0, 5))),
        st.builds(Pow, names, st.tuples(st.integers(-3, 3), st.integers(-3, 3))),
    ),
    max_leaves=12,
)


@settings(max_examples=500, deadline=None)
@given(exprs)
def test_unparse_parse_is_identity(e):
    assert parse_expr(unparse(e)) == e


def test_precedence():
    assert parse_expr("1 + 2*x^3") == BinOp("+", Num(Fraction(1)), BinOp("*", Num(Fraction(2)),
                                                                         Pow(Var("x"), (3,))))
    assert parse_expr("-x^2") == Neg(Pow(Var("x"), (2,)))
    assert parse_expr("1 - 2 - 3") == BinOp("-", BinOp("-", Num(Fraction(1)), Num(Fraction(2))),
                                           Num(Fraction(3)))
    assert parse_expr("3/4") == Num(Fraction(3, 4))


@pytest.mark.parametrize("src, line, col, expected", [
    ("2 +", 1, 4, "integer"),
    ("(x + 1", 1, 7, ")"),
    ("x ^ y", 1, 5, "integer"),
    ("x $ 1", 1, 3, "name"),
    ("1 +\n  * 2", 2, 3, "("),
    ("3/0", 1, 3, "nonzero integer"),
])
def test_syntax_errors_carry_position_and_expected(src, line, col, expected):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(src)
    err = info.value
    assert (err.line, err.column) == (line, col)
    assert expected in err.expected
    assert str(err).startswith(f"{line}:{col}:")


def test_elaboration_errors():
    with pytest.raises(ElaborationError) as info:
        parse_element("1 + z", UniPoly(ZZ, "T"))
    assert (info.value.line, info.value.column) == (1, 5)
    with pytest.raises(ElaborationError):
        parse_element("t", HahnVal(LexZ(2), QQ))  # needs coordinates
    with pytest.raises(ElaborationError):
        parse_element("1/2", ZZ)
    with pytest.raises(ElaborationError):
        parse_element("t^(1,2)", HahnVal(Z, QQ))


def test_spec_syntax_examples():
    assert str(parse_element("-12", ZZ)) == "-12"
    assert str(parse_element("3/4", QQ)) == "3/4"
    assert str(parse_element("4*T + 2", UniPoly(ZZ, "T"))) == "2 + 4*T"
    R = BiPolyQ()
    assert parse_element("x^2 + x*y", R) == parse_element("x*(x + y)", R)
    V = HahnVal(LexZ(2), QQ)
    a = parse_element("t^(1,0) + 2*t^(0,3)", V)
    assert str(a) == "2*t^(0,3) + t^(1,0)"  # ascending support


def test_ring_group_and_descriptor_text():
    assert parse_ring("Hahn(LexZ(2), Q)") == HahnVal(LexZ(2), QQ)
    assert parse_ring("Z") == ZZ
    assert parse_group("Quad(2)") == Quad(2)
    assert parse_group_element("(1,-3)", LexZ(2)) == LexZ(2).element(1, -3)
    assert parse_descriptor("finite[1, 2, 3]", Z) == Finite(tuple(Z.element(i) for i in (1, 2, 3)))
    assert parse_descriptor("affine((1,0);(0,-1))", LexZ(2)) == Affine(LexZ(2).element(1, 0),
                                                                       LexZ(2).element(0, -1))
    assert parse_descriptor("conv(0 + 1/2*sqrt(2))", Quad(2)) == ConvergentQuad(Quad(2), 0, Fraction(1, 2))
    for s in ("finite[1, 5]", "affine(2;3)"):
        assert str(parse_descriptor(s, Z)).replace(" ", "") == s.replace(" ", "")
    with pytest.raises((ExprSyntaxError, MalformedDescriptor)):
        parse_descriptor("affine(1;0)", Z)
    with pytest.raises(ExprSyntaxError):
        parse_ring("Hahn(R, Q)")


def test_ideal_text():
    R = BiPolyQ()
    assert parse_ideal("(x, y^2)", R) == [R.gens()[0], R.gens()[1] ** 2]
    assert parse_ideal("(x + 1)", R) == [parse_element("x + 1", R)]
    assert parse_ideal("6", ZZ) == [ZZ(6)]


def test_coefficients_over_any_base():
    R = BiPolyQ()
    cs = parse_coeffs("x + y*T - (x - y)*T^3", R)
    assert [str(c) for c in cs] == ["x", "y", "0", "-x + y"]
    V = HahnVal(Z, QQ)
    assert parse_coeffs("t + T*t^2", V) == [parse_element("t", V), parse_element("t^2", V)]
    assert parse_coeffs("0", ZZ) == []
    with pytest.raises(ElaborationError):
        parse_coeffs("T^(1,2)", ZZ)
