import pytest
from hypothesis import given

from cbvlab.syntax import (
    DELTA, FALSE, I, OMEGA, TRUE,
    Abs, App, Hole, ParseError, Var,
    alpha_eq, fill_context, is_value, pair, parse_term, subst_value, to_text,
)
from conftest import term_strategy


def test_parse_identity():
    assert parse_term("\\x. x") == Abs("x", Var("x"))


def test_parse_omega():
    delta = Abs("x", App(Var("x"), Var("x")))
    assert parse_term("(\\x. x x) (\\x. x x)") == App(delta, delta)


def test_parse_pair_context():
    want = Abs("z", App(App(Var("z"), Hole(1)), Hole(2)))
    assert parse_term("\\z. z _1 _2") == want


def test_parse_multi_binder_sugar():
    assert parse_term("\\x y. x") == Abs("x", Abs("y", Var("x")))
    assert parse_term("\\x y. x") == parse_term("\\x. \\y. x")


def test_parse_lambda_unicode():
    assert parse_term("λx. x") == I


def test_parse_application_left_associative():
    assert parse_term("a b c") == App(App(Var("a"), Var("b")), Var("c"))


@pytest.mark.parametrize("src, pos_check", [
    ("(\\x. x", True),
    ("\\x", True),
    ("x )", True),
    ("", True),
    ("\\. x", True),
])
def test_parse_errors_carry_position(src, pos_check):
    with pytest.raises(ParseError) as err:
        parse_term(src)
    assert err.value.position >= 0


def test_parse_hole_zero_rejected():
    with pytest.raises(ParseError):
        parse_term("_0")


def test_parse_bare_underscore_rejected():
    with pytest.raises(ParseError):
        parse_term("_")


def test_alpha_eq_binders():
    assert alpha_eq(parse_term("\\x. x"), parse_term("\\y. y"))
    assert not alpha_eq(parse_term("\\x y. x"), parse_term("\\x y. y"))


def test_alpha_eq_holes_are_free():
    assert alpha_eq(parse_term("\\x. _1"), parse_term("\\y. _1"))
    assert not alpha_eq(parse_term("\\x. _1"), parse_term("\\x. _2"))


def test_free_vs_bound_names_distinguished():
    # \y. x has x free; it is not alpha-equal to \x. x
    assert parse_term("\\y. x") != parse_term("\\x. x")


def test_subst_basic():
    assert subst_value(Var("x"), "x", I) == I


def test_subst_capture_avoidance():
    # (\y. x)[x := y]  must rename the binder
    m = Abs("y", Var("x"))
    out = subst_value(m, "x", Var("y"))
    assert out == Abs("y'", Var("y"))
    assert out != Abs("y", Var("y"))


def test_subst_not_free():
    m = Abs("z", Var("z"))
    assert subst_value(m, "x", I) == m


def test_subst_rejects_non_value():
    with pytest.raises(ValueError):
        subst_value(Var("x"), "x", OMEGA)


def test_fill_identity_context():
    assert fill_context(Hole(1), [OMEGA]) == OMEGA


def test_fill_is_capture_permitting():
    assert fill_context(Abs("x", Hole(1)), [Var("x")]) == Abs("x", Var("x"))


def test_fill_pair_true_omega():
    got = pair(TRUE, OMEGA)
    assert got == parse_term("\\z. z (\\x y. x) ((\\x. x x) (\\x. x x))")


def test_fill_index_out_of_range():
    with pytest.raises(ValueError):
        fill_context(Hole(2), [Var("x")])


def test_values_are_variables_and_abstractions():
    assert is_value(Var("x"))
    assert is_value(I)
    assert not is_value(App(I, I))
    assert not is_value(OMEGA)


def test_stock_combinators():
    assert to_text(TRUE) == "\\x y. x"
    assert to_text(FALSE) == "\\x y. y"
    assert to_text(OMEGA) == "(\\x. x x) (\\x. x x)"
    assert DELTA.free_names == frozenset()


@given(term_strategy(with_holes=True))
def test_print_parse_print_fixpoint(t):
    printed = to_text(t)
    reparsed = parse_term(printed)
    assert reparsed == t
    assert to_text(reparsed) == printed


@given(term_strategy())
def test_projection_property(t):
    assert fill_context(Hole(1), [t]) == t
    assert fill_context(Hole(2), [Var("q"), t]) == t


@given(term_strategy())
def test_subst_free_name_bookkeeping(t):
    out = subst_value(t, "x", Var("w"))
    expected = (t.free_names - {"x"}) | ({"w"} if "x" in t.free_names else set())
    assert out.free_names == expected
