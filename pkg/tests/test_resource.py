import pytest
from hypothesis import given, strategies as st

from cbvlab.resource import (
    Bag, RAbs, RApp, RVar,
    bag, degree, distinct_orderings, is_normal, linear_subst, normalize,
    normalize_strategy, parse_resource, reach, reduce_at, redex_paths,
    rename_free, step_r, sum_to_text, to_rtext,
)
from oracle_enum import all_simples, all_values

x, y, z = RVar("x"), RVar("y"), RVar("z")
ID_R = RAbs("v", bag(RVar("v")))  # \v. [v]


def rs(src: str):
    return parse_resource(src)


# ---------------------------------------------------------------------------
# Structure, printing, parsing

def test_bags_are_multisets():
    assert bag(x, y) == bag(y, x)
    assert bag(x, x) != bag(x)


def test_alpha_equality():
    assert rs("\\a. [a]") == rs("\\b. [b]")
    assert rs("[\\a. [a], x]") == rs("[x, \\b. [b]]")
    assert rs("\\a. [b]") != rs("\\a. [a]")


def test_grammar_discipline():
    with pytest.raises(TypeError):
        RAbs("x", RVar("x"))          # body must be simple
    with pytest.raises(TypeError):
        Bag((bag(x),))                # bags hold values only
    with pytest.raises(TypeError):
        RApp(x, bag(x))               # applications are simple-to-simple


def test_parse_rejects_bare_value_application():
    with pytest.raises(ValueError):
        rs("x [y]")


@pytest.mark.parametrize("src", [
    "[]", "[x]", "[x, x, y]", "\\x. [x] [x]", "[\\x. []] []",
    "([x] [y]) [z]", "[x] ([y] [z])", "[\\x. [x, \\w. []]]",
])
def test_print_parse_round_trip(src):
    t = rs(src)
    assert rs(to_rtext(t)) == t


def test_sum_rendering():
    assert sum_to_text(frozenset()) == "0"
    assert sum_to_text(frozenset({bag(x)})) == "{ [x] }"


def test_size_measure():
    assert x.size == 1
    assert rs("[]").size == 1
    assert rs("[x, x]").size == 3
    assert rs("\\x. [x]").size == 3
    assert rs("[] []").size == 2
    assert rs("[\\x. [x] [x]]").size == 6


# ---------------------------------------------------------------------------
# Degree and linear substitution

def test_degree_examples():
    assert degree(rs("[x, x]"), "x") == 2
    assert degree(rs("\\x. [x]"), "x") == 0
    assert degree(rs("[x] [y]"), "x") == 1


def test_linear_subst_exact_match():
    out = linear_subst(bag(x), "x", bag(rs("\\y. [y]")))
    assert out == frozenset({bag(rs("\\y. [y]"))})


def test_linear_subst_degree_mismatch_is_zero():
    assert linear_subst(bag(x), "x", bag(y, z)) == frozenset()


def test_linear_subst_two_occurrences_two_values():
    out = linear_subst(bag(x, x), "x", bag(y, z))
    assert out == frozenset({bag(y, z)})


def test_linear_subst_order_matters_in_applications():
    # [x] [x] with {y, z}: the two bijections give different applications
    out = linear_subst(rs("[x] [x]"), "x", (y, z))
    assert out == frozenset({rs("[y] [z]"), rs("[z] [y]")})


def test_linear_subst_capture_avoiding():
    # substituting a value with free y under a binder y must rename
    body = RAbs("y", bag(RVar("x"), RVar("y")))
    s = Bag((body,))
    (result,) = linear_subst(s, "x", (y,))
    inner = result.elems[0]
    assert inner.var != "y"
    assert degree(inner.body, "y") == 1  # the substituted free y stayed free


@given(st.integers(1, 4))
def test_linear_subst_result_count_bounds(n):
    values = tuple(RVar(f"v{i}") for i in range(n))
    s = Bag((RVar("x"),) * n)
    out = linear_subst(s, "x", values)
    assert 1 <= len(out) <= max(1, __import__("math").factorial(n))


def test_distinct_orderings_collapse_duplicates():
    assert len(list(distinct_orderings((x, x, x)))) == 1
    assert len(list(distinct_orderings((x, y, z)))) == 6


def test_rename_free_capture():
    t = RAbs("b", bag(RVar("a"), RVar("b")))
    out = rename_free(Bag((t,)), "a", "b")
    inner = out.elems[0]
    assert inner.var != "b"
    assert degree(inner.body, "b") == 1


# ---------------------------------------------------------------------------
# One-step reduction

def test_beta_step():
    got = step_r(rs("[\\x. [x]] [\\y. [y]]"))
    assert got == frozenset({rs("[\\y. [y]]")})


def test_clash_head_cardinality():
    got = step_r(rs("[y, z] [x]"))
    assert got == frozenset()


def test_empty_head_clashes():
    assert step_r(rs("[] [x]")) == frozenset()


def test_variable_head_is_normal():
    assert step_r(rs("[x] [y, y]")) is None
    assert is_normal(rs("[x] [y, y]"))


def test_abs_head_with_application_argument_waits():
    # CbV at the resource level: the argument must become a bag first
    t = rs("[\\x. [x]] ([y, y] [])")
    paths = list(redex_paths(t))
    assert paths == [("arg",)]


def test_is_normal_examples():
    assert is_normal(rs("[]"))
    assert is_normal(rs("[x] [y]"))
    assert not is_normal(rs("[\\x. []] []"))


def test_degree_zero_beta_fires():
    assert step_r(rs("[\\x. []] []")) == frozenset({rs("[]")})


def test_reduction_shrinks_size():
    t = rs("[\\x. [x]] [\\y. [y]]")
    for path in redex_paths(t):
        for r in reduce_at(t, path):
            assert r.size < t.size


# ---------------------------------------------------------------------------
# Normalization

def test_normalize_annihilates_degree_mismatch():
    assert normalize(rs("[\\x. [x] [x]] [\\y. [y]]")) == frozenset()


def test_normalize_two_step_trace():
    out = normalize(rs("[\\x. [x] [x]] [\\y. [y], \\w. [w]]"))
    assert out == frozenset({Bag((ID_R,))})


def test_normalize_stuck_application_is_normal():
    t = rs("[\\x. [x]] ([y] [z])")
    assert normalize(t) == frozenset({t})


def test_annihilation_propagates():
    # a dead strict subterm kills the whole term, in any position
    dead = "[y, y] []"
    for src in (f"[\\q. ({dead})]", f"({dead}) [x]", f"[x] ({dead})"):
        assert normalize(rs(src)) == frozenset(), src


def test_normalize_inside_abstraction_yields_abstractions():
    t = rs("[\\q. [\\x. []] []]")
    out = normalize(t)
    assert out == frozenset({rs("[\\q. []]")})
    for u in out:
        assert all(isinstance(v, RAbs) for v in u.elems)


def test_strategies_agree_on_exhaustive_small_terms():
    for t in all_simples(7, ("x",)):
        nf = normalize(t)
        assert normalize_strategy(t, "lo") == nf
        assert normalize_strategy(t, "ri") == nf


def test_normalize_values():
    v = rs("\\x. [\\y. []] []")
    assert normalize(v) == frozenset({rs("\\x. []")})


def test_reach_contains_all_intermediates():
    t = rs("[\\x. [x] [x]] [\\y. [y], \\w. [w]]")
    r = reach(t)
    assert t in r
    assert rs("[\\y. [y]] [\\w. [w]]") in r
    assert Bag((ID_R,)) in r


def test_exhaustive_normal_forms_are_normal():
    for t in all_simples(6, ("x", "y")):
        for u in normalize(t):
            assert is_normal(u), f"{t} -> {u}"
            assert u.size <= t.size
