import itertools

import pytest
from hypothesis import given

from cbvlab.cbv import reduce_v, reducts_v, step_v
from cbvlab.syntax import (
    I, OMEGA, TRUE,
    Abs, App, Var, is_value, pair, parse_term, to_text,
)
from conftest import term_strategy


def targets(m):
    return {s.target for s in step_v(m)}


def test_simple_redex():
    assert targets(parse_term("(\\x. x) (\\y. y)")) == {parse_term("\\y. y")}


def test_application_argument_blocks_beta():
    # the argument z z is an application, not a value: no redex anywhere
    assert step_v(parse_term("(\\x. \\y. y) (z z)")) == frozenset()


def test_nested_redex_only_fires_under_value_condition():
    # (\x. x) ((\y. y) (\z. z)): the root argument is an application, so only
    # the inner redex exists.  (One reduct, not two: the value condition
    # excludes the root.)
    m = parse_term("(\\x. x) ((\\y. y) (\\z. z))")
    assert targets(m) == {parse_term("(\\x. x) (\\z. z)")}


def test_step_under_lambda():
    m = parse_term("\\w. (\\x. x) (\\y. y)")
    assert targets(m) == {parse_term("\\w. \\y. y")}


def test_omega_self_loop():
    assert targets(OMEGA) == {OMEGA}


def test_step_rejects_contexts():
    with pytest.raises(ValueError):
        step_v(parse_term("_1"))


def test_reduce_identity():
    out = reduce_v(parse_term("(\\x. x) (\\y. y)"), 10)
    assert out.normal_form and out.term == I


def test_reduce_omega_times_out():
    out = reduce_v(OMEGA, 100)
    assert not out.normal_form
    assert out.term == OMEGA


def test_reduce_pair_true_omega_times_out():
    # the pair is a value, but the Omega inside keeps firing under the lambda
    out = reduce_v(pair(TRUE, OMEGA), 10)
    assert not out.normal_form
    assert out.term == pair(TRUE, OMEGA)


def test_reducts_ii():
    m = App(I, I)
    assert reducts_v(m, 2, 20) == frozenset({m, I})


def test_reducts_omega():
    assert reducts_v(OMEGA, 3, 20) == frozenset({OMEGA})


def test_reducts_normal_term():
    assert reducts_v(TRUE, 5, 20) == frozenset({TRUE})


@given(term_strategy())
def test_values_closed_under_reduction(t):
    m = Abs("q", t)
    for s in step_v(m):
        assert isinstance(s.target, Abs)


@given(term_strategy())
def test_redex_arguments_are_values(t):
    # every fired redex position holds (\x.P) V with V a value
    from cbvlab.cbv import redex_paths
    for path in redex_paths(t):
        sub = t
        for move in path:
            sub = {"fun": lambda u: u.fun,
                   "arg": lambda u: u.arg,
                   "body": lambda u: u.body}[move](sub)
        assert isinstance(sub, App) and isinstance(sub.fun, Abs)
        assert is_value(sub.arg)


@given(term_strategy())
def test_local_confluence_at_budget(t):
    one = sorted(targets(t), key=to_text)[:4]
    for a, b in itertools.combinations(one, 2):
        ra = reducts_v(a, 4, 40)
        rb = reducts_v(b, 4, 40)
        assert ra & rb, f"no common reduct for {to_text(a)} / {to_text(b)}"
