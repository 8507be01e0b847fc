import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_p1
from omegapa.combinators import constant_automaton
from omegapa.core import (Condition, LassoWord, UnknownSymbolError, absorbing_states, classify,
                          make_automaton, with_accepting)
from omegapa.evaluator import (Bscc, absorption_probabilities, bsccs, build_periodic_chain,
                               eval_all, eval_lasso, stationary_distribution)
from omegapa.mc_oracle import truncation_bounds
from omegapa.pcp_gadgets import build_A3, build_A4, build_Ai
from oracles import float_eval
from strategies import automata, lassos

F = Fraction
CONDS = [c.value for c in Condition]


def two_cycle():
    return make_automaton(("q0", "q1"), ("a",), "q0",
                          [("a", "q0", "q1", 1), ("a", "q1", "q0", 1)], {"q0"})


def test_chain_shape():
    A3 = build_A3(("a",))
    C = build_periodic_chain(A3, LassoWord((), ("a",)))
    assert set(C.nodes) == {("q0", 0)}
    A = two_cycle()
    C = build_periodic_chain(A, LassoWord((), ("a", "a", "a")))
    assert len(C.nodes) == 6


def test_bsccs_of_two_path_chain():
    A1 = build_Ai(make_p1(), 1)
    C = build_periodic_chain(A1, LassoWord((), ("a",)))
    assert sorted(sorted(b.states()) for b in bsccs(C)) == [["q2"]]
    C = build_periodic_chain(A1, LassoWord(("$",), ("a",)))
    assert {b.states() for b in bsccs(C)} == {frozenset({"q2"})}


def test_two_sinks_fed_by_one_node():
    A = make_automaton(("t", "win", "lose"), ("a",), "t",
                       [("a", "t", "win", F(1, 3)), ("a", "t", "lose", F(2, 3)),
                        ("a", "win", "win", 1), ("a", "lose", "lose", 1)], {"win"})
    C = build_periodic_chain(A, LassoWord((), ("a",)))
    comps = bsccs(C)
    assert len(comps) == 2
    win = [b for b in comps if b.states() == {"win"}]
    assert absorption_probabilities(C, win) == F(1, 3)
    assert absorption_probabilities(C, comps) == 1


def test_absorption_to_q2_in_two_path_chain_is_one():
    A1 = build_Ai(make_p1(), 1)
    C = build_periodic_chain(A1, LassoWord((), ("a",)))
    assert absorption_probabilities(C, [b for b in bsccs(C) if "q2" in b.states()]) == 1


def test_stationary_distributions():
    A = two_cycle()
    C = build_periodic_chain(A, LassoWord((), ("a",)))
    (b,) = bsccs(C)
    assert sorted(stationary_distribution(b).values()) == [F(1, 2), F(1, 2)]
    A = make_automaton(("x", "y"), ("a",), "x",
                       [("a", "x", "y", F(1, 3)), ("a", "x", "x", F(2, 3)),
                        ("a", "y", "x", F(1, 6)), ("a", "y", "y", F(5, 6))], {"x"})
    (b,) = bsccs(build_periodic_chain(A, LassoWord((), ("a",))))
    pi = stationary_distribution(b)
    assert pi[("x", 0)] == F(1, 3) and pi[("y", 0)] == F(2, 3)


def test_worked_values():
    A = two_cycle()
    w = LassoWord((), ("a",))
    vals = eval_all(A, w)
    assert vals == {Condition.SAFETY: 0, Condition.REACH: 1, Condition.BUCHI: 1,
                    Condition.COBUCHI: 0, Condition.LIMITAVG: F(1, 2)}
    assert eval_lasso(constant_automaton(F(2, 5), ("a",)), "safety", w) == F(2, 5)
    assert eval_lasso(build_Ai(make_p1(), 1), "safety", LassoWord.parse("a $ ; $")) == F(1, 4)
    A4 = build_A4(("a",))
    for c in ("reach", "buchi", "cobuchi", "limitavg"):
        assert eval_lasso(A4, c, LassoWord.parse("$ ; $")) == 1


def test_unknown_symbol_rejected():
    with pytest.raises(UnknownSymbolError):
        eval_lasso(two_cycle(), "safety", LassoWord((), ("z",)))


def test_empty_accepting_set():
    A = with_accepting(two_cycle(), ())
    vals = eval_all(A, LassoWord((), ("a",)))
    assert vals[Condition.SAFETY] == vals[Condition.REACH] == vals[Condition.BUCHI] == 0
    # Inf(path) is never empty, so it is never inside an empty F
    assert vals[Condition.COBUCHI] == 0 and vals[Condition.LIMITAVG] == 0


def test_non_accepting_initial_state_kills_safety():
    A = with_accepting(two_cycle(), {"q1"})
    assert eval_lasso(A, "safety", LassoWord((), ("a",))) == 0


@settings(max_examples=80)
@given(automata(), lassos(), st.sampled_from(CONDS))
def test_agrees_with_float_oracle(A, w, cond):
    exact = eval_lasso(A, cond, w)
    assert 0 <= exact <= 1
    assert abs(float(exact) - float_eval(A, cond, w)) < 1e-9


@given(automata(absorbing_sink=True), lassos(), st.integers(0, 12))
def test_truncation_sandwich(A, w, n):
    for cond in ("safety", "reach"):
        lo, hi = truncation_bounds(A, cond, w, n)
        v = eval_lasso(A, cond, w)
        assert lo <= v <= hi
        lo2, hi2 = truncation_bounds(A, cond, w, n + 1)
        assert lo <= lo2 and hi2 <= hi


@given(automata(), lassos(), st.sampled_from(["buchi", "cobuchi", "limitavg"]))
def test_unrolling_and_rotating_the_period(A, w, cond):
    v = eval_lasso(A, cond, w)
    unrolled = LassoWord(w.prefix + w.period, w.period)
    rotated = LassoWord(w.prefix + w.period[:1], w.period[1:] + w.period[:1])
    doubled = LassoWord(w.prefix, w.period * 2)
    assert eval_lasso(A, cond, unrolled) == v
    assert eval_lasso(A, cond, rotated) == v
    assert eval_lasso(A, cond, doubled) == v


@given(automata(absorbing_sink=True), lassos())
def test_absorbing_automata_reach_their_absorbing_set(A, w):
    if not classify(A).is_absorbing:
        return
    C = absorbing_states(A)
    assert eval_lasso(with_accepting(A, C), "reach", w) == 1


@given(automata(), lassos())
def test_acceptance_absorbing_conditions_coincide(A, w):
    if not classify(A).is_acceptance_absorbing:
        A = with_accepting(A, set(A.accepting) & absorbing_states(A))
    vals = {eval_lasso(A, c, w) for c in ("reach", "buchi", "cobuchi", "limitavg")}
    assert len(vals) == 1


def test_long_prefix_uses_exact_integer_path():
    A1 = build_Ai(make_p1(), 1)
    w = LassoWord(("a",) * 40 + ("$",), ("$",))
    assert eval_lasso(A1, "safety", w) == F(1, 2 ** 40) * (1 - F(1, 2 ** 40))
