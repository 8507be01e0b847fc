import itertools
from fractions import Fraction

import pytest

from conftest import make_p1, make_p2prime
from mc_suite import cases, horizon
from omegapa.combinators import constant_automaton
from omegapa.core import LassoWord
from omegapa.evaluator import eval_lasso
from omegapa.mc_oracle import simulate, truncation_bounds
from omegapa.pcp_gadgets import build_A3, build_A4, build_Ai, build_equality_gadget

F = Fraction


def test_simulate_constant():
    A = constant_automaton(F(2, 5), ("a",))
    est = simulate(A, "safety", LassoWord((), ("a",)), 100_000, 5, seed=7)
    assert est.trials == 100_000 and est.seed == 7
    assert abs(est.mean - 0.4) <= 4 * est.standard_error


def test_simulate_two_path_automaton():
    est = simulate(build_Ai(make_p1(), 1), "safety", LassoWord.parse("a $ ; $"), 20_000, 16, 1)
    assert abs(est.mean - 0.25) <= 4 * est.standard_error


def test_simulate_is_reproducible_and_single_trials_are_binary():
    A = build_equality_gadget(make_p2prime()).automaton
    w = LassoWord.parse("a $ ; $")
    assert simulate(A, "safety", w, 5000, 10, 3) == simulate(A, "safety", w, 5000, 10, 3)
    one = simulate(A, "safety", w, 1, 10, 11)
    assert one.mean in (0.0, 1.0) and one.standard_error == 0.0
    assert simulate(A, "safety", w, 1, 10, 11) == one


def test_simulate_rejects_bad_input():
    A = build_A3(("a",))
    with pytest.raises(ValueError):
        simulate(A, "safety", LassoWord(("a", "a"), ("a",)), 10, 2, 0)
    with pytest.raises(ValueError):
        simulate(A, "safety", LassoWord((), ("a",)), 0, 5, 0)
    with pytest.raises(KeyError):
        simulate(A, "safety", LassoWord((), ("z",)), 10, 5, 0)


def test_truncation_examples():
    assert truncation_bounds(build_A3(("a",)), "safety", LassoWord(("$",), ("a",)), 1) == (0, 0)
    assert truncation_bounds(build_A4(("a",)), "reach", LassoWord(("$",), ("$",)), 1) == (1, 1)
    lo, hi = truncation_bounds(build_A3(("a",)), "safety", LassoWord((), ("a",)), 0)
    assert hi == 1
    with pytest.raises(ValueError):
        truncation_bounds(build_A3(("a",)), "buchi", LassoWord((), ("a",)), 3)
    with pytest.raises(ValueError):
        truncation_bounds(build_A3(("a",)), "safety", LassoWord((), ("a",)), -1)


@pytest.mark.parametrize("i", [1, 2])
def test_truncation_gap_halves_on_two_path_automata(i):
    for P in (make_p1(), make_p2prime()):
        A = build_Ai(P, i)
        for w in (LassoWord((), ("a",)), LassoWord(("a", "a", "$"), ("$",)),
                  LassoWord(("a",), ("a", "$"))):
            v = eval_lasso(A, "safety", w)
            prev = None
            for n in range(12):
                lo, hi = truncation_bounds(A, "safety", w, n)
                assert lo <= v <= hi
                assert hi - lo <= F(1, 2 ** n)
                if prev:
                    assert prev[0] <= lo and hi <= prev[1]
                prev = (lo, hi)


def test_pinned_suite_has_twenty_cases():
    assert len(cases()) == 20


@pytest.mark.parametrize("k", range(20))
def test_pinned_suite_agrees(k):
    case = cases()[k]
    A, cond, w, _ = case
    exact = eval_lasso(A, cond, w)
    est = simulate(A, cond, w, 20_000, horizon(case), seed=1000 + k)
    assert abs(est.mean - float(exact)) <= 4 * est.standard_error
