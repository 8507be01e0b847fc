import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import make_p1
from omegapa.combinators import constant_automaton
from omegapa.core import LassoWord, make_automaton, with_accepting
from omegapa.evaluator import eval_lasso
from omegapa.pcp_gadgets import build_A3, build_A4, build_Ai
from omegapa.qualitative import (decide_almost_safety, decide_limit_safety,
                                 decide_positive_reachability, noleak_subset_graph)
from oracles import brute_almost_safety, quotient_classes, random_lasso
from strategies import automata

F = Fraction


def test_noleak_graph_examples():
    g = noleak_subset_graph(build_A3(("a",)))
    assert g.nodes == [frozenset({"q0"})]
    assert g.edges == {(frozenset({"q0"}), "a"): frozenset({"q0"})}
    g = noleak_subset_graph(build_Ai(make_p1(), 1))
    assert g.initial == {"q0"} and g.edges == {}
    A = build_Ai(make_p1(), 1)
    full = noleak_subset_graph(with_accepting(A, A.states))
    assert all((S, s) in full.edges for S in full.nodes for s in A.alphabet)


def test_almost_safety_examples():
    d = decide_almost_safety(build_A3(("a",)))
    assert d.answer and d.witness == LassoWord((), ("a",))
    assert decide_almost_safety(build_Ai(make_p1(), 1)) == (False, None)
    A3 = build_A3(("a",))
    assert not decide_almost_safety(with_accepting(A3, {"q1"})).answer


def test_limit_safety_examples():
    assert decide_limit_safety(build_A3(("a",)))
    assert not decide_limit_safety(build_Ai(make_p1(), 1))
    assert not decide_limit_safety(constant_automaton(F(9, 10), ("a",)))


def test_positive_reachability_examples():
    A4 = build_A4(("a",))
    d = decide_positive_reachability(A4)
    assert d.answer and "$" in d.witness.prefix
    assert eval_lasso(A4, "reach", d.witness) > 0
    A3 = build_A3(("a",))
    assert decide_positive_reachability(A3) == (True, LassoWord((), ("a",)))
    # F sits in a component the initial state cannot reach
    A = make_automaton(("p", "q"), ("a",), "p", [("a", "p", "p", 1), ("a", "q", "q", 1)], {"q"})
    assert decide_positive_reachability(A) == (False, None)


def test_witness_needs_a_prefix():
    # b must be read once before the safe a-loop is available
    A = make_automaton(("s", "t", "x"), ("a", "b"), "s",
                       [("a", "s", "x", 1), ("b", "s", "t", 1), ("a", "t", "t", 1),
                        ("b", "t", "x", 1), ("a", "x", "x", 1), ("b", "x", "x", 1)],
                       {"s", "t"})
    d = decide_almost_safety(A)
    assert d.witness == LassoWord(("b",), ("a",))


@given(automata(max_states=4))
def test_almost_safety_witness_is_sound(A):
    d = decide_almost_safety(A)
    b = brute_almost_safety(A, 2 ** len(A.states) + 1)
    assert d.answer == (b is not None)
    if d.answer:
        assert eval_lasso(A, "safety", d.witness) == 1
        assert len(d.witness.prefix) + len(d.witness.period) <= 2 ** len(A.states)


@given(automata(max_states=4))
def test_positive_reachability_is_sound(A):
    d = decide_positive_reachability(A)
    rng = random.Random(0)
    if d.answer:
        assert eval_lasso(A, "reach", d.witness) > 0
    else:
        for _ in range(20):
            assert eval_lasso(A, "reach", random_lasso(rng, A.alphabet)) == 0


def _key(init, trans):
    return (frozenset(init.items()),
            frozenset((s, q, frozenset(r.items())) for s, rows in trans.items()
                      for q, r in rows.items()))


def _relabellings(A, f):
    F_states = A.states[:f]
    for perm in itertools.permutations(F_states):
        ren = dict(zip(F_states, perm))
        for lperm in itertools.permutations(A.alphabet):
            lren = dict(zip(A.alphabet, lperm))
            init = {ren.get(q, q): p for q, p in A.initial.items()}
            trans = {lren[s]: {ren.get(q, q): {ren.get(q2, q2): p for q2, p in r.items()}
                               for q, r in A.trans[s].items()} for s in A.alphabet}
            yield _key(init, trans)


@pytest.mark.parametrize("n,sigma,f", [(3, 2, 2), (3, 1, 3), (2, 2, 2), (4, 1, 3)])
def test_canonical_enumeration_covers_every_orbit(n, sigma, f):
    canon = {}
    for A in quotient_classes(n, sigma, f):
        canon[_key(A.initial, A.trans)] = decide_almost_safety(A).answer
    full = list(quotient_classes(n, sigma, f, canonical=False))
    assert len(canon) < len(full)
    for A in full:
        hits = [k for k in _relabellings(A, f) if k in canon]
        assert hits, "orbit without a representative"
        assert all(canon[k] == decide_almost_safety(A).answer for k in hits)
