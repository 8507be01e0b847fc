from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_classic, make_p1, make_p2prime
from omegapa.combinators import constant_automaton
from omegapa.core import Condition, LassoWord, validate_automaton
from omegapa.evaluator import eval_lasso
from omegapa.fileformat import (FormatError, parse_automaton, parse_pcp, serialize_automaton,
                                serialize_pcp)
from omegapa.limit_gadgets import build_limit_pair, embed_limit_reduction
from omegapa.pcp_gadgets import build_A3, build_equality_gadget, build_value_gadget
from strategies import automata, lassos

F = Fraction


def repo_automata():
    p1 = make_p1()
    return [
        constant_automaton(F(1, 2), ("a", "$")),
        build_A3(("a",)),
        build_equality_gadget(p1).automaton,
        build_value_gadget(p1).automaton,
        build_limit_pair(F(3, 4)).combined,
        embed_limit_reduction(constant_automaton(F(1, 4), ("c",))),
    ]


def same(A, B):
    return (A.states == B.states and A.alphabet == B.alphabet and A.initial == B.initial
            and A.trans == B.trans and A.accepting == B.accepting)


def test_a3_file():
    text = serialize_automaton(build_A3(("a",)))
    lines = text.splitlines()
    assert lines[:6] == ["pa v1", "alphabet a $", "states q0 q1", "initial q0 1/1",
                         "accepting q0", "condition safety"]
    assert sum(ln.startswith("trans ") for ln in lines) == 4


@pytest.mark.parametrize("i", range(6))
def test_round_trip_is_a_fixed_point(i):
    A = repo_automata()[i]
    text = serialize_automaton(A, Condition.REACH)
    B, cond = parse_automaton(text)
    assert cond is Condition.REACH
    assert same(A, B)
    assert serialize_automaton(B, cond) == text


@given(automata(), st.sampled_from(list(Condition)), lassos())
def test_round_trip_random(A, cond, w):
    B, c = parse_automaton(serialize_automaton(A, cond))
    assert c is cond and same(A, B)
    assert eval_lasso(A, cond, w) == eval_lasso(B, cond, w)


def test_rationals_written_as_fractions():
    text = serialize_automaton(constant_automaton(F(1, 2), ("a",)))
    assert "initial acc 1/2 rej 1/2" in text
    assert "trans a acc acc 1/1" in text


def test_row_sum_is_a_validation_problem_not_a_parse_error():
    text = "pa v1\nalphabet a\nstates p q\ninitial p 1/1\naccepting p\ncondition safety\n" \
           "trans a p p 1/2\ntrans a p q 1/3\ntrans a q q 1/1\n"
    A, _ = parse_automaton(text)
    assert validate_automaton(A).problems == ["row sum 5/6 != 1 at (a, p)"]


@pytest.mark.parametrize("text,line", [
    ("pa v2\n", 1),
    ("pa v1\nalphabet a\nstates p\ninitial p 1/1\naccepting p\ncondition safety\n"
     "trans a p x 1/1\n", 7),
    ("pa v1\nalphabet a\nstates p\ninitial p 0.5\n", 4),
    ("pa v1\nalphabet a\nstates p\ninitial p 1/1\naccepting p\ncondition parity\n", 6),
    ("pa v1\nalphabet a\nstates p\ninitial p 1/1\naccepting p\ncondition safety\n"
     "trans b p p 1/1\n", 7),
    ("pa v1\nalphabet a\nstates p\nfrobnicate\n", 4),
    ("pa v1\nalphabet a\nstates p\ninitial p 1/1\naccepting p\ncondition safety\n"
     "trans a p p 1/1\ntrans a p p 1/1\n", 8),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as e:
        parse_automaton(text)
    assert e.value.line == line
    assert str(e.value).startswith(f"line {line}:")


def test_missing_header_line():
    with pytest.raises(FormatError):
        parse_automaton("pa v1\nalphabet a\nstates p\n")


@pytest.mark.parametrize("factory", [make_p1, make_p2prime, make_classic])
def test_pcp_round_trip(factory):
    P = factory()
    Q = parse_pcp(serialize_pcp(P))
    assert (Q.alphabet, Q.base, Q.phi1, Q.phi2) == (P.alphabet, P.base, P.phi1, P.phi2)


def test_pcp_file_errors():
    assert parse_pcp("pcp v1\nbase 2\nmap a - 1\n").phi1["a"] == ()
    for bad in ("pcp v2\n", "pcp v1\nbase x\n", "pcp v1\nbase 2\nmap a 2 1\n",
                "pcp v1\nbase 2\nmap a 1\n", "pcp v1\nbase 2\n",
                "pcp v1\nbase 2\nmap a 1 1\nmap a 1 1\n"):
        with pytest.raises(FormatError):
            parse_pcp(bad)
