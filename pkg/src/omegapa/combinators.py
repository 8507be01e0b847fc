"""Automaton algebra: constants, random choice, complement, product."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import (ProbAutomaton, absorbing_states, as_fraction, classify, make_absorbing,
                   make_automaton)


class PreconditionError(ValueError):
    pass


def constant_automaton(nu, alphabet: Sequence[str]) -> ProbAutomaton:
    """Two absorbing states; every word gets value ``nu`` under every condition."""
    nu = as_fraction(nu)
    if not 0 <= nu <= 1:
        raise PreconditionError(f"constant value {nu} outside [0, 1]")
    alphabet = tuple(alphabet)
    trans = [(s, q, q, 1) for s in alphabet for q in ("acc", "rej")]
    return make_automaton(("acc", "rej"), alphabet, {"acc": nu, "rej": 1 - nu}, trans, {"acc"})


def _require_same_alphabet(automata) -> tuple:
    if len({frozenset(a.alphabet) for a in automata}) != 1:
        raise PreconditionError("alphabet mismatch")
    return tuple(automata[0].alphabet)


def convex_combine(parts: Sequence[tuple]) -> ProbAutomaton:
    """Random initial choice among ``parts = [(beta_i, A_i), ...]``.

    Disjoint union, states renamed ``"<i>:<q>"``, initial distribution
    ``sum_i beta_i * init_i``.
    """
    parts = [(as_fraction(b), a) for b, a in parts]
    if not parts:
        raise PreconditionError("nothing to combine")
    if any(b < 0 for b, _ in parts):
        raise PreconditionError("negative weight")
    if sum(b for b, _ in parts) != 1:
        raise PreconditionError(f"weights sum to {sum(b for b, _ in parts)}, not 1")
    alphabet = _require_same_alphabet([a for _, a in parts])
    states, initial, accepting = [], {}, set()
    trans = {s: {} for s in alphabet}
    for i, (beta, A) in enumerate(parts):
        name = {q: f"{i}:{q}" for q in A.states}
        states.extend(name[q] for q in A.states)
        for q, p in A.initial.items():
            if beta * p:
                initial[name[q]] = beta * p
        accepting.update(name[q] for q in A.accepting)
        for s in alphabet:
            for q, row in A.trans[s].items():
                trans[s][name[q]] = {name[q2]: p for q2, p in row.items()}
    return ProbAutomaton(tuple(states), alphabet, initial, trans, frozenset(accepting))


def make_reject_absorbing(A: ProbAutomaton) -> ProbAutomaton:
    """Every state outside F becomes absorbing; safety values are unchanged."""
    outside = [q for q in A.states if q not in A.accepting]
    already = absorbing_states(A)
    if all(q in already for q in outside):
        return A
    return make_absorbing(A, outside)


def complement_absorbing_safety(A: ProbAutomaton) -> ProbAutomaton:
    """Safety automaton whose value on every word is ``1 - A``'s.

    Requires ``A`` to be absorbing once its rejecting states are made
    absorbing.  Non-absorbing states become accepting and the accepting
    status of absorbing states is flipped.
    """
    B = make_reject_absorbing(A)
    if not classify(B).is_absorbing:
        raise PreconditionError("complement needs an absorbing safety automaton")
    C = absorbing_states(B)
    new_f = {q for q in B.states if q not in C} | {q for q in C if q not in B.accepting}
    return B.replace(accepting=frozenset(new_f))


def safety_to_reachability(A: ProbAutomaton) -> ProbAutomaton:
    """Acceptance-absorbing reachability automaton with the same values.

    Safety(F) on an absorbing automaton with absorbing rejecting states
    equals Reach(F intersect C).
    """
    B = make_reject_absorbing(A)
    if not classify(B).is_absorbing:
        raise PreconditionError("conversion needs an absorbing safety automaton")
    return B.replace(accepting=B.accepting & absorbing_states(B))


def _pair(p: str, q: str) -> str:
    return f"({p},{q})"


def product(A: ProbAutomaton, B: ProbAutomaton) -> ProbAutomaton:
    """Synchronous product; for safety the value is the product of values."""
    alphabet = _require_same_alphabet([A, B])
    states = [_pair(p, q) for p in A.states for q in B.states]
    if len(set(states)) != len(states):
        raise PreconditionError("state names collide in product")
    initial = {_pair(p, q): a * b for p, a in A.initial.items() for q, b in B.initial.items()}
    trans = {}
    for s in alphabet:
        rows = {}
        for p, row_a in A.trans[s].items():
            for q, row_b in B.trans[s].items():
                rows[_pair(p, q)] = {_pair(p2, q2): x * y
                                     for p2, x in row_a.items() for q2, y in row_b.items()}
        trans[s] = rows
    accepting = {_pair(p, q) for p in A.accepting for q in B.accepting}
    return ProbAutomaton(tuple(states), alphabet, initial, trans, frozenset(accepting))
