"""The parameterised reachability pair whose limit value separates x > 1/2,
its witness words, and the embedding of an arbitrary acceptance-absorbing
automaton in place of the biased coin.

Left automaton, from ``q1``: a block ``a^n b`` reaches the accepting sink
``q3`` with probability ``x^n`` and otherwise returns to ``q1``.  Right
automaton, from ``q5``: the same block hits the rejecting sink ``q7`` with
probability ``(1-x)^n``.  A final ``$`` accepts the right side.  Both can be
driven close to 1 simultaneously iff ``x > 1/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinators import convex_combine
from .core import LassoWord, ProbAutomaton, absorbing_states, as_fraction, make_automaton

HALF = Fraction(1, 2)
LIMIT_ALPHABET = ("a", "b", "$")
SEP = "#"


class WitnessTooLong(RuntimeError):
    pass


@dataclass
class LimitPair:
    A1: ProbAutomaton
    A2: ProbAutomaton
    combined: ProbAutomaton
    x: Fraction


def _check_x(x) -> Fraction:
    x = as_fraction(x)
    if not 0 < x < 1:
        raise ValueError(f"x = {x} must lie strictly between 0 and 1")
    return x


def build_limit_pair(x) -> LimitPair:
    x = _check_x(x)
    sinks = [(s, q, q, 1) for s in LIMIT_ALPHABET for q in ("q3", "q4")]
    A1 = make_automaton(
        ("q1", "q2", "q3", "q4"), LIMIT_ALPHABET, "q1",
        [("a", "q1", "q1", x), ("a", "q1", "q2", 1 - x), ("a", "q2", "q2", 1),
         ("b", "q1", "q3", 1), ("b", "q2", "q1", 1),
         ("$", "q1", "q4", 1), ("$", "q2", "q4", 1)] + sinks,
        {"q3"})
    sinks = [(s, q, q, 1) for s in LIMIT_ALPHABET for q in ("q7", "q8")]
    A2 = make_automaton(
        ("q5", "q6", "q7", "q8"), LIMIT_ALPHABET, "q5",
        [("a", "q5", "q5", 1 - x), ("a", "q5", "q6", x), ("a", "q6", "q6", 1),
         ("b", "q5", "q7", 1), ("b", "q6", "q5", 1),
         ("$", "q5", "q8", 1), ("$", "q6", "q8", 1)] + sinks,
        {"q8"})
    return LimitPair(A1, A2, convex_combine([(HALF, A1), (HALF, A2)]), x)


@dataclass
class WitnessSequence:
    """Block lengths ``n_1..n_i`` with an exact certificate.

    ``deficit`` is ``prod (1 - x^n_k)``, the left side's failure
    probability; ``leak`` is ``sum (1-x)^n_k``, an upper bound on the right
    side's failure probability.  ``J`` is the offset of the harmonic
    schedule, or the common block length of the constant schedule.
    """

    x: Fraction
    eps: Fraction
    J: int
    ns: list
    schedule: str
    deficit: Fraction
    leak: Fraction

    def verify(self) -> bool:
        deficit, leak = _certificate(self.x, self.ns)
        return (deficit == self.deficit and leak == self.leak
                and deficit <= self.eps and leak <= 2 * self.eps)


def _certificate(x: Fraction, ns: Sequence[int]):
    # integer bookkeeping: Fraction products would gcd at every factor
    p, q = x.numerator, x.denominator
    d_num, d_den = 1, 1
    l_num, l_den = 0, 1
    for n in ns:
        qn = q ** n
        d_num *= qn - p ** n
        d_den *= qn
        r = (q - p) ** n
        l_num = l_num * qn + r * l_den
        l_den *= qn
    return Fraction(d_num, d_den), Fraction(l_num, l_den)


def harmonic_offsets(x: Fraction):
    """Yield ``ceil(log_x(1/k))`` for k = 1, 2, ... using exact comparisons."""
    m = 0
    p, q = x.numerator, x.denominator
    pm, qm = 1, 1  # x^m = pm / qm
    k = 1
    while True:
        while pm * k > qm:  # x^m > 1/k
            m += 1
            pm *= p
            qm *= q
        yield m
        k += 1


def _harmonic(x: Fraction, eps: Fraction, max_blocks: int) -> WitnessSequence:
    p, q = x.numerator, x.denominator
    J = 1
    while True:
        ns = []
        d_num, d_den = 1, 1
        l_num, l_den = 0, 1
        ok = True
        for off in harmonic_offsets(x):
            n = off + J
            ns.append(n)
            qn = q ** n
            d_num *= qn - p ** n
            d_den *= qn
            r = (q - p) ** n
            l_num = l_num * qn + r * l_den
            l_den *= qn
            if l_num * eps.denominator > 2 * eps.numerator * l_den:
                ok = False
                break
            if d_num * eps.denominator <= eps.numerator * d_den:
                break
            if len(ns) >= max_blocks:
                raise WitnessTooLong(f"harmonic schedule needs more than {max_blocks} blocks")
        if ok:
            return WitnessSequence(x, eps, J, ns, "harmonic",
                                   Fraction(d_num, d_den), Fraction(l_num, l_den))
        J += 1


CONSTANT_BLOCK_LIMIT = 100_000


def _estimate_repetitions(x: Fraction, n: int, eps: Fraction) -> float:
    """Float estimate of the fewest blocks ``a^n b`` pushing the deficit under eps."""
    hit = float(x ** n)
    if hit >= 1 - float(eps):
        return 1.0
    if hit == 0.0:
        return math.inf
    return math.log(float(eps)) / math.log1p(-hit)


def _repetitions(fail: Fraction, eps: Fraction, est: float) -> int:
    """Smallest i >= 1 with ``fail^i <= eps``, starting the search from ``est``."""
    i = max(1, math.ceil(est) - 1)
    while fail ** i > eps:
        i += 1
    while i > 1 and fail ** (i - 1) <= eps:
        i -= 1
    return i


def _constant(x: Fraction, eps: Fraction) -> WitnessSequence:
    n = 1
    while True:
        est = _estimate_repetitions(x, n, eps)
        if est > CONSTANT_BLOCK_LIMIT:
            # longer blocks need even more repetitions
            raise WitnessTooLong(f"constant schedule needs more than {CONSTANT_BLOCK_LIMIT} "
                                 "blocks")
        # skip lengths whose leak is clearly too large before doing exact work
        if (est - 2) * float((1 - x) ** n) > 2 * float(eps):
            n += 1
            continue
        fail = 1 - x ** n
        i = _repetitions(fail, eps, est)
        leak = i * (1 - x) ** n
        if leak <= 2 * eps:
            return WitnessSequence(x, eps, n, [n] * i, "constant", fail ** i, leak)
        n += 1


def witness_sequence(x, eps, schedule: str = "auto", max_blocks: int = 5000) -> WitnessSequence:
    """Block lengths certifying ``combined(word) >= 1 - 3/2 eps``.

    ``schedule="harmonic"`` uses ``n_k = ceil(log_x(1/k)) + J`` with the
    smallest J whose finite certificate closes; its block count grows like
    ``eps^(-x^-J)`` and explodes for x near 1/2.  ``"constant"`` repeats one
    block length.  ``"auto"`` tries harmonic and falls back to constant
    beyond ``max_blocks``.  The constant schedule raises
    :class:`WitnessTooLong` past ``CONSTANT_BLOCK_LIMIT`` blocks, which
    happens for x close to 1/2 and small eps.
    """
    x = _check_x(x)
    eps = as_fraction(eps)
    if not x > HALF:
        raise ValueError("witness words exist only for x > 1/2")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if schedule == "harmonic":
        seq = _harmonic(x, eps, max_blocks)
    elif schedule == "constant":
        seq = _constant(x, eps)
    elif schedule == "auto":
        try:
            seq = _harmonic(x, eps, max_blocks)
        except WitnessTooLong:
            seq = _constant(x, eps)
    else:
        raise ValueError(f"unknown schedule {schedule!r}")
    assert seq.deficit <= eps and seq.leak <= 2 * eps
    return seq


def structured_prefix(ns: Sequence[int], block: Sequence[str] = ("a",)) -> tuple:
    """``block^n_1 b block^n_2 b ... block^n_i b $``."""
    out = []
    block = tuple(block)
    for n in ns:
        out.extend(block * n)
        out.append("b")
    out.append("$")
    return tuple(out)


def witness_word(x, eps, schedule: str = "auto", max_blocks: int = 5000):
    seq = witness_sequence(x, eps, schedule, max_blocks)
    return LassoWord(structured_prefix(seq.ns), ("$",))


def embed_limit_reduction(B: ProbAutomaton) -> ProbAutomaton:
    """Replace the biased ``a``-coin of the limit pair by a run of ``B``.

    Each copy enters ``B`` on ``a``; on ``#`` the accepting (absorbing)
    states of ``B`` take the branch the coin takes with probability x
    (stay in ``q1`` / move to ``q6``) and all other states take the other
    branch.  ``q2`` and ``q6`` loop on everything but ``b`` and ``$``; any
    other letter with no role in the construction sends the left copy to the
    rejecting sink ``q4`` and the right copy to the rejecting sink ``q7``.
    """
    reserved = set(LIMIT_ALPHABET) | {SEP}
    clash = reserved & set(B.alphabet)
    if clash:
        raise ValueError(f"B's alphabet uses reserved symbols {sorted(clash)}")
    if not B.accepting <= absorbing_states(B):
        raise ValueError("B must be acceptance-absorbing")
    alphabet = tuple(B.alphabet) + LIMIT_ALPHABET + (SEP,)
    left = {q: f"L.{q}" for q in B.states}
    right = {q: f"R.{q}" for q in B.states}
    fixed = tuple(f"q{i}" for i in range(1, 9))
    states = fixed + tuple(left.values()) + tuple(right.values())
    if len(set(states)) != len(states):
        raise ValueError("state names collide")
    trans = {s: {} for s in alphabet}

    def put(s, q, row):
        trans[s][q] = row

    for s in alphabet:
        for sink in ("q3", "q4", "q7", "q8"):
            put(s, sink, {sink: 1})
        put(s, "q1", {"q4": 1})
        put(s, "q5", {"q7": 1})
        # q2 / q6 wait out whole ``a w #`` blocks
        put(s, "q2", {"q2": 1})
        put(s, "q6", {"q6": 1})
    put("a", "q1", {left[q]: p for q, p in B.initial.items()})
    put("b", "q1", {"q3": 1})
    put("$", "q1", {"q4": 1})
    put("b", "q2", {"q1": 1})
    put("$", "q2", {"q4": 1})
    put("a", "q5", {right[q]: p for q, p in B.initial.items()})
    put("b", "q5", {"q7": 1})
    put("$", "q5", {"q8": 1})
    put("b", "q6", {"q5": 1})
    put("$", "q6", {"q8": 1})
    for copy, (acc_to, rej_to, sink) in ((left, ("q1", "q2", "q4")), (right, ("q6", "q5", "q7"))):
        for q in B.states:
            for s in alphabet:
                if s in B.trans:
                    put(s, copy[q], {copy[q2]: p for q2, p in B.row(s, q).items()})
                elif s == SEP:
                    put(s, copy[q], {acc_to if q in B.accepting else rej_to: 1})
                else:
                    put(s, copy[q], {sink: 1})
    return ProbAutomaton(states, alphabet, {"q1": HALF, "q5": HALF}, trans,
                         frozenset({"q3", "q8"}))


def embedded_word(ns: Sequence[int], inner: Sequence[str] = ()):
    """The lasso ``((a w #)^n_1 b ... (a w #)^n_i b $, $)`` for ``w = inner``."""
    block = ("a",) + tuple(inner) + (SEP,)
    return LassoWord(structured_prefix(ns, block), ("$",))
