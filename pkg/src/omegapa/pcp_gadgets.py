"""PCP instances, their base-k encodings, and the threshold gadgets built from them.

A word ``w`` is encoded by ``theta_i(w) = psi(phi_i(w))`` where ``psi`` reads
a digit string in base ``k`` with the *last* digit most significant.  The
four-state automaton ``A_i`` keeps exactly ``2^-|w| theta_i(w)`` of its mass
in ``q1`` after reading ``w``; ``$`` then locks that mass into an accepting
sink.  Mixtures of ``A_1``, ``A_2`` and their complements give automata whose
value on ``w$...`` hits a threshold iff ``w`` solves the instance.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .combinators import (complement_absorbing_safety, constant_automaton, convex_combine,
                          product)
from .core import ProbAutomaton, as_fraction, make_automaton

END = "$"
_DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"


class LeadingZeroWarning(UserWarning):
    """psi ignores leading zeros, so theta equality no longer implies a PCP match."""


def _digits(text, k: int) -> tuple:
    if isinstance(text, str):
        if text in ("", "-"):
            return ()
        out = tuple(int(c, 36) for c in text)
    else:
        out = tuple(map(int, text))
    if out and (min(out) < 0 or max(out) >= k):
        bad = next(d for d in out if not 0 <= d < k)
        raise ValueError(f"digit {bad} out of range for base {k}")
    return out


@dataclass(frozen=True)
class PcpInstance:
    """Two morphisms from ``alphabet`` into digit strings over base ``base``.

    Images may be given as strings (``"101"``, ``"-"`` for empty) or digit
    tuples; they are stored as tuples of ints.
    """

    alphabet: tuple
    base: int
    phi1: Mapping
    phi2: Mapping

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        alphabet = tuple(self.alphabet)
        if END in alphabet:
            raise ValueError(f"{END!r} is reserved")
        phi1 = {s: _digits(self.phi1[s], self.base) for s in alphabet}
        phi2 = {s: _digits(self.phi2[s], self.base) for s in alphabet}
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "phi1", phi1)
        object.__setattr__(self, "phi2", phi2)

    __hash__ = None

    def phi(self, i: int) -> dict:
        if i not in (1, 2):
            raise ValueError("morphism index must be 1 or 2")
        return self.phi1 if i == 1 else self.phi2

    def image(self, i: int, word: Sequence) -> tuple:
        phi = self.phi(i)
        try:
            return tuple(itertools.chain.from_iterable(map(phi.__getitem__, word)))
        except KeyError as e:
            raise KeyError(f"symbol {e.args[0]!r} not in PCP alphabet") from None

    @property
    def max_image_length(self) -> int:
        return max(len(img) for phi in (self.phi1, self.phi2) for img in phi.values())

    def has_leading_zero(self) -> bool:
        return any(img and img[0] == 0 for phi in (self.phi1, self.phi2) for img in phi.values())

    def all_images_nonempty(self) -> bool:
        return all(img for phi in (self.phi1, self.phi2) for img in phi.values())


def psi(digits, k: int) -> Fraction:
    """``d_n/k + d_{n-1}/k^2 + ... + d_1/k^n`` for ``digits = d_1 ... d_n``."""
    digits = _digits(digits, k)
    if not digits:
        return Fraction(0)
    # the first digit is least significant: numerator over k^n
    if k <= 36:
        num = int("".join(map(_DIGIT_CHARS.__getitem__, reversed(digits))), k)
    else:
        num = 0
        for d in reversed(digits):
            num = num * k + d
    return Fraction(num, k ** len(digits))


def theta(P: PcpInstance, i: int, word: Sequence) -> Fraction:
    return psi(P.image(i, word), P.base)


def shrink(P: PcpInstance, i: int, sigma: str) -> Fraction:
    """``k^-|phi_i(sigma)|``, the factor by which appending sigma scales theta."""
    return Fraction(1, P.base ** len(P.phi(i)[sigma]))


def _warn_leading_zero(P: PcpInstance) -> None:
    if P.has_leading_zero():
        warnings.warn("a morphism image starts with digit 0; theta equality does not imply "
                      "phi equality for this instance", LeadingZeroWarning, stacklevel=3)


def build_Ai(P: PcpInstance, i: int) -> ProbAutomaton:
    _warn_leading_zero(P)
    half = Fraction(1, 2)
    alphabet = P.alphabet + (END,)
    trans = []
    for s in P.alphabet:
        t = theta(P, i, s)
        ks = shrink(P, i, s)
        assert t + ks <= 1, "psi of an m-digit string is at most 1 - k^-m"
        trans += [
            (s, "q0", "q0", half * (1 - t)), (s, "q0", "q1", half * t), (s, "q0", "q2", half),
            (s, "q1", "q0", half * (1 - t - ks)), (s, "q1", "q1", half * (t + ks)),
            (s, "q1", "q2", half),
        ]
    trans += [(END, "q0", "q2", 1), (END, "q1", "q3", 1)]
    trans += [(s, q, q, 1) for s in alphabet for q in ("q2", "q3")]
    return make_automaton(("q0", "q1", "q2", "q3"), alphabet, "q0", trans, {"q0", "q1", "q3"})


def _two_state(sigma: Sequence[str], accepting: set) -> ProbAutomaton:
    sigma = tuple(sigma)
    if END in sigma:
        raise ValueError(f"{END!r} already in the alphabet")
    alphabet = sigma + (END,)
    trans = [(s, "q0", "q0", 1) for s in sigma] + [(END, "q0", "q1", 1)]
    trans += [(s, "q1", "q1", 1) for s in alphabet]
    return make_automaton(("q0", "q1"), alphabet, "q0", trans, accepting)


def build_A3(sigma: Sequence[str]) -> ProbAutomaton:
    """Safety automaton: 1 on ``$``-free words, 0 once a ``$`` is read."""
    return _two_state(sigma, {"q0"})


def build_A4(sigma: Sequence[str]) -> ProbAutomaton:
    """Same skeleton with ``q1`` accepting: reachability value 1 iff a ``$`` occurs."""
    return _two_state(sigma, {"q1"})


def a5_loop_probability(P: PcpInstance) -> Fraction:
    return Fraction(1, P.base ** (2 * (P.max_image_length + 1)))


def build_A5(P: PcpInstance, damping=1) -> ProbAutomaton:
    """Value ``damping * p^|w'|`` on ``w'$...`` and 0 on ``$``-free words."""
    damping = as_fraction(damping)
    if not P.all_images_nonempty():
        raise ValueError("A5 needs nonempty morphism images")
    if not 0 < damping <= 1:
        raise ValueError("damping must lie in (0, 1]")
    p = a5_loop_probability(P)
    alphabet = P.alphabet + (END,)
    trans = [(s, "q0", "q0", p) for s in P.alphabet] + [(s, "q0", "q2", 1 - p) for s in P.alphabet]
    trans += [(END, "q0", "q1", 1)]
    trans += [(s, q, q, 1) for s in alphabet for q in ("q1", "q2")]
    return make_automaton(("q0", "q1", "q2"), alphabet, {"q0": damping, "q2": 1 - damping},
                          trans, {"q0", "q1"})


@dataclass
class GadgetBundle:
    automaton: ProbAutomaton
    threshold: Fraction
    semantics: str
    components: dict = field(default_factory=dict)


def build_equality_gadget(P: PcpInstance) -> GadgetBundle:
    """``1/3 A1 + 1/3 (1 - A2) + 1/3 A3`` with threshold 1/3.

    Value 2/3 on ``$``-free words, ``1/3 + 1/3 * 2^-|w| (theta1 - theta2)``
    on ``w$...``.
    """
    A1, A2 = build_Ai(P, 1), build_Ai(P, 2)
    A2c = complement_absorbing_safety(A2)
    A3 = build_A3(P.alphabet)
    third = Fraction(1, 3)
    gadget = convex_combine([(third, A1), (third, A2c), (third, A3)])
    return GadgetBundle(gadget, third, "quantitative-equality",
                        {"A1": A1, "A2": A2, "A2_complement": A2c, "A3": A3})


VALUE_GADGET_DAMPING = Fraction(1, 4)


def build_value_gadget(P: PcpInstance) -> GadgetBundle:
    """``1/2 (B1 x B2) + 1/2 A5`` with threshold 1/8.

    ``B1 x B2`` has value ``1/4 - D^2/4`` with ``D = A1 - A2``; A5 is damped
    by 1/4 so a word ``w$...`` gets ``1/8 - D^2/8 + p^|w|/8``.
    """
    if not P.all_images_nonempty():
        raise ValueError("value gadget needs nonempty morphism images")
    A1, A2 = build_Ai(P, 1), build_Ai(P, 2)
    half = Fraction(1, 2)
    B1 = convex_combine([(half, A1), (half, complement_absorbing_safety(A2))])
    B2 = convex_combine([(half, A2), (half, complement_absorbing_safety(A1))])
    B3 = product(B1, B2)
    A5 = build_A5(P, VALUE_GADGET_DAMPING)
    gadget = convex_combine([(half, B3), (half, A5)])
    return GadgetBundle(gadget, Fraction(1, 8), "quantitative-existence",
                        {"A1": A1, "A2": A2, "B1": B1, "B2": B2, "B3": B3, "A5": A5})


def rescale(B: GadgetBundle, lam) -> GadgetBundle:
    """Move the threshold of ``B`` to ``lam`` by mixing with a constant automaton."""
    lam = as_fraction(lam)
    c = B.threshold
    if not 0 < lam < 1:
        raise ValueError("threshold must lie in (0, 1)")
    if not 0 < c < 1:
        raise ValueError("bundle threshold must lie in (0, 1)")
    alphabet = B.automaton.alphabet
    if lam == c:
        return GadgetBundle(B.automaton, lam, B.semantics, dict(B.components))
    if lam < c:
        w = lam / c
        A = convex_combine([(w, B.automaton), (1 - w, constant_automaton(0, alphabet))])
    else:
        w = (1 - lam) / (1 - c)
        A = convex_combine([(w, B.automaton), (1 - w, constant_automaton(1, alphabet))])
    comps = dict(B.components)
    comps["base"] = B.automaton
    return GadgetBundle(A, lam, B.semantics, comps)


def rescale_value(value, c, lam) -> Fraction:
    """Image of a value under the affine map used by :func:`rescale`."""
    value, c, lam = as_fraction(value), as_fraction(c), as_fraction(lam)
    if lam <= c:
        return lam / c * value
    return (1 - lam) / (1 - c) * value + (lam - c) / (1 - c)


def solve_pcp_bounded(P: PcpInstance, maxlen: int):
    """Shortest nonempty ``w`` with ``|w| <= maxlen`` and ``phi1(w) = phi2(w)``.

    Breadth-first over words, pruning those where neither image is a prefix
    of the other.  Returns a tuple of symbols or ``None``.
    """
    if maxlen < 1:
        raise ValueError("maxlen must be at least 1")
    queue = deque([((), (), ())])
    while queue:
        word, top, bottom = queue.popleft()
        if len(word) == maxlen:
            continue
        for s in P.alphabet:
            t = top + P.phi1[s]
            b = bottom + P.phi2[s]
            n = min(len(t), len(b))
            if t[:n] != b[:n]:
                continue
            if t == b:
                return word + (s,)
            queue.append((word + (s,), t, b))
    return None
