"""Exact-rational probabilistic automata on infinite words.

States and symbols are opaque string tokens.  Every probability is a
:class:`fractions.Fraction`; nothing in this module ever rounds.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

State = str
Symbol = str
Distribution = dict  # State -> Fraction, zero entries omitted


class UnknownSymbolError(KeyError):
    pass


class Condition(enum.Enum):
    SAFETY = "safety"
    REACH = "reach"
    BUCHI = "buchi"
    COBUCHI = "cobuchi"
    LIMITAVG = "limitavg"

    @classmethod
    def parse(cls, text: str) -> "Condition":
        aliases = {"reachability": "reach", "co-buchi": "cobuchi", "limit-avg": "limitavg"}
        text = text.strip().lower()
        return cls(aliases.get(text, text))


def as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError(f"refusing float probability {value!r}; use Fraction or 'p/q'")
    return Fraction(value)


def _check_token(tok: str, what: str) -> None:
    if not isinstance(tok, str) or not tok or any(c.isspace() for c in tok):
        raise ValueError(f"invalid {what} token {tok!r}")


@dataclass(frozen=True)
class ProbAutomaton:
    """A probabilistic automaton ``(Q, initial, Sigma, M, F)``.

    ``trans[sigma][q]`` maps successor states to probabilities; zero entries
    are dropped.  Rows may be missing or defective: the constructor only
    checks that the referenced tokens exist, stochasticity is the job of
    :func:`validate_automaton`.
    """

    states: tuple
    alphabet: tuple
    initial: Mapping
    trans: Mapping
    accepting: frozenset

    def __post_init__(self):
        states = tuple(self.states)
        alphabet = tuple(self.alphabet)
        for q in states:
            _check_token(q, "state")
        for s in alphabet:
            _check_token(s, "symbol")
        if len(set(states)) != len(states):
            raise ValueError("duplicate state names")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("duplicate symbols")
        known = set(states)

        initial = {}
        for q, p in dict(self.initial).items():
            if q not in known:
                raise ValueError(f"initial mass on unknown state {q!r}")
            p = as_fraction(p)
            if p != 0:
                initial[q] = p

        trans = {}
        for sigma, rows in dict(self.trans).items():
            if sigma not in alphabet:
                raise ValueError(f"transitions for unknown symbol {sigma!r}")
            clean_rows = {}
            for q, row in dict(rows).items():
                if q not in known:
                    raise ValueError(f"transition from unknown state {q!r}")
                clean = {}
                for q2, p in dict(row).items():
                    if q2 not in known:
                        raise ValueError(f"transition to unknown state {q2!r}")
                    p = as_fraction(p)
                    if p != 0:
                        clean[q2] = p
                clean_rows[q] = MappingProxyType(clean)
            trans[sigma] = MappingProxyType(clean_rows)
        for sigma in alphabet:
            trans.setdefault(sigma, MappingProxyType({}))

        accepting = frozenset(self.accepting)
        if not accepting <= known:
            raise ValueError(f"accepting states not in Q: {sorted(accepting - known)}")

        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "initial", MappingProxyType(initial))
        object.__setattr__(self, "trans", MappingProxyType(trans))
        object.__setattr__(self, "accepting", accepting)

    __hash__ = None

    def row(self, sigma: Symbol, q: State) -> Mapping:
        if sigma not in self.trans:
            raise UnknownSymbolError(sigma)
        return self.trans[sigma].get(q, MappingProxyType({}))

    def prob(self, sigma: Symbol, q: State, q2: State) -> Fraction:
        return self.row(sigma, q).get(q2, Fraction(0))

    def replace(self, **changes) -> "ProbAutomaton":
        fields = dict(states=self.states, alphabet=self.alphabet, initial=self.initial,
                      trans=self.trans, accepting=self.accepting)
        fields.update(changes)
        return ProbAutomaton(**fields)


def make_automaton(states: Iterable[State], alphabet: Iterable[Symbol], initial,
                   transitions: Iterable[tuple], accepting: Iterable[State]) -> ProbAutomaton:
    """Build from a flat list of ``(sigma, from, to, p)`` tuples.

    ``initial`` is either a state (point mass) or a mapping state -> p.
    Repeated entries for the same triple are summed.
    """
    if isinstance(initial, str):
        initial = {initial: Fraction(1)}
    trans: dict = {}
    for sigma, q, q2, p in transitions:
        row = trans.setdefault(sigma, {}).setdefault(q, {})
        row[q2] = row.get(q2, Fraction(0)) + as_fraction(p)
    return ProbAutomaton(tuple(states), tuple(alphabet), initial, trans, frozenset(accepting))


@dataclass(frozen=True)
class LassoWord:
    """The ultimately periodic word ``prefix . period^omega``.

    A plain ``str`` argument is split into single-character symbols, so
    ``LassoWord("a$", "$")`` is shorthand; use tuples for longer tokens.
    """

    prefix: tuple = ()
    period: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("lasso period must be nonempty")

    @classmethod
    def parse(cls, text: str) -> "LassoWord":
        """Parse ``"u1 u2 ; v1 v2"`` (whitespace-separated tokens)."""
        if text.count(";") != 1:
            raise ValueError(f"expected exactly one ';' in word {text!r}")
        u, v = text.split(";")
        return cls(tuple(u.split()), tuple(v.split()))

    def format(self) -> str:
        u = " ".join(self.prefix)
        v = " ".join(self.period)
        return f"{u} ; {v}".strip() if u else f"; {v}"

    def symbols(self) -> set:
        return set(self.prefix) | set(self.period)

    def letter(self, i: int) -> Symbol:
        """The i-th letter (0-based) of the infinite word."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def __str__(self):
        return self.format()


@dataclass
class ValidationReport:
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "valid" if self.ok else "\n".join(self.problems)


def validate_automaton(A: ProbAutomaton) -> ValidationReport:
    report = ValidationReport()
    total = sum(A.initial.values(), Fraction(0))
    for q, p in A.initial.items():
        if p < 0:
            report.problems.append(f"negative initial mass {p} at {q}")
    if total != 1:
        report.problems.append(f"initial mass {total} != 1")
    for sigma in A.alphabet:
        for q in A.states:
            row = A.row(sigma, q)
            for q2, p in row.items():
                if p < 0:
                    report.problems.append(f"negative entry {p} at ({sigma}, {q}, {q2})")
            s = sum(row.values(), Fraction(0))
            if s != 1:
                report.problems.append(f"row sum {s} != 1 at ({sigma}, {q})")
    return report


def _check_symbol(A: ProbAutomaton, sigma: Symbol) -> None:
    if sigma not in A.trans:
        raise UnknownSymbolError(f"symbol {sigma!r} not in alphabet {list(A.alphabet)}")


def step(A: ProbAutomaton, d: Mapping, sigma: Symbol) -> Distribution:
    """One letter of the run: ``d . M_sigma``."""
    _check_symbol(A, sigma)
    rows = A.trans[sigma]
    out: dict = {}
    for q, mass in d.items():
        if not mass:
            continue
        for q2, p in rows.get(q, {}).items():
            out[q2] = out.get(q2, 0) + mass * p
    return {q: p for q, p in out.items() if p}


class _IntegerRunner:
    """Run long words with a common denominator instead of per-entry gcds.

    Each letter becomes an integer matrix ``N_sigma = lcm * M_sigma``; the
    distribution is held as integer numerators over one denominator.
    """

    def __init__(self, A: ProbAutomaton):
        self.A = A
        self._mats: dict = {}

    def matrix(self, sigma):
        if sigma not in self._mats:
            _check_symbol(self.A, sigma)
            rows = self.A.trans[sigma]
            den = 1
            for row in rows.values():
                for p in row.values():
                    den = den * p.denominator // math.gcd(den, p.denominator)
            mat = {q: tuple((q2, p.numerator * (den // p.denominator)) for q2, p in row.items())
                   for q, row in rows.items()}
            self._mats[sigma] = (den, mat)
        return self._mats[sigma]

    def run(self, d: Mapping, word: Sequence) -> Distribution:
        den = 1
        for p in d.values():
            den = den * p.denominator // math.gcd(den, p.denominator)
        num = {q: p.numerator * (den // p.denominator) for q, p in d.items() if p}
        for sigma in word:
            d_sigma, mat = self.matrix(sigma)
            out: dict = {}
            for q, n in num.items():
                for q2, m in mat.get(q, ()):
                    out[q2] = out.get(q2, 0) + n * m
            num = {q: n for q, n in out.items() if n}
            den *= d_sigma
        return {q: Fraction(n, den) for q, n in num.items()}


def run_from(A: ProbAutomaton, d: Mapping, word: Sequence) -> Distribution:
    word = tuple(word)
    if len(word) <= 32:
        for sigma in word:
            d = step(A, d, sigma)
        return dict(d)
    return _IntegerRunner(A).run(d, word)


def run_finite(A: ProbAutomaton, word: Sequence) -> Distribution:
    """Distribution after reading all of ``word`` from the initial distribution."""
    return run_from(A, A.initial, word)


def finite_acceptance(A: ProbAutomaton, word: Sequence) -> Fraction:
    d = run_finite(A, word)
    return sum((p for q, p in d.items() if q in A.accepting), Fraction(0))


def support(d: Mapping) -> frozenset:
    return frozenset(q for q, p in d.items() if p > 0)


def total_mass(d: Mapping) -> Fraction:
    return sum(d.values(), Fraction(0))


def absorbing_states(A: ProbAutomaton) -> frozenset:
    out = set()
    for q in A.states:
        if all(A.prob(sigma, q, q) == 1 for sigma in A.alphabet):
            out.add(q)
    return frozenset(out)


@dataclass(frozen=True)
class Classification:
    is_absorbing: bool
    is_acceptance_absorbing: bool


def classify(A: ProbAutomaton) -> Classification:
    C = absorbing_states(A)
    absorbing = True
    for q in A.states:
        if q in C:
            continue
        for sigma in A.alphabet:
            if not any(p > 0 for q2, p in A.row(sigma, q).items() if q2 in C):
                absorbing = False
                break
        if not absorbing:
            break
    return Classification(is_absorbing=absorbing, is_acceptance_absorbing=A.accepting <= C)


def with_accepting(A: ProbAutomaton, accepting: Iterable[State]) -> ProbAutomaton:
    return A.replace(accepting=frozenset(accepting))


def make_absorbing(A: ProbAutomaton, targets: Iterable[State]) -> ProbAutomaton:
    """Replace the rows of ``targets`` by self-loops under every letter."""
    targets = set(targets)
    trans = {}
    for sigma in A.alphabet:
        rows = dict(A.trans[sigma])
        for q in targets:
            rows[q] = {q: Fraction(1)}
        trans[sigma] = rows
    return A.replace(trans=trans)


def restrict_alphabet(A: ProbAutomaton, letters: Iterable[Symbol]) -> ProbAutomaton:
    letters = [s for s in A.alphabet if s in set(letters)]
    return A.replace(alphabet=tuple(letters), trans={s: A.trans[s] for s in letters})
