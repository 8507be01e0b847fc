"""Plain-text interchange formats for automata and PCP instances.

Automaton files::

    pa v1
    alphabet a $
    states q0 q1
    initial q0 1/1
    accepting q0
    condition safety
    trans a q0 q0 1/1
    ...

Probabilities are always written ``p/q``.  PCP files::

    pcp v1
    base 2
    map a 1 11

with ``-`` standing for an empty image.  Lines starting with ``%`` are comments.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Condition, ProbAutomaton
from .pcp_gadgets import PcpInstance


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _rational(tok: str, line: int) -> Fraction:
    try:
        if "." in tok or "e" in tok.lower():
            raise ValueError
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad rational {tok!r}; expected p/q", line) from None


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def serialize_automaton(A: ProbAutomaton, condition=Condition.SAFETY) -> str:
    condition = Condition(condition)
    lines = [
        "pa v1",
        "alphabet " + " ".join(A.alphabet),
        "states " + " ".join(A.states),
        "initial " + " ".join(f"{q} {fmt_rational(A.initial[q])}"
                              for q in A.states if A.initial.get(q)),
        "accepting " + " ".join(q for q in A.states if q in A.accepting),
        f"condition {condition.value}",
    ]
    order = {q: i for i, q in enumerate(A.states)}
    for s in A.alphabet:
        for q in sorted(A.trans[s], key=order.__getitem__):
            row = A.trans[s][q]
            for q2 in sorted(row, key=order.__getitem__):
                lines.append(f"trans {s} {q} {q2} {fmt_rational(row[q2])}")
    return "\n".join(lines) + "\n"


_HEADERS = ("alphabet", "states", "initial", "accepting", "condition")


def parse_automaton(text: str):
    """Return ``(automaton, condition)``; raise :class:`FormatError` on bad syntax.

    Stochasticity is not checked here; see ``validate_automaton``.
    """
    lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, toks) for i, toks in lines if toks and not toks[0].startswith("%")]
    if not lines or lines[0][1] != ["pa", "v1"]:
        raise FormatError("expected header 'pa v1'", lines[0][0] if lines else 1)
    head = {}
    trans = {}
    for i, toks in lines[1:]:
        key, args = toks[0], toks[1:]
        if key in _HEADERS:
            if key in head:
                raise FormatError(f"duplicate {key!r}", i)
            if trans:
                raise FormatError(f"{key!r} after transitions", i)
            head[key] = (i, args)
        elif key == "trans":
            missing = [h for h in ("alphabet", "states") if h not in head]
            if missing:
                raise FormatError(f"'trans' before {missing[0]!r}", i)
            if len(args) != 4:
                raise FormatError("expected 'trans <symbol> <from> <to> <p/q>'", i)
            s, q, q2, p = args
            if s not in head["alphabet"][1]:
                raise FormatError(f"unknown symbol {s!r}", i)
            for st in (q, q2):
                if st not in head["states"][1]:
                    raise FormatError(f"unknown state {st!r}", i)
            row = trans.setdefault(s, {}).setdefault(q, {})
            if q2 in row:
                raise FormatError(f"duplicate transition {s} {q} {q2}", i)
            p = _rational(p, i)
            if p < 0:
                raise FormatError(f"negative probability {p}", i)
            row[q2] = p
        else:
            raise FormatError(f"unknown directive {key!r}", i)
    for h in ("alphabet", "states"):
        if h not in head:
            raise FormatError(f"missing {h!r} line")
    alphabet = tuple(head["alphabet"][1])
    states = tuple(head["states"][1])
    for key, items in (("alphabet", alphabet), ("states", states)):
        if len(set(items)) != len(items):
            raise FormatError(f"repeated token in {key!r}", head[key][0])
    initial = _parse_initial(head, states)
    acc = _parse_accepting(head, states)
    condition = _parse_condition(head)
    try:
        A = ProbAutomaton(states, alphabet, initial, {s: trans.get(s, {}) for s in alphabet},
                          frozenset(acc))
    except ValueError as e:
        raise FormatError(str(e)) from None
    return A, condition


def _require(head, key):
    if key not in head:
        raise FormatError(f"missing {key!r} line")
    return head[key]


def _parse_initial(head, states):
    li, toks = _require(head, "initial")
    if len(toks) % 2:
        raise FormatError("expected 'initial <state> <p/q> ...'", li)
    initial = {}
    for q, p in zip(toks[::2], toks[1::2]):
        if q not in states:
            raise FormatError(f"unknown state {q!r}", li)
        if q in initial:
            raise FormatError(f"state {q!r} listed twice", li)
        initial[q] = _rational(p, li)
        if initial[q] < 0:
            raise FormatError(f"negative probability {initial[q]}", li)
    return initial


def _parse_accepting(head, states):
    la, acc = _require(head, "accepting")
    for q in acc:
        if q not in states:
            raise FormatError(f"unknown state {q!r}", la)
    return acc


def _parse_condition(head):
    lc, cond = _require(head, "condition")
    if len(cond) != 1:
        raise FormatError("expected 'condition <name>'", lc)
    try:
        return Condition.parse(cond[0])
    except ValueError:
        raise FormatError(f"unknown condition {cond[0]!r}", lc) from None


def serialize_pcp(P: PcpInstance) -> str:
    def digits(img):
        return "".join("0123456789abcdefghijklmnopqrstuvwxyz"[d] for d in img) or "-"

    lines = ["pcp v1", f"base {P.base}"]
    lines += [f"map {s} {digits(P.phi1[s])} {digits(P.phi2[s])}" for s in P.alphabet]
    return "\n".join(lines) + "\n"


def parse_pcp(text: str) -> PcpInstance:
    lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, toks) for i, toks in lines if toks and not toks[0].startswith("%")]
    if not lines or lines[0][1] != ["pcp", "v1"]:
        raise FormatError("expected header 'pcp v1'", lines[0][0] if lines else 1)
    if len(lines) < 2 or lines[1][1][0] != "base" or len(lines[1][1]) != 2:
        raise FormatError("expected 'base <k>'", lines[1][0] if len(lines) > 1 else None)
    try:
        base = int(lines[1][1][1])
    except ValueError:
        raise FormatError("base must be an integer", lines[1][0]) from None
    alphabet, phi1, phi2 = [], {}, {}
    for i, toks in lines[2:]:
        if toks[0] != "map" or len(toks) != 4:
            raise FormatError("expected 'map <symbol> <digits1> <digits2>'", i)
        s = toks[1]
        if s in phi1:
            raise FormatError(f"symbol {s!r} mapped twice", i)
        alphabet.append(s)
        phi1[s], phi2[s] = toks[2], toks[3]
    if not alphabet:
        raise FormatError("no 'map' lines")
    try:
        return PcpInstance(tuple(alphabet), base, phi1, phi2)
    except ValueError as e:
        raise FormatError(str(e)) from None
