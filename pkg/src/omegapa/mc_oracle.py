"""Independent cross-checks for the exact evaluator.

``simulate`` samples truncated runs with numpy; ``truncation_bounds``
brackets safety and reachability values with exact finite-horizon masses.
Neither shares code with the chain analysis in :mod:`omegapa.evaluator`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Condition, LassoWord, ProbAutomaton, absorbing_states, step

BLOCK = 4096


@dataclass(frozen=True)
class Estimate:
    mean: float
    trials: int
    standard_error: float
    seed: int

    def __str__(self):
        return f"{self.mean:.6g} ± {self.standard_error:.3g} ({self.trials} trials, seed {self.seed})"


def _cumulative(A: ProbAutomaton, index: dict):
    n = len(A.states)
    cum = {}
    for sigma in A.alphabet:
        m = np.zeros((n, n))
        for q, row in A.trans[sigma].items():
            for q2, p in row.items():
                m[index[q], index[q2]] = float(p)
        c = np.cumsum(m, axis=1)
        c[:, -1] = np.inf  # absorb float round-off in the last bucket
        cum[sigma] = c
    return cum


def _sample_rows(cum_rows, u):
    return (cum_rows < u[:, None]).sum(axis=1)


def simulate(A: ProbAutomaton, cond, w: LassoWord, trials: int, horizon: int,
             seed: int) -> Estimate:
    """Monte Carlo estimate of the value of ``w`` from runs of ``horizon`` letters.

    Safety and reachability are scored on the whole truncated run.  Buchi,
    coBuchi and limit-average are scored on the last ``|v| * |Q|`` states,
    a heuristic that is biased at finite horizon but exact once every run
    has been absorbed.  Trials are simulated in blocks of ``BLOCK``; block
    ``b`` draws from ``SeedSequence(seed, spawn_key=(b,))``, so results do not
    depend on how blocks are scheduled.
    """
    cond = Condition(cond)
    if trials < 1:
        raise ValueError("trials must be positive")
    if horizon < len(w.prefix) + len(w.period):
        raise ValueError("horizon must cover the prefix and one period")
    bad = w.symbols() - set(A.alphabet)
    if bad:
        raise KeyError(f"symbols {sorted(bad)} not in alphabet")
    index = {q: i for i, q in enumerate(A.states)}
    cum = _cumulative(A, index)
    init_cum = np.cumsum([float(A.initial.get(q, 0)) for q in A.states])
    init_cum[-1] = np.inf
    in_f = np.array([q in A.accepting for q in A.states])
    window = min(horizon + 1, len(w.period) * len(A.states))
    letters = [w.letter(t) for t in range(horizon)]

    scores = []
    for b in range(math.ceil(trials / BLOCK)):
        size = min(BLOCK, trials - b * BLOCK)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(b,)))
        cur = np.searchsorted(init_cum, rng.random(size), side="right")
        safe = in_f[cur].copy()
        hit = in_f[cur].copy()
        tail_hits = np.zeros(size, dtype=np.int64)
        if horizon + 1 <= window:
            tail_hits += in_f[cur]
        for t, sigma in enumerate(letters, start=1):
            cur = _sample_rows(cum[sigma][cur], rng.random(size))
            f = in_f[cur]
            safe &= f
            hit |= f
            if t >= horizon + 1 - window:
                tail_hits += f
        if cond is Condition.SAFETY:
            s = safe.astype(float)
        elif cond is Condition.REACH:
            s = hit.astype(float)
        elif cond is Condition.BUCHI:
            s = (tail_hits > 0).astype(float)
        elif cond is Condition.COBUCHI:
            s = (tail_hits == window).astype(float)
        else:
            s = tail_hits / window
        scores.append(s)
    scores = np.concatenate(scores)
    mean = float(scores.mean())
    se = float(scores.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return Estimate(mean, trials, se, seed)


def truncation_bounds(A: ProbAutomaton, cond, w: LassoWord, n: int):
    """Exact ``(lower, upper)`` bracket on the value of ``w`` after ``n`` letters.

    Safety: ``upper`` is the mass that has stayed in F for ``n`` steps,
    ``lower`` the part of it sitting in absorbing accepting states.
    Reachability: ``lower`` is the mass that has hit F, ``upper`` adds the
    mass not yet trapped in an absorbing rejecting state.
    """
    cond = Condition(cond)
    if n < 0:
        raise ValueError("horizon must be nonnegative")
    if cond not in (Condition.SAFETY, Condition.REACH):
        raise ValueError(f"truncation bounds support safety and reach, not {cond.value}")
    F = A.accepting
    C = absorbing_states(A)
    d = dict(A.initial)
    if cond is Condition.SAFETY:
        d = {q: p for q, p in d.items() if q in F}
        for t in range(n):
            d = {q: p for q, p in step(A, d, w.letter(t)).items() if q in F}
        upper = sum(d.values(), Fraction(0))
        lower = sum((p for q, p in d.items() if q in C), Fraction(0))
        return lower, upper
    hit = sum((p for q, p in d.items() if q in F), Fraction(0))
    d = {q: p for q, p in d.items() if q not in F}
    for t in range(n):
        d = step(A, d, w.letter(t))
        hit += sum((p for q, p in d.items() if q in F), Fraction(0))
        d = {q: p for q, p in d.items() if q not in F}
    trapped = sum((p for q, p in d.items() if q in C), Fraction(0))
    return hit, 1 - trapped
