"""Exact values of lasso words under the five acceptance conditions.

The word ``u . v^omega`` turns the automaton into a finite Markov chain on
``(state, phase)`` nodes, where the phase counts position modulo ``|v|``.
Almost every run ends up in a bottom strongly connected component (BSCC)
and visits all of its nodes infinitely often, so each condition reduces to
absorption probabilities plus, for limit-average, stationary distributions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import linalg
from .core import (Condition, LassoWord, ProbAutomaton, UnknownSymbolError, make_absorbing,
                   run_finite)

Node = tuple  # (state, phase)


@dataclass
class PeriodicChain:
    period: tuple
    nodes: list
    edges: dict  # node -> {node: Fraction}
    entry: dict  # phase-0 node -> Fraction

    def successors(self, node):
        return self.edges[node]


@dataclass
class Bscc:
    nodes: frozenset
    chain: PeriodicChain = field(repr=False)

    def states(self) -> frozenset:
        return frozenset(q for q, _ in self.nodes)


def _check_word(A: ProbAutomaton, w: LassoWord) -> None:
    bad = w.symbols() - set(A.alphabet)
    if bad:
        raise UnknownSymbolError(f"symbols {sorted(bad)} not in alphabet {list(A.alphabet)}")


def build_periodic_chain(A: ProbAutomaton, w: LassoWord) -> PeriodicChain:
    """Reachable part of the chain induced by ``w`` after its prefix."""
    _check_word(A, w)
    v = w.period
    entry_dist = run_finite(A, w.prefix)
    entry = {(q, 0): p for q, p in entry_dist.items()}
    edges: dict = {}
    order = []
    stack = list(entry)
    seen = set(stack)
    while stack:
        node = stack.pop()
        order.append(node)
        q, j = node
        nxt = (j + 1) % len(v)
        out = {(q2, nxt): p for q2, p in A.row(v[j], q).items()}
        edges[node] = out
        for n2 in out:
            if n2 not in seen:
                seen.add(n2)
                stack.append(n2)
    return PeriodicChain(period=v, nodes=order, edges=edges, entry=entry)


def _sccs(nodes, edges):
    """Tarjan's algorithm, iterative."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    result = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(edges[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(edges[nxt])))
                    advanced = True
                    break
                elif nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = set()
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.add(x)
                    if x == node:
                        break
                result.append(frozenset(comp))
    return result


def bsccs(C: PeriodicChain) -> list:
    out = []
    for comp in _sccs(C.nodes, C.edges):
        if all(n2 in comp for n in comp for n2 in C.edges[n]):
            out.append(Bscc(comp, C))
    return out


def _absorption_by_bscc(C: PeriodicChain, components: list) -> list:
    """Probability, from the entry distribution, of ending in each BSCC."""
    owner = {}
    for idx, b in enumerate(components):
        for n in b.nodes:
            owner[n] = idx
    transient = [n for n in C.nodes if n not in owner]
    probs = [Fraction(0)] * len(components)
    for n, p in C.entry.items():
        if n in owner:
            probs[owner[n]] += p
    if not transient or not any(n not in owner for n in C.entry):
        return probs
    pos = {n: i for i, n in enumerate(transient)}
    # (I - P_TT) X = P_TB
    mat = []
    rhs = []
    for n in transient:
        row = {pos[n]: Fraction(1)}
        r = {}
        for n2, p in C.edges[n].items():
            if n2 in pos:
                row[pos[n2]] = row.get(pos[n2], 0) - p
            else:
                r[owner[n2]] = r.get(owner[n2], 0) + p
        mat.append({j: v for j, v in row.items() if v})
        rhs.append(r)
    width = len(components)
    X = linalg.solve(mat, [[r.get(j, Fraction(0)) for j in range(width)] for r in rhs])
    for n, p in C.entry.items():
        if n in pos:
            row = X[pos[n]]
            for j in range(len(components)):
                probs[j] += p * row[j]
    return probs


def absorption_probabilities(C: PeriodicChain, targets: Iterable[Bscc]) -> Fraction:
    """Probability of eventually entering the union of ``targets``."""
    components = bsccs(C)
    wanted = {b.nodes for b in targets}
    known = {b.nodes for b in components}
    if not wanted <= known:
        raise ValueError("targets must be BSCCs of the chain")
    probs = _absorption_by_bscc(C, components)
    return sum((p for b, p in zip(components, probs) if b.nodes in wanted), Fraction(0))


def stationary_distribution(B: Bscc) -> dict:
    """Unique invariant distribution of the (irreducible, closed) BSCC."""
    nodes = sorted(B.nodes, key=repr)
    if len(nodes) == 1:
        return {nodes[0]: Fraction(1)}
    pos = {n: i for i, n in enumerate(nodes)}
    size = len(nodes)
    # unknowns pi_i; equations (P^T - I) pi = 0 with the last one replaced by sum = 1
    mat = [dict() for _ in range(size)]
    for n in nodes:
        i = pos[n]
        for n2, p in B.chain.edges[n].items():
            j = pos[n2]
            mat[j][i] = mat[j].get(i, 0) + p
        mat[i][i] = mat[i].get(i, 0) - 1
    mat[-1] = {i: Fraction(1) for i in range(size)}
    rhs = [[Fraction(0)] for _ in range(size)]
    rhs[-1][0] = Fraction(1)
    mat = [{j: v for j, v in row.items() if v} for row in mat]
    pi = linalg.solve(mat, rhs)
    return {n: pi[pos[n]][0] for n in nodes}


def _component_values(A: ProbAutomaton, w: LassoWord, need_stationary: bool):
    C = build_periodic_chain(A, w)
    comps = bsccs(C)
    probs = _absorption_by_bscc(C, comps)
    out = []
    for b, p in zip(comps, probs):
        avg = None
        if need_stationary and p:
            pi = stationary_distribution(b)
            avg = sum((m for (q, _), m in pi.items() if q in A.accepting), Fraction(0))
        out.append((b.states(), p, avg))
    return out


def eval_lasso(A: ProbAutomaton, cond: Condition, w: LassoWord) -> Fraction:
    """Exact expected value of ``cond`` over the accepting set on ``u v^omega``."""
    cond = Condition(cond)
    _check_word(A, w)
    F = A.accepting
    if cond is Condition.REACH:
        # once in F, stay in F: reachability becomes Buchi
        return eval_lasso(make_absorbing(A, F), Condition.BUCHI, w)
    if cond is Condition.SAFETY:
        # once outside F, stay outside: safety becomes coBuchi
        outside = [q for q in A.states if q not in F]
        return eval_lasso(make_absorbing(A, outside), Condition.COBUCHI, w)
    values = _component_values(A, w, need_stationary=cond is Condition.LIMITAVG)
    if cond is Condition.BUCHI:
        return sum((p for states, p, _ in values if states & F), Fraction(0))
    if cond is Condition.COBUCHI:
        return sum((p for states, p, _ in values if states <= F), Fraction(0))
    return sum((p * avg for _, p, avg in values if p), Fraction(0))


def eval_all(A: ProbAutomaton, w: LassoWord) -> dict:
    return {c: eval_lasso(A, c, w) for c in Condition}
