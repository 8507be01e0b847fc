"""Qualitative questions answered on supports rather than probabilities.

A word keeps safety with probability 1 iff the support of every
distribution along its run stays inside F.  The support after a letter
depends only on the support before it, so the question becomes a search for
an infinite path in a graph of subsets of F.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .core import LassoWord, ProbAutomaton, support


def post(A: ProbAutomaton, S: frozenset, sigma: str) -> frozenset:
    out = set()
    for q in S:
        out.update(q2 for q2, p in A.row(sigma, q).items() if p > 0)
    return frozenset(out)


@dataclass
class SupportGraph:
    initial: Optional[frozenset]
    nodes: list = field(default_factory=list)
    edges: dict = field(default_factory=dict)  # (S, sigma) -> S'

    def successors(self, S):
        return [(sigma, T) for (S2, sigma), T in self.edges.items() if S2 == S]


def noleak_subset_graph(A: ProbAutomaton) -> SupportGraph:
    """Supports reachable from the initial one without ever leaving F."""
    F = A.accepting
    init = support(A.initial)
    if not init <= F:
        return SupportGraph(initial=None)
    g = SupportGraph(initial=init, nodes=[init])
    seen = {init}
    queue = deque([init])
    while queue:
        S = queue.popleft()
        for sigma in A.alphabet:
            T = post(A, S, sigma)
            if not T <= F:
                continue
            g.edges[(S, sigma)] = T
            if T not in seen:
                seen.add(T)
                g.nodes.append(T)
                queue.append(T)
    return g


class Decision(NamedTuple):
    answer: bool
    witness: Optional[LassoWord] = None


def _adjacency(g: SupportGraph) -> dict:
    adj = {S: [] for S in g.nodes}
    for (S, sigma), T in g.edges.items():
        adj[S].append((sigma, T))
    return adj


def _bfs_paths(adj, source):
    """Shortest letter sequences from ``source`` to every reachable node."""
    paths = {source: ()}
    queue = deque([source])
    while queue:
        S = queue.popleft()
        for sigma, T in adj[S]:
            if T not in paths:
                paths[T] = paths[S] + (sigma,)
                queue.append(T)
    return paths


def _walk(adj, start, letters):
    nodes = [start]
    for sigma in letters:
        nodes.append(dict((s, T) for s, T in adj[nodes[-1]])[sigma])
    return nodes


def decide_almost_safety(A: ProbAutomaton) -> Decision:
    """Is there a word whose run stays in F with probability 1?

    Yes iff the no-leak graph has a cycle reachable from the initial
    support.  The witness follows a shortest path to a node on a shortest
    cycle and is cut at the first repeated support, so
    ``|u| + |v|`` never exceeds the number of reachable supports.
    """
    g = noleak_subset_graph(A)
    if g.initial is None:
        return Decision(False)
    adj = _adjacency(g)
    from_init = _bfs_paths(adj, g.initial)
    best = None
    for S in g.nodes:
        if S not in from_init:
            continue
        # shortest S -> T path followed by an edge T -> S
        out = _bfs_paths(adj, S)
        cycle = None
        for T, path in out.items():
            for sigma, T2 in adj[T]:
                if T2 == S and (cycle is None or len(path) + 1 < len(cycle)):
                    cycle = path + (sigma,)
        if cycle is None:
            continue
        total = len(from_init[S]) + len(cycle)
        if best is None or total < best[0]:
            best = (total, from_init[S], cycle)
    if best is None:
        return Decision(False)
    _, path, cycle = best
    letters = path + cycle
    nodes = _walk(adj, g.initial, letters)
    first = {}
    for i, S in enumerate(nodes):
        if S in first:
            n, m = first[S], i
            return Decision(True, LassoWord(letters[:n], letters[n:m]))
        first[S] = i
    raise AssertionError("walk around a cycle must repeat a support")


def decide_limit_safety(A: ProbAutomaton) -> bool:
    """For safety, values approaching 1 force a value-1 word."""
    return decide_almost_safety(A).answer


def decide_positive_reachability(A: ProbAutomaton) -> Decision:
    """Is some state of F reachable with positive probability on some word?"""
    if not A.alphabet:
        return Decision(False)
    pad = (A.alphabet[0],)
    init = support(A.initial)
    if init & A.accepting:
        return Decision(True, LassoWord((), pad))
    parent = {q: None for q in init}
    queue = deque(sorted(init))
    while queue:
        q = queue.popleft()
        for sigma in A.alphabet:
            for q2, p in A.row(sigma, q).items():
                if p > 0 and q2 not in parent:
                    parent[q2] = (q, sigma)
                    if q2 in A.accepting:
                        letters = []
                        cur = q2
                        while parent[cur] is not None:
                            cur, s = parent[cur]
                            letters.append(s)
                        return Decision(True, LassoWord(tuple(reversed(letters)), pad))
                    queue.append(q2)
    return Decision(False)
