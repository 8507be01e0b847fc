from fractions import Fraction

from hypothesis import strategies as st

from omegapa.core import LassoWord, ProbAutomaton


@st.composite
def distributions(draw, support, max_den=6):
    """Exact distribution over ``support`` with small denominators."""
    support = list(support)
    den = draw(st.integers(1, max_den))
    weights = draw(st.lists(st.integers(0, den), min_size=len(support), max_size=len(support)))
    if sum(weights) == 0:
        weights[draw(st.integers(0, len(support) - 1))] = 1
    total = sum(weights)
    return {q: Fraction(w, total) for q, w in zip(support, weights) if w}


@st.composite
def automata(draw, max_states=4, alphabet=("a", "b"), absorbing_sink=False):
    n = draw(st.integers(1, max_states))
    states = tuple(f"q{i}" for i in range(n))
    trans = {s: {q: draw(distributions(states)) for q in states} for s in alphabet}
    if absorbing_sink:
        for s in alphabet:
            trans[s][states[-1]] = {states[-1]: 1}
    init = draw(distributions(states))
    acc = frozenset(q for q in states if draw(st.booleans()))
    return ProbAutomaton(states, alphabet, init, trans, acc)


def lassos(alphabet=("a", "b"), max_prefix=4, max_period=3):
    letters = st.sampled_from(list(alphabet))
    return st.builds(lambda u, v: LassoWord(tuple(u), tuple(v)),
                     st.lists(letters, max_size=max_prefix),
                     st.lists(letters, min_size=1, max_size=max_period))
