"""Exact analysis of probabilistic automata on ultimately periodic words."""

from .core import (Condition, LassoWord, ProbAutomaton, ValidationReport, absorbing_states,
                   classify, finite_acceptance, make_automaton, run_finite, step,
                   validate_automaton)
from .evaluator import eval_all, eval_lasso

__all__ = [
    "Condition", "LassoWord", "ProbAutomaton", "ValidationReport", "absorbing_states",
    "classify", "eval_all", "eval_lasso", "finite_acceptance", "make_automaton",
    "run_finite", "step", "validate_automaton",
]
__version__ = "0.1.0"
