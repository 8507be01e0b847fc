"""Tabulate the equality and value gadgets on every lasso ``(w$, $)`` up to a length.

    python3 scripts/gadget_sweep.py --pcp p2prime --max-len 6
    python3 scripts/gadget_sweep.py --pcp-file instance.pcp --max-len 4
"""

import argparse
import itertools
import warnings
from dataclasses import dataclass
from pathlib import Path

from omegapa.core import LassoWord
from omegapa.evaluator import eval_lasso
from omegapa.fileformat import parse_pcp
from omegapa.pcp_gadgets import (LeadingZeroWarning, PcpInstance, build_equality_gadget,
                                 build_value_gadget, theta)

BUILTIN = {
    "p1": PcpInstance(("a",), 2, {"a": "1"}, {"a": "1"}),
    "p2prime": PcpInstance(("a",), 2, {"a": "1"}, {"a": "11"}),
    "classic": PcpInstance(("a", "b", "c"), 2, {"a": "1", "b": "10111", "c": "10"},
                           {"a": "111", "b": "10", "c": "0"}),
}


@dataclass
class SweepConfig:
    instance: PcpInstance
    max_len: int = 4
    min_len: int = 1


def sweep(cfg: SweepConfig):
    P = cfg.instance
    eq = build_equality_gadget(P)
    val = build_value_gadget(P)
    for n in range(cfg.min_len, cfg.max_len + 1):
        for w in itertools.product(P.alphabet, repeat=n):
            lasso = LassoWord(w + ("$",), ("$",))
            yield (w, theta(P, 1, w) - theta(P, 2, w), eval_lasso(eq.automaton, "safety", lasso),
                   eval_lasso(val.automaton, "safety", lasso))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--pcp", choices=sorted(BUILTIN), default="p2prime")
    src.add_argument("--pcp-file")
    ap.add_argument("--max-len", type=int, default=4)
    args = ap.parse_args(argv)
    P = parse_pcp(Path(args.pcp_file).read_text()) if args.pcp_file else BUILTIN[args.pcp]
    warnings.simplefilter("ignore", LeadingZeroWarning)
    print(f"{'w':<12} {'theta1-theta2':>16} {'equality':>12} {'value':>12}  flags")
    for w, delta, e, v in sweep(SweepConfig(P, args.max_len)):
        flags = "=1/3 " if e * 3 == 1 else ""
        flags += ">1/8" if v * 8 > 1 else ""
        print(f"{''.join(w):<12} {str(delta):>16} {float(e):>12.8f} {float(v):>12.8f}  {flags}")


if __name__ == "__main__":
    main()
