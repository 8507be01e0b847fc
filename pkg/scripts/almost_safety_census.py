"""Census of almost-safety answers over small {0, 1/2, 1} automata.

Enumerates the canonical classes used by the acceptance suite and reports,
per (|Q|, |Sigma|, |F|), how many are "yes" and the longest witness.  With
``--check`` every class is also compared against the brute-force oracle.

    python3 scripts/almost_safety_census.py --max-states 3 --check
"""

import argparse
import os
import sys
from dataclasses import dataclass

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

from omegapa.evaluator import eval_lasso  # noqa: E402
from omegapa.qualitative import decide_almost_safety  # noqa: E402
from oracles import brute_almost_safety, quotient_classes  # noqa: E402


@dataclass
class CensusConfig:
    max_states: int = 3
    max_letters: int = 2
    check: bool = False


def census(cfg: CensusConfig):
    for n in range(1, cfg.max_states + 1):
        for sigma in range(1, cfg.max_letters + 1):
            for f in range(1, n + 1):
                total = yes = longest = 0
                for A in quotient_classes(n, sigma, f):
                    d = decide_almost_safety(A)
                    total += 1
                    if d.answer:
                        yes += 1
                        size = len(d.witness.prefix) + len(d.witness.period)
                        longest = max(longest, size)
                        assert eval_lasso(A, "safety", d.witness) == 1
                    if cfg.check:
                        found = brute_almost_safety(A, 2 ** n + 1)
                        assert (found is not None) == d.answer, A
                yield n, sigma, f, total, yes, longest


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-states", type=int, default=3)
    ap.add_argument("--max-letters", type=int, default=2)
    ap.add_argument("--check", action="store_true", help="compare with brute force")
    args = ap.parse_args(argv)
    cfg = CensusConfig(args.max_states, args.max_letters, args.check)
    print(f"{'|Q|':>3} {'|S|':>3} {'|F|':>3} {'classes':>8} {'yes':>8} {'longest':>7}")
    for row in census(cfg):
        print("{:>3} {:>3} {:>3} {:>8} {:>8} {:>7}".format(*row))


if __name__ == "__main__":
    main()
