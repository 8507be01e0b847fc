"""Witness sequences for the limit pair over a grid of (x, eps).

    python3 scripts/witness_table.py --eval
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from omegapa.core import LassoWord
from omegapa.evaluator import eval_lasso
from omegapa.limit_gadgets import build_limit_pair, structured_prefix, witness_sequence


@dataclass
class TableConfig:
    xs: list = field(default_factory=lambda: [Fraction(2, 3), Fraction(3, 4), Fraction(9, 10)])
    epss: list = field(default_factory=lambda: [Fraction(1, 4), Fraction(1, 8), Fraction(1, 32)])
    schedule: str = "auto"
    max_blocks: int = 5000
    evaluate: bool = False


def rows(cfg: TableConfig):
    for x in cfg.xs:
        pair = build_limit_pair(x) if cfg.evaluate else None
        for eps in cfg.epss:
            seq = witness_sequence(x, eps, cfg.schedule, cfg.max_blocks)
            prefix = structured_prefix(seq.ns)
            value = None
            if pair is not None:
                value = eval_lasso(pair.combined, "reach", LassoWord(prefix, ("$",)))
            yield x, eps, seq, len(prefix), value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=Fraction, action="append")
    ap.add_argument("--eps", type=Fraction, action="append")
    ap.add_argument("--schedule", choices=["auto", "harmonic", "constant"], default="auto")
    ap.add_argument("--eval", action="store_true", help="evaluate each witness exactly")
    args = ap.parse_args(argv)
    cfg = TableConfig(schedule=args.schedule, evaluate=args.eval)
    if args.x:
        cfg.xs = args.x
    if args.eps:
        cfg.epss = args.eps
    print(f"{'x':>5} {'eps':>5} {'schedule':>9} {'J':>4} {'blocks':>7} {'letters':>8} "
          f"{'deficit':>10} {'leak':>10} {'value':>10}")
    for x, eps, seq, letters, value in rows(cfg):
        shown = "-" if value is None else f"{float(value):.6f}"
        print(f"{str(x):>5} {str(eps):>5} {seq.schedule:>9} {seq.J:>4} {len(seq.ns):>7} "
              f"{letters:>8} {float(seq.deficit):>10.3e} {float(seq.leak):>10.3e} {shown:>10}")


if __name__ == "__main__":
    main()
