"""``omegapa`` command-line front end.

Exit codes: 0 success, 1 validation failure, 2 parse error or bad usage,
3 condition not supported by the requested command.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .combinators import PreconditionError
from .core import Condition, LassoWord, UnknownSymbolError, validate_automaton
from .evaluator import eval_lasso
from .fileformat import (FormatError, fmt_rational, parse_automaton, parse_pcp,
                         serialize_automaton)
from .limit_gadgets import (WitnessTooLong, build_limit_pair, embed_limit_reduction,
                            structured_prefix, witness_sequence)
from .mc_oracle import simulate
from .pcp_gadgets import (GadgetBundle, build_equality_gadget, build_value_gadget, rescale,
                          solve_pcp_bounded)
from .qualitative import decide_almost_safety, decide_positive_reachability

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_UNSUPPORTED = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def decimal(x: Fraction) -> str:
    return f"{float(x):.6g}"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}", EXIT_PARSE) from None


def load_automaton(path: str, check: bool = True):
    try:
        A, cond = parse_automaton(_read(path))
    except (FormatError, ValueError) as e:
        raise CliError(f"{path}: {e}", EXIT_PARSE) from None
    if check:
        report = validate_automaton(A)
        if not report.ok:
            raise CliError(f"{path}: invalid automaton\n{report}", EXIT_INVALID)
    return A, cond


def load_pcp(path: str):
    try:
        return parse_pcp(_read(path))
    except (FormatError, ValueError) as e:
        raise CliError(f"{path}: {e}", EXIT_PARSE) from None


def _word(text: str) -> LassoWord:
    try:
        return LassoWord.parse(text)
    except ValueError as e:
        raise CliError(f"bad word: {e}", EXIT_PARSE) from None


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _emit(args, result, lines, exact=None, witness=None, inputs=None):
    if args.json:
        doc = {"command": args.command, "inputs": inputs or {}, "result": result,
               "exact": fmt_rational(exact) if exact is not None else None,
               "decimal": decimal(exact) if exact is not None else None}
        if witness is not None:
            doc["witness"] = witness
        print(json.dumps(doc))
    else:
        for line in lines:
            print(line)


def cmd_validate(args):
    A, cond = load_automaton(args.file, check=False)
    report = validate_automaton(A)
    _emit(args, "valid" if report.ok else "invalid",
          [str(report)] if report.ok else [], inputs={"file": args.file})
    if not report.ok:
        print(str(report), file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_eval(args):
    A, cond = load_automaton(args.file)
    if args.condition:
        cond = args.condition
    w = _word(args.word)
    try:
        value = eval_lasso(A, cond, w)
    except UnknownSymbolError as e:
        raise CliError(f"bad word: {e.args[0]}", EXIT_PARSE) from None
    _emit(args, fmt_rational(value), [fmt_rational(value), decimal(value)], exact=value,
          inputs={"file": args.file, "word": w.format(), "condition": cond.value})
    return EXIT_OK


def _write_gadget(out: Path, A, cond, meta: dict, components: dict):
    files = {}
    for name, C in components.items():
        rel = f"components/{name}.pa"
        _write(out / rel, serialize_automaton(C, meta.get("component_condition", cond)))
        files[name] = rel
    _write(out / "gadget.pa", serialize_automaton(A, cond))
    meta = dict(meta, automaton="gadget.pa", components=files)
    _write(out / "meta.json", json.dumps(meta, indent=2) + "\n")
    return meta


def cmd_build_gadget(args):
    out = Path(args.output)
    if args.kind in ("equality", "value"):
        if not args.input:
            raise CliError(f"build-gadget {args.kind} needs a PCP file", EXIT_PARSE)
        P = load_pcp(args.input)
        try:
            B = build_equality_gadget(P) if args.kind == "equality" else build_value_gadget(P)
        except ValueError as e:
            raise CliError(str(e), EXIT_INVALID) from None
        meta = {"kind": args.kind, "threshold": fmt_rational(B.threshold),
                "semantics": B.semantics, "condition": "safety"}
        meta = _write_gadget(out, B.automaton, Condition.SAFETY, meta, B.components)
    elif args.kind == "limit":
        if args.x is None:
            raise CliError("build-gadget limit needs --x", EXIT_PARSE)
        try:
            L = build_limit_pair(args.x)
        except ValueError as e:
            raise CliError(str(e), EXIT_PARSE) from None
        meta = {"kind": "limit", "x": fmt_rational(L.x), "threshold": "1/1",
                "semantics": "limit", "condition": "reach"}
        meta = _write_gadget(out, L.combined, Condition.REACH, meta, {"A1": L.A1, "A2": L.A2})
    else:
        if not args.input:
            raise CliError("build-gadget embed needs an automaton file", EXIT_PARSE)
        B, _ = load_automaton(args.input)
        try:
            A = embed_limit_reduction(B)
        except ValueError as e:
            raise CliError(str(e), EXIT_INVALID) from None
        meta = {"kind": "embed", "threshold": "1/1", "semantics": "limit",
                "condition": "reach"}
        meta = _write_gadget(out, A, Condition.REACH, meta, {"B": B})
    _emit(args, str(out / "gadget.pa"), [f"wrote {out / 'gadget.pa'}"],
          inputs={"kind": args.kind, "output": str(out)}, witness=None)
    return EXIT_OK


def cmd_rescale(args):
    A, cond = load_automaton(args.file)
    try:
        B = rescale(GadgetBundle(A, args.from_, "rescaled"), args.to)
    except (ValueError, PreconditionError) as e:
        raise CliError(str(e), EXIT_PARSE) from None
    _write(Path(args.output), serialize_automaton(B.automaton, cond))
    _emit(args, args.output, [f"wrote {args.output}"], exact=B.threshold,
          inputs={"file": args.file, "from": fmt_rational(args.from_),
                  "to": fmt_rational(args.to)})
    return EXIT_OK


def cmd_decide(args):
    A, cond = load_automaton(args.file)
    if args.problem in ("almost-safety", "limit-safety"):
        if cond is not Condition.SAFETY:
            raise CliError(f"{args.problem} needs a safety automaton, file says {cond.value}",
                           EXIT_UNSUPPORTED)
        d = decide_almost_safety(A)
        if args.problem == "limit-safety":
            d = d._replace(witness=None)
    else:
        if cond is not Condition.REACH:
            raise CliError(f"positive-reach needs a reach automaton, file says {cond.value}",
                           EXIT_UNSUPPORTED)
        d = decide_positive_reachability(A)
    verdict = "YES" if d.answer else "NO"
    lines = [verdict] + ([d.witness.format()] if d.witness else [])
    _emit(args, verdict, lines, witness=d.witness.format() if d.witness else None,
          inputs={"file": args.file, "problem": args.problem})
    return EXIT_OK


def cmd_witness_limit(args):
    try:
        seq = witness_sequence(args.x, args.eps, args.schedule, args.max_blocks)
    except (ValueError, WitnessTooLong) as e:
        raise CliError(str(e), EXIT_PARSE) from None
    w = LassoWord(structured_prefix(seq.ns), ("$",))
    lines = [f"schedule {seq.schedule}", f"J {seq.J}",
             "n " + " ".join(map(str, seq.ns)), w.format()]
    _emit(args, {"schedule": seq.schedule, "J": seq.J, "ns": seq.ns}, lines,
          witness=w.format(), inputs={"x": fmt_rational(args.x), "eps": fmt_rational(args.eps)})
    return EXIT_OK


def cmd_simulate(args):
    A, cond = load_automaton(args.file)
    if args.condition:
        cond = args.condition
    w = _word(args.word)
    try:
        est = simulate(A, cond, w, args.trials, args.horizon, args.seed)
    except KeyError as e:
        raise CliError(f"bad word: {e.args[0]}", EXIT_PARSE) from None
    except ValueError as e:
        raise CliError(str(e), EXIT_PARSE) from None
    if args.json:
        print(json.dumps({"command": args.command,
                          "inputs": {"file": args.file, "word": w.format(), "trials": args.trials,
                                     "horizon": args.horizon, "seed": args.seed},
                          "result": {"mean": est.mean, "standard_error": est.standard_error},
                          "exact": None, "decimal": f"{est.mean:.6g}"}))
    else:
        print(f"{est.mean:.6g} ± {est.standard_error:.3g}")
    return EXIT_OK


def cmd_solve_pcp(args):
    P = load_pcp(args.file)
    try:
        w = solve_pcp_bounded(P, args.maxlen)
    except ValueError as e:
        raise CliError(str(e), EXIT_PARSE) from None
    text = " ".join(w) if w else "NONE"
    _emit(args, text, [text], inputs={"file": args.file, "maxlen": args.maxlen})
    return EXIT_OK


def _condition(text: str) -> Condition:
    try:
        return Condition.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown condition {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="omegapa",
                                     description="Exact analysis of probabilistic automata "
                                                 "on lasso words.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check stochasticity")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("eval", parents=[common], help="exact value of a lasso word")
    p.add_argument("file")
    p.add_argument("--word", required=True, help='"u1 u2 ; v1 v2"')
    p.add_argument("--condition", type=_condition)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("build-gadget", parents=[common], help="write a reduction automaton")
    p.add_argument("kind", choices=["equality", "value", "limit", "embed"])
    p.add_argument("input", nargs="?", help="PCP file (equality, value) or automaton (embed)")
    p.add_argument("--x", type=_rational)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build_gadget)

    p = sub.add_parser("rescale", parents=[common], help="move a threshold c to lambda")
    p.add_argument("file")
    p.add_argument("--from", dest="from_", type=_rational, required=True)
    p.add_argument("--to", type=_rational, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_rescale)

    p = sub.add_parser("decide", parents=[common], help="qualitative decision procedures")
    p.add_argument("problem", choices=["almost-safety", "limit-safety", "positive-reach"])
    p.add_argument("file")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("witness-limit", parents=[common], help="witness words for the limit pair")
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--schedule", choices=["auto", "harmonic", "constant"], default="auto")
    p.add_argument("--max-blocks", type=int, default=5000)
    p.set_defaults(func=cmd_witness_limit)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimate")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--horizon", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--condition", type=_condition)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("solve-pcp", parents=[common], help="bounded PCP search")
    p.add_argument("file")
    p.add_argument("--maxlen", type=int, required=True)
    p.set_defaults(func=cmd_solve_pcp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad flags
    try:
        return args.func(args)
    except CliError as e:
        print(f"omegapa: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
