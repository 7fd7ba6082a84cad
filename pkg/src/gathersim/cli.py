"""Command-line front end.

Subcommands: classify, simulate, check-independence, counterexample, sweep.
Exit codes are a stable contract:

  classify            0 ungatherable, 1 boundary-gatherable, 2 good
  simulate            0 gathered, 1 split, 2 timeout
  check-independence  0 independent, 1 dependent
  counterexample      0 written
  sweep               0 clean, 1 invariant violations seen
  any command         3 on input or file errors
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .algorithms import (dedicated_program, gather_a_program,
                         gather_n_program)
from .assumption import (AssumptionSet, build_dependent_counterexample,
                         independence)
from .checks import CheckFailure, check_all
from .config import Feasibility, InitialConfiguration, classify
from .engine import run
from .generate import config_of_class
from .render import write_svg

ERR = 3


def _load_config(path: str) -> InitialConfiguration:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc.strerror}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) \
            else ""
        msg = (f"error: {path}:{exc.lineno}:{exc.colno}: {exc.msg}\n"
               f"  {context}")
        raise SystemExit(msg)
    try:
        return InitialConfiguration.from_dict(data)
    except ValueError as exc:
        raise SystemExit(f"error: {path}: {exc}")


def _program_factory(algorithm: str, cfg: InitialConfiguration,
                     assumption_set: str | None):
    if algorithm == "dedicated":
        return dedicated_program(cfg, cfg.epsilon)
    if algorithm == "gather-n":
        return gather_n_program(cfg.n)
    if algorithm == "gather-a":
        if not assumption_set:
            raise SystemExit(
                "error: --algorithm gather-a requires --assumption-set")
        try:
            a = AssumptionSet.parse(assumption_set)
        except ValueError as exc:
            raise SystemExit(f"error: {exc}")
        return gather_a_program(a.elements)
    raise SystemExit(f"error: unknown algorithm {algorithm!r}")


def cmd_classify(args) -> int:
    cfg = _load_config(args.config)
    result = classify(cfg)
    if result.kind is Feasibility.UNGATHERABLE:
        print("UNGATHERABLE")
        return 0
    i, j = result.witness
    if result.kind is Feasibility.BAD_GATHERABLE:
        print(f"BAD (witness {i},{j})")
        return 1
    print(f"GOOD (witness {i},{j})")
    return 2


def cmd_simulate(args) -> int:
    cfg = _load_config(args.config)
    factory = _program_factory(args.algorithm, cfg, args.assumption_set)
    trace = run(cfg, factory, horizon=args.horizon)
    if args.trace:
        trace.write_jsonl(args.trace)
    if args.svg:
        write_svg(cfg, trace, args.svg)
    v = trace.verdict
    if v.kind == "gathered":
        print(f"GATHERED at ({v.point.x:g},{v.point.y:g}) t={v.time:g}")
        return 0
    if v.kind == "split":
        print(f"SPLIT {len(v.groups)} groups")
        return 1
    print(f"TIMEOUT at t={v.time:g}")
    return 2


def cmd_check_independence(args) -> int:
    try:
        a = AssumptionSet.parse(args.set)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    independent, cert = independence(a)
    if independent:
        print("INDEPENDENT")
        return 0
    print(f"DEPENDENT: {cert.format()}")
    return 1


def cmd_counterexample(args) -> int:
    try:
        a = AssumptionSet.parse(args.set)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    if args.epsilon <= 0.0:
        raise SystemExit("error: --epsilon must be positive")
    try:
        ce = build_dependent_counterexample(a, args.epsilon)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    ce.config.save(args.out)
    sizes = ",".join(str(len(c)) for c in ce.clusters)
    print(f"DEPENDENT: {ce.certificate.format()}")
    print(f"wrote {ce.config.n} agents in clusters of {sizes} to {args.out}")
    return 0


_CLASS_NAMES = {
    "good": Feasibility.GOOD,
    "bad": Feasibility.BAD_GATHERABLE,
    "ungatherable": Feasibility.UNGATHERABLE,
}


def _sweep_one(task: tuple) -> dict:
    idx, seed, class_name, n, algorithm, assumption_set, horizon = task
    kind = _CLASS_NAMES[class_name]
    cfg = config_of_class(seed, kind, n)
    factory = _program_factory(algorithm, cfg, assumption_set)
    trace = run(cfg, factory, horizon=horizon)
    violation = ""
    try:
        check_all(cfg, trace)
    except CheckFailure as exc:
        violation = str(exc)
    return {
        "idx": idx,
        "verdict": trace.verdict.kind,
        "time": trace.verdict.time,
        "ga_events": len(trace.ga_events()),
        "violation": violation,
    }


def cmd_sweep(args) -> int:
    if args.count < 1:
        raise SystemExit("error: --count must be at least 1")
    if args.n < 2:
        raise SystemExit("error: --n must be at least 2")
    if args.cls == "bad" and args.n != 2:
        raise SystemExit("error: boundary configurations are pairs; "
                         "use --n 2 with --class bad")
    if args.algorithm == "gather-a" and not args.assumption_set:
        raise SystemExit(
            "error: --algorithm gather-a requires --assumption-set")
    tasks = [(i, args.seed * 1_000_003 + i, args.cls, args.n,
              args.algorithm, args.assumption_set, args.horizon)
             for i in range(args.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, tasks))
    else:
        results = [_sweep_one(t) for t in tasks]
    results.sort(key=lambda r: r["idx"])

    gathered = [r for r in results if r["verdict"] == "gathered"]
    violations = [r for r in results if r["violation"]]
    total_ga = sum(r["ga_events"] for r in results)
    for r in results:
        line = (f"  #{r['idx']:<4d} {r['verdict']:<9s} "
                f"t={r['time']:.6f} ga={r['ga_events']}")
        if r["violation"]:
            line += f"  VIOLATION: {r['violation']}"
        print(line)
    rate = len(gathered) / len(results)
    print(f"class={args.cls} n={args.n} count={args.count} "
          f"seed={args.seed} algorithm={args.algorithm}")
    print(f"gather rate {rate:.2f} ({len(gathered)}/{len(results)})")
    if gathered:
        print(f"max gathering time {max(r['time'] for r in gathered):.6f}")
    print(f"total GA events {total_ga}")
    print(f"invariant violations {len(violations)}")
    return 1 if violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gathersim",
        description="Simulate gathering of anonymous agents that appear "
                    "in the plane at different times.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify",
                       help="report the feasibility class of a "
                            "configuration file")
    p.add_argument("config")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="run an algorithm on a "
                                        "configuration file")
    p.add_argument("config")
    p.add_argument("--algorithm", required=True,
                   choices=["dedicated", "gather-n", "gather-a"])
    p.add_argument("--assumption-set", default=None, metavar="a,b,c")
    p.add_argument("--horizon", type=float, default=None)
    p.add_argument("--trace", default=None, metavar="out.jsonl")
    p.add_argument("--svg", default=None, metavar="out.svg")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("check-independence",
                       help="test whether a candidate team-size set has a "
                            "smaller-sum representation")
    p.add_argument("set", metavar="a,b,c")
    p.set_defaults(func=cmd_check_independence)

    p = sub.add_parser("counterexample",
                       help="build a configuration that a dependent "
                            "team-size set fails to gather")
    p.add_argument("--set", required=True, metavar="a,b,c")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("sweep",
                       help="run an algorithm over many seeded random "
                            "configurations and summarize")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--class", dest="cls", required=True,
                   choices=["good", "bad", "ungatherable"])
    p.add_argument("--algorithm", required=True,
                   choices=["dedicated", "gather-n", "gather-a"])
    p.add_argument("--assumption-set", default=None, metavar="a,b,c")
    p.add_argument("--horizon", type=float, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return ERR
        raise


if __name__ == "__main__":
    sys.exit(main())
