"""Command line front end.

Exit status: 0 when the checked property holds (or the command succeeded),
1 when it fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import __version__, oracle
from .campaign import format_table, run_campaign, write_report
from .composition import Variant, concurrent_composition, observation_automaton
from .delayed import verify_omega_k_delayed, verify_star_k_delayed
from .diagnosability import verify_diagnosability
from .fsa import ModelError, delayed_state_estimate, state_estimate
from .io import dump_json, load_model, parse_spec, serialize_model, to_dot
from .k1k2 import verify_omega_k1k2, verify_omega_k1k2_d, verify_star_k1k2, verify_star_k1k2_d
from .synthesis import TARGETS, Target, exhaustive_minimum_plan, synthesize
from .verdict import PROPERTIES

MAX_WORD = 10_000


class InputError(Exception):
    pass


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"{args.property} needs " + " ".join("--" + n for n in missing))


def _spec(args, a):
    if args.spec is None:
        raise InputError(f"{args.property} needs --spec")
    return parse_spec(Path(args.spec).read_text(), a)


def _run_verify(args, a):
    p = args.property
    if p.endswith("delayed"):
        _need(args, "k")
        fn = verify_omega_k_delayed if p.startswith("omega") else verify_star_k_delayed
        return fn(a, args.k)
    if p == "diagnosable":
        return verify_diagnosability(a)
    _need(args, "k1", "k2")
    if p == "omega-k1k2":
        return verify_omega_k1k2(a, args.k1, args.k2)
    if p == "star-k1k2":
        return verify_star_k1k2(a, args.k1, args.k2)
    spec = _spec(args, a)
    if p == "omega-k1k2-d":
        return verify_omega_k1k2_d(a, args.k1, args.k2, spec)
    return verify_star_k1k2_d(a, args.k1, args.k2, spec)


def _describe(prop, params, holds) -> str:
    ps = " ".join(f"{k}={v}" for k, v in params.items() if k != "spec")
    return f"{prop} {ps}".strip() + (": holds" if holds else ": fails")


def cmd_verify(args) -> int:
    a = load_model(args.model)
    v = _run_verify(args, a)
    if args.witness:
        body = v.witness.to_json(a) if v.witness else None
        Path(args.witness).write_text(dump_json(body))
    if args.json or args.layers:
        sys.stdout.write(dump_json(v.to_json(a, layers=args.layers)))
    else:
        print(_describe(v.property, v.params, v.holds))
        if v.witness is not None:
            pre, post = v.witness.words(a)
            print(f"  witness prefix: {' '.join(pre) or '(empty)'}")
            if v.witness.filter_after is not None:
                print(f"  witness suffix: {' '.join(post) or '(empty)'}")
    return 0 if v.holds else 1


def cmd_compose(args) -> int:
    a = load_model(args.model)
    if args.kind == "obs":
        out = observation_automaton(a)
    else:
        variant = Variant.STANDARD if args.kind == "cc" else Variant.NORMAL_RIGHT
        out = concurrent_composition(a, variant).to_fsa()
    text = serialize_model(out)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.dot:
        Path(args.dot).write_text(to_dot(out, args.kind))
    return 0


def cmd_synthesize(args) -> int:
    a = load_model(args.model)
    if args.property.endswith("delayed"):
        _need(args, "k")
        target = Target(args.property, k=args.k)
    else:
        _need(args, "k1", "k2")
        target = Target(args.property, k1=args.k1, k2=args.k2)
    plan = exhaustive_minimum_plan(a, target, args.cap) if args.exact else synthesize(a, target)
    body = plan.to_json(a)
    if args.out:
        Path(args.out).write_text(dump_json(body))
    else:
        sys.stdout.write(dump_json(body))
    if plan.feasible:
        names = ", ".join(" ".join(a.transition_name(t)) for t in plan.disabled) or "nothing"
        print(f"feasible: disable {names}", file=sys.stderr)
    else:
        print("infeasible: disabling every controllable transition is not enough", file=sys.stderr)
    return 0 if plan.feasible else 1


def cmd_oracle(args) -> int:
    a = load_model(args.model)
    p = args.property
    flavor = "omega" if p.startswith("omega") else "star"
    if p.endswith("delayed"):
        _need(args, "k")
        res = oracle.oracle_delayed(a, args.k, flavor, args.depth)
        params = {"K": args.k}
    elif p == "diagnosable":
        res = oracle.oracle_diagnosability(a)
        params = {}
    else:
        _need(args, "k1", "k2")
        spec = _spec(args, a) if p.endswith("-d") else None
        res = oracle.oracle_k1k2(a, args.k1, args.k2, flavor, spec, args.depth)
        params = {"k1": args.k1, "k2": args.k2}
    body = {
        "property": p,
        "params": params,
        "holds": res.holds,
        "exact": res.exact,
        "depth": res.depth,
        "required_depth": res.required_depth,
    }
    if res.prefix is not None:
        body["prefix_word"] = list(res.prefix)
        body["suffix_word"] = list(res.suffix)
    if args.json:
        sys.stdout.write(dump_json(body))
    else:
        tag = "" if res.exact else f" (bounded: depth {res.depth} < {res.required_depth})"
        print(_describe(p, params, res.holds) + tag)
    return 0 if res.holds else 1


def cmd_campaign(args) -> int:
    if args.instances < 0 or args.states < 1:
        raise InputError("--instances must be >= 0 and --states >= 1")
    result = run_campaign(args.instances, args.states, args.seed, args.workers)
    for line in format_table(result.summary()):
        print(line)
    bad = result.disagreements
    print(f"total checks {len(result.rows)}, disagreements {len(bad)}")
    if args.out_dir:
        for path in write_report(result, args.out_dir):
            print(f"wrote {path}")
    return 0 if not bad else 1


def _word(text: str | None) -> list[str]:
    words = (text or "").split()
    if len(words) > MAX_WORD:
        raise InputError(f"words are capped at {MAX_WORD} symbols")
    return words


def cmd_estimate(args) -> int:
    a = load_model(args.model)
    if args.then is None:
        est = state_estimate(a, _word(args.word))
    else:
        est = delayed_state_estimate(a, _word(args.word), _word(args.then))
    print(" ".join(est.names(a)))
    return 0


def cmd_info(args) -> int:
    from .fsa import check_assumption1

    a = load_model(args.model)
    rep = check_assumption1(a)
    body = {
        "states": a.n,
        "events": len(a.events),
        "transitions": len(a.transitions),
        "alphabet": list(a.alphabet),
        "deadlock_free": rep.deadlock_free,
        "prompt": rep.prompt,
        "deadlocks": sorted(a.states[x] for x in rep.deadlocks),
        "silent_cycle_states": sorted(a.states[x] for x in rep.silent_cycle_states),
    }
    sys.stdout.write(dump_json(body))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detkit",
        description="Check and enforce state detectability of labeled automata.",
    )
    parser.add_argument("--version", action="version", version=f"detkit {__version__}")
    parser.add_argument("--error-json", action="store_true",
                        help="also print errors as a JSON object on stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def windows(p):
        p.add_argument("--k", type=int, help="delay for the K-delayed properties")
        p.add_argument("--k1", type=int, help="minimum number of observations")
        p.add_argument("--k2", type=int, help="observations after the estimated point")

    p = sub.add_parser("verify", help="decide a property structurally")
    p.add_argument("--property", required=True, choices=PROPERTIES)
    windows(p)
    p.add_argument("--spec", help="file of state pairs, one 'x y' per line")
    p.add_argument("--witness", help="write the counterexample run here as JSON")
    p.add_argument("--layers", action="store_true", help="include the layered state sets")
    p.add_argument("--json", action="store_true", help="print the verdict as JSON")
    p.add_argument("model")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compose", help="print a composition in model format")
    p.add_argument("--kind", required=True, choices=("cc", "obs", "cc-tn"))
    p.add_argument("--dot", help="also write Graphviz source here")
    p.add_argument("--out", help="write the model here instead of stdout")
    p.add_argument("model")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("synthesize", help="find controllable transitions to disable")
    p.add_argument("--property", required=True, choices=TARGETS)
    windows(p)
    p.add_argument("--exact", action="store_true", help="enumerate subsets for a smallest plan")
    p.add_argument("--cap", type=int, default=12, help="subset enumeration limit (with --exact)")
    p.add_argument("--out", help="plan file (JSON); stdout if omitted")
    p.add_argument("model")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("oracle", help="decide a property by word enumeration")
    p.add_argument("--property", required=True, choices=PROPERTIES)
    windows(p)
    p.add_argument("--spec")
    p.add_argument("--depth", type=int, help="longest word explored (default: exact bound)")
    p.add_argument("--json", action="store_true")
    p.add_argument("model")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("campaign", help="cross-check verifiers and oracles on random models")
    p.add_argument("--instances", type=int, default=500)
    p.add_argument("--states", type=int, default=5, help="maximum number of states")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-dir", help="write campaign.csv and campaign.png here")
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("estimate", help="current-state estimate after a word")
    p.add_argument("--word", default="", help="observed symbols, space separated")
    p.add_argument("--then", help="later symbols for a delayed estimate")
    p.add_argument("model")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("info", help="size and sanity checks of a model")
    p.add_argument("model")
    p.set_defaults(func=cmd_info)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *rest: print(f"warning: {msg}", file=sys.stderr)
            return args.func(args)
    except (ModelError, InputError, ValueError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"detkit: error: {msg}", file=sys.stderr)
        if args.error_json:
            sys.stdout.write(json.dumps({"error": msg, "type": type(exc).__name__}, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
