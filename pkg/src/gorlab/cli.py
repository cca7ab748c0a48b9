"""Command-line entry point: ``gorlab <command> ...``.

Exit codes: 0 success / verification passed, 1 verification or check
failed, 2 bad input (unknown flags, unreadable or malformed files).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import linalg
from .construct import DEFAULT_ATTEMPTS, DEFAULT_M, Representation, construct_with_retries
from .experiment import (
    ExperimentConfig,
    default_mode,
    lemma_sweep,
    parse_config_text,
    random_corpus,
    run_experiment,
)
from .generators import generate_graph
from .graph import FORMATS, GraphFormatError, detect_format, identity_ordering, parse_graph, serialize_graph, vertex_connectivity
from .verify import certify_no_gor, verify_gor

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_graph(path, fmt):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text, fmt or detect_format(path))


def _graph_from_args(args):
    if args.infile:
        return _read_graph(args.infile, args.format)
    if args.model:
        return generate_graph(args.model, seed=args.seed)
    raise InputError("give a graph with --in PATH or --model SPEC")


def _add_graph_source(p):
    p.add_argument("--in", dest="infile", help="graph file (edge-list or graph6)")
    p.add_argument("--format", choices=FORMATS, help="graph file format (default: by extension)")
    p.add_argument("--model", help="generator spec, e.g. cycle:5, gnp:10:0.5, petersen, star:5")
    p.add_argument("--seed", type=int, default=0)


def cmd_connectivity(args):
    g = _graph_from_args(args)
    cert = vertex_connectivity(g)
    print(f"kappa={cert.kappa}")
    print(f"witness={cert.witness_label()}")
    return EXIT_OK


def cmd_gen(args):
    g = generate_graph(args.model, seed=args.seed)
    text = serialize_graph(g, args.format)
    if args.format == "graph6":
        text += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_construct(args):
    g = _graph_from_args(args)
    order = tuple(int(x) for x in args.ordering.split(",")) if args.ordering else identity_ordering(g.n)
    mode = args.mode or default_mode()
    cut = certify_no_gor(g, args.D)
    if cut is not None:
        print(f"note: cut {sorted(cut)} has size < n-D={g.n - args.D}; no GOR exists", file=sys.stderr)
    out = construct_with_retries(g, order, args.D, mode, args.attempts, args.seed, args.M, args.eps)
    text = out.representation.to_json() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    status = "GOR" if out.success else "not in general position"
    print(f"{status} after {out.attempts_used} attempt(s)", file=sys.stderr)
    return EXIT_OK if out.success else EXIT_FAIL


def cmd_verify(args):
    g = _read_graph(args.graph, args.format)
    try:
        with open(args.rep) as fh:
            rep = Representation.from_json(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {args.rep}: {exc.strerror}") from None
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"malformed representation file: {exc}") from None
    D = args.D if args.D is not None else rep.D
    report = verify_gor(g, rep, D, eps=args.eps)
    print(report.to_json())
    return EXIT_OK if report.gor else EXIT_FAIL


def cmd_experiment(args):
    kwargs = {}
    if args.config:
        try:
            with open(args.config) as fh:
                kwargs.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise InputError(f"cannot read {args.config}: {exc.strerror}") from None
    flag_map = {
        "model": "graph", "infile": "graph_file", "format": "graph_format", "D": "D", "mode": "mode",
        "trials": "trials", "orderings": "orderings", "M": "M", "attempts": "attempts", "seed": "seed",
        "eps": "eps",
    }
    for flag, key in flag_map.items():
        value = getattr(args, flag)
        if value is not None:
            kwargs[key] = value
    if args.model is not None:
        kwargs["graph_file"] = None
    if args.no_reps:
        kwargs["store_reps"] = False
    cfg = ExperimentConfig(**kwargs)
    result = run_experiment(cfg)
    print(result.summary())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(result.to_json(include_timing=args.timing) + "\n")
    return EXIT_OK


def cmd_lemmas(args):
    if args.infile:
        g = _read_graph(args.infile, args.format)
        graphs = [g]
    else:
        graphs = random_corpus(args.count, args.n_min, args.n_max, args.seed)
    sweep = lemma_sweep(graphs, args.seed, keep_sequences=args.sequences)
    print(json.dumps(sweep.to_dict(include_sequences=args.sequences), indent=1, sort_keys=True))
    return EXIT_OK if sweep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gorlab", description="Orthogonal representations in general position.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("connectivity", help="vertex connectivity with a witness")
    _add_graph_source(p)
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("gen", help="emit a generated graph")
    p.add_argument("--model", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=FORMATS, default="edge-list")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("construct", help="build a representation and write it as JSON")
    _add_graph_source(p)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--mode", choices=linalg.MODES)
    p.add_argument("--ordering", help="comma-separated vertex ordering (default identity)")
    p.add_argument("--M", type=int, default=DEFAULT_M)
    p.add_argument("--attempts", type=int, default=DEFAULT_ATTEMPTS)
    p.add_argument("--eps", type=float, default=linalg.DEFAULT_EPS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a representation against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--rep", required=True)
    p.add_argument("--D", type=int)
    p.add_argument("--eps", type=float, default=linalg.DEFAULT_EPS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="Monte-Carlo construction experiment")
    p.add_argument("--config", help="key = value config file; flags override it")
    p.add_argument("--in", dest="infile")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--model")
    p.add_argument("--D", type=int)
    p.add_argument("--mode", choices=linalg.MODES)
    p.add_argument("--trials", type=int)
    p.add_argument("--orderings", help="identity | random:K | subset-first:a,b,.. | all-subset-first")
    p.add_argument("--M", type=int)
    p.add_argument("--attempts", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--out", help="write the result JSON here")
    p.add_argument("--timing", action="store_true", help="include wall times in the JSON")
    p.add_argument("--no-reps", action="store_true", help="do not store representations in the JSON")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("lemmas", help="ordering checks over a random corpus")
    p.add_argument("--in", dest="infile")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sequences", action="store_true", help="include every exchange sequence")
    p.set_defaults(func=cmd_lemmas)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, GraphFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
