"""``gnp`` command line entry point.

Exit codes: 0 on success, 1 when a verification suite fails, 2 on bad
usage (including invalid parameters and unreadable files).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..coding import PrueferCode, decode_tree_with_independent_set, encode_tree_with_independent_set
from ..errors import ParameterError, StructureError, ConstraintError
from ..graph import GnpParams, read_graph, sample_gnp
from ..moments import expected_Xk_exact, expected_Xk_log, second_moment_exact, window
from ..rational import fraction_to_str, parse_rational, probability
from ..solver import max_induced_forest
from .experiment import ExperimentConfig, emit_plot_data, report_to_csv, report_to_json, run_concentration
from .verify import SUITES, run_verify

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE = 0, 1, 2


def _rat(text: str):
    try:
        return parse_rational(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2^64)")
    return value


def _labels(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated labels, got {text!r}") from None


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _as_float(x):
    try:
        return float(x)
    except OverflowError:
        return None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_sample(args) -> int:
    g = sample_gnp(GnpParams(args.n, args.p, args.seed))
    _emit(g.to_text(), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.infile is not None:
        g = read_graph(args.infile)
    elif None not in (args.n, args.p, args.seed):
        g = sample_gnp(GnpParams(args.n, args.p, args.seed))
    else:
        raise ParameterError("give --in FILE or all of --n, --p, --seed")
    res = max_induced_forest(g, budget=args.budget, time_limit=args.time_limit, method=args.method)
    _emit(_dump({
        "n": g.n,
        "edges": g.num_edges,
        "F": res.size,
        "status": res.status,
        "witness": sorted(res.witness),
        "nodes": res.nodes_explored,
        "elapsed": round(res.elapsed, 6),
    }), None)
    return EXIT_OK


def cmd_window(args) -> int:
    w = window(args.n, args.p, args.eps)
    _emit(_dump({
        "n": w.n,
        "p": fraction_to_str(w.p),
        "eps": fraction_to_str(w.eps),
        "k_minus": w.k_minus,
        "k_plus": w.k_plus,
        "arg_minus": w.arg_minus,
        "arg_plus": w.arg_plus,
        "widened": w.widened,
        "np": w.np,
    }), None)
    return EXIT_OK


def cmd_moments(args) -> int:
    p = probability(args.p)
    out = {"n": args.n, "k": args.k, "p": fraction_to_str(p),
           "log_mean": expected_Xk_log(args.n, args.k, p)}
    if args.exact or args.second_moment:
        mean = expected_Xk_exact(args.n, args.k, p)
        if args.exact:
            out["mean"] = fraction_to_str(mean)
            out["mean_float"] = _as_float(mean)
        if args.second_moment:
            second = second_moment_exact(args.n, args.k, p)
            out["second_moment"] = fraction_to_str(second)
            out["second_moment_float"] = _as_float(second)
            out["variance_ratio"] = float((second - mean * mean) / (mean * mean))
    _emit(_dump(out), None)
    return EXIT_OK


def cmd_concentration(args) -> int:
    config = ExperimentConfig(
        n=args.n, p=args.p, eps=args.eps, samples=args.samples, master_seed=args.seed,
        solver_budget=args.budget, parallelism=args.jobs, output_path=None,
        output_format=args.format,
    )
    report = run_concentration(config)
    text = report_to_csv(report) if args.format == "csv" else report_to_json(report)
    _emit(text, args.out)
    if args.out is not None and not args.no_plot:
        out = Path(args.out)
        emit_plot_data(report, out.with_name(out.stem + ".hist.csv"))
        from .plotting import plot_concentration
        plot_concentration(report, out.with_name(out.stem + ".hist.png"))
    print(report.summary(), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verify(args.suite, args.max_n)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_codec(args) -> int:
    if args.action == "encode":
        tree = read_graph(args.infile)
        code = encode_tree_with_independent_set(tree, args.m)
        _emit(_dump({"n": code.n, "m": code.m, "a": list(code.a), "b": list(code.b)}), args.out)
    else:
        if args.n is None:
            raise ParameterError("decode needs --n")
        code = PrueferCode(args.n, args.m, tuple(args.a), tuple(args.b))
        _emit(decode_tree_with_independent_set(code).to_text(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gnp", description="Maximum induced forests in G(n, p).")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", help="draw a G(n, p) graph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=_rat, required=True)
    s.add_argument("--seed", type=_u64, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("solve", help="maximum induced forest of one graph")
    s.add_argument("--in", dest="infile")
    s.add_argument("--n", type=int)
    s.add_argument("--p", type=_rat)
    s.add_argument("--seed", type=_u64)
    s.add_argument("--budget", type=int, help="search node limit")
    s.add_argument("--time-limit", type=float)
    s.add_argument("--method", choices=("auto", "bipartite", "direct"), default="auto")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("window", help="concentration window endpoints")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=_rat, required=True)
    s.add_argument("--eps", type=_rat, required=True)
    s.set_defaults(func=cmd_window)

    s = sub.add_parser("moments", help="moments of the rooted forest count X_k")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--p", type=_rat, required=True)
    s.add_argument("--exact", action="store_true", help="also print E[X_k] as a fraction")
    s.add_argument("--second-moment", action="store_true")
    s.set_defaults(func=cmd_moments)

    s = sub.add_parser("concentration", help="Monte Carlo check of the window")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=_rat, required=True)
    s.add_argument("--eps", type=_rat, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=_u64, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--budget", type=int, help="search node limit per sample")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out", help="report file; histogram CSV and PNG are written beside it")
    s.add_argument("--no-plot", action="store_true")
    s.set_defaults(func=cmd_concentration)

    s = sub.add_parser("verify", help="run an oracle suite")
    s.add_argument("--suite", choices=tuple(SUITES), required=True)
    s.add_argument("--max-n", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("codec", help="independent-prefix Pruefer codes (1-based labels)")
    s.add_argument("action", choices=("encode", "decode"))
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--in", dest="infile", help="tree file to encode")
    s.add_argument("--n", type=int, help="tree size for decode")
    s.add_argument("--a", type=_labels, default=[], help="comma-separated labels")
    s.add_argument("--b", type=_labels, default=[], help="comma-separated labels")
    s.add_argument("--out")
    s.set_defaults(func=cmd_codec)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "codec" and args.action == "encode" and args.infile is None:
        parser.error("codec encode needs --in FILE")
    try:
        return args.func(args)
    except (ParameterError, StructureError, ConstraintError) as exc:
        print(f"gnp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"gnp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
