"""
Command Line Module
Argument parsing and dispatch for every toolkit command; payloads go to
stdout, logs and counterexamples to stderr
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time

import pandas as pd

from modules import config
from modules.asymptotics import (
    Normalization,
    conjectured_lower_bound,
    entropy_proxy_cycle,
    fg_bound,
    gh,
    lmc_bound,
    perfect_matching_lower_bounds,
    sweep_cycle,
    sweep_expectation,
    sweep_gh,
    sweep_lmc,
)
from modules.enumeration import enumerate_omega, enumerate_regular_bipartite, enumerate_two_regular, extremum_scan
from modules.errors import DomainError, MatchingToolError
from modules.expectations import (
    RandomModel,
    e1_bounds,
    exhaustive_average,
    expected_value,
    monte_carlo_mean,
)
from modules.families import OmegaFlavor, TwoRegularFlavor, describe, parse_family, realize
from modules.graph_core import canonical_code, format_graph_text, read_graph_file
from modules.matchpoly import compare, matching_polynomial, matching_polynomial_bruteforce
from modules.reports import RunReport, format_fraction, write_csv, write_json
from modules.smallm import SmallMInput, a4_max, phi_closed
from modules.verification import (
    verify_identities,
    verify_lmc,
    verify_multigraph_maxima,
    verify_omega_extremal,
    verify_poisson,
    verify_small_m,
    verify_two_regular_extremal,
    verify_umc,
)


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2


def load_graph(target, multigraph=False):
    """A graph file path, or else a family expression."""
    if os.path.isfile(target):
        return read_graph_file(target)
    return realize(parse_family(target, multigraph=multigraph))


def _graph_rows(graphs):
    rows = []
    for g in graphs:
        rows.append({
            "code": canonical_code(g).decode("ascii"),
            "family": describe(g),
            "polynomial": str(matching_polynomial(g)),
        })
    return rows


def _listing(graphs, csv_path):
    rows = _graph_rows(graphs)
    for row in rows:
        print(f"{row['family'] or row['code']}\t{row['polynomial']}")
    if csv_path:
        write_csv(pd.DataFrame(rows, columns=["code", "family", "polynomial"]), csv_path)
    return {"count": len(rows), "graphs": rows}


# ----------------------------------------------------------------------
# Handlers: each returns (payload, exit code)
# ----------------------------------------------------------------------

def cmd_poly(args):
    g = load_graph(args.target, args.multi)
    poly = matching_polynomial_bruteforce(g) if args.bruteforce else matching_polynomial(g)
    print(poly)
    return {"polynomial": str(poly), "code": canonical_code(g).decode("ascii"), "family": describe(g)}, EXIT_OK


def cmd_compare(args):
    f = matching_polynomial(load_graph(args.first, args.multi))
    g = matching_polynomial(load_graph(args.second, args.multi))
    relation = compare(f, g)
    print(relation.value)
    return {"relation": relation.value, "first": str(f), "second": str(g)}, EXIT_OK


def cmd_enum_omega(args):
    return _listing(enumerate_omega(args.n, args.k, args.flavor), args.csv), EXIT_OK


def cmd_enum_regular(args):
    graphs = enumerate_regular_bipartite(args.two_n, args.r, multi=args.multi, connected_only=args.connected)
    return _listing(list(graphs), args.csv), EXIT_OK


def cmd_scan(args):
    if args.scan_kind == "omega":
        graphs = enumerate_omega(args.n, args.k, args.flavor)
    elif args.scan_kind == "regular":
        graphs = enumerate_regular_bipartite(args.two_n, args.r, multi=args.multi, connected_only=args.connected)
    else:
        graphs = enumerate_two_regular(args.n, args.flavor)
    report = extremum_scan(graphs, args.threads)
    frame = report.to_frame()
    print(frame.to_string(index=False))
    name = lambda codes: ", ".join(report.label(c) or c.decode("ascii") for c in codes) or "none"
    print(f"coefficientwise min: {name(report.coefficientwise_min)}")
    print(f"coefficientwise max: {name(report.coefficientwise_max)}")
    payload = report.to_dict()
    if args.json:
        write_json(payload, args.json)
    if args.csv:
        write_csv(frame, args.csv)
    return payload, EXIT_OK


VERIFIERS = {
    "lmc": lambda a: verify_lmc(a.two_n_max, a.r, multi=a.multi, threads=a.threads),
    "umc": lambda a: verify_umc(a.two_n, a.r, threads=a.threads),
    "omega-extremal": lambda a: verify_omega_extremal(a.n_max, threads=a.threads),
    "2reg-extremal": lambda a: verify_two_regular_extremal(a.n_max, threads=a.threads),
    "identities": lambda a: verify_identities(a.n_max),
    "smallm": lambda a: verify_small_m(a.two_n_max, a.r, threads=a.threads),
    "multi-max": lambda a: verify_multigraph_maxima(a.n_max, a.r, threads=a.threads),
    "poisson": lambda a: verify_poisson(a.n, a.r, a.samples, a.seed),
}


def cmd_verify(args):
    result = VERIFIERS[args.check](args)
    status = "PASS" if result.passed else "FAIL"
    print(f"{result.name}: {status} ({result.checked} checks, {result.failure_count} failures)")
    for failure in result.failures:
        print(f"[COUNTEREXAMPLE] {failure.check}: {failure.detail}", file=sys.stderr)
        if failure.graph is not None:
            print(format_graph_text(failure.graph), end="", file=sys.stderr)
    return result.to_dict(), EXIT_OK if result.passed else EXIT_COUNTEREXAMPLE


def cmd_expect(args):
    # 1. Exact value
    model = RandomModel(args.model)
    value = expected_value(model, args.m, args.n, args.r)
    print(f"E = {format_fraction(value)}")
    payload = {"model": model.value, "m": args.m, "n": args.n, "r": args.r, "exact": value, "decimal": f"{float(value):.17g}"}

    # 2. Bounds, only where they hold
    if model is RandomModel.PERMUTATION_SUM and 2 <= args.r <= args.m:
        lower, upper = e1_bounds(args.m, args.n, args.r)
        print(f"bounds: [{format_fraction(lower)}, {format_fraction(upper)}]")
        payload["bounds"] = [lower, upper]

    # 3. Cross-checks
    if args.exhaustive:
        average = exhaustive_average(model, args.n, args.r)[args.m]
        print(f"exhaustive average = {format_fraction(average)}")
        payload["exhaustive"] = average
        payload["exhaustive_matches"] = average == value
    if args.mc:
        estimate = monte_carlo_mean(model, args.m, args.n, args.r, args.mc, args.seed)
        print(f"Monte Carlo mean = {estimate.mean:.6f} +- {estimate.stderr:.6f} ({estimate.samples} samples)")
        payload["monte_carlo"] = {"mean": estimate.mean, "stderr": estimate.stderr, "samples": estimate.samples}
    return payload, EXIT_OK


def _log_payload(name, value):
    print(f"{name}: log = {value.value:.17g}")
    payload = {"log": value.value, "zero": value.zero, "proven": value.proven}
    if value.exact is not None:
        payload["exact"] = value.exact
        print(f"{name}: exact = {format_fraction(value.exact)}")
    return payload


def cmd_bound(args):
    kind = args.bound
    if kind == "gh":
        payload = _log_payload("gh", gh(args.r, args.p))
    elif kind == "lmc":
        payload = _log_payload("lmc", lmc_bound(args.n, args.r, args.m))
    elif kind in ("schrijver", "gurvits"):
        bounds = perfect_matching_lower_bounds(args.n, args.r)
        payload = _log_payload(kind, getattr(bounds, kind))
    elif kind == "fg":
        payload = _log_payload("fg", fg_bound(args.r, args.s, args.p))
    elif kind == "conj":
        payload = _log_payload("conj", conjectured_lower_bound(args.n, args.r, args.m))
    else:
        normalization = Normalization.PER_SIDE if args.per_side else Normalization.PER_VERTEX
        payload = _log_payload("cycle", entropy_proxy_cycle(args.n, args.m, normalization))
    payload["bound"] = kind
    return payload, EXIT_OK


def cmd_smallm(args):
    params = SmallMInput(args.n, args.r, args.a4)
    value = phi_closed(params, args.m)
    print(value)
    bound = a4_max(args.n, args.r)
    return {"phi": str(value), "m": args.m, "a4_max": bound.value, "a4_max_exact": bound.exact}, EXIT_OK


def cmd_sweep(args):
    if args.quantity == "gh":
        frame = sweep_gh(args.r, args.points or 101)
    else:
        if args.n is None:
            raise DomainError(f"sweep {args.quantity} needs --n")
        if args.quantity == "lmc":
            frame = sweep_lmc(args.r, args.n, args.points)
        elif args.quantity == "cycle":
            frame = sweep_cycle(args.n, args.points)
        else:
            frame = sweep_expectation(args.quantity, args.r, args.n, args.points)
    if args.csv:
        write_csv(frame, args.csv)
    else:
        print(frame.to_csv(index=False), end="")
    return {"rows": len(frame), "quantity": args.quantity}, EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        logger.error(message)
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    parser = _Parser(prog="main.py", description="Matching polynomials of regular bipartite graphs")
    parser.add_argument("--threads", type=int, default=config.DEFAULT_THREADS)
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    parser.add_argument("--log-level", default=config.LOG_LEVEL)
    parser.add_argument("--report", help="write the RunReport JSON here")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = commands.add_parser("poly", help="matching polynomial of a family or graph file")
    p.add_argument("target")
    p.add_argument("--multi", action="store_true")
    p.add_argument("--bruteforce", action="store_true")
    p.set_defaults(handler=cmd_poly)

    p = commands.add_parser("compare", help="coefficientwise order of two polynomials")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--multi", action="store_true")
    p.set_defaults(handler=cmd_compare)

    p = commands.add_parser("enum-omega")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("flavor", choices=[f.value for f in OmegaFlavor])
    p.add_argument("--csv")
    p.set_defaults(handler=cmd_enum_omega)

    p = commands.add_parser("enum-regular")
    p.add_argument("two_n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--multi", action="store_true")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--csv")
    p.set_defaults(handler=cmd_enum_regular)

    scan = commands.add_parser("scan", help="per-m extrema over an enumerated class")
    kinds = scan.add_subparsers(dest="scan_kind", required=True, parser_class=_Parser)
    p = kinds.add_parser("omega")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("flavor", choices=[f.value for f in OmegaFlavor])
    p = kinds.add_parser("regular")
    p.add_argument("two_n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--multi", action="store_true")
    p.add_argument("--connected", action="store_true")
    p = kinds.add_parser("two-regular")
    p.add_argument("n", type=int)
    p.add_argument("flavor", choices=[f.value for f in TwoRegularFlavor])
    for p in kinds.choices.values():
        p.add_argument("--json")
        p.add_argument("--csv")
        p.set_defaults(handler=cmd_scan)

    verify = commands.add_parser("verify", help="exhaustive verification runs")
    checks = verify.add_subparsers(dest="check", required=True, parser_class=_Parser)
    p = checks.add_parser("lmc")
    p.add_argument("two_n_max", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--multi", action="store_true")
    p = checks.add_parser("umc")
    p.add_argument("two_n", type=int)
    p.add_argument("r", type=int)
    for name in ("omega-extremal", "2reg-extremal", "identities"):
        checks.add_parser(name).add_argument("n_max", type=int)
    p = checks.add_parser("smallm")
    p.add_argument("two_n_max", type=int)
    p.add_argument("r", type=int)
    p = checks.add_parser("multi-max")
    p.add_argument("n_max", type=int)
    p.add_argument("r", type=int)
    p = checks.add_parser("poisson")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--samples", type=int, default=10000)
    for p in checks.choices.values():
        p.set_defaults(handler=cmd_verify)

    p = commands.add_parser("expect", help="exact expected matching counts")
    p.add_argument("model", choices=[m.value for m in RandomModel])
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--mc", type=int, metavar="SAMPLES")
    p.add_argument("--exhaustive", action="store_true")
    # also accepted after the command; falls back to the global --seed
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_expect)

    bound = commands.add_parser("bound", help="evaluate a bound in log space")
    bounds = bound.add_subparsers(dest="bound", required=True, parser_class=_Parser)
    p = bounds.add_parser("gh")
    p.add_argument("r", type=int)
    p.add_argument("p", type=float)
    for name in ("lmc", "conj"):
        p = bounds.add_parser(name)
        p.add_argument("n", type=int)
        p.add_argument("r", type=int)
        p.add_argument("m", type=int)
    for name in ("schrijver", "gurvits"):
        p = bounds.add_parser(name)
        p.add_argument("n", type=int)
        p.add_argument("r", type=int)
    p = bounds.add_parser("fg")
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.add_argument("p", type=float)
    p = bounds.add_parser("cycle")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--per-side", action="store_true")
    for p in bounds.choices.values():
        p.set_defaults(handler=cmd_bound)

    p = commands.add_parser("smallm", help="phi(G, m) for m <= 4 from n, r and a4")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--a4", type=int)
    p.set_defaults(handler=cmd_smallm)

    p = commands.add_parser("sweep", help="CSV sweep of a growth quantity")
    p.add_argument("quantity", choices=["gh", "lmc", "e1", "e2", "cycle"])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--points", type=int)
    p.add_argument("--csv")
    p.set_defaults(handler=cmd_sweep)
    return parser


def _sampled(args):
    if args.command == "expect":
        return bool(args.mc)
    return args.command == "verify" and args.check == "poisson"


def run(argv=None):
    """
    Parse and execute one command

    Args:
        argv: Argument list, defaults to sys.argv[1:]

    Returns:
        Process exit code: 0 success, 1 counterexample, 2 usage or domain error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    config.configure_logging(args.log_level.upper())

    parameters = {
        key: value for key, value in vars(args).items()
        if key not in ("handler", "report", "log_level", "threads", "seed")
    }
    started = time.perf_counter()
    try:
        payload, code = args.handler(args)
    except DomainError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except MatchingToolError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE

    if args.report:
        report = RunReport(
            command=args.command,
            parameters=parameters,
            payload=payload,
            seed=args.seed if _sampled(args) else None,
            wall_time=time.perf_counter() - started,
        )
        report.write(args.report)
    return code
