"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, _backend
from . import rng as rngmod
from .analysis import DEFAULT_STEP, DEFAULT_T_END, DEFAULT_TOL, critical_alpha, integrate_bsc, integrate_buc, \
    positive_profile
from .choice import GenConfig, generate, reduce_formula
from .exact import Status, dpll_sat, two_sat_scc
from .formula import DimacsError, emit_dimacs, model_line, parse_dimacs
from .heuristics import ALGORITHMS, run_heuristic
from .sweep import ENGINES, SweepConfig, estimate_transition, run_sweep, write_outputs
from .thresholds import (
    GAMMA3,
    choice_two_sat_alpha,
    choice_two_sat_alpha_numeric,
    gamma,
    min_choices_to_lower,
    optimal_a_closed_form,
    optimal_a_numeric,
    two_sat_threshold,
)

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config {path}: {e}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    return cfg


def _merge(args, keys: dict[str, str]) -> dict:
    """Config file values overridden by explicit flags; ``keys`` maps field to attribute."""
    merged = _load_config(args.config)
    for fld, attr in keys.items():
        val = getattr(args, attr, None)
        if val is not None:
            merged[fld] = val
    return merged


def _read_formula(path: str):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return parse_dimacs(text)


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


# -- subcommands -----------------------------------------------------------

def cmd_gen(args) -> int:
    d = _merge(args, {"n": "n", "k": "k", "t": "choices", "rule": "rule", "seed": "seed",
                      "m": "m", "alpha": "alpha"})
    try:
        cfg = GenConfig.from_dict(d)
    except (TypeError, ValueError) as e:
        raise UsageError(str(e)) from None
    f = generate(cfg)
    _write(emit_dimacs(f, [f"satchoice {__version__} gen {cfg.to_json()}"]), args.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = _read_formula(args.input)
    if f.m and f.widths.min() < args.ell:
        raise UsageError(f"every clause needs at least ell={args.ell} literals")
    g = reduce_formula(f, args.ell, rngmod.stream(args.seed, rngmod.PURPOSE_REDUCE))
    _write(emit_dimacs(g, [f"satchoice {__version__} reduce ell={args.ell} seed={args.seed}"]), args.out)
    return EXIT_OK


def cmd_heuristic(args) -> int:
    f = _read_formula(args.input)
    res = run_heuristic(f, args.engine, rngmod.stream(args.seed, rngmod.PURPOSE_ENGINE),
                        trace=args.trace is not None, trace_every=args.trace_every)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(res.trace_csv())
    _print_json({"algorithm": res.algorithm, "n": f.n, "m": f.m, "outcome": res.outcome.value,
                 "steps": res.step, "seed": args.seed})
    if res.success:
        print(model_line(res.assignment, f.n))
    return EXIT_OK


_SOLVER_STATUS = {Status.SAT: "SATISFIABLE", Status.UNSAT: "UNSATISFIABLE", Status.BUDGET_EXHAUSTED: "UNKNOWN"}


def cmd_solve(args) -> int:
    f = _read_formula(args.input)
    if args.engine == "2sat":
        if f.m and f.widths.max() > 2:
            raise UsageError("engine 2sat needs clauses of width <= 2")
        res = two_sat_scc(f)
    else:
        res = dpll_sat(f, max_nodes=args.max_nodes)
    print(f"s {_SOLVER_STATUS[res.status]}")
    if res.sat:
        print(model_line(res.assignment, f.n))
    return EXIT_OK


def cmd_analyze_critical(args) -> int:
    d = _merge(args, {"model": "model", "k": "k", "t": "choices", "ell": "ell", "tol": "tol",
                      "step": "step"})
    try:
        model, k, t = d["model"], int(d["k"]), int(d.get("t", 2))
    except KeyError as e:
        raise UsageError(f"missing {e.args[0]}") from None
    try:
        res = critical_alpha(model, k, t, d.get("ell"), tol=float(d.get("tol", DEFAULT_TOL)),
                             step=float(d.get("step", DEFAULT_STEP)))
    except ValueError as e:
        raise UsageError(str(e)) from None
    rec = res.to_record()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    _print_json(rec)
    return EXIT_OK


def cmd_analyze_trajectory(args) -> int:
    model = args.model
    ell = args.ell if args.ell is not None else (3 if model == "bsc" else min(args.k, 3))
    try:
        profile = positive_profile(args.k, args.choices, ell).p
        if model == "bsc":
            if ell != 3:
                raise ValueError("BSC is analysed on 3-clauses: ell must be 3")
            tr = integrate_bsc(profile, args.alpha, args.step, args.t_end, args.record_every)
        else:
            tr = integrate_buc(ell, profile, args.alpha, args.step, args.t_end, args.record_every)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _write(tr.to_csv(), args.out)
    meta = {"model": model, "k": args.k, "t": args.choices, "ell": ell, "alpha": args.alpha,
            "step": args.step, "t_end": args.t_end, "max_lambda": tr.max_lambda,
            "critical_t": tr.critical_t, "version": __version__, "backend": _backend.BACKEND}
    if args.out:
        with open(args.out + ".json", "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
    else:
        print(json.dumps(meta, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def cmd_calc_two_sat(args) -> int:
    if args.p is not None:
        try:
            _print_json({"p": args.p, "alpha_star": two_sat_threshold(*args.p)})
        except ValueError as e:
            raise UsageError(str(e)) from None
        return EXIT_OK
    if args.k is None:
        raise UsageError("give --p P0 P1 P2 or --k (with --choices)")
    try:
        closed = choice_two_sat_alpha(args.k, args.choices)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _print_json({"k": args.k, "t": args.choices, "closed_form": closed,
                 "numeric": choice_two_sat_alpha_numeric(args.k, args.choices)})
    return EXIT_OK


def cmd_calc_gamma(args) -> int:
    try:
        if args.a is not None:
            _print_json({"k": args.k, "t": args.choices, "a": args.a, "gamma": gamma(args.a, args.k, args.choices)})
            return EXIT_OK
        a_num, g_num = optimal_a_numeric(args.k, args.choices)
    except ValueError as e:
        raise UsageError(str(e)) from None
    rec = {"k": args.k, "t": args.choices, "numeric": {"a": a_num, "gamma": g_num}}
    if args.choices == 2:
        a_cf, g_cf = optimal_a_closed_form(args.k)
        rec["closed_form"] = {"a": a_cf, "gamma": g_cf}
    _print_json(rec)
    return EXIT_OK


def cmd_calc_min_choices(args) -> int:
    try:
        t = min_choices_to_lower(args.k, args.gamma)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _print_json({"k": args.k, "gamma_k": args.gamma, "min_choices": t})
    return EXIT_OK


def cmd_sweep(args) -> int:
    d = _merge(args, {"k": "k", "t": "choices", "engine": "engine", "n": "n", "start": "start",
                      "stop": "stop", "step": "step", "trials": "trials", "seed": "seed",
                      "rule": "rule", "ell": "ell", "workers": "workers", "max_nodes": "max_nodes"})
    try:
        cfg = SweepConfig.from_dict(d)
    except (TypeError, ValueError) as e:
        raise UsageError(str(e)) from None
    res = run_sweep(cfg)
    if args.out:
        write_outputs(res, args.out)
    else:
        sys.stdout.write(res.to_csv())
    crossing = estimate_transition(res)
    print(f"transition: {'no crossing' if crossing is None else f'{crossing:.6g}'}", file=sys.stderr)
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def _choices_flag(p, default=None):
    p.add_argument("--choices", "--t", dest="choices", type=int, default=default,
                   help="candidates per step (t)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="satchoice", description="Achlioptas processes for random k-SAT.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a formula (DIMACS)")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--m", type=int)
    g.add_argument("--alpha", type=float)
    _choices_flag(p)
    p.add_argument("--rule", help="most-positive | subcube:<a> | uniform")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--config", help="JSON file with GenConfig fields")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="keep ell most positive literals per clause")
    p.add_argument("input", help="DIMACS file or - for stdin")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("heuristic", help="run uc, buc, sc or bsc on a formula")
    p.add_argument("input")
    p.add_argument("--engine", choices=sorted(ALGORITHMS), default="buc")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", metavar="CSV", help="write the census trace here")
    p.add_argument("--trace-every", type=int)
    p.set_defaults(func=cmd_heuristic)

    p = sub.add_parser("solve", help="decide a formula exactly")
    p.add_argument("input")
    p.add_argument("--engine", choices=["dpll", "2sat"], default="dpll")
    p.add_argument("--max-nodes", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="density ODE analysis")
    asub = p.add_subparsers(dest="analysis", required=True, parser_class=_Parser)
    q = asub.add_parser("critical", help="critical density by bisection (JSON record)")
    q.add_argument("--model", choices=["buc", "bsc"])
    q.add_argument("--k", type=int)
    _choices_flag(q)
    q.add_argument("--ell", type=int)
    q.add_argument("--tol", type=float)
    q.add_argument("--step", type=float)
    q.add_argument("--out")
    q.add_argument("--config")
    q.set_defaults(func=cmd_analyze_critical)
    q = asub.add_parser("trajectory", help="integrate the density system (CSV)")
    q.add_argument("--model", choices=["buc", "bsc"], default="buc")
    q.add_argument("--k", type=int, required=True)
    _choices_flag(q, 2)
    q.add_argument("--ell", type=int)
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--step", type=float, default=DEFAULT_STEP)
    q.add_argument("--t-end", type=float, default=DEFAULT_T_END)
    q.add_argument("--record-every", type=int, default=100)
    q.add_argument("--out")
    q.set_defaults(func=cmd_analyze_trajectory)

    p = sub.add_parser("calc", help="closed-form calculators")
    csub = p.add_subparsers(dest="calc", required=True, parser_class=_Parser)
    q = csub.add_parser("two-sat-threshold", help="biased 2-SAT critical density")
    q.add_argument("--p", type=float, nargs=3, metavar=("P0", "P1", "P2"))
    q.add_argument("--k", type=int)
    _choices_flag(q, 2)
    q.set_defaults(func=cmd_calc_two_sat)
    q = csub.add_parser("gamma", help="subcube amplification, or its maximum without --a")
    q.add_argument("--k", type=int, required=True)
    _choices_flag(q, 2)
    q.add_argument("--a", type=float)
    q.set_defaults(func=cmd_calc_gamma)
    q = csub.add_parser("min-choices", help="fewest choices whose amplification beats gamma")
    q.add_argument("--k", type=int, default=3)
    q.add_argument("--gamma", type=float, default=GAMMA3)
    q.set_defaults(func=cmd_calc_min_choices)

    p = sub.add_parser("sweep", help="Monte Carlo sweep over density (CSV)")
    p.add_argument("--k", type=int)
    _choices_flag(p)
    p.add_argument("--engine", choices=ENGINES)
    p.add_argument("--n", type=int)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--rule")
    p.add_argument("--ell", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--out", help="CSV path; a .json sidecar is written next to it")
    p.add_argument("--config", help="JSON file with SweepConfig fields")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"satchoice: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DimacsError, OSError, RuntimeError, ValueError) as e:
        print(f"satchoice: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
