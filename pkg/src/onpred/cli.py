"""Command-line interface.

Subcommands: ``eval`` (prediction-specific metrics over a single prediction
or a grid), ``frontier`` (brute-force scans with the chosen algorithm's
point flagged), and the three experiment harnesses ``ski-synthetic``,
``dpm``, and ``vix``.  Records go to stdout (or ``--out``) as JSON lines or
CSV carrying identical values field for field; given the same flags, input
files, and seed, output is byte-identical across runs.

Exit codes: 0 success, 1 runtime/data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Callable, Sequence

import numpy as np

from . import dsr, oms, oracles, rsr, scheduling
from .experiments import dpm as dpm_mod
from .experiments import synthetic, vix
from .oms import OmsConfig, ThresholdPolicy

DEFAULT_GRID = 200


def _emit(records: list[dict], fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        text = "\n".join(json.dumps(r, sort_keys=True) for r in records) + "\n"
    else:
        fields = sorted({k for r in records for k in r})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        text = buf.getvalue()
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


_FLAG_DESTS = {"lambda": "lam", "gamma-bar": "gamma_bar", "gamma-grid": "gamma_grid"}


def _require(args: argparse.Namespace, parser: argparse.ArgumentParser, *names: str) -> None:
    for name in names:
        dest = _FLAG_DESTS.get(name, name.replace("-", "_"))
        if getattr(args, dest, None) is None:
            parser.error(f"--{name} is required for this problem/algorithm")


def _prediction_grid(args: argparse.Namespace, lo: float, hi: float,
                     integral: bool) -> list:
    if args.y is not None:
        return [int(args.y) if integral else float(args.y)]
    points = np.linspace(lo, hi, args.grid)
    if integral:
        return sorted({int(round(v)) for v in points})
    return [float(v) for v in points]


# ---------------------------------------------------------------- eval

def _dsr_rule(args, parser) -> Callable[[int], int]:
    cfg = dsr.DsrConfig(args.b)
    if args.algorithm == "classic":
        return lambda y: cfg.b
    _require(args, parser, "lambda")
    if args.algorithm == "kd":
        return lambda y: dsr.kd_decision(y, cfg, args.lam)
    if args.algorithm == "pdsr":
        return lambda y: dsr.pdsr_decision(y, cfg, args.lam)
    parser.error(f"--algorithm {args.algorithm} is not a dsr algorithm")


def _rsr_dist(args, parser) -> Callable[[int], rsr.RentBuyDistribution]:
    cfg = dsr.DsrConfig(args.b)
    if args.algorithm == "karlin":
        fixed = rsr.karlin_distribution(cfg)
        return lambda y: fixed
    if args.algorithm == "kr":
        _require(args, parser, "lambda")
        return lambda y: rsr.kr_distribution(y, cfg, args.lam)
    if args.algorithm == "prsr":
        _require(args, parser, "gamma-bar")
        return lambda y: rsr.prsr(y, cfg, args.gamma_bar)
    if args.algorithm == "meta":
        _require(args, parser, "gamma-bar")
        return lambda y: rsr.meta_rsr(y, cfg, args.gamma_bar)[0]
    parser.error(f"--algorithm {args.algorithm} is not an rsr algorithm")


def _oms_policy(args, parser) -> Callable[[float], ThresholdPolicy]:
    cfg = OmsConfig(args.L, args.U)
    if args.algorithm == "elyaniv":
        return lambda y: oms.elyaniv_threshold(cfg)
    if args.algorithm == "blind":
        return lambda y: ThresholdPolicy(phi=min(max(y, cfg.L), cfg.U),
                                         provenance=oms.Provenance.CUSTOM)
    _require(args, parser, "lambda")
    if args.algorithm == "sun":
        return lambda y: oms.sun_threshold(y, cfg, args.lam)
    if args.algorithm == "pst":
        return lambda y: oms.pst_threshold(y, cfg, args.lam)
    if args.algorithm == "eps-pst":
        _require(args, parser, "eps")
        return lambda y: oms.eps_pst_threshold(y, cfg, args.lam, args.eps)
    parser.error(f"--algorithm {args.algorithm} is not an oms algorithm")


def cmd_eval(args, parser) -> list[dict]:
    base = {"command": "eval", "problem": args.problem, "algorithm": args.algorithm}
    if args.problem == "dsr":
        _require(args, parser, "b")
        cfg = dsr.DsrConfig(args.b)
        rule = _dsr_rule(args, parser)
        base.update({"b": args.b, "lambda": args.lam})
        records = []
        for y in _prediction_grid(args, 1, 3 * args.b, integral=True):
            m = dsr.dsr_metrics(rule(y), y, cfg)
            records.append({**base, "y": y, "beta_y": m.beta_y, "gamma_y": m.gamma_y})
        return records
    if args.problem == "rsr":
        _require(args, parser, "b")
        cfg = dsr.DsrConfig(args.b)
        dist_for = _rsr_dist(args, parser)
        base.update({"b": args.b, "lambda": args.lam, "gamma_bar": args.gamma_bar})
        records = []
        for y in _prediction_grid(args, 1, 3 * args.b, integral=True):
            m = rsr.rsr_metrics(dist_for(y), y, cfg)
            records.append({**base, "y": y, "beta_y": m.beta_y, "gamma_y": m.gamma_y})
        return records
    if args.problem == "oms":
        _require(args, parser, "L", "U")
        cfg = OmsConfig(args.L, args.U)
        policy_for = _oms_policy(args, parser)
        base.update({"L": args.L, "U": args.U, "lambda": args.lam, "eps": args.eps})
        records = []
        for y in _prediction_grid(args, cfg.L, cfg.U, integral=False):
            policy = policy_for(y)
            m = oms.oms_metrics(policy.phi, y, cfg)
            rec = {**base, "y": y, "phi": policy.phi,
                   "beta_y": m.beta_y, "gamma_y": m.gamma_y}
            if args.eps is not None:
                rec["beta_eps_y"] = oms.eps_consistency(policy.phi, y, args.eps, cfg)
            records.append(rec)
        return records
    # sched2
    _require(args, parser, "y1", "y2", "lambda")
    m = scheduling.two_stage_metrics(scheduling.JobPairPrediction(args.y1, args.y2), args.lam)
    return [{**base, "y1": args.y1, "y2": args.y2, "lambda": args.lam,
             "beta_y": m.beta_y, "gamma_y": m.gamma_y}]


# ---------------------------------------------------------------- frontier

def cmd_frontier(args, parser) -> list[dict]:
    base = {"command": "frontier", "problem": args.problem}
    if args.problem == "dsr":
        _require(args, parser, "b", "y")
        cfg = dsr.DsrConfig(args.b)
        scan = oracles.dsr_frontier(int(args.y), cfg)
        tol = oracles.CLOSED_FORM_TOL
        point = None
        if args.algorithm:
            rule = _dsr_rule(args, parser)
            point = dsr.dsr_metrics(rule(int(args.y)), int(args.y), cfg)
    elif args.problem == "rsr":
        _require(args, parser, "b", "y", "gamma-grid")
        cfg = dsr.DsrConfig(args.b)
        grid = [float(v) for v in args.gamma_grid.split(",")]
        scan = oracles.rsr_frontier(int(args.y), cfg, grid)
        tol = oracles.LP_TOL
        point = None
        if args.algorithm:
            dist_for = _rsr_dist(args, parser)
            point = rsr.rsr_metrics(dist_for(int(args.y)), int(args.y), cfg)
    elif args.problem == "oms":
        _require(args, parser, "L", "U", "y")
        cfg = OmsConfig(args.L, args.U)
        extra = []
        point = None
        if args.algorithm:
            policy = _oms_policy(args, parser)(float(args.y))
            extra = [policy.phi]
            point = oms.oms_metrics(policy.phi, float(args.y), cfg)
        scan = oracles.oms_frontier(float(args.y), cfg, args.grid, eps=args.eps,
                                    extra_candidates=extra)
        tol = oracles.CLOSED_FORM_TOL
    else:
        parser.error("frontier supports problems dsr, rsr, and oms")
    records = []
    front_set = {(p.beta_y, p.gamma_y) for p in scan.front}
    for decision, metrics in scan.points:
        records.append({**base, "y": args.y, "decision": decision,
                        "beta_y": metrics.beta_y, "gamma_y": metrics.gamma_y,
                        "on_front": (metrics.beta_y, metrics.gamma_y) in front_set})
    if point is not None:
        records.append({**base, "y": args.y, "decision": f"algorithm:{args.algorithm}",
                        "beta_y": point.beta_y, "gamma_y": point.gamma_y,
                        "on_front": oracles.verify_nondominated(point, scan, tol)})
    return records


# ---------------------------------------------------------------- experiments

def cmd_ski_synthetic(args, parser) -> list[dict]:
    cfg = synthetic.SyntheticSkiConfig(p=args.p, seed=args.seed, b=args.b,
                                       sigma=args.sigma, trials=args.trials)
    ski = dsr.DsrConfig(args.b)
    suite = synthetic.standard_algorithm_suite(
        ski, lam=args.lam, gamma_bar=args.gamma_bar, kr_lam=args.kr_lambda)
    instances = synthetic.gen_synthetic_ski(cfg)
    summary = synthetic.run_ski_experiment(instances, suite, cfg)
    print(f"ski-synthetic: b={args.b} p={args.p} trials={args.trials} seed={args.seed}",
          file=sys.stderr)
    return [
        {"command": "ski-synthetic", "algorithm": name, "p": args.p, "b": args.b,
         "sigma": args.sigma, "trials": args.trials, "seed": args.seed,
         "lambda": args.lam, "gamma_bar": args.gamma_bar, "kr_lambda": args.kr_lambda,
         "mean_cr": s.mean_ratio, "std_error": s.std_error}
        for name, s in sorted(summary.items())
    ]


def cmd_dpm(args, parser) -> list[dict]:
    trace = dpm_mod.load_idle_intervals(args.trace, scale=args.scale)
    table = dpm_mod.load_power_states(args.states)
    factories = {
        "karlin": lambda pred: dpm_mod.karlin_policy(),
        "blind": dpm_mod.blind_trust_policy,
        "kr": lambda pred: dpm_mod.kr_policy(pred, args.kr_lambda),
        "prsr": lambda pred: dpm_mod.prsr_policy(pred, args.gamma_bar),
    }
    means = dpm_mod.run_dpm_experiment(trace, table, factories, seed=args.seed,
                                       noise_sigma=args.noise_sigma,
                                       samples_per_interval=args.samples)
    print(f"dpm: {len(trace.intervals)} intervals, {len(table.states)} states, seed={args.seed}",
          file=sys.stderr)
    return [
        {"command": "dpm", "algorithm": name, "trace": str(args.trace),
         "states": str(args.states), "scale": args.scale, "seed": args.seed,
         "noise_sigma": args.noise_sigma, "samples": args.samples,
         "gamma_bar": args.gamma_bar, "kr_lambda": args.kr_lambda, "mean_cr": value}
        for name, value in sorted(means.items())
    ]


def cmd_vix(args, parser) -> list[dict]:
    rounds, low, high = vix.load_vix_csv(args.data)
    cfg = OmsConfig(low, high)
    algorithms: dict[str, vix.PolicyRule] = {
        "blind": lambda y: ThresholdPolicy(phi=min(max(y, cfg.L), cfg.U),
                                           provenance=oms.Provenance.CUSTOM),
        "elyaniv": lambda y: oms.elyaniv_threshold(cfg),
        "sun": lambda y: oms.sun_threshold(y, cfg, args.lam),
        "pst": lambda y: oms.pst_threshold(y, cfg, args.lam),
        "eps-pst": lambda y: oms.eps_pst_threshold(y, cfg, args.lam, args.eps),
    }
    ratios = vix.run_vix(rounds, algorithms, args.error_level, cfg)
    n_rounds = len(rounds) - 1
    print(f"vix: {n_rounds} trading rounds, L={low:.4g}, U={high:.4g}", file=sys.stderr)
    records = []
    for name in sorted(ratios):
        for idx, value in enumerate(ratios[name], start=1):
            records.append({"command": "vix", "algorithm": name, "round": idx,
                            "error_level": args.error_level, "lambda": args.lam,
                            "eps": args.eps, "L": low, "U": high,
                            "cumulative_ratio": value})
    return records


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onpred",
        description="Learning-augmented online algorithms with prediction-specific guarantees")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        p.add_argument("--output", choices=["json", "csv"], default="json")
        p.add_argument("--out", dest="out_path", default=None,
                       help="write records to this path instead of stdout")

    p_eval = sub.add_parser("eval", help="prediction-specific metrics")
    p_eval.add_argument("--problem", required=True, choices=["dsr", "rsr", "oms", "sched2"])
    p_eval.add_argument("--algorithm", required=True)
    p_eval.add_argument("--b", type=int, default=None)
    p_eval.add_argument("--L", type=float, default=None)
    p_eval.add_argument("--U", type=float, default=None)
    p_eval.add_argument("--lambda", dest="lam", type=float, default=None)
    p_eval.add_argument("--gamma-bar", dest="gamma_bar", type=float, default=None)
    p_eval.add_argument("--eps", type=float, default=None)
    p_eval.add_argument("--y", type=float, default=None)
    p_eval.add_argument("--y1", type=float, default=None)
    p_eval.add_argument("--y2", type=float, default=None)
    p_eval.add_argument("--grid", type=int, default=DEFAULT_GRID)
    add_output_flags(p_eval)

    p_front = sub.add_parser("frontier", help="brute-force frontier scans")
    p_front.add_argument("--problem", required=True, choices=["dsr", "rsr", "oms"])
    p_front.add_argument("--algorithm", default=None)
    p_front.add_argument("--b", type=int, default=None)
    p_front.add_argument("--L", type=float, default=None)
    p_front.add_argument("--U", type=float, default=None)
    p_front.add_argument("--lambda", dest="lam", type=float, default=None)
    p_front.add_argument("--gamma-bar", dest="gamma_bar", type=float, default=None)
    p_front.add_argument("--gamma-grid", dest="gamma_grid", default=None,
                         help="comma-separated robustness budgets (rsr)")
    p_front.add_argument("--eps", type=float, default=None)
    p_front.add_argument("--y", type=float, default=None)
    p_front.add_argument("--grid", type=int, default=1000)
    add_output_flags(p_front)

    p_ski = sub.add_parser("ski-synthetic", help="synthetic rent-or-buy study")
    p_ski.add_argument("--p", type=float, required=True)
    p_ski.add_argument("--seed", type=int, required=True)
    p_ski.add_argument("--trials", type=int, default=10000)
    p_ski.add_argument("--b", type=int, default=100)
    p_ski.add_argument("--sigma", type=float, default=500.0)
    p_ski.add_argument("--lambda", dest="lam", type=float, default=0.5)
    p_ski.add_argument("--gamma-bar", dest="gamma_bar", type=float, default=3.0)
    p_ski.add_argument("--kr-lambda", dest="kr_lambda", type=float, default=math.log(1.5))
    add_output_flags(p_ski)

    p_dpm = sub.add_parser("dpm", help="idle-interval power management study")
    p_dpm.add_argument("--trace", required=True)
    p_dpm.add_argument("--states", required=True)
    p_dpm.add_argument("--scale", type=float, default=1.0)
    p_dpm.add_argument("--seed", type=int, default=0)
    p_dpm.add_argument("--samples", type=int, default=20)
    p_dpm.add_argument("--noise-sigma", dest="noise_sigma", type=float, default=0.0)
    p_dpm.add_argument("--gamma-bar", dest="gamma_bar", type=float, default=3.0)
    p_dpm.add_argument("--kr-lambda", dest="kr_lambda", type=float, default=math.log(1.5))
    add_output_flags(p_dpm)

    p_vix = sub.add_parser("vix", help="monthly one-max-search trading study")
    p_vix.add_argument("--data", required=True)
    p_vix.add_argument("--error-level", dest="error_level", type=float, default=1.0)
    p_vix.add_argument("--lambda", dest="lam", type=float, default=0.3)
    p_vix.add_argument("--eps", type=float, default=1.8)
    add_output_flags(p_vix)

    return parser


_HANDLERS = {
    "eval": cmd_eval,
    "frontier": cmd_frontier,
    "ski-synthetic": cmd_ski_synthetic,
    "dpm": cmd_dpm,
    "vix": cmd_vix,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        records = _HANDLERS[args.command](args, parser)
    except (OSError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(records, args.output, args.out_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
