"""Command-line front end: solve, sweep, verify, and simulate.

Every command emits a machine-readable record (JSON object or CSV table)
on stdout or to ``--out``, built deterministically so repeated runs are
byte-identical.  Exit codes: 0 success, 1 usage error, 2 invalid model
parameters, 3 verification gap above tolerance.

The env var ``ROBUST_PANDORA_THREADS`` is accepted and validated for
compatibility with deployments that cap worker counts; the current
implementation evaluates its grids vectorized in-process, so the value does
not change results or, in practice, timing.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .core import (
    ConvergenceError,
    DomainError,
    HomogeneousSpec,
    IidBinary,
    NeedleP,
    SeedError,
    SizeError,
    StationaryPolicy,
    regret_needle,
    validate_spec,
)
from .corr import solve_corr_commitment, solve_corr_intrapersonal
from .het import HeterogeneousSpec, cost_asymmetry_sweep, solve_het
from .indep import expected_search_count, solve_indep
from .interim import solve_interim
from .simulate import simulate
from .two_box import solve_two_box, verify_two_box
from .verify import nature_best_response_indep, saddle_check_corr, saddle_check_indep

__all__ = ["main"]

_SCHEMA = "1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage problems exit 1 (argparse defaults to 2, reserved here for
        # validation failures)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def _pyify(obj):
    if isinstance(obj, dict):
        return {k: _pyify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_pyify(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _emit_json(command: str, params: dict, results: dict) -> str:
    payload = {
        "schema_version": _SCHEMA,
        "command": command,
        "params": _pyify(params),
        "results": _pyify(results),
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        if any(ch in value for ch in ',"\n'):
            return '"' + value.replace('"', '""') + '"'
        return value
    return _fmt(value)


def _emit_kv_csv(results: dict) -> str:
    lines = ["field,value"]
    for key, value in results.items():
        if isinstance(value, (list, tuple, np.ndarray)):
            for i, v in enumerate(value, start=1):
                lines.append(f"{key}_{i},{_cell(v)}")
        else:
            lines.append(f"{key},{_cell(value)}")
    return "\n".join(lines) + "\n"


def _emit_table_csv(columns, rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(value) for value in row))
    return "\n".join(lines) + "\n"


def _parse_boxes(text: str):
    boxes = []
    for part in text.split(","):
        try:
            u, c = part.split(":")
            boxes.append((float(u), float(c)))
        except ValueError:
            raise DomainError(f"cannot parse box {part!r}; expected 'ubar:cost'") from None
    return tuple(boxes)


def _homogeneous_from(args) -> HomogeneousSpec:
    if args.ubar is None or args.c is None or args.n is None:
        raise DomainError("--ubar, --c, and --n are required for this regime")
    return validate_spec(HomogeneousSpec(args.ubar, args.c, args.n))


def _cmd_solve(args):
    if args.regime == "indep":
        spec = _homogeneous_from(args)
        sol = solve_indep(spec)
        params = {"regime": args.regime, "ubar": spec.ubar, "c": spec.c, "n": spec.n}
        results = {
            "alpha": list(sol.alphas),
            "regret": sol.regret,
            "worst_case_p": sol.worst_case_p,
        }
    elif args.regime in ("corr", "corr-intra"):
        spec = _homogeneous_from(args)
        sol = solve_corr_commitment(spec) if args.regime == "corr" else solve_corr_intrapersonal(spec)
        params = {"regime": args.regime, "ubar": spec.ubar, "c": spec.c, "n": spec.n}
        results = {
            "alpha": list(sol.policy.alphas),
            "regret": sol.regret,
            "regret_per_k": list(sol.regret_per_k),
            "worst_case_P": list(sol.worst_case_P),
            "optout": sol.opts_out,
            "optout_threshold": sol.optout_threshold,
        }
        if args.regime == "corr-intra":
            results["searches_up_to"] = sol.searches_up_to
    elif args.regime == "het":
        if not args.boxes:
            raise DomainError("--boxes is required for the het regime")
        spec = HeterogeneousSpec(_parse_boxes(args.boxes))
        sol = solve_het(spec)
        rule = sol.rule_for()
        params = {"regime": args.regime, "boxes": args.boxes}
        results = {
            "open_probs": [rule.open_probs[i] for i in range(spec.n)],
            "optout": rule.optout,
            "total_search": rule.total_search,
            "regret": sol.regret(),
        }
    elif args.regime == "interim":
        spec = _homogeneous_from(args)
        rep = solve_interim(spec)
        params = {"regime": args.regime, "ubar": spec.ubar, "c": spec.c, "n": spec.n}
        results = {
            "m": rep.policy.m,
            "alpha": rep.policy.alpha,
            "regret": rep.regret,
            "worst_p_high": rep.worst_p_high,
            "residual": rep.residual,
            "degenerate_tie": rep.degenerate_tie,
        }
    elif args.regime == "two-box":
        if args.n is None:
            args.n = 2
        spec = _homogeneous_from(args)
        policy, nature, regret = solve_two_box(spec)
        params = {"regime": args.regime, "ubar": spec.ubar, "c": spec.c, "n": spec.n}
        results = {
            "regime": policy.regime,
            "alpha2_0": policy.alpha2_0,
            "v_low": policy.v_low,
            "v_acc": policy.v_acc,
            "v_hat": nature.v_hat,
            "q": nature.q,
            "r": nature.r,
            "s": nature.s,
            "regret": regret,
        }
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown regime {args.regime!r}")

    if args.format == "json":
        return _emit_json("solve", params, results), 0
    return _emit_kv_csv(results), 0


def _cmd_sweep(args):
    grid = np.linspace(args.from_, args.to, args.steps)
    if args.sweep == "n":
        if args.regime not in ("indep", "corr"):
            raise DomainError("n-sweeps support the indep and corr regimes")
        columns = ["n", "alpha_n", "regret"] + (["worst_case_P", "optout"] if args.regime == "corr" else [])
        rows = []
        for n in range(int(args.from_), int(args.to) + 1):
            spec = validate_spec(HomogeneousSpec(args.ubar, args.c, n))
            if args.regime == "indep":
                sol = solve_indep(spec)
                rows.append((n, sol.alphas[-1], sol.regret))
            else:
                sol = solve_corr_commitment(spec)
                rows.append((n, sol.policy.alphas[-1], sol.regret, sol.worst_case_P[-1], sol.opts_out))
        return _emit_table_csv(columns, rows), 0
    if args.sweep == "q":
        if args.regime != "indep":
            raise DomainError("q-sweeps support the indep regime")
        if args.n is None:
            raise DomainError("--n (maximum menu size) is required for q-sweeps")
        spec = validate_spec(HomogeneousSpec(args.ubar, args.c, args.n))
        rows = []
        for q in grid:
            for n in range(1, args.n + 1):
                rows.append((q, n, expected_search_count(float(q), n, spec)))
        return _emit_table_csv(["q", "n", "expected_opened"], rows), 0
    if args.sweep == "delta":
        if args.regime != "het":
            raise DomainError("delta-sweeps support the het regime")
        if args.ctotal is None:
            raise DomainError("--ctotal is required for delta-sweeps")
        rows = [
            (r["delta"], r["open_costlier"], r["open_cheaper"], r["total_search"])
            for r in cost_asymmetry_sweep(args.ubar, args.ctotal, grid)
        ]
        return _emit_table_csv(["delta", "open_costlier", "open_cheaper", "total_search"], rows), 0
    if args.sweep == "ubar":
        if args.regime != "two-box":
            raise DomainError("ubar-sweeps support the two-box regime")
        rows = []
        for ubar in grid:
            spec = validate_spec(HomogeneousSpec(float(ubar), args.c, 2))
            policy, nature, regret = solve_two_box(spec)
            rows.append((ubar, policy.regime, policy.alpha2_0, policy.v_low, nature.v_hat, regret))
        return _emit_table_csv(["ubar", "regime", "alpha2_0", "v_low", "v_hat", "regret"], rows), 0
    raise DomainError(f"unknown sweep {args.sweep!r}")


def _report_payload(report):
    return {
        "nature_gap": report.nature_gap,
        "dm_gap": report.dm_gap,
        "tolerance": report.tolerance,
        "passed": report.passed,
        "notes": list(report.notes),
    }


def _cmd_verify(args):
    if args.regime == "two-box":
        if args.n is None:
            args.n = 2
        spec = _homogeneous_from(args)
        policy, nature, _ = solve_two_box(spec)
        report = verify_two_box(policy, nature, spec, grid_size=args.grid, tolerance=args.tol)
        params = {"regime": args.regime, "ubar": spec.ubar, "c": spec.c, "grid": args.grid, "tol": args.tol}
    elif args.regime in ("indep", "corr", "corr-intra"):
        spec = _homogeneous_from(args)
        params = {"regime": args.regime, "ubar": spec.ubar, "c": spec.c, "n": spec.n, "tol": args.tol}
        if args.policy_file is not None:
            with open(args.policy_file, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
            policy = StationaryPolicy(np.asarray(payload["alpha"], dtype=float))
            claimed = float(payload["regret"])
            if args.regime == "indep":
                _, worst = nature_best_response_indep(policy, spec, args.grid)
            else:
                grid = np.linspace(0.0, 1.0, args.grid)
                worst = float(np.max(regret_needle(policy, grid, spec)))
            gap = worst - claimed
            report_payload = {
                "nature_gap": gap,
                "dm_gap": 0.0,
                "tolerance": args.tol,
                "passed": bool(gap <= args.tol),
                "notes": [f"checked policy file {os.path.basename(args.policy_file)}"],
            }
            status = 0 if report_payload["passed"] else 3
            if args.format == "csv":
                return _emit_kv_csv(report_payload), status
            return _emit_json("verify", params, report_payload), status
        if args.regime == "indep":
            report = saddle_check_indep(spec, tol=args.tol, grid_points=args.grid)
        else:
            mode = "commitment" if args.regime == "corr" else "intrapersonal"
            report = saddle_check_corr(spec, tol=args.tol, grid_points=args.grid, mode=mode)
    else:
        raise DomainError(f"verification not available for regime {args.regime!r}")
    payload = _report_payload(report)
    status = 0 if report.passed else 3
    if args.format == "csv":
        return _emit_kv_csv(payload), status
    return _emit_json("verify", params, payload), status


def _parse_truth(text: str):
    try:
        kind, value = text.split(":")
        value = float(value)
    except ValueError:
        raise DomainError(f"cannot parse truth {text!r}; expected iid:<q> or needle:<P>") from None
    if kind == "iid":
        return IidBinary(value)
    if kind == "needle":
        return NeedleP(value)
    raise DomainError(f"unknown truth kind {kind!r}")


def _cmd_simulate(args):
    spec = _homogeneous_from(args)
    if args.regime == "indep":
        policy = solve_indep(spec).policy
    elif args.regime in ("corr", "corr-intra"):
        sol = solve_corr_commitment(spec) if args.regime == "corr" else solve_corr_intrapersonal(spec)
        policy = sol.policy
    else:
        raise DomainError(f"simulation not available for regime {args.regime!r}")
    truth = _parse_truth(args.truth)
    result = simulate(policy, truth, spec, args.episodes, args.seed)
    params = {
        "regime": args.regime,
        "ubar": spec.ubar,
        "c": spec.c,
        "n": spec.n,
        "truth": args.truth,
        "episodes": args.episodes,
        "seed": args.seed,
    }
    results = {
        "episodes": result.episodes,
        "mean_opened": result.mean_opened,
        "se_opened": result.se_opened,
        "mean_regret": result.mean_regret,
        "se_regret": result.se_regret,
        "seed": result.seed,
    }
    if args.format == "csv":
        return _emit_kv_csv(results), 0
    return _emit_json("simulate", params, results), 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="robust-pandora", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--ubar", type=float, default=None, help="high reward")
        p.add_argument("--c", type=float, default=None, help="per-box search cost")
        p.add_argument("--n", type=int, default=None, help="number of boxes")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write output to this path instead of stdout")

    solve = sub.add_parser("solve", help="solve one regime and print the policy")
    add_common(solve)
    solve.add_argument("--regime", required=True, choices=("indep", "corr", "corr-intra", "het", "interim", "two-box"))
    solve.add_argument("--boxes", default=None, help="heterogeneous boxes as 'u1:c1,u2:c2,...'")
    solve.set_defaults(func=_cmd_solve)

    sweep = sub.add_parser("sweep", help="parameter sweeps as CSV tables")
    add_common(sweep)
    sweep.add_argument("--regime", required=True, choices=("indep", "corr", "het", "two-box"))
    sweep.add_argument("--sweep", required=True, choices=("n", "q", "delta", "ubar"))
    sweep.add_argument("--from", dest="from_", type=float, required=True)
    sweep.add_argument("--to", type=float, required=True)
    sweep.add_argument("--steps", type=int, default=30)
    sweep.add_argument("--ctotal", type=float, default=None, help="total cost for delta-sweeps")
    sweep.set_defaults(func=_cmd_sweep)

    verify = sub.add_parser("verify", help="numerically check a solution's saddle point")
    add_common(verify)
    verify.add_argument("--regime", required=True, choices=("indep", "corr", "corr-intra", "two-box"))
    verify.add_argument("--tol", type=float, default=1e-6)
    verify.add_argument("--grid", type=int, default=2001, help="grid points (pairs per axis for two-box)")
    verify.add_argument("--policy-file", default=None, help="JSON file with 'alpha' and 'regret' to check")
    verify.set_defaults(func=_cmd_verify)

    sim = sub.add_parser("simulate", help="Monte-Carlo run under an explicit truth")
    add_common(sim)
    sim.add_argument("--regime", required=True, choices=("indep", "corr", "corr-intra"))
    sim.add_argument("--truth", required=True, help="iid:<q> or needle:<P>")
    sim.add_argument("--episodes", type=int, default=100_000)
    sim.add_argument("--seed", type=int, default=0)
    sim.set_defaults(func=_cmd_simulate)
    return parser


def _check_threads_env() -> None:
    raw = os.environ.get("ROBUST_PANDORA_THREADS")
    if raw is None:
        return
    try:
        if int(raw) < 1:
            raise ValueError
    except ValueError:
        raise DomainError(f"ROBUST_PANDORA_THREADS must be a positive integer, got {raw!r}") from None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_threads_env()
        output, status = args.func(args)
    except (DomainError, SizeError, SeedError, ConvergenceError) as exc:
        print(f"robust-pandora: {exc}", file=sys.stderr)
        return 2
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
