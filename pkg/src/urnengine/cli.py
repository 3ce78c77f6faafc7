"""Command-line interface: every computation, machine-readable output.

One invocation runs one computation and writes one document.  JSON documents
have the shape {"inputs": ..., "outputs": ..., "version": ..., "seed": ...}
(seed present only for seeded commands); inputs echo every effective flag,
defaulted or not, so a result is reproducible from its own output.  CSV
output is RFC-4180-style with a mandatory header; column order is part of
the interface and stays stable.  Identical invocations produce byte-identical
documents.

Exit codes: 0 success, 1 domain error (structured JSON message on stderr),
2 usage error (argparse).  Reduced units (k_B = 1) are the only unit system.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import __version__
from . import analytic, continuum, frontier, montecarlo, thermo, urn

__all__ = ["main", "build_parser"]


@dataclass
class CommandResult:
    inputs: dict[str, Any]
    outputs: dict[str, Any]
    seed: int | None
    columns: list[str]
    rows: list[dict[str, Any]]


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


def _grid(text: str) -> np.ndarray:
    """Parse start:stop:count into an inclusive linear grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be start:stop:count, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must be start:stop:count, got {text!r}") from exc
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be >= 1")
    return np.linspace(start, stop, count)


def _ring_m(text: str) -> int | None:
    """Sub-reservoir count; 'inf' or 'carnot' selects the continuum cycle."""
    if text.lower() in ("inf", "carnot"):
        return None
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"m must be an integer, 'inf', or 'carnot': {text!r}") from exc
    return value


def _jsonable(value: Any) -> Any:
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, float) and not math.isfinite(value):
        return None  # JSON has no NaN/inf; undefined quantities serialize as null
    return value


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ";".join(_csv_cell(v) for v in value)
    return str(value)


def _emit(result: CommandResult, fmt: str, output: str | None) -> None:
    if fmt == "json":
        doc: dict[str, Any] = {
            "inputs": _jsonable(result.inputs),
            "outputs": _jsonable(result.outputs),
            "version": __version__,
        }
        if result.seed is not None:
            doc["seed"] = result.seed
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(result.columns)
        for row in result.rows:
            writer.writerow([_csv_cell(row.get(col)) for col in result.columns])
        text = buf.getvalue()
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _scalar_result(inputs: dict[str, Any], outputs: dict[str, Any], seed: int | None = None) -> CommandResult:
    # one CSV row merging inputs and scalar outputs; on a name clash the
    # echoed input wins and the column appears once
    columns = list(inputs)
    columns += [k for k in outputs if not isinstance(outputs[k], dict) and k not in inputs]
    row = {**{k: v for k, v in outputs.items() if not isinstance(v, dict)}, **inputs}
    return CommandResult(inputs=inputs, outputs=outputs, seed=seed, columns=columns, rows=[row])


# ---------------------------------------------------------------- handlers


def _handle_analytic_otto(args: argparse.Namespace) -> CommandResult:
    inputs = {
        "eps_l": args.eps_l, "eps_h": args.eps_h, "N": args.N,
        "n_l": args.n_l, "n_h": args.n_h,
    }
    spec = analytic.OttoSpec.from_counts(args.eps_l, args.eps_h, args.N, args.n_l, args.n_h)
    q_l, q_h = analytic.mean_heats_otto(spec)
    ring = analytic.RingSpec(
        altitudes=np.array([args.eps_l, args.eps_h]),
        mean_weights=np.array([args.n_l / args.N, args.n_h / args.N]),
        bernoulli_f=np.array([args.n_l / args.N, args.n_h / args.N]),
    )
    stats = analytic.work_statistics_ring(ring)
    outputs: dict[str, Any] = {
        "W": analytic.mean_work_otto(spec),
        "eta": analytic.efficiency_otto(args.eps_l, args.eps_h),
        "Q_l": q_l,
        "Q_h": q_h,
        "var_W": stats.variance,
    }
    degenerate = {0, args.N}
    outputs["beta_l"] = (
        thermo.beta_from_occupancy(args.n_l, args.N, args.eps_l).beta
        if args.n_l not in degenerate else None
    )
    outputs["beta_h"] = (
        thermo.beta_from_occupancy(args.n_h, args.N, args.eps_h).beta
        if args.n_h not in degenerate else None
    )
    if outputs["beta_l"] not in (None, 0.0):
        outputs["eta_carnot"] = thermo.carnot_efficiency(outputs["beta_l"], outputs["beta_h"])
    else:
        outputs["eta_carnot"] = None
    return _scalar_result(inputs, outputs)


def _handle_analytic_ring(args: argparse.Namespace) -> CommandResult:
    inputs = {"eps": args.eps, "f_mean": args.f_mean, "f": args.f}
    spec = analytic.RingSpec(
        altitudes=np.array(args.eps),
        mean_weights=np.array(args.f_mean),
        bernoulli_f=np.array(args.f) if args.f is not None else None,
    )
    q_low, q_high, w = analytic.mean_heats_ring(spec)
    outputs: dict[str, Any] = {"Q_low": q_low, "Q_high": q_high, "W": w}
    if args.f is not None:
        stats = analytic.work_statistics_ring(spec)
        outputs.update(mean_W=stats.mean, var_W=stats.variance, ratio=stats.ratio)
    return _scalar_result(inputs, outputs)


def _handle_analytic_variance(args: argparse.Namespace) -> CommandResult:
    inputs = {"eps": args.eps, "f": args.f}
    spec = analytic.RingSpec(
        altitudes=np.array(args.eps),
        mean_weights=np.array(args.f),
        bernoulli_f=np.array(args.f),
    )
    stats = analytic.work_statistics_ring(spec)
    outputs = {"mean_W": stats.mean, "var_W": stats.variance, "ratio": stats.ratio}
    return _scalar_result(inputs, outputs)


def _handle_thermo_beta(args: argparse.Namespace) -> CommandResult:
    inputs = {"n": args.n, "N": args.N, "eps": args.eps}
    beta = thermo.beta_from_occupancy(args.n, args.N, args.eps)
    outputs = {"beta": beta.beta, "temperature": beta.temperature}
    return _scalar_result(inputs, outputs)


def _handle_thermo_occupancy(args: argparse.Namespace) -> CommandResult:
    inputs = {"x": args.x}
    outputs = {"f": thermo.occupancy(args.x)}
    return _scalar_result(inputs, outputs)


def _handle_thermo_entropy(args: argparse.Namespace) -> CommandResult:
    inputs = {"x": args.x, "y": args.y, "levels": args.levels}
    if args.levels is not None:
        if args.y is not None:
            raise ValueError("--levels and --y are mutually exclusive")
        s = thermo.entropy_equally_spaced(args.x, args.levels)
    else:
        s = thermo.entropy_s(args.x, args.y).s
    return _scalar_result(inputs, {"s": s})


def _handle_thermo_degeneracy(args: argparse.Namespace) -> CommandResult:
    inputs = {"N": args.N, "n": args.n}
    outputs = {"log_degeneracy": thermo.log_degeneracy(args.N, args.n)}
    return _scalar_result(inputs, outputs)


def _handle_simulate(args: argparse.Namespace) -> CommandResult:
    if args.eps is not None or args.n is not None:
        if args.eps is None or args.n is None:
            raise ValueError("ring mode needs both --eps and --n")
        altitudes, excited = args.eps, args.n
    else:
        required = (args.eps_l, args.eps_h, args.n_l, args.n_h)
        if any(v is None for v in required):
            raise ValueError("need --eps-l/--eps-h/--n-l/--n-h or --eps/--n")
        altitudes = [args.eps_l, args.eps_h]
        excited = [args.n_l, args.n_h]
    inputs = {
        "eps": list(altitudes), "n": [int(v) for v in excited], "N": args.N,
        "trials": args.trials, "seed": args.seed, "workers": args.workers,
    }
    ring = urn.two_level_ring(altitudes, excited, args.N)
    stats = montecarlo.run_ensemble(ring, args.trials, args.seed, workers=args.workers)
    report = montecarlo.compare_to_analytic(stats, montecarlo.ring_spec_of(ring))
    outputs: dict[str, Any] = {
        "trials": stats.trials,
        "mean_W": stats.mean_work,
        "var_W": stats.var_work,
        "stderr_W": stats.stderr_work,
        "mean_Q": list(stats.mean_heats),
        "conservation_violations": stats.conservation_violations,
        "histogram": {str(k): v for k, v in stats.histogram.items()},
        "analytic_mean": report.analytic_mean,
        "analytic_variance": report.analytic_variance,
        "z_mean": report.z_mean,
        "z_var": report.z_var,
        "tv_distance": report.tv_distance,
        "exact_match": report.exact_match,
        "passed": report.passed,
    }
    result = _scalar_result(inputs, outputs, seed=args.seed)
    result.columns = [c for c in result.columns if c != "histogram"]
    for row in result.rows:
        row.pop("histogram", None)
    return result


def _continuum_endpoints(args: argparse.Namespace) -> continuum.CarnotEndpoints:
    reduced = (args.l1, args.lm, args.h1, args.hm)
    raw = (args.eps_l1, args.eps_lm, args.eps_h1, args.eps_hm)
    if all(v is not None for v in reduced):
        return continuum.CarnotEndpoints(
            beta_l=args.beta_l, beta_h=args.beta_h,
            cold_first=args.l1, cold_last=args.lm,
            hot_first=args.h1, hot_last=args.hm,
        )
    if all(v is not None for v in raw):
        return continuum.CarnotEndpoints.from_altitudes(
            args.beta_l, args.beta_h, args.eps_l1, args.eps_lm, args.eps_h1, args.eps_hm
        )
    raise ValueError("need all of --l1/--lm/--h1/--hm or all of --eps-l1/--eps-lm/--eps-h1/--eps-hm")


def _handle_continuum_heats(args: argparse.Namespace) -> CommandResult:
    ep = _continuum_endpoints(args)
    inputs = {
        "beta_l": args.beta_l, "beta_h": args.beta_h,
        "L1": ep.cold_first, "Lm": ep.cold_last, "H1": ep.hot_first, "Hm": ep.hot_last,
    }
    res = continuum.continuum_heats(ep)
    outputs = {
        "Q_l": res.heat_low, "Q_h": res.heat_high, "W": res.work, "eta": res.efficiency,
    }
    return _scalar_result(inputs, outputs)


def _handle_continuum_reversible(args: argparse.Namespace) -> CommandResult:
    if args.l1 is not None and args.lm is not None:
        l1, lm = args.l1, args.lm
    elif args.eps_l1 is not None and args.eps_lm is not None:
        l1, lm = args.beta_l * args.eps_l1, args.beta_l * args.eps_lm
    else:
        raise ValueError("need --l1/--lm or --eps-l1/--eps-lm")
    inputs = {"beta_l": args.beta_l, "beta_h": args.beta_h, "L1": l1, "Lm": lm}
    w, eta = continuum.reversible_work(args.beta_l, args.beta_h, l1, lm)
    outputs: dict[str, Any] = {"W": w, "eta": eta}
    if (args.beta_l > 0) == (args.beta_h > 0):
        res = continuum.continuum_heats(continuum.reversible_endpoints(args.beta_l, args.beta_h, l1, lm))
        outputs["identity_residual"] = args.beta_l * res.heat_low + args.beta_h * res.heat_high
    else:
        outputs["identity_residual"] = None
    return _scalar_result(inputs, outputs)


def _handle_continuum_wmax(args: argparse.Namespace) -> CommandResult:
    inputs = {"beta_l": args.beta_l, "beta_h": args.beta_h}
    outputs = {"W_max": continuum.max_reversible_work(args.beta_l, args.beta_h)}
    return _scalar_result(inputs, outputs)


_FRONTIER_COLUMNS = [
    "m", "beta_l", "beta_h", "mode", "target_W", "W", "eta",
    "residual", "evaluations", "start_index", "config",
]


def _handle_frontier(args: argparse.Namespace) -> CommandResult:
    if (args.target_w is None) == (args.w_grid is None):
        raise ValueError("need exactly one of --target-w or --w-grid")
    targets = np.array([args.target_w]) if args.target_w is not None else args.w_grid
    inputs = {
        "m": "carnot" if args.m is None else args.m,
        "beta_l": args.beta_l, "beta_h": args.beta_h,
        "mode": args.mode, "target_W": [float(t) for t in targets],
        "tol_w": args.tol_w, "budget": args.budget, "starts": args.starts,
        "seed": args.seed, "init_extent": args.init_extent,
    }
    points = frontier.frontier_curve(
        args.m, args.beta_l, args.beta_h, targets, frontier.Mode(args.mode),
        args.tol_w, args.budget, args.starts, args.seed, args.init_extent,
    )
    rows = [
        {
            "m": inputs["m"], "beta_l": args.beta_l, "beta_h": args.beta_h,
            "mode": args.mode, "target_W": p.target_work, "W": p.work, "eta": p.eta,
            "residual": p.residual, "evaluations": p.evaluations,
            "start_index": p.start_index, "config": list(p.config),
        }
        for p in points
    ]
    outputs = {"points": rows}
    return CommandResult(inputs=inputs, outputs=outputs, seed=args.seed,
                         columns=_FRONTIER_COLUMNS, rows=rows)


_REGION_COLUMNS = ["W", "eta", "engine", "config"]


def _handle_region(args: argparse.Namespace) -> CommandResult:
    inputs = {
        "m": args.m, "beta_l": args.beta_l, "beta_h": args.beta_h,
        "samples": args.samples, "eps_max": args.eps_max, "seed": args.seed,
    }
    sample = frontier.sample_region(
        args.m, args.beta_l, args.beta_h, args.samples, args.eps_max, args.seed
    )
    rows = [
        {
            "W": float(w),
            "eta": None if not math.isfinite(e) else float(e),
            "engine": bool(g),
            "config": [float(v) for v in eps_row],
        }
        for w, e, g, eps_row in zip(sample.work, sample.efficiency, sample.engine, sample.eps)
    ]
    outputs = {"points": rows}
    return CommandResult(inputs=inputs, outputs=outputs, seed=args.seed,
                         columns=_REGION_COLUMNS, rows=rows)


# ---------------------------------------------------------------- parser


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None, help="write the document here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urnengine",
        description="Urn-model heat engines: exact statistics, simulation, frontiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analytic = sub.add_parser("analytic", help="closed-form engine statistics")
    sub_analytic = p_analytic.add_subparsers(dest="subcommand", required=True)

    p = sub_analytic.add_parser("otto", help="two-reservoir engine from 0/1 populations")
    p.add_argument("--eps-l", type=float, required=True)
    p.add_argument("--eps-h", type=float, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n-l", type=int, required=True)
    p.add_argument("--n-h", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_analytic_otto)

    p = sub_analytic.add_parser("ring", help="2m-ring mean heats and work")
    p.add_argument("--eps", type=_float_list, required=True)
    p.add_argument("--f-mean", type=_float_list, required=True)
    p.add_argument("--f", type=_float_list, default=None)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_analytic_ring)

    p = sub_analytic.add_parser("variance", help="0/1-model work mean/variance/ratio")
    p.add_argument("--eps", type=_float_list, required=True)
    p.add_argument("--f", type=_float_list, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_analytic_variance)

    p_thermo = sub.add_parser("thermo", help="occupancy/temperature/entropy layer")
    sub_thermo = p_thermo.add_subparsers(dest="subcommand", required=True)

    p = sub_thermo.add_parser("beta", help="inverse temperature from occupancy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_thermo_beta)

    p = sub_thermo.add_parser("occupancy", help="f(x) = 1/(exp(x)+1)")
    p.add_argument("--x", type=float, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_thermo_occupancy)

    p = sub_thermo.add_parser("entropy", help="two-level or equally-spaced entropy")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--levels", type=int, default=None)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_thermo_entropy)

    p = sub_thermo.add_parser("degeneracy", help="log microstate count ln C(N, n)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_thermo_degeneracy)

    p = sub.add_parser("simulate", help="Monte Carlo ensemble of 0/1-weight cycles")
    p.add_argument("--eps-l", type=float, default=None)
    p.add_argument("--eps-h", type=float, default=None)
    p.add_argument("--n-l", type=int, default=None)
    p.add_argument("--n-h", type=int, default=None)
    p.add_argument("--eps", type=_float_list, default=None, help="ring altitudes, low half first")
    p.add_argument("--n", type=_int_list, default=None, help="ring excited counts")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_simulate)

    p_continuum = sub.add_parser("continuum", help="reversible-limit cycles")
    sub_continuum = p_continuum.add_subparsers(dest="subcommand", required=True)

    def _endpoint_flags(q: argparse.ArgumentParser, hot: bool) -> None:
        q.add_argument("--beta-l", type=float, required=True)
        q.add_argument("--beta-h", type=float, required=True)
        q.add_argument("--l1", type=float, default=None, help="reduced cold start beta_l*eps")
        q.add_argument("--lm", type=float, default=None, help="reduced cold end")
        q.add_argument("--eps-l1", type=float, default=None)
        q.add_argument("--eps-lm", type=float, default=None)
        if hot:
            q.add_argument("--h1", type=float, default=None)
            q.add_argument("--hm", type=float, default=None)
            q.add_argument("--eps-h1", type=float, default=None)
            q.add_argument("--eps-hm", type=float, default=None)

    p = sub_continuum.add_parser("heats", help="branch heats at arbitrary endpoints")
    _endpoint_flags(p, hot=True)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_continuum_heats)

    p = sub_continuum.add_parser("reversible", help="matched-endpoint Carnot cycle")
    _endpoint_flags(p, hot=False)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_continuum_reversible)

    p = sub_continuum.add_parser("wmax", help="supremum of the reversible work")
    p.add_argument("--beta-l", type=float, required=True)
    p.add_argument("--beta-h", type=float, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_continuum_wmax)

    p = sub.add_parser("frontier", help="extremal efficiency at fixed work")
    p.add_argument("--m", type=_ring_m, required=True, help="sub-reservoirs per side, or 'carnot'")
    p.add_argument("--beta-l", type=float, required=True)
    p.add_argument("--beta-h", type=float, required=True)
    p.add_argument("--target-w", type=float, default=None)
    p.add_argument("--w-grid", type=_grid, default=None, help="start:stop:count")
    p.add_argument("--mode", choices=("max", "min"), default="max")
    p.add_argument("--tol-w", type=float, default=frontier.DEFAULT_TOL_W)
    p.add_argument("--budget", type=int, default=frontier.DEFAULT_BUDGET)
    p.add_argument("--starts", type=int, default=frontier.DEFAULT_STARTS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--init-extent", type=float, default=None)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_frontier)

    p = sub.add_parser("region", help="scatter-sample the attainable (W, eta) region")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--beta-l", type=float, required=True)
    p.add_argument("--beta-h", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--eps-max", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p)
    p.set_defaults(handler=_handle_region)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.handler(args)
        _emit(result, args.format, args.output)
    except (ValueError, RuntimeError, OSError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
