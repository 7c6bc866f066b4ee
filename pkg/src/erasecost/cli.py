"""Command-line front end: instance files, solving, simulation, sweeps.

Instance files are JSON with row-major matrices.  Probability and cost
entries may be JSON numbers or strings like "1/6" or "0.25"; strings are
parsed as exact rationals so fixture matrices do not drift through
decimal rounding, and probability matrices are normalized in rational
arithmetic before conversion to floats.

Exit codes: 0 success, 1 validation failure (one machine-readable JSON
error line on stderr), 2 solver iteration cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .cost import CostMatrix, expected_cost, gamma_min, hamming_cost
from .errors import ErasureError, ValidationError
from .fixtures import (
    binary_identity_instance,
    ternary_counterexample_channel,
    ternary_counterexample_instance,
)
from .independence import is_weakly_independent, repeated_symbol_verdict
from .prob import JointSource, mutual_information, induced_joint_y_xhat
from .sim import (
    build_finite_randomness_encoder,
    build_product_encoder,
    build_repeated_encoder,
    simulate,
)
from .solver import (
    ErasureInstance,
    SolverConfig,
    SolverStatus,
    binary_closed_form,
    continuity_probe,
    min_cost_n,
    solve_min_cost,
    solve_zero_leakage,
)

_EXACT_ONE = Fraction(1)
_NORMALIZE_SLACK = Fraction(1, 10 ** 12)


def _parse_entry(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, bool) or value is None:
        raise ValidationError(f"matrix entry {value!r} is not a number")
    return Fraction(value)


def _parse_matrix(raw, rows: int, cols: int, what: str, normalize: bool) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != rows:
        raise ValidationError(f"{what}: expected {rows} rows")
    mat = []
    for row in raw:
        if not isinstance(row, list) or len(row) != cols:
            raise ValidationError(f"{what}: expected {cols} columns per row")
        mat.append([_parse_entry(v) for v in row])
    if normalize:
        total = sum(sum(row) for row in mat)
        if total <= 0:
            raise ValidationError(f"{what}: total mass must be positive")
        # exact rational normalization, but leave already-normalized float
        # matrices untouched so save/load round-trips bitwise
        if abs(total - _EXACT_ONE) > _NORMALIZE_SLACK:
            mat = [[v / total for v in row] for row in mat]
    return np.array([[float(v) for v in row] for row in mat])


def load_instance(path: str) -> tuple[ErasureInstance, dict]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        x_size = int(doc["x_size"])
        y_size = int(doc["y_size"])
        xhat_size = int(doc["xhat_size"])
        p_xy = _parse_matrix(doc["p_xy"], x_size, y_size, "p_xy", normalize=True)
        cost = _parse_matrix(doc["cost"], x_size, xhat_size, "cost", normalize=False)
    except KeyError as exc:
        raise ValidationError(f"instance file missing field {exc}") from exc
    inst = ErasureInstance(
        source=JointSource(p_xy),
        cost=CostMatrix(cost),
        xhat_size=xhat_size,
    )
    return inst, doc.get("labels", {})


def save_instance(path: str, inst: ErasureInstance, labels: dict | None = None) -> None:
    doc = {
        "x_size": inst.source.x_size,
        "y_size": inst.source.y_size,
        "xhat_size": inst.xhat_size,
        "p_xy": [[float(v) for v in row] for row in inst.source.p_xy],
        "cost": [[float(v) for v in row] for row in inst.cost.c],
    }
    if labels:
        doc["labels"] = labels
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _config(args) -> SolverConfig:
    if getattr(args, "tol", None) is None:
        return SolverConfig()
    return SolverConfig(optimality_tol=args.tol)


def _result_doc(res, eps, n, cfg) -> dict:
    return {
        "min_cost": res.min_cost,
        "channel": [[float(v) for v in row] for row in res.channel.w],
        "leakage": res.leakage,
        "status": res.status.value,
        "iterations": res.iterations,
        "duality_gap": res.duality_gap,
        "eps": eps,
        "n": n,
        "tolerances": {
            "optimality_tol": cfg.optimality_tol,
            "feasibility_tol": cfg.feasibility_tol,
            "zero_leakage_tol": cfg.zero_leakage_tol,
        },
        "version": __version__,
    }


def _cmd_solve(args) -> int:
    inst, _ = load_instance(args.instance)
    cfg = _config(args)
    res = solve_min_cost(inst, args.eps / args.n, cfg)
    print(json.dumps(_result_doc(res, args.eps, args.n, cfg), indent=2))
    return 2 if res.status is SolverStatus.ITERATION_CAP else 0


def _cmd_check(args) -> int:
    inst, _ = load_instance(args.instance)
    tol = args.tol if args.tol is not None else 1e-9
    report = is_weakly_independent(inst.source, tol)
    verdict = repeated_symbol_verdict(inst, args.eps, tol)
    g_val, g_sym = gamma_min(inst.source.marginal_x(), inst.cost)
    print(json.dumps({
        "weakly_independent": report.weakly_independent,
        "row_rank": report.row_rank,
        "singular_values": list(report.singular_values),
        "tolerance": report.tolerance,
        "massless_excluded": list(report.massless_excluded),
        "eps": args.eps,
        "verdict": verdict.value,
        "gamma_min": g_val,
        "gamma_min_symbol": g_sym,
        "version": __version__,
    }, indent=2))
    return 0


def _cmd_simulate(args) -> int:
    inst, _ = load_instance(args.instance)
    cfg = _config(args)
    kind = args.encoder
    if kind == "repeated":
        enc = build_repeated_encoder(inst)
    else:
        if not args.channel_from_solve:
            raise ValidationError(
                f"encoder {kind!r} needs a channel; pass --channel-from-solve"
            )
        res = solve_min_cost(inst, args.eps, cfg)
        if res.status is SolverStatus.ITERATION_CAP:
            return 2
        if kind == "product":
            enc = build_product_encoder(res.channel)
        elif kind.startswith("finite:"):
            m_n = int(kind.split(":", 1)[1])
            enc = build_finite_randomness_encoder(res.channel, m_n, args.seed)
        else:
            raise ValidationError(f"unknown encoder {kind!r}")
    report = simulate(inst, enc, args.n, args.trials, args.seed)
    doc = {
        "n": report.n,
        "trials": report.trials,
        "avg_cost": report.avg_cost,
        "cost_quantiles": {str(k): v for k, v in report.cost_quantiles.items()},
        "plugin_leakage_per_letter": report.plugin_leakage_per_letter,
        "plugin_leakage_mm_per_letter": report.plugin_leakage_mm_per_letter,
        "spectrum_quantile": report.spectrum_quantile,
        "seed": report.seed,
        "encoder": kind,
        "version": __version__,
    }
    if report.spectrum_histogram is not None:
        doc["spectrum_histogram"] = {
            "bin_edges": list(report.spectrum_histogram.bin_edges),
            "masses": list(report.spectrum_histogram.masses),
        }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_sweep(args) -> int:
    inst, _ = load_instance(args.instance)
    cfg = _config(args)
    try:
        lo_s, hi_s, steps_s = args.eps_grid.split(":")
        lo, hi, steps = float(lo_s), float(hi_s), int(steps_s)
    except ValueError as exc:
        raise ValidationError(f"bad --eps-grid {args.eps_grid!r}; want A:B:STEPS") from exc
    if steps < 1 or hi < lo:
        raise ValidationError("eps grid must have STEPS >= 1 and B >= A")
    worst = 0
    lines = ["eps,min_cost,leakage,status"]
    for eps in np.linspace(lo, hi, steps):
        res = solve_min_cost(inst, float(eps), cfg)
        lines.append(f"{eps!r},{res.min_cost!r},{res.leakage!r},{res.status.value}")
        if res.status is SolverStatus.ITERATION_CAP:
            worst = 2
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {steps} rows to {args.out}")
    return worst


def _verify_claims():
    """Yield (label, passed, detail) for every built-in reference claim."""
    ternary = ternary_counterexample_instance()
    binary3 = binary_identity_instance(0.3)

    g_val, _ = gamma_min(ternary.source.marginal_x(), ternary.cost)
    yield (
        "ternary counterexample: repeated-symbol cost 2/3",
        abs(g_val - 2.0 / 3.0) <= 1e-12,
        f"gamma_min = {g_val:.12f}",
    )

    w_ref = ternary_counterexample_channel()
    ref_leak = mutual_information(induced_joint_y_xhat(ternary.source, w_ref))
    ref_cost = expected_cost(ternary.source.marginal_x(), w_ref, ternary.cost)
    yield (
        "ternary counterexample: published channel leaks nothing at cost 1/2",
        ref_leak <= 1e-12 and abs(ref_cost - 0.5) <= 1e-12,
        f"leakage = {ref_leak:.3e}, cost = {ref_cost:.12f}",
    )

    res0 = solve_zero_leakage(ternary)
    yield (
        "ternary counterexample: zero-leakage optimum <= 1/2 < gamma_min",
        res0.min_cost <= 0.5 + 1e-6 and res0.min_cost < g_val - 0.16,
        f"min_cost = {res0.min_cost:.12f} vs gamma_min = {g_val:.4f}",
    )

    ok = True
    details = []
    for p, eps, n in [(0.3, 0.0, 1), (0.3, 0.2, 4), (0.5, 0.2, 1), (0.11, 0.05, 2)]:
        want = binary_closed_form(p, eps, n)
        got = min_cost_n(binary_identity_instance(p), eps, n)
        details.append(f"p={p},eps={eps},n={n}: |{got:.6f}-{want:.6f}|")
        ok = ok and abs(got - want) <= 1e-4
    yield ("binary identical pair matches the inverse-entropy closed form",
           ok, "; ".join(details))

    v1 = repeated_symbol_verdict(binary3, 0.0).value
    v2 = repeated_symbol_verdict(ternary, 0.0).value
    v3 = repeated_symbol_verdict(binary3, 0.1).value
    yield (
        "repeated-symbol verdicts (binary eps=0, ternary eps=0, binary eps>0)",
        (v1, v2, v3) == ("optimal", "not_optimal_weakly_independent",
                         "not_optimal_positive_eps"),
        f"got ({v1}, {v2}, {v3})",
    )

    vals = [min_cost_n(binary3, 0.0, n) for n in (1, 4, 16)]
    spread = max(vals) - min(vals)
    yield (
        "zero-budget cost is blocklength-independent",
        spread <= 1e-9 and abs(vals[0] - 0.3) <= 1e-9,
        f"values = {vals}, spread = {spread:.2e}",
    )

    eps_seq = [2.0 ** -k for k in range(1, 13)]
    rep_b = continuity_probe(binary3, eps_seq)
    rep_t = continuity_probe(ternary, eps_seq)
    yield (
        "cost curve is continuous at zero budget (final gap < 1e-3)",
        rep_b.converged and rep_t.converged,
        f"final gaps: binary {rep_b.final_gap:.2e}, ternary {rep_t.final_gap:.2e}",
    )

    enc = build_repeated_encoder(ternary)
    rep = simulate(ternary, enc, n=64, trials=400, seed=7)
    se = (2.0 / 9.0 / (64 * 400)) ** 0.5  # Var of ternary Hamming hit is 2/9
    yield (
        "repeated-symbol simulation: zero leakage, cost at gamma_min",
        rep.plugin_leakage_per_letter == 0.0
        and abs(rep.avg_cost - g_val) <= 3 * se,
        f"avg_cost = {rep.avg_cost:.5f} (target {g_val:.5f} +- {3 * se:.5f})",
    )


def _cmd_verify(_args) -> int:
    failures = 0
    for label, passed, detail in _verify_claims():
        print(f"{label}: {detail} : {'PASS' if passed else 'FAIL'}")
        failures += 0 if passed else 1
    print(f"{'all claims verified' if failures == 0 else f'{failures} claim(s) failed'}")
    return 0 if failures == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="erasecost",
        description="Minimum-cost information erasure under leakage constraints",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimum expected cost at a leakage budget")
    p.add_argument("--instance", required=True)
    p.add_argument("--eps", type=float, required=True, help="total leakage budget (nats)")
    p.add_argument("--n", type=int, default=1, help="blocklength; per-letter budget is eps/n")
    p.add_argument("--tol", type=float, default=None, help="optimality tolerance")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("check", help="weak-independence report and encoder verdict")
    p.add_argument("--instance", required=True)
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--tol", type=float, default=None, help="rank tolerance")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("simulate", help="seeded Monte Carlo erasure experiment")
    p.add_argument("--instance", required=True)
    p.add_argument("--encoder", required=True,
                   help="repeated | product | finite:M")
    p.add_argument("--channel-from-solve", action="store_true",
                   help="build product/finite encoders from the optimal channel at --eps")
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="cost curve over a budget grid, written as CSV")
    p.add_argument("--instance", required=True)
    p.add_argument("--eps-grid", required=True, help="A:B:STEPS")
    p.add_argument("--out", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify-paper",
                       help="re-derive the built-in reference values and print PASS/FAIL")
    p.set_defaults(func=_cmd_verify)
    return ap


def run_cli(argv) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return args.func(args)
    except (ErasureError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 1


def main() -> int:
    return run_cli(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
