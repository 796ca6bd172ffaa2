"""Command-line front end: single-instance checks, fuzz campaigns, sweeps,
and the weighted-quadrature demo.

Exit codes: 0 when every requested hypothesis and chain holds, 2 when an
instance is inadmissible for the requested bound, 1 for I/O or validation
problems. The split lets CI tell "bound violated" (a library bug) apart from
"instance inadmissible" (a user input problem).

The environment variable ORTHOBOUND_TOL overrides the default admissibility
tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bounds, jsonio
from .admissibility import (
    DEFAULT_HYPOTHESIS_TOL,
    CorridorSpec,
    ScalarCorridor,
    check_hypothesis,
)
from .errors import (
    BadEpsilon,
    HypothesisFailed,
    InstanceFormatError,
    OrthoboundError,
)
from .experiments import SWEEP_TARGETS, sharpness_sweep, sweep_rows_to_csv
from .family import OrthonormalFamily, trig_samples, legendre_samples
from .fuzz import FuzzConfig, run_fuzz
from .integral import integral_instance, sandwich_check
from .space import SampledFunction, Vector, gauss_legendre_grid

PAIR_SELECTORS = ("thm1.1", "thm2", "thm3.1", "cor3.3")


def _default_tol() -> float:
    raw = os.environ.get("ORTHOBOUND_TOL")
    if raw is None:
        return DEFAULT_HYPOTHESIS_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise InstanceFormatError("ORTHOBOUND_TOL", f"not a number: {raw!r}") from exc
    if not tol > 0.0:
        raise InstanceFormatError("ORTHOBOUND_TOL", "tolerance must be positive")
    return tol


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _fail(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return 1


@dataclass
class Instance:
    family: OrthonormalFamily | None
    x: Vector
    cx: ScalarCorridor | None
    y: Vector | None
    cy: ScalarCorridor | None
    delta: complex | None
    big_delta: complex | None


def _load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InstanceFormatError(path, str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(path, f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceFormatError("$", "instance must be a JSON object")
    if "x" not in data:
        raise InstanceFormatError("x", "missing required field")
    family = jsonio.family_from_json(data["family"]) if "family" in data else None
    x = jsonio.vector_from_json(data["x"], "x")
    cx = None
    if "phi" in data or "Phi" in data:
        if "phi" not in data or "Phi" not in data:
            raise InstanceFormatError("phi/Phi", "both corridor sides are required")
        cx = jsonio.corridor_from_json(data["phi"], data["Phi"])
    y = jsonio.vector_from_json(data["y"], "y") if "y" in data else None
    cy = None
    if "gamma" in data or "Gamma" in data:
        if "gamma" not in data or "Gamma" not in data:
            raise InstanceFormatError("gamma/Gamma", "both corridor sides are required")
        cy = jsonio.corridor_from_json(data["gamma"], data["Gamma"], "y corridor ")
    delta = jsonio.scalar_from_json(data["delta"], "delta") if "delta" in data else None
    big_delta = (
        jsonio.scalar_from_json(data["Delta"], "Delta") if "Delta" in data else None
    )
    return Instance(family, x, cx, y, cy, delta, big_delta)


def _parse_selector(raw: str) -> tuple[str, dict]:
    if raw in ("thm1.1", "thm2", "thm2.1", "eq2.6", "cor2.3", "cor2.5", "thm3.1", "cor3.3"):
        return raw, {}
    if raw.startswith("eq2.11:"):
        tail = raw.split(":", 1)[1]
        if tail == "max":
            return "eq2.11", {"variant": "max_sum"}
        if tail == "sum":
            return "eq2.11", {"variant": "sum_max"}
        if tail.startswith("holder:"):
            try:
                p = float(tail.split(":", 1)[1])
            except ValueError as exc:
                raise InstanceFormatError("--bound", f"bad holder exponent in {raw!r}") from exc
            return "eq2.11", {"variant": "holder", "p": p}
        raise InstanceFormatError("--bound", f"unknown eq2.11 variant {raw!r}")
    if raw.startswith("thm4.1:"):
        try:
            lam = float(raw.split(":", 1)[1])
        except ValueError as exc:
            raise InstanceFormatError("--bound", f"bad lambda in {raw!r}") from exc
        return "thm4.1", {"lam": lam}
    raise InstanceFormatError("--bound", f"unknown bound selector {raw!r}")


def _require_fields(inst: Instance, selector: str) -> None:
    if selector == "cor2.5":
        missing = [
            name
            for name, val in (("y", inst.y), ("delta", inst.delta), ("Delta", inst.big_delta))
            if val is None
        ]
    else:
        missing = [] if inst.family is not None else ["family"]
        if inst.cx is None:
            missing.append("phi/Phi")
        if selector in PAIR_SELECTORS or selector == "thm4.1":
            if inst.y is None:
                missing.append("y")
        if selector in ("thm1.1", "thm2", "thm3.1", "cor3.3") and inst.cy is None:
            missing.append("gamma/Gamma")
    if missing:
        raise InstanceFormatError(
            ",".join(missing), f"required by bound selector {selector!r}"
        )


def cmd_check(args) -> int:
    tol = args.tolerance if args.tolerance is not None else _default_tol()
    selector, extra = _parse_selector(args.bound)
    inst = _load_instance(args.instance)
    _require_fields(inst, selector)
    force = args.force
    payload: dict = {"bound": args.bound}
    chains: dict[str, bounds.BoundChain] = {}
    reports = {}
    try:
        if selector == "cor2.5":
            pack = bounds.schwarz_counterparts(
                inst.x, inst.y, inst.delta, inst.big_delta, tol=tol, force=force
            )
            chains.update(pack.chains())
            reports["x"] = pack.report
        else:
            fam = inst.family
            if selector in ("thm2.1", "eq2.6", "eq2.11", "cor2.3"):
                reports["x"] = check_hypothesis(inst.x, fam, inst.cx, tol)
            if selector == "thm2.1":
                chains["main"] = bounds.norm_bound_quadratic(
                    inst.x, fam, inst.cx, tol=tol, force=force
                )
            elif selector == "eq2.6":
                chains["main"] = bounds.norm_bound_linear(
                    inst.x, fam, inst.cx, tol=tol, force=force
                )
            elif selector == "eq2.11":
                chains["main"] = bounds.norm_bound_quadratic(
                    inst.x,
                    fam,
                    inst.cx,
                    variant=extra["variant"],
                    p=extra.get("p"),
                    tol=tol,
                    force=force,
                )
            elif selector == "cor2.3":
                chains["main"] = bounds.bessel_counterpart(
                    inst.x, fam, inst.cx, tol=tol, force=force
                )
            elif selector == "thm1.1":
                chains["main"] = bounds.gruss_refined_sqrt(
                    inst.x, inst.y, fam, inst.cx, inst.cy, tol=tol, force=force
                )
                reports["x"] = check_hypothesis(inst.x, fam, inst.cx, tol)
                reports["y"] = check_hypothesis(inst.y, fam, inst.cy, tol)
            elif selector == "thm2":
                chains["main"] = bounds.gruss_refined_midpoint(
                    inst.x, inst.y, fam, inst.cx, inst.cy, tol=tol, force=force
                )
                reports["x"] = check_hypothesis(inst.x, fam, inst.cx, tol)
                reports["y"] = check_hypothesis(inst.y, fam, inst.cy, tol)
            elif selector in ("thm3.1", "cor3.3"):
                chains["main"] = bounds.gruss_bound(
                    inst.x, inst.y, fam, inst.cx, inst.cy, tol=tol, force=force
                )
                reports["x"] = check_hypothesis(inst.x, fam, inst.cx, tol)
                reports["y"] = check_hypothesis(inst.y, fam, inst.cy, tol)
                if selector == "cor3.3" and fam.count == 1:
                    a = fam.coefficients(inst.x)[0]
                    b = fam.coefficients(inst.y)[0]
                    if abs(a) > 0.0 and abs(b) > 0.0:
                        chains["ratio_form"] = bounds.single_vector_ratio_chain(
                            inst.x, inst.y, fam, inst.cx, inst.cy, tol=tol, force=force
                        )
            elif selector == "thm4.1":
                chains["main"] = bounds.companion_bound(
                    inst.x, inst.y, fam, inst.cx, extra["lam"], tol=tol, force=force
                )
                z = Vector(
                    extra["lam"] * inst.x.coords + (1 - extra["lam"]) * inst.y.coords,
                    real_mode=inst.x.real_mode and inst.y.real_mode,
                )
                reports["combined"] = check_hypothesis(z, fam, inst.cx, tol)
    except HypothesisFailed as exc:
        payload["hypothesis_failed"] = exc.which
        payload["report"] = jsonio.report_to_json(exc.report)
        _emit(payload)
        return 2

    payload["hypothesis"] = {k: jsonio.report_to_json(r) for k, r in reports.items()}
    payload["chains"] = {}
    for name, chain in chains.items():
        entry = jsonio.chain_to_json(chain)
        if chain.values[-1] != 0.0:
            entry["ratio"] = chain.values[-2] / chain.values[-1]
        payload["chains"][name] = entry
    hyps_hold = all(r.holds for r in reports.values())
    chains_hold = all(c.all_hold for c in chains.values())
    payload["holds"] = hyps_hold and chains_hold
    _emit(payload)
    if not hyps_hold:
        return 2
    return 0 if chains_hold else 1


def cmd_fuzz(args) -> int:
    lo, hi = args.center_range
    spec = CorridorSpec(
        mode=args.mode, center_low=lo, center_high=hi, width_high=args.width
    )
    config = FuzzConfig(
        seed=args.seed,
        count=args.count,
        dim=args.dim,
        family_size=args.family,
        mode=args.mode,
        corridor=spec,
    )
    if config.family_size > config.dim:
        return _fail("--family must not exceed --dim")
    summary = run_fuzz(config)
    _emit(
        {
            "seed": args.seed,
            "count": args.count,
            "evaluated": summary.evaluated,
            "rejected": summary.rejected,
            "violations": summary.violations,
            "min_slack": {k: summary.min_slack[k] for k in sorted(summary.min_slack)},
            "checked": {k: summary.checked[k] for k in sorted(summary.checked)},
        }
    )
    return 0 if summary.ok else 1


def cmd_sweep(args) -> int:
    eps = [float(tok) for tok in args.eps.split(",") if tok.strip()]
    if not eps:
        return _fail("empty epsilon list; no file written")
    rows = sharpness_sweep(args.target, eps)
    csv_text = sweep_rows_to_csv(rows)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(csv_text)
    _emit({"target": args.target, "rows": len(rows), "out": args.out})
    return 0


def cmd_integral_demo(args) -> int:
    if args.family == "trig":
        grid = gauss_legendre_grid(args.nodes, 0.0, 2.0 * np.pi)
        fam_fns = trig_samples(args.count, grid)
    else:
        grid = gauss_legendre_grid(args.nodes, -1.0, 1.0)
        fam_fns = legendre_samples(args.count, grid)

    # Deterministic sandwich instance: f = sum c_i f_i + lift * f_0 / 2 with
    # M raised on the constant member only, so the bracketing holds pointwise.
    count = len(fam_fns)
    coeffs = np.array([1.0 / (i + 1.0) for i in range(count)])
    lift = 0.5
    table = np.stack([fi.values.real for fi in fam_fns])
    f = SampledFunction(coeffs @ table + 0.5 * lift * table[0], real_mode=True)
    m = coeffs.copy()
    big_m = coeffs.copy()
    big_m[0] += lift
    sandwich = sandwich_check(f, fam_fns, grid, m, big_m)
    inst = integral_instance(f, fam_fns, grid, sandwich.corridor)
    chains = {
        "bessel_counterpart": inst.bessel_chain(),
        "quadratic": inst.quadratic_chain(),
        "linear": inst.linear_chain(),
    }
    payload = {
        "family": args.family,
        "nodes": args.nodes,
        "count": count,
        "gram_residual": inst.family.gram_residual,
        "sandwich": {
            "min_lower_margin": sandwich.min_lower_margin,
            "min_upper_margin": sandwich.min_upper_margin,
        },
        "hypothesis": jsonio.report_to_json(inst.report_x),
        "chains": {k: jsonio.chain_to_json(c) for k, c in chains.items()},
    }
    _emit(payload)
    ok = inst.report_x.holds and all(c.all_hold for c in chains.values())
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthobound",
        description="Evaluate and stress-test corridor bounds over orthonormal families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="evaluate one instance file")
    p_check.add_argument("--instance", required=True, help="instance JSON file")
    p_check.add_argument("--bound", required=True, help="bound selector")
    p_check.add_argument("--tolerance", type=float, default=None)
    p_check.add_argument("--force", action="store_true",
                         help="evaluate even when the hypothesis fails")
    p_check.set_defaults(func=cmd_check)

    p_fuzz = sub.add_parser("fuzz", help="random admissible instances through every bound")
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--count", type=int, default=100)
    p_fuzz.add_argument("--dim", type=int, default=8)
    p_fuzz.add_argument("--family", type=int, default=4)
    p_fuzz.add_argument("--mode", choices=("real", "complex"), default="complex")
    p_fuzz.add_argument("--center-range", type=_range_arg, default=(1.0, 2.0),
                        metavar="LO,HI", help="corridor center range")
    p_fuzz.add_argument("--width", type=float, default=0.9,
                        help="max corridor half-width")
    p_fuzz.set_defaults(func=cmd_fuzz)

    p_sweep = sub.add_parser("sweep", help="sharpness sweep along the extremal family")
    p_sweep.add_argument("--target", choices=SWEEP_TARGETS, required=True)
    p_sweep.add_argument("--eps", required=True, help="comma-separated values in (0,1)")
    p_sweep.add_argument("--out", required=True, help="CSV output path")
    p_sweep.set_defaults(func=cmd_sweep)

    p_demo = sub.add_parser("integral-demo", help="weighted-quadrature demonstration")
    p_demo.add_argument("--family", choices=("trig", "legendre"), required=True)
    p_demo.add_argument("--nodes", type=int, default=64)
    p_demo.add_argument("--count", type=int, default=5)
    p_demo.set_defaults(func=cmd_integral_demo)
    return parser


def _range_arg(raw: str) -> tuple[float, float]:
    parts = raw.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected LO,HI")
    return float(parts[0]), float(parts[1])


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceFormatError as exc:
        return _fail(str(exc))
    except BadEpsilon as exc:
        return _fail(str(exc))
    except HypothesisFailed as exc:
        sys.stderr.write(f"inadmissible: {exc}\n")
        return 2
    except OrthoboundError as exc:
        return _fail(str(exc))
    except (OSError, ValueError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
