"""Seeded fuzz campaigns running every bound on random admissible instances.

One "bundle" draws a family plus admissible vectors/corridors for each kind
of bound and evaluates the selected chains. Corridors whose re_sum fails to
be positive are rejected and counted, never silently repaired. Disjoint
seeds give independent shards; a fixed seed reproduces a campaign exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .admissibility import CorridorSpec, ScalarCorridor, admissible_point
from .bounds import (
    BoundChain,
    bessel_defect,
    companion_bound,
    gruss_bound,
    gruss_refined_midpoint,
    gruss_refined_sqrt,
    norm_bound_linear,
    norm_bound_quadratic,
    bessel_counterpart,
    schwarz_counterparts,
    schwarz_step,
    single_vector_ratio_chain,
)
from .family import random_family, validate_family
from .space import Vector, norm_sq

ALL_SELECTORS = (
    "thm1.1",
    "thm2",
    "thm2.1",
    "eq2.6",
    "eq2.11:max",
    "eq2.11:holder:3",
    "eq2.11:sum",
    "cor2.3",
    "cor2.5",
    "thm3.1",
    "cor3.3",
    "thm4.1:0.1",
    "thm4.1:0.5",
    "thm4.1:0.9",
    "bessel-defect",
    "schwarz-step",
)


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    count: int = 1000
    dim: int = 8
    family_size: int = 4
    mode: str = "complex"
    corridor: CorridorSpec | None = None
    selectors: tuple[str, ...] = ALL_SELECTORS
    holder_p: float = 3.0

    def spec(self) -> CorridorSpec:
        if self.corridor is not None:
            return self.corridor
        return CorridorSpec(mode=self.mode)


@dataclass
class FuzzSummary:
    evaluated: int = 0
    rejected: int = 0
    violations: list[dict] = field(default_factory=list)
    min_slack: dict[str, float] = field(default_factory=dict)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, selector: str, chain: BoundChain, trial: int) -> None:
        self.checked[selector] = self.checked.get(selector, 0) + 1
        slack = chain.min_slack
        if selector not in self.min_slack or slack < self.min_slack[selector]:
            self.min_slack[selector] = slack
        if not chain.all_hold:
            self.violations.append(
                {"selector": selector, "trial": trial, "values": list(chain.values)}
            )


def _random_vector(dim: int, rng: np.random.Generator, real: bool) -> Vector:
    u = rng.standard_normal(dim)
    if not real:
        u = u + 1j * rng.standard_normal(dim)
    return Vector(u, real_mode=real)


def run_fuzz(config: FuzzConfig) -> FuzzSummary:
    """Run ``config.count`` bundles; returns per-selector minimum slacks."""
    rng = np.random.default_rng(config.seed)
    spec = config.spec()
    real = config.mode == "real"
    summary = FuzzSummary()
    want = set(config.selectors)

    def sample_corridor(count: int):
        corr = spec.sample(count, rng)
        if corr.re_sum <= 0.0:
            summary.rejected += 1
            return None
        return corr

    for trial in range(config.count):
        fam = random_family(config.dim, config.family_size, rng, real=real)
        cx = sample_corridor(fam.count)
        cy = sample_corridor(fam.count)
        if cx is None or cy is None:
            continue
        summary.evaluated += 1
        x = admissible_point(fam, cx, rng, rng.uniform())
        y = admissible_point(fam, cy, rng, rng.uniform())

        if "thm2.1" in want:
            summary.record("thm2.1", norm_bound_quadratic(x, fam, cx), trial)
        if "eq2.6" in want:
            summary.record("eq2.6", norm_bound_linear(x, fam, cx), trial)
        if "eq2.11:max" in want:
            summary.record(
                "eq2.11:max", norm_bound_quadratic(x, fam, cx, "max_sum"), trial
            )
        if "eq2.11:holder:3" in want:
            summary.record(
                "eq2.11:holder:3",
                norm_bound_quadratic(x, fam, cx, "holder", config.holder_p),
                trial,
            )
        if "eq2.11:sum" in want:
            summary.record(
                "eq2.11:sum", norm_bound_quadratic(x, fam, cx, "sum_max"), trial
            )
        if "cor2.3" in want:
            summary.record("cor2.3", bessel_counterpart(x, fam, cx), trial)
        if "thm1.1" in want:
            summary.record("thm1.1", gruss_refined_sqrt(x, y, fam, cx, cy), trial)
        if "thm2" in want:
            summary.record("thm2", gruss_refined_midpoint(x, y, fam, cx, cy), trial)
        if "thm3.1" in want:
            summary.record("thm3.1", gruss_bound(x, y, fam, cx, cy), trial)

        for lam in (0.1, 0.5, 0.9):
            key = f"thm4.1:{lam}"
            if key not in want:
                continue
            corr_z = sample_corridor(fam.count)
            if corr_z is None:
                continue
            z = admissible_point(fam, corr_z, rng, rng.uniform())
            xa = _random_vector(config.dim, rng, real)
            yb = Vector(
                (z.coords - lam * xa.coords) / (1.0 - lam),
                real_mode=z.real_mode and xa.real_mode,
            )
            summary.record(key, companion_bound(xa, yb, fam, corr_z, lam), trial)

        if "cor2.5" in want:
            yv = _random_vector(config.dim, rng, real)
            corr1 = sample_corridor(1)
            if corr1 is not None:
                ny = norm_sq(yv) ** 0.5
                unit = Vector(yv.coords / ny, real_mode=yv.real_mode)
                fam1 = validate_family([unit], tolerance=1e-12)
                delta = complex(corr1.lo[0])
                big_delta = complex(corr1.hi[0])
                # Corridor for x over {y/||y||} is (delta*||y||, Delta*||y||).
                corr_x = ScalarCorridor(
                    [delta * ny],
                    [big_delta * ny],
                    real_mode=corr1.real_mode and yv.real_mode,
                )
                xs = admissible_point(fam1, corr_x, rng, rng.uniform())
                pack = schwarz_counterparts(xs, yv, delta, big_delta)
                for name, chain in pack.chains().items():
                    summary.record(f"cor2.5:{name}", chain, trial)

        if "cor3.3" in want:
            fam_single = random_family(config.dim, 1, rng, real=real)
            c1 = sample_corridor(1)
            c2 = sample_corridor(1)
            if c1 is not None and c2 is not None:
                xs = admissible_point(fam_single, c1, rng, rng.uniform())
                ys = admissible_point(fam_single, c2, rng, rng.uniform())
                summary.record(
                    "cor3.3", gruss_bound(xs, ys, fam_single, c1, c2), trial
                )
                a = fam_single.coefficients(xs)[0]
                b = fam_single.coefficients(ys)[0]
                if abs(a) > 1e-9 and abs(b) > 1e-9:
                    summary.record(
                        "cor3.3:ratio",
                        single_vector_ratio_chain(xs, ys, fam_single, c1, c2),
                        trial,
                    )

        if "bessel-defect" in want or "schwarz-step" in want:
            xr = _random_vector(config.dim, rng, real)
            yr = _random_vector(config.dim, rng, real)
            if "bessel-defect" in want:
                defect = bessel_defect(xr, fam)
                floor = -1e-10 * norm_sq(xr)
                summary.record(
                    "bessel-defect",
                    BoundChain(("floor", "projection defect"), (floor, defect)),
                    trial,
                )
            if "schwarz-step" in want:
                summary.record("schwarz-step", schwarz_step(xr, yr, fam), trial)

    return summary
