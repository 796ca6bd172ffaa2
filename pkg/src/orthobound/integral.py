"""Weighted-L2 instances reduced to the coordinate setting through embedding.

Every weighted quantity here is obtained by embedding sampled functions and
calling the coordinate-space operations, so integral results agree with
their discrete counterparts exactly (shared code path, zero tolerance).

"Almost everywhere" for a discrete measure means: at every node with
positive point mass w_j * rho_j; zero-mass nodes are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .admissibility import HypothesisReport, ScalarCorridor, check_hypothesis
from .bounds import (
    BoundChain,
    bessel_counterpart,
    gruss_bound,
    norm_bound_linear,
    norm_bound_quadratic,
)
from .errors import DimensionMismatch, NonpositiveReSum, SandwichViolated
from .family import OrthonormalFamily, QUADRATURE_TOLERANCE, validate_family
from .space import QuadratureGrid, SampledFunction, Vector, embed, tree_sum


def _hypothesis_tol(fam: OrthonormalFamily) -> float:
    # Identity band must dominate the family's orthonormality error.
    return max(1e-10, 10.0 * fam.count * fam.gram_residual)


@dataclass(frozen=True)
class IntegralInstance:
    """Embedded weighted-space instance, ready for the coordinate bounds."""

    family: OrthonormalFamily
    x: Vector
    cx: ScalarCorridor
    report_x: HypothesisReport
    y: Vector | None = None
    cy: ScalarCorridor | None = None
    report_y: HypothesisReport | None = None

    def linear_chain(self, **kw) -> BoundChain:
        return norm_bound_linear(self.x, self.family, self.cx, **kw)

    def quadratic_chain(self, variant: str = "cbs", p: float | None = None, **kw) -> BoundChain:
        return norm_bound_quadratic(self.x, self.family, self.cx, variant, p, **kw)

    def bessel_chain(self, **kw) -> BoundChain:
        return bessel_counterpart(self.x, self.family, self.cx, **kw)

    def gruss_chain(self, **kw) -> BoundChain:
        if self.y is None or self.cy is None:
            raise ValueError("instance has no second function")
        return gruss_bound(self.x, self.y, self.family, self.cx, self.cy, **kw)


def integral_instance(
    f: SampledFunction,
    fam_fns: Sequence[SampledFunction],
    grid: QuadratureGrid,
    cx: ScalarCorridor,
    g: SampledFunction | None = None,
    cy: ScalarCorridor | None = None,
    tolerance: float = QUADRATURE_TOLERANCE,
    hypothesis_tol: float | None = None,
) -> IntegralInstance:
    """Embed functions and family, evaluating the admissibility reports.

    The discrete report is exactly the quadrature evaluation of the weighted
    admissibility conditions, since both run through the same embedded
    arithmetic.
    """
    fam = validate_family([embed(fi, grid) for fi in fam_fns], tolerance)
    tol = _hypothesis_tol(fam) if hypothesis_tol is None else hypothesis_tol
    x = embed(f, grid)
    report_x = check_hypothesis(x, fam, cx, tol)
    y = report_y = None
    if g is not None:
        if cy is None:
            raise ValueError("second function supplied without its corridor")
        y = embed(g, grid)
        report_y = check_hypothesis(y, fam, cy, tol)
    return IntegralInstance(fam, x, cx, report_x, y, cy, report_y)


@dataclass(frozen=True)
class SandwichReport:
    """Pointwise bracketing margins over the positive-mass nodes."""

    min_lower_margin: float
    min_upper_margin: float
    worst_lower_node: int
    worst_upper_node: int
    corridor: ScalarCorridor

    @property
    def passed(self) -> bool:
        return self.min_lower_margin >= 0.0 and self.min_upper_margin >= 0.0


def sandwich_check(
    f: SampledFunction,
    fam_fns: Sequence[SampledFunction],
    grid: QuadratureGrid,
    m: Sequence[float],
    big_m: Sequence[float],
) -> SandwichReport:
    """Check sum_i m_i f_i(s) <= f(s) <= sum_i M_i f_i(s) at positive-mass nodes.

    Real-space only, with m_i, M_i >= 0 and sum M_i m_i > 0. Success makes
    the integrand of the weighted sign condition pointwise nonnegative, so
    the embedded instance is admissible for the corridor (m, M).

    Raises :class:`SandwichViolated` with the worst node and margin when the
    bracketing fails.
    """
    if not f.real_mode or not all(fi.real_mode for fi in fam_fns):
        raise ValueError("sandwich conditions require real-space functions")
    m = np.asarray(m, dtype=np.float64).reshape(-1)
    big_m = np.asarray(big_m, dtype=np.float64).reshape(-1)
    if m.size != len(fam_fns) or big_m.size != len(fam_fns):
        raise DimensionMismatch(
            f"{m.size}/{big_m.size} corridor entries for {len(fam_fns)} functions"
        )
    if np.any(m < 0.0) or np.any(big_m < 0.0):
        raise ValueError("sandwich coefficients must be nonnegative")
    cross = float(tree_sum(big_m * m))
    if not cross > 0.0:
        raise NonpositiveReSum(cross)
    if f.size != grid.size or any(fi.size != grid.size for fi in fam_fns):
        raise DimensionMismatch("function samples do not match the grid")

    table = np.stack([fi.values.real for fi in fam_fns])
    lower_env = m @ table
    upper_env = big_m @ table
    active = np.nonzero(grid.point_mass > 0.0)[0]
    fv = f.values.real
    lower_margins = fv[active] - lower_env[active]
    upper_margins = upper_env[active] - fv[active]
    i_lo = int(np.argmin(lower_margins))
    i_up = int(np.argmin(upper_margins))
    report = SandwichReport(
        min_lower_margin=float(lower_margins[i_lo]),
        min_upper_margin=float(upper_margins[i_up]),
        worst_lower_node=int(active[i_lo]),
        worst_upper_node=int(active[i_up]),
        corridor=ScalarCorridor(m, big_m, real_mode=True),
    )
    if report.min_lower_margin < 0.0:
        raise SandwichViolated("lower", report.worst_lower_node, report.min_lower_margin)
    if report.min_upper_margin < 0.0:
        raise SandwichViolated("upper", report.worst_upper_node, report.min_upper_margin)
    return report
