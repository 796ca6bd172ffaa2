"""Inequality chains bounding norms and projection defects under corridors.

Every operation returns a :class:`BoundChain`: an ordered, labeled list of
values that must be nondecreasing (left to right) for the inequality to
hold. Chains are checked at a single tolerance policy, relative 1e-9 against
the largest magnitude in the chain with an absolute floor of 1e-12.

Conditional bounds verify admissibility first and raise
:class:`HypothesisFailed` otherwise; evaluating them on inadmissible inputs
is a caller bug. Passing ``force=True`` evaluates anyway and marks the chain
unverified.

The corridor width factor M implemented by :func:`m_factor` uses the
difference form (|hi| - |lo|)^2 in its numerator; this is the form for which
the quadratic norm bound and the projection-defect bound are equivalent, and
the identity (1/4) M^2 + 1 == (1/4) sum (|hi|+|lo|)^2 / re_sum pins it down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .admissibility import (
    DEFAULT_HYPOTHESIS_TOL,
    HypothesisReport,
    ScalarCorridor,
    check_hypothesis,
)
from .errors import (
    BadExponent,
    BadLambda,
    HypothesisFailed,
    NonpositiveReSum,
    ZeroVector,
)
from .family import OrthonormalFamily, validate_family
from .space import Vector, abs2, inner, norm, norm_sq, tree_sum

# Single tolerance policy for every chain assertion.
CHAIN_REL_TOL = 1e-9
CHAIN_ABS_TOL = 1e-12


@dataclass(frozen=True)
class BoundChain:
    """Ordered labeled inequality chain; holds iff values are nondecreasing."""

    labels: tuple[str, ...]
    values: tuple[float, ...]
    lhs_first: bool = True
    verified: bool = True

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        values = tuple(float(v) for v in self.values)
        if len(labels) != len(values) or len(values) < 2:
            raise ValueError("chain needs equally many labels and values, at least two")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)

    @property
    def tolerance(self) -> float:
        return max(CHAIN_ABS_TOL, CHAIN_REL_TOL * max(abs(v) for v in self.values))

    @property
    def slacks(self) -> tuple[float, ...]:
        return tuple(
            self.values[k + 1] - self.values[k] for k in range(len(self.values) - 1)
        )

    @property
    def all_hold(self) -> bool:
        if not self.lhs_first:
            return all(s <= self.tolerance for s in self.slacks)
        return all(s >= -self.tolerance for s in self.slacks)

    @property
    def min_slack(self) -> float:
        return min(self.slacks)


@dataclass(frozen=True)
class MFactor:
    """Aggregate corridor width factor M with its ingredients."""

    value: float
    numerator_terms: tuple[float, ...]
    denominator: float


def _require(
    x: Vector,
    fam: OrthonormalFamily,
    corridor: ScalarCorridor,
    tol: float,
    force: bool,
    which: str,
) -> HypothesisReport:
    report = check_hypothesis(x, fam, corridor, tol)
    if not report.holds and not force:
        raise HypothesisFailed(which, report)
    return report


def _coeff_power_sum(coeffs: np.ndarray) -> float:
    return float(tree_sum(abs2(coeffs)))


def bessel_defect(x: Vector, fam: OrthonormalFamily) -> float:
    """||x||^2 - sum_i |<x, e_i>|^2; nonnegative for any x, no corridor needed."""
    return norm_sq(x) - _coeff_power_sum(fam.coefficients(x))


def gruss_defect(x: Vector, y: Vector, fam: OrthonormalFamily) -> complex:
    """<x, y> - sum_i <x, e_i><e_i, y>, the truncated-expansion defect."""
    a = fam.coefficients(x)
    b = fam.coefficients(y)
    return inner(x, y) - complex(tree_sum(a * np.conj(b)))


def m_factor(corridor: ScalarCorridor) -> MFactor:
    """Corridor width factor M = sqrt(sum_i t_i / re_sum) with

    t_i = (|hi_i| - |lo_i|)^2 + 4 (|hi_i * conj(lo_i)| - Re(hi_i * conj(lo_i))).

    Requires re_sum > 0. For a real corridor 0 < m <= M this reduces to
    (M - m) / sqrt(m M).
    """
    if not corridor.re_sum > 0.0:
        raise NonpositiveReSum(corridor.re_sum)
    hi_abs = np.abs(corridor.hi)
    lo_abs = np.abs(corridor.lo)
    cross = corridor.hi * np.conj(corridor.lo)
    # |hi||lo| - Re(hi conj(lo)) is nonnegative; clamp away rounding dust.
    gap = np.maximum(hi_abs * lo_abs - cross.real, 0.0)
    terms = (hi_abs - lo_abs) ** 2 + 4.0 * gap
    value = math.sqrt(float(tree_sum(terms)) / corridor.re_sum)
    return MFactor(value, tuple(float(t) for t in terms), corridor.re_sum)


def norm_bound_linear(
    x: Vector,
    fam: OrthonormalFamily,
    corridor: ScalarCorridor,
    tol: float = DEFAULT_HYPOTHESIS_TOL,
    force: bool = False,
) -> BoundChain:
    """||x|| <= (1/2) sum_i Re[hi_i conj(a_i) + conj(lo_i) a_i] / sqrt(re_sum),

    where a_i = <x, e_i>.
    """
    if not corridor.re_sum > 0.0:
        raise NonpositiveReSum(corridor.re_sum)
    report = _require(x, fam, corridor, tol, force, "x")
    a = fam.coefficients(x)
    numerator = float(
        tree_sum((corridor.hi * np.conj(a) + np.conj(corridor.lo) * a).real)
    )
    bound = 0.5 * numerator / math.sqrt(corridor.re_sum)
    return BoundChain(
        labels=("||x||", "corridor linear bound"),
        values=(norm(x), bound),
        verified=report.holds,
    )


def norm_bound_quadratic(
    x: Vector,
    fam: OrthonormalFamily,
    corridor: ScalarCorridor,
    variant: str = "cbs",
    p: float | None = None,
    tol: float = DEFAULT_HYPOTHESIS_TOL,
    force: bool = False,
) -> BoundChain:
    """Reverse Bessel norm bounds.

    variant "cbs" bounds ||x||^2 by
    (1/4) sum (|hi|+|lo|)^2 / re_sum * sum |a_i|^2; the "max_sum",
    "holder" (with exponent p > 1) and "sum_max" variants bound ||x||
    by (1/2) / sqrt(re_sum) times the corresponding split of
    sum (|hi_i|+|lo_i|) |a_i|. Labels state which level is used.
    """
    if not corridor.re_sum > 0.0:
        raise NonpositiveReSum(corridor.re_sum)
    report = _require(x, fam, corridor, tol, force, "x")
    a = fam.coefficients(x)
    widths = np.abs(corridor.hi) + np.abs(corridor.lo)
    a_abs = np.abs(a)
    if variant == "cbs":
        bound = (
            0.25
            * float(tree_sum(widths**2))
            / corridor.re_sum
            * _coeff_power_sum(a)
        )
        return BoundChain(
            labels=("||x||^2", "corridor quadratic bound (cbs)"),
            values=(norm_sq(x), bound),
            verified=report.holds,
        )
    root = math.sqrt(corridor.re_sum)
    if variant == "max_sum":
        split = float(np.max(widths)) * float(tree_sum(a_abs))
        label = "corridor bound (max widths * sum coeffs)"
    elif variant == "holder":
        if p is None or not (p > 1.0) or math.isinf(p):
            raise BadExponent(f"holder variant needs finite p > 1, got {p}")
        q = p / (p - 1.0)
        split = float(tree_sum(widths**p)) ** (1.0 / p) * float(
            tree_sum(a_abs**q)
        ) ** (1.0 / q)
        label = f"corridor bound (holder p={p:g})"
    elif variant == "sum_max":
        split = float(np.max(a_abs)) * float(tree_sum(widths))
        label = "corridor bound (sum widths * max coeff)"
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return BoundChain(
        labels=("||x||", label),
        values=(norm(x), 0.5 * split / root),
        verified=report.holds,
    )


def bessel_counterpart(
    x: Vector,
    fam: OrthonormalFamily,
    corridor: ScalarCorridor,
    tol: float = DEFAULT_HYPOTHESIS_TOL,
    force: bool = False,
) -> BoundChain:
    """0 <= ||x||^2 - sum |a_i|^2 <= (1/4) M^2 sum |a_i|^2.

    For a real corridor with 0 <= m_i <= M_i the width factor reduces to
    sum (M_i - m_i)^2 / sum M_i m_i.
    """
    report = _require(x, fam, corridor, tol, force, "x")
    mf = m_factor(corridor)
    s = _coeff_power_sum(fam.coefficients(x))
    return BoundChain(
        labels=("0", "projection defect", "corridor defect bound"),
        values=(0.0, bessel_defect(x, fam), 0.25 * mf.value**2 * s),
        verified=report.holds,
    )


@dataclass(frozen=True)
class SchwarzCounterparts:
    """The four reverse-Schwarz chains for a pair (x, y) under (delta, Delta)."""

    norm_product: BoundChain
    norm_product_gap: BoundChain
    norm_product_sq: BoundChain
    norm_product_sq_gap: BoundChain
    report: HypothesisReport

    def chains(self) -> dict[str, BoundChain]:
        return {
            "norm_product": self.norm_product,
            "norm_product_gap": self.norm_product_gap,
            "norm_product_sq": self.norm_product_sq,
            "norm_product_sq_gap": self.norm_product_sq_gap,
        }


def schwarz_counterparts(
    x: Vector,
    y: Vector,
    delta: complex,
    Delta: complex,
    tol: float = DEFAULT_HYPOTHESIS_TOL,
    force: bool = False,
) -> SchwarzCounterparts:
    """Reverse Schwarz bounds for ||x|| ||y|| against |<x, y>|.

    Requires Re(Delta conj(delta)) > 0 and the admissibility of x for the
    single-member family {y/||y||} with corridor (delta ||y||, Delta ||y||).
    Square roots of the corridor product use sqrt(Re(Delta conj(delta))) in
    denominators and sqrt(|Delta conj(delta)|) inside the gap numerator; the
    two coincide when Delta conj(delta) is real positive.
    """
    delta = complex(delta)
    Delta = complex(Delta)
    ny2 = norm_sq(y)
    if ny2 == 0.0:
        raise ZeroVector("y must be nonzero")
    re_dd = (Delta * delta.conjugate()).real
    if not re_dd > 0.0:
        raise NonpositiveReSum(re_dd)
    ny = math.sqrt(ny2)
    unit = Vector(y.coords / ny, real_mode=y.real_mode)
    fam = validate_family([unit], tolerance=1e-12)
    real_pair = (
        x.real_mode and y.real_mode and delta.imag == 0.0 and Delta.imag == 0.0
    )
    corridor = ScalarCorridor([delta * ny], [Delta * ny], real_mode=real_pair)
    report = _require(x, fam, corridor, tol, force, "x")

    p = inner(x, y)
    p_abs = abs(p)
    nx = norm(x)
    root_re = math.sqrt(re_dd)
    abs_dd = abs(Delta) * abs(delta)
    mid = 0.5 * (Delta * p.conjugate() + delta.conjugate() * p).real / root_re
    width = abs(Delta) + abs(delta)
    verified = report.holds

    c_norm = BoundChain(
        labels=("||x|| ||y||", "midrange bound", "modulus bound"),
        values=(nx * ny, mid, 0.5 * width * p_abs / root_re),
        verified=verified,
    )
    gap_factor = (
        (math.sqrt(abs(Delta)) - math.sqrt(abs(delta))) ** 2
        + 2.0 * (math.sqrt(abs_dd) - root_re)
    ) / root_re
    c_gap = BoundChain(
        labels=("0", "||x|| ||y|| - |<x,y>|", "corridor gap bound"),
        values=(0.0, nx * ny - p_abs, 0.5 * gap_factor * p_abs),
        verified=verified,
    )
    c_sq = BoundChain(
        labels=("||x||^2 ||y||^2", "squared corridor bound"),
        values=(nx * nx * ny2, 0.25 * width**2 / re_dd * p_abs**2),
        verified=verified,
    )
    sq_gap_factor = ((abs(Delta) - abs(delta)) ** 2 + 4.0 * (abs_dd - re_dd)) / re_dd
    c_sq_gap = BoundChain(
        labels=("0", "||x||^2 ||y||^2 - |<x,y>|^2", "squared corridor gap bound"),
        values=(0.0, nx * nx * ny2 - p_abs**2, 0.25 * sq_gap_factor * p_abs**2),
        verified=verified,
    )
    return SchwarzCounterparts(c_norm, c_gap, c_sq, c_sq_gap, report)


def gruss_refined_sqrt(
    x: Vector,
    y: Vector,
    fam: OrthonormalFamily,
    cx: ScalarCorridor,
    cy: ScalarCorridor,
    tol: float = DEFAULT_HYPOTHESIS_TOL,
    force: bool = False,
) -> BoundChain:
    """|defect| <= r_x r_y - sqrt(sign_x) sqrt(sign_y) <= r_x r_y,

    where sign_x, sign_y are the sign-form values of the two admissibility
    conditions and r_x, r_y the corridor radii.
    """
    rep_x = _require(x, fam, cx, tol, force, "x")
    rep_y = _require(y, fam, cy, tol, force, "y")
    outer = cx.radius * cy.radius
    correction = math.sqrt(max(rep_x.cond_i_value, 0.0)) * math.sqrt(
        max(rep_y.cond_i_value, 0.0)
    )
    return BoundChain(
        labels=("|defect|", "sign-form refined bound", "radius product"),
        values=(abs(gruss_defect(x, y, fam)), outer - correction, outer),
        verified=rep_x.holds and rep_y.holds,
    )


def gruss_refined_midpoint(
    x: Vector,
    y: Vector,
    fam: OrthonormalFamily,
    cx: ScalarCorridor,
    cy: ScalarCorridor,
    tol: float = DEFAULT_HYPOTHESIS_TOL,
    force: bool = False,
) -> BoundChain:
    """|defect| <= r_x r_y - sum_i |mid_x,i - a_i| |mid_y,i - b_i| <= r_x r_y."""
    rep_x = _require(x, fam, cx, tol, force, "x")
    rep_y = _require(y, fam, cy, tol, force, "y")
    a = fam.coefficients(x)
    b = fam.coefficients(y)
    correction = float(
        tree_sum(np.abs(cx.midpoints - a) * np.abs(cy.midpoints - b))
    )
    outer = cx.radius * cy.radius
    return BoundChain(
        labels=("|defect|", "midpoint refined bound", "radius product"),
        values=(abs(gruss_defect(x, y, fam)), outer - correction, outer),
        verified=rep_x.holds and rep_y.holds,
    )


def schwarz_step(x: Vector, y: Vector, fam: OrthonormalFamily) -> BoundChain:
    """|defect(x, y)|^2 <= defect(x, x) * defect(y, y), valid for any inputs."""
    d = gruss_defect(x, y, fam)
    return BoundChain(
        labels=("|defect|^2", "projection defect product"),
        values=(abs(d) ** 2, bessel_defect(x, fam) * bessel_defect(y, fam)),
    )


def gruss_bound(
    x: Vector,
    y: Vector,
    fam: OrthonormalFamily,
    cx: ScalarCorridor,
    cy: ScalarCorridor,
    tol: float = DEFAULT_HYPOTHESIS_TOL,
    force: bool = False,
) -> BoundChain:
    """0 <= |defect| <= (1/4) M(cx) M(cy) (sum |a_i|^2)^(1/2) (sum |b_i|^2)^(1/2)."""
    rep_x = _require(x, fam, cx, tol, force, "x")
    rep_y = _require(y, fam, cy, tol, force, "y")
    mx = m_factor(cx)
    my = m_factor(cy)
    sx = _coeff_power_sum(fam.coefficients(x))
    sy = _coeff_power_sum(fam.coefficients(y))
    bound = 0.25 * mx.value * my.value * math.sqrt(sx) * math.sqrt(sy)
    return BoundChain(
        labels=("0", "|defect|", "corridor width bound"),
        values=(0.0, abs(gruss_defect(x, y, fam)), bound),
        verified=rep_x.holds and rep_y.holds,
    )


def single_vector_ratio_chain(
    x: Vector,
    y: Vector,
    fam: OrthonormalFamily,
    cx: ScalarCorridor,
    cy: ScalarCorridor,
    tol: float = DEFAULT_HYPOTHESIS_TOL,
    force: bool = False,
) -> BoundChain:
    """|<x,y> / (<x,e><e,y>) - 1| <= (1/4) M(cx) M(cy) for a one-member family.

    Requires both coefficients to be nonzero.
    """
    if fam.count != 1:
        raise ValueError("ratio form needs a single-member family")
    rep_x = _require(x, fam, cx, tol, force, "x")
    rep_y = _require(y, fam, cy, tol, force, "y")
    a = complex(fam.coefficients(x)[0])
    b = complex(fam.coefficients(y)[0])
    denom = a * b.conjugate()
    if denom == 0.0:
        raise ZeroVector("coefficients <x,e>, <y,e> must be nonzero")
    ratio = abs(inner(x, y) / denom - 1.0)
    bound = 0.25 * m_factor(cx).value * m_factor(cy).value
    return BoundChain(
        labels=("|<x,y>/(<x,e><e,y>) - 1|", "corridor width bound"),
        values=(ratio, bound),
        verified=rep_x.holds and rep_y.holds,
    )


def companion_bound(
    x: Vector,
    y: Vector,
    fam: OrthonormalFamily,
    corridor: ScalarCorridor,
    lam: float,
    tol: float = DEFAULT_HYPOTHESIS_TOL,
    force: bool = False,
) -> BoundChain:
    """Re(defect(x, y)) <= M^2 sum |<z, e_i>|^2 / (16 lam (1 - lam)),

    with z = lam*x + (1-lam)*y required to be admissible for the corridor.
    """
    if not 0.0 < lam < 1.0:
        raise BadLambda(f"lambda must lie strictly in (0, 1), got {lam}")
    z = Vector(
        lam * x.coords + (1.0 - lam) * y.coords,
        real_mode=x.real_mode and y.real_mode,
    )
    report = _require(z, fam, corridor, tol, force, "lam*x + (1-lam)*y")
    mf = m_factor(corridor)
    sz = _coeff_power_sum(fam.coefficients(z))
    bound = mf.value**2 * sz / (16.0 * lam * (1.0 - lam))
    return BoundChain(
        labels=("Re(defect)", "companion bound"),
        values=(gruss_defect(x, y, fam).real, bound),
        verified=report.holds,
    )
