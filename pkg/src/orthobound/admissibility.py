"""Scalar corridors and the two equivalent admissibility conditions.

A corridor assigns each family index a pair of scalars (phi_i, Phi_i). A
vector x is admissible when either of two equivalent conditions holds:

  sign form:  Re< sum_i Phi_i e_i - x, x - sum_i phi_i e_i >  >=  0
  ball form:  || x - sum_i (phi_i + Phi_i)/2 e_i ||  <=  radius

with radius = (1/2) * (sum_i |Phi_i - phi_i|^2)^(1/2). For an exactly
orthonormal family the two quantities are linked by the algebraic identity

  sign_value == radius^2 - ball_residual^2,

which this module asserts on every evaluation; a violation beyond the
tolerance band means the family's gram residual is too large for the
requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DimensionMismatch, IdentityViolation
from .family import OrthonormalFamily
from .space import Vector, abs2, tree_sum

DEFAULT_HYPOTHESIS_TOL = 1e-10

RngLike = Union[np.random.Generator, int, None]


@dataclass(frozen=True)
class ScalarCorridor:
    """Per-index scalar pairs (lo_i, hi_i) with eagerly cached aggregates.

    ``re_sum`` is sum_i Re(hi_i * conj(lo_i)); ``radius`` and ``midpoints``
    are the ball-form data. All three are recomputable from lo/hi, which the
    test suite uses as its oracle.
    """

    lo: np.ndarray
    hi: np.ndarray
    real_mode: bool = False
    re_sum: float = field(init=False)
    radius: float = field(init=False)
    midpoints: np.ndarray = field(init=False)

    def __post_init__(self):
        lo = np.array(self.lo, dtype=np.complex128, copy=True).reshape(-1)
        hi = np.array(self.hi, dtype=np.complex128, copy=True).reshape(-1)
        if lo.size == 0 or lo.size != hi.size:
            raise ValueError(
                f"corridor sides must be nonempty and equal length, got {lo.size} and {hi.size}"
            )
        for name, arr in (("lo", lo), ("hi", hi)):
            if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
                raise ValueError(f"corridor {name} must be finite")
            if self.real_mode and np.any(arr.imag != 0.0):
                raise ValueError(f"real_mode corridor {name} has imaginary parts")
        mid = 0.5 * (lo + hi)
        for arr in (lo, hi, mid):
            arr.flags.writeable = False
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "midpoints", mid)
        object.__setattr__(self, "re_sum", float(tree_sum((hi * np.conj(lo)).real)))
        object.__setattr__(
            self, "radius", 0.5 * math.sqrt(float(tree_sum(abs2(hi - lo))))
        )

    @property
    def size(self) -> int:
        return self.lo.size

    def scaled(self, t: float) -> "ScalarCorridor":
        """Corridor for the scaled instance t*x (t real > 0)."""
        return ScalarCorridor(t * self.lo, t * self.hi, self.real_mode)


@dataclass(frozen=True)
class HypothesisReport:
    """Both admissibility forms evaluated on one instance."""

    cond_i_value: float
    cond_ii_residual: float
    radius: float
    holds: bool


def check_hypothesis(
    x: Vector,
    fam: OrthonormalFamily,
    corridor: ScalarCorridor,
    tol: float = DEFAULT_HYPOTHESIS_TOL,
) -> HypothesisReport:
    """Evaluate the sign form and the ball form, asserting their identity.

    ``holds`` is the non-strict sign test cond_i_value >= -tol * max(1, r^2),
    so boundary instances (the extremal constructions) pass. Raises
    :class:`IdentityViolation` when the two forms disagree beyond the
    tolerance band, which signals a family too loose for ``tol``.
    """
    if corridor.size != fam.count:
        raise DimensionMismatch(
            f"corridor has {corridor.size} entries for a family of {fam.count}"
        )
    if x.dim != fam.dim:
        raise DimensionMismatch(f"vector dim {x.dim} != family dim {fam.dim}")
    stacked = np.stack([corridor.hi, corridor.lo, corridor.midpoints])
    upper, lower, center = stacked @ fam.matrix
    xc = x.coords
    cond_i = float(tree_sum(((upper - xc) * np.conj(xc - lower)).real))
    residual = math.sqrt(float(tree_sum(abs2(xc - center))))
    radius = corridor.radius
    scale = max(1.0, radius * radius)
    gap = cond_i - (radius * radius - residual * residual)
    if abs(gap) > tol * scale:
        raise IdentityViolation(gap, tol * scale, fam.gram_residual)
    return HypothesisReport(
        cond_i_value=cond_i,
        cond_ii_residual=residual,
        radius=radius,
        holds=cond_i >= -tol * scale,
    )


@dataclass(frozen=True)
class CorridorSpec:
    """Recipe for sampling random corridors.

    Centers are drawn uniformly from [center_low, center_high] (with a random
    phase in complex mode); per-index half-widths uniformly from
    [0, width_high]. With the default ranges every sampled corridor has
    re_sum > 0; widening the center range across zero produces corridors that
    downstream bounds must reject.
    """

    mode: str = "complex"
    center_low: float = 1.0
    center_high: float = 2.0
    width_high: float = 0.9

    def __post_init__(self):
        if self.mode not in ("real", "complex"):
            raise ValueError(f"unknown corridor mode {self.mode!r}")
        if self.width_high < 0.0:
            raise ValueError("width_high must be nonnegative")

    def sample(self, count: int, rng: RngLike = None) -> ScalarCorridor:
        rng = np.random.default_rng(rng)
        if self.mode == "real":
            centers = rng.uniform(self.center_low, self.center_high, count)
            widths = rng.uniform(0.0, self.width_high, count)
            return ScalarCorridor(centers - widths, centers + widths, real_mode=True)
        centers = rng.uniform(self.center_low, self.center_high, count) * np.exp(
            1j * rng.uniform(0.0, 2.0 * math.pi, count)
        )
        widths = rng.uniform(0.0, self.width_high, count) * np.exp(
            1j * rng.uniform(0.0, 2.0 * math.pi, count)
        )
        return ScalarCorridor(centers - widths, centers + widths)


def admissible_point(
    fam: OrthonormalFamily,
    corridor: ScalarCorridor,
    rng: RngLike,
    slack: float,
) -> Vector:
    """Corridor center plus a random full-space direction of norm slack*radius.

    The returned vector satisfies the ball form by construction (slack in
    [0, 1]), hence also the sign form.
    """
    if not 0.0 <= slack <= 1.0:
        raise ValueError("slack must lie in [0, 1]")
    rng = np.random.default_rng(rng)
    center = corridor.midpoints @ fam.matrix
    real = fam.real_mode and corridor.real_mode
    u = rng.standard_normal(fam.dim)
    if not real:
        u = u + 1j * rng.standard_normal(fam.dim)
    u_norm = math.sqrt(float(tree_sum(abs2(u))))
    if u_norm > 0.0 and corridor.radius > 0.0:
        offset = (slack * corridor.radius / u_norm) * u
    else:
        offset = np.zeros(fam.dim, dtype=np.complex128)
    return Vector(center + offset, real_mode=real)


def random_admissible(
    fam: OrthonormalFamily,
    corridor_spec: CorridorSpec,
    rng: RngLike,
    slack: float,
) -> tuple[Vector, ScalarCorridor]:
    """Sample a corridor from the spec and an admissible vector for it."""
    rng = np.random.default_rng(rng)
    corridor = corridor_spec.sample(fam.count, rng)
    return admissible_point(fam, corridor, rng, slack), corridor
