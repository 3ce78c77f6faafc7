"""Closed-form work statistics for the discrete exchange engine.

Mean quantities depend on populations only through the mean drawn weight
f_k = w_k/N of each reservoir: per cycle,

    <Q_k> = eps_k * (f_{k-1} - f_k)           (cyclic, heat into reservoir k)
    <W>   = sum_k (eps_k - eps_{k+1}) * f_k = -<Q_low> - <Q_high>

For the 0/1-weight model each draw is an independent Bernoulli(f_k) variable,
so the work, a weighted sum of independent draws, has

    Var(W) = sum_k (eps_k - eps_{k+1})^2 * f_k * (1 - f_k)

and Var(W)/<W> measures the relative fluctuation of one cycle's output.  The
same independence argument gives the general-weight extension
sum_k (eps_k - eps_{k+1})^2 * Var(w_k), exposed separately.

Otto means the two-reservoir (m = 1) engine; its efficiency 1 - eps_l/eps_h
depends only on the altitudes.  ``work_from_betas`` evaluates the Otto mean
work when both reservoirs sit at thermal occupancies f(beta*eps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .thermo import occupancy, occupancy_np

__all__ = [
    "OttoSpec",
    "RingSpec",
    "WorkStatistics",
    "mean_heats_otto",
    "mean_work_otto",
    "efficiency_otto",
    "mean_heats_ring",
    "work_statistics_ring",
    "work_statistics_general",
    "work_from_betas",
    "equilibrium_ring",
]


@dataclass(frozen=True)
class OttoSpec:
    """Two-reservoir engine: altitudes eps_l < eps_h, total weights per urn.

    ``w_low``/``w_high`` are summed ball weights; for the 0/1 model they are
    the excited counts n_l, n_h (see ``from_counts``).
    """

    eps_l: float
    eps_h: float
    total: int
    w_low: float
    w_high: float

    def __post_init__(self) -> None:
        if not (0.0 < self.eps_l < self.eps_h) or not math.isfinite(self.eps_h):
            raise ValueError("invalid altitude order")
        if self.total < 1:
            raise ValueError("empty reservoir")
        for w in (self.w_low, self.w_high):
            if not math.isfinite(w) or w < 0.0:
                raise ValueError("invalid population")

    @classmethod
    def from_counts(cls, eps_l: float, eps_h: float, total: int, n_l: int, n_h: int) -> "OttoSpec":
        """0/1-weight spec from excited counts (each must not exceed total)."""
        for n in (n_l, n_h):
            if n < 0 or n > total:
                raise ValueError("invalid population")
        return cls(eps_l=eps_l, eps_h=eps_h, total=total, w_low=float(n_l), w_high=float(n_h))


@dataclass(frozen=True, eq=False)
class RingSpec:
    """Per-reservoir description of a 2m-ring: altitude, mean weight, and
    (for 0/1 populations) the excited fraction driving the variance model.

    Index convention is cyclic with k = 0..2m-1, the first m entries the low
    group; index -1 wraps to 2m-1.
    """

    altitudes: np.ndarray
    mean_weights: np.ndarray
    bernoulli_f: np.ndarray | None = None

    def __post_init__(self) -> None:
        eps = np.array(self.altitudes, dtype=float)
        f = np.array(self.mean_weights, dtype=float)
        object.__setattr__(self, "altitudes", eps)
        object.__setattr__(self, "mean_weights", f)
        n = eps.shape[0] if eps.ndim == 1 else 0
        if n < 2 or n % 2 != 0 or f.shape != (n,):
            raise ValueError("ring must hold 2m >= 2 reservoirs")
        if not np.all(np.isfinite(eps)) or np.any(eps <= 0.0):
            raise ValueError("invalid altitude")
        if not np.all(np.isfinite(f)) or np.any(f < 0.0):
            raise ValueError("invalid population")
        if self.bernoulli_f is not None:
            b = np.array(self.bernoulli_f, dtype=float)
            object.__setattr__(self, "bernoulli_f", b)
            if b.shape != (n,) or not np.all((b >= 0.0) & (b <= 1.0)):
                raise ValueError("invalid population")
            b.flags.writeable = False
        eps.flags.writeable = False
        f.flags.writeable = False

    @property
    def m(self) -> int:
        return len(self.altitudes) // 2


@dataclass(frozen=True)
class WorkStatistics:
    """Mean and variance of one cycle's work; ratio is None when mean = 0."""

    mean: float
    variance: float
    ratio: float | None


def mean_heats_otto(spec: OttoSpec) -> tuple[float, float]:
    """Mean heat drawn from the low and high reservoirs per cycle."""
    d = (spec.w_high - spec.w_low) / spec.total
    return (spec.eps_l * d, -(spec.eps_h * d))


def mean_work_otto(spec: OttoSpec) -> float:
    """Mean work per cycle, exactly -(Q_l + Q_h) by energy conservation."""
    q_l, q_h = mean_heats_otto(spec)
    return -(q_l + q_h)


def efficiency_otto(eps_l: float, eps_h: float) -> float:
    """Engine efficiency 1 - eps_l/eps_h; populations drop out entirely."""
    if not (0.0 < eps_l < eps_h):
        raise ValueError("invalid altitude order")
    return 1.0 - eps_l / eps_h


def mean_heats_ring(spec: RingSpec) -> tuple[float, float, float]:
    """Group heats (Q_low, Q_high) and mean work W = -(Q_low + Q_high)."""
    eps = spec.altitudes
    f = spec.mean_weights
    q = eps * (np.roll(f, 1) - f)
    m = spec.m
    q_low = float(np.sum(q[:m]))
    q_high = float(np.sum(q[m:]))
    return q_low, q_high, -(q_low + q_high)


def work_statistics_ring(spec: RingSpec) -> WorkStatistics:
    """Exact mean/variance of one cycle's work for the 0/1-weight model."""
    if spec.bernoulli_f is None:
        raise ValueError("bernoulli fractions required for the 0/1 variance model")
    eps = spec.altitudes
    f = spec.bernoulli_f
    d = eps - np.roll(eps, -1)
    mean = float(d @ f)
    variance = float((d * d) @ (f * (1.0 - f)))
    ratio = variance / mean if mean != 0.0 else None
    return WorkStatistics(mean=mean, variance=variance, ratio=ratio)


def work_statistics_general(
    altitudes: np.ndarray, mean_weights: np.ndarray, weight_variances: np.ndarray
) -> WorkStatistics:
    """Work statistics for arbitrary per-reservoir weight distributions.

    Extension of the 0/1 model: draws stay independent across reservoirs, so
    Var(W) = sum_k (eps_k - eps_{k+1})^2 Var(w_k) for any weight law; the 0/1
    case is Var(w) = f(1-f).
    """
    eps = np.asarray(altitudes, dtype=float)
    mw = np.asarray(mean_weights, dtype=float)
    vw = np.asarray(weight_variances, dtype=float)
    if eps.shape != mw.shape or eps.shape != vw.shape or eps.ndim != 1:
        raise ValueError("ring arrays must have equal 1-d shapes")
    if np.any(vw < 0.0):
        raise ValueError("invalid population")
    d = eps - np.roll(eps, -1)
    mean = float(d @ mw)
    variance = float((d * d) @ vw)
    ratio = variance / mean if mean != 0.0 else None
    return WorkStatistics(mean=mean, variance=variance, ratio=ratio)


def work_from_betas(
    eps_l: float, eps_h: float, beta_l: float, beta_h: float
) -> float:
    """Otto mean work with both reservoirs thermal:
    (eps_h - eps_l) * (f(beta_h*eps_h) - f(beta_l*eps_l))."""
    if not (eps_l > 0.0 and eps_h > 0.0):
        raise ValueError("invalid altitude order")
    bl = float(beta_l)
    bh = float(beta_h)
    return (eps_h - eps_l) * (occupancy(bh * eps_h) - occupancy(bl * eps_l))


def equilibrium_ring(
    beta_l: float, beta_h: float, eps_low: np.ndarray, eps_high: np.ndarray
) -> RingSpec:
    """RingSpec with every sub-reservoir at its thermal occupancy f(beta*eps).

    ``eps_low``/``eps_high`` are the altitude sequences of the cold and hot
    branches, in ring order.
    """
    lo = np.asarray(eps_low, dtype=float)
    hi = np.asarray(eps_high, dtype=float)
    if lo.ndim != 1 or lo.shape != hi.shape or lo.size == 0:
        raise ValueError("branches must be equal-length non-empty sequences")
    f = np.concatenate([occupancy_np(float(beta_l) * lo), occupancy_np(float(beta_h) * hi)])
    return RingSpec(
        altitudes=np.concatenate([lo, hi]), mean_weights=f, bernoulli_f=f
    )
