"""Occupancies, inverse temperatures, and entropy functions for two-level urns.

A reservoir of N balls, n of them at weight 1 and the rest at weight 0, held
at altitude eps, behaves as N independent two-level systems.  Requiring the
population to be thermal fixes the inverse temperature through

    exp(-beta * eps) = n / (N - n),    i.e.  beta = ln(N/n - 1) / eps,

which is negative for inverted populations (n > N/2).  Reduced units
throughout: k_B = 1, temperature T = 1/beta, entropy in nats.

The entropy rate used by the continuum cycle limit is

    s(x, y) = x * f(y) + ln(1 + exp(-x)),      f(x) = 1 / (exp(x) + 1),

the per-system entropy of a two-level population whose gap is x while its
occupancy is held at f(y); s(x) means s(x, x).  The integration constant is
chosen so s -> 0 as x -> +inf; any other choice cancels in all observable
differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "InverseTemperature",
    "EntropyValue",
    "beta_from_occupancy",
    "occupancy",
    "occupancy_np",
    "softplus",
    "entropy_s",
    "entropy_equally_spaced",
    "log_degeneracy",
    "carnot_efficiency",
]

# comb() stays exact below this; above it log-gamma avoids bignum blowup
_EXACT_COMB_LIMIT = 10_000


@dataclass(frozen=True)
class InverseTemperature:
    """Inverse temperature beta in 1/energy units (k_B = 1); may be negative."""

    beta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", float(self.beta))
        if not math.isfinite(self.beta):
            raise ValueError("degenerate occupancy (infinite |beta|)")

    @property
    def temperature(self) -> float:
        """T = 1/beta; +inf at beta = 0, negative for inverted populations."""
        return math.inf if self.beta == 0.0 else 1.0 / self.beta

    def __float__(self) -> float:
        return self.beta


@dataclass(frozen=True)
class EntropyValue:
    """Dimensionless entropy (k_B = 1, natural log)."""

    s: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", float(self.s))
        if not (self.s >= 0.0):
            raise ValueError("entropy must be nonnegative")

    def __float__(self) -> float:
        return self.s


def occupancy(x: float) -> float:
    """Excited fraction f(x) = 1/(exp(x) + 1), stable over the whole real line.

    Accepts +-inf as limits: f(+inf) = 0, f(-inf) = 1.
    """
    if x >= 0.0:
        e = math.exp(-x)
        return e / (1.0 + e)
    return 1.0 / (math.exp(x) + 1.0)


def occupancy_np(x: np.ndarray) -> np.ndarray:
    """Vectorized occupancy with the same branch structure as the scalar form."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    pos = x >= 0
    e = np.exp(-x[pos])
    out[pos] = e / (1.0 + e)
    out[~pos] = 1.0 / (np.exp(x[~pos]) + 1.0)
    return out


def softplus(x: float) -> float:
    """ln(1 + exp(x)) without overflow for large |x|."""
    if x >= 0.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def _entropy(x: float, y: float) -> float:
    # raw float path; analytically >= 0, rounding may leave a ~ulp negative
    raw = x * occupancy(y) + softplus(-x)
    return raw if raw > 0.0 else 0.0


def entropy_s(x: float, y: float | None = None) -> EntropyValue:
    """Two-level entropy rate s(x, y) = x*f(y) + ln(1 + exp(-x)).

    ``x`` is the reduced gap (beta*eps) the entropy is evaluated at, ``y`` the
    reduced gap whose equilibrium occupancy the population is held at.  ``y``
    defaults to ``x``, the equilibrium value s(x); s(0) = ln 2 is the maximum
    and s(x) -> 0 as |x| -> inf.
    """
    if y is None:
        y = x
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError("entropy arguments must be finite")
    return EntropyValue(_entropy(x, y))


def entropy_equally_spaced(x: float, levels: int) -> float:
    """Gibbs entropy of ``levels`` equally spaced states at reduced gap x.

    s = ln Z + x*<k> with Z = sum_{k=0}^{levels-1} exp(-k x).  Even in x
    (relabeling k -> levels-1-k flips the sign), maximal at x = 0 where it
    equals ln(levels); reduces to entropy_s(x, x) at levels = 2.
    """
    if levels < 2:
        raise ValueError("levels must be >= 2")
    if not math.isfinite(x):
        raise ValueError("reduced gap must be finite")
    x = abs(x)
    k = np.arange(levels, dtype=float)
    t = -k * x
    log_z = float(np.logaddexp.reduce(t))
    p = np.exp(t - log_z)
    return log_z + x * float(p @ k)


def beta_from_occupancy(n: int, N: int, eps: float) -> InverseTemperature:
    """Inverse temperature of a two-level urn with n of N balls excited.

    Thermal occupation requires exp(-beta*eps) = n/(N - n), hence
    beta = ln(N/n - 1)/eps.
    """
    if N < 1 or n < 0 or n > N:
        raise ValueError("invalid occupation")
    if n == 0 or n == N:
        raise ValueError("degenerate occupancy (infinite |beta|)")
    if not (math.isfinite(eps) and eps > 0.0):
        raise ValueError("altitude must be positive")
    return InverseTemperature(math.log((N - n) / n) / eps)


def log_degeneracy(N: int, n: int) -> float:
    """ln of the number of ways to excite n out of N distinguishable systems."""
    if N < 0 or n < 0 or n > N:
        raise ValueError("invalid occupation")
    if N <= _EXACT_COMB_LIMIT:
        return math.log(math.comb(N, n))
    return math.lgamma(N + 1) - math.lgamma(n + 1) - math.lgamma(N - n + 1)


def carnot_efficiency(beta_l: InverseTemperature | float, beta_h: InverseTemperature | float) -> float:
    """Upper bound 1 - beta_h/beta_l on engine efficiency, clamped to 1.

    The clamp covers hot baths at negative temperature (beta_h/beta_l <= 0),
    where the raw ratio exceeds 1 but unity is the physical bound.
    """
    bl = float(beta_l)
    bh = float(beta_h)
    if bl == 0.0:
        raise ValueError("infinite cold temperature")
    return min(1.0, 1.0 - bh / bl)
