"""Efficiency-vs-work frontier: region sampling and constrained extremization.

The attainable (W, eta) set of an m-sub-reservoir engine at fixed inverse
temperatures is explored two ways: scatter sampling of altitude
configurations drawn uniformly from (0, eps_max]^{2m}, and an optimizer that
extremizes the efficiency subject to |W - target| <= tol_W.

The optimizer is multistart derivative-free coordinate descent on a quadratic
penalty objective.  Gradients are unreliable here: the engine/pump sign
regimes and negative-beta cases fold the feasible set, while a single
objective evaluation is a handful of exponentials, so robustness wins over
speed.  Schedule (all overridable): initial step = init extent / 8, halve on
a sweep without improvement, stop a descent at step < 1e-6; penalty weight
starts at 1e2 and is multiplied by 10 until the work residual fits tol_W.
Starts are seeded deterministically and the winner among equal objectives
(within 1e-12) is statically the lowest start index, so results are
reproducible for a given seed.

Finite m evaluates the discrete ring at equilibrium occupancies f(beta*eps);
``carnot_frontier`` extremizes the continuum cycle over its four reduced
branch endpoints instead, with endpoint signs pinned to the beta signs.
Heat pumps are requested with a negative target work; the reported
figure of merit stays eta = W/(-Q_h), whose inverse is the pump COP.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .analytic import equilibrium_ring, mean_heats_ring
from .continuum import CarnotEndpoints, continuum_heats
from .thermo import _entropy, occupancy, occupancy_np

__all__ = [
    "Mode",
    "FrontierPoint",
    "RegionSample",
    "evaluate_configs",
    "sample_region",
    "optimize_efficiency",
    "carnot_frontier",
    "max_work",
    "frontier_curve",
]

_STEP_STOP = 1e-6
_PENALTY_START = 1e2
_PENALTY_GROWTH = 10.0
_PENALTY_CAP = 1e12
_FLOOR = 1e-9  # altitudes and endpoint magnitudes stay strictly positive
_TIE = 1e-12

DEFAULT_TOL_W = 1e-4
DEFAULT_BUDGET = 200_000  # objective evaluations per start
DEFAULT_STARTS = 16


class Mode(enum.Enum):
    """Extremization direction for the efficiency."""

    MAX = "max"
    MIN = "min"


@dataclass(frozen=True)
class FrontierPoint:
    """One extremal point of the efficiency-vs-work frontier.

    ``config`` holds the optimizing altitudes for finite m, or the four
    reduced endpoints (cold_first, cold_last, hot_first, hot_last) for the
    continuum cycle.  ``eta`` and ``residual`` are recomputed through the
    public analytic/continuum evaluators at the returned configuration.
    """

    target_work: float
    eta: float
    mode: Mode
    config: tuple[float, ...]
    residual: float
    evaluations: int
    work: float
    start_index: int


@dataclass(frozen=True, eq=False)
class RegionSample:
    """Scatter of sampled configurations: work, efficiency (NaN where
    undefined), an engine flag (-Q_high > 0), and the sampled altitudes."""

    work: np.ndarray
    efficiency: np.ndarray
    engine: np.ndarray
    eps: np.ndarray

    def pairs(self) -> list[tuple[float, float]]:
        """(W, eta) tuples in sample order."""
        return [(float(w), float(e)) for w, e in zip(self.work, self.efficiency)]


def _norm_seed(seed: int) -> int:
    return seed & ((1 << 64) - 1)


def evaluate_configs(
    beta_l: float, beta_h: float, eps: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (work, eta, engine-flag) over rows of altitude configs.

    Each row is (eps_low_1..eps_low_m, eps_high_1..eps_high_m); occupancies
    are the equilibrium f(beta*eps) of the owning branch.
    """
    eps = np.atleast_2d(np.asarray(eps, dtype=float))
    n = eps.shape[1]
    if n < 2 or n % 2 != 0:
        raise ValueError("ring must hold 2m >= 2 reservoirs")
    if not np.all(np.isfinite(eps)) or np.any(eps <= 0.0):
        raise ValueError("invalid altitude")
    m = n // 2
    bl = float(beta_l)
    bh = float(beta_h)
    f = np.empty_like(eps)
    f[:, :m] = occupancy_np(bl * eps[:, :m])
    f[:, m:] = occupancy_np(bh * eps[:, m:])
    q = eps * (np.roll(f, 1, axis=1) - f)
    q_high = q[:, m:].sum(axis=1)
    work = -q.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        eta = np.where(q_high != 0.0, work / -q_high, np.nan)
    return work, eta, -q_high > 0.0


def sample_region(
    m: int,
    beta_l: float,
    beta_h: float,
    samples: int,
    eps_max: float,
    seed: int,
) -> RegionSample:
    """Uniform scatter of the attainable region for an m-sub-reservoir ring.

    Altitudes are uniform in (0, eps_max]^{2m}.  Non-engine points (heat not
    leaving the hot side) are flagged, not dropped.
    """
    if m < 1:
        raise ValueError("ring must hold 2m >= 2 reservoirs")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not (eps_max > 0.0) or not math.isfinite(eps_max):
        raise ValueError("invalid altitude")
    rng = np.random.default_rng(_norm_seed(seed))
    eps = eps_max * (1.0 - rng.random((samples, 2 * m)))
    work, eta, engine = evaluate_configs(beta_l, beta_h, eps)
    for arr in (work, eta, engine, eps):
        arr.flags.writeable = False
    return RegionSample(work=work, efficiency=eta, engine=engine, eps=eps)


def _regime_ok(w: float, q_high: float, pump: bool) -> bool:
    # engines draw heat from the hot side and deliver work; pumps invert both
    if pump:
        return q_high > 0.0 and w <= 0.0
    return q_high < 0.0 and w >= 0.0


def _ring_point(beta_l: float, beta_h: float, m: int, pump: bool):
    """Scalar fast path: eps list -> (work, eta, valid)."""
    bl = float(beta_l)
    bh = float(beta_h)

    def point(eps: list[float]) -> tuple[float, float, bool]:
        f = [occupancy(bl * e) for e in eps[:m]] + [occupancy(bh * e) for e in eps[m:]]
        q_low = 0.0
        q_high = 0.0
        n = 2 * m
        for k in range(n):
            q = eps[k] * (f[k - 1] - f[k])
            if k < m:
                q_low += q
            else:
                q_high += q
        w = -(q_low + q_high)
        if not _regime_ok(w, q_high, pump):
            return w, math.nan, False
        return w, w / -q_high, True

    return point


def _carnot_point(beta_l: float, beta_h: float, pump: bool):
    """Scalar fast path over endpoint magnitudes (sign pinned to betas)."""
    bl = float(beta_l)
    bh = float(beta_h)
    sl = math.copysign(1.0, bl)
    sh = math.copysign(1.0, bh)

    def point(u: list[float]) -> tuple[float, float, bool]:
        l1, lm, h1, hm = sl * u[0], sl * u[1], sh * u[2], sh * u[3]
        q_l = (_entropy(l1, hm) - _entropy(lm, lm)) / bl
        q_h = (_entropy(h1, lm) - _entropy(hm, hm)) / bh
        w = -(q_l + q_h)
        if not _regime_ok(w, q_h, pump):
            return w, math.nan, False
        return w, w / -q_h, True

    return point


def _descend(obj, x: list[float], fx: float, step0: float, max_evals: int):
    """Coordinate descent: probe +-step per coordinate, halve step on a full
    sweep without improvement, stop below the step floor or the budget."""
    evals = 0
    step = step0
    nd = len(x)
    while step >= _STEP_STOP and evals < max_evals:
        improved = False
        for j in range(nd):
            for sgn in (1.0, -1.0):
                if evals >= max_evals:
                    break
                trial = x[j] + sgn * step
                if trial < _FLOOR:
                    trial = _FLOOR
                if trial == x[j]:
                    continue
                old = x[j]
                x[j] = trial
                fc = obj(x)
                evals += 1
                if fc < fx:
                    fx = fc
                    improved = True
                    break
                x[j] = old
        if not improved:
            step *= 0.5
    return x, fx, evals


def _solve_start(point, x0: list[float], sign: float, target: float, tol_w: float,
                 budget: int, step0: float):
    """One start: penalty loop around coordinate descent.

    Returns (x, feasible_by_fast_path, evaluations).  Feasibility is
    re-verified by the caller through the public evaluators.
    """
    lam = _PENALTY_START
    evals = 0

    def obj(z: list[float]) -> float:
        w, eta, ok = point(z)
        if not ok:
            return math.inf
        r = w - target
        return sign * eta + lam * r * r

    x = list(x0)
    fx = obj(x)
    evals += 1
    while True:
        x, fx, used = _descend(obj, x, fx, step0, budget - evals)
        evals += used
        w, _, ok = point(x)
        evals += 1
        if ok and abs(w - target) <= tol_w:
            return x, True, evals
        if evals >= budget or lam >= _PENALTY_CAP:
            return x, False, evals
        lam *= _PENALTY_GROWTH
        fx = obj(x)
        evals += 1


def _multistart(point, public, ndim: int, sign: float, target: float, tol_w: float,
                budget: int, starts: int, seed: int, extent: float):
    """Run all starts, verify with the public evaluator, pick the winner."""
    children = np.random.SeedSequence(_norm_seed(seed)).spawn(starts)
    step0 = extent / 8.0
    total_evals = 0
    found = []  # (eta_public, start_index, x, w_public)
    for si in range(starts):
        rng = np.random.default_rng(children[si])
        x0 = None
        for _ in range(128):  # rejection-sample a valid initial point
            cand = list(extent * (1.0 - rng.random(ndim)))
            total_evals += 1
            if point(cand)[2]:
                x0 = cand
                break
        if x0 is None:
            continue
        x, fast_ok, used = _solve_start(point, x0, sign, target, tol_w, budget, step0)
        total_evals += used
        if not fast_ok:
            continue
        w_pub, eta_pub, ok_pub = public(x)
        if ok_pub and abs(w_pub - target) <= tol_w:
            found.append((eta_pub, si, x, w_pub))
    if not found:
        raise ValueError("infeasible or budget too small")
    best_eta = min(sign * e for e, _, _, _ in found)
    winner = min(
        (si, e, x, w) for e, si, x, w in found if sign * e <= best_eta + _TIE
    )
    _, eta, x, w = winner
    return x, eta, w, winner[0], total_evals


def _public_ring(beta_l: float, beta_h: float, m: int, pump: bool):
    def public(eps: list[float]) -> tuple[float, float, bool]:
        spec = equilibrium_ring(beta_l, beta_h, np.asarray(eps[:m]), np.asarray(eps[m:]))
        _, q_high, w = mean_heats_ring(spec)
        if not _regime_ok(w, q_high, pump):
            return w, math.nan, False
        return w, w / -q_high, True

    return public


def _public_carnot(beta_l: float, beta_h: float, pump: bool):
    sl = math.copysign(1.0, float(beta_l))
    sh = math.copysign(1.0, float(beta_h))

    def public(u: list[float]) -> tuple[float, float, bool]:
        ep = CarnotEndpoints(
            beta_l=float(beta_l),
            beta_h=float(beta_h),
            cold_first=sl * u[0],
            cold_last=sl * u[1],
            hot_first=sh * u[2],
            hot_last=sh * u[3],
        )
        res = continuum_heats(ep)
        if not _regime_ok(res.work, res.heat_high, pump):
            return res.work, math.nan, False
        # eta = W/(-Q_h) in both regimes; its inverse is the pump COP
        return res.work, res.work / -res.heat_high, True

    return public


def optimize_efficiency(
    m: int,
    beta_l: float,
    beta_h: float,
    target_work: float,
    mode: Mode = Mode.MAX,
    tol_w: float = DEFAULT_TOL_W,
    budget: int = DEFAULT_BUDGET,
    starts: int = DEFAULT_STARTS,
    seed: int = 0,
    init_extent: float | None = None,
) -> FrontierPoint:
    """Extremal efficiency of an m-sub-reservoir ring at fixed work.

    Raises "infeasible or budget too small" when no start reaches the work
    constraint within tolerance.
    """
    if m < 1:
        raise ValueError("ring must hold 2m >= 2 reservoirs")
    _check_optimizer_args(tol_w, budget, starts)
    mode = Mode(mode)
    if init_extent is None:
        init_extent = 16.0 / min(abs(float(beta_l)), abs(float(beta_h)))
    sign = -1.0 if mode is Mode.MAX else 1.0
    pump = target_work < 0.0
    point = _ring_point(beta_l, beta_h, m, pump)
    public = _public_ring(beta_l, beta_h, m, pump)
    x, eta, w, start, evals = _multistart(
        point, public, 2 * m, sign, target_work, tol_w, budget, starts, seed, init_extent
    )
    return FrontierPoint(
        target_work=target_work,
        eta=eta,
        mode=mode,
        config=tuple(x),
        residual=abs(w - target_work),
        evaluations=evals,
        work=w,
        start_index=start,
    )


def carnot_frontier(
    beta_l: float,
    beta_h: float,
    target_work: float,
    mode: Mode = Mode.MAX,
    tol_w: float = DEFAULT_TOL_W,
    budget: int = DEFAULT_BUDGET,
    starts: int = DEFAULT_STARTS,
    seed: int = 0,
    init_extent: float | None = None,
) -> FrontierPoint:
    """Extremal efficiency of the continuum cycle at fixed work.

    The four optimized parameters are the reduced endpoint magnitudes; the
    returned config is the signed endpoints (cold_first, cold_last,
    hot_first, hot_last).
    """
    _check_optimizer_args(tol_w, budget, starts)
    mode = Mode(mode)
    if init_extent is None:
        init_extent = 20.0
    sign = -1.0 if mode is Mode.MAX else 1.0
    pump = target_work < 0.0
    point = _carnot_point(beta_l, beta_h, pump)
    public = _public_carnot(beta_l, beta_h, pump)
    x, eta, w, start, evals = _multistart(
        point, public, 4, sign, target_work, tol_w, budget, starts, seed, init_extent
    )
    sl = math.copysign(1.0, float(beta_l))
    sh = math.copysign(1.0, float(beta_h))
    config = (sl * x[0], sl * x[1], sh * x[2], sh * x[3])
    return FrontierPoint(
        target_work=target_work,
        eta=eta,
        mode=mode,
        config=config,
        residual=abs(w - target_work),
        evaluations=evals,
        work=w,
        start_index=start,
    )


def max_work(
    m: int,
    beta_l: float,
    beta_h: float,
    budget: int = DEFAULT_BUDGET,
    starts: int = DEFAULT_STARTS,
    seed: int = 0,
    init_extent: float | None = None,
) -> tuple[float, tuple[float, ...], int]:
    """Unconstrained maximum mean work over altitude configurations.

    Same descent machinery as optimize_efficiency with objective -W; returns
    (work, config, evaluations) with work recomputed via the public evaluator.
    """
    if m < 1:
        raise ValueError("ring must hold 2m >= 2 reservoirs")
    _check_optimizer_args(1.0, budget, starts)
    if init_extent is None:
        init_extent = 16.0 / min(abs(float(beta_l)), abs(float(beta_h)))
    point = _ring_point(beta_l, beta_h, m, pump=False)
    public = _public_ring(beta_l, beta_h, m, pump=False)
    children = np.random.SeedSequence(_norm_seed(seed)).spawn(starts)
    step0 = init_extent / 8.0
    best: tuple[float, int, list[float]] | None = None
    total = 0

    def obj(z: list[float]) -> float:
        return -point(z)[0]

    for si in range(starts):
        rng = np.random.default_rng(children[si])
        x0 = list(init_extent * (1.0 - rng.random(2 * m)))
        fx = obj(x0)
        total += 1
        x, fx, used = _descend(obj, x0, fx, step0, budget)
        total += used
        w_pub = public(x)[0]
        if best is None or -w_pub < best[0] - _TIE:
            best = (-w_pub, si, x)
    assert best is not None
    w = -best[0]
    return w, tuple(best[2]), total


def frontier_curve(
    m: int | None,
    beta_l: float,
    beta_h: float,
    targets: np.ndarray,
    mode: Mode = Mode.MAX,
    tol_w: float = DEFAULT_TOL_W,
    budget: int = DEFAULT_BUDGET,
    starts: int = DEFAULT_STARTS,
    seed: int = 0,
    init_extent: float | None = None,
) -> list[FrontierPoint]:
    """Frontier points over a grid of work targets.

    ``m=None`` means the continuum cycle.  Each target gets its own
    deterministic child seed, so the curve is reproducible as a whole.
    """
    children = np.random.SeedSequence(_norm_seed(seed)).spawn(len(targets))
    points = []
    for target, child in zip(targets, children):
        child_seed = int(child.generate_state(1, np.uint64)[0])
        if m is None:
            points.append(
                carnot_frontier(beta_l, beta_h, float(target), mode, tol_w, budget,
                                starts, child_seed, init_extent)
            )
        else:
            points.append(
                optimize_efficiency(m, beta_l, beta_h, float(target), mode, tol_w,
                                    budget, starts, child_seed, init_extent)
            )
    return points


def _check_optimizer_args(tol_w: float, budget: int, starts: int) -> None:
    if not (tol_w > 0.0):
        raise ValueError("tol_w must be positive")
    if budget < 1 or starts < 1:
        raise ValueError("budget and starts must be >= 1")
