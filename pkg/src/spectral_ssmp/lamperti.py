"""Monte Carlo oracle through the Lamperti time change.

A path of the Levy process Z with exponent psi is simulated by an Euler
scheme on the Levy clock (exact Gaussian increments, Poisson jumps above
jump_eps, a variance-matched Gaussian for the sub-threshold jumps, and an
exponential killing clock at rate psi(0)).  The positive self-similar
process started at x > 0 is then

    X_t(x) = x exp(Z_{phi(t/x)}),   phi(v) = inf{s : A(s) > v},
    A(s) = integral_0^s e^{Z_r} dr,

with A integrated in closed form on each step under linear interpolation
of Z (exact for drift-only paths, second order otherwise), and phi
inverted exactly on the crossing step.

Randomness is counter-based (Philox): batch estimation draws one row per
(seed, step index) so path j always consumes column j regardless of which
paths are still active; single-path simulation keys its stream by
(seed, stream index).  Identical (seed, config) inputs therefore
reproduce identical estimates bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bernstein import DensityMeasure, _density_nodes, _tail_consts
from .errors import ConfigError, DomainError
from .exponents import Exponent, LevyQuadruplet

__all__ = [
    "SimConfig",
    "MCEstimate",
    "LevyPath",
    "ABSORBED",
    "NEEDS_LONGER_PATH",
    "simulate_levy",
    "lamperti_time_change",
    "mc_expectation",
]


class _Sentinel:
    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


ABSORBED = _Sentinel("ABSORBED")
NEEDS_LONGER_PATH = _Sentinel("NEEDS_LONGER_PATH")


@dataclass(frozen=True)
class SimConfig:
    dt: float = 1e-3
    jump_eps: float = 1e-3
    n_paths: int = 10_000
    seed: int = 0
    t_max: float = 64.0

    def __post_init__(self):
        if not 0.0 < self.dt <= 1e-2:
            raise ConfigError("dt must lie in (0, 1e-2]")
        if not 0.0 < self.jump_eps <= 1.0:
            raise ConfigError("jump_eps must lie in (0, 1]: the small-jump "
                              "surrogate must stay inside the compensated zone")
        if self.n_paths < 1:
            raise ConfigError("n_paths must be positive")
        if self.t_max <= 0:
            raise ConfigError("t_max must be positive")


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    n_effective: int
    absorbed_fraction: float


@dataclass(frozen=True)
class LevyPath:
    times: np.ndarray
    values: np.ndarray
    killed: bool


# ---------------------------------------------------------------------------
# jump bookkeeping
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _JumpModel:
    """Per-step ingredients derived from a quadruplet and jump_eps."""

    drift: float          # b plus compensator adjustments, per unit time
    gauss_std_rate: float  # std of the Gaussian part per sqrt(dt)
    atom_sizes: tuple
    atom_rates: tuple
    dens_sizes: tuple      # discretized density jump sizes (|y| >= eps)
    dens_probs: tuple
    dens_rate: float
    kill_rate: float


def _density_pieces(dens: DensityMeasure, sign, eps):
    """(small-jump variance rate, compensator on [eps, 1], big sizes/weights)."""
    nodes, wts, rem = _density_nodes(dens)
    y = sign * nodes
    small = np.abs(y) < eps
    var_small = float(np.sum(nodes[small] ** 2 * wts[small]))
    y0, _, a0, _, c0, _ = _tail_consts(dens)
    if c0 > 0:  # analytic variance of jumps below the table
        if min(eps, y0) > 0:
            lo = min(eps, y0)
            var_small += c0 * lo ** (2.0 - a0) / (2.0 - a0)
        if eps < y0:
            # table starts above eps: the analytic piece between eps and y0
            # belongs to the simulated (big) jumps; keep it in the compensated
            # Gaussian instead, which only widens the matched variance zone
            pass
    big = ~small
    sizes = y[big]
    weights = wts[big].copy()
    if rem > 0:
        sizes = np.append(sizes, sign * float(nodes[-1]))
        weights = np.append(weights, rem)
    comp = float(np.sum(np.where(np.abs(sizes) <= 1.0, sizes, 0.0)
                        * weights))
    return var_small, comp, sizes, weights


def _build_jump_model(q: LevyQuadruplet, cfg: SimConfig) -> _JumpModel:
    eps = cfg.jump_eps
    drift = q.b
    var_small_rate = 0.0
    atom_sizes, atom_rates = [], []
    dens_sizes = np.empty(0)
    dens_weights = np.empty(0)
    for y, m in q.mu.atoms:
        if abs(y) < eps:
            var_small_rate += m * y * y
        else:
            atom_sizes.append(y)
            atom_rates.append(m)
            if abs(y) <= 1.0:
                drift -= m * y  # compensator of a simulated compensated jump
    for dens, sign in ((q.mu.density_pos, +1), (q.mu.density_neg, -1)):
        if dens is None:
            continue
        var_small, comp, sizes, weights = _density_pieces(dens, sign, eps)
        var_small_rate += var_small
        drift -= comp
        dens_sizes = np.append(dens_sizes, sizes)
        dens_weights = np.append(dens_weights, weights)
    dens_rate = float(np.sum(dens_weights))
    probs = tuple(dens_weights / dens_rate) if dens_rate > 0 else ()
    gauss_var_rate = 2.0 * q.sigma2 + var_small_rate
    return _JumpModel(
        drift=float(drift),
        gauss_std_rate=float(np.sqrt(gauss_var_rate)),
        atom_sizes=tuple(atom_sizes),
        atom_rates=tuple(atom_rates),
        dens_sizes=tuple(dens_sizes),
        dens_probs=probs,
        dens_rate=dens_rate,
        kill_rate=float(q.psi0),
    )


def _step_rng(seed, index):
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(index)])
    return np.random.Generator(np.random.Philox(key=key))


_STREAM_OFFSET = 1 << 48


# ---------------------------------------------------------------------------
# single-path simulation
# ---------------------------------------------------------------------------

def simulate_levy(q: LevyQuadruplet, T: float, cfg: SimConfig,
                  stream: int = 0) -> LevyPath:
    """One path of Z on [0, T] at resolution cfg.dt (counter-based stream).

    The returned path is truncated at the killing time when psi(0) > 0.
    """
    if T <= 0 or T > cfg.t_max:
        raise ConfigError("need 0 < T <= t_max")
    model = _build_jump_model(q, cfg)
    n = int(np.ceil(T / cfg.dt))
    rng = _step_rng(cfg.seed, _STREAM_OFFSET + stream)
    dt = cfg.dt
    inc = np.full(n, model.drift * dt)
    if model.gauss_std_rate > 0:
        inc = inc + model.gauss_std_rate * np.sqrt(dt) * rng.standard_normal(n)
    for y, rate in zip(model.atom_sizes, model.atom_rates):
        inc = inc + y * rng.poisson(rate * dt, n)
    if model.dens_rate > 0:
        counts = rng.poisson(model.dens_rate * dt, n)
        total = int(counts.sum())
        if total:
            sizes = rng.choice(np.asarray(model.dens_sizes), size=total,
                               p=np.asarray(model.dens_probs))
            inc = inc + np.bincount(
                np.repeat(np.arange(n), counts), weights=sizes, minlength=n)
    killed = False
    if model.kill_rate > 0:
        t_kill = rng.exponential(1.0 / model.kill_rate)
        if t_kill < T:
            n = max(1, int(t_kill / dt))
            inc = inc[:n]
            killed = True
    z = np.concatenate([[0.0], np.cumsum(inc)])
    times = dt * np.arange(n + 1)
    return LevyPath(times=times, values=z, killed=killed)


def _segment_clock(z0, z1, dt):
    """integral of e^{Z} over one step under linear interpolation of Z."""
    d = z1 - z0
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        ratio = np.where(np.abs(d) > 1e-12, np.expm1(d) / np.where(d == 0, 1.0, d),
                         1.0 + 0.5 * d)
    return dt * np.exp(z0) * ratio


def _invert_segment(z0, z1, dt, remainder):
    """Entry time into the segment at which the running clock gains
    `remainder`; exact for linear Z."""
    c = (z1 - z0) / dt
    small = np.abs(c) < 1e-12
    with np.errstate(over="ignore", invalid="ignore"):
        delta = np.where(
            small,
            remainder * np.exp(-z0),
            np.log1p(np.where(small, 0.0, c) * remainder * np.exp(-z0))
            / np.where(small, 1.0, c))
    return delta


def lamperti_time_change(path: LevyPath, x0: float, t: float):
    """X_t(x0) from a simulated path, ABSORBED, or NEEDS_LONGER_PATH.

    The additive clock A(s) = integral e^{Z} is accumulated per segment in
    closed form and inverted exactly on the crossing segment (monotone, so
    the solution is unique).
    """
    if x0 <= 0:
        raise DomainError("the self-similar process starts at x0 > 0")
    if t < 0:
        raise DomainError("t must be nonnegative")
    if t == 0.0:
        return float(x0)
    target = t / x0
    z = path.values
    dts = np.diff(path.times)
    gains = _segment_clock(z[:-1], z[1:], dts)
    acc = np.concatenate([[0.0], np.cumsum(gains)])
    idx = int(np.searchsorted(acc, target, side="right")) - 1
    if idx >= len(gains):
        return ABSORBED if path.killed else NEEDS_LONGER_PATH
    remainder = target - acc[idx]
    delta = float(_invert_segment(z[idx], z[idx + 1], dts[idx], remainder))
    frac = delta / dts[idx]
    z_at = z[idx] + (z[idx + 1] - z[idx]) * frac
    return float(x0 * np.exp(z_at))


# ---------------------------------------------------------------------------
# batch estimation
# ---------------------------------------------------------------------------

def _batch_estimate(q: LevyQuadruplet, f: Callable, x: float, t: float,
                    cfg: SimConfig):
    """Vectorized over paths; the active set is compacted as paths resolve,
    so the total draw count is the sum of per-path step counts."""
    model = _build_jump_model(q, cfg)
    n = cfg.n_paths
    dt = cfg.dt
    target = t / x
    rng0 = _step_rng(cfg.seed, 0)
    kill_times = (rng0.exponential(1.0 / model.kill_rate, n)
                  if model.kill_rate > 0 else np.full(n, np.inf))
    values = np.zeros(n)
    resolved = np.zeros(n, dtype=bool)
    absorbed = np.zeros(n, dtype=bool)
    idx = np.arange(n)          # original indices of the active paths
    z = np.zeros(n)
    acc = np.zeros(n)
    kt = kill_times
    dens_sizes = np.asarray(model.dens_sizes)
    dens_probs = np.asarray(model.dens_probs)
    sqdt = np.sqrt(dt)
    max_steps = int(np.ceil(cfg.t_max / dt))
    for step in range(max_steps):
        m = idx.size
        if m == 0:
            break
        rng = _step_rng(cfg.seed, step + 1)
        inc = np.full(m, model.drift * dt)
        if model.gauss_std_rate > 0:
            inc += model.gauss_std_rate * sqdt * rng.standard_normal(m)
        for y, rate in zip(model.atom_sizes, model.atom_rates):
            inc += y * rng.poisson(rate * dt, m)
        if model.dens_rate > 0:
            counts = rng.poisson(model.dens_rate * dt, m)
            total = int(counts.sum())
            if total:
                sizes = rng.choice(dens_sizes, size=total, p=dens_probs)
                inc += np.bincount(np.repeat(np.arange(m), counts),
                                   weights=sizes, minlength=m)
        z_new = z + inc
        gains = _segment_clock(z, z_new, dt)
        crossing = acc + gains >= target
        killed_now = (kt <= (step + 1) * dt) & ~crossing
        if np.any(crossing):
            rem = target - acc[crossing]
            delta = _invert_segment(z[crossing], z_new[crossing], dt, rem)
            frac = delta / dt
            z_at = z[crossing] + (z_new[crossing] - z[crossing]) * frac
            values[idx[crossing]] = f(x * np.exp(z_at))
            resolved[idx[crossing]] = True
        if np.any(killed_now):
            resolved[idx[killed_now]] = True
            absorbed[idx[killed_now]] = True
        live = ~(crossing | killed_now)
        idx = idx[live]
        z = z_new[live]
        acc = (acc + gains)[live]
        kt = kt[live]
    return values, resolved, absorbed


def mc_expectation(e: Exponent, f: Callable, x: float, t: float,
                   cfg: SimConfig) -> MCEstimate:
    """Monte Carlo estimate of E_x[f(X_t)] with absorbed paths counting 0.

    f acts on the positive-scale variable X directly (compose with log
    outside if the observable lives on the log scale); paths that never
    reach the clock target before t_max are excluded and reported through
    n_effective.
    """
    if e.quadruplet is None:
        raise DomainError("the oracle needs a quadruplet representation")
    if x <= 0:
        raise DomainError("x must be positive")
    if t < 0:
        raise DomainError("t must be nonnegative")
    if t == 0.0:
        return MCEstimate(mean=float(f(x)), stderr=0.0,
                          n_effective=cfg.n_paths, absorbed_fraction=0.0)
    values, resolved, absorbed = _batch_estimate(e.quadruplet, f, x, t, cfg)
    n_eff = int(resolved.sum())
    if n_eff == 0:
        raise ConfigError("no path reached the clock target; raise t_max")
    vals = values[resolved]
    mean = float(np.mean(vals))
    stderr = float(np.std(vals, ddof=1) / np.sqrt(n_eff)) if n_eff > 1 else 0.0
    return MCEstimate(mean=mean, stderr=stderr, n_effective=n_eff,
                      absorbed_fraction=float(absorbed.sum() / max(1, n_eff)))
