"""Sensitivity diagnostics: twin-trajectory divergence, Benettin Lyapunov
exponent and sweeps over the price-adjustment rate."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from . import _backend
from .dynamics import ModelParams, SimState
from .errors import ConfigError, DomainError, SeparationUnderflow
from .integrators import IntegratorConfig, integrate, rk4_generic

# index of the compensation component, which receives the initial perturbation
C_INDEX = 2


@dataclass
class DivergenceCurve:
    times: np.ndarray
    log_separation: np.ndarray
    truncated: bool = False
    t_truncated: float | None = None

    def growth(self) -> float:
        """Largest rise of the log-separation above its initial value."""
        if len(self.log_separation) == 0:
            return 0.0
        return float(np.max(self.log_separation) - self.log_separation[0])

    def rate(self, t_start=None, t_stop=None) -> float:
        """Least-squares slope of ``log_separation`` against time on a window."""
        mask = np.ones(len(self.times), dtype=bool)
        if t_start is not None:
            mask &= self.times >= t_start
        if t_stop is not None:
            mask &= self.times <= t_stop
        if mask.sum() < 2:
            raise ValueError("window holds fewer than two samples")
        return float(np.polyfit(self.times[mask], self.log_separation[mask], 1)[0])


@dataclass
class LyapunovEstimate:
    """Largest Lyapunov exponent from periodic renormalization.

    ``log_stretches[i]`` is ``ln(d_i / eps0)`` at ``event_times[i]``; only
    events after the transient are kept.  ``truncated`` marks runs cut short
    by a blow-up, in which case the estimate covers the shorter ``window``.
    """

    exponent: float
    window: tuple
    renorm_interval: float
    eps0: float
    transient: float
    event_times: np.ndarray = field(default_factory=lambda: np.empty(0))
    log_stretches: np.ndarray = field(default_factory=lambda: np.empty(0))
    truncated: bool = False
    t_truncated: float | None = None

    @property
    def n_events(self):
        return len(self.log_stretches)


@dataclass(frozen=True)
class SweepRecord:
    alpha: float
    min_q_d: float
    max_abs_q_d: float
    went_negative: bool
    lambda_: float
    blew_up: bool


def _perturbed(state0: SimState, eps: float) -> SimState:
    return state0.replace(c=state0.c + eps)


def divergence_curve(state0: SimState, params: ModelParams, eps: float,
                     config: IntegratorConfig) -> DivergenceCurve:
    """Log of the Euclidean distance between a trajectory and its twin
    started with compensation shifted by ``eps``."""
    if not (math.isfinite(eps) and eps > 0):
        raise DomainError(f"eps must be positive, got {eps!r}")
    if config.method != "rk4":
        raise ConfigError("integrator.method", "divergence curves need the fixed-step rk4 grid")
    base = integrate(state0, params, config)
    twin = integrate(_perturbed(state0, eps), params, config)
    n = min(len(base), len(twin))
    sep = np.linalg.norm(twin.y[:n] - base.y[:n], axis=1)
    truncated = base.blew_up or twin.blew_up
    t_trunc = min(t for t in (base.t_blowup, twin.t_blowup) if t is not None) if truncated else None
    zero = np.flatnonzero(sep <= 0.0)
    if zero.size:
        n = int(zero[0])
        truncated = True
        t_trunc = float(base.t[n])
    return DivergenceCurve(times=base.t[:n].copy(), log_separation=np.log(sep[:n]),
                           truncated=truncated, t_truncated=t_trunc)


def largest_lyapunov(state0: SimState, params: ModelParams, dt: float = 0.01,
                     t_end: float = 200.0, renorm_interval: float = 1.0,
                     eps0: float = 1e-8, transient: float | None = None,
                     rhs=None) -> LyapunovEstimate:
    """Benettin twin-trajectory estimate of the largest Lyapunov exponent.

    The twin starts ``eps0`` away along the compensation axis and is pulled
    back to distance ``eps0`` every ``renorm_interval`` (rounded to a whole
    number of ``dt`` steps).  Stretches during the first ``transient`` time
    units (default a tenth of the horizon) are discarded.

    ``rhs``, if given, replaces the model with an autonomous vector field
    ``rhs(y) -> dy/dt`` on numpy arrays; ``params`` is then ignored.
    """
    if not (dt > 0 and math.isfinite(dt)):
        raise DomainError(f"dt must be positive, got {dt!r}")
    if not (eps0 > 0 and math.isfinite(eps0)):
        raise DomainError(f"eps0 must be positive, got {eps0!r}")
    if not renorm_interval >= dt:
        raise DomainError("renorm_interval must be at least dt")
    horizon = t_end - state0.t
    if not horizon > 0:
        raise DomainError("t_end must lie after the initial time")
    if transient is None:
        transient = horizon / 10.0
    if not 0 <= transient < horizon:
        raise DomainError("transient must lie within the horizon")

    steps = max(1, round(renorm_interval / dt))
    interval = steps * dt
    n_events = int(math.floor(horizon / interval + 1e-9))

    if rhs is None:
        kern = _backend.kernels
        prm = params.as_tuple()

        def advance(y):
            rows, done, blew = kern.rk4_run(y, prm, dt, steps, steps)
            return rows[-1], blew
    else:
        def advance(y):
            y_new, done, blew = rk4_generic(rhs, y, dt, steps)
            return y_new, blew

    base = np.array(state0.y, dtype=np.float64)
    twin = base.copy()
    twin[C_INDEX] += eps0
    t_accum_start = state0.t + transient
    times = []
    stretches = []
    truncated = False
    t_trunc = None
    for k in range(1, n_events + 1):
        base_new, blew_b = advance(base)
        twin_new, blew_t = advance(twin)
        t = state0.t + k * interval
        if blew_b or blew_t or not (np.all(np.isfinite(base_new)) and np.all(np.isfinite(twin_new))):
            truncated = True
            t_trunc = t
            break
        diff = twin_new - base_new
        d = float(np.sqrt(np.dot(diff, diff)))
        if d == 0.0:
            raise SeparationUnderflow(f"twin separation vanished at t={t!r}; raise eps0")
        if t - interval >= t_accum_start - 1e-9 * interval:
            times.append(t)
            stretches.append(math.log(d / eps0))
        base = base_new
        twin = base_new + diff * (eps0 / d)

    n_acc = len(stretches)
    exponent = math.fsum(stretches) / (n_acc * interval) if n_acc else float("nan")
    window = (times[0] - interval, times[-1]) if n_acc else (t_accum_start, t_accum_start)
    return LyapunovEstimate(
        exponent=exponent, window=window, renorm_interval=interval, eps0=eps0,
        transient=transient, event_times=np.array(times), log_stretches=np.array(stretches),
        truncated=truncated, t_truncated=t_trunc)


def renorm_robustness(state0, params, dt=0.01, t_end=200.0, renorm_interval=1.0,
                      eps0=1e-8, tolerance=0.2):
    """Compare estimates at ``renorm_interval`` and half of it.

    Returns ``(full, half, relative_change, reliable)`` where ``reliable``
    means the relative change is below ``tolerance``.
    """
    full = largest_lyapunov(state0, params, dt, t_end, renorm_interval, eps0)
    half = largest_lyapunov(state0, params, dt, t_end, renorm_interval / 2, eps0)
    denom = abs(full.exponent)
    change = abs(half.exponent - full.exponent) / denom if denom > 0 else float("inf")
    return full, half, change, bool(change < tolerance)


def _sweep_cell(alpha, base, state0, config, renorm_interval, eps0):
    params = base.replace(alpha=alpha)
    traj = integrate(state0, params, config)
    q_d = traj.q_d
    lyap = largest_lyapunov(state0, params, dt=config.dt, t_end=config.t_end,
                            renorm_interval=renorm_interval, eps0=eps0)
    min_q_d = float(np.min(q_d))
    return SweepRecord(alpha=float(alpha), min_q_d=min_q_d,
                       max_abs_q_d=float(np.max(np.abs(q_d))),
                       went_negative=min_q_d < 0.0, lambda_=lyap.exponent,
                       blew_up=bool(traj.blew_up or lyap.truncated))


def sweep_alpha(base: ModelParams, alphas, state0: SimState, config: IntegratorConfig,
                jobs: int = 1, renorm_interval: float = 1.0,
                eps0: float = 1e-8) -> list[SweepRecord]:
    """One :class:`SweepRecord` per price-adjustment rate, in input order.

    Cells are independent; with ``jobs > 1`` they run in a process pool and
    the results are identical to a serial run.
    """
    alphas = [float(a) for a in alphas]
    if not alphas:
        raise DomainError("alphas must be non-empty")
    for a in alphas:
        if not (math.isfinite(a) and a > 0):
            raise DomainError(f"every alpha must be positive, got {a!r}")
    cell = partial(_sweep_cell, base=base, state0=state0, config=config,
                   renorm_interval=renorm_interval, eps0=eps0)
    if jobs <= 1 or len(alphas) == 1:
        return [cell(a) for a in alphas]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(cell, alphas))
