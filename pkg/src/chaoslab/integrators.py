"""Fixed-step RK4 and adaptive Dormand-Prince 5(4) time stepping."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .dynamics import STATE_FIELDS, ModelParams, SimState
from .errors import BlowUpError, ConfigError, StepSizeUnderflow

METHODS = ("rk4", "dopri54")


@dataclass(frozen=True)
class IntegratorConfig:
    """Time-stepping settings.

    ``dt`` is used by ``rk4``; ``rel_tol``, ``abs_tol``, ``h0`` and ``dt_min``
    by ``dopri54``.  ``t_end`` is an absolute time.  ``sample_stride`` keeps
    every n-th step (accepted step for ``dopri54``).
    """

    method: str = "rk4"
    dt: float = 0.01
    t_end: float = 200.0
    sample_stride: int = 10
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    h0: float = 1e-3
    dt_min: float = 1e-12
    max_steps: int = 10_000_000

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError("integrator.method", f"must be one of {METHODS}, got {self.method!r}")
        for name in ("dt", "rel_tol", "abs_tol", "h0", "dt_min"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"integrator.{name}", f"must be a positive number, got {value!r}")
        if not (math.isfinite(self.t_end) and self.t_end >= 0):
            raise ConfigError("integrator.t_end", f"must be >= 0, got {self.t_end!r}")
        if int(self.sample_stride) != self.sample_stride or self.sample_stride < 1:
            raise ConfigError("integrator.sample_stride", "must be a positive integer")
        if self.max_steps < 1:
            raise ConfigError("integrator.max_steps", "must be a positive integer")

    def replace(self, **changes) -> IntegratorConfig:
        return IntegratorConfig(**{**self.__dict__, **changes})


@dataclass
class Trajectory:
    """Sampled solution.

    ``t`` has shape ``(k,)`` and ``y`` shape ``(k, 5)`` with columns
    ``q_s, q_d, c, v, p``.  If the run produced a non-finite state it is
    truncated at the last finite step, ``blew_up`` is set and ``t_blowup``
    holds the time of the failing step.
    """

    t: np.ndarray
    y: np.ndarray
    params: ModelParams
    config: IntegratorConfig
    blew_up: bool = False
    t_blowup: float | None = None
    n_steps: int = 0
    n_rejected: int = 0
    error_estimate: float = 0.0
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i) -> SimState:
        return SimState.from_vector(self.t[i], self.y[i])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def column(self, name):
        return self.y[:, STATE_FIELDS.index(name)]

    @property
    def q_d(self):
        return self.y[:, 1]

    @property
    def final(self) -> SimState:
        return self[-1]

    def wealth(self):
        """Shareholder wealth ``v / beta`` at every sample."""
        return self.y[:, 3] / self.params.beta

    def wealth_flow(self):
        """Revenues less costs ``p q_d - c q_s`` at every sample."""
        y = self.y
        return y[:, 4] * y[:, 1] - y[:, 2] * y[:, 0]


def rk4_step(state: SimState, params: ModelParams, dt: float) -> SimState:
    """Advance ``state`` by one classic RK4 step of size ``dt``."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    y = _backend.kernels.rk4_step(state.y, params.as_tuple(), dt)
    if not all(math.isfinite(x) for x in y):
        raise BlowUpError(state.t + dt)
    return SimState.from_vector(state.t + dt, y)


def n_fixed_steps(t0, t_end, dt):
    span = t_end - t0
    if span <= 0:
        return 0
    # tolerate rounding in span/dt so that 200/0.01 gives 20000, not 20001
    return max(0, math.ceil(span / dt - 1e-9))


def integrate(state0: SimState, params: ModelParams, config: IntegratorConfig) -> Trajectory:
    """Integrate from ``state0`` to ``config.t_end`` with the configured method."""
    if config.method == "dopri54":
        return integrate_adaptive(state0, params, config)
    nsteps = n_fixed_steps(state0.t, config.t_end, config.dt)
    stride = int(config.sample_stride)
    rows, done, blew_up = _backend.kernels.rk4_run(
        state0.y, params.as_tuple(), config.dt, nsteps, stride)
    idx = np.arange(len(rows), dtype=np.float64) * stride
    t = state0.t + idx * config.dt
    return Trajectory(
        t=t, y=np.asarray(rows), params=params, config=config,
        blew_up=bool(blew_up),
        t_blowup=state0.t + (done + 1) * config.dt if blew_up else None,
        n_steps=int(done),
        meta={"integrator": "rk4", "dt": config.dt, "sample_stride": stride,
              "backend": _backend.BACKEND},
    )


def integrate_adaptive(state0: SimState, params: ModelParams,
                       config: IntegratorConfig) -> Trajectory:
    """Dormand-Prince 5(4) with mixed absolute/relative RMS error control.

    ``error_estimate`` on the result is the sum of the max-norm local error
    estimates over accepted steps.  Raises :class:`StepSizeUnderflow` when the
    step size drops below ``config.dt_min``.
    """
    ts, rows, n_acc, n_rej, status, err_sum, t_fail = _backend.kernels.dopri_run(
        state0.y, params.as_tuple(), state0.t, config.t_end, config.rel_tol,
        config.abs_tol, config.h0, config.dt_min, int(config.sample_stride),
        int(config.max_steps))
    if status == _backend.kernels.STATUS_STALL:
        raise StepSizeUnderflow(t_fail, config.dt_min)
    blew_up = status == _backend.kernels.STATUS_BLOWUP
    return Trajectory(
        t=np.asarray(ts), y=np.asarray(rows), params=params, config=config,
        blew_up=blew_up, t_blowup=t_fail if blew_up else None,
        n_steps=int(n_acc), n_rejected=int(n_rej), error_estimate=float(err_sum),
        meta={"integrator": "dopri54", "rel_tol": config.rel_tol,
              "abs_tol": config.abs_tol, "sample_stride": int(config.sample_stride),
              "backend": _backend.BACKEND},
    )


def rk4_generic(f, y0, dt, nsteps):
    """RK4 for an arbitrary autonomous vector field ``f(y) -> dy/dt`` (numpy arrays).

    Returns ``(y, steps_done, blew_up)``; used for test systems and hooks.
    """
    y = np.array(y0, dtype=np.float64)
    h2 = 0.5 * dt
    h6 = dt / 6.0
    for j in range(1, nsteps + 1):
        k1 = np.asarray(f(y))
        k2 = np.asarray(f(y + h2 * k1))
        k3 = np.asarray(f(y + h2 * k2))
        k4 = np.asarray(f(y + dt * k3))
        y_new = y + h6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y_new)):
            return y, j - 1, True
        y = y_new
    return y, nsteps, False
