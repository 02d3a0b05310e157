"""Domain types and right-hand side of the corporate micro-economics model.

The model couples labour supply ``q_s``, labour demand ``q_d``, unit
compensation ``c``, shareholder wealth ``W`` and unit price ``p``::

    dq_s/dt = gamma (c - c0)
    dq_d/dt = delta (p0 - p)
    dc/dt   = beta W
    dW/dt   = p q_d - c q_s          (revenues less costs)
    dp/dt   = -alpha (q_s - q_d)

Wealth is eliminated by carrying the compensation velocity ``v = dc/dt``
as a state component, so ``dv/dt = beta (p q_d - c q_s)`` and ``W = v / beta``.
"""
from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields

from .errors import DomainError

STATE_FIELDS = ("q_s", "q_d", "c", "v", "p")


def _check_finite(obj, names):
    for name in names:
        value = getattr(obj, name)
        if not math.isfinite(value):
            raise DomainError(f"{type(obj).__name__}.{name} is not finite: {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """Model constants.

    Parameters
    ----------
    alpha : float
        Price-adjustment rate.
    delta : float
        Demand-adjustment rate.
    gamma : float
        Supply-adjustment rate.
    beta : float
        Wealth-to-compensation coupling; must be non-zero.
    c0 : float
        Critical compensation level.
    p0 : float
        Critical price level.
    """

    alpha: float
    delta: float
    gamma: float
    beta: float
    c0: float
    p0: float

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))
        _check_finite(self, [f.name for f in fields(self)])
        if self.beta == 0.0:
            raise DomainError("ModelParams.beta must be non-zero")
        for name in ("alpha", "delta", "gamma"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"ModelParams.{name} must be >= 0")

    def as_tuple(self):
        """``(alpha, delta, gamma, beta, c0, p0)``, the kernel parameter layout."""
        return astuple(self)

    def replace(self, **changes) -> ModelParams:
        return ModelParams(**{**self.__dict__, **changes})


@dataclass(frozen=True)
class SimState:
    """One time point of the first-order system; ``v`` is dC/dt."""

    t: float
    q_s: float
    q_d: float
    c: float
    v: float
    p: float

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))
        _check_finite(self, ("t",) + STATE_FIELDS)

    @property
    def y(self):
        return (self.q_s, self.q_d, self.c, self.v, self.p)

    @classmethod
    def from_vector(cls, t, y) -> SimState:
        return cls(t, *(float(x) for x in y))

    def replace(self, **changes) -> SimState:
        return SimState(**{**self.__dict__, **changes})


@dataclass(frozen=True)
class StateDerivative:
    dq_s: float
    dq_d: float
    dc: float
    dv: float
    dp: float

    def as_tuple(self):
        return (self.dq_s, self.dq_d, self.dc, self.dv, self.dp)


def rhs(state: SimState, params: ModelParams) -> StateDerivative:
    """Time derivative of ``state`` under ``params``."""
    if not isinstance(state, SimState) or not isinstance(params, ModelParams):
        raise TypeError("rhs expects a SimState and a ModelParams")
    # re-validate: dataclasses can be bypassed with object.__setattr__
    _check_finite(state, STATE_FIELDS)
    _check_finite(params, [f.name for f in fields(params)])
    a, d, g, b, c0, p0 = params.as_tuple()
    return StateDerivative(
        dq_s=g * (state.c - c0),
        dq_d=d * (p0 - state.p),
        dc=state.v,
        dv=b * (state.p * state.q_d - state.c * state.q_s),
        dp=-a * (state.q_s - state.q_d),
    )


def shareholder_wealth(state: SimState, params: ModelParams) -> float:
    """Shareholder wealth ``W = v / beta`` implied by the compensation velocity."""
    if params.beta == 0.0:
        raise DomainError("beta must be non-zero to recover wealth")
    return state.v / params.beta


def wealth_flow(state: SimState) -> float:
    """Revenues less costs, ``p q_d - c q_s``."""
    return state.p * state.q_d - state.c * state.q_s


def equilibrium_residual(state: SimState, params: ModelParams) -> float:
    """Largest absolute component of ``rhs(state, params)``; zero at a fixed point."""
    return max(abs(x) for x in rhs(state, params).as_tuple())


def fixed_point(q: float, params: ModelParams, t: float = 0.0) -> SimState:
    """The equilibrium ``(q, q, c0, 0, p0)``; exact only when ``c0 == p0``."""
    return SimState(t=t, q_s=q, q_d=q, c=params.c0, v=0.0, p=params.p0)


def jacobian(state: SimState, params: ModelParams):
    """Analytic Jacobian of the first-order system at ``state`` (5x5 nested list)."""
    a, d, g, b, _, _ = params.as_tuple()
    qs, qd, c, _, p = state.y
    return [
        [0.0, 0.0, g, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, -d],
        [0.0, 0.0, 0.0, 1.0, 0.0],
        [-b * c, b * p, -b * qs, 0.0, b * qd],
        [-a, a, 0.0, 0.0, 0.0],
    ]
