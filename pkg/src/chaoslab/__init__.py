"""Numerical laboratory for a corporate micro-economics ODE model and for
power-law statistics of growing networks."""
from ._backend import BACKEND
from .chaos import (DivergenceCurve, LyapunovEstimate, SweepRecord, divergence_curve,
                    largest_lyapunov, sweep_alpha)
from .dynamics import (ModelParams, SimState, StateDerivative, equilibrium_residual,
                       fixed_point, rhs, shareholder_wealth)
from .graphs import DegreeStats, Graph, degree_stats, generate_ba, generate_er
from .integrators import (IntegratorConfig, Trajectory, integrate, integrate_adaptive,
                          rk4_step)
from .powerlaw import (PowerLawFit, fit_degree_mle, fit_powerlaw_mle, pareto_share,
                       rank_frequency, sample_pareto)

__version__ = "0.1.0"

FIG1A = ModelParams(alpha=0.6, delta=0.2, gamma=0.3, beta=0.005, c0=100.0, p0=100.0)
FIG1B = FIG1A.replace(alpha=0.525)


def fig1_initial(q_d=10.0):
    """Published initial data; ``q_d`` is not published and defaults to 10."""
    return SimState(t=0.0, q_s=10.0, q_d=q_d, c=101.0, v=-0.2, p=101.0)
