"""Power-law tails: Pareto sampling, maximum-likelihood exponent fits,
top-share (80/20) arithmetic and rank-frequency tables.

Exponent convention: ``alpha`` is the exponent of the density,
``f(x) ~ x^-alpha``; the complementary CDF then falls as
``P(X >= x) = (x_min / x)^(alpha - 1)``.  The Pareto "shape" is
``alpha - 1``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, EstimatorRefusal
from .rng import bit_generator, uniform_open

MIN_TAIL = 10
DEGREE_SHIFT = 0.5


@dataclass(frozen=True)
class PowerLawFit:
    alpha_hat: float
    x_min: float
    n_tail: int
    stderr: float


def _hill(tail_log_sum: float, n_tail: int, x_min: float) -> PowerLawFit:
    if tail_log_sum <= 0.0:
        raise EstimatorRefusal("degenerate tail: every sample sits at x_min")
    alpha_hat = 1.0 + n_tail / tail_log_sum
    return PowerLawFit(alpha_hat=alpha_hat, x_min=float(x_min), n_tail=int(n_tail),
                       stderr=(alpha_hat - 1.0) / math.sqrt(n_tail))


def fit_powerlaw_mle(samples, x_min: float) -> PowerLawFit:
    """Continuous maximum-likelihood (Hill) fit of the tail ``x >= x_min``.

    ``alpha_hat = 1 + n / sum(ln(x_i / x_min))``, ``stderr = (alpha_hat - 1) / sqrt(n)``.
    """
    if not (math.isfinite(x_min) and x_min > 0):
        raise DomainError(f"x_min must be positive, got {x_min!r}")
    x = np.asarray(samples, dtype=np.float64)
    tail = x[x >= x_min]
    if len(tail) < MIN_TAIL:
        raise EstimatorRefusal(f"only {len(tail)} samples >= x_min={x_min}; need {MIN_TAIL}")
    return _hill(float(np.sum(np.log(tail / x_min))), len(tail), x_min)


def fit_degree_mle(degrees, k_min: int) -> PowerLawFit:
    """Exponent of a degree sequence's tail ``k >= k_min``.

    Uses the continuous estimator with the half-unit continuity shift,
    ``alpha_hat = 1 + n / sum(ln(k_i / (k_min - 1/2)))``, the usual
    approximation to the discrete maximum-likelihood fit.  The returned
    ``x_min`` is ``k_min``.
    """
    k_min = int(k_min)
    if k_min < 1:
        raise DomainError(f"k_min must be >= 1, got {k_min}")
    k = np.asarray(degrees, dtype=np.float64)
    tail = k[k >= k_min]
    if len(tail) < MIN_TAIL:
        raise EstimatorRefusal(f"only {len(tail)} degrees >= {k_min}; need {MIN_TAIL}")
    return _hill(float(np.sum(np.log(tail / (k_min - DEGREE_SHIFT)))), len(tail), k_min)


def sample_pareto(alpha: float, x_min: float, count: int, seed: int) -> np.ndarray:
    """Inverse-CDF Pareto draws ``x_min * u^(-1/(alpha-1))`` with ``u`` uniform on (0, 1).

    ``alpha <= 1`` is refused: the density is not normalizable there.  Very
    close to 1 the largest draws can exceed the float range, which raises
    :class:`DomainError` rather than returning ``inf``.
    """
    if not (math.isfinite(alpha) and alpha > 1.0):
        raise DomainError(f"alpha must exceed 1, got {alpha!r}")
    if not (math.isfinite(x_min) and x_min > 0):
        raise DomainError(f"x_min must be positive, got {x_min!r}")
    count = int(count)
    if count < 0:
        raise DomainError("count must be >= 0")
    if count == 0:
        return np.empty(0)
    u = uniform_open(bit_generator(seed), count)
    with np.errstate(over="ignore"):
        x = x_min * u ** (-1.0 / (alpha - 1.0))
    if not np.all(np.isfinite(x)):
        raise DomainError(f"draws overflow the float range at alpha={alpha!r}")
    return x


def pareto_share(alpha: float, top_fraction: float, allow_infinite_mean: bool = False) -> float:
    """Share of the total held by the largest ``top_fraction`` of a Pareto population.

    Equals ``top_fraction^((alpha-2)/(alpha-1))``.  For ``alpha <= 2`` the mean
    diverges and the share tends to 1 for every ``top_fraction``; that regime
    raises :class:`DomainError` unless ``allow_infinite_mean`` is set, in
    which case the limit 1.0 is returned.
    """
    if not 0.0 < top_fraction < 1.0:
        raise DomainError(f"top_fraction must lie in (0, 1), got {top_fraction!r}")
    if not (math.isfinite(alpha) and alpha > 1.0):
        raise DomainError(f"alpha must exceed 1, got {alpha!r}")
    if alpha <= 2.0:
        if allow_infinite_mean:
            return 1.0
        raise DomainError(f"alpha={alpha!r} <= 2: infinite mean, top share is degenerate")
    return top_fraction ** ((alpha - 2.0) / (alpha - 1.0))


def alpha_for_share(share: float, top_fraction: float) -> float:
    """Density exponent at which the top ``top_fraction`` holds ``share`` of the total."""
    if not top_fraction < share < 1.0:
        raise DomainError("need top_fraction < share < 1")
    return brentq(lambda a: pareto_share(a, top_fraction) - share, 2.0 + 1e-12, 1e6,
                  xtol=1e-14, rtol=1e-14)


def empirical_top_share(samples, top_fraction: float) -> float:
    """Fraction of the sample total held by its largest ``top_fraction`` values."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    n = len(x)
    k = int(round(top_fraction * n))
    if n == 0 or not 0 < k <= n:
        raise DomainError("sample too small for the requested fraction")
    return float(np.sum(x[n - k:]) / np.sum(x))


def rank_frequency(samples, with_labels: bool = False) -> list[tuple]:
    """``(rank, count)`` pairs, most frequent first, ranks from 1.

    Ties keep the order in which labels first appear.  With ``with_labels``
    the tuples are ``(rank, label, count)``.
    """
    samples = list(samples)
    if not samples:
        raise DomainError("rank_frequency needs at least one label")
    # Counter preserves first-appearance order and sorted() is stable
    ordered = sorted(Counter(samples).items(), key=lambda kv: kv[1], reverse=True)
    if with_labels:
        return [(i + 1, label, c) for i, (label, c) in enumerate(ordered)]
    return [(i + 1, c) for i, (_, c) in enumerate(ordered)]
