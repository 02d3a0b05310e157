"""Random graph generators and degree statistics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError
from .rng import bit_generator


@dataclass
class Graph:
    """Simple undirected graph: ``n`` nodes and an ``(E, 2)`` int64 edge array."""

    n: int
    edges: np.ndarray

    def __post_init__(self):
        self.edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)

    @property
    def n_edges(self):
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def canonical_edges(self) -> np.ndarray:
        """Edges as ``(min, max)`` pairs sorted by first then second node."""
        e = np.sort(self.edges, axis=1)
        order = np.lexsort((e[:, 1], e[:, 0]))
        return e[order]

    def validate(self):
        """Raise :class:`DomainError` unless the graph is simple and in range."""
        e = self.edges
        if self.n < 0:
            raise DomainError("negative node count")
        if e.size and (e.min() < 0 or e.max() >= self.n):
            raise DomainError("edge endpoint out of range")
        if np.any(e[:, 0] == e[:, 1]):
            raise DomainError("self-loop")
        c = self.canonical_edges()
        if len(c) > 1 and np.any(np.all(c[1:] == c[:-1], axis=1)):
            raise DomainError("duplicate edge")


@dataclass
class DegreeStats:
    histogram: dict
    ccdf: list
    mean_degree: float


def complete_graph(n: int) -> Graph:
    i, j = np.triu_indices(n, 1)
    return Graph(n, np.column_stack((i, j)))


def generate_ba(n: int, m: int, seed: int) -> Graph:
    """Barabasi-Albert growth with preferential attachment.

    Starts from the complete graph on ``m + 1`` nodes.  Every new node links
    to ``m`` distinct existing nodes drawn with probability proportional to
    their degree at the start of its round; repeated draws are discarded and
    redrawn.  The result has ``m(m+1)/2 + m(n - m - 1)`` edges.
    """
    n, m = int(n), int(m)
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if n <= m:
        raise DomainError(f"n must exceed m, got n={n}, m={m}")
    edges = _backend.kernels.ba_edges(n, m, bit_generator(seed))
    return Graph(n, edges)


def generate_er(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p): every pair joined independently with probability ``p``."""
    n, p = int(n), float(p)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    if p == 0.0 or n == 1:
        return Graph(n, np.empty((0, 2), dtype=np.int64))
    if p == 1.0:
        return complete_graph(n)
    return Graph(n, _backend.kernels.er_edges(n, p, bit_generator(seed)))


def degree_stats(g: Graph) -> DegreeStats:
    deg = g.degrees()
    counts = np.bincount(deg) if g.n else np.zeros(0, dtype=np.int64)
    ks = np.flatnonzero(counts)
    histogram = {int(k): int(counts[k]) for k in ks}
    # P(K >= k) at each observed degree
    tail = np.cumsum(counts[::-1])[::-1]
    ccdf = [(int(k), float(tail[k] / g.n)) for k in ks]
    mean = 2.0 * g.n_edges / g.n if g.n else 0.0
    return DegreeStats(histogram=histogram, ccdf=ccdf, mean_degree=mean)
