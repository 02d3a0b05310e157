"""Text formats: trajectory/sweep CSV, edge lists and sample files."""
from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .graphs import DegreeStats, Graph

TRAJECTORY_HEADER = "t,q_S,q_D,C,dCdt,p,W"
SWEEP_HEADER = "alpha,min_qD,max_abs_qD,went_negative,lambda,blew_up"
LYAPUNOV_HEADER = "lambda,t_start,t_end,renorm_interval,eps0,transient,n_events,truncated"
FIT_HEADER = "alpha_hat,stderr,n_tail,x_min"
DEGREE_HEADER = "degree,count,ccdf"


def num(x) -> str:
    """Shortest decimal for ``x`` with at most 9 significant digits."""
    return format(float(x), ".9g")


def flag(b) -> str:
    return "true" if b else "false"


def trajectory_rows(traj):
    w = traj.wealth()
    for t, (qs, qd, c, v, p), wi in zip(traj.t.tolist(), traj.y.tolist(), w.tolist()):
        yield ",".join(num(x) for x in (t, qs, qd, c, v, p, wi))


def sweep_row(rec) -> str:
    return ",".join([num(rec.alpha), num(rec.min_q_d), num(rec.max_abs_q_d),
                     flag(rec.went_negative), num(rec.lambda_), flag(rec.blew_up)])


def lyapunov_row(est) -> str:
    return ",".join([num(est.exponent), num(est.window[0]), num(est.window[1]),
                     num(est.renorm_interval), num(est.eps0), num(est.transient),
                     str(est.n_events), flag(est.truncated)])


def fit_row(fit) -> str:
    return ",".join([num(fit.alpha_hat), num(fit.stderr), str(fit.n_tail), num(fit.x_min)])


def degree_rows(stats: DegreeStats):
    for k, p in stats.ccdf:
        yield f"{k},{stats.histogram[k]},{num(p)}"


def edge_list_lines(g: Graph):
    yield f"# nodes={g.n}"
    for u, v in g.canonical_edges().tolist():
        yield f"{u} {v}"


def is_edge_list(text: str) -> bool:
    return any(line.startswith("# nodes=") for line in text.splitlines()[:200])


def parse_edge_list(text: str, origin="edge list") -> Graph:
    n = None
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith("# nodes="):
            try:
                n = int(line.split("=", 1)[1])
            except ValueError:
                raise ConfigError(origin, f"line {lineno}: bad node count") from None
            continue
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ConfigError(origin, f"line {lineno}: expected 'u v'")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ConfigError(origin, f"line {lineno}: node ids must be integers") from None
    if n is None:
        raise ConfigError(origin, "missing '# nodes=<n>' header")
    g = Graph(n, np.array(pairs, dtype=np.int64).reshape(-1, 2))
    try:
        g.validate()
    except ValueError as exc:
        raise ConfigError(origin, str(exc)) from None
    return g


def sample_lines(samples):
    return map(repr, np.asarray(samples, dtype=np.float64).tolist())


def parse_samples(text: str, origin="samples") -> np.ndarray:
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            values.append(float(s))
        except ValueError:
            raise ConfigError(origin, f"line {lineno}: not a number: {s!r}") from None
    return np.array(values, dtype=np.float64)
