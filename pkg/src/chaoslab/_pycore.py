"""Pure-Python kernels.

Reference implementation of every hot loop in :mod:`chaoslab._core`.  The
compiled module performs the same floating-point operations in the same order,
so the two backends agree bit for bit; ``tests/test_backends.py`` checks this.

State vectors are ``(q_s, q_d, c, v, p)`` and parameter vectors are
``(alpha, delta, gamma, beta, c0, p0)``.
"""
import math

import numpy as np

BACKEND = "python"

# Dormand-Prince 5(4) tableau
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
E1, E3, E4, E5, E6, E7 = (71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200,
                          22 / 525, -1 / 40)

FAC_MIN = 0.2
FAC_MAX = 10.0
SAFETY = 0.9

STATUS_OK = 0
STATUS_BLOWUP = 1
STATUS_STALL = 2

TWO_M52 = 2.0 ** -52


def model_rhs(y, prm):
    qs, qd, c, v, p = y
    alpha, delta, gamma, beta, c0, p0 = prm
    return (gamma * (c - c0),
            delta * (p0 - p),
            v,
            beta * (p * qd - c * qs),
            -alpha * (qs - qd))


def _finite(y):
    isfinite = math.isfinite
    return (isfinite(y[0]) and isfinite(y[1]) and isfinite(y[2])
            and isfinite(y[3]) and isfinite(y[4]))


def rk4_step(y, prm, dt):
    h2 = 0.5 * dt
    h6 = dt / 6.0
    k1 = model_rhs(y, prm)
    k2 = model_rhs([y[i] + h2 * k1[i] for i in range(5)], prm)
    k3 = model_rhs([y[i] + h2 * k2[i] for i in range(5)], prm)
    k4 = model_rhs([y[i] + dt * k3[i] for i in range(5)], prm)
    return [y[i] + h6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            for i in range(5)]


def rk4_run(y0, prm, dt, nsteps, stride):
    """Advance ``nsteps`` RK4 steps, keeping every ``stride``-th state.

    Returns ``(rows, steps_done, blew_up)``.  On a non-finite step the run
    stops and ``steps_done`` counts only the finite steps.
    """
    y = [float(x) for x in y0]
    prm = tuple(float(x) for x in prm)
    rows = [list(y)]
    done = 0
    blew_up = False
    for j in range(1, nsteps + 1):
        y_new = rk4_step(y, prm, dt)
        if not _finite(y_new):
            blew_up = True
            break
        y = y_new
        done = j
        if j % stride == 0:
            rows.append(y)
    return np.array(rows, dtype=np.float64).reshape(-1, 5), done, blew_up


def dopri_run(y0, prm, t0, t_end, rtol, atol, h0, dt_min, stride, max_steps):
    """Adaptive Dormand-Prince 5(4) integration with FSAL.

    Returns ``(ts, rows, n_accepted, n_rejected, status, err_sum, t_fail)``.
    Every ``stride``-th accepted step and the final state are recorded.
    """
    prm = tuple(float(x) for x in prm)
    y = [float(x) for x in y0]
    t = float(t0)
    t_end = float(t_end)
    ts = [t]
    rows = [list(y)]
    n_acc = 0
    n_rej = 0
    err_sum = 0.0
    status = STATUS_OK
    if not t_end > t:
        return np.array(ts), np.array(rows).reshape(-1, 5), 0, 0, status, err_sum, t
    h = min(h0, t_end - t)
    k1 = model_rhs(y, prm)
    r5 = range(5)
    while True:
        if n_acc + n_rej >= max_steps:
            status = STATUS_STALL
            break
        last = False
        if t + h >= t_end:
            h = t_end - t
            last = True
        k2 = model_rhs([y[i] + h * (A21 * k1[i]) for i in r5], prm)
        k3 = model_rhs([y[i] + h * (A31 * k1[i] + A32 * k2[i]) for i in r5], prm)
        k4 = model_rhs([y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
                        for i in r5], prm)
        k5 = model_rhs([y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i]
                                    + A54 * k4[i]) for i in r5], prm)
        k6 = model_rhs([y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i]
                                    + A64 * k4[i] + A65 * k5[i]) for i in r5], prm)
        y_new = [y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i]
                             + B6 * k6[i]) for i in r5]
        if not _finite(y_new):
            status = STATUS_BLOWUP
            break
        k7 = model_rhs(y_new, prm)
        if not _finite(k7):
            status = STATUS_BLOWUP
            break
        acc = 0.0
        emax = 0.0
        for i in r5:
            e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i]
                     + E6 * k6[i] + E7 * k7[i])
            sc = atol + rtol * max(abs(y[i]), abs(y_new[i]))
            q = e / sc
            acc += q * q
            ae = abs(e)
            if ae > emax:
                emax = ae
        err = math.sqrt(acc / 5.0)
        if err <= 1.0:
            t = t_end if last else t + h
            y = y_new
            k1 = k7
            n_acc += 1
            err_sum += emax
            if last or n_acc % stride == 0:
                ts.append(t)
                rows.append(y)
            if last:
                break
            if err == 0.0:
                fac = FAC_MAX
            else:
                fac = min(FAC_MAX, max(FAC_MIN, SAFETY * err ** -0.2))
        else:
            n_rej += 1
            fac = max(FAC_MIN, SAFETY * err ** -0.2)
        h = h * fac
        if h < dt_min:
            status = STATUS_STALL
            break
    return (np.array(ts, dtype=np.float64), np.array(rows, dtype=np.float64).reshape(-1, 5),
            n_acc, n_rej, status, err_sum, t)


class _RawStream:
    """Buffered reader of raw 64-bit outputs from a numpy bit generator."""

    def __init__(self, bitgen, chunk=4096):
        self._bitgen = bitgen
        self._chunk = chunk
        self._buf = []
        self._pos = 0

    def next(self):
        if self._pos == len(self._buf):
            self._buf = self._bitgen.random_raw(self._chunk).tolist()
            self._pos = 0
        r = self._buf[self._pos]
        self._pos += 1
        return r


def ba_edges(n, m, bitgen):
    m0 = m + 1
    edges = []
    pool = []
    for i in range(m0):
        for j in range(i + 1, m0):
            edges.append((i, j))
            pool.append(i)
            pool.append(j)
    raw = _RawStream(bitgen)
    for new in range(m0, n):
        size = len(pool)
        chosen = []
        while len(chosen) < m:
            t = pool[raw.next() % size]
            if t not in chosen:
                chosen.append(t)
        for t in chosen:
            edges.append((t, new))
            pool.append(t)
            pool.append(new)
    return np.array(edges, dtype=np.int64).reshape(-1, 2)


def er_edges(n, p, bitgen):
    """Geometric-skip sampling of G(n, p) (Batagelj and Brandes, 2005)."""
    if p <= 0.0 or n < 2:
        return np.empty((0, 2), dtype=np.int64)
    lp = math.log1p(-p)
    limit = float(n) * float(n)
    raw = _RawStream(bitgen)
    edges = []
    v = 1
    w = -1
    while v < n:
        u = (float(raw.next() >> 12) + 0.5) * TWO_M52
        skip = math.log(u) / lp
        if skip > limit:
            break
        w = w + 1 + int(math.floor(skip))
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            edges.append((w, v))
    return np.array(edges, dtype=np.int64).reshape(-1, 2)
