# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same arithmetic, same order as :mod:`chaoslab._pycore`."""
import numpy as np

cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport floor, log, log1p, pow, sqrt, isfinite
from libc.stdint cimport int64_t, uint64_t
from numpy.random cimport bitgen_t

cnp.import_array()

BACKEND = "cython"

cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0
cdef double A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0
cdef double B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0
cdef double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0
cdef double E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0

cdef double FAC_MIN = 0.2
cdef double FAC_MAX = 10.0
cdef double SAFETY = 0.9
cdef double TWO_M52 = 2.220446049250313e-16

STATUS_OK = 0
STATUS_BLOWUP = 1
STATUS_STALL = 2


cdef inline void model_rhs(const double* y, const double* prm, double* out) noexcept nogil:
    # prm = (alpha, delta, gamma, beta, c0, p0)
    out[0] = prm[2] * (y[2] - prm[4])
    out[1] = prm[1] * (prm[5] - y[4])
    out[2] = y[3]
    out[3] = prm[3] * (y[4] * y[1] - y[2] * y[0])
    out[4] = -prm[0] * (y[0] - y[1])


cdef inline bint finite5(const double* y) noexcept nogil:
    return (isfinite(y[0]) and isfinite(y[1]) and isfinite(y[2])
            and isfinite(y[3]) and isfinite(y[4]))


cdef inline void rk4_step_c(const double* y, const double* prm, double dt,
                            double* out) noexcept nogil:
    cdef double k1[5]
    cdef double k2[5]
    cdef double k3[5]
    cdef double k4[5]
    cdef double tmp[5]
    cdef double h2 = 0.5 * dt
    cdef double h6 = dt / 6.0
    cdef int i
    model_rhs(y, prm, k1)
    for i in range(5):
        tmp[i] = y[i] + h2 * k1[i]
    model_rhs(tmp, prm, k2)
    for i in range(5):
        tmp[i] = y[i] + h2 * k2[i]
    model_rhs(tmp, prm, k3)
    for i in range(5):
        tmp[i] = y[i] + dt * k3[i]
    model_rhs(tmp, prm, k4)
    for i in range(5):
        out[i] = y[i] + h6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])


cdef void _load(object seq, double* dst, int n) except *:
    cdef int i
    for i in range(n):
        dst[i] = float(seq[i])


def rk4_step(y, prm, double dt):
    cdef double yc[5]
    cdef double pc[6]
    cdef double out[5]
    _load(y, yc, 5)
    _load(prm, pc, 6)
    rk4_step_c(yc, pc, dt, out)
    return [out[0], out[1], out[2], out[3], out[4]]


def rk4_run(y0, prm, double dt, Py_ssize_t nsteps, Py_ssize_t stride):
    cdef double y[5]
    cdef double y_new[5]
    cdef double pc[6]
    cdef Py_ssize_t j, k, i
    cdef Py_ssize_t done = 0
    cdef bint blew_up = False
    _load(y0, y, 5)
    _load(prm, pc, 6)
    rows = np.empty((nsteps // stride + 1, 5), dtype=np.float64)
    cdef double[:, ::1] r = rows
    for i in range(5):
        r[0, i] = y[i]
    k = 1
    with nogil:
        for j in range(1, nsteps + 1):
            rk4_step_c(y, pc, dt, y_new)
            if not finite5(y_new):
                blew_up = True
                break
            for i in range(5):
                y[i] = y_new[i]
            done = j
            if j % stride == 0:
                for i in range(5):
                    r[k, i] = y[i]
                k += 1
    return rows[:k], done, blew_up


def dopri_run(y0, prm, double t0, double t_end, double rtol, double atol,
              double h0, double dt_min, Py_ssize_t stride, Py_ssize_t max_steps):
    cdef double y[5]
    cdef double y_new[5]
    cdef double pc[6]
    cdef double k1[5]
    cdef double k2[5]
    cdef double k3[5]
    cdef double k4[5]
    cdef double k5[5]
    cdef double k6[5]
    cdef double k7[5]
    cdef double tmp[5]
    cdef double t = t0, h, acc, emax, e, sc, q, ae, err, fac, a, b
    cdef double err_sum = 0.0
    cdef Py_ssize_t n_acc = 0, n_rej = 0
    cdef int status = 0
    cdef int i
    cdef bint last
    _load(y0, y, 5)
    _load(prm, pc, 6)
    ts = [t]
    rows = [[y[0], y[1], y[2], y[3], y[4]]]
    if not t_end > t:
        return (np.array(ts, dtype=np.float64), np.array(rows, dtype=np.float64).reshape(-1, 5),
                0, 0, status, err_sum, t)
    h = min(h0, t_end - t)
    model_rhs(y, pc, k1)
    while True:
        if n_acc + n_rej >= max_steps:
            status = 2
            break
        last = False
        if t + h >= t_end:
            h = t_end - t
            last = True
        for i in range(5):
            tmp[i] = y[i] + h * (A21 * k1[i])
        model_rhs(tmp, pc, k2)
        for i in range(5):
            tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i])
        model_rhs(tmp, pc, k3)
        for i in range(5):
            tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
        model_rhs(tmp, pc, k4)
        for i in range(5):
            tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
        model_rhs(tmp, pc, k5)
        for i in range(5):
            tmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i]
                                 + A64 * k4[i] + A65 * k5[i])
        model_rhs(tmp, pc, k6)
        for i in range(5):
            y_new[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i]
                                   + B6 * k6[i])
        if not finite5(y_new):
            status = 1
            break
        model_rhs(y_new, pc, k7)
        if not finite5(k7):
            status = 1
            break
        acc = 0.0
        emax = 0.0
        for i in range(5):
            e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i]
                     + E6 * k6[i] + E7 * k7[i])
            a = y[i] if y[i] >= 0.0 else -y[i]
            b = y_new[i] if y_new[i] >= 0.0 else -y_new[i]
            sc = atol + rtol * (b if b > a else a)
            q = e / sc
            acc += q * q
            ae = e if e >= 0.0 else -e
            if ae > emax:
                emax = ae
        err = sqrt(acc / 5.0)
        if err <= 1.0:
            t = t_end if last else t + h
            for i in range(5):
                y[i] = y_new[i]
                k1[i] = k7[i]
            n_acc += 1
            err_sum += emax
            if last or n_acc % stride == 0:
                ts.append(t)
                rows.append([y[0], y[1], y[2], y[3], y[4]])
            if last:
                break
            if err == 0.0:
                fac = FAC_MAX
            else:
                fac = SAFETY * pow(err, -0.2)
                if fac < FAC_MIN:
                    fac = FAC_MIN
                if fac > FAC_MAX:
                    fac = FAC_MAX
        else:
            n_rej += 1
            fac = SAFETY * pow(err, -0.2)
            if fac < FAC_MIN:
                fac = FAC_MIN
        h = h * fac
        if h < dt_min:
            status = 2
            break
    return (np.array(ts, dtype=np.float64), np.array(rows, dtype=np.float64).reshape(-1, 5),
            n_acc, n_rej, status, err_sum, t)


cdef bitgen_t* _bitgen_ptr(object bitgen) except NULL:
    capsule = bitgen.capsule
    return <bitgen_t*> PyCapsule_GetPointer(capsule, "BitGenerator")


def ba_edges(Py_ssize_t n, Py_ssize_t m, bitgen):
    cdef bitgen_t* rng = _bitgen_ptr(bitgen)
    cdef Py_ssize_t m0 = m + 1
    cdef Py_ssize_t n_edges = m0 * (m0 - 1) // 2 + m * (n - m0)
    edges = np.empty((n_edges, 2), dtype=np.int64)
    pool_arr = np.empty(2 * n_edges, dtype=np.int64)
    chosen_arr = np.empty(m, dtype=np.int64)
    cdef int64_t[:, ::1] ed = edges
    cdef int64_t[::1] pool = pool_arr
    cdef int64_t[::1] chosen = chosen_arr
    cdef Py_ssize_t i, j, e = 0, size = 0, nc, c, new
    cdef uint64_t r
    cdef int64_t t
    cdef bint dup
    for i in range(m0):
        for j in range(i + 1, m0):
            ed[e, 0] = i
            ed[e, 1] = j
            e += 1
            pool[size] = i
            pool[size + 1] = j
            size += 2
    with bitgen.lock, nogil:
        for new in range(m0, n):
            nc = 0
            while nc < m:
                r = rng.next_uint64(rng.state)
                t = pool[<Py_ssize_t>(r % <uint64_t>size)]
                dup = False
                for c in range(nc):
                    if chosen[c] == t:
                        dup = True
                        break
                if not dup:
                    chosen[nc] = t
                    nc += 1
            for c in range(m):
                ed[e, 0] = chosen[c]
                ed[e, 1] = new
                e += 1
                pool[size] = chosen[c]
                pool[size + 1] = new
                size += 2
    return edges


def er_edges(Py_ssize_t n, double p, bitgen):
    cdef bitgen_t* rng = _bitgen_ptr(bitgen)
    if p <= 0.0 or n < 2:
        return np.empty((0, 2), dtype=np.int64)
    cdef double lp = log1p(-p)
    cdef double limit = <double>n * <double>n
    cdef double u, skip
    cdef int64_t v = 1, w = -1
    cdef Py_ssize_t cap = <Py_ssize_t>(p * n * (n - 1) / 2.0 + 10.0 * sqrt(p * n * n) + 16)
    cdef Py_ssize_t k = 0
    out = np.empty((cap, 2), dtype=np.int64)
    cdef int64_t[:, ::1] ed = out
    with bitgen.lock:
        while v < n:
            u = (<double>(rng.next_uint64(rng.state) >> 12) + 0.5) * TWO_M52
            skip = log(u) / lp
            if skip > limit:
                break
            w = w + 1 + <int64_t>floor(skip)
            while w >= v and v < n:
                w -= v
                v += 1
            if v < n:
                if k == cap:
                    cap *= 2
                    out = np.resize(out, (cap, 2))
                    ed = out
                ed[k, 0] = w
                ed[k, 1] = v
                k += 1
    return out[:k].copy()
