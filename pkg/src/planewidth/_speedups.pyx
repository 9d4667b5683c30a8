# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the kernels in ``_purepy`` (same signatures and results)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, log, exp, isfinite, INFINITY
from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t, int64_t

from . import _purepy

cnp.import_array()

TINY = _purepy.TINY
ARMIJO = _purepy.ARMIJO
FIXED = _purepy.FIXED
OK = _purepy.OK
STALLED = _purepy.STALLED
NONFINITE = _purepy.NONFINITE

cdef double _TINY = _purepy.TINY


# -- exact distance extremes ------------------------------------------------------------


def pair_extremes(X, eu, ev):
    cdef const double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef const int64_t[::1] a = np.ascontiguousarray(eu, dtype=np.int64)
    cdef const int64_t[::1] b = np.ascontiguousarray(ev, dtype=np.int64)
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1], m = a.shape[0]
    cdef Py_ssize_t i, j, k, u, v
    cdef Py_ssize_t i_max = -1, i_min = -1, mpu = -1, mpv = -1, npu = -1, npv = -1
    cdef double max_e = -INFINITY, min_e = INFINITY, max_p = -INFINITY, min_p = INFINITY
    cdef double s, t
    with nogil:
        for i in range(m):
            u = a[i]
            v = b[i]
            s = 0.0
            for k in range(d):
                t = x[u, k] - x[v, k]
                s += t * t
            if i_max < 0 or s > max_e:
                max_e = s
                i_max = i
            if i_min < 0 or s < min_e:
                min_e = s
                i_min = i
        for i in range(n - 1):
            for j in range(i + 1, n):
                s = 0.0
                for k in range(d):
                    t = x[i, k] - x[j, k]
                    s += t * t
                if mpu < 0 or s > max_p:
                    max_p = s
                    mpu = i
                    mpv = j
                if npu < 0 or s < min_p:
                    min_p = s
                    npu = i
                    npv = j
    return (
        sqrt(max_e) if i_max >= 0 else -np.inf, i_max,
        sqrt(min_e) if i_min >= 0 else np.inf, i_min,
        sqrt(max_p) if mpu >= 0 else -np.inf, mpu, mpv,
        sqrt(min_p) if npu >= 0 else np.inf, npu, npv,
    )


# -- smoothed minimax descent -------------------------------------------------------------


cdef double _smooth(const double* x, Py_ssize_t n, Py_ssize_t d,
                    const int64_t* nu, const int64_t* nv, Py_ssize_t mn,
                    const int64_t* du, const int64_t* dv, Py_ssize_t md,
                    double T, double* grad, double* buf_n, double* buf_d) noexcept nogil:
    cdef Py_ssize_t i, k, u, v
    cdef double s, t, mx = -INFINITY, mnv = INFINITY, sn = 0.0, sd = 0.0, c, f
    for i in range(mn):
        u = nu[i]
        v = nv[i]
        s = _TINY
        for k in range(d):
            t = x[u * d + k] - x[v * d + k]
            s += t * t
        buf_n[i] = 0.5 * log(s)
        if buf_n[i] > mx:
            mx = buf_n[i]
    for i in range(md):
        u = du[i]
        v = dv[i]
        s = _TINY
        for k in range(d):
            t = x[u * d + k] - x[v * d + k]
            s += t * t
        buf_d[i] = 0.5 * log(s)
        if buf_d[i] < mnv:
            mnv = buf_d[i]
    for i in range(mn):
        buf_n[i] = exp((buf_n[i] - mx) / T)
        sn += buf_n[i]
    for i in range(md):
        buf_d[i] = exp((mnv - buf_d[i]) / T)
        sd += buf_d[i]
    f = mx + T * log(sn) - mnv + T * log(sd)
    if grad == NULL:
        return f
    for i in range(n * d):
        grad[i] = 0.0
    for i in range(mn):
        u = nu[i]
        v = nv[i]
        s = _TINY
        for k in range(d):
            t = x[u * d + k] - x[v * d + k]
            s += t * t
        c = (buf_n[i] / sn) / s
        for k in range(d):
            t = c * (x[u * d + k] - x[v * d + k])
            grad[u * d + k] += t
            grad[v * d + k] -= t
    for i in range(md):
        u = du[i]
        v = dv[i]
        s = _TINY
        for k in range(d):
            t = x[u * d + k] - x[v * d + k]
            s += t * t
        c = -(buf_d[i] / sd) / s
        for k in range(d):
            t = c * (x[u * d + k] - x[v * d + k])
            grad[u * d + k] += t
            grad[v * d + k] -= t
    return f


cdef void _normalize(double* x, Py_ssize_t n, Py_ssize_t d,
                     const int64_t* du, const int64_t* dv, Py_ssize_t md) noexcept nogil:
    cdef Py_ssize_t i, k, u, v
    cdef double c, s, t, m = INFINITY
    for k in range(d):
        c = 0.0
        for i in range(n):
            c += x[i * d + k]
        c /= n
        for i in range(n):
            x[i * d + k] -= c
    for i in range(md):
        u = du[i]
        v = dv[i]
        s = 0.0
        for k in range(d):
            t = x[u * d + k] - x[v * d + k]
            s += t * t
        if s < m:
            m = s
    m = sqrt(m)
    if m > 0:
        for i in range(n * d):
            x[i] /= m


def descend(X0, nu, nv, du, dv, temps, iters, rule, alpha0, gtol=1e-15):
    cdef double[:, :, ::1] X = np.array(X0, dtype=np.float64, order="C")
    cdef const int64_t[::1] a_nu = np.ascontiguousarray(nu, dtype=np.int64)
    cdef const int64_t[::1] a_nv = np.ascontiguousarray(nv, dtype=np.int64)
    cdef const int64_t[::1] a_du = np.ascontiguousarray(du, dtype=np.int64)
    cdef const int64_t[::1] a_dv = np.ascontiguousarray(dv, dtype=np.int64)
    cdef const double[::1] tt = np.ascontiguousarray(temps, dtype=np.float64)
    cdef Py_ssize_t S = X.shape[0], n = X.shape[1], d = X.shape[2]
    cdef Py_ssize_t mn = a_nu.shape[0], md = a_du.shape[0]
    cdef Py_ssize_t nt = tt.shape[0]
    cdef long n_iters = iters
    cdef int c_rule = rule
    cdef double a0 = alpha0, g2tol = gtol * gtol
    f_out = np.full(S, np.nan)
    st_out = np.zeros(S, dtype=np.int64)
    cdef double[::1] f_last = f_out
    cdef int64_t[::1] status = st_out
    cdef Py_ssize_t s, ti, it, h, i, nd = n * d
    cdef double T, f, ft, gn2, alpha, a, step
    cdef bint alive, accepted
    cdef double* grad = <double*> malloc(nd * sizeof(double))
    cdef double* trial = <double*> malloc(nd * sizeof(double))
    cdef double* buf_n = <double*> malloc((mn + 1) * sizeof(double))
    cdef double* buf_d = <double*> malloc((md + 1) * sizeof(double))
    cdef double* x
    if grad == NULL or trial == NULL or buf_n == NULL or buf_d == NULL:
        free(grad); free(trial); free(buf_n); free(buf_d)
        raise MemoryError()
    try:
        with nogil:
            for s in range(S):
                x = &X[s, 0, 0]
                _normalize(x, n, d, &a_du[0], &a_dv[0], md)
                alive = True
                alpha = a0
                for ti in range(nt):
                    if not alive:
                        break
                    T = tt[ti]
                    status[s] = 0
                    for it in range(n_iters):
                        f = _smooth(x, n, d, &a_nu[0], &a_nv[0], mn, &a_du[0], &a_dv[0], md,
                                    T, grad, buf_n, buf_d)
                        gn2 = 0.0
                        for i in range(nd):
                            gn2 += grad[i] * grad[i]
                        if not (isfinite(f) and isfinite(gn2)):
                            status[s] = 2
                            alive = False
                            f_last[s] = f
                            break
                        f_last[s] = f
                        if gn2 <= g2tol:
                            break
                        if c_rule == 0:
                            a = alpha
                            accepted = False
                            for h in range(50):
                                for i in range(nd):
                                    trial[i] = x[i] - a * grad[i]
                                ft = _smooth(trial, n, d, &a_nu[0], &a_nv[0], mn, &a_du[0], &a_dv[0], md,
                                             T, NULL, buf_n, buf_d)
                                if ft <= f - 1e-4 * a * gn2:
                                    accepted = True
                                    break
                                a *= 0.5
                            if not accepted:
                                status[s] = 1
                                break
                            alpha = 2.0 * a if 2.0 * a < 1.0 else 1.0
                            for i in range(nd):
                                x[i] = trial[i]
                            _normalize(x, n, d, &a_du[0], &a_dv[0], md)
                            f_last[s] = ft
                        else:
                            step = (a0 * T) / (sqrt(gn2) if gn2 > 1.0 else 1.0)
                            for i in range(nd):
                                x[i] -= step * grad[i]
                            _normalize(x, n, d, &a_du[0], &a_dv[0], md)
    finally:
        free(grad); free(trial); free(buf_n); free(buf_d)
    return np.asarray(X), f_out, st_out


# -- exact colorings -----------------------------------------------------------------------------


cdef class _Circular:
    cdef int n, p, q, inter, norder
    cdef int64_t[::1] indptr
    cdef int64_t[::1] indices
    cdef int64_t[::1] order
    cdef uint64_t[::1] dom
    cdef uint64_t[::1] forb
    cdef int64_t[::1] color
    cdef int64_t[::1] stack_w
    cdef uint64_t[::1] stack_d
    cdef Py_ssize_t top

    cdef bint rec(self, int i, int used) noexcept nogil:
        cdef int v, w, c, k
        cdef uint64_t avail, nd
        cdef Py_ssize_t base
        cdef bint ok
        if i == self.norder:
            return True
        v = <int> self.order[i]
        avail = self.dom[v]
        if i == 0:
            avail &= 1
        if self.inter and used + 1 < 64:
            avail &= ((<uint64_t> 1) << (used + 1)) - 1
        while avail:
            c = 0
            while not (avail >> c) & 1:
                c += 1
            avail &= avail - 1
            base = self.top
            ok = True
            for k in range(self.indptr[v], self.indptr[v + 1]):
                w = <int> self.indices[k]
                if self.color[w] < 0:
                    nd = self.dom[w] & ~self.forb[c]
                    if nd != self.dom[w]:
                        self.stack_w[self.top] = w
                        self.stack_d[self.top] = self.dom[w]
                        self.top += 1
                        self.dom[w] = nd
                        if nd == 0:
                            ok = False
                            break
            if ok:
                self.color[v] = c
                if self.rec(i + 1, used if used > c + 1 else c + 1):
                    return True
                self.color[v] = -1
            while self.top > base:
                self.top -= 1
                self.dom[self.stack_w[self.top]] = self.stack_d[self.top]
        return False


def circular_search(n, indptr, indices, order, p, q, interchangeable):
    if p > 63:
        return _purepy.circular_search(n, indptr, indices, order, p, q, interchangeable)
    cdef _Circular st = _Circular()
    cdef int a, b, dab
    cdef uint64_t mask
    st.n, st.p, st.q, st.inter = n, p, q, bool(interchangeable)
    st.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    st.indices = np.ascontiguousarray(indices, dtype=np.int64)
    st.order = np.ascontiguousarray(list(order), dtype=np.int64)
    st.norder = st.order.shape[0]
    if st.norder == 0:
        return [-1] * n
    full = (1 << p) - 1
    st.dom = np.full(n, full, dtype=np.uint64)
    forb = np.zeros(p, dtype=np.uint64)
    for a in range(p):
        mask = 0
        for b in range(p):
            dab = abs(a - b)
            if min(dab, p - dab) < q:
                mask |= (<uint64_t> 1) << b
        forb[a] = mask
    st.forb = forb
    st.color = np.full(n, -1, dtype=np.int64)
    st.stack_w = np.zeros(len(st.indices) + 1, dtype=np.int64)
    st.stack_d = np.zeros(len(st.indices) + 1, dtype=np.uint64)
    st.top = 0
    if st.rec(0, 0):
        return [int(c) for c in st.color]
    return None


cdef class _Bandwidth:
    cdef int n, k
    cdef int64_t[::1] indptr
    cdef int64_t[::1] indices
    cdef int64_t[:, ::1] dist
    cdef int64_t[::1] pos
    cdef int64_t[::1] layout
    cdef int64_t[::1] unplaced
    cdef int64_t[:, ::1] deadline
    cdef int64_t[::1] cnt
    cdef int nplaced
    cdef set failed

    cdef bint schedulable(self, int p, int level) noexcept nogil:
        cdef int w, t, acc = 0
        cdef int n = self.n
        cdef int64_t d
        for t in range(n):
            self.cnt[t] = 0
        for w in range(n):
            if self.pos[w] < 0:
                d = self.deadline[level, w]
                if d < p:
                    return False
                self.cnt[d if d < n - 1 else n - 1] += 1
        for t in range(p, n):
            acc += <int> self.cnt[t]
            if acc > t - p + 1:
                return False
        return True

    cdef object key(self, int p, object mask):
        cdef int i, u
        act = []
        for i in range(self.nplaced):
            u = <int> self.layout[i]
            if self.unplaced[u] > 0:
                act.append((u, p - self.pos[u]))
        return (mask, tuple(act))

    cdef bint rec(self, int p, object mask) except -1:
        cdef int e, v, w, n = self.n
        cdef int64_t c
        if p == n:
            return True
        key = self.key(p, mask)
        if key in self.failed:
            return False
        for v in range(n):
            if self.pos[v] >= 0:
                continue
            self.pos[v] = p
            self.layout[self.nplaced] = v
            self.nplaced += 1
            for e in range(self.indptr[v], self.indptr[v + 1]):
                self.unplaced[self.indices[e]] -= 1
            for w in range(n):
                self.deadline[p + 1, w] = self.deadline[p, w]
                if self.pos[w] < 0 and self.dist[v, w] >= 0:
                    c = p + self.k * self.dist[v, w]
                    if c < self.deadline[p + 1, w]:
                        self.deadline[p + 1, w] = c
            if self.schedulable(p + 1, p + 1) and self.rec(p + 1, mask | (1 << v)):
                return True
            for e in range(self.indptr[v], self.indptr[v + 1]):
                self.unplaced[self.indices[e]] += 1
            self.nplaced -= 1
            self.pos[v] = -1
        self.failed.add(key)
        return False


def bandwidth_search(n, indptr, indices, k):
    cdef _Bandwidth st = _Bandwidth()
    st.n, st.k = n, k
    st.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    st.indices = np.ascontiguousarray(indices, dtype=np.int64)
    nbrs = [np.asarray(st.indices)[st.indptr[v]:st.indptr[v + 1]].tolist() for v in range(n)]
    dist = np.array(_purepy._all_distances(n, nbrs, -1), dtype=np.int64).reshape(n, n)
    st.dist = dist
    st.pos = np.full(n, -1, dtype=np.int64)
    st.layout = np.zeros(max(n, 1), dtype=np.int64)
    st.unplaced = np.diff(np.asarray(st.indptr)).astype(np.int64)
    st.deadline = np.full((n + 1, max(n, 1)), 1 << 30, dtype=np.int64)
    st.cnt = np.zeros(max(n, 1), dtype=np.int64)
    st.nplaced = 0
    st.failed = set()
    if st.rec(0, 0):
        return [int(v) for v in np.asarray(st.layout)[:n]]
    return None
