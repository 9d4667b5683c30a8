"""Pure-Python/numpy implementations of the hot kernels.

Each function here has a twin with the same signature and semantics in the
compiled ``_speedups`` module; :mod:`planewidth.kernels` picks one at
import. Keep the two in step: the tests run both against each other.
"""

from __future__ import annotations

import numpy as np

# Added under the log so coincident non-constraining pairs stay finite.
TINY = 1e-24
ARMIJO, FIXED = 0, 1
OK, STALLED, NONFINITE = 0, 1, 2
_PAIR_CHUNK = 1 << 21


# -- exact distance extremes -----------------------------------------------------------


def pair_extremes(X, eu, ev):
    """Exact extremes of edge lengths and of all pairwise distances.

    Returns ``(max_edge, i_max_edge, min_edge, i_min_edge, max_pair, mp_u,
    mp_v, min_pair, np_u, np_v)``. Ties resolve to the first occurrence in
    scan order (edges in input order, pairs row-major with ``u < v``).
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    n = X.shape[0]
    if len(eu):
        diff = X[eu] - X[ev]
        de = np.sqrt(np.sum(diff * diff, axis=1))
        i_max, i_min = int(np.argmax(de)), int(np.argmin(de))
        max_e, min_e = float(de[i_max]), float(de[i_min])
    else:
        i_max = i_min = -1
        max_e, min_e = -np.inf, np.inf

    best_max, best_min = -np.inf, np.inf
    mp = (-1, -1)
    np_ = (-1, -1)
    u0 = 0
    while u0 < n - 1:
        # rows u0..u1-1, keeping the pair count per chunk bounded
        u1, count = u0, 0
        while u1 < n - 1 and (count == 0 or count + (n - 1 - u1) <= _PAIR_CHUNK):
            count += n - 1 - u1
            u1 += 1
        rows = np.arange(u0, u1)
        lens = n - 1 - rows
        uu = np.repeat(rows, lens)
        starts = np.cumsum(lens) - lens
        vv = np.arange(count) - np.repeat(starts, lens) + uu + 1
        diff = X[uu] - X[vv]
        d = np.sqrt(np.sum(diff * diff, axis=1))
        a, b = int(np.argmax(d)), int(np.argmin(d))
        if d[a] > best_max:
            best_max, mp = float(d[a]), (int(uu[a]), int(vv[a]))
        if d[b] < best_min:
            best_min, np_ = float(d[b]), (int(uu[b]), int(vv[b]))
        u0 = u1
    return (max_e, i_max, min_e, i_min, best_max, mp[0], mp[1], best_min, np_[0], np_[1])


# -- smoothed minimax descent ---------------------------------------------------------


def _smooth(X, nu, nv, du, dv, T, want_grad):
    """Batched log-sum-exp surrogate of log(max num) - log(min den).

    ``X`` has shape (S, n, d). Returns f of shape (S,) and, if requested,
    the gradient with the shape of ``X``.
    """
    dn = X[:, nu, :] - X[:, nv, :]
    sqn = np.sum(dn * dn, axis=2) + TINY
    ln = 0.5 * np.log(sqn)
    mx = np.max(ln, axis=1, keepdims=True)
    wn = np.exp((ln - mx) / T)
    sn = np.sum(wn, axis=1)
    dd = X[:, du, :] - X[:, dv, :]
    sqd = np.sum(dd * dd, axis=2) + TINY
    ld = 0.5 * np.log(sqd)
    mn = np.min(ld, axis=1, keepdims=True)
    wd = np.exp((mn - ld) / T)
    sd = np.sum(wd, axis=1)
    f = mx[:, 0] + T * np.log(sn) - mn[:, 0] + T * np.log(sd)
    if not want_grad:
        return f, None
    cn = (wn / sn[:, None]) / sqn
    cd = -(wd / sd[:, None]) / sqd
    g = np.zeros_like(X)
    tn = cn[:, :, None] * dn
    td = cd[:, :, None] * dd
    for s in range(X.shape[0]):
        np.add.at(g[s], nu, tn[s])
        np.subtract.at(g[s], nv, tn[s])
        np.add.at(g[s], du, td[s])
        np.subtract.at(g[s], dv, td[s])
    return f, g


def _normalize(X, du, dv):
    X = X - X.mean(axis=1, keepdims=True)
    dd = X[:, du, :] - X[:, dv, :]
    mind = np.sqrt(np.min(np.sum(dd * dd, axis=2), axis=1))
    ok = mind > 0
    X[ok] /= mind[ok, None, None]
    return X


def descend(X0, nu, nv, du, dv, temps, iters, rule, alpha0, gtol=1e-15):
    """Annealed descent of the smoothed ratio, independently per start.

    ``X0`` has shape (S, n, d); ``nu, nv`` index the numerator pairs and
    ``du, dv`` the denominator pairs. For every temperature in ``temps``
    the kernel runs up to ``iters`` steps (Armijo backtracking or a fixed
    temperature-proportional step). After each step the configuration is
    centered and rescaled so the smallest denominator distance is 1. A
    stage ends early once the gradient norm drops to ``gtol``.

    Returns ``(X, f, status)`` with ``status`` OK, STALLED (the last stage
    ended on a failed line search) or NONFINITE.
    """
    X = _normalize(np.array(X0, dtype=np.float64), du, dv)
    S = X.shape[0]
    f_last = np.full(S, np.nan)
    status = np.zeros(S, dtype=np.int64)
    alive = np.ones(S, dtype=bool)
    alpha = np.full(S, float(alpha0))
    for T in temps:
        active = alive.copy()
        status[alive] = OK
        for _ in range(iters):
            idx = np.flatnonzero(active)
            if idx.size == 0:
                break
            Xa = X[idx]
            f, g = _smooth(Xa, nu, nv, du, dv, T, True)
            gn2 = np.sum(g * g, axis=(1, 2))
            bad = ~(np.isfinite(f) & np.isfinite(gn2))
            if bad.any():
                status[idx[bad]] = NONFINITE
                alive[idx[bad]] = False
                active[idx[bad]] = False
            f_last[idx] = f
            flat = (gn2 <= gtol * gtol) & ~bad
            active[idx[flat]] = False
            go = ~bad & ~flat
            idx, Xa, f, g, gn2 = idx[go], Xa[go], f[go], g[go], gn2[go]
            if idx.size == 0:
                continue
            if rule == ARMIJO:
                a = alpha[idx].copy()
                accepted = np.zeros(idx.size, dtype=bool)
                Xn = Xa.copy()
                fn_acc = f.copy()
                for _h in range(50):
                    todo = np.flatnonzero(~accepted)
                    if todo.size == 0:
                        break
                    trial = Xa[todo] - a[todo, None, None] * g[todo]
                    ft, _ = _smooth(trial, nu, nv, du, dv, T, False)
                    ok = ft <= f[todo] - 1e-4 * a[todo] * gn2[todo]
                    hit = todo[ok]
                    Xn[hit] = trial[ok]
                    fn_acc[hit] = ft[ok]
                    accepted[hit] = True
                    a[todo[~ok]] *= 0.5
                stalled = ~accepted
                status[idx[stalled]] = STALLED
                active[idx[stalled]] = False
                alpha[idx[accepted]] = np.minimum(2.0 * a[accepted], 1.0)
                keep = idx[accepted]
                X[keep] = _normalize(Xn[accepted], du, dv)
                f_last[keep] = fn_acc[accepted]
            else:
                step = (alpha0 * T) / np.maximum(1.0, np.sqrt(gn2))
                X[idx] = _normalize(Xa - step[:, None, None] * g, du, dv)
    return X, f_last, status


# -- exact colorings --------------------------------------------------------------------


def circular_search(n, indptr, indices, order, p, q, interchangeable):
    """First (p, q)-coloring in the lexicographic order induced by ``order``.

    Colors are integers in ``[0, p)``; adjacent vertices need circular
    distance at least ``q``. The first vertex of ``order`` is pinned to 0
    (rotations preserve validity). With ``interchangeable`` (only sensible
    for q == 1) a vertex may open at most one new color. Returns a list of
    colors indexed by vertex, or None when no coloring exists.
    """
    full = (1 << p) - 1
    forb = []
    for a in range(p):
        mask = 0
        for b in range(p):
            dab = abs(a - b)
            if min(dab, p - dab) < q:
                mask |= 1 << b
        forb.append(mask)
    nbrs = [indices[indptr[v]:indptr[v + 1]].tolist() for v in range(n)]
    dom = [full] * n
    color = [-1] * n
    order = list(order)
    if not order:
        return color

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        avail = dom[v]
        if i == 0:
            avail &= 1
        if interchangeable:
            avail &= (1 << (used + 1)) - 1
        while avail:
            a = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            saved = []
            ok = True
            for w in nbrs[v]:
                if color[w] < 0:
                    nd = dom[w] & ~forb[a]
                    if nd != dom[w]:
                        saved.append((w, dom[w]))
                        dom[w] = nd
                        if nd == 0:
                            ok = False
                            break
            if ok:
                color[v] = a
                if rec(i + 1, max(used, a + 1)):
                    return True
                color[v] = -1
            for w, d in saved:
                dom[w] = d
        return False

    if rec(0, 0):
        return color
    return None


def _all_distances(n, nbrs, inf):
    out = []
    for s in range(n):
        d = [inf] * n
        d[s] = 0
        queue = [s]
        for u in queue:
            for w in nbrs[u]:
                if d[w] == inf:
                    d[w] = d[u] + 1
                    queue.append(w)
        out.append(d)
    return out


def bandwidth_search(n, indptr, indices, k):
    """Lexicographically first layout of bandwidth at most ``k``.

    Builds the layout left to right. Every placed vertex ``u`` imposes the
    deadline ``pos[u] + k * dist(u, w)`` on each unplaced ``w``; a partial
    layout is pruned when these deadlines cannot all be met (earliest
    deadline first). Failed states are memoized on the placed set plus the
    offsets of placed vertices that still have unplaced neighbours, which
    determine all deadlines. Returns the vertex sequence, or None.
    """
    inf = 1 << 30
    nbrs = [indices[indptr[v]:indptr[v + 1]].tolist() for v in range(n)]
    dist = _all_distances(n, nbrs, inf)
    pos = [-1] * n
    layout: list[int] = []
    unplaced_deg = [len(nb) for nb in nbrs]
    deadline = [inf] * n
    failed: set = set()

    def schedulable(p: int) -> bool:
        count = [0] * n
        for w in range(n):
            if pos[w] < 0:
                if deadline[w] < p:
                    return False
                count[min(deadline[w], n - 1)] += 1
        acc = 0
        for t in range(p, n):
            acc += count[t]
            if acc > t - p + 1:
                return False
        return True

    def rec(p: int, mask: int) -> bool:
        if p == n:
            return True
        key = (mask, tuple((u, p - pos[u]) for u in layout if unplaced_deg[u] > 0))
        if key in failed:
            return False
        for v in range(n):
            if pos[v] >= 0:
                continue
            pos[v] = p
            layout.append(v)
            for w in nbrs[v]:
                unplaced_deg[w] -= 1
            saved = deadline[:]
            dv = dist[v]
            for w in range(n):
                if pos[w] < 0 and dv[w] < inf and p + k * dv[w] < deadline[w]:
                    deadline[w] = p + k * dv[w]
            if schedulable(p + 1) and rec(p + 1, mask | (1 << v)):
                return True
            deadline[:] = saved
            for w in nbrs[v]:
                unplaced_deg[w] += 1
            layout.pop()
            pos[v] = -1
        failed.add(key)
        return False

    if rec(0, 0):
        return layout
    return None
