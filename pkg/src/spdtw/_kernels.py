"""Compiled kernels: attribute algebra, span tables, insertion and move scans.

Attribute vectors are float64[8] in the order
``(W, C_E, C_L, C_H, D, E, L, ok)`` where ``ok`` is 1.0 while every
concatenation step so far is time-window feasible.  All kernels treat the
instance as parallel arrays; none of them draws random numbers, so search
determinism is owned entirely by the Python layer.
"""

from __future__ import annotations

import numpy as np
from numba import njit

FEAS_EPS = 1e-9

# Field indices of an attribute vector.
A_W, A_CE, A_CL, A_CH, A_D, A_E, A_L, A_OK = range(8)

# Move kinds as used in scan descriptors.
K_TWO_OPT = 0
K_TWO_OPT_STAR = 1
K_OR_OPT = 2
K_SWAP = 3


@njit(inline="always")
def _cat(aw, ace, acl, ach, ad, ae, al, aok,
         bw, bce, bcl, bch, bd, be, bl, bok,
         dij, tij):
    """Concatenate two attribute tuples across the arc (dist, time)."""
    w = aw + bw + dij
    ce = ace + bce
    cl = acl + bcl
    ch = max(ach + bce, acl + bch)
    delta = ad + tij
    dwt = be - delta - al
    if dwt < 0.0:
        dwt = 0.0
    dtw = ae + ad + tij - bl
    d = ad + bd + tij + dwt
    e = max(be - delta, ae) - dwt
    l = min(bl - delta, al)
    ok = 1.0 if (aok == 1.0 and bok == 1.0 and dtw <= FEAS_EPS) else 0.0
    return w, ce, cl, ch, d, e, l, ok


@njit(inline="always")
def _get(tab, p, q):
    return (tab[p, q, 0], tab[p, q, 1], tab[p, q, 2], tab[p, q, 3],
            tab[p, q, 4], tab[p, q, 5], tab[p, q, 6], tab[p, q, 7])


@njit(inline="always")
def _leaf(v, delivery, pickup, tws, twe, serv):
    return (0.0, delivery[v], pickup[v], max(delivery[v], pickup[v]),
            serv[v], tws[v], twe[v], 1.0)


@njit(cache=True)
def concat_vec(a, b, dij, tij, out):
    """Array-interface concatenation used by the Python-level API."""
    r = _cat(a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7],
             b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7], dij, tij)
    for k in range(8):
        out[k] = r[k]


@njit(cache=True)
def build_tables(route, dist, time, delivery, pickup, tws, twe, serv):
    """Forward and reversed attribute tables over all contiguous spans.

    ``fwd[p, q]`` describes route[p..q] in visit order; ``bwd[p, q]``
    describes the same span traversed from q down to p, with arcs looked up
    in the reversed direction.  Each entry costs one concatenation.
    """
    n = route.shape[0]
    fwd = np.empty((n, n, 8), dtype=np.float64)
    bwd = np.empty((n, n, 8), dtype=np.float64)
    for p in range(n):
        lf = _leaf(route[p], delivery, pickup, tws, twe, serv)
        for k in range(8):
            fwd[p, p, k] = lf[k]
            bwd[p, p, k] = lf[k]
    for q in range(1, n):
        lq = _leaf(route[q], delivery, pickup, tws, twe, serv)
        for p in range(q - 1, -1, -1):
            a = _get(fwd, p, q - 1)
            r = _cat(a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7],
                     lq[0], lq[1], lq[2], lq[3], lq[4], lq[5], lq[6], lq[7],
                     dist[route[q - 1], route[q]], time[route[q - 1], route[q]])
            for k in range(8):
                fwd[p, q, k] = r[k]
    for p in range(n - 2, -1, -1):
        lp = _leaf(route[p], delivery, pickup, tws, twe, serv)
        for q in range(p + 1, n):
            b = _get(bwd, p + 1, q)
            r = _cat(b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7],
                     lp[0], lp[1], lp[2], lp[3], lp[4], lp[5], lp[6], lp[7],
                     dist[route[p + 1], route[p]], time[route[p + 1], route[p]])
            for k in range(8):
                bwd[p, q, k] = r[k]
    return fwd, bwd


@njit(cache=True)
def best_insertion(route, fwd, v, lam, dist, time,
                   delivery, pickup, tws, twe, serv, capacity):
    """Best feasible slot for customer ``v`` in one route.

    Minimizes ``added_distance + lam * peak_load_after`` (``lam = 0`` gives
    plain cheapest insertion); ties go to the lowest position.  Returns
    ``(key, position, added_distance, peak_load_after)`` with position -1
    when no slot is feasible.
    """
    n = route.shape[0]
    lv = _leaf(v, delivery, pickup, tws, twe, serv)
    w_old = fwd[0, n - 1, A_W]
    best_key = np.inf
    best_pos = -1
    best_dw = np.inf
    best_ch = np.inf
    for k in range(n - 1):
        a = _get(fwd, 0, k)
        m = _cat(a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7],
                 lv[0], lv[1], lv[2], lv[3], lv[4], lv[5], lv[6], lv[7],
                 dist[route[k], v], time[route[k], v])
        if m[A_OK] != 1.0:
            continue
        b = _get(fwd, k + 1, n - 1)
        f = _cat(m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7],
                 b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7],
                 dist[v, route[k + 1]], time[v, route[k + 1]])
        if f[A_OK] != 1.0 or f[A_CH] > capacity + FEAS_EPS:
            continue
        dw = f[A_W] - w_old
        key = dw + lam * f[A_CH]
        if key < best_key:
            best_key = key
            best_pos = k
            best_dw = dw
            best_ch = f[A_CH]
    return best_key, best_pos, best_dw, best_ch


@njit(cache=True)
def scan_best_move(routes, fwds, bwds, dist, time, capacity, u1, u2):
    """Best feasible move over the four operators, in enumeration order.

    Returns ``(delta, desc)`` where ``desc`` is
    ``[kind, r1, r2, a, b, c, d]``; kind -1 when no feasible move exists.
    Ties keep the earliest move in the fixed enumeration order because the
    comparison is strict.
    """
    K = len(routes)
    best_delta = np.inf
    desc = np.full(7, -1, dtype=np.int64)

    # two_opt: invert two consecutive customers within one route.
    for r in range(K):
        rt = routes[r]
        n = rt.shape[0]
        fwd = fwds[r]
        bwd = bwds[r]
        w_old = fwd[0, n - 1, A_W]
        for t in range(1, n - 2):
            a = _get(fwd, 0, t - 1)
            m = _get(bwd, t, t + 1)
            c1 = _cat(a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7],
                      m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7],
                      dist[rt[t - 1], rt[t + 1]], time[rt[t - 1], rt[t + 1]])
            if c1[A_OK] != 1.0:
                continue
            b = _get(fwd, t + 2, n - 1)
            f = _cat(c1[0], c1[1], c1[2], c1[3], c1[4], c1[5], c1[6], c1[7],
                     b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7],
                     dist[rt[t], rt[t + 2]], time[rt[t], rt[t + 2]])
            if f[A_OK] != 1.0 or f[A_CH] > capacity + FEAS_EPS:
                continue
            delta = u2 * (f[A_W] - w_old)
            if delta < best_delta:
                best_delta = delta
                desc[0] = K_TWO_OPT
                desc[1] = r
                desc[2] = -1
                desc[3] = t
                desc[4] = 0
                desc[5] = 0
                desc[6] = 0

    # two_opt_star: swap tails between two routes.
    for ra in range(K):
        na = routes[ra].shape[0]
        rta = routes[ra]
        fa = fwds[ra]
        wa = fa[0, na - 1, A_W]
        for rb in range(ra + 1, K):
            nb = routes[rb].shape[0]
            rtb = routes[rb]
            fb = fwds[rb]
            wb = fb[0, nb - 1, A_W]
            for pa in range(na - 1):
                for pb in range(nb - 1):
                    if pa == 0 and pb == 0:
                        continue        # swaps whole routes: same solution
                    if pa == na - 2 and pb == nb - 2:
                        continue        # swaps end depots: same solution
                    cust_a = pa + (nb - 2 - pb)
                    cust_b = pb + (na - 2 - pa)
                    x = _get(fa, 0, pa)
                    y = _get(fb, pb + 1, nb - 1)
                    na_ = _cat(x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7],
                               y[0], y[1], y[2], y[3], y[4], y[5], y[6], y[7],
                               dist[rta[pa], rtb[pb + 1]],
                               time[rta[pa], rtb[pb + 1]])
                    if cust_a > 0 and (na_[A_OK] != 1.0
                                       or na_[A_CH] > capacity + FEAS_EPS):
                        continue
                    x = _get(fb, 0, pb)
                    y = _get(fa, pa + 1, na - 1)
                    nb_ = _cat(x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7],
                               y[0], y[1], y[2], y[3], y[4], y[5], y[6], y[7],
                               dist[rtb[pb], rta[pa + 1]],
                               time[rtb[pb], rta[pa + 1]])
                    if cust_b > 0 and (nb_[A_OK] != 1.0
                                       or nb_[A_CH] > capacity + FEAS_EPS):
                        continue
                    removed = (1 if cust_a == 0 else 0) + (1 if cust_b == 0 else 0)
                    delta = (u2 * (na_[A_W] + nb_[A_W] - wa - wb)
                             - u1 * removed)
                    if delta < best_delta:
                        best_delta = delta
                        desc[0] = K_TWO_OPT_STAR
                        desc[1] = ra
                        desc[2] = rb
                        desc[3] = pa
                        desc[4] = pb
                        desc[5] = 0
                        desc[6] = 0

    # or_opt: relocate a span of 1 or 2 customers, orientation preserved.
    for rs in range(K):
        ns = routes[rs].shape[0]
        rts = routes[rs]
        fs = fwds[rs]
        ws = fs[0, ns - 1, A_W]
        for rt_ in range(K):
            nt = routes[rt_].shape[0]
            rtt = routes[rt_]
            ft = fwds[rt_]
            wt = ft[0, nt - 1, A_W]
            for i in range(1, ns - 1):
                for seg_len in range(1, 3):
                    j = i + seg_len - 1
                    if j > ns - 2:
                        continue
                    seg = _get(fs, i, j)
                    if rt_ == rs:
                        for t in range(ns - 1):
                            if i - 1 <= t <= j:
                                continue    # reinserting in place is a no-op
                            if t < i - 1:
                                a = _get(fs, 0, t)
                                c1 = _cat(a[0], a[1], a[2], a[3], a[4], a[5],
                                          a[6], a[7],
                                          seg[0], seg[1], seg[2], seg[3],
                                          seg[4], seg[5], seg[6], seg[7],
                                          dist[rts[t], rts[i]],
                                          time[rts[t], rts[i]])
                                if c1[A_OK] != 1.0:
                                    continue
                                m = _get(fs, t + 1, i - 1)
                                c2 = _cat(c1[0], c1[1], c1[2], c1[3], c1[4],
                                          c1[5], c1[6], c1[7],
                                          m[0], m[1], m[2], m[3], m[4], m[5],
                                          m[6], m[7],
                                          dist[rts[j], rts[t + 1]],
                                          time[rts[j], rts[t + 1]])
                                if c2[A_OK] != 1.0:
                                    continue
                                b = _get(fs, j + 1, ns - 1)
                                f = _cat(c2[0], c2[1], c2[2], c2[3], c2[4],
                                         c2[5], c2[6], c2[7],
                                         b[0], b[1], b[2], b[3], b[4], b[5],
                                         b[6], b[7],
                                         dist[rts[i - 1], rts[j + 1]],
                                         time[rts[i - 1], rts[j + 1]])
                            else:
                                a = _get(fs, 0, i - 1)
                                m = _get(fs, j + 1, t)
                                c1 = _cat(a[0], a[1], a[2], a[3], a[4], a[5],
                                          a[6], a[7],
                                          m[0], m[1], m[2], m[3], m[4], m[5],
                                          m[6], m[7],
                                          dist[rts[i - 1], rts[j + 1]],
                                          time[rts[i - 1], rts[j + 1]])
                                if c1[A_OK] != 1.0:
                                    continue
                                c2 = _cat(c1[0], c1[1], c1[2], c1[3], c1[4],
                                          c1[5], c1[6], c1[7],
                                          seg[0], seg[1], seg[2], seg[3],
                                          seg[4], seg[5], seg[6], seg[7],
                                          dist[rts[t], rts[i]],
                                          time[rts[t], rts[i]])
                                if c2[A_OK] != 1.0:
                                    continue
                                b = _get(fs, t + 1, ns - 1)
                                f = _cat(c2[0], c2[1], c2[2], c2[3], c2[4],
                                         c2[5], c2[6], c2[7],
                                         b[0], b[1], b[2], b[3], b[4], b[5],
                                         b[6], b[7],
                                         dist[rts[j], rts[t + 1]],
                                         time[rts[j], rts[t + 1]])
                            if f[A_OK] != 1.0 or f[A_CH] > capacity + FEAS_EPS:
                                continue
                            delta = u2 * (f[A_W] - ws)
                            if delta < best_delta:
                                best_delta = delta
                                desc[0] = K_OR_OPT
                                desc[1] = rs
                                desc[2] = rt_
                                desc[3] = i
                                desc[4] = seg_len
                                desc[5] = t
                                desc[6] = 0
                    else:
                        # source route with the span cut out
                        a = _get(fs, 0, i - 1)
                        b = _get(fs, j + 1, ns - 1)
                        s_ = _cat(a[0], a[1], a[2], a[3], a[4], a[5], a[6],
                                  a[7],
                                  b[0], b[1], b[2], b[3], b[4], b[5], b[6],
                                  b[7],
                                  dist[rts[i - 1], rts[j + 1]],
                                  time[rts[i - 1], rts[j + 1]])
                        left = ns - 2 - seg_len
                        if left > 0 and (s_[A_OK] != 1.0
                                         or s_[A_CH] > capacity + FEAS_EPS):
                            continue
                        for t in range(nt - 1):
                            a = _get(ft, 0, t)
                            c1 = _cat(a[0], a[1], a[2], a[3], a[4], a[5],
                                      a[6], a[7],
                                      seg[0], seg[1], seg[2], seg[3], seg[4],
                                      seg[5], seg[6], seg[7],
                                      dist[rtt[t], rts[i]],
                                      time[rtt[t], rts[i]])
                            if c1[A_OK] != 1.0:
                                continue
                            b = _get(ft, t + 1, nt - 1)
                            f = _cat(c1[0], c1[1], c1[2], c1[3], c1[4], c1[5],
                                     c1[6], c1[7],
                                     b[0], b[1], b[2], b[3], b[4], b[5], b[6],
                                     b[7],
                                     dist[rts[j], rtt[t + 1]],
                                     time[rts[j], rtt[t + 1]])
                            if f[A_OK] != 1.0 or f[A_CH] > capacity + FEAS_EPS:
                                continue
                            delta = (u2 * (s_[A_W] + f[A_W] - ws - wt)
                                     - (u1 if left == 0 else 0.0))
                            if delta < best_delta:
                                best_delta = delta
                                desc[0] = K_OR_OPT
                                desc[1] = rs
                                desc[2] = rt_
                                desc[3] = i
                                desc[4] = seg_len
                                desc[5] = t
                                desc[6] = 0

    # swap: exchange spans of 1 or 2 customers.
    for ra in range(K):
        na = routes[ra].shape[0]
        rta = routes[ra]
        fa = fwds[ra]
        wa = fa[0, na - 1, A_W]
        for rb in range(ra, K):
            nb = routes[rb].shape[0]
            rtb = routes[rb]
            fb = fwds[rb]
            wb = fb[0, nb - 1, A_W]
            for i1 in range(1, na - 1):
                for l1 in range(1, 3):
                    j1 = i1 + l1 - 1
                    if j1 > na - 2:
                        continue
                    s1 = _get(fa, i1, j1)
                    i2_lo = j1 + 1 if rb == ra else 1
                    for i2 in range(i2_lo, nb - 1):
                        for l2 in range(1, 3):
                            j2 = i2 + l2 - 1
                            if j2 > nb - 2:
                                continue
                            s2 = _get(fb, i2, j2)
                            if rb == ra:
                                a = _get(fa, 0, i1 - 1)
                                c1 = _cat(a[0], a[1], a[2], a[3], a[4], a[5],
                                          a[6], a[7],
                                          s2[0], s2[1], s2[2], s2[3], s2[4],
                                          s2[5], s2[6], s2[7],
                                          dist[rta[i1 - 1], rta[i2]],
                                          time[rta[i1 - 1], rta[i2]])
                                if c1[A_OK] != 1.0:
                                    continue
                                if i2 == j1 + 1:
                                    c2 = _cat(c1[0], c1[1], c1[2], c1[3],
                                              c1[4], c1[5], c1[6], c1[7],
                                              s1[0], s1[1], s1[2], s1[3],
                                              s1[4], s1[5], s1[6], s1[7],
                                              dist[rta[j2], rta[i1]],
                                              time[rta[j2], rta[i1]])
                                else:
                                    m = _get(fa, j1 + 1, i2 - 1)
                                    cm = _cat(c1[0], c1[1], c1[2], c1[3],
                                              c1[4], c1[5], c1[6], c1[7],
                                              m[0], m[1], m[2], m[3], m[4],
                                              m[5], m[6], m[7],
                                              dist[rta[j2], rta[j1 + 1]],
                                              time[rta[j2], rta[j1 + 1]])
                                    if cm[A_OK] != 1.0:
                                        continue
                                    c2 = _cat(cm[0], cm[1], cm[2], cm[3],
                                              cm[4], cm[5], cm[6], cm[7],
                                              s1[0], s1[1], s1[2], s1[3],
                                              s1[4], s1[5], s1[6], s1[7],
                                              dist[rta[i2 - 1], rta[i1]],
                                              time[rta[i2 - 1], rta[i1]])
                                if c2[A_OK] != 1.0:
                                    continue
                                b = _get(fa, j2 + 1, na - 1)
                                f = _cat(c2[0], c2[1], c2[2], c2[3], c2[4],
                                         c2[5], c2[6], c2[7],
                                         b[0], b[1], b[2], b[3], b[4], b[5],
                                         b[6], b[7],
                                         dist[rta[j1], rta[j2 + 1]],
                                         time[rta[j1], rta[j2 + 1]])
                                if (f[A_OK] != 1.0
                                        or f[A_CH] > capacity + FEAS_EPS):
                                    continue
                                delta = u2 * (f[A_W] - wa)
                            else:
                                x = _get(fa, 0, i1 - 1)
                                c1 = _cat(x[0], x[1], x[2], x[3], x[4], x[5],
                                          x[6], x[7],
                                          s2[0], s2[1], s2[2], s2[3], s2[4],
                                          s2[5], s2[6], s2[7],
                                          dist[rta[i1 - 1], rtb[i2]],
                                          time[rta[i1 - 1], rtb[i2]])
                                if c1[A_OK] != 1.0:
                                    continue
                                y = _get(fa, j1 + 1, na - 1)
                                fa_ = _cat(c1[0], c1[1], c1[2], c1[3], c1[4],
                                           c1[5], c1[6], c1[7],
                                           y[0], y[1], y[2], y[3], y[4], y[5],
                                           y[6], y[7],
                                           dist[rtb[j2], rta[j1 + 1]],
                                           time[rtb[j2], rta[j1 + 1]])
                                if (fa_[A_OK] != 1.0
                                        or fa_[A_CH] > capacity + FEAS_EPS):
                                    continue
                                x = _get(fb, 0, i2 - 1)
                                c2 = _cat(x[0], x[1], x[2], x[3], x[4], x[5],
                                          x[6], x[7],
                                          s1[0], s1[1], s1[2], s1[3], s1[4],
                                          s1[5], s1[6], s1[7],
                                          dist[rtb[i2 - 1], rta[i1]],
                                          time[rtb[i2 - 1], rta[i1]])
                                if c2[A_OK] != 1.0:
                                    continue
                                y = _get(fb, j2 + 1, nb - 1)
                                fb_ = _cat(c2[0], c2[1], c2[2], c2[3], c2[4],
                                           c2[5], c2[6], c2[7],
                                           y[0], y[1], y[2], y[3], y[4], y[5],
                                           y[6], y[7],
                                           dist[rta[j1], rtb[j2 + 1]],
                                           time[rta[j1], rtb[j2 + 1]])
                                if (fb_[A_OK] != 1.0
                                        or fb_[A_CH] > capacity + FEAS_EPS):
                                    continue
                                delta = u2 * (fa_[A_W] + fb_[A_W] - wa - wb)
                            if delta < best_delta:
                                best_delta = delta
                                desc[0] = K_SWAP
                                desc[1] = ra
                                desc[2] = rb
                                desc[3] = i1
                                desc[4] = l1
                                desc[5] = i2
                                desc[6] = l2

    return best_delta, desc
