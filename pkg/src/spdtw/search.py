"""Local search: best-improvement descent plus a removal-and-reinsertion escape.

The descent repeatedly evaluates every move of the four operators through the
span tables, applies the single best strictly improving one, and rebuilds
tables only for the routes that changed.  The escape step removes a random
20-40% block of correlated customers and rebuilds the solution with regret
insertion; an escape attempt is kept only if it strictly improves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from numba.typed import List as NumbaList

from . import _kernels, construct, moves, seqeval
from .model import (Instance, InsertionImpossible, Solution, total_cost)

#: A move or an escape iteration must improve by more than this to be taken.
IMPROVE_EPS = 1e-9


@dataclass(frozen=True)
class EscapeParams:
    """Tunables of the removal-and-reinsertion escape."""

    omega1: float = 0.2
    omega2: float = 0.4
    corr_eta: float = 1.0
    corr_penalty: float = 10.0

    def __post_init__(self):
        if not 0.0 < self.omega1 < self.omega2 < 1.0:
            raise ValueError("need 0 < omega1 < omega2 < 1")
        if self.corr_eta <= 0 or self.corr_penalty <= 0:
            raise ValueError("corr_eta and corr_penalty must be positive")


def default_escape_params(inst: Instance) -> EscapeParams:
    """Escape parameters with the time rescale factor fitted to the instance.

    The rescale factor is the mean off-diagonal distance divided by the mean
    off-diagonal travel time (1 when travel time equals distance).
    """
    n = len(inst.nodes)
    eta = 1.0
    if n > 1:
        off = ~np.eye(n, dtype=bool)
        mean_time = inst.time[off].mean()
        if mean_time > 0:
            eta = float(inst.dist[off].mean() / mean_time)
    return EscapeParams(corr_eta=eta if eta > 0 else 1.0)


def correlation(inst: Instance, esc: EscapeParams, i: int, j: int) -> float:
    """How well j works as the next stop after i; lower is more correlated.

    Distance plus the rescaled unavoidable wait before j's window opens and a
    penalized overshoot past j's due time, for a direct i -> j service.
    """
    wait = max(inst.tw_start[j] - inst.time[i, j] - inst.service[i]
               - inst.tw_end[i], 0.0)
    late = max(inst.tw_start[i] + inst.service[i] + inst.time[i, j]
               - inst.tw_end[j], 0.0)
    return float(inst.dist[i, j]
                 + esc.corr_eta * (wait + esc.corr_penalty * late))


def correlation_matrix(inst: Instance, esc: EscapeParams) -> np.ndarray:
    """corr(i, j) for all customer pairs; diagonal and depot row/col are inf."""
    a = inst.tw_start
    b = inst.tw_end
    s = inst.service
    wait = np.maximum(a[None, :] - inst.time - s[:, None] - b[:, None], 0.0)
    late = np.maximum(a[:, None] + s[:, None] + inst.time - b[None, :], 0.0)
    corr = inst.dist + esc.corr_eta * (wait + esc.corr_penalty * late)
    np.fill_diagonal(corr, np.inf)
    corr[0, :] = np.inf
    corr[:, 0] = np.inf
    return corr


def enumerate_moves(s: Solution) -> Iterator[moves.Move]:
    """Every structurally distinct move of the four kinds, in a fixed order.

    The order (kind, route indices, positions) is the tie-breaking order of
    the descent: the compiled scan walks candidates identically.
    """
    lens = [len(r) for r in s.routes]
    K = len(lens)
    for r in range(K):
        for t in range(1, lens[r] - 2):
            yield moves.TwoOpt(r, t)
    for ra in range(K):
        for rb in range(ra + 1, K):
            na, nb = lens[ra], lens[rb]
            for pa in range(na - 1):
                for pb in range(nb - 1):
                    if pa == 0 and pb == 0:
                        continue
                    if pa == na - 2 and pb == nb - 2:
                        continue
                    yield moves.TwoOptStar(ra, rb, pa, pb)
    for rs in range(K):
        for rt in range(K):
            ns, nt = lens[rs], lens[rt]
            for i in range(1, ns - 1):
                for ln in (1, 2):
                    j = i + ln - 1
                    if j > ns - 2:
                        continue
                    if rt == rs:
                        for t in range(ns - 1):
                            if i - 1 <= t <= j:
                                continue
                            yield moves.OrOpt(rs, i, ln, rt, t)
                    else:
                        for t in range(nt - 1):
                            yield moves.OrOpt(rs, i, ln, rt, t)
    for ra in range(K):
        for rb in range(ra, K):
            na, nb = lens[ra], lens[rb]
            for i1 in range(1, na - 1):
                for l1 in (1, 2):
                    j1 = i1 + l1 - 1
                    if j1 > na - 2:
                        continue
                    lo = j1 + 1 if rb == ra else 1
                    for i2 in range(lo, nb - 1):
                        for l2 in (1, 2):
                            if i2 + l2 - 1 > nb - 2:
                                continue
                            yield moves.Swap(ra, i1, l1, rb, i2, l2)


def _move_from_desc(desc) -> moves.Move:
    kind = int(desc[0])
    if kind == _kernels.K_TWO_OPT:
        return moves.TwoOpt(int(desc[1]), int(desc[3]))
    if kind == _kernels.K_TWO_OPT_STAR:
        return moves.TwoOptStar(int(desc[1]), int(desc[2]),
                                int(desc[3]), int(desc[4]))
    if kind == _kernels.K_OR_OPT:
        return moves.OrOpt(int(desc[1]), int(desc[3]), int(desc[4]),
                           int(desc[2]), int(desc[5]))
    if kind == _kernels.K_SWAP:
        return moves.Swap(int(desc[1]), int(desc[3]), int(desc[4]),
                          int(desc[2]), int(desc[5]), int(desc[6]))
    raise ValueError(f"bad move descriptor kind {kind}")


class _Workspace:
    """Routes plus their attribute tables, kept consistent across moves."""

    def __init__(self, inst: Instance, routes: list[tuple[int, ...]]):
        self.inst = inst
        self.routes = list(routes)
        self.tables = [seqeval.build_table(inst, r) for r in self.routes]

    def scan(self):
        routes_tl = NumbaList()
        fwd_tl = NumbaList()
        bwd_tl = NumbaList()
        for t in self.tables:
            routes_tl.append(t.arr)
            fwd_tl.append(t.fwd)
            bwd_tl.append(t.bwd)
        inst = self.inst
        return _kernels.scan_best_move(
            routes_tl, fwd_tl, bwd_tl, inst.dist, inst.time,
            inst.capacity, inst.dispatch_cost, inst.unit_cost)

    def apply(self, mv: moves.Move):
        new_routes = moves.apply_move(self.routes, mv)
        reuse = {r: t for r, t in zip(self.routes, self.tables)}
        self.routes = new_routes
        self.tables = [
            reuse[r] if r in reuse else seqeval.build_table(self.inst, r)
            for r in new_routes
        ]


def find_local_optimum(inst: Instance, s: Solution) -> Solution:
    """Descend with the best strictly improving move until none exists."""
    if not s.routes:
        return s
    ws = _Workspace(inst, [r.nodes for r in s.routes])
    while ws.routes:
        delta, desc = ws.scan()
        if desc[0] < 0 or delta >= -IMPROVE_EPS:
            break
        ws.apply(_move_from_desc(desc))
    return Solution(ws.routes)


def shaw_removal(inst: Instance, esc: EscapeParams, s: Solution, q: int,
                 rng: np.random.Generator):
    """Remove q correlated customers; returns the partial solution and them.

    The first victim is uniform; every next one is picked by roulette wheel
    between the two customers most correlated to the last removed one, with
    weights proportional to the inverse correlation.
    """
    present = sorted(s.customers())
    if not 1 <= q <= len(present):
        raise ValueError(f"cannot remove {q} of {len(present)} customers")
    corr = correlation_matrix(inst, esc)

    first = present[int(rng.integers(len(present)))]
    removed = [first]
    left = [v for v in present if v != first]
    while len(removed) < q:
        last = removed[-1]
        if len(left) == 1:
            pick = left[0]
        else:
            ranked = sorted(left, key=lambda v: (corr[last, v], v))
            c1, c2 = ranked[0], ranked[1]
            w1 = 1.0 / max(corr[last, c1], 1e-9)
            w2 = 1.0 / max(corr[last, c2], 1e-9)
            pick = c1 if rng.random() < w1 / (w1 + w2) else c2
        removed.append(pick)
        left.remove(pick)

    gone = set(removed)
    kept = []
    for r in s.routes:
        interior = tuple(v for v in r.customers if v not in gone)
        if interior:
            kept.append((0,) + interior + (0,))
    return Solution(kept), gone


def local_search(inst: Instance, esc: EscapeParams, s: Solution,
                 rng: np.random.Generator) -> Solution:
    """Descend, then alternate escape and descent while it keeps improving."""
    m = inst.num_customers
    if m == 0:
        return s
    x = find_local_optimum(inst, s)
    cost_x = total_cost(inst, x)
    lo = math.ceil(esc.omega1 * m)
    hi = math.floor(esc.omega2 * m)
    while True:
        if lo > hi:
            q = max(1, round(esc.omega1 * m))
        else:
            q = int(rng.integers(lo, hi + 1))
        q = min(max(q, 1), m)
        partial, removed = shaw_removal(inst, esc, x, q, rng)
        try:
            cand = construct.regret_insert(inst, partial, removed, rng)
        except InsertionImpossible:
            break
        cand = find_local_optimum(inst, cand)
        cost_cand = total_cost(inst, cand)
        if cost_cand < cost_x - IMPROVE_EPS:
            x, cost_x = cand, cost_cand
        else:
            break
    return x
