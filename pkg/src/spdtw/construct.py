"""Solution construction: RCRS insertion and regret-based insertion.

Both constructors only ever produce feasible solutions; running out of
vehicles or of feasible slots raises instead of returning something broken.
All tie-breaking is deterministic (cost, then route index, then position,
then customer id) so identical inputs give identical solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels, seqeval
from .model import (DEPOT, FEAS_EPS, FleetExhausted, Instance,
                    InsertionImpossible, Route, Solution,
                    evaluate_route_direct)

#: Sentinel route index for "open a fresh route".
NEW_ROUTE = -1


@dataclass(frozen=True)
class RcrsWeights:
    """Weights of the residual-capacity and radial-surcharge terms."""

    lam: float
    gamma_rs: float

    def __post_init__(self):
        if not (0.0 <= self.lam <= 1.0 and 0.0 <= self.gamma_rs <= 1.0):
            raise ValueError("RCRS weights must lie in [0, 1]")


@dataclass(frozen=True)
class InsertionCandidate:
    customer: int
    route: int          # NEW_ROUTE for a fresh route
    position: int
    cost: float         # exact total-cost delta of the insertion


def _insert(nodes: tuple[int, ...], v: int, pos: int) -> tuple[int, ...]:
    return nodes[:pos + 1] + (v,) + nodes[pos + 1:]


def _best_slot(inst: Instance, table: seqeval.RouteAttrTable, v: int,
               lam: float = 0.0):
    """Kernel wrapper: best feasible slot of v in one route, or None."""
    key, pos, dw, ch = _kernels.best_insertion(
        table.arr, table.fwd, v, lam, inst.dist, inst.time, inst.delivery,
        inst.pickup, inst.tw_start, inst.tw_end, inst.service, inst.capacity)
    if pos < 0:
        return None
    return key, pos, dw, ch


def _single_route_feasible(inst: Instance, v: int) -> bool:
    arr_v = inst.tw_start[DEPOT] + inst.time[DEPOT, v]
    if arr_v > inst.tw_end[v] + FEAS_EPS:
        return False
    dep_v = max(arr_v, inst.tw_start[v]) + inst.service[v]
    return dep_v + inst.time[v, DEPOT] <= inst.tw_end[DEPOT] + FEAS_EPS


def rcrs_score(inst: Instance, w: RcrsWeights, customer: int,
               route: Route | tuple[int, ...], position: int) -> float:
    """Reference RCRS criterion for inserting ``customer`` at ``position``.

    Extra travel distance, minus ``lam`` times the residual capacity left
    after the insertion, minus ``gamma_rs`` times the customer's round-trip
    distance to the depot.  Lower is better.  Assumes the insertion is
    feasible.
    """
    nodes = route.nodes if isinstance(route, Route) else tuple(route)
    i, j = nodes[position], nodes[position + 1]
    extra = (inst.dist[i, customer] + inst.dist[customer, j]
             - inst.dist[i, j])
    ev = evaluate_route_direct(inst, _insert(nodes, customer, position))
    residual = inst.capacity - ev.load.max()
    surcharge = inst.dist[DEPOT, customer] + inst.dist[customer, DEPOT]
    return extra - w.lam * residual - w.gamma_rs * surcharge


def rcrs_construct(inst: Instance, w: RcrsWeights) -> Solution:
    """Build a complete feasible solution route by route.

    One route is active at a time; each step inserts the (customer, slot)
    pair with the lowest RCRS score among all feasible insertions into the
    active route.  When nothing fits, the route is closed and a new one is
    activated.
    """
    unassigned = list(range(1, inst.num_customers + 1))
    if not unassigned:
        return Solution(())
    done: list[tuple[int, ...]] = []
    active: tuple[int, ...] = (DEPOT, DEPOT)
    table = seqeval.build_table(inst, active)

    while unassigned:
        best = None
        for v in unassigned:
            slot = _best_slot(inst, table, v, w.lam)
            if slot is None:
                continue
            key, pos, dw, ch = slot
            score = (dw - w.lam * (inst.capacity - ch)
                     - w.gamma_rs * (inst.dist[DEPOT, v] + inst.dist[v, DEPOT]))
            cand = (score, pos, v)
            if best is None or cand < best:
                best = cand
        if best is None:
            if len(active) == 2:
                raise InsertionImpossible(min(unassigned))
            done.append(active)
            if len(done) >= inst.fleet_size:
                raise FleetExhausted(
                    f"more than {inst.fleet_size} routes required")
            active = (DEPOT, DEPOT)
            table = seqeval.build_table(inst, active)
            continue
        _, pos, v = best
        active = _insert(active, v, pos)
        table = seqeval.build_table(inst, active)
        unassigned.remove(v)

    if len(active) > 2:
        done.append(active)
    if len(done) > inst.fleet_size:
        raise FleetExhausted(f"more than {inst.fleet_size} routes required")
    return Solution(done)


def _candidates_for(inst: Instance, v: int, routes: list[tuple[int, ...]],
                    tables: list[seqeval.RouteAttrTable],
                    allow_new: bool) -> list[InsertionCandidate]:
    """All per-route best insertions of v, cheapest first under the tie rules."""
    out = []
    for ri, table in enumerate(tables):
        slot = _best_slot(inst, table, v)
        if slot is not None:
            _, pos, dw, _ = slot
            out.append(InsertionCandidate(v, ri, pos, inst.unit_cost * dw))
    if allow_new and _single_route_feasible(inst, v):
        c0 = (inst.dispatch_cost
              + inst.unit_cost * (inst.dist[DEPOT, v] + inst.dist[v, DEPOT]))
        out.append(InsertionCandidate(v, NEW_ROUTE, 0, c0))
    out.sort(key=lambda c: (c.cost, len(routes) if c.route == NEW_ROUTE
                            else c.route, c.position))
    return out


def regret_insert(inst: Instance, partial: Solution,
                  unassigned, rng=None) -> Solution:
    """Insert every unassigned customer by largest regret first.

    A customer's regret is the cost gap between its second-best and best
    feasible insertion (per-route bests plus opening a fresh route while the
    fleet allows it); a customer with a single option has infinite regret.
    Ties pick the lowest insertion cost, then the lowest customer id.
    """
    todo = sorted(set(int(v) for v in unassigned))
    if not todo:
        return partial
    assigned = set(partial.customers())
    for v in todo:
        if v in assigned or not 1 <= v <= inst.num_customers:
            raise ValueError(f"customer {v} is not insertable")

    routes = [r.nodes for r in partial.routes]
    tables = [seqeval.build_table(inst, r) for r in routes]
    allow_new = len(routes) < inst.fleet_size
    cache: dict[int, list[InsertionCandidate]] = {
        v: _candidates_for(inst, v, routes, tables, allow_new) for v in todo}

    while todo:
        chosen = None
        for v in todo:
            cands = cache[v]
            if not cands:
                raise InsertionImpossible(v)
            regret = (cands[1].cost - cands[0].cost
                      if len(cands) > 1 else math.inf)
            rank = (-regret, cands[0].cost, v)
            if chosen is None or rank < chosen[0]:
                chosen = (rank, cands[0])
        best = chosen[1]
        if best.route == NEW_ROUTE:
            routes.append((DEPOT, best.customer, DEPOT))
            tables.append(seqeval.build_table(inst, routes[-1]))
            changed = len(routes) - 1
        else:
            routes[best.route] = _insert(routes[best.route], best.customer,
                                         best.position)
            tables[best.route] = seqeval.build_table(inst, routes[best.route])
            changed = best.route
        todo.remove(best.customer)
        del cache[best.customer]

        new_allowed = len(routes) < inst.fleet_size
        for v in todo:
            cands = [c for c in cache[v] if c.route != changed]
            if not new_allowed:
                cands = [c for c in cands if c.route != NEW_ROUTE]
            slot = _best_slot(inst, tables[changed], v)
            if slot is not None:
                _, pos, dw, _ = slot
                cands.append(InsertionCandidate(v, changed, pos,
                                                inst.unit_cost * dw))
            cands.sort(key=lambda c: (c.cost, len(routes) if c.route == NEW_ROUTE
                                      else c.route, c.position))
            cache[v] = cands
        allow_new = new_allowed

    return Solution(routes)
