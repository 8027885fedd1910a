"""Brute-force references used only by tests.

``exact_solve`` enumerates every feasible routing of a tiny instance and
returns a provably optimal solution.  ``scan_all_moves`` walks the full move
neighborhood evaluating each candidate by traversal.  Neither touches the
span-table machinery, so they can arbitrate when it is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import moves, search
from .model import (DEPOT, FEAS_EPS, Instance, Solution, SolverError,
                    evaluate_route_direct, total_cost)

MAX_EXACT_CUSTOMERS = 10


class BudgetExhausted(SolverError):
    """The node-expansion budget ran out before optimality was proven."""


@dataclass
class _Open:
    """Incremental state of the route currently being extended."""

    nodes: list[int]
    dep: float          # departure time from the last node
    net: float          # pickups minus deliveries over served customers
    net_peak: float     # max of that prefix quantity at any arrival
    dtot: float         # total deliveries of the route so far
    td: float           # distance of the open part


def exact_solve(inst: Instance, budget: int = 5_000_000) -> Solution:
    """Optimal solution by depth-first search over sequenced partitions.

    Routes are built one at a time; a route may only close once it serves
    the customer that was the smallest unserved one when it opened, which
    rules out permutations of the same route set without constraining any
    within-route order.  Partial schedules and load profiles grow in O(1)
    per extension, written directly from the arrival/departure and load
    recursions.  Pruning uses only the cost already incurred.
    """
    m = inst.num_customers
    if m > MAX_EXACT_CUSTOMERS:
        raise ValueError(
            f"exact_solve handles at most {MAX_EXACT_CUSTOMERS} customers")
    if m == 0:
        return Solution(())

    u1, u2 = inst.dispatch_cost, inst.unit_cost
    best_cost = float("inf")
    best_routes: list[tuple[int, ...]] | None = None
    expansions = 0

    def extend(open_: _Open, v: int) -> _Open | None:
        arr = open_.dep + inst.time[open_.nodes[-1], v]
        if arr > inst.tw_end[v] + FEAS_EPS:
            return None
        dtot = open_.dtot + inst.delivery[v]
        net_peak = max(open_.net_peak, open_.net)
        if dtot + net_peak > inst.capacity + FEAS_EPS:
            return None
        return _Open(
            nodes=open_.nodes + [v],
            dep=max(arr, inst.tw_start[v]) + inst.service[v],
            net=open_.net + inst.pickup[v] - inst.delivery[v],
            net_peak=net_peak,
            dtot=dtot,
            td=open_.td + inst.dist[open_.nodes[-1], v],
        )

    def close_ok(open_: _Open) -> bool:
        arr = open_.dep + inst.time[open_.nodes[-1], DEPOT]
        if arr > inst.tw_end[DEPOT] + FEAS_EPS:
            return False
        # load on arrival back at the depot is the total pickups
        return (open_.dtot + max(open_.net_peak, open_.net)
                <= inst.capacity + FEAS_EPS)

    def dfs(remaining: frozenset[int], closed: list[tuple[int, ...]],
            closed_td: float, open_: _Open, must_serve: int):
        nonlocal best_cost, best_routes, expansions
        expansions += 1
        if expansions > budget:
            raise BudgetExhausted(f"exceeded {budget} node expansions")

        bound = u1 * (len(closed) + 1) + u2 * (closed_td + open_.td)
        if bound >= best_cost:
            return

        for v in sorted(remaining):
            nxt = extend(open_, v)
            if nxt is None:
                continue
            dfs(remaining - {v}, closed, closed_td, nxt, must_serve)

        # close the open route: it must carry its obligated customer
        if len(open_.nodes) < 2 or must_serve not in open_.nodes:
            return
        if not close_ok(open_):
            return
        td = open_.td + inst.dist[open_.nodes[-1], DEPOT]
        route = tuple(open_.nodes) + (DEPOT,)
        if not remaining:
            cost = u1 * (len(closed) + 1) + u2 * (closed_td + td)
            if cost < best_cost:
                best_cost = cost
                best_routes = closed + [route]
            return
        if len(closed) + 1 >= inst.fleet_size:
            return
        fresh = _Open([DEPOT], inst.tw_start[DEPOT], 0.0, 0.0, 0.0, 0.0)
        dfs(remaining, closed + [route], closed_td + td, fresh,
            min(remaining))

    all_customers = frozenset(range(1, m + 1))
    fresh = _Open([DEPOT], inst.tw_start[DEPOT], 0.0, 0.0, 0.0, 0.0)
    if inst.fleet_size >= 1:
        dfs(all_customers, [], 0.0, fresh, min(all_customers))

    if best_routes is None:
        raise SolverError("instance has no feasible solution")
    return Solution(best_routes)


def scan_all_moves(inst: Instance, s: Solution):
    """Best strictly improving move by apply-and-reevaluate, or None.

    Every candidate is applied structurally and re-evaluated from scratch
    with the traversal evaluator; ties keep the earliest move in enumeration
    order.
    """
    base = total_cost(inst, s)
    routes = [r.nodes for r in s.routes]
    best = None
    best_delta = -search.IMPROVE_EPS
    for mv in search.enumerate_moves(s):
        new_routes = moves.apply_move(routes, mv)
        feasible = True
        td = 0.0
        for r in new_routes:
            ev = evaluate_route_direct(inst, r)
            if not ev.feasible:
                feasible = False
                break
            td += ev.td
        if not feasible:
            continue
        cost = inst.dispatch_cost * len(new_routes) + inst.unit_cost * td
        delta = cost - base
        if delta < best_delta:
            best_delta = delta
            best = (mv, delta)
    return best
