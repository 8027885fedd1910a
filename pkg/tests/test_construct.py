"""RCRS construction and regret insertion against naive reimplementations."""

import math

import pytest

from conftest import random_instance
from spdtw.construct import RcrsWeights, rcrs_construct, rcrs_score, regret_insert
from spdtw.model import (FleetExhausted, InsertionImpossible, Solution,
                         check_solution, evaluate_route_direct)


def test_weights_validated():
    with pytest.raises(ValueError):
        RcrsWeights(-0.1, 0.5)
    with pytest.raises(ValueError):
        RcrsWeights(0.5, 1.2)


def test_single_customer_instance():
    inst = random_instance(1, seed=0)
    for lam, gam in ((0, 0), (1, 1), (0.5, 0.25)):
        sol = rcrs_construct(inst, RcrsWeights(lam, gam))
        assert [r.nodes for r in sol.routes] == [(0, 1, 0)]


def test_score_reduces_to_extra_distance():
    inst = random_instance(6, seed=1)
    w0 = RcrsWeights(0.0, 0.0)
    route = (0, 2, 5, 0)
    for pos in range(3):
        i, j = route[pos], route[pos + 1]
        extra = inst.dist[i, 3] + inst.dist[3, j] - inst.dist[i, j]
        assert rcrs_score(inst, w0, 3, route, pos) == pytest.approx(extra)


def test_score_prefers_remote_customers():
    # equal extra distance and residual capacity: larger depot round trip
    # must score lower once its weight is positive
    inst = random_instance(8, seed=2)
    w = RcrsWeights(0.0, 0.5)
    route = (0, 1, 0)
    scores = {}
    for v in (2, 3):
        s = rcrs_score(inst, w, v, route, 0)
        extra = (inst.dist[0, v] + inst.dist[v, 1] - inst.dist[0, 1])
        rs = inst.dist[0, v] + inst.dist[v, 0]
        scores[v] = (s, extra, rs)
        assert s == pytest.approx(extra - 0.5 * rs)


def test_zero_weights_equals_cheapest_insertion():
    # naive cheapest-insertion replay with the same tie rules
    inst = random_instance(7, seed=5, tw="loose", capacity=500.0)
    got = rcrs_construct(inst, RcrsWeights(0.0, 0.0))

    unassigned = list(range(1, 8))
    done = []
    active = (0, 0)
    while unassigned:
        best = None
        for v in unassigned:
            for pos in range(len(active) - 1):
                cand_route = active[:pos + 1] + (v,) + active[pos + 1:]
                ev = evaluate_route_direct(inst, cand_route)
                if not (ev.feasible_tw and ev.feasible_cap):
                    continue
                i, j = active[pos], active[pos + 1]
                extra = inst.dist[i, v] + inst.dist[v, j] - inst.dist[i, j]
                cand = (extra, pos, v)
                if best is None or cand < best:
                    best = cand
        if best is None:
            done.append(active)
            active = (0, 0)
            continue
        _, pos, v = best
        active = active[:pos + 1] + (v,) + active[pos + 1:]
        unassigned.remove(v)
    if len(active) > 2:
        done.append(active)
    assert [r.nodes for r in got.routes] == done


def test_construct_deterministic_and_feasible():
    for seed in range(8):
        inst = random_instance(14, seed=seed)
        w = RcrsWeights(0.4, 0.7)
        a = rcrs_construct(inst, w)
        b = rcrs_construct(inst, w)
        assert [r.nodes for r in a.routes] == [r.nodes for r in b.routes]
        assert check_solution(inst, a).feasible


def test_fleet_exhaustion():
    inst = random_instance(8, seed=3, tw="tight", fleet=1, capacity=35.0)
    with pytest.raises(FleetExhausted):
        rcrs_construct(inst, RcrsWeights(0.0, 0.0))


def test_regret_empty_todo_returns_partial():
    inst = random_instance(5, seed=1)
    partial = Solution([(0, 1, 2, 0)])
    assert regret_insert(inst, partial, set()) is partial


def test_regret_matches_naive_replay():
    # independent implementation of the regret loop, full candidate scans
    for seed in range(6):
        inst = random_instance(6, seed=seed, tw="mixed", capacity=120.0)
        u1, u2 = inst.dispatch_cost, inst.unit_cost

        def best_in_route(nodes, v):
            best = None
            for pos in range(len(nodes) - 1):
                cand = nodes[:pos + 1] + (v,) + nodes[pos + 1:]
                ev = evaluate_route_direct(inst, cand)
                if not (ev.feasible_tw and ev.feasible_cap):
                    continue
                base = evaluate_route_direct(inst, nodes).td
                cost = u2 * (ev.td - base)
                if best is None or (cost, pos) < best:
                    best = (cost, pos)
            return best

        routes = []
        todo = list(range(1, 7))
        while todo:
            options = {}
            for v in todo:
                opts = []
                for ri, nodes in enumerate(routes):
                    got = best_in_route(nodes, v)
                    if got is not None:
                        opts.append((got[0], ri, got[1]))
                if len(routes) < inst.fleet_size:
                    ev = evaluate_route_direct(inst, (0, v, 0))
                    if ev.feasible_tw and ev.feasible_cap:
                        c0 = u1 + u2 * (inst.dist[0, v] + inst.dist[v, 0])
                        opts.append((c0, len(routes), 0))
                opts.sort()
                options[v] = opts
            pick = None
            for v in todo:
                opts = options[v]
                assert opts, "naive replay hit a dead end"
                regret = opts[1][0] - opts[0][0] if len(opts) > 1 else math.inf
                rank = (-regret, opts[0][0], v)
                if pick is None or rank < pick[0]:
                    pick = (rank, v, opts[0])
            _, v, (cost, ri, pos) = pick
            if ri == len(routes):
                routes.append((0, v, 0))
            else:
                routes[ri] = routes[ri][:pos + 1] + (v,) + routes[ri][pos + 1:]
            todo.remove(v)

        got = regret_insert(inst, Solution([]), set(range(1, 7)))
        assert [r.nodes for r in got.routes] == routes


def test_regret_respects_fleet_bound():
    for seed in range(6):
        inst = random_instance(10, seed=seed, tw="loose", fleet=3,
                               capacity=400.0)
        sol = regret_insert(inst, Solution([]), set(range(1, 11)))
        assert sol.num_routes <= 3
        assert check_solution(inst, sol).feasible


def test_regret_insertion_impossible():
    inst = random_instance(6, seed=2, tw="tight", fleet=1, capacity=31.0)
    with pytest.raises(InsertionImpossible):
        regret_insert(inst, Solution([]), set(range(1, 7)))


def test_regret_single_option_goes_first():
    # a customer whose only slot is a fresh route has infinite regret and
    # must be inserted before everyone with two finite options
    inst = random_instance(5, seed=11, tw="loose", fleet=5, capacity=200.0)
    sol = regret_insert(inst, Solution([]), set(range(1, 6)))
    assert check_solution(inst, sol).feasible
