#!/usr/bin/env python3
"""Microbenchmark: span-table move evaluation vs full route traversal.

Reports mean evaluation time per move at different route lengths, plus the
speedup of the O(1) path over the O(n) traversal path.  Informational only;
the acceptance gate asserts the constant *work* bound (concatenations per
evaluation), not wall-clock shape.

Usage: python scripts/bench_move_eval.py [--lengths 5,10,20,40,80]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from conftest import random_instance

from spdtw import moves, search, seqeval
from spdtw.construct import RcrsWeights, rcrs_construct
from spdtw.model import evaluate_route_direct, total_cost


def bench_length(n: int, budget: int = 4000):
    inst = random_instance(2 * n, seed=n, tw="none", capacity=10_000.0,
                           fleet=2)
    sol = rcrs_construct(inst, RcrsWeights(0.0, 0.0))
    routes = [r.nodes for r in sol.routes]
    tables = [seqeval.build_table(inst, r) for r in routes]
    base = total_cost(inst, sol)
    mvs = list(search.enumerate_moves(sol))
    rng = np.random.default_rng(0)
    picked = [mvs[int(k)] for k in rng.choice(len(mvs),
                                              size=min(budget, len(mvs)),
                                              replace=False)]

    t0 = time.perf_counter()
    for mv in picked:
        seqeval.eval_move(inst, tables, mv)
    fast = (time.perf_counter() - t0) / len(picked)

    t0 = time.perf_counter()
    for mv in picked:
        applied = moves.apply_move(routes, mv)
        td = 0.0
        feasible = True
        for r in applied:
            ev = evaluate_route_direct(inst, r)
            feasible = feasible and ev.feasible_tw and ev.feasible_cap
            td += ev.td
        _ = inst.dispatch_cost * len(applied) + inst.unit_cost * td - base
    slow = (time.perf_counter() - t0) / len(picked)

    avg_len = sum(len(r) - 2 for r in routes) / len(routes)
    return avg_len, fast, slow


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lengths", default="5,10,20,40,80",
                    help="comma-separated target route lengths")
    args = ap.parse_args()
    print(f"{'route len':>10} {'O(1) eval':>12} {'traversal':>12} "
          f"{'speedup':>8}")
    for n in (int(v) for v in args.lengths.split(",")):
        avg_len, fast, slow = bench_length(n)
        print(f"{avg_len:>10.1f} {fast * 1e6:>10.2f}us {slow * 1e6:>10.2f}us "
              f"{slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
