"""The memetic solver: grid-seeded population, crossover, steady replacement.

Each generation draws a fresh random permutation so that every individual
acts once as the base parent and once as the partner; the offspring of a
pair replaces its base parent only when strictly cheaper.  The run stops after
``g_max`` consecutive generations without improving the best solution found,
or when the optional wall-clock cap fires.
"""

from __future__ import annotations

import math
import time as _time
from dataclasses import dataclass, field

import numpy as np

from . import construct, search
from .construct import RcrsWeights
from .model import (Instance, InsertionImpossible, Solution,
                    solution_distance, total_cost)
from .search import EscapeParams, IMPROVE_EPS


def default_pop_size(num_customers: int) -> int:
    """16 up to 100 customers, 36 beyond."""
    return 16 if num_customers <= 100 else 36


@dataclass
class MemeticParams:
    """All tunables of a run.  ``n`` must be a perfect square >= 4."""

    n: int = 16
    g_max: int = 50
    escape: EscapeParams | None = None
    seed: int = 0
    time_limit: float | None = None

    def __post_init__(self):
        root = math.isqrt(self.n)
        if self.n < 4 or root * root != self.n:
            raise ValueError("population size must be a perfect square >= 4")
        if self.g_max < 1:
            raise ValueError("g_max must be at least 1")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass
class RunReport:
    """Outcome of one run."""

    best: Solution
    total_cost: float
    nv: int
    td: float
    generations: int
    wall_time: float
    trace: list[float] = field(default_factory=list)
    seed: int = 0


def initialize_population(inst: Instance, params: MemeticParams) -> list[Solution]:
    """One RCRS construction per point of an evenly spaced weight grid.

    With n = k^2 individuals, both weights sweep {0, 1/(k-1), ..., 1}, so the
    population covers the whole weight design space instead of betting on one
    tuning.
    """
    k = math.isqrt(params.n)
    step = 1.0 / (k - 1)
    pop = []
    for i in range(k):
        for j in range(k):
            w = RcrsWeights(min(i * step, 1.0), min(j * step, 1.0))
            pop.append(construct.rcrs_construct(inst, w))
    return pop


def crossover(inst: Instance, p1: Solution, p2: Solution,
              rng: np.random.Generator) -> Solution:
    """Inherit conflict-free routes from both parents, then complete by regret.

    Routes are copied alternately (p1 first), each drawn uniformly among the
    donor's routes that share no customer with the child so far, until
    neither parent can contribute or the fleet bound is reached.  Customers
    still uncovered are regret-inserted.  If that fails, the child is a fresh
    randomized RCRS construction instead, so the generation never aborts.
    """
    copied: list[tuple[int, ...]] = []
    covered: set[int] = set()
    donors = (p1.routes, p2.routes)
    turn = 0
    skipped = 0
    while len(copied) < inst.fleet_size and skipped < 2:
        donor = donors[turn % 2]
        turn += 1
        options = [r for r in donor if covered.isdisjoint(r.customers)]
        if not options:
            skipped += 1
            continue
        skipped = 0
        pick = options[int(rng.integers(len(options)))]
        copied.append(pick.nodes)
        covered.update(pick.customers)

    uncovered = [v for v in range(1, inst.num_customers + 1)
                 if v not in covered]
    partial = Solution(copied)
    try:
        return construct.regret_insert(inst, partial, uncovered, rng)
    except InsertionImpossible:
        w = RcrsWeights(float(rng.random()), float(rng.random()))
        return construct.rcrs_construct(inst, w)


def run(inst: Instance, params: MemeticParams,
        on_generation=None) -> RunReport:
    """Full solver run; deterministic for a fixed seed when no cap fires.

    ``on_generation(generation, population, costs)`` is called at every
    generation boundary when given; tests use it to watch invariants.
    """
    rng = np.random.default_rng(params.seed)
    start = _time.perf_counter()

    def out_of_time() -> bool:
        return (params.time_limit is not None
                and _time.perf_counter() - start > params.time_limit)

    esc = params.escape or search.default_escape_params(inst)
    pop = initialize_population(inst, params)
    costs = [total_cost(inst, x) for x in pop]
    best_i = min(range(len(pop)), key=lambda i: costs[i])
    best, best_cost = pop[best_i], costs[best_i]
    trace = [best_cost]

    generations = 0
    quiet = 0
    while quiet < params.g_max and not out_of_time():
        generations += 1
        perm = rng.permutation(params.n)
        for i in range(params.n):
            if out_of_time():
                break
            a = int(perm[i])
            b = int(perm[(i + 1) % params.n])
            child = crossover(inst, pop[a], pop[b], rng)
            child = search.local_search(inst, esc, child, rng)
            child_cost = total_cost(inst, child)
            if child_cost < costs[a]:
                pop[a] = child
                costs[a] = child_cost
        gen_best = min(range(len(pop)), key=lambda i: costs[i])
        if costs[gen_best] < best_cost - IMPROVE_EPS:
            best, best_cost = pop[gen_best], costs[gen_best]
            quiet = 0
        else:
            quiet += 1
        trace.append(best_cost)
        if on_generation is not None:
            on_generation(generations, pop, costs)

    wall = _time.perf_counter() - start
    return RunReport(best=best, total_cost=best_cost, nv=best.num_routes,
                     td=solution_distance(inst, best),
                     generations=generations, wall_time=wall, trace=trace,
                     seed=params.seed)
