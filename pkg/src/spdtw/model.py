"""Problem data, reference route evaluation, and the total-cost objective.

Everything here is deliberately plain: routes are evaluated by walking them
node by node, exactly as the cost/schedule/load recursions define them.  The
fast subsequence machinery in :mod:`spdtw.seqeval` is tested against this
module, never the other way around.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: Tolerance for feasibility comparisons (time windows, capacity).
FEAS_EPS = 1e-9
#: Tolerance for cost comparisons in tests.
COST_EPS = 1e-6

DEPOT = 0


class SolverError(Exception):
    """Base class for solver failures."""


class FleetExhausted(SolverError):
    """Construction would need more vehicles than the fleet provides."""


class InsertionImpossible(SolverError):
    """Some customer has no feasible insertion anywhere."""

    def __init__(self, customer: int):
        super().__init__(f"no feasible insertion for customer {customer}")
        self.customer = customer


class FormatError(SolverError):
    """Malformed instance or solution text."""

    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


@dataclass(frozen=True)
class Node:
    """One location: the depot (id 0) or a customer (id >= 1)."""

    id: int
    delivery: float
    pickup: float
    tw_start: float
    tw_end: float
    service: float
    x: float | None = None
    y: float | None = None

    def __post_init__(self):
        finite = (self.delivery, self.pickup, self.tw_start, self.tw_end,
                  self.service) + tuple(v for v in (self.x, self.y)
                                        if v is not None)
        if not all(math.isfinite(v) for v in finite):
            raise ValueError(f"node {self.id}: non-finite field")
        if self.tw_start > self.tw_end:
            raise ValueError(f"node {self.id}: tw_start > tw_end")
        if self.delivery < 0 or self.pickup < 0 or self.service < 0:
            raise ValueError(f"node {self.id}: negative demand or service time")
        if self.id == DEPOT and (self.delivery or self.pickup or self.service):
            raise ValueError("depot must have zero demands and service time")


class Instance:
    """Immutable problem data: nodes, travel matrices, fleet and costs.

    ``dist`` and ``time`` are (M+1) x (M+1) float64 matrices indexed by node
    id; row/column 0 is the depot.  Construction validates shape, zero
    diagonals and that every customer fits in an empty vehicle.
    """

    def __init__(
        self,
        nodes: list[Node],
        dist: np.ndarray,
        time: np.ndarray,
        fleet_size: int,
        capacity: float,
        dispatch_cost: float = 2000.0,
        unit_cost: float = 1.0,
        name: str = "",
    ):
        if not nodes or nodes[0].id != DEPOT:
            raise ValueError("nodes must be nonempty with the depot first")
        n = len(nodes)
        for i, nd in enumerate(nodes):
            if nd.id != i:
                raise ValueError(f"node ids must be 0..{n - 1} in order")
        dist = np.asarray(dist, dtype=np.float64)
        time = np.asarray(time, dtype=np.float64)
        if dist.shape != (n, n) or time.shape != (n, n):
            raise ValueError("dist/time matrices must be square with side M+1")
        if not (np.isfinite(dist).all() and np.isfinite(time).all()):
            raise ValueError("non-finite entries in dist/time")
        if (dist < 0).any() or (time < 0).any():
            raise ValueError("negative entries in dist/time")
        if np.diagonal(dist).any() or np.diagonal(time).any():
            raise ValueError("dist/time diagonal must be zero")
        if fleet_size < 0:
            raise ValueError("fleet_size must be nonnegative")
        for nd in nodes[1:]:
            if max(nd.delivery, nd.pickup) > capacity + FEAS_EPS:
                raise ValueError(
                    f"customer {nd.id} cannot fit in an empty vehicle"
                )

        self.name = name
        self.nodes: tuple[Node, ...] = tuple(nodes)
        self.dist = dist
        self.time = time
        self.fleet_size = int(fleet_size)
        self.capacity = float(capacity)
        self.dispatch_cost = float(dispatch_cost)
        self.unit_cost = float(unit_cost)

        # Column views used by the compiled kernels.
        self.delivery = np.array([nd.delivery for nd in nodes], dtype=np.float64)
        self.pickup = np.array([nd.pickup for nd in nodes], dtype=np.float64)
        self.tw_start = np.array([nd.tw_start for nd in nodes], dtype=np.float64)
        self.tw_end = np.array([nd.tw_end for nd in nodes], dtype=np.float64)
        self.service = np.array([nd.service for nd in nodes], dtype=np.float64)
        for a in (self.dist, self.time, self.delivery, self.pickup,
                  self.tw_start, self.tw_end, self.service):
            a.setflags(write=False)

    @property
    def num_customers(self) -> int:
        return len(self.nodes) - 1

    @classmethod
    def from_coords(
        cls,
        nodes: list[Node],
        fleet_size: int,
        capacity: float,
        dispatch_cost: float = 2000.0,
        unit_cost: float = 1.0,
        name: str = "",
    ) -> "Instance":
        """Build a planar instance; travel time equals Euclidean distance."""
        xy = []
        for nd in nodes:
            if nd.x is None or nd.y is None:
                raise ValueError(f"node {nd.id} lacks coordinates")
            xy.append((nd.x, nd.y))
        pts = np.asarray(xy, dtype=np.float64)
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=2))
        return cls(nodes, dist, dist.copy(), fleet_size, capacity,
                   dispatch_cost, unit_cost, name)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and np.array_equal(self.dist, other.dist)
            and np.array_equal(self.time, other.time)
            and self.fleet_size == other.fleet_size
            and self.capacity == other.capacity
            and self.dispatch_cost == other.dispatch_cost
            and self.unit_cost == other.unit_cost
        )

    def __repr__(self):
        return (f"Instance({self.name or 'unnamed'}, M={self.num_customers}, "
                f"J={self.fleet_size}, Q={self.capacity})")


@dataclass(frozen=True)
class Route:
    """A depot-to-depot visit sequence.  Interior ids are customers."""

    nodes: tuple[int, ...]

    def __post_init__(self):
        nodes = tuple(int(v) for v in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if len(nodes) < 3:
            raise ValueError("stored routes must visit at least one customer")
        if nodes[0] != DEPOT or nodes[-1] != DEPOT:
            raise ValueError("routes must start and end at the depot")
        interior = nodes[1:-1]
        if DEPOT in interior:
            raise ValueError("depot may not appear in the route interior")
        if len(set(interior)) != len(interior):
            raise ValueError("duplicate customer within a route")

    @property
    def customers(self) -> tuple[int, ...]:
        return self.nodes[1:-1]

    def __len__(self):
        return len(self.nodes)


@dataclass(frozen=True)
class Solution:
    """A set of routes; the unit of search."""

    routes: tuple[Route, ...]

    def __init__(self, routes):
        object.__setattr__(
            self,
            "routes",
            tuple(r if isinstance(r, Route) else Route(tuple(r)) for r in routes),
        )

    @property
    def num_routes(self) -> int:
        return len(self.routes)

    def customers(self) -> list[int]:
        out = []
        for r in self.routes:
            out.extend(r.customers)
        return out


@dataclass
class RouteEval:
    """Traversal evaluation of one route."""

    td: float
    arr: np.ndarray
    dep: np.ndarray
    load: np.ndarray
    feasible_tw: bool
    feasible_cap: bool

    @property
    def feasible(self) -> bool:
        return self.feasible_tw and self.feasible_cap


def evaluate_route_direct(inst: Instance, r: Route | tuple[int, ...]) -> RouteEval:
    """Evaluate a route by walking it: distance, schedule, loads, feasibility.

    The vehicle departs the depot exactly at the depot's window start;
    arriving early at a customer waits, arriving after its due time is
    infeasible.  The load on arrival at the first node is the route's total
    delivery demand.
    """
    nodes = r.nodes if isinstance(r, Route) else tuple(r)
    L = len(nodes)
    arr = np.zeros(L)
    dep = np.zeros(L)
    load = np.zeros(L)

    td = 0.0
    for j in range(L - 1):
        td += inst.dist[nodes[j], nodes[j + 1]]

    dep[0] = inst.tw_start[DEPOT]
    arr[0] = dep[0]
    feasible_tw = True
    for j in range(1, L):
        arr[j] = dep[j - 1] + inst.time[nodes[j - 1], nodes[j]]
        if arr[j] > inst.tw_end[nodes[j]] + FEAS_EPS:
            feasible_tw = False
        dep[j] = max(arr[j], inst.tw_start[nodes[j]]) + inst.service[nodes[j]]

    load[0] = sum(inst.delivery[v] for v in nodes)
    for j in range(1, L):
        prev = nodes[j - 1]
        load[j] = load[j - 1] - inst.delivery[prev] + inst.pickup[prev]
    feasible_cap = bool((load <= inst.capacity + FEAS_EPS).all())

    return RouteEval(td=td, arr=arr, dep=dep, load=load,
                     feasible_tw=feasible_tw, feasible_cap=feasible_cap)


def total_cost(inst: Instance, s: Solution) -> float:
    """Dispatch cost per used vehicle plus distance cost; no feasibility check."""
    td = 0.0
    for r in s.routes:
        td += evaluate_route_direct(inst, r).td
    return inst.dispatch_cost * s.num_routes + inst.unit_cost * td


def solution_distance(inst: Instance, s: Solution) -> float:
    """Total travel distance over all routes."""
    return sum(evaluate_route_direct(inst, r).td for r in s.routes)


@dataclass(frozen=True)
class Violation:
    kind: str
    route: int | None
    position: int | None
    customer: int | None
    message: str


@dataclass
class FeasibilityReport:
    fleet_ok: bool
    depot_ok: bool
    coverage_ok: bool
    capacity_ok: bool
    tw_ok: bool
    violations: list[Violation] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return (self.fleet_ok and self.depot_ok and self.coverage_ok
                and self.capacity_ok and self.tw_ok)


def check_solution(inst: Instance, s: Solution) -> FeasibilityReport:
    """Check every constraint; the report names each violation it finds."""
    violations: list[Violation] = []

    fleet_ok = s.num_routes <= inst.fleet_size
    if not fleet_ok:
        violations.append(Violation(
            "fleet", None, None, None,
            f"{s.num_routes} routes exceed fleet size {inst.fleet_size}"))

    depot_ok = True
    for ri, r in enumerate(s.routes):
        # Route construction already enforces bracketing; re-check anyway so
        # hand-built solutions read from disk are fully diagnosed.
        if r.nodes[0] != DEPOT or r.nodes[-1] != DEPOT:
            depot_ok = False
            violations.append(Violation(
                "depot", ri, None, None, f"route {ri} not depot-bracketed"))

    seen: dict[int, int] = {}
    coverage_ok = True
    for ri, r in enumerate(s.routes):
        for v in r.customers:
            if v in seen:
                coverage_ok = False
                violations.append(Violation(
                    "coverage", ri, None, v,
                    f"customer {v} served more than once"))
            seen[v] = ri
    for v in range(1, inst.num_customers + 1):
        if v not in seen:
            coverage_ok = False
            violations.append(Violation(
                "coverage", None, None, v, f"customer {v} not served"))
    for v in seen:
        if v > inst.num_customers:
            coverage_ok = False
            violations.append(Violation(
                "coverage", seen[v], None, v, f"unknown customer {v}"))

    capacity_ok = True
    tw_ok = True
    for ri, r in enumerate(s.routes):
        ev = evaluate_route_direct(inst, r)
        if not ev.feasible_cap:
            capacity_ok = False
            for j, ld in enumerate(ev.load):
                if ld > inst.capacity + FEAS_EPS:
                    violations.append(Violation(
                        "capacity", ri, j, r.nodes[j],
                        f"load {ld:.6g} exceeds capacity {inst.capacity:g} "
                        f"at position {j} of route {ri}"))
        if not ev.feasible_tw:
            tw_ok = False
            for j in range(1, len(r.nodes)):
                if ev.arr[j] > inst.tw_end[r.nodes[j]] + FEAS_EPS:
                    violations.append(Violation(
                        "time_window", ri, j, r.nodes[j],
                        f"arrival {ev.arr[j]:.6g} after due time "
                        f"{inst.tw_end[r.nodes[j]]:g} at position {j} "
                        f"of route {ri}"))

    return FeasibilityReport(fleet_ok, depot_ok, coverage_ok,
                             capacity_ok, tw_ok, violations)
