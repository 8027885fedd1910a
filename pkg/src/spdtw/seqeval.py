"""Subsequence attributes closed under concatenation, and O(1) move evaluation.

Each contiguous span of a route carries eight numbers: travel distance,
initial/final/peak load, minimum duration, the earliest/latest start of the
minimum-duration window, and a flag that stays true only while every
concatenation step is time-window feasible.  Joining two spans needs only
these numbers plus the connecting arc, so once per-route tables exist, any
move built from span reassembly is evaluated with a handful of
concatenations no matter how long the routes are.

The E/D/L fields of a record whose flag is false are still computed but are
meaningless; nothing here reads them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, moves
from .model import FEAS_EPS, Instance, Node, Route, Solution


@dataclass(frozen=True)
class SubseqAttr:
    w: float
    c_e: float
    c_l: float
    c_h: float
    d: float
    e: float
    l: float
    tw_feasible: bool

    def to_vec(self) -> np.ndarray:
        return np.array([self.w, self.c_e, self.c_l, self.c_h, self.d,
                         self.e, self.l, 1.0 if self.tw_feasible else 0.0])

    @classmethod
    def from_vec(cls, v) -> "SubseqAttr":
        return cls(float(v[0]), float(v[1]), float(v[2]), float(v[3]),
                   float(v[4]), float(v[5]), float(v[6]), v[7] == 1.0)


def leaf(node: Node) -> SubseqAttr:
    """Attributes of the single-node span."""
    return SubseqAttr(
        w=0.0,
        c_e=node.delivery,
        c_l=node.pickup,
        c_h=max(node.delivery, node.pickup),
        d=node.service,
        e=node.tw_start,
        l=node.tw_end,
        tw_feasible=True,
    )


def concat(s1: SubseqAttr, s2: SubseqAttr, dist_jk: float,
           time_jk: float) -> SubseqAttr:
    """Join s1 and s2 across the arc from s1's last node to s2's first node."""
    out = np.empty(8)
    _kernels.concat_vec(s1.to_vec(), s2.to_vec(), dist_jk, time_jk, out)
    return SubseqAttr.from_vec(out)


class RouteAttrTable:
    """Attributes of every contiguous span of one route, and of its reversals.

    ``forward(p, q)`` describes nodes[p..q] in visit order; ``backward(p, q)``
    the same nodes visited q -> p.  Built with O(n^2) concatenations.
    """

    def __init__(self, nodes: tuple[int, ...], fwd: np.ndarray, bwd: np.ndarray):
        self.nodes = nodes
        self.arr = np.asarray(nodes, dtype=np.int64)
        self.fwd = fwd
        self.bwd = bwd

    def __len__(self):
        return len(self.nodes)

    def forward(self, p: int, q: int) -> SubseqAttr:
        return SubseqAttr.from_vec(self.fwd[p, q])

    def backward(self, p: int, q: int) -> SubseqAttr:
        return SubseqAttr.from_vec(self.bwd[p, q])

    @property
    def route_attr(self) -> SubseqAttr:
        return self.forward(0, len(self.nodes) - 1)


def build_table(inst: Instance, r: Route | tuple[int, ...]) -> RouteAttrTable:
    nodes = r.nodes if isinstance(r, Route) else tuple(r)
    fwd, bwd = _kernels.build_tables(
        np.asarray(nodes, dtype=np.int64), inst.dist, inst.time,
        inst.delivery, inst.pickup, inst.tw_start, inst.tw_end, inst.service)
    return RouteAttrTable(nodes, fwd, bwd)


def build_solution_tables(inst: Instance, s: Solution) -> list[RouteAttrTable]:
    return [build_table(inst, r) for r in s.routes]


class MoveEval:
    """Outcome of evaluating one move: feasibility and the exact cost delta."""

    __slots__ = ("feasible", "_delta", "concat_calls")

    def __init__(self, feasible: bool, delta: float, concat_calls: int):
        self.feasible = feasible
        self._delta = delta
        self.concat_calls = concat_calls

    @property
    def delta_cost(self) -> float:
        if not self.feasible:
            raise ValueError("delta_cost of an infeasible move is undefined")
        return self._delta

    def __repr__(self):
        if not self.feasible:
            return "MoveEval(infeasible)"
        return f"MoveEval(delta={self._delta:.6f})"


def _span_attr(tables: list[RouteAttrTable], sp: moves.Span):
    """Attribute vector plus boundary node ids of a span."""
    tab = tables[sp.route]
    if sp.reverse:
        return (tab.bwd[sp.start, sp.end],
                tab.nodes[sp.end], tab.nodes[sp.start])
    return (tab.fwd[sp.start, sp.end],
            tab.nodes[sp.start], tab.nodes[sp.end])


def eval_move(inst: Instance, tables: list[RouteAttrTable],
              mv: moves.Move) -> MoveEval:
    """Evaluate a move from precomputed tables, without touching any route.

    The work is bounded by the number of spans: at most four concatenations
    per produced route, at most two produced routes.  ``concat_calls``
    reports the exact count so tests can assert the bound.
    """
    plan = moves.move_plan(mv, [len(t) for t in tables])
    concats = 0
    feasible = True
    new_w = 0.0
    new_routes = 0
    buf = np.empty(8)
    for spans in plan.produced:
        if len(spans) > 5:
            raise ValueError(f"span list of length {len(spans)} exceeds 5")
        vec, _, last = _span_attr(tables, spans[0])
        cur = vec.copy()
        size = spans[0].size
        for sp in spans[1:]:
            nxt, first, sp_last = _span_attr(tables, sp)
            _kernels.concat_vec(cur, nxt, inst.dist[last, first],
                                inst.time[last, first], buf)
            cur, buf = buf, cur
            concats += 1
            last = sp_last
            size += sp.size
        if size > 2:        # a produced route with customers must be feasible
            new_routes += 1
            if cur[7] != 1.0 or cur[3] > inst.capacity + FEAS_EPS:
                feasible = False
            new_w += cur[0]
        else:
            new_w += cur[0]  # empty (depot, depot) route: deleted, W = 0
    if not feasible:
        return MoveEval(False, 0.0, concats)

    old_w = sum(tables[idx].fwd[0, len(tables[idx]) - 1, 0]
                for idx in plan.consumed)
    delta = (inst.unit_cost * (new_w - old_w)
             + inst.dispatch_cost * (new_routes - len(plan.consumed)))
    return MoveEval(True, float(delta), concats)
