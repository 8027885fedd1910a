"""Move types, their span decompositions, and structural application.

A move never touches more than two routes, and every route it produces is a
concatenation of at most five contiguous spans of existing routes (one of
them possibly reversed).  ``move_plan`` writes that decomposition down;
``apply_move`` rebuilds the node tuples.  Both the O(1) evaluator and the
brute-force oracle go through the same plan, so they cannot disagree about
what a move *is*.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TwoOpt:
    """Invert the two consecutive customers at positions pos, pos+1."""

    kind = "two_opt"
    route: int
    pos: int


@dataclass(frozen=True)
class TwoOptStar:
    """Swap tails: keep route1[0..cut1] + route2[cut2+1..] and vice versa."""

    kind = "two_opt_star"
    route1: int
    route2: int
    cut1: int
    cut2: int


@dataclass(frozen=True)
class OrOpt:
    """Relocate src[start .. start+length-1] after position ``after`` of dst."""

    kind = "or_opt"
    src: int
    start: int
    length: int
    dst: int
    after: int


@dataclass(frozen=True)
class Swap:
    """Exchange route1[start1..] (len1 nodes) with route2[start2..] (len2)."""

    kind = "swap"
    route1: int
    start1: int
    len1: int
    route2: int
    start2: int
    len2: int


Move = TwoOpt | TwoOptStar | OrOpt | Swap


@dataclass(frozen=True)
class Span:
    """Contiguous slice [start..end] of a route, optionally reversed."""

    route: int
    start: int
    end: int
    reverse: bool = False

    @property
    def size(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class MovePlan:
    """Span lists of every route the move produces, plus the routes consumed."""

    produced: tuple[tuple[Span, ...], ...]
    consumed: tuple[int, ...]


def move_plan(mv: Move, lens: list[int] | tuple[int, ...]) -> MovePlan:
    """Decompose ``mv`` into per-route span lists given the route lengths."""
    if isinstance(mv, TwoOpt):
        n = lens[mv.route]
        t = mv.pos
        if not 1 <= t <= n - 3:
            raise ValueError(f"two_opt position {t} out of range")
        spans = (Span(mv.route, 0, t - 1),
                 Span(mv.route, t, t + 1, reverse=True),
                 Span(mv.route, t + 2, n - 1))
        return MovePlan((spans,), (mv.route,))

    if isinstance(mv, TwoOptStar):
        n1, n2 = lens[mv.route1], lens[mv.route2]
        if mv.route1 == mv.route2:
            raise ValueError("two_opt_star needs two distinct routes")
        if not (0 <= mv.cut1 <= n1 - 2 and 0 <= mv.cut2 <= n2 - 2):
            raise ValueError("two_opt_star cut out of range")
        a = (Span(mv.route1, 0, mv.cut1), Span(mv.route2, mv.cut2 + 1, n2 - 1))
        b = (Span(mv.route2, 0, mv.cut2), Span(mv.route1, mv.cut1 + 1, n1 - 1))
        return MovePlan((a, b), (mv.route1, mv.route2))

    if isinstance(mv, OrOpt):
        ns = lens[mv.src]
        i, j = mv.start, mv.start + mv.length - 1
        if mv.length not in (1, 2) or not 1 <= i <= j <= ns - 2:
            raise ValueError("or_opt span out of range")
        seg = Span(mv.src, i, j)
        if mv.dst == mv.src:
            t = mv.after
            if i - 1 <= t <= j or not 0 <= t <= ns - 2:
                raise ValueError("or_opt target inside the removed span")
            if t < i - 1:
                spans = (Span(mv.src, 0, t), seg,
                         Span(mv.src, t + 1, i - 1), Span(mv.src, j + 1, ns - 1))
            else:
                spans = (Span(mv.src, 0, i - 1), Span(mv.src, j + 1, t),
                         seg, Span(mv.src, t + 1, ns - 1))
            return MovePlan((spans,), (mv.src,))
        nt = lens[mv.dst]
        t = mv.after
        if not 0 <= t <= nt - 2:
            raise ValueError("or_opt target out of range")
        src_spans = (Span(mv.src, 0, i - 1), Span(mv.src, j + 1, ns - 1))
        dst_spans = (Span(mv.dst, 0, t), seg, Span(mv.dst, t + 1, nt - 1))
        return MovePlan((src_spans, dst_spans), (mv.src, mv.dst))

    if isinstance(mv, Swap):
        n1, n2 = lens[mv.route1], lens[mv.route2]
        i1, j1 = mv.start1, mv.start1 + mv.len1 - 1
        i2, j2 = mv.start2, mv.start2 + mv.len2 - 1
        if mv.len1 not in (1, 2) or mv.len2 not in (1, 2):
            raise ValueError("swap spans must have length 1 or 2")
        if not (1 <= i1 <= j1 <= n1 - 2 and 1 <= i2 <= j2 <= n2 - 2):
            raise ValueError("swap span out of range")
        s1 = Span(mv.route1, i1, j1)
        s2 = Span(mv.route2, i2, j2)
        if mv.route1 == mv.route2:
            if i2 <= j1:
                raise ValueError("swap spans overlap or are unordered")
            if i2 == j1 + 1:
                spans = (Span(mv.route1, 0, i1 - 1), s2, s1,
                         Span(mv.route1, j2 + 1, n1 - 1))
            else:
                spans = (Span(mv.route1, 0, i1 - 1), s2,
                         Span(mv.route1, j1 + 1, i2 - 1), s1,
                         Span(mv.route1, j2 + 1, n1 - 1))
            return MovePlan((spans,), (mv.route1,))
        a = (Span(mv.route1, 0, i1 - 1), s2, Span(mv.route1, j1 + 1, n1 - 1))
        b = (Span(mv.route2, 0, i2 - 1), s1, Span(mv.route2, j2 + 1, n2 - 1))
        return MovePlan((a, b), (mv.route1, mv.route2))

    raise TypeError(f"unknown move type {type(mv)!r}")


def apply_move(routes: list[tuple[int, ...]], mv: Move) -> list[tuple[int, ...]]:
    """Apply ``mv`` to node tuples; routes emptied by the move are dropped."""
    plan = move_plan(mv, [len(r) for r in routes])
    produced = []
    for spans in plan.produced:
        nodes: list[int] = []
        for sp in spans:
            chunk = routes[sp.route][sp.start:sp.end + 1]
            nodes.extend(reversed(chunk) if sp.reverse else chunk)
        produced.append(tuple(nodes))
    out: list[tuple[int, ...]] = []
    replacement = dict(zip(plan.consumed, produced))
    for idx, r in enumerate(routes):
        new = replacement.get(idx, r)
        if len(new) > 2:
            out.append(new)
    return out
