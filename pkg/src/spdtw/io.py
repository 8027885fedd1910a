"""Parsing and serialization of instances and solutions.

Three formats live here, all documented bit-exactly in ``docs/formats.md``:

* the ``wc`` text format: Solomon-style planar instances with split
  delivery/pickup demands (distances are exact Euclidean doubles, travel
  time equals distance);
* the ``canonical`` JSON format, which can carry explicit distance/time
  matrices for non-planar instances;
* the line-oriented solution file, which stores the routes plus the figures
  claimed for them so a verifier can recompute and compare.

Parsers raise :class:`~spdtw.model.FormatError` on malformed input, never
anything else.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .model import (DEPOT, FormatError, Instance, Node, Solution,
                    evaluate_route_direct)


def _tokens_numeric(parts: list[str]) -> bool:
    try:
        for p in parts:
            float(p)
    except ValueError:
        return False
    return True


def parse_wc(text: str, u1: float = 2000.0, u2: float = 1.0,
             rounding: str = "exact") -> Instance:
    """Parse a wc-format instance.

    Layout: an instance-name line, a VEHICLE section (fleet size and
    capacity), and a CUSTOMER table with one row of
    ``id x y delivery pickup ready due service`` per node, depot as id 0.
    Whitespace is free-form.  ``u1``/``u2`` are not part of the file and come
    from the caller.  ``rounding="truncate1"`` truncates each distance to one
    decimal for cross-checking against conventions that do; the default keeps
    exact doubles.
    """
    if not isinstance(text, str):
        raise FormatError("expected text input")
    if rounding not in ("exact", "truncate1"):
        raise FormatError(f"unknown rounding mode {rounding!r}")
    lines = text.splitlines()

    name = None
    vehicle_at = None
    customer_at = None
    for idx, raw in enumerate(lines):
        stripped = raw.strip()
        if not stripped:
            continue
        if name is None:
            name = stripped
            continue
        upper = stripped.upper()
        if upper.startswith("VEHICLE") and vehicle_at is None:
            vehicle_at = idx
        elif upper.startswith("CUSTOMER") and vehicle_at is not None:
            customer_at = idx
            break
    if name is None:
        raise FormatError("empty instance file")
    if vehicle_at is None:
        raise FormatError("missing VEHICLE section")
    if customer_at is None:
        raise FormatError("missing CUSTOMER section")

    fleet = capacity = None
    for idx in range(vehicle_at + 1, customer_at):
        parts = lines[idx].split()
        if len(parts) == 2 and _tokens_numeric(parts):
            fleet = int(float(parts[0]))
            capacity = float(parts[1])
            break
    if fleet is None:
        raise FormatError("VEHICLE section lacks a '<number> <capacity>' row",
                          line=vehicle_at + 1)

    rows: dict[int, Node] = {}
    for idx in range(customer_at + 1, len(lines)):
        parts = lines[idx].split()
        if not parts:
            continue
        if not _tokens_numeric(parts):
            continue        # column-header text
        if len(parts) != 8:
            raise FormatError(
                f"customer row needs 8 fields, got {len(parts)}",
                line=idx + 1)
        vals = [float(p) for p in parts]
        nid = int(vals[0])
        if nid != vals[0] or nid < 0:
            raise FormatError(f"bad node id {parts[0]}", line=idx + 1)
        if nid in rows:
            raise FormatError(f"duplicate node id {nid}", line=idx + 1)
        try:
            rows[nid] = Node(id=nid, x=vals[1], y=vals[2], delivery=vals[3],
                             pickup=vals[4], tw_start=vals[5], tw_end=vals[6],
                             service=vals[7])
        except ValueError as exc:
            raise FormatError(str(exc), line=idx + 1) from exc

    if DEPOT not in rows:
        raise FormatError("missing depot row (id 0)")
    ids = sorted(rows)
    if ids != list(range(len(rows))):
        raise FormatError(f"node ids must be contiguous 0..{len(rows) - 1}")
    nodes = [rows[i] for i in ids]

    try:
        inst = Instance.from_coords(nodes, fleet, capacity,
                                    dispatch_cost=u1, unit_cost=u2, name=name)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if rounding == "truncate1":
        dist = np.floor(inst.dist * 10.0) / 10.0
        inst = Instance(nodes, dist, dist.copy(), fleet, capacity,
                        dispatch_cost=u1, unit_cost=u2, name=name)
    return inst


CANONICAL_VERSION = 1


def parse_canonical(text: str) -> Instance:
    """Parse the canonical JSON instance document.

    The document must supply either per-node coordinates or full ``dist`` and
    ``time`` matrices; explicit matrices win when both are present.  Fleet
    size, capacity and the two cost coefficients are always explicit.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("document root must be an object")
    if doc.get("format_version") != CANONICAL_VERSION:
        raise FormatError(
            f"unsupported format_version {doc.get('format_version')!r}")
    for key in ("fleet_size", "capacity", "dispatch_cost", "unit_cost",
                "nodes"):
        if key not in doc:
            raise FormatError(f"missing required field {key!r}")
    raw_nodes = doc["nodes"]
    if not isinstance(raw_nodes, list) or not raw_nodes:
        raise FormatError("'nodes' must be a nonempty array")

    nodes = []
    try:
        for k, nd in enumerate(raw_nodes):
            nodes.append(Node(
                id=int(nd["id"]), x=nd.get("x"), y=nd.get("y"),
                delivery=float(nd["delivery"]), pickup=float(nd["pickup"]),
                tw_start=float(nd["tw_start"]), tw_end=float(nd["tw_end"]),
                service=float(nd["service"])))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad node record: {exc}") from exc

    n = len(nodes)
    try:
        if "dist" in doc or "time" in doc:
            if "dist" not in doc or "time" not in doc:
                raise FormatError("dist and time matrices must both be given")
            dist = np.asarray(doc["dist"], dtype=np.float64)
            time = np.asarray(doc["time"], dtype=np.float64)
            if dist.shape != (n, n) or time.shape != (n, n):
                raise FormatError(
                    f"matrices must be {n}x{n} to match the node count")
            return Instance(nodes, dist, time,
                            int(doc["fleet_size"]), float(doc["capacity"]),
                            float(doc["dispatch_cost"]),
                            float(doc["unit_cost"]),
                            name=str(doc.get("name", "")))
        return Instance.from_coords(
            nodes, int(doc["fleet_size"]), float(doc["capacity"]),
            float(doc["dispatch_cost"]), float(doc["unit_cost"]),
            name=str(doc.get("name", "")))
    except FormatError:
        raise
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def serialize_canonical(inst: Instance) -> str:
    """Write an instance as a canonical document; reparses to an equal one."""
    doc = {
        "format_version": CANONICAL_VERSION,
        "name": inst.name,
        "fleet_size": inst.fleet_size,
        "capacity": inst.capacity,
        "dispatch_cost": inst.dispatch_cost,
        "unit_cost": inst.unit_cost,
        "nodes": [],
        "dist": inst.dist.tolist(),
        "time": inst.time.tolist(),
    }
    for nd in inst.nodes:
        rec = {"id": nd.id, "delivery": nd.delivery, "pickup": nd.pickup,
               "tw_start": nd.tw_start, "tw_end": nd.tw_end,
               "service": nd.service}
        if nd.x is not None:
            rec["x"] = nd.x
            rec["y"] = nd.y
        doc["nodes"].append(rec)
    return json.dumps(doc, indent=1)


def load_instance(path: str, fmt: str, u1: float = 2000.0,
                  u2: float = 1.0) -> Instance:
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        text = fh.read()
    if fmt == "wc":
        return parse_wc(text, u1=u1, u2=u2)
    if fmt == "canonical":
        return parse_canonical(text)
    raise FormatError(f"unknown instance format {fmt!r}")


@dataclass
class SolutionFile:
    """A solution plus the figures claimed for it and solver provenance."""

    instance: str
    u1: float
    u2: float
    routes: list[list[int]]
    nv: int
    td: float
    tc: float
    seed: int | None = None
    version: str = ""

    def to_solution(self) -> Solution:
        return Solution([(DEPOT,) + tuple(r) + (DEPOT,) for r in self.routes])


def write_solution(inst: Instance, s: Solution, seed: int | None = None,
                   version: str = "") -> SolutionFile:
    """Build the interchange record for a complete solution."""
    td = sum(evaluate_route_direct(inst, r).td for r in s.routes)
    tc = inst.dispatch_cost * s.num_routes + inst.unit_cost * td
    return SolutionFile(
        instance=inst.name,
        u1=inst.dispatch_cost,
        u2=inst.unit_cost,
        routes=[list(r.customers) for r in s.routes],
        nv=s.num_routes,
        td=td,
        tc=tc,
        seed=seed,
        version=version,
    )


def solution_to_text(sf: SolutionFile) -> str:
    """Deterministic, human-diffable rendering: one route per line."""
    out = [f"instance: {sf.instance}"]
    out.append(f"u1: {sf.u1:g}")
    out.append(f"u2: {sf.u2:g}")
    if sf.seed is not None:
        out.append(f"seed: {sf.seed}")
    if sf.version:
        out.append(f"version: {sf.version}")
    for k, r in enumerate(sf.routes, start=1):
        out.append(f"route {k}: " + " ".join(str(v) for v in r))
    out.append(f"NV: {sf.nv}")
    out.append(f"TD: {sf.td:.2f}")
    out.append(f"TC: {sf.tc:.2f}")
    return "\n".join(out) + "\n"


def read_solution(text: str, inst: Instance | None = None) -> SolutionFile:
    """Parse a solution file; rejects duplicate or unknown customers.

    Unknown-customer checks need the instance and are skipped without one.
    """
    if not isinstance(text, str):
        raise FormatError("expected text input")
    meta: dict[str, str] = {}
    routes: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("route"):
            head, _, rest = line.partition(":")
            parts = rest.split()
            if not parts or not all(p.lstrip("-").isdigit() for p in parts):
                raise FormatError("route line must list customer ids",
                                  line=lineno)
            routes.append([int(p) for p in parts])
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise FormatError(f"unparseable line {line!r}", line=lineno)
        meta[key.strip().lower()] = value.strip()

    for key in ("instance", "nv", "td", "tc"):
        if key not in meta:
            raise FormatError(f"missing {key!r} line")
    try:
        sf = SolutionFile(
            instance=meta["instance"],
            u1=float(meta.get("u1", 2000.0)),
            u2=float(meta.get("u2", 1.0)),
            routes=routes,
            nv=int(meta["nv"]),
            td=float(meta["td"]),
            tc=float(meta["tc"]),
            seed=int(meta["seed"]) if "seed" in meta else None,
            version=meta.get("version", ""),
        )
    except ValueError as exc:
        raise FormatError(f"bad numeric field: {exc}") from exc

    seen: set[int] = set()
    for r in sf.routes:
        for v in r:
            if v in seen:
                raise FormatError(f"customer {v} appears twice")
            if v < 1:
                raise FormatError(f"bad customer id {v}")
            if inst is not None and v > inst.num_customers:
                raise FormatError(f"unknown customer {v}")
            seen.add(v)
    return sf
