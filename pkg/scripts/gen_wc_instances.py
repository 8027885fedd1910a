#!/usr/bin/env python3
"""Generate the wc-format benchmark files under data/wc/.

The planar source tables live in solomon_tables.py.  Each customer keeps its
original demand as the delivery quantity and gains a pickup quantity
round(min(x/y, y/x) * demand), so the pickup flow binds capacity on top of
the delivery flow.  Window provenance varies per file and is recorded in
manifest.json:

* rdp101.txt   - verified: reproduces the published optimum exactly.
* rcdp10xx/25xx/50xx.txt - prefix subsets of the mixed-geometry series; the
  *01 files carry the narrow window table; *04/*07 widen those windows
  around the same centers (x4 and x3), clamped to the reachable envelope,
  as stand-ins for the original wide-window variants, which are not
  recoverable (see the distribution note in the README).
* cdp201.txt   - clustered geometry with envelope (non-binding) windows.

Running this script is idempotent; the repo ships its output.
"""

from __future__ import annotations

import json
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from solomon_tables import C_GEOMETRY, R101, RC1_GEOMETRY, RC101_WINDOWS

OUT_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                       os.pardir, "data", "wc")


def pickup_for(x: float, y: float, q: float) -> int:
    r = 0.5 if x <= 0 or y <= 0 else min(x / y, y / x)
    return round(r * q)


def parse_table(text: str, ncols: int):
    rows = []
    for line in text.strip().splitlines():
        vals = [float(v) for v in line.split()]
        assert len(vals) == ncols, line
        rows.append(vals)
    return rows


def widen(a: float, b: float, factor: float, reach: float, horizon: float,
          service: float):
    """Scale a window around its center, clamped to the reachable envelope."""
    center = (a + b) / 2.0
    half = (b - a) / 2.0 * factor
    lo = max(0.0, math.floor(center - half))
    hi = min(math.floor(horizon - reach - service), math.ceil(center + half))
    lo = min(lo, hi)
    return lo, hi


def fmt_row(vals) -> str:
    return "".join(f"{v:>10g}" for v in vals)


def write_wc(path: str, name: str, fleet: int, capacity: int, rows):
    lines = [name, "", "VEHICLE", "NUMBER     CAPACITY",
             f"{fleet:>6}{capacity:>13}", "", "CUSTOMER",
             "CUST NO.  XCOORD.   YCOORD.   DDEMAND   PDEMAND   "
             "READY TIME  DUE DATE   SERVICE TIME", ""]
    for r in rows:
        lines.append(fmt_row(r))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def rc_small(name: str, m: int, factor: float | None):
    geo = parse_table(RC1_GEOMETRY, 4)
    win = {int(r[0]): (r[1], r[2]) for r in parse_table(RC101_WINDOWS, 3)}
    depot = geo[0]
    rows = [[0, depot[1], depot[2], 0, 0, win[0][0], win[0][1], 0]]
    for (i, x, y, q) in geo[1:m + 1]:
        a, b = win[int(i)]
        if factor is not None:
            reach = math.hypot(x - depot[1], y - depot[2])
            a, b = widen(a, b, factor, reach, win[0][1], 10.0)
        rows.append([int(i), x, y, int(q), pickup_for(x, y, q), a, b, 10])
    return rows


def r_medium():
    rows = []
    for (i, x, y, q, a, b) in parse_table(R101, 6):
        i = int(i)
        if i == 0:
            rows.append([0, x, y, 0, 0, a, b, 0])
        else:
            rows.append([i, x, y, int(q), pickup_for(x, y, q), a, b, 10])
    return rows


def c_medium(horizon: float = 3390.0, service: float = 90.0):
    geo = parse_table(C_GEOMETRY, 4)
    depot = geo[0]
    rows = [[0, depot[1], depot[2], 0, 0, 0, horizon, 0]]
    for (i, x, y, q) in geo[1:]:
        reach = math.hypot(x - depot[1], y - depot[2])
        a = math.ceil(reach)
        b = math.floor(horizon - reach - service)
        rows.append([int(i), x, y, int(q), pickup_for(x, y, q), a, b,
                     int(service)])
    return rows


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    manifest = {}

    specs = [
        ("rcdp1001", 10, None), ("rcdp1004", 10, 4.0), ("rcdp1007", 10, 3.0),
        ("rcdp2501", 25, None), ("rcdp2504", 25, 4.0), ("rcdp2507", 25, 3.0),
        ("rcdp5001", 50, None), ("rcdp5004", 50, 4.0), ("rcdp5007", 50, 3.0),
    ]
    published = {
        "rcdp1001": (3, 348.98), "rcdp1004": (2, 216.69),
        "rcdp1007": (2, 310.81), "rcdp2501": (5, 551.05),
        "rcdp2504": (4, 473.46), "rcdp2507": (5, 540.87),
        "rcdp5001": (9, 994.18), "rcdp5007": (7, 809.72),
        "rcdp5004": (6, 733.21),
    }
    for name, m, factor in specs:
        rows = rc_small(name, m, factor)
        write_wc(os.path.join(OUT_DIR, name + ".txt"), name, 25, 200, rows)
        manifest[name] = {
            "m": m,
            "provenance": "reconstructed",
            "window_rule": ("narrow table" if factor is None
                            else f"narrow table widened x{factor:g}"),
            "published_nv": published[name][0],
            "published_td": published[name][1],
        }

    write_wc(os.path.join(OUT_DIR, "rdp101.txt"), "rdp101", 25, 200,
             r_medium())
    manifest["rdp101"] = {
        "m": 100,
        "provenance": "verified",
        "window_rule": "original table",
        "published_nv": 19,
        "published_td": 1650.80,
    }

    write_wc(os.path.join(OUT_DIR, "cdp201.txt"), "cdp201", 25, 700,
             c_medium())
    manifest["cdp201"] = {
        "m": 100,
        "provenance": "reconstructed",
        "window_rule": "reachable envelope",
        "published_nv": 3,
        "published_td": 591.56,
    }

    with open(os.path.join(OUT_DIR, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
    print(f"wrote {len(manifest)} instances to {OUT_DIR}")


if __name__ == "__main__":
    main()
