"""Shared fixtures: random instance factories sized for fast tests."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest

from spdtw.model import Instance, Node

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "wc"


def random_instance(m: int, seed: int = 0, *, tw: str = "mixed",
                    capacity: float = 150.0, fleet: int | None = None,
                    u1: float = 2000.0, u2: float = 1.0) -> Instance:
    """Random planar instance on [0,100]^2 with a centered depot.

    Windows always admit a single-customer round trip, so construction never
    dead-ends.  ``tw`` picks the window width regime: "tight" binds hard,
    "loose" barely binds, "none" makes scheduling free, "mixed" draws widths
    across both regimes.
    """
    rng = np.random.default_rng(seed)
    horizon = 1000.0
    nodes = [Node(0, 0.0, 0.0, 0.0, horizon, 0.0, x=50.0, y=50.0)]
    for i in range(1, m + 1):
        x, y = (float(v) for v in rng.uniform(0.0, 100.0, 2))
        reach = math.hypot(x - 50.0, y - 50.0)
        delivery = float(rng.integers(0, 31))
        pickup = float(rng.integers(0, 31))
        if tw == "none":
            a, b = 0.0, horizon - reach - 20.0
        else:
            widths = {"tight": (40.0, 120.0), "loose": (250.0, 600.0),
                      "mixed": (40.0, 600.0)}[tw]
            a = float(rng.uniform(reach, 600.0))
            b = a + float(rng.uniform(*widths))
        service = float(rng.uniform(1.0, 10.0))
        nodes.append(Node(i, delivery, pickup, a, min(b, horizon - reach - 12.0),
                          service, x=x, y=y))
    return Instance.from_coords(nodes, fleet if fleet is not None else m,
                                capacity, u1, u2, name=f"rand{m}s{seed}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR
