"""Solver for vehicle routing with simultaneous pickup-delivery and time windows."""

from .model import (FleetExhausted, FormatError, Instance, InsertionImpossible,
                    Node, Route, Solution, SolverError, check_solution,
                    evaluate_route_direct, total_cost)
from .construct import RcrsWeights, rcrs_construct, regret_insert
from .memetic import MemeticParams, RunReport, default_pop_size, run
from .search import EscapeParams, default_escape_params, local_search

__version__ = "0.1.0"

__all__ = [
    "EscapeParams",
    "FleetExhausted",
    "FormatError",
    "Instance",
    "InsertionImpossible",
    "MemeticParams",
    "Node",
    "RcrsWeights",
    "Route",
    "RunReport",
    "Solution",
    "SolverError",
    "check_solution",
    "default_escape_params",
    "default_pop_size",
    "evaluate_route_direct",
    "local_search",
    "rcrs_construct",
    "regret_insert",
    "run",
    "total_cost",
]
