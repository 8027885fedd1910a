"""Command line: solve an instance, verify a solution file, run a benchmark.

Machine-readable output goes to stdout, diagnostics to stderr.  Exit codes:
0 success, 1 I/O or argument errors, 2 infeasible construction, 3 failed
verification.
"""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
from pathlib import Path

from . import __version__, io, memetic, model
from .model import FleetExhausted, FormatError, InsertionImpossible

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFY = 3

#: Reported figures must match recomputation within this (2-decimal printing).
REPORT_TOL = 0.005


def _err(msg: str) -> None:
    print(f"spdtw: {msg}", file=sys.stderr)


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", required=True, help="instance file path")
    p.add_argument("--format", choices=("wc", "canonical"), default="wc")
    p.add_argument("--u1", type=float, default=2000.0,
                   help="dispatch cost per vehicle (wc format only)")
    p.add_argument("--u2", type=float, default=1.0,
                   help="cost per unit travel distance (wc format only)")


def _add_solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pop", type=int, default=None,
                   help="population size (perfect square; default by size)")
    p.add_argument("--gmax", type=int, default=50,
                   help="stop after this many generations without improvement")
    p.add_argument("--omega1", type=float, default=0.2)
    p.add_argument("--omega2", type=float, default=0.4)
    p.add_argument("--time-limit", type=float, default=None,
                   help="wall-clock cap in seconds")


def _params_from_args(inst: model.Instance, args,
                      seed: int) -> memetic.MemeticParams:
    n = args.pop if args.pop is not None else memetic.default_pop_size(
        inst.num_customers)
    esc = memetic.search.default_escape_params(inst)
    if (args.omega1, args.omega2) != (esc.omega1, esc.omega2):
        esc = memetic.search.EscapeParams(
            omega1=args.omega1, omega2=args.omega2,
            corr_eta=esc.corr_eta, corr_penalty=esc.corr_penalty)
    return memetic.MemeticParams(n=n, g_max=args.gmax, escape=esc,
                                 seed=seed, time_limit=args.time_limit)


def cmd_solve(args) -> int:
    try:
        inst = io.load_instance(args.instance, args.format, args.u1, args.u2)
        params = _params_from_args(inst, args, args.seed)
    except (OSError, FormatError, ValueError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    try:
        report = memetic.run(inst, params)
    except (FleetExhausted, InsertionImpossible) as exc:
        _err(f"construction infeasible: {exc}")
        return EXIT_INFEASIBLE

    sf = io.write_solution(inst, report.best, seed=args.seed,
                           version=__version__)
    if args.out:
        try:
            Path(args.out).write_text(io.solution_to_text(sf),
                                      encoding="utf-8")
        except OSError as exc:
            _err(str(exc))
            return EXIT_USAGE
    if args.json:
        print(json.dumps({
            "instance": inst.name,
            "nv": report.nv,
            "td": round(report.td, 2),
            "tc": round(report.total_cost, 2),
            "generations": report.generations,
            "seconds": round(report.wall_time, 3),
            "seed": args.seed,
        }, sort_keys=True))
    else:
        print(f"{inst.name} {report.nv} {report.td:.2f} "
              f"{report.total_cost:.2f} {report.generations} "
              f"{report.wall_time:.2f} {args.seed}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        inst = io.load_instance(args.instance, args.format, args.u1, args.u2)
        text = Path(args.solution).read_text(encoding="utf-8",
                                             errors="replace")
    except (OSError, FormatError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    try:
        sf = io.read_solution(text, inst)
        solution = sf.to_solution()
    except (FormatError, ValueError) as exc:
        _err(f"verification failed: {exc}")
        return EXIT_VERIFY

    # figures are recomputed against the parameters recorded in the file
    inst = model.Instance(list(inst.nodes), inst.dist, inst.time,
                          inst.fleet_size, inst.capacity,
                          dispatch_cost=sf.u1, unit_cost=sf.u2,
                          name=inst.name)
    report = model.check_solution(inst, solution)
    failures = [v.message for v in report.violations]
    td = sum(model.evaluate_route_direct(inst, r).td
             for r in solution.routes)
    tc = inst.dispatch_cost * solution.num_routes + inst.unit_cost * td
    if sf.nv != solution.num_routes:
        failures.append(f"NV mismatch: file says {sf.nv}, "
                        f"found {solution.num_routes}")
    if abs(sf.td - td) > REPORT_TOL:
        failures.append(f"TD mismatch: file says {sf.td:.2f}, "
                        f"recomputed {td:.2f}")
    if abs(sf.tc - tc) > REPORT_TOL:
        failures.append(f"TC mismatch: file says {sf.tc:.2f}, "
                        f"recomputed {tc:.2f}")
    if failures:
        for msg in failures:
            _err(msg)
        return EXIT_VERIFY
    print(f"{sf.instance} verified: NV={sf.nv} TD={td:.2f} TC={tc:.2f}")
    return EXIT_OK


def cmd_bench(args) -> int:
    suite = Path(args.suite)
    if not suite.is_dir():
        _err(f"{suite} is not a directory")
        return EXIT_USAGE
    paths = sorted(p for p in suite.iterdir() if p.is_file())
    if not paths:
        _err(f"no instance files under {suite}")
        return EXIT_USAGE

    rows = []
    all_ok = True
    for path in paths:
        try:
            inst = io.load_instance(str(path), args.format, args.u1, args.u2)
        except (OSError, FormatError) as exc:
            _err(f"{path.name}: {exc}")
            all_ok = False
            continue
        per_instance = []
        for k in range(args.runs):
            seed = args.seed_base + k
            try:
                params = _params_from_args(inst, args, seed)
                rep = memetic.run(inst, params)
            except (FleetExhausted, InsertionImpossible, ValueError) as exc:
                _err(f"{inst.name} seed {seed}: {exc}")
                rows.append([inst.name, inst.num_customers, seed,
                             "", "", "", "", ""])
                all_ok = False
                continue
            rows.append([inst.name, inst.num_customers, seed, rep.nv,
                         f"{rep.td:.2f}", f"{rep.total_cost:.2f}",
                         rep.generations, f"{rep.wall_time:.2f}"])
            per_instance.append(rep)
        if per_instance:
            nvs = [r.nv for r in per_instance]
            tds = [r.td for r in per_instance]
            tcs = [r.total_cost for r in per_instance]
            best = min(per_instance, key=lambda r: r.total_cost)
            mean_row = [inst.name, inst.num_customers, "mean",
                        f"{statistics.fmean(nvs):.2f}",
                        f"{statistics.fmean(tds):.2f}",
                        f"{statistics.fmean(tcs):.2f}",
                        f"{statistics.fmean(r.generations for r in per_instance):.2f}",
                        f"{statistics.fmean(r.wall_time for r in per_instance):.2f}"]
            std_row = [inst.name, inst.num_customers, "std",
                       f"{statistics.pstdev(nvs):.2f}",
                       f"{statistics.pstdev(tds):.2f}",
                       f"{statistics.pstdev(tcs):.2f}", "", ""]
            best_row = [inst.name, inst.num_customers, "best", best.nv,
                        f"{best.td:.2f}", f"{best.total_cost:.2f}",
                        best.generations, f"{best.wall_time:.2f}"]
            rows.extend([mean_row, std_row, best_row])

    header = ["instance", "M", "seed", "NV", "TD", "TC",
              "generations", "seconds"]
    if args.csv:
        try:
            with open(args.csv, "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh)
                w.writerow(header)
                w.writerows(rows)
        except OSError as exc:
            _err(str(exc))
            return EXIT_USAGE
    else:
        w = csv.writer(sys.stdout)
        w.writerow(header)
        w.writerows(rows)
    return EXIT_OK if all_ok else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spdtw",
        description="Memetic solver for vehicle routing with simultaneous "
                    "pickup-delivery and time windows")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    _add_instance_args(p)
    _add_solver_args(p)
    p.add_argument("--out", default=None, help="write the solution file here")
    p.add_argument("--json", action="store_true",
                   help="emit a JSON report on stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="recompute and check a solution file")
    _add_instance_args(p)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a directory of instances")
    p.add_argument("--suite", required=True)
    p.add_argument("--format", choices=("wc", "canonical"), default="wc")
    p.add_argument("--u1", type=float, default=2000.0)
    p.add_argument("--u2", type=float, default=1.0)
    _add_solver_args(p)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--csv", default=None, help="CSV output path")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
