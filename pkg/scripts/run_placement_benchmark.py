#!/usr/bin/env python3
"""Benchmark the exact placement solver against the linear heuristic.

Prints, per instance size, the mean energy ratio optimal/heuristic and the
wall times of both solvers.  The exact branch-and-bound scales badly with
instance size, which is the point of the comparison.
"""
import argparse
import time

import numpy as np

from edgekit.placement import (
    Infeasible,
    generate_application,
    generate_network,
    solve_heuristic,
    solve_optimal,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=str, default="5x3,8x5,10x8,15x12",
                    help="comma-separated nodesXcomponents pairs")
    ap.add_argument("--runs", type=int, default=5)
    ap.add_argument("--shape", choices=["long", "wide"], default="long")
    ap.add_argument("--time-budget", type=float, default=30.0)
    args = ap.parse_args()

    for size in args.sizes.split(","):
        m, n = (int(x) for x in size.lower().split("x"))
        ratios, t_opt, t_heur = [], [], []
        done = 0
        seed = 0
        while done < args.runs and seed < 100 * args.runs:
            seed += 1
            try:
                net = generate_network(m, seed=seed)
                app = generate_application(args.shape, n, seed=seed + 1000)
                t0 = time.perf_counter()
                heur = solve_heuristic(app, net)
                t_heur.append(time.perf_counter() - t0)
                t0 = time.perf_counter()
                opt = solve_optimal(app, net, time_budget=args.time_budget)
                t_opt.append(time.perf_counter() - t0)
            except Infeasible:
                continue
            ratios.append(opt.total_energy / heur.total_energy)
            done += 1
        print(
            f"{m:3d} nodes x {n:2d} components: ratio opt/heur "
            f"{np.mean(ratios):.3f}, exact {np.mean(t_opt)*1e3:8.1f} ms, "
            f"heuristic {np.mean(t_heur)*1e3:6.1f} ms"
        )


if __name__ == "__main__":
    main()
