#!/usr/bin/env python3
"""Hybrid solvers vs classical baselines on seeded king-graph spin glasses.

Runs quantum-assisted population annealing and parallel tempering against
classical SA/PT under matched move budgets and prints one row per
(instance, algorithm) with the brute-force ground energy for reference.

The reverse-anneal move kernel is cached per excursion depth, so the first
instance pays the dense-simulation cost and later sweeps reuse it.

Usage:
    python scripts/hybrid_benchmark.py --rows 2 --cols 4 --instances 5
"""

import argparse
import sys
import time

from qals import BathParams, HybridConfig, LocalSearchParams, Schedule
from qals import efftemp, hybrid, ising, oracle


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=2)
    ap.add_argument("--cols", type=int, default=4)
    ap.add_argument("--instances", type=int, default=5)
    ap.add_argument("--first-seed", type=int, default=100)
    ap.add_argument("--solver-seed", type=int, default=7)
    ap.add_argument("--population", type=int, default=64)
    ap.add_argument("--sweeps", type=int, default=50)
    args = ap.parse_args(argv)

    sch = Schedule()
    move = LocalSearchParams(
        s_prime=1.0, tau=8.0, ramp=0.5, bath=BathParams(0.3, 0.1, 8.0),
        samples=1, seed=0,
    )
    qpa_ladder = tuple(
        efftemp.ladder(sch, [0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8])
    )
    qpt_ladder = tuple(efftemp.ladder(sch, [0.5, 0.6, 0.7, 0.8]))
    graph = ising.king_graph(args.rows, args.cols)

    print("seed,algorithm,best_energy,ground_energy,hit,moves,seconds")
    for seed in range(args.first_seed, args.first_seed + args.instances):
        prob = ising.random_instance(graph, "pm_one", seed)
        e0 = oracle.brute_force(prob).ground_energy
        runs = []
        t0 = time.monotonic()
        runs.append(hybrid.q_population_annealing(
            prob, sch,
            HybridConfig(ladder=qpa_ladder, population=args.population,
                         sweeps=1, move=move, seed=args.solver_seed),
        ))
        runs.append(hybrid.q_parallel_tempering(
            prob, sch,
            HybridConfig(ladder=qpt_ladder, population=len(qpt_ladder),
                         sweeps=args.sweeps, move=move, seed=args.solver_seed),
        ))
        # classical baselines under the same move budgets
        runs.append(hybrid.classical_sa(
            prob, [p.T_eff for p in qpa_ladder],
            sweeps=args.population, seed=args.solver_seed,
        ))
        runs.append(hybrid.classical_pt(
            prob, [p.T_eff for p in qpt_ladder],
            sweeps=args.sweeps, seed=args.solver_seed,
        ))
        elapsed = time.monotonic() - t0
        for res in runs:
            hit = int(abs(res.best_energy - e0) < 1e-9)
            print(f"{seed},{res.algorithm},{res.best_energy!r},{e0!r},"
                  f"{hit},{res.move_budget},{elapsed:.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
