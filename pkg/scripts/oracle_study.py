#!/usr/bin/env python3
"""Heuristic quality and runtime study for the box packer.

Compares the overload-and-remove heuristic against the exhaustive oracle on
random small instances, then fits the runtime growth exponent on larger
families. Prints a short report.

    python scripts/oracle_study.py --instances 500
"""

import argparse
import time

import numpy as np

from outfitbox.solver import exact_solve, olr_solve


def random_instance(rng):
    n_items = int(rng.integers(3, 13))
    universe = [f"x{i}" for i in range(n_items)]
    prices = {x: int(rng.integers(1, 6)) for x in universe}
    outfits = [
        frozenset(rng.choice(universe, size=int(rng.integers(1, min(4, n_items) + 1)), replace=False).tolist())
        for _ in range(int(rng.integers(1, 9)))
    ]
    return outfits, prices, int(rng.integers(3, 16))


def scaling_family(n, rng):
    universe = [f"x{i}" for i in range(3 * n // 2)]
    prices = {x: int(rng.integers(1, 6)) for x in universe}
    outfits = [frozenset(rng.choice(universe, size=3, replace=False).tolist()) for _ in range(n)]
    return outfits, prices, int(rng.integers(10, 30))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=500)
    parser.add_argument("--seed", type=int, default=20240601)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    ratios = []
    optimal_hits = 0
    for _ in range(args.instances):
        outfits, prices, budget = random_instance(rng)
        heur = olr_solve(outfits, prices, budget)
        opt = exact_solve(outfits, prices, budget)
        assert heur.total <= budget
        assert len(heur.indices) <= len(opt.indices)
        if opt.indices:
            ratios.append(len(heur.indices) / len(opt.indices))
            optimal_hits += len(heur.indices) == len(opt.indices)
    print(f"instances with a non-empty optimum: {len(ratios)}")
    print(f"mean optimality ratio: {np.mean(ratios):.4f}")
    print(f"optimal boxes found:   {optimal_hits}/{len(ratios)} ({100 * optimal_hits / len(ratios):.1f}%)")

    sizes = [24, 48, 96, 192]
    means = []
    for n in sizes:
        reps = []
        for _ in range(4):
            outfits, prices, budget = scaling_family(n, rng)
            t0 = time.perf_counter()
            olr_solve(outfits, prices, budget)
            reps.append(time.perf_counter() - t0)
        means.append(float(np.mean(reps)))
        print(f"n={n:4d}: {means[-1] * 1000:8.2f} ms")
    exponent = float(np.polyfit(np.log(sizes), np.log(means), 1)[0])
    print(f"fitted runtime exponent: {exponent:.2f}")


if __name__ == "__main__":
    main()
