#!/usr/bin/env python3
"""
Benchmark the exact radius solvers against the grid-refinement oracles.

This script reports:
- time per polygon of the inradius and circumradius solvers
- time per polygon of the grid oracles they are checked against
- the largest disagreement between the two
- how far measured radii stay below the bounds (bound slack)

Usage:
    python benchmarks/vs_oracles.py [--size 100] [--seed 0]
"""

import argparse
import statistics
import time
from typing import Callable, List

from hadamard_radii import (
    ConvexPolygon,
    CurvatureBand,
    GeneratorConfig,
    circumradius,
    generate_corpus,
    inradius,
    verify_theorem2,
)
from hadamard_radii.extremal import circumradius_oracle, inradius_oracle


def benchmark_function(func: Callable, polygons: List[ConvexPolygon], name: str) -> dict:
    """Time a function once per polygon."""
    times = []
    values = []
    for polygon in polygons:
        start = time.perf_counter()
        values.append(func(polygon))
        times.append((time.perf_counter() - start) * 1000)  # ms

    return {
        "name": name,
        "mean_ms": statistics.mean(times),
        "median_ms": statistics.median(times),
        "min_ms": min(times),
        "max_ms": max(times),
        "values": values,
    }


def slack_summary(polygons: List[ConvexPolygon], band: CurvatureBand, rho: float) -> None:
    """Print how loose each inequality is over the corpus."""
    print("\n" + "=" * 60)
    print("BOUND SLACK")
    print("=" * 60)

    reports = [verify_theorem2(p, band, rho) for p in polygons]
    names = sorted(reports[0].margins) if reports and reports[0].margins else []
    print(f"\n{'Inequality':<15} {'Min':<12} {'Median':<12} {'Max':<12}")
    print("-" * 51)
    for name in names:
        margins = [r.margins[name] for r in reports if name in r.margins]
        print(f"{name:<15} {min(margins):<12.6f} {statistics.median(margins):<12.6f} {max(margins):<12.6f}")

    ratios = [r.r / r.r_bound for r in reports if r.r_bound]
    if ratios:
        print(f"\nLargest r / r_bound: {max(ratios):.4f} (the bound is attained only by circles)")


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--size", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print("=" * 60)
    print("HADAMARD-RADII SOLVER BENCHMARK")
    print("=" * 60)

    config = GeneratorConfig(k1=1.0, k2=0.5, rho=0.5, size=args.size, seed=args.seed)
    polygons = generate_corpus(config).polygons
    print(f"\nPolygons: {len(polygons)} (vertex counts {config.n_range[0]}-{config.n_range[1]})")

    print("\nRunning exact solvers...")
    exact_r = benchmark_function(lambda p: inradius(p).r, polygons, "inradius")
    exact_R = benchmark_function(lambda p: circumradius(p).R, polygons, "circumradius")

    print("Running grid oracles...")
    oracle_r = benchmark_function(lambda p: inradius_oracle(p)[1], polygons, "inradius oracle")
    oracle_R = benchmark_function(
        lambda p: circumradius_oracle(p.vertices, p.k)[1], polygons, "circumradius oracle"
    )

    print("\n" + "=" * 60)
    print("BENCHMARK RESULTS")
    print("=" * 60)

    results = [exact_r, exact_R, oracle_r, oracle_R]
    print(f"\n{'Method':<25} {'Mean (ms)':<12} {'Median (ms)':<12} {'Min (ms)':<10} {'Max (ms)':<10}")
    print("-" * 70)
    for r in results:
        print(f"{r['name']:<25} {r['mean_ms']:<12.3f} {r['median_ms']:<12.3f} {r['min_ms']:<10.3f} {r['max_ms']:<10.3f}")

    print(f"\nInradius oracle is {oracle_r['mean_ms'] / exact_r['mean_ms']:.1f}x slower than the solver")
    print(f"Circumradius oracle is {oracle_R['mean_ms'] / exact_R['mean_ms']:.1f}x slower than the solver")

    worst_r = max(abs(a - b) for a, b in zip(exact_r["values"], oracle_r["values"]))
    worst_R = max(abs(a - b) for a, b in zip(exact_R["values"], oracle_R["values"]))
    print(f"\nLargest |r - r_oracle|: {worst_r:.2e}")
    print(f"Largest |R - R_oracle|: {worst_R:.2e}")

    slack_summary(polygons, config.band, config.rho)


if __name__ == "__main__":
    main()
