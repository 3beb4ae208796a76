"""Gamma path vs Xi path on random instances, with timing.

    python scripts/random_dual_path.py --count 10000 --seed 1
"""
import argparse
import sys
import time
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from _sampling import random_instances  # noqa: E402

from flagradon.radon import euler_class_gamma, euler_class_xi, gamma_lambda  # noqa: E402


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=20261014)
    args = ap.parse_args()
    t0 = time.perf_counter()
    sizes, bad = Counter(), 0
    for spec, lam in random_instances(args.count, seed=args.seed):
        entries = gamma_lambda(spec, lam)
        cls = euler_class_gamma(entries)
        if cls != euler_class_xi(spec, lam):
            bad += 1
            print(f"mismatch: {spec} lam={lam}")
        sizes[len(cls)] += 1
    print(f"{args.count} instances, {bad} mismatches, {time.perf_counter() - t0:.1f} s")
    print("number of terms in the Euler class:", dict(sorted(sizes.items())))


if __name__ == "__main__":
    main()
