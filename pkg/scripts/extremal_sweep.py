"""Search every ordered pair I != J of node subsets for an extremal case
whose Radon transform is not concentrated in degree 0.

    python scripts/extremal_sweep.py --max-rank 5
"""
import argparse
import time

from flagradon import root_system
from flagradon.radon import extremal_violations

G2 = ((2, -1), (-3, 2))
F4 = ((2, -1, 0, 0), (-1, 2, -2, 0), (0, -1, 2, -1), (0, 0, -1, 2))


def systems(max_rank):
    out = [root_system("A", n) for n in range(1, max_rank + 1)]
    out += [root_system("B", n) for n in range(2, max_rank + 1)]
    out += [root_system("C", n) for n in range(3, max_rank + 1)]
    out += [root_system("D", n) for n in range(4, max_rank + 1)]
    out += [root_system("generic", 2, G2)]
    if max_rank >= 4:
        out.append(root_system("generic", 4, F4))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-rank", type=int, default=5)
    args = ap.parse_args()
    total = 0
    for rs in systems(args.max_rank):
        t0 = time.perf_counter()
        bad = list(extremal_violations(rs))
        pairs = (1 << rs.rank) * ((1 << rs.rank) - 1)
        total += len(bad)
        print(f"{rs}: {pairs} pairs, {len(bad)} not concentrated ({time.perf_counter() - t0:.1f} s)")
        for spec, rep in bad:
            print(f"    I={spec.I} J={spec.J} lam={rep.lam}: {[str(e.x) for e in rep.witnesses['concentrated']]}")
    print(f"total violations: {total}")


if __name__ == "__main__":
    main()
