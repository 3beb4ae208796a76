"""Compare the engine with the closed-form maximal-parabolic tables, family by family.

    python scripts/reproduce_tables.py --n-max 6
    python scripts/reproduce_tables.py --families B --n-max 7 --json b.json
"""
import argparse
import json
import time

from flagradon.classical import FAMILIES, sweep_compare


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--families", default="".join(FAMILIES))
    ap.add_argument("--n-max", type=int, default=6)
    ap.add_argument("--a-max", type=int, help="default 2n+2 per rank")
    ap.add_argument("--json", help="write the discrepancies to this file")
    args = ap.parse_args()

    everything = {}
    for fam in args.families:
        t0 = time.perf_counter()
        diffs = sweep_compare(fam, args.n_max, args.a_max)
        print(f"{fam}: n <= {args.n_max}: {len(diffs)} discrepancies ({time.perf_counter() - t0:.1f} s)")
        for d in diffs:
            print(f"    {d}")
        everything[fam] = [d.__dict__ for d in diffs]
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(everything, fh, indent=1, ensure_ascii=False)


if __name__ == "__main__":
    main()
