"""Where the type-B maximal-parabolic table and the engine part ways.

Three checks, for n up to --n-max:
  1. the single term at a = 2n-p-q (p < q, 2n-2p-q <= 0): engine b vs the table's 2(n-q);
  2. for q < p < n, the set of a where the engine finds R = 0, vs the union of the table's bands;
  3. B2 and C2 are one root system with the nodes swapped, so their tables must agree.
"""
import argparse

from flagradon import classify
from flagradon.classical import MaximalSpec, oracle_radon, oracle_rows


def engine(n, p, q, a, family="B"):
    ms = MaximalSpec(family, n, p, q, a)
    return classify(ms.correspondence(), ms.lam)


def single_term_row(n_max):
    print("1. single term at a = 2n-p-q, p < q <= n, 2n-2p-q <= 0")
    print(f"   {'n':>2} {'p':>2} {'q':>2} {'a':>2}  {'engine b':>8} {'shift':>5}  {'2(n-q)':>6} {'2n-p-q':>6} {'2(n-p)':>6}")
    for n in range(2, n_max + 1):
        for p in range(1, n):
            for q in range(p + 1, n + 1):
                if 2 * n - 2 * p - q > 0:
                    continue
                a = 2 * n - p - q
                rep = engine(n, p, q, a)
                b, s = ("-", "-") if rep.single_term is None else (-rep.single_term[0].coeffs[q - 1], rep.single_term[1])
                flag = "" if b == 2 * (n - q) else "  <-"
                print(f"   {n:>2} {p:>2} {q:>2} {a:>2}  {b:>8} {s:>5}  {2 * (n - q):>6} {2 * n - p - q:>6} {2 * (n - p):>6}{flag}")


def vanishing_bands(n_max):
    print("\n2. q < p < n: a with R = 0 (engine) vs the table's bands")
    for n in range(3, n_max + 1):
        for p in range(2, n):
            for q in range(1, p):
                top = 2 * n + 2
                got = [a for a in range(1, top + 1) if engine(n, p, q, a).vanishes]
                claimed = [a for a in range(1, top + 1)
                           if any(type(v).__name__ == "Vanishes" for _, v in oracle_rows(MaximalSpec("B", n, p, q, a)))]
                expected = list(range(q + 1, 2 * n - p - q))
                if set(claimed) - set(got):
                    note = "  <- table claims R = 0 where the engine does not"
                elif got != claimed:
                    note = "  (table silent at some a)"
                else:
                    note = ""
                print(f"   B{n} p={p} q={q}: engine {got}  table {claimed}  q<a<2n-p-q {expected}{note}")


def b2_vs_c2():
    print("\n3. B2 vs C2 (node 1 of B2 is node 2 of C2)")
    for p, q in ((1, 2), (2, 1)):
        for a in range(1, 7):
            b = oracle_radon(MaximalSpec("B", 2, p, q, a))
            c = oracle_radon(MaximalSpec("C", 2, 3 - p, 3 - q, a))
            rep = engine(2, p, q, a)
            st = None if rep.single_term is None else (str(rep.single_term[0]), rep.single_term[1])
            note = "" if b == c else "  <- tables disagree"
            print(f"   p={p} q={q} a={a}: B table {b}, C table {c}, engine {'R = 0' if rep.vanishes else st}{note}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--n-max", type=int, default=7)
    args = ap.parse_args()
    single_term_row(args.n_max)
    vanishing_bands(args.n_max)
    b2_vs_c2()


if __name__ == "__main__":
    main()
