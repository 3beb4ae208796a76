"""Command-line front end.

    flagradon radon    --type A --rank 4 --p 3 --q 1 --a 2
    flagradon extremal --type C --rank 3 --p 1 --q 2 --json
    flagradon sweep    --family D --n-max 6 --a-max 14

Exit codes: 0 ok, 1 sweep mismatch, 2 usage, 3 domain precondition,
4 budget exceeded, 5 no extremal pair.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import classical, radon
from .errors import (
    BudgetExceeded,
    ConsistencyError,
    DimensionMismatch,
    InvalidCartanType,
    InvalidSpec,
    NoExtremalPair,
    NotDominant,
    NotNested,
    UnsupportedFamily,
)
from .parabolic import CorrespondenceSpec, gamma_IJ
from .root_system import CLASSICAL, RootSystem, Weight, root_system, weight_to_epsilon
from .weyl import DEFAULT_BUDGET, WeylElement

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET, EXIT_NO_EXTREMAL = range(6)


class UsageError(Exception):
    pass


# --- parsing ----------------------------------------------------------------


def parse_ints(text: str, what: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(" ", "").split(",")]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None


def parse_cartan(text: str) -> list[list[int]]:
    """Rows separated by ';', entries by ','."""
    return [parse_ints(row, "--cartan") for row in text.split(";")]


def build_spec(args) -> tuple[RootSystem, CorrespondenceSpec]:
    cartan = parse_cartan(args.cartan) if args.cartan else None
    if args.type == "generic" and cartan is None:
        raise UsageError("--type generic needs --cartan")
    rank = args.rank if args.rank is not None else (len(cartan) if cartan else None)
    if rank is None:
        raise UsageError("--rank is required")
    rs = root_system(args.type, rank, cartan)
    maximal = args.p is not None or args.q is not None
    subsets = args.I is not None or args.J is not None
    if maximal and subsets:
        raise UsageError("give either --p/--q or --I/--J, not both")
    if maximal:
        if args.p is None or args.q is None:
            raise UsageError("--p and --q go together")
        for name, v in (("--p", args.p), ("--q", args.q)):
            if not 1 <= v <= rank:
                raise UsageError(f"{name} must lie in 1..{rank}")
        return rs, CorrespondenceSpec.maximal(rs, args.p, args.q)
    if args.I is None or args.J is None:
        raise UsageError("specify the correspondence with --I and --J (or --p and --q)")
    return rs, CorrespondenceSpec(rs, tuple(parse_ints(args.I, "--I")), tuple(parse_ints(args.J, "--J")))


def build_lambda(args, rs: RootSystem, required: bool = True) -> Weight | None:
    if args.lam is not None and args.a is not None:
        raise UsageError("give either --lambda or --a, not both")
    if args.lam is not None:
        lam = Weight.of(parse_ints(args.lam, "--lambda"))
        if len(lam) != rs.rank:
            raise UsageError(f"--lambda needs {rs.rank} coordinates, got {len(lam)}")
        return lam
    if args.a is not None:
        if args.p is None:
            raise UsageError("--a is shorthand for a multiple of w_p and needs --p")
        scale = args.a if args.ag_convention else -args.a
        return Weight.fundamental(rs.rank, args.p, scale)
    if required:
        raise UsageError("a weight is required: --lambda c1,...,cn or --p/--q with --a")
    return None


# --- serialisation ----------------------------------------------------------------


def weight_json(rs: RootSystem, w: Weight | None):
    if w is None:
        return None
    out = {"varpi": list(w.coeffs)}
    if rs.family in CLASSICAL:
        out["epsilon"] = [str(c) for c in weight_to_epsilon(w, rs)]
    return out


def element_json(w: WeylElement | None):
    if w is None:
        return None
    return {"word": list(w.word), "length": w.length}


def class_json(rs: RootSystem, cls: radon.GrothendieckClass):
    return [{"weight": weight_json(rs, w), "coeff": c} for w, c in cls.items()]


def entry_json(rs: RootSystem, e: radon.GammaEntry):
    return {
        "x": element_json(e.x),
        "length": e.len_x,
        "singular": e.singular,
        "y": element_json(e.y),
        "m": e.m,
        "mu": weight_json(rs, e.mu),
        "degree": e.degree,
    }


def radon_verdict(report: radon.RadonReport) -> str:
    if report.vanishes:
        return "vanishes"
    if report.single_term is not None:
        return "single_term"
    return "multiple_terms"


def radon_json(rs, report: radon.RadonReport, weak: bool):
    single = None
    if report.single_term is not None:
        mu, s = report.single_term
        single = {"weight": weight_json(rs, mu), "shift": s}
    return {
        "verdict": radon_verdict(report),
        "entries": [entry_json(rs, e) for e in report.entries],
        "euler": class_json(rs, report.euler),
        "single_term": single,
        "concentrated_deg0": report.concentrated_deg0,
        "epi_candidate": weight_json(rs, report.epi_candidate),
        "epi_sufficient": report.epi_sufficient,
        "negative_single_term": report.negative_single_term,
        "infinitesimal_vanishing": weak,
    }


def extremal_json(rs, rep: radon.ExtremalReport):
    return {
        "lambda": weight_json(rs, rep.lam),
        "mu": weight_json(rs, rep.mu),
        "free": list(rep.free),
        "entries": [entry_json(rs, e) for e in rep.entries],
        "concentrated": rep.concentrated,
        "phi_epi": rep.phi_epi,
        "phi_iso": rep.phi_iso,
        "witnesses": {k: [element_json(e.x) for e in v] for k, v in sorted(rep.witnesses.items())},
    }


def envelope(command: str, inp: dict, result, t0: float, timing: bool) -> str:
    body = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": inp,
        "result": result,
        "timing_ms": int((time.perf_counter() - t0) * 1000) if timing else 0,
    }
    return json.dumps(body, sort_keys=True, ensure_ascii=False)


def spec_input(rs: RootSystem, spec: CorrespondenceSpec, lam: Weight | None):
    return {
        "type": rs.family,
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "I": list(spec.I),
        "J": list(spec.J),
        "lambda": None if lam is None else list(lam.coeffs),
    }


# --- human-readable output ------------------------------------------------------------


def bundle(w: Weight, ag: bool, node: int | None) -> str:
    """``D O(mu)``; in AG notation a multiple of w_node is shown as ``O(-coefficient)``."""
    if ag and node is not None and all(c == 0 for i, c in enumerate(w.coeffs) if i != node - 1):
        return f"D O({-w.coeffs[node - 1]})"
    return f"D O({w})"


def shifted(text: str, s: int) -> str:
    return text if s == 0 else f"{text}[{-s}]"


def print_radon(spec, report: radon.RadonReport, weak: bool, ag: bool, q: int | None) -> None:
    print(f"lambda = {report.lam}   I = {list(spec.I)}  J = {list(spec.J)}")
    print(f"{'x':<16}{'l(x)':>5}  {'m(x)':>5}  {'y_x':<16}{'mu':<28}{'degree':>6}")
    for e in report.entries:
        if e.singular:
            print(f"{str(e.x):<16}{e.len_x:>5}  {'-':>5}  {'singular':<16}")
        else:
            print(f"{str(e.x):<16}{e.len_x:>5}  {e.m:>5}  {str(e.y):<16}{str(e.mu):<28}{e.degree:>6}")
    print(f"Euler class: {report.euler}")
    if report.vanishes:
        print("R = 0")
    elif report.single_term is not None:
        mu, s = report.single_term
        print(f"R = {shifted(bundle(mu, ag, q), s)}")
        if report.negative_single_term:
            print("note: single surviving term sits in negative degree")
    else:
        print(f"{len(report.nonsingular)} surviving terms; cohomology in degree 0 only: "
              f"{'yes' if report.concentrated_deg0 else 'not guaranteed'}")
    if report.epi_candidate is not None:
        print(f"epimorphism candidate {bundle(report.epi_candidate, ag, q)} -> H^0 R: "
              f"{'guaranteed' if report.epi_sufficient else 'not guaranteed'}")
    print(f"infinitesimal-character vanishing test: {weak}")


def print_extremal(rep: radon.ExtremalReport, ag: bool, p: int | None, q: int | None) -> None:
    print(f"extremal pair: lambda = {rep.lam}, mu = {rep.mu}")
    if rep.free:
        print(f"free directions (nodes outside I u J): {list(rep.free)}")
    if ag and p is not None:
        print(f"  i.e. {bundle(rep.lam, True, p)} on X_I and {bundle(rep.mu, True, q)} on X_J")
    print(f"concentrated in degree 0: {rep.concentrated}")
    print(f"Phi epimorphism: {rep.phi_epi}")
    print(f"Phi isomorphism: {rep.phi_iso}")
    for cond, es in sorted(rep.witnesses.items()):
        print(f"  fails {cond}: " + ", ".join(f"{e.x} (l={e.len_x}, m={e.m})" for e in es))


# --- commands ------------------------------------------------------------------


def cmd_radon(args) -> int:
    t0 = time.perf_counter()
    rs, spec = build_spec(args)
    lam = build_lambda(args, rs)
    report = radon.classify(spec, lam, args.budget)
    weak = radon.infinitesimal_vanishing_test(spec, lam, args.budget)
    if args.json:
        print(envelope("radon", spec_input(rs, spec, lam), radon_json(rs, report, weak), t0, not args.no_timing))
    else:
        print_radon(spec, report, weak, args.ag_convention, args.q)
    return EXIT_OK


def cmd_extremal(args) -> int:
    t0 = time.perf_counter()
    rs, spec = build_spec(args)
    lam = build_lambda(args, rs, required=False)
    pair = radon.extremal_pair(spec)
    if lam is not None:
        # a user-supplied lambda must itself solve the extremal system
        mu = lam + gamma_IJ(spec)
        if not radon.is_extremal(spec, lam, mu):
            raise NoExtremalPair(f"lambda = {lam} is not extremal: need lambda zero on I and lambda + gamma zero on J")
        pair = radon.ExtremalPair(lam, mu, pair.free if pair else ())
    if pair is None:
        raise NoExtremalPair(f"the extremal system has no solution for I={list(spec.I)}, J={list(spec.J)}")
    rep = radon.classify_extremal(spec, pair, args.budget)
    if args.json:
        print(envelope("extremal", spec_input(rs, spec, lam), extremal_json(rs, rep), t0, not args.no_timing))
    else:
        print_extremal(rep, args.ag_convention, args.p, args.q)
    return EXIT_OK


def cmd_sweep(args) -> int:
    t0 = time.perf_counter()
    diffs = classical.sweep_compare(args.family, args.n_max, args.a_max, args.n_min, args.budget)
    if args.json:
        inp = {"family": args.family, "n_min": args.n_min, "n_max": args.n_max, "a_max": args.a_max}
        res = {
            "discrepancies": [
                {"family": d.family, "n": d.n, "p": d.p, "q": d.q, "a": d.a, "expected": d.expected, "observed": d.observed}
                for d in diffs
            ]
        }
        print(envelope("sweep", inp, res, t0, not args.no_timing))
    elif diffs:
        print(f"{len(diffs)} discrepancies")
        for d in diffs:
            print(f"  {d}")
    else:
        print("no discrepancies")
    return EXIT_MISMATCH if diffs else EXIT_OK


# --- entry point ------------------------------------------------------------------


def _add_common(sp) -> None:
    sp.add_argument("--json", action="store_true", help="emit one JSON document")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max Weyl group elements enumerated")
    sp.add_argument("--no-timing", action="store_true", help="report timing_ms as 0 (byte-reproducible output)")


def _add_spec(sp) -> None:
    sp.add_argument("--type", required=True, choices=["A", "B", "C", "D", "generic"])
    sp.add_argument("--rank", type=int)
    sp.add_argument("--cartan", help="Cartan matrix rows 'a,b;c,d' with entry (i,j) = <alpha_j, alpha_i^vee>")
    sp.add_argument("--I", help="nodes of I, comma separated (may be empty)")
    sp.add_argument("--J", help="nodes of J, comma separated (may be empty)")
    sp.add_argument("--p", type=int, help="maximal parabolic: I = all nodes but p")
    sp.add_argument("--q", type=int, help="maximal parabolic: J = all nodes but q")
    sp.add_argument("--lambda", dest="lam", help="weight in fundamental-weight coordinates")
    sp.add_argument("--a", type=int, help="shorthand for lambda = -a w_p")
    sp.add_argument(
        "--ag-convention",
        action="store_true",
        help="read --a as r with lambda = r w_p and print multiples of w_p, w_q as O(d), O(r w) = O(-r)",
    )
    _add_common(sp)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flagradon", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("radon", help="Radon transform of D O(lambda) in the Grothendieck group")
    _add_spec(sp)
    sp.set_defaults(func=cmd_radon)
    sp = sub.add_parser("extremal", help="extremal pair and the epi/iso verdict for Phi")
    _add_spec(sp)
    sp.set_defaults(func=cmd_extremal)
    sp = sub.add_parser("sweep", help="compare the engine with the closed-form classical tables")
    sp.add_argument("--family", required=True, choices=list(classical.FAMILIES))
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--n-min", type=int)
    sp.add_argument("--a-max", type=int, help="largest a (default 2n+2 for each rank)")
    _add_common(sp)
    sp.set_defaults(func=cmd_sweep)
    return ap


_VALUE_FLAGS = ("--lambda", "--cartan", "--I", "--J", "--a")


def _join_negative_values(argv: list[str]) -> list[str]:
    # let "--lambda -1,0" through: argparse would read "-1,0" as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = make_parser().parse_args(_join_negative_values(argv))
    try:
        return args.func(args)
    except (UsageError, InvalidCartanType, DimensionMismatch, InvalidSpec, UnsupportedFamily) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NotDominant, NotNested) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except BudgetExceeded as e:
        print(f"error: {e} (raise --budget or FLAGRADON_BUDGET)", file=sys.stderr)
        return EXIT_BUDGET
    except NoExtremalPair as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_EXTREMAL
    except ConsistencyError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
