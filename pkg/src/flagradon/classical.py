"""Closed-form answers for maximal parabolics of the classical groups.

Here ``I = I_0 minus {p}``, ``J = I_0 minus {q}`` and ``lam = -a w_p``.  The
tables below are transcribed case by case with only integer arithmetic, so
that they can serve as an independent check on :mod:`flagradon.radon`.
Bourbaki labels are used throughout; in type D nodes n-1 and n are the two
spinor nodes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import InvalidSpec
from .parabolic import CorrespondenceSpec
from .root_system import MIN_RANK, Weight, root_system
from .weyl import DEFAULT_BUDGET

FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class MaximalSpec:
    family: str
    n: int
    p: int
    q: int
    a: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidSpec(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.n < MIN_RANK[self.family]:
            raise InvalidSpec(f"{self.family}{self.n}: rank must be at least {MIN_RANK[self.family]}")
        if not (1 <= self.p <= self.n and 1 <= self.q <= self.n) or self.p == self.q:
            raise InvalidSpec(f"need distinct p, q in 1..{self.n}, got p={self.p}, q={self.q}")
        if self.a < 1:
            raise InvalidSpec(f"a must be positive, got {self.a}")

    def correspondence(self) -> CorrespondenceSpec:
        return CorrespondenceSpec.maximal(root_system(self.family, self.n), self.p, self.q)

    @property
    def lam(self) -> Weight:
        return Weight.fundamental(self.n, self.p, -self.a)


# verdicts ------------------------------------------------------------------


@dataclass(frozen=True)
class Vanishes:
    kind = "vanishes"


@dataclass(frozen=True)
class SingleTerm:
    """R = D O(-b w_q)[-c]."""

    b: int
    c: int
    kind = "single_term"


@dataclass(frozen=True)
class Concentrated:
    """Cohomology of R is zero outside degree 0 (weight not determined)."""

    kind = "concentrated"


@dataclass(frozen=True)
class ExtremalVerdict:
    r: int
    s: int
    epi: bool
    iso: bool
    kind = "extremal"


@dataclass(frozen=True)
class NoStatement:
    kind = "no_statement"


Verdict = Vanishes | SingleTerm | Concentrated | ExtremalVerdict | NoStatement


class OracleConflict(RuntimeError):
    """Two rows of the same table apply to one input and disagree."""


# type A ----------------------------------------------------------------------


def _star(n, k):
    return n + 1 - k


def _rows_A(n, p, q, a):
    if p < q:
        # diagram symmetry k -> n+1-k brings us to p > q
        p, q = _star(n, p), _star(n, q)
    ps, qs = _star(n, p), _star(n, q)
    p_minus = min(p, ps)
    if q < p_minus and q + 1 <= a <= qs - 1:
        yield "A vanish", Vanishes()
    if q <= p_minus:
        if a == qs:
            yield "A term a=q*", SingleTerm(ps, 0)
        if a == q:
            yield "A term a=q", SingleTerm(p, (p - q) * (ps - q))
    if a >= qs:
        yield "A concentrated", Concentrated()


def _extremal_A(n, p, q):
    if p < q:
        p, q = _star(n, p), _star(n, q)
    ps, qs = _star(n, p), _star(n, q)
    return ExtremalVerdict(qs, ps, True, ps >= q)


# type B ----------------------------------------------------------------------


def _rows_B(n, p, q, a):
    if p < q <= n and 2 * n - p - q < a < q:
        yield "B vanish.1", Vanishes()
    if q < p < n and min(n - p, q) < a < n - q:
        yield "B vanish.2", Vanishes()
    if q < p < n and n - p + q < a < max(n, 2 * n - p - q):
        yield "B vanish.3", Vanishes()
    if p == n and 2 * q < a < 2 * (n - q):
        yield "B vanish.4", Vanishes()
    c1 = (q - p) * (3 * p + 3 * q - 4 * n - 1) // 2
    c2 = (p - q) * (4 * n + 1 - 3 * p - 3 * q) // 2
    k = 2 * n - 2 * p - q
    if p < q < n and k <= 0 and a == q:
        yield "B term.1", SingleTerm(p, 0)
    if p < q <= n and k <= 0 and a == 2 * n - p - q:
        yield "B term.2", SingleTerm(2 * (n - q), c1)
    if q == n and n - 2 * p <= 0 and a == n:
        yield "B term.3", SingleTerm(2 * p, 0)
    if q < p < n and k >= 0 and a == 2 * n - p - q:
        yield "B term.4", SingleTerm(2 * n - p - q, 0)
    if q < p < n and k >= 0 and a == q:
        yield "B term.5", SingleTerm(p, c2)


def _extremal_B(n, p, q):
    if p < q <= n - 1:
        r, s = q, p
    elif q < p <= n - 1:
        r, s = 2 * n - p - q, 2 * n - p - q
    elif p == n:
        r, s = 2 * (n - q), n - q
    else:
        r, s = n, 2 * p
    k = 2 * n - 2 * p - q
    epi = (p < q <= n) or (q < p < n and k >= 0)
    iso = (p < q <= n and k <= 0) or (q < p < n and k >= 0)
    return ExtremalVerdict(r, s, epi, iso)


# type C ----------------------------------------------------------------------


def _rows_C(n, p, q, a):
    t = 2 * n - p - q + 1
    if p < q and t < a < q:
        yield "C vanish.1", Vanishes()
    if q < p and q < a < t:
        yield "C vanish.2", Vanishes()
    c1 = (q - p) * (3 * p + 3 * q - 4 * n - 1) // 2
    c2 = (p - q) * (4 * n + 1 - 3 * p - 3 * q) // 2
    k = 2 * n - 2 * p - q + 1
    if p < q <= n and k <= 0 and a == q:
        yield "C term.1", SingleTerm(p, 0)
    if p < q <= n and k <= 0 and a == t:
        yield "C term.2", SingleTerm(t, c1)
    if q < p <= n and k >= 0 and a == t:
        yield "C term.3", SingleTerm(t, 0)
    if q < p <= n and k >= 0 and a == q:
        yield "C term.4", SingleTerm(p, c2)


def _extremal_C(n, p, q):
    k = 2 * n - 2 * p - q + 1
    if p < q:
        r, s = q, p
    else:
        r = s = 2 * n - p - q + 1
    epi = (p < q < n and n - p - q >= 0) or (p < q <= n and k <= 0) or q < p
    iso = (p < q <= n and k <= 0) or (q < p <= n and k >= 0)
    return ExtremalVerdict(r, s, epi, iso)


# type D ----------------------------------------------------------------------


def _rows_D(n, p, q, a):
    spin = (n - 1, n)
    t = 2 * n - p - q - 1
    if p < q <= n - 2 and t < a < q:
        yield "D vanish.1", Vanishes()
    if q < p <= n - 2 and q < a < t:
        yield "D vanish.2", Vanishes()
    if p in spin and 1 <= q <= n - 2 and 2 * q < a < 2 * (n - q - 1):
        yield "D vanish.3", Vanishes()
    if 1 <= p <= n - 2 and q in spin and n - p - 1 < a < n:
        yield "D vanish.4", Vanishes()
    both_spin = {p, q} == set(spin)
    if both_spin and n % 2 == 0 and a == n - 1:
        yield "D vanish.5", Vanishes()
    c1 = (q - p) * (3 * p + 3 * q - 4 * n + 1) // 2
    c2 = (n - p) * (3 * p - n + 1) // 2
    c3 = (p - q) * (4 * n - 3 * p - 3 * q - 1) // 2
    k = 2 * n - 2 * p - q - 1
    if p < q <= n - 2 and k <= 0:
        if a == q:
            yield "D term.1", SingleTerm(p, 0)
        if a == t:
            yield "D term.2", SingleTerm(t, c1)
    if p <= n - 2 and q in spin and n - 2 * p - 1 <= 0:
        if a == n:
            yield "D term.3", SingleTerm(2 * p, 0)
        if a == n - p - 1:
            yield "D term.4", SingleTerm(2 * (n - p - 1), c2)
    if q < p <= n - 2 and k >= 0:
        if a == t:
            yield "D term.5", SingleTerm(t, 0)
        if a == q:
            yield "D term.6", SingleTerm(p, c3)
    if both_spin and n % 2 == 1:
        for label, (aa, b) in zip(("D term.7", "D(ii).8", "D(ii).9"), ((n, n - 2), (n - 1, n - 1), (n - 2, n))):
            if a == aa:
                yield label, SingleTerm(b, 0)


def _extremal_D(n, p, q):
    spin = (n - 1, n)
    if p < q <= n - 2:
        r, s = q, p
    elif q < p <= n - 2:
        r = s = 2 * n - p - q - 1
    elif p in spin and q <= n - 2:
        r, s = 2 * (n - q - 1), n - q - 1
    elif p <= n - 2 and q in spin:
        r, s = n, 2 * p
    else:
        r, s = n, n - 2
    k = 2 * n - 2 * p - q - 1
    iso = (
        (p < q < n - 1 and k <= 0)
        or (q < p < n - 1 and k >= 0)
        or (p < n - 1 and q in spin and n - 2 * p - 1 <= 0)
        or ({p, q} == set(spin) and n % 2 == 1)
    )
    return ExtremalVerdict(r, s, True, iso)


_ROWS = {"A": _rows_A, "B": _rows_B, "C": _rows_C, "D": _rows_D}
_EXTREMAL = {"A": _extremal_A, "B": _extremal_B, "C": _extremal_C, "D": _extremal_D}


def oracle_rows(ms: MaximalSpec) -> list[tuple[str, Verdict]]:
    """Every table row that applies to ``ms``, with its label."""
    return list(_ROWS[ms.family](ms.n, ms.p, ms.q, ms.a))


def _implies_concentrated(v) -> bool:
    return isinstance(v, Vanishes) or (isinstance(v, SingleTerm) and v.c == 0)


def oracle_radon(ms: MaximalSpec) -> Verdict:
    """The table's claim about R(D O(-a w_p)), or NoStatement."""
    rows = oracle_rows(ms)
    strong = {v for _, v in rows if not isinstance(v, Concentrated)}
    if len(strong) > 1:
        raise OracleConflict(f"{ms}: rows {[lbl for lbl, _ in rows]} disagree")
    if strong:
        (v,) = strong
        if any(isinstance(w, Concentrated) for _, w in rows) and not _implies_concentrated(v):
            raise OracleConflict(f"{ms}: {v} contradicts a concentration statement")
        return v
    if rows:
        return Concentrated()
    return NoStatement()


def oracle_extremal(family: str, n: int, p: int, q: int) -> ExtremalVerdict:
    """The extremal pair ``(-r w_p, -s w_q)`` and the epi/iso verdict."""
    MaximalSpec(family, n, p, q)
    return _EXTREMAL[family](n, p, q)


# comparison against the engine --------------------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    family: str
    n: int
    p: int
    q: int
    a: int | None
    expected: str
    observed: str

    def __str__(self) -> str:
        where = f"{self.family}{self.n} p={self.p} q={self.q}" + ("" if self.a is None else f" a={self.a}")
        return f"{where}: expected {self.expected}, engine gave {self.observed}"


def maximal_pairs(family: str, n: int) -> Iterator[tuple[int, int]]:
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if p != q:
                yield p, q


def _describe(report) -> str:
    from .radon import RadonReport

    assert isinstance(report, RadonReport)
    if report.vanishes:
        return "vanishes"
    if report.single_term is not None:
        mu, s = report.single_term
        return f"single_term {mu} shift {s}"
    return f"{len(report.nonsingular)} terms, concentrated={report.concentrated_deg0}"


def compare_radon(ms: MaximalSpec, budget: int = DEFAULT_BUDGET) -> Discrepancy | None:
    from .radon import classify

    try:
        expected = oracle_radon(ms)
    except OracleConflict:
        report = classify(ms.correspondence(), ms.lam, budget)
        rows = "; ".join(f"{lbl}: {v}" for lbl, v in oracle_rows(ms))
        return Discrepancy(ms.family, ms.n, ms.p, ms.q, ms.a, f"conflicting rows ({rows})", _describe(report))
    if isinstance(expected, NoStatement):
        return None
    report = classify(ms.correspondence(), ms.lam, budget)
    if isinstance(expected, Vanishes):
        ok = report.vanishes
        text = "vanishes"
    elif isinstance(expected, SingleTerm):
        ok = report.single_term == (Weight.fundamental(ms.n, ms.q, -expected.b), expected.c)
        text = f"single_term {Weight.fundamental(ms.n, ms.q, -expected.b)} shift {expected.c}"
    else:
        ok = report.concentrated_deg0
        text = "concentrated"
    if ok:
        return None
    return Discrepancy(ms.family, ms.n, ms.p, ms.q, ms.a, text, _describe(report))


def compare_extremal(family: str, n: int, p: int, q: int, budget: int = DEFAULT_BUDGET) -> Discrepancy | None:
    from .radon import classify_extremal

    expected = oracle_extremal(family, n, p, q)
    spec = MaximalSpec(family, n, p, q).correspondence()
    rep = classify_extremal(spec, budget=budget)
    want = (Weight.fundamental(n, p, -expected.r), Weight.fundamental(n, q, -expected.s), True, expected.epi, expected.iso)
    got = (rep.lam, rep.mu, rep.concentrated, rep.phi_epi, rep.phi_iso)
    if want == got:
        return None
    fmt = lambda t: f"lam={t[0]} mu={t[1]} concentrated={t[2]} epi={t[3]} iso={t[4]}"
    return Discrepancy(family, n, p, q, None, fmt(want), fmt(got))


def sweep_compare(family: str, n_max: int, a_max: int | None = None, n_min: int | None = None,
                  budget: int = DEFAULT_BUDGET) -> list[Discrepancy]:
    """Engine vs table for every rank up to ``n_max`` and ``1 <= a <= a_max``.

    ``a_max`` defaults to ``2n + 2`` per rank.  Extremal cases are compared too.
    """
    if family not in FAMILIES:
        raise InvalidSpec(f"family must be one of {FAMILIES}, got {family!r}")
    out = []
    for n in range(max(MIN_RANK[family], n_min or 1), n_max + 1):
        top = 2 * n + 2 if a_max is None else a_max
        for p, q in maximal_pairs(family, n):
            for a in range(1, top + 1):
                d = compare_radon(MaximalSpec(family, n, p, q, a), budget)
                if d is not None:
                    out.append(d)
            d = compare_extremal(family, n, p, q, budget)
            if d is not None:
                out.append(d)
    return out


__all__ = [
    "MaximalSpec",
    "Vanishes",
    "SingleTerm",
    "Concentrated",
    "ExtremalVerdict",
    "NoStatement",
    "OracleConflict",
    "oracle_rows",
    "oracle_radon",
    "oracle_extremal",
    "Discrepancy",
    "compare_radon",
    "compare_extremal",
    "sweep_compare",
]
