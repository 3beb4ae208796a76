"""Radon transform of D O(lam) on the level of Grothendieck groups.

For a correspondence X_I <- X_{I cap J} -> X_J and an I-dominant weight lam,
the BGG resolution of the pull-back has one term ``D O(x o lam)`` for every
``x`` in Gamma (the shortest representatives of W_{I cap J} in W_I).  Each term
is pushed forward by Borel-Weil-Bott: it either dies (``x(lam + rho)`` is
singular for Delta_J) or becomes ``D O((y_x x) o lam)`` in degree ``m(x)``.

Quantities with two known formulas are computed both ways and compared; a
disagreement raises :class:`~flagradon.errors.ConsistencyError`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .errors import BudgetExceeded, ConsistencyError, NoExtremalPair, NotDominant
from .parabolic import CorrespondenceSpec, cone_membership, gamma_IJ, support_mask
from .root_system import RootSystem, Weight
from .weyl import (
    DEFAULT_BUDGET,
    apply_word,
    WeylElement,
    dominance_sort,
    dot,
    element_matrices,
    enumerate_parabolic,
    from_key,
    identity,
    longest_element,
    min_coset_reps,
    multiply,
    reflect,
    sort_to_dominant,
    stratify,
)


@dataclass(frozen=True)
class GammaEntry:
    x: WeylElement
    len_x: int
    singular: bool
    y: WeylElement | None = None
    m: int | None = None
    mu: Weight | None = None
    # cohomological degree m(x) - l(x) of the candidate term
    degree: int | None = None


class GrothendieckClass:
    """Finite signed sum of classes [D O(mu)], keyed by weight."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Weight, int] | Iterable[tuple[Weight, int]] = ()):
        acc: dict[Weight, int] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for w, c in items:
            acc[w] = acc.get(w, 0) + c
        self.terms = {w: c for w, c in acc.items() if c}

    def __add__(self, other: GrothendieckClass) -> GrothendieckClass:
        return GrothendieckClass(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> GrothendieckClass:
        return GrothendieckClass({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: GrothendieckClass) -> GrothendieckClass:
        return self + (-other)

    def __rmul__(self, k: int) -> GrothendieckClass:
        return GrothendieckClass({w: k * c for w, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, GrothendieckClass) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> list[tuple[Weight, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0].coeffs)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}[{w}]" for w, c in self.items())


@dataclass(frozen=True)
class RadonReport:
    lam: Weight
    entries: tuple[GammaEntry, ...]
    euler: GrothendieckClass
    vanishes: bool
    # (mu, s) with R = D O(mu)[-s]
    single_term: tuple[Weight, int] | None
    concentrated_deg0: bool
    epi_candidate: Weight | None
    epi_sufficient: bool
    # one surviving term placed in negative degree, which lower vanishing forbids
    negative_single_term: bool = False

    @property
    def nonsingular(self) -> list[GammaEntry]:
        return [e for e in self.entries if not e.singular]


@dataclass(frozen=True)
class ExtremalPair:
    lam: Weight
    mu: Weight
    # nodes outside I u J: (lam, mu) + t * fundamental weight stays extremal
    free: tuple[int, ...] = ()


@dataclass(frozen=True)
class ExtremalReport:
    lam: Weight
    mu: Weight
    free: tuple[int, ...]
    entries: tuple[GammaEntry, ...]
    concentrated: bool
    phi_epi: bool
    phi_iso: bool
    witnesses: dict[str, tuple[GammaEntry, ...]] = field(default_factory=dict)


# --- cached per-spec data -------------------------------------------------


@dataclass(frozen=True, eq=False)
class _SpecData:
    gamma: tuple[WeylElement, ...]
    gamma_mats: np.ndarray
    gamma_keys: np.ndarray
    w_J: WeylElement
    w_IJ: WeylElement
    in_I: np.ndarray
    in_J: np.ndarray
    in_IJ: np.ndarray
    j_not_i: np.ndarray
    i_not_j: np.ndarray


@lru_cache(maxsize=8192)
def _spec_data(spec: CorrespondenceSpec, budget: int) -> _SpecData:
    rs = spec.rs
    gamma = tuple(sorted(min_coset_reps(rs, spec.IJ, spec.I, budget), key=lambda w: (w.length, w.key.coeffs)))
    in_I, in_J = support_mask(rs, spec.I), support_mask(rs, spec.J)
    return _SpecData(
        gamma=gamma,
        gamma_mats=element_matrices(rs, gamma),
        gamma_keys=np.array([w.key.coeffs for w in gamma], dtype=np.int64),
        w_J=longest_element(rs, spec.J),
        w_IJ=longest_element(rs, spec.IJ),
        in_I=in_I,
        in_J=in_J,
        in_IJ=in_I & in_J,
        j_not_i=in_J & ~in_I,
        i_not_j=in_I & ~in_J,
    )


@lru_cache(maxsize=1024)
def _parabolic_group(rs: RootSystem, J: tuple[int, ...], budget: int) -> tuple[tuple[WeylElement, ...], np.ndarray]:
    elems = tuple(enumerate_parabolic(rs, J, budget))
    return elems, element_matrices(rs, elems)


def _require_dominant(spec: CorrespondenceSpec, lam: Weight) -> None:
    spec.rs.check(lam)
    if not cone_membership(lam, spec.I)[0]:
        bad = [i for i in spec.I if lam.coeffs[i - 1] < 0]
        raise NotDominant(f"lambda = {lam} must pair >= 0 with the simple coroots of I; fails at nodes {bad}")


# --- Gamma and the BGG terms ----------------------------------------------


def big_gamma(spec: CorrespondenceSpec, budget: int = DEFAULT_BUDGET) -> list[tuple[int, list[WeylElement]]]:
    """Gamma stratified by length: ``[(k, Gamma_k), ...]``."""
    return list(stratify(_spec_data(spec, budget).gamma).items())


def bgg_terms(spec: CorrespondenceSpec, lam: Weight, budget: int = DEFAULT_BUDGET) -> list[tuple[int, list[Weight]]]:
    """Weights ``x o lam`` of the k-th resolution term, for each k."""
    _require_dominant(spec, lam)
    rs = spec.rs
    return [(k, [dot(rs, x, lam) for x in xs]) for k, xs in big_gamma(spec, budget)]


def gamma_lambda(spec: CorrespondenceSpec, lam: Weight, budget: int = DEFAULT_BUDGET) -> list[GammaEntry]:
    """One entry per ``x`` in Gamma, with y_x, m(x) and the pushed-forward weight."""
    _require_dominant(spec, lam)
    rs = spec.rs
    d = _spec_data(spec, budget)
    shifted = np.asarray((lam + rs.rho).coeffs, dtype=np.int64)
    images = d.gamma_mats @ shifted
    pairs = images @ rs.coroot_matrix.T
    out = []
    for x, v, pr in zip(d.gamma, images, pairs):
        if not (pr[d.in_IJ] > 0).all():
            raise ConsistencyError(f"x = {x} in Gamma but x(lam + rho) is not regular dominant on Delta_(I cap J)")
        if (pr[d.in_J] == 0).any():
            out.append(GammaEntry(x, x.length, True))
            continue
        sorted_ = dominance_sort(rs, Weight.of(v), spec.J)
        if sorted_ is None:
            raise ConsistencyError(f"dominance sort found x(lam + rho) singular for x = {x}")
        y, top = sorted_
        m = multiply(rs, d.w_J, y).length - d.w_IJ.length
        m_count = int(np.count_nonzero(pr[d.j_not_i] > 0))
        l_count = int(np.count_nonzero(pr[d.i_not_j] < 0))
        if m != m_count or l_count != x.length:
            raise ConsistencyError(
                f"x = {x}: m by lengths {m} vs by count {m_count}; l(x) {x.length} vs by count {l_count}"
            )
        if y.length != int(np.count_nonzero(pr[d.in_J] < 0)):
            raise ConsistencyError(f"x = {x}: l(y_x) differs from its inversion count")
        out.append(GammaEntry(x, x.length, False, y, m, top - rs.rho, m - x.length))
    return out


# --- Euler class, two ways --------------------------------------------------


def euler_class_gamma(entries: Iterable[GammaEntry]) -> GrothendieckClass:
    return GrothendieckClass((e.mu, (-1) ** (e.len_x - e.m)) for e in entries if not e.singular)


def _xi_hits(spec: CorrespondenceSpec, lam: Weight, budget: int) -> list[tuple[Weight, int, Weight]]:
    """``(w(rho), l(w), w(lam + rho))`` for each ``w`` in Xi(lam)."""
    _require_dominant(spec, lam)
    rs = spec.rs
    d = _spec_data(spec, budget)
    wj, wj_mats = _parabolic_group(rs, spec.J, budget)
    if len(d.gamma) * len(wj) > budget:
        raise BudgetExceeded(f"|W_J| * |Gamma| = {len(wj)} * {len(d.gamma)} exceeds {budget}", 0)
    shifted = np.asarray((lam + rs.rho).coeffs, dtype=np.int64)
    images = d.gamma_mats @ shifted
    # ys[x, y] = y x (lam + rho) for y in W_J, x in Gamma
    ys = np.einsum("yab,xb->xya", wj_mats, images)
    jidx = [j - 1 for j in spec.J]
    xs, js = np.nonzero((ys[:, :, jidx] > 0).all(axis=2))
    keys = np.einsum("nab,nb->na", wj_mats[js], d.gamma_keys[xs])
    lengths = np.count_nonzero(keys @ rs.coroot_matrix.T < 0, axis=1)
    out = [(Weight.of(k), int(n), Weight.of(img)) for k, n, img in zip(keys, lengths, ys[xs, js])]
    out.sort(key=lambda t: (t[1], t[0].coeffs))
    return out


def xi_lambda(spec: CorrespondenceSpec, lam: Weight, budget: int = DEFAULT_BUDGET) -> list[tuple[WeylElement, int]]:
    """Elements ``w`` of W_J W_I with ``w(lam + rho)`` strictly J-dominant, with ``l(w)``.

    W_J W_I is scanned as the product set ``{y x : y in W_J, x in Gamma}``.
    """
    return [(from_key(spec.rs, key), length) for key, length, _ in _xi_hits(spec, lam, budget)]


def euler_class_xi(spec: CorrespondenceSpec, lam: Weight, budget: int = DEFAULT_BUDGET, hits=None) -> GrothendieckClass:
    rs = spec.rs
    base = int(np.count_nonzero(_spec_data(spec, budget).j_not_i))
    hits = _xi_hits(spec, lam, budget) if hits is None else hits
    return GrothendieckClass((img - rs.rho, (-1) ** (base + length)) for _, length, img in hits)


def check_xi_identity(spec: CorrespondenceSpec, lam: Weight, entries: list[GammaEntry], budget: int = DEFAULT_BUDGET,
                      hits=None) -> None:
    """``{y_x x : x in Gamma(lam)} = Xi(lam)`` with ``l(y_x x) = l(y_x) + l(x)``."""
    rs = spec.rs
    hits = _xi_hits(spec, lam, budget) if hits is None else hits
    xi = {key: length for key, length, _ in hits}
    products = {}
    for e in entries:
        if e.singular:
            continue
        key = apply_word(rs, e.y.word, e.x.key)
        length = int(np.count_nonzero(rs.pairings(key) < 0))
        if length != e.y.length + e.x.length:
            raise ConsistencyError(f"l(y_x x) != l(y_x) + l(x) for x = {e.x}")
        products[key] = length
    if products != xi:
        raise ConsistencyError(f"Gamma(lam) products and Xi(lam) differ for lam = {lam}")


def euler_class(spec: CorrespondenceSpec, lam: Weight, budget: int = DEFAULT_BUDGET) -> GrothendieckClass:
    """Alternating sum of the cohomology of R(D O(lam)); Gamma and Xi forms must agree."""
    entries = gamma_lambda(spec, lam, budget)
    return _checked_euler(spec, lam, entries, budget)


def _checked_euler(spec, lam, entries, budget) -> GrothendieckClass:
    hits = _xi_hits(spec, lam, budget)
    via_gamma = euler_class_gamma(entries)
    via_xi = euler_class_xi(spec, lam, budget, hits)
    if via_gamma != via_xi:
        raise ConsistencyError(f"Euler class mismatch: Gamma {via_gamma} vs Xi {via_xi}")
    check_xi_identity(spec, lam, entries, budget, hits)
    return via_gamma


# --- classification -----------------------------------------------------------


def classify(spec: CorrespondenceSpec, lam: Weight, budget: int = DEFAULT_BUDGET) -> RadonReport:
    rs = spec.rs
    entries = gamma_lambda(spec, lam, budget)
    euler = _checked_euler(spec, lam, entries, budget)
    live = [e for e in entries if not e.singular]
    single = (live[0].mu, live[0].degree) if len(live) == 1 else None
    concentrated = all(e.len_x >= e.m for e in live)
    d = _spec_data(spec, budget)
    pr = rs.pairings(lam + rs.rho)
    epi_candidate, epi_sufficient = None, False
    if (pr[d.j_not_i] < 0).all():
        y_e = multiply(rs, d.w_J, d.w_IJ)
        epi_candidate = dot(rs, y_e, lam)
        e_entry = next((e for e in live if e.len_x == 0), None)
        if e_entry is None or e_entry.y != y_e:
            raise ConsistencyError("expected e in Gamma(lam) with y_e = w_J w_(I cap J)")
        epi_sufficient = all(e.len_x > e.m for e in live if e.len_x > 0)
    return RadonReport(
        lam=lam,
        entries=tuple(entries),
        euler=euler,
        vanishes=not live,
        single_term=single,
        concentrated_deg0=concentrated,
        epi_candidate=epi_candidate,
        epi_sufficient=epi_sufficient,
        negative_single_term=single is not None and single[1] < 0,
    )


def infinitesimal_vanishing_test(spec: CorrespondenceSpec, lam: Weight, budget: int = DEFAULT_BUDGET) -> bool:
    """True when no ``w o lam`` (w in W) is J-dominant; then R(D O(lam)) = 0.

    Weaker than ``Gamma(lam)`` being empty.
    """
    rs = spec.rs
    rs.check(lam)
    jidx = [j - 1 for j in spec.J]
    _, nu = sort_to_dominant(rs, lam + rs.rho, rs.nodes)
    # w o lam is J-dominant  <=>  w(lam + rho) pairs >= 1 with alpha_j^vee, j in J
    ok = lambda v: all(v.coeffs[j] >= 1 for j in jidx)
    if all(c > 0 for c in nu.coeffs):
        return False
    seen = {nu}
    queue = deque([nu])
    while queue:
        v = queue.popleft()
        if ok(v):
            return False
        for i in rs.nodes:
            u = reflect(rs, i, v)
            if u not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded(f"orbit of {nu} exceeds {budget}", len(seen))
                seen.add(u)
                queue.append(u)
    return True


# --- extremal cases ---------------------------------------------------------------


def extremal_pair(spec: CorrespondenceSpec) -> ExtremalPair | None:
    """Solve ``mu = lam + gamma_IJ`` with lam zero on I and mu zero on J.

    Coordinates outside I u J are free; the returned solution sets lam to 0
    there.  None when the system has no solution.
    """
    rs = spec.rs
    g = gamma_IJ(spec).coeffs
    I, J = set(spec.I), set(spec.J)
    lam, mu = [0] * rs.rank, [0] * rs.rank
    for i in rs.nodes:
        k = i - 1
        if i in I and i in J:
            if g[k] != 0:
                return None
        elif i in I:
            mu[k] = g[k]
        elif i in J:
            lam[k] = -g[k]
        else:
            mu[k] = g[k]
    free = tuple(i for i in rs.nodes if i not in I and i not in J)
    return ExtremalPair(Weight(tuple(lam)), Weight(tuple(mu)), free)


def is_extremal(spec: CorrespondenceSpec, lam: Weight, mu: Weight) -> bool:
    return (
        cone_membership(lam, spec.I)[1]
        and cone_membership(mu, spec.J)[1]
        and mu == lam + gamma_IJ(spec)
    )


def classify_extremal(
    spec: CorrespondenceSpec, pair: ExtremalPair | None = None, budget: int = DEFAULT_BUDGET
) -> ExtremalReport:
    rs = spec.rs
    if pair is None:
        pair = extremal_pair(spec)
    if pair is None or not is_extremal(spec, pair.lam, pair.mu):
        raise NoExtremalPair(f"no extremal pair for I={list(spec.I)}, J={list(spec.J)}")
    lam, mu = pair.lam, pair.mu
    d = _spec_data(spec, budget)
    entries = gamma_lambda(spec, lam, budget)
    live = [e for e in entries if not e.singular]

    pr = rs.pairings(lam + rs.rho)
    if not ((pr[d.j_not_i] < 0).all() and (pr[d.in_I] > 0).all()):
        raise ConsistencyError(f"extremal lam = {lam} violates the sign pattern on Delta_J^+ and Delta_I^+")
    if dot(rs, multiply(rs, d.w_J, d.w_IJ), lam) != mu:
        raise ConsistencyError("(w_J w_(I cap J)) o lam != mu")
    e = live[0] if live else None
    if e is None or e.len_x != 0 or e.m != 0:
        raise ConsistencyError("e must lie in Gamma(lam) with l(e) = m(e) = 0")

    bad_conc = tuple(x for x in live if x.len_x < x.m)
    bad_epi = tuple(x for x in live if x.len_x > 0 and x.len_x <= x.m)
    bad_iso = tuple(x for x in live if x.len_x > 0)
    concentrated = not bad_conc
    phi_epi = concentrated and not bad_epi
    phi_iso = concentrated and not bad_iso

    if vanishing_condition_lambda_free(spec, budget) != concentrated:
        raise ConsistencyError("lambda-free vanishing condition disagrees with the direct computation")

    witnesses = {}
    if bad_conc:
        witnesses["concentrated"] = bad_conc
    if not phi_epi and bad_epi:
        witnesses["epi"] = bad_epi
    if not phi_iso and bad_iso:
        witnesses["iso"] = bad_iso
    return ExtremalReport(lam, mu, pair.free, tuple(entries), concentrated, phi_epi, phi_iso, witnesses)


def vanishing_condition_lambda_free(spec: CorrespondenceSpec, budget: int = DEFAULT_BUDGET) -> bool:
    """Concentration test for the extremal case written with ``x rho - gamma_IJ`` only."""
    rs = spec.rs
    d = _spec_data(spec, budget)
    g = np.asarray(gamma_IJ(spec).coeffs, dtype=np.int64)
    for x, key in zip(d.gamma, d.gamma_keys):
        pr = rs.coroot_matrix @ (key - g)
        sel = pr[d.j_not_i]
        if (sel != 0).all() and int(np.count_nonzero(sel > 0)) > x.length:
            return False
    return True


def extremal_violations(rs: RootSystem, pairs: Iterable[tuple[tuple[int, ...], tuple[int, ...]]] | None = None,
                        budget: int = DEFAULT_BUDGET) -> Iterator[tuple[CorrespondenceSpec, ExtremalReport]]:
    """Yield extremal cases whose cohomology is not concentrated in degree 0.

    By default every ordered pair I != J of node subsets is tried.
    """
    if pairs is None:
        subsets = [tuple(i + 1 for i in range(rs.rank) if mask >> i & 1) for mask in range(1 << rs.rank)]
        pairs = ((I, J) for I in subsets for J in subsets if I != J)
    for I, J in pairs:
        spec = CorrespondenceSpec(rs, I, J)
        report = classify_extremal(spec, budget=budget)
        if not report.concentrated:
            yield spec, report


__all__ = [
    "GammaEntry",
    "GrothendieckClass",
    "RadonReport",
    "ExtremalPair",
    "ExtremalReport",
    "big_gamma",
    "bgg_terms",
    "gamma_lambda",
    "xi_lambda",
    "euler_class",
    "euler_class_gamma",
    "euler_class_xi",
    "check_xi_identity",
    "classify",
    "infinitesimal_vanishing_test",
    "extremal_pair",
    "is_extremal",
    "classify_extremal",
    "vanishing_condition_lambda_free",
    "extremal_violations",
]
