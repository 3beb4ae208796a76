"""Weyl group elements keyed by their image of rho.

An element ``w`` is stored as ``(word, key, length)`` where ``key = w(rho)``.
Since rho is regular the key determines ``w``; equality and hashing use the
key only.  Words are reduced and read left to right as a product of simple
reflections, so ``w(lam)`` applies the rightmost letter first.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded
from .root_system import RootSystem, Weight

DEFAULT_BUDGET = int(os.environ.get("FLAGRADON_BUDGET", 10**7))

NodeSet = tuple[int, ...]


def nodes(I: Iterable[int]) -> NodeSet:
    """Canonical node set: sorted tuple of distinct 1-based labels."""
    return tuple(sorted(set(int(i) for i in I)))


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...] = field(compare=False)
    key: Weight
    length: int = field(compare=False)

    def __str__(self) -> str:
        if not self.word:
            return "e"
        return "".join(f"s{i}" for i in self.word)


def reflect(rs: RootSystem, i: int, lam: Weight) -> Weight:
    """Simple reflection ``s_i`` (1-based) applied to ``lam``."""
    c = lam.coeffs[i - 1]
    if c == 0:
        return lam
    col = rs.simple_root_weights[i - 1].coeffs
    return Weight(tuple(a - c * b for a, b in zip(lam.coeffs, col)))


def apply_word(rs: RootSystem, word: Sequence[int], lam: Weight) -> Weight:
    for i in reversed(word):
        lam = reflect(rs, i, lam)
    return lam


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement((), rs.rho, 0)


def act(rs: RootSystem, w: WeylElement, lam: Weight) -> Weight:
    rs.check(lam)
    return apply_word(rs, w.word, lam)


def dot(rs: RootSystem, w: WeylElement, lam: Weight) -> Weight:
    """Shifted action ``w(lam + rho) - rho``."""
    rs.check(lam)
    return apply_word(rs, w.word, lam + rs.rho) - rs.rho


def _sort_down(rs: RootSystem, xi: Weight, J: NodeSet) -> tuple[list[int], Weight]:
    """Reflect until ``xi`` is J-dominant; returns the applied letters in order."""
    applied: list[int] = []
    c = list(xi.coeffs)
    cols = [rs.simple_root_weights[j - 1].coeffs for j in range(1, rs.rank + 1)]
    while True:
        for j in J:
            if c[j - 1] < 0:
                break
        else:
            return applied, Weight(tuple(c))
        v = c[j - 1]
        col = cols[j - 1]
        for a in range(rs.rank):
            c[a] -= v * col[a]
        applied.append(j)


def from_key(rs: RootSystem, key: Weight) -> WeylElement:
    """Recover the element with ``w(rho) = key`` together with a reduced word."""
    applied, top = _sort_down(rs, key, rs.nodes)
    if top != rs.rho:
        raise ValueError(f"{key} is not in the W-orbit of rho")
    # y = s_{a_k} ... s_{a_1} sends key to rho, so w = y^{-1} = s_{a_1} ... s_{a_k}
    return WeylElement(tuple(applied), key, len(applied))


def from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    return from_key(rs, apply_word(rs, word, rs.rho))


def multiply(rs: RootSystem, u: WeylElement, v: WeylElement) -> WeylElement:
    return from_key(rs, apply_word(rs, u.word, v.key))


def inverse(rs: RootSystem, w: WeylElement) -> WeylElement:
    return from_word(rs, tuple(reversed(w.word)))


def inversion_count(rs: RootSystem, w: WeylElement) -> int:
    """``#{alpha > 0 : w^{-1} alpha < 0}``, read off the key."""
    return int(np.count_nonzero(rs.pairings(w.key) < 0))


def length(w: WeylElement) -> int:
    return w.length


def longest_element(rs: RootSystem, I: Iterable[int]) -> WeylElement:
    """The element of W_I sending the negative roots of Delta_I to positive ones."""
    I = nodes(I)
    applied, _ = _sort_down(rs, -rs.rho, I)
    # y(-rho) is I-dominant with y in W_I, so y = w_I; w_I is an involution
    return from_word(rs, tuple(reversed(applied)))


def dominance_sort(rs: RootSystem, xi: Weight, J: Iterable[int]) -> tuple[WeylElement, Weight] | None:
    """The ``y`` in W_J making ``y(xi)`` strictly dominant on Delta_J^+.

    Returns None when ``xi`` pairs to zero with some coroot of Delta_J.
    """
    J = nodes(J)
    rs.check(xi)
    applied, top = _sort_down(rs, xi, J)
    if any(top.coeffs[j - 1] == 0 for j in J):
        return None
    y = from_word(rs, tuple(reversed(applied)))
    return y, top


def sort_to_dominant(rs: RootSystem, xi: Weight, J: Iterable[int]) -> tuple[WeylElement, Weight]:
    """Like :func:`dominance_sort` but allows singular weights (y is then not unique)."""
    J = nodes(J)
    applied, top = _sort_down(rs, xi, J)
    return from_word(rs, tuple(reversed(applied))), top


def enumerate_parabolic(rs: RootSystem, I: Iterable[int], budget: int = DEFAULT_BUDGET) -> Iterator[WeylElement]:
    """Every element of W_I once, in non-decreasing length.

    Breadth-first over the weak order: each element of length k+1 is
    ``s_i w`` for some ``w`` of length k with ``<w(rho), alpha_i^vee> > 0``.
    """
    yield from _bfs(rs, nodes(I), budget)


def min_coset_reps(rs: RootSystem, K: Iterable[int], I: Iterable[int], budget: int = DEFAULT_BUDGET) -> list[WeylElement]:
    """Elements ``x`` of W_I that are shortest in their coset ``W_K x``.

    Such ``x`` are characterised by ``<x(rho), alpha_k^vee> > 0`` for k in K.
    A left descent of a prefix is a left descent of the whole word, so the
    set is closed under taking prefixes and a breadth-first search that
    extends words on the right, pruning as it goes, reaches all of it.
    """
    K, I = nodes(K), nodes(I)
    if not set(K) <= set(I):
        raise ValueError(f"K={K} is not contained in I={I}")
    return list(_coset_bfs(rs, I, K, budget))


def _bfs(rs: RootSystem, I: NodeSet, budget: int) -> Iterator[WeylElement]:
    level = {rs.rho: ()}
    count = 0
    while level:
        nxt: dict[Weight, tuple[int, ...]] = {}
        for key in sorted(level, key=lambda k: k.coeffs):
            word = level[key]
            count += 1
            if count > budget:
                raise BudgetExceeded(f"more than {budget} Weyl group elements", count - 1)
            yield WeylElement(word, key, len(word))
            for i in I:
                if key.coeffs[i - 1] > 0:
                    new = reflect(rs, i, key)
                    if new not in nxt:
                        nxt[new] = (i,) + word
        level = nxt


def _coset_bfs(rs: RootSystem, I: NodeSet, K: NodeSet, budget: int) -> Iterator[WeylElement]:
    # each entry carries x(rho), x^{-1}(rho) and the images x(w_j) of the fundamental weights;
    # x s_i is longer than x iff <x^{-1}(rho), alpha_i^vee> > 0
    r = rs.rank
    alphas = [rs.simple_root_weights[i].coeffs for i in range(r)]
    basis = tuple(tuple(int(a == b) for a in range(r)) for b in range(r))
    level = {rs.rho: ((), rs.rho, basis)}
    count = 0
    while level:
        nxt: dict[Weight, tuple] = {}
        for key in sorted(level, key=lambda k: k.coeffs):
            word, inv, cols = level[key]
            count += 1
            if count > budget:
                raise BudgetExceeded(f"more than {budget} coset representatives", count - 1)
            yield WeylElement(word, key, len(word))
            for i in I:
                if inv.coeffs[i - 1] <= 0:
                    continue
                alpha = alphas[i - 1]
                x_alpha = [sum(alpha[j] * cols[j][a] for j in range(r) if alpha[j]) for a in range(r)]
                new = Weight(tuple(k - v for k, v in zip(key.coeffs, x_alpha)))
                if new in nxt or not all(new.coeffs[k - 1] > 0 for k in K):
                    continue
                new_cols = list(cols)
                new_cols[i - 1] = tuple(c - v for c, v in zip(cols[i - 1], x_alpha))
                nxt[new] = (word + (i,), reflect(rs, i, inv), tuple(new_cols))
        level = nxt


def stratify(elements: Iterable[WeylElement]) -> dict[int, list[WeylElement]]:
    out: dict[int, list[WeylElement]] = {}
    for w in elements:
        out.setdefault(w.length, []).append(w)
    return dict(sorted(out.items()))


def element_matrix(rs: RootSystem, w: WeylElement) -> np.ndarray:
    m = np.eye(rs.rank, dtype=np.int64)
    for i in w.word:
        m = m @ rs.reflection_matrices[i - 1]
    return m


def element_matrices(rs: RootSystem, elements: Sequence[WeylElement]) -> np.ndarray:
    """Stacked action matrices, shape ``(len(elements), rank, rank)``.

    Words produced by breadth-first search share prefixes or suffixes with
    shorter elements, so each matrix is usually one product away from one
    already computed.
    """
    out = np.empty((len(elements), rs.rank, rs.rank), dtype=np.int64)
    refl = rs.reflection_matrices
    memo: dict[tuple[int, ...], np.ndarray] = {(): np.eye(rs.rank, dtype=np.int64)}
    for k in sorted(range(len(elements)), key=lambda k: len(elements[k].word)):
        word = elements[k].word
        if word in memo:
            m = memo[word]
        elif word[1:] in memo:
            m = refl[word[0] - 1] @ memo[word[1:]]
        elif word[:-1] in memo:
            m = memo[word[:-1]] @ refl[word[-1] - 1]
        else:
            m = element_matrix(rs, elements[k])
        memo[word] = m
        out[k] = m
    return out
