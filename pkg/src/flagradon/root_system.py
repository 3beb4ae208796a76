"""Finite root systems in fundamental-weight coordinates.

All weights are integer vectors in the basis of fundamental weights, so the
pairing with a simple coroot is a coordinate read-off and every computation
downstream stays in exact integer arithmetic.  Node labels are 1-based, as in
Bourbaki; tuple positions are 0-based.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidCartanType, UnsupportedFamily

CLASSICAL = ("A", "B", "C", "D")
FAMILIES = CLASSICAL + ("generic",)
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "generic": 1}


@dataclass(frozen=True, slots=True)
class Weight:
    """Integer vector in the fundamental-weight basis."""

    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, values: Iterable[int]) -> Weight:
        return cls(tuple(int(v) for v in values))

    @classmethod
    def zero(cls, rank: int) -> Weight:
        return cls((0,) * rank)

    @classmethod
    def fundamental(cls, rank: int, i: int, scale: int = 1) -> Weight:
        """``scale`` times the fundamental weight of node ``i`` (1-based)."""
        c = [0] * rank
        c[i - 1] = scale
        return cls(tuple(c))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def _check(self, other: Weight) -> None:
        if len(other.coeffs) != len(self.coeffs):
            raise DimensionMismatch(f"rank {len(self.coeffs)} vs {len(other.coeffs)}")

    def __add__(self, other: Weight) -> Weight:
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Weight) -> Weight:
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Weight:
        return Weight(tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> Weight:
        return Weight(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return format_weight(self)


def format_weight(w: Weight) -> str:
    """Render as e.g. ``-2ϖ1 + ϖ2``; the zero weight renders as ``0``."""
    parts = []
    for i, c in enumerate(w.coeffs, start=1):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{mag}ϖ{i}"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


@dataclass(frozen=True, slots=True)
class Root:
    """Root in the simple-root basis."""

    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs) and any(self.coeffs)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, c in enumerate(self.coeffs) if c)


@dataclass(frozen=True, slots=True)
class Coroot:
    """Coroot in the simple-coroot basis."""

    coeffs: tuple[int, ...]


@dataclass(frozen=True)
class CartanType:
    """A finite Cartan type.

    For the classical families the matrix is derived from the Bourbaki simple
    roots; for ``generic`` the caller supplies it.  Convention:
    ``cartan[i][j] = <alpha_j, alpha_i^vee>``.
    """

    family: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidCartanType(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < MIN_RANK[self.family]:
            raise InvalidCartanType(
                f"type {self.family} needs rank >= {MIN_RANK[self.family]}, got {self.rank}"
            )
        if self.family == "generic":
            if self.cartan_matrix is None:
                raise InvalidCartanType("generic type needs an explicit Cartan matrix")
            m = tuple(tuple(int(v) for v in row) for row in self.cartan_matrix)
            object.__setattr__(self, "cartan_matrix", m)
            _validate_generic(m, self.rank)
        elif self.cartan_matrix is not None:
            raise InvalidCartanType("a Cartan matrix is only accepted for the generic family")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}" if self.family != "generic" else f"generic{self.rank}"

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        if self.cartan_matrix is not None:
            return self.cartan_matrix
        alphas = simple_roots_epsilon(self.family, self.rank)
        n = self.rank
        return tuple(
            tuple(2 * _ip(alphas[j], alphas[i]) // _ip(alphas[i], alphas[i]) for j in range(n))
            for i in range(n)
        )


def _ip(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def simple_roots_epsilon(family: str, n: int) -> list[tuple[int, ...]]:
    """Bourbaki simple roots in the orthonormal epsilon basis."""
    dim = n + 1 if family == "A" else n

    def e(i, j=None, sj=-1):
        v = [0] * dim
        v[i] += 1
        if j is not None:
            v[j] += sj
        return tuple(v)

    if family == "A":
        return [e(i, i + 1) for i in range(n)]
    if family == "B":
        return [e(i, i + 1) for i in range(n - 1)] + [e(n - 1)]
    if family == "C":
        return [e(i, i + 1) for i in range(n - 1)] + [tuple(2 * x for x in e(n - 1))]
    if family == "D":
        return [e(i, i + 1) for i in range(n - 1)] + [e(n - 2, n - 1, +1)]
    raise UnsupportedFamily(f"no epsilon realization for family {family!r}")


def _validate_generic(m, rank: int) -> None:
    if len(m) != rank or any(len(row) != rank for row in m):
        raise InvalidCartanType(f"Cartan matrix must be {rank}x{rank}")
    for i in range(rank):
        if m[i][i] != 2:
            raise InvalidCartanType("Cartan matrix diagonal must be 2")
        for j in range(rank):
            if i != j:
                if m[i][j] > 0:
                    raise InvalidCartanType("off-diagonal Cartan entries must be <= 0")
                if (m[i][j] == 0) != (m[j][i] == 0):
                    raise InvalidCartanType("a_ij = 0 must imply a_ji = 0")
    d = _symmetrizer(m)
    if d is None:
        raise InvalidCartanType("Cartan matrix is not symmetrizable")
    import sympy

    sym = sympy.Matrix(rank, rank, lambda i, j: d[i] * m[i][j])
    if not sym.is_positive_definite:
        raise InvalidCartanType("Cartan matrix is not of finite type")


def _symmetrizer(m) -> list[Fraction] | None:
    """Positive d with d_i a_ij = d_j a_ji, or None."""
    n = len(m)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or m[i][j] == 0:
                    continue
                dj = d[i] * m[i][j] / m[j][i]
                if d[j] is None:
                    d[j] = dj
                    queue.append(j)
                elif d[j] != dj:
                    return None
    return d  # type: ignore[return-value]


class RootSystem:
    """Positive roots, coroots and basis-change data for one Cartan type.

    Treated as immutable after construction; build through
    :func:`build_root_system`, which caches instances.
    """

    def __init__(self, cartan_type: CartanType):
        self.cartan_type = cartan_type
        self.rank = n = cartan_type.rank
        self.cartan = cartan_type.matrix()
        roots, coroots = _close_roots(self.cartan)
        order = sorted(range(len(roots)), key=lambda k: roots[k])
        self.positive_roots: tuple[Root, ...] = tuple(Root(roots[k]) for k in order)
        self.coroots: tuple[Coroot, ...] = tuple(Coroot(coroots[k]) for k in order)
        self._index = {r: k for k, r in enumerate(self.positive_roots)}
        cm = np.array(self.cartan, dtype=np.int64)
        # column j of the Cartan matrix is alpha_j in fundamental-weight coordinates
        root_mat = np.array([r.coeffs for r in self.positive_roots], dtype=np.int64)
        self.root_weight_matrix = root_mat @ cm.T
        self.coroot_matrix = np.array([c.coeffs for c in self.coroots], dtype=np.int64)
        self.simple_root_weights = tuple(Weight.of(cm[:, j]) for j in range(n))
        mats = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            mats[i] = np.eye(n, dtype=np.int64)
            mats[i][:, i] -= cm[:, i]
        self.reflection_matrices = mats
        self.rho = Weight((1,) * n)

    def __repr__(self) -> str:
        return f"RootSystem({self.cartan_type.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and other.cartan_type == self.cartan_type

    def __hash__(self) -> int:
        return hash(self.cartan_type)

    @property
    def family(self) -> str:
        return self.cartan_type.family

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    def index(self, root: Root) -> int:
        try:
            return self._index[root]
        except KeyError:
            raise ValueError(f"{root} is not a positive root of {self}") from None

    def coroot_of(self, root: Root) -> Coroot:
        if all(c <= 0 for c in root.coeffs):
            return Coroot(tuple(-c for c in self.coroots[self.index(Root(tuple(-c for c in root.coeffs)))].coeffs))
        return self.coroots[self.index(root)]

    def simple_coroot(self, i: int) -> Coroot:
        c = [0] * self.rank
        c[i - 1] = 1
        return Coroot(tuple(c))

    def root_weight(self, k: int) -> Weight:
        """Fundamental-weight coordinates of the k-th positive root."""
        return Weight.of(self.root_weight_matrix[k])

    def pairings(self, lam: Weight | Sequence[int]) -> np.ndarray:
        """``<lam, alpha^vee>`` for every positive root, in root order."""
        return self.coroot_matrix @ np.asarray(tuple(lam), dtype=np.int64)

    def check(self, lam: Weight) -> None:
        if len(lam) != self.rank:
            raise DimensionMismatch(f"weight of rank {len(lam)} used with {self}")


def _close_roots(cartan) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Orbit closure of the simple (root, coroot) pairs under simple reflections."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    queue = deque()
    for s in simple:
        seen[s] = s
        queue.append(s)
    while queue:
        beta = queue.popleft()
        beta_v = seen[beta]
        for i in range(n):
            # <beta, alpha_i^vee> and <alpha_i, beta^vee>
            b = sum(beta[j] * cartan[i][j] for j in range(n))
            bv = sum(beta_v[j] * cartan[j][i] for j in range(n))
            new = tuple(beta[j] - (b if j == i else 0) for j in range(n))
            new_v = tuple(beta_v[j] - (bv if j == i else 0) for j in range(n))
            if new not in seen:
                seen[new] = new_v
                queue.append(new)
    pos = [r for r in seen if all(c >= 0 for c in r)]
    return pos, [seen[r] for r in pos]


@lru_cache(maxsize=None)
def build_root_system(ct: CartanType) -> RootSystem:
    return RootSystem(ct)


def root_system(family: str, rank: int, cartan_matrix=None) -> RootSystem:
    """Shorthand: ``root_system("B", 3)``."""
    if cartan_matrix is not None:
        cartan_matrix = tuple(tuple(row) for row in cartan_matrix)
    return build_root_system(CartanType(family, rank, cartan_matrix))


def pairing(lam: Weight, c: Coroot, rs: RootSystem) -> int:
    if len(lam) != rs.rank or len(c.coeffs) != rs.rank:
        raise DimensionMismatch(f"expected rank {rs.rank}")
    return sum(a * b for a, b in zip(lam.coeffs, c.coeffs))


def root_as_weight(alpha: Root, rs: RootSystem) -> Weight:
    if len(alpha.coeffs) != rs.rank:
        raise DimensionMismatch(f"expected rank {rs.rank}")
    rs.coroot_of(alpha)  # membership
    n = rs.rank
    return Weight(tuple(sum(rs.cartan[i][j] * alpha.coeffs[j] for j in range(n)) for i in range(n)))


def fundamental_weights_epsilon(family: str, n: int) -> list[tuple[Fraction, ...]]:
    """Bourbaki fundamental weights in epsilon coordinates (A normalized to trace 0)."""
    half = Fraction(1, 2)
    out = []
    if family == "A":
        for p in range(1, n + 1):
            shift = Fraction(p, n + 1)
            out.append(tuple(Fraction(int(i < p)) - shift for i in range(n + 1)))
        return out
    if family not in ("B", "C", "D"):
        raise UnsupportedFamily(f"no epsilon coordinates for family {family!r}")
    for p in range(1, n + 1):
        v = [Fraction(int(i < p)) for i in range(n)]
        if family == "B" and p == n:
            v = [half] * n
        elif family == "D" and p == n - 1:
            v = [half] * (n - 1) + [-half]
        elif family == "D" and p == n:
            v = [half] * n
        out.append(tuple(v))
    return out


def weight_to_epsilon(lam: Weight, rs: RootSystem) -> tuple[Fraction, ...]:
    if rs.family not in CLASSICAL:
        raise UnsupportedFamily("epsilon coordinates exist only for families A, B, C, D")
    rs.check(lam)
    basis = fundamental_weights_epsilon(rs.family, rs.rank)
    dim = len(basis[0])
    return tuple(sum((lam[i] * basis[i][k] for i in range(rs.rank)), Fraction(0)) for k in range(dim))


def epsilon_to_weight(v: Sequence, rs: RootSystem) -> Weight:
    """Inverse of :func:`weight_to_epsilon`; for A the trace direction is ignored."""
    if rs.family not in CLASSICAL:
        raise UnsupportedFamily("epsilon coordinates exist only for families A, B, C, D")
    alphas = simple_roots_epsilon(rs.family, rs.rank)
    if len(v) != len(alphas[0]):
        raise DimensionMismatch(f"expected {len(alphas[0])} epsilon coordinates")
    out = []
    for a in alphas:
        c = Fraction(2 * _ip(v, a)) / _ip(a, a)
        if c.denominator != 1:
            raise ValueError(f"{tuple(v)} is not in the weight lattice")
        out.append(int(c))
    return Weight(tuple(out))
