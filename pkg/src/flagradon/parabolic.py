"""Parabolic subsystems, dominance cones and the correspondence data."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidSpec
from .root_system import Root, RootSystem, Weight
from .weyl import NodeSet, nodes


@dataclass(frozen=True)
class CorrespondenceSpec:
    """The double fibration X_I <- X_{I cap J} -> X_J.

    ``I`` and ``J`` must differ; containment in either direction is allowed.
    """

    rs: RootSystem
    I: NodeSet
    J: NodeSet

    def __post_init__(self):
        I, J = nodes(self.I), nodes(self.J)
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "J", J)
        bad = [i for i in I + J if not 1 <= i <= self.rs.rank]
        if bad:
            raise InvalidSpec(f"nodes {sorted(set(bad))} outside 1..{self.rs.rank}")
        if I == J:
            raise InvalidSpec(f"I and J must differ (both {list(I)})")

    @property
    def IJ(self) -> NodeSet:
        return tuple(i for i in self.I if i in self.J)

    @classmethod
    def maximal(cls, rs: RootSystem, p: int, q: int) -> CorrespondenceSpec:
        """I = I_0 minus {p}, J = I_0 minus {q}."""
        return cls(rs, tuple(i for i in rs.nodes if i != p), tuple(i for i in rs.nodes if i != q))


def support_mask(rs: RootSystem, I: Iterable[int]) -> np.ndarray:
    """Boolean mask over the positive roots: True where the root lies in Delta_I."""
    I = set(nodes(I))
    return np.array([r.support() <= I for r in rs.positive_roots], dtype=bool)


def delta_plus(rs: RootSystem, I: Iterable[int]) -> list[Root]:
    mask = support_mask(rs, I)
    return [r for r, m in zip(rs.positive_roots, mask) if m]


def sum_of_roots(rs: RootSystem, mask: np.ndarray) -> Weight:
    return Weight.of(rs.root_weight_matrix[mask].sum(axis=0))


def two_rho_complement(rs: RootSystem, I: Iterable[int]) -> Weight:
    """``2 rho_I``, the sum of the positive roots outside Delta_I."""
    return sum_of_roots(rs, ~support_mask(rs, I))


def gamma_IJ(spec: CorrespondenceSpec) -> Weight:
    """Sum of the roots in Delta_J^+ minus Delta_I (weight of the relative canonical bundle)."""
    rs = spec.rs
    return sum_of_roots(rs, support_mask(rs, spec.J) & ~support_mask(rs, spec.I))


def cone_membership(lam: Weight, I: Iterable[int]) -> tuple[bool, bool]:
    """(I-dominant, vanishes on every simple coroot of I)."""
    vals = [lam.coeffs[i - 1] for i in nodes(I)]
    return all(v >= 0 for v in vals), all(v == 0 for v in vals)
