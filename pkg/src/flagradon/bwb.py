"""Relative Borel-Weil-Bott for the projection X_I -> X_J, I contained in J."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotDominant, NotNested
from .parabolic import cone_membership, two_rho_complement
from .root_system import RootSystem, Weight
from .weyl import dominance_sort, longest_element, multiply, nodes


@dataclass(frozen=True)
class PushforwardResult:
    """Either zero (``weight is None``) or one line bundle in one degree."""

    weight: Weight | None = None
    degree: int | None = None

    @property
    def is_zero(self) -> bool:
        return self.weight is None


ZERO = PushforwardResult()


def bwb_pushforward(rs: RootSystem, I: Iterable[int], J: Iterable[int], lam: Weight) -> PushforwardResult:
    """Direct image of O_{X_I}(lam) along X_I -> X_J.

    With ``xi = lam + rho - 2 rho_I``: zero if ``xi`` is singular for Delta_J,
    otherwise ``O(w xi - (rho - 2 rho_J))`` placed in degree
    ``l(w_J w) - l(w_I)``, where ``w`` in W_J makes ``w xi`` J-dominant.
    """
    I, J = nodes(I), nodes(J)
    rs.check(lam)
    if not set(I) <= set(J):
        raise NotNested(f"I={list(I)} is not contained in J={list(J)}")
    if not cone_membership(lam, I)[0]:
        raise NotDominant(f"{lam} is not dominant for I={list(I)}")
    xi = lam + rs.rho - two_rho_complement(rs, I)
    sorted_ = dominance_sort(rs, xi, J)
    if sorted_ is None:
        return ZERO
    w, top = sorted_
    weight = top - (rs.rho - two_rho_complement(rs, J))
    degree = multiply(rs, longest_element(rs, J), w).length - longest_element(rs, I).length
    return PushforwardResult(weight, degree)
