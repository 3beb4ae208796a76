"""Exact Grothendieck-group Radon transforms of line bundles between flag manifolds."""
from .errors import (
    BudgetExceeded,
    ConsistencyError,
    DimensionMismatch,
    FlagRadonError,
    InvalidCartanType,
    InvalidSpec,
    NoExtremalPair,
    NotDominant,
    NotNested,
    UnsupportedFamily,
)
from .root_system import CartanType, RootSystem, Weight, root_system
from .weyl import WeylElement
from .parabolic import CorrespondenceSpec
from .bwb import PushforwardResult, bwb_pushforward
from .radon import (
    GammaEntry,
    GrothendieckClass,
    RadonReport,
    ExtremalReport,
    big_gamma,
    classify,
    classify_extremal,
    euler_class,
    extremal_pair,
    gamma_lambda,
    infinitesimal_vanishing_test,
    xi_lambda,
)

__version__ = "0.1.0"
