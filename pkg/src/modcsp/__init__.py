"""Solvers for 2-SAT, HORN-SAT and LIN-2 under a global modular constraint."""

from .core import (
    GroupSpec,
    HornInstance,
    Lin2Instance,
    Literal,
    ModularSideConstraint,
    ResidueVector,
    TwoSatInstance,
    eval_side,
    group_add,
    normalize_unit_weights,
)
from .errors import *  # noqa: F401,F403

__version__ = "0.1.0"
