"""
Interpolation
=============

Shift systems, the interpolants built on them and the choice of the
shift offset epsilon.

Modules
-------
shift
    Block-diagonal shift systems ``(S, L)`` with closed-form Lyapunov and
    Sylvester solutions.
pork
    Pole-placement and PORK free parameters, I-PORK and O-PORK interpolants.
epsilon
    Epsilon bounds from the sampled frequencies.
"""

from src.interpolation.epsilon import EpsilonContext, EpsilonPlan, choose_epsilon
from src.interpolation.pork import (
    FreeParameter,
    ZetaMode,
    i_pork,
    modal_zeta,
    o_pork,
    pole_place_zeta,
    pork_gramian,
    pork_zeta,
    read_zeta_file,
    resolve_zeta,
    supplied_zeta,
    write_zeta_file,
)
from src.interpolation.shift import ShiftSystem, build_shift_system

__all__ = [
    "ShiftSystem",
    "build_shift_system",
    "FreeParameter",
    "ZetaMode",
    "pork_gramian",
    "pork_zeta",
    "pole_place_zeta",
    "modal_zeta",
    "supplied_zeta",
    "resolve_zeta",
    "i_pork",
    "o_pork",
    "read_zeta_file",
    "write_zeta_file",
    "EpsilonContext",
    "EpsilonPlan",
    "choose_epsilon",
]
