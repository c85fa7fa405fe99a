"""Exact computations with Bouc's B-groups: subgroup lattices, Möbius functions,
Burnside-ring idempotents, the m_{G,N} invariant and the largest quotient B-group."""

from .bgroup import beta, is_b_group, m_value
from .catalogue import construct, identify, sweep
from .lattice import all_subgroups, mobius
from .perm_core import LIMITS, Group, Subgroup

__all__ = [
    "LIMITS", "Group", "Subgroup", "all_subgroups", "beta", "construct",
    "identify", "is_b_group", "m_value", "mobius", "sweep",
]
