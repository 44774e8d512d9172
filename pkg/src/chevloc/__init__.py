"""Elementary adjoint Chevalley groups over finite local rings and their mutual interpretation with the ring."""

from .errors import ChevlocError
from .gauss import GaussForm, big_cell_factor, code_eq, code_mul, gauss_decompose
from .group import ChevalleyGroup, FiniteGroupTable, GroupElement, enumerate_group
from .rings import LocalRing, make_ring
from .roots import RootSystem, build_root_system, deletion_closure, parse_system

__all__ = [
    "ChevalleyGroup",
    "ChevlocError",
    "FiniteGroupTable",
    "GaussForm",
    "GroupElement",
    "LocalRing",
    "RootSystem",
    "big_cell_factor",
    "build_root_system",
    "code_eq",
    "code_mul",
    "deletion_closure",
    "enumerate_group",
    "gauss_decompose",
    "make_ring",
    "parse_system",
]

__version__ = "0.1.0"
