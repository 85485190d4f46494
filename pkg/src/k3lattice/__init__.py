"""Exact lattice arithmetic for K3 Mukai lattices, cubic fourfold labels,
central charges and coinvariant lattices."""

from .exact_linalg import IntMatrix, hermite_normal_form, integer_kernel, smith_normal_form
from .lattices import (
    DiscriminantGroup,
    Lattice,
    LatticeError,
    LatticeInvariants,
    Sublattice,
    discriminant_group,
    invariants,
    make_standard,
    orthogonal_complement,
    saturate,
    vectors_of_norm,
)

__all__ = [
    "DiscriminantGroup",
    "IntMatrix",
    "Lattice",
    "LatticeError",
    "LatticeInvariants",
    "Sublattice",
    "discriminant_group",
    "hermite_normal_form",
    "integer_kernel",
    "invariants",
    "make_standard",
    "orthogonal_complement",
    "saturate",
    "smith_normal_form",
    "vectors_of_norm",
]
