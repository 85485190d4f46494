"""Finite group actions on lattices: invariant and coinvariant sublattices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exact_linalg import IntMatrix, as_matrix, determinant, integer_kernel, vec_mat
from .lattices import Lattice, LatticeError, Sublattice, orthogonal_complement

# orders of symplectic automorphisms of K3 surfaces
K3_SYMPLECTIC_MAX_ORDER = 8


@dataclass(frozen=True)
class GroupAction:
    """Generators acting on row vectors of ``lattice`` by right multiplication."""

    lattice: Lattice
    generators: tuple[IntMatrix, ...]

    def __post_init__(self):
        gens = tuple(as_matrix(g) for g in self.generators)
        n = self.lattice.rank
        for g in gens:
            if g.shape != (n, n):
                raise LatticeError(f"generator of shape {g.shape} on a rank-{n} lattice")
        object.__setattr__(self, "generators", gens)


@dataclass(frozen=True)
class ActionReport:
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_action(action: GroupAction) -> ActionReport:
    G = action.lattice.gram
    problems = []
    for k, g in enumerate(action.generators):
        if abs(determinant(g)) != 1:
            problems.append(f"generator {k} is not invertible over Z")
        if g @ G @ g.T != G:
            problems.append(f"generator {k} does not preserve the Gram matrix")
    return ActionReport(problems)


def invariant_and_coinvariant(action: GroupAction) -> tuple[Sublattice, Sublattice]:
    """(L^G, S_G): the fixed sublattice and its orthogonal complement."""
    report = validate_action(action)
    if not report.valid:
        raise LatticeError("invalid action: " + "; ".join(report.violations))
    lat = action.lattice
    n = lat.rank
    eye = IntMatrix.identity(n)
    # v g = v for all g  <=>  (g - 1)^T v^T = 0
    stacked = IntMatrix.zeros(0, n)
    for g in action.generators:
        stacked = stacked.vstack((g - eye).T)
    fixed = Sublattice(lat, integer_kernel(stacked))
    return fixed, orthogonal_complement(fixed)


def picard_bound_from_action(action: GroupAction, invariant_classes: Sequence[Sequence[int]] = ()) -> int:
    """rk S_G, the lower bound it gives for the Picard number.

    Every class in ``invariant_classes`` (e.g. H^2, or a basis of T_X) must
    be fixed by every generator.
    """
    for cls in invariant_classes:
        cls = list(cls)
        for k, g in enumerate(action.generators):
            if vec_mat(cls, g) != cls:
                raise LatticeError(f"class {cls} is not fixed by generator {k}")
    _, coinv = invariant_and_coinvariant(action)
    return coinv.rank


def k3_symplectic_order_allowed(n: int) -> bool:
    if n < 1:
        raise ValueError("order must be at least 1")
    return n <= K3_SYMPLECTIC_MAX_ORDER
