"""Discriminant arithmetic of special cubic fourfolds."""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import IntMatrix
from .lattices import Lattice, LatticeError, Sublattice, invariants, orthogonal_complement, saturation_index

# self-intersection of the square of the hyperplane class on a cubic fourfold
H2_SQUARED = 3


@dataclass(frozen=True)
class HassettVerdict:
    d: int
    star: bool
    star_star: bool
    witness: int | None = None

    @property
    def admissible(self) -> bool:
        return self.star and self.star_star

    def as_dict(self) -> dict:
        out = {"d": self.d, "star": self.star, "star_star": self.star_star, "admissible": self.admissible}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n >= 1`` by trial division."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def condition_star(d: int) -> bool:
    return d > 6 and d % 6 in (0, 2)


def condition_star_star(d: int) -> tuple[bool, int | None]:
    """Whether ``d`` avoids the divisors 4, 9 and odd primes p = 2 mod 3.

    On failure the second item is the smallest offending divisor.
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    bad = []
    if d % 4 == 0:
        bad.append(4)
    if d % 9 == 0:
        bad.append(9)
    primes = [p for p in prime_factors(d) if p % 2 == 1 and p % 3 == 2]
    if primes:
        bad.append(primes[0])
    if bad:
        return False, min(bad)
    return True, None


def verdict(d: int) -> HassettVerdict:
    star = condition_star(d)
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    ok, witness = condition_star_star(d)
    return HassettVerdict(d, star, ok, witness)


def admissible_discriminants(max_d: int) -> list[int]:
    if max_d < 1:
        raise ValueError("max must be at least 1")
    return [d for d in range(1, max_d + 1) if condition_star(d) and condition_star_star(d)[0]]


def labeled_k_gram(d: int) -> Lattice:
    """Canonical positive-definite rank-2 Gram containing H^2 (norm 3) with determinant d.

    This is one representative, not a uniqueness statement.
    """
    if d <= 0 or d % 6 not in (0, 2):
        raise LatticeError(f"no rank-2 label with disc {d} containing h^2 = 3")
    if d % 6 == 0:
        g = [[H2_SQUARED, 0], [0, d // 3]]
    else:
        g = [[H2_SQUARED, 1], [1, (d + 1) // 3]]
    return Lattice(IntMatrix.from_rows(g), f"K_{d}")


@dataclass(frozen=True)
class DiscChainReport:
    det_k: int
    det_perp: int

    @property
    def equal(self) -> bool:
        return self.det_k == self.det_perp

    def as_dict(self) -> dict:
        return {"abs_det_K": self.det_k, "abs_det_perp": self.det_perp, "equal": self.equal}


def check_disc_chain(k: Sublattice) -> DiscChainReport:
    """Compare |det K| with |det K^perp| inside a unimodular ambient."""
    if abs(k.ambient.det()) != 1:
        raise LatticeError("ambient lattice is not unimodular")
    idx = saturation_index(k)
    if idx != 1:
        raise LatticeError(f"not primitive, saturation index {idx}")
    dk = invariants(k.as_lattice()).abs_det
    if dk == 0:
        raise LatticeError("induced form on K is degenerate")
    perp = orthogonal_complement(k)
    return DiscChainReport(dk, invariants(perp.as_lattice()).abs_det)
