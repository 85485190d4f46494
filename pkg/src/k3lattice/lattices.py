"""Gram-matrix lattices, sublattices and their basic invariants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .exact_linalg import (
    IntMatrix,
    as_matrix,
    bilinear,
    determinant,
    direct_sum,
    integer_kernel,
    invariant_factors,
    rank,
    row_basis,
    smith_normal_form,
)


class LatticeError(ValueError):
    """A lattice operation was asked to do something its inputs forbid."""


@dataclass(frozen=True)
class Lattice:
    """A free quadratic module given by a symmetric integer Gram matrix."""

    gram: IntMatrix
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        g = as_matrix(self.gram)
        if not g.is_symmetric():
            raise LatticeError("Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return self.gram.rows

    def pair(self, u: Sequence, v: Sequence):
        if len(u) != self.rank or len(v) != self.rank:
            raise LatticeError("vector length does not match lattice rank")
        return bilinear(u, self.gram, v)

    def norm(self, v: Sequence):
        return self.pair(v, v)

    def twist(self, n: int) -> "Lattice":
        name = f"{self.name}({n})" if self.name and n != 1 else self.name
        return Lattice(self.gram.scale(n), name)

    def __add__(self, other: "Lattice") -> "Lattice":
        """Orthogonal direct sum."""
        name = f"{self.name}+{other.name}" if self.name and other.name else None
        return Lattice(direct_sum(self.gram, other.gram), name)

    def det(self) -> int:
        return determinant(self.gram)


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of ``ambient`` spanned by the rows of ``basis``.

    The rows are ambient coordinates and must be linearly independent.
    """

    ambient: Lattice
    basis: IntMatrix

    def __post_init__(self):
        b = self.basis
        if not isinstance(b, IntMatrix):
            b = IntMatrix.from_rows(b, cols=self.ambient.rank)
        if b.cols != self.ambient.rank:
            raise LatticeError(
                f"basis vectors have length {b.cols}, ambient rank is {self.ambient.rank}"
            )
        if rank(b) != b.rows:
            raise LatticeError("basis rows are linearly dependent")
        object.__setattr__(self, "basis", b)

    @property
    def rank(self) -> int:
        return self.basis.rows

    @property
    def gram(self) -> IntMatrix:
        return self.basis @ self.ambient.gram @ self.basis.T

    def as_lattice(self, name: str | None = None) -> Lattice:
        return Lattice(self.gram, name)

    def same_span(self, other: "Sublattice") -> bool:
        return row_basis(self.basis) == row_basis(other.basis)


@dataclass(frozen=True)
class LatticeInvariants:
    rank: int
    det: int
    signature: tuple[int, int, int]
    even: bool

    @property
    def abs_det(self) -> int:
        return abs(self.det)

    @property
    def unimodular(self) -> bool:
        return abs(self.det) == 1

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "det": self.det,
            "abs_det": self.abs_det,
            "signature": list(self.signature),
            "even": self.even,
            "unimodular": self.unimodular,
        }


@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


# ---------------------------------------------------------------------------
# Standard lattices

_E8_GRAM = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, -1),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 0, 0, 2),
)


def _base_gram(name: str, n: int | None) -> tuple[IntMatrix, str]:
    key = name.upper()
    if key == "U":
        return IntMatrix.from_rows([[0, 1], [1, 0]]), "U"
    if key == "A2":
        return IntMatrix.from_rows([[2, -1], [-1, 2]]), "A2"
    if key == "E8":
        return IntMatrix.from_rows(_E8_GRAM), "E8"
    if key == "E8_NEG":
        return IntMatrix.from_rows(_E8_GRAM).scale(-1), "E8(-1)"
    if key == "RANK1":
        if not n:
            raise LatticeError("RANK1 needs a nonzero integer n")
        return IntMatrix.from_rows([[n]]), f"<{n}>"
    if key == "MUKAI24":
        u = IntMatrix.from_rows([[0, 1], [1, 0]])
        e8n = IntMatrix.from_rows(_E8_GRAM).scale(-1)
        return direct_sum(u, u, u, u, e8n, e8n), "MUKAI24"
    raise LatticeError(f"unknown standard lattice {name!r}")


def make_standard(name: str, twist: int = 1, copies: int = 1, n: int | None = None) -> Lattice:
    """Build one of the named lattices, scaled by ``twist``, summed ``copies`` times.

    ``name`` is one of ``U``, ``A2``, ``E8``, ``E8_NEG``, ``RANK1`` (needs
    ``n``) or ``MUKAI24``, the latter being U^4 + E8(-1)^2.
    """
    if copies < 1:
        raise LatticeError("copies must be at least 1")
    if twist == 0:
        raise LatticeError("twist must be nonzero")
    g, label = _base_gram(name, n)
    g = g.scale(twist)
    if twist != 1:
        label = f"{label}({twist})"
    if copies > 1:
        g = direct_sum(*([g] * copies))
        label = f"{label}^{copies}"
    return Lattice(g, label)


def hyperbolic_plane(twist: int = 1) -> Lattice:
    return make_standard("U", twist)


def rank_one(n: int) -> Lattice:
    return make_standard("RANK1", n=n)


def mukai24() -> Lattice:
    return make_standard("MUKAI24")


# ---------------------------------------------------------------------------
# Invariants


def signature(gram: IntMatrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts by exact Lagrange diagonalization."""
    gram = as_matrix(gram)
    n = gram.rows
    a = [[Fraction(x) for x in r] for r in gram]
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # congruence e_i -> e_i + e_j makes the diagonal entry 2*a_ij
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            if a[i][piv] != 0:
                f = a[i][piv] / p
                for k in active:
                    a[i][k] -= f * a[piv][k]
        for i in active:
            a[piv][i] = a[i][piv] = Fraction(0)
    return pos, neg, n - pos - neg


def invariants(lat: Lattice) -> LatticeInvariants:
    g = lat.gram
    return LatticeInvariants(
        rank=lat.rank,
        det=determinant(g),
        signature=signature(g),
        even=all(g[i, i] % 2 == 0 for i in range(g.rows)),
    )


def is_definite(lat: Lattice) -> bool:
    p, q, z = signature(lat.gram)
    return z == 0 and (p == 0 or q == 0)


def discriminant_group(lat: Lattice) -> DiscriminantGroup:
    if lat.rank and determinant(lat.gram) == 0:
        raise LatticeError("degenerate form")
    return DiscriminantGroup(tuple(d for d in invariant_factors(lat.gram) if d > 1))


# ---------------------------------------------------------------------------
# Sublattice operations


def orthogonal_complement(sub: Sublattice) -> Sublattice:
    """Saturated sublattice of ambient vectors orthogonal to every basis row."""
    amb = sub.ambient
    if amb.rank and determinant(amb.gram) == 0:
        raise LatticeError("orthogonal complement needs a nondegenerate ambient form")
    if sub.rank == 0:
        return Sublattice(amb, IntMatrix.identity(amb.rank))
    return Sublattice(amb, integer_kernel(sub.basis @ amb.gram))


def saturation_index(sub: Sublattice) -> int:
    """Index of ``sub`` in its primitive closure."""
    out = 1
    for d in invariant_factors(sub.basis):
        out *= d
    return out


def saturate(sub: Sublattice) -> Sublattice:
    """Primitive closure: the rational span of ``sub`` intersected with the ambient."""
    n = sub.ambient.rank
    if sub.rank == 0:
        return sub
    perp = integer_kernel(sub.basis)
    if perp.rows == 0:
        return Sublattice(sub.ambient, IntMatrix.identity(n))
    return Sublattice(sub.ambient, integer_kernel(perp))


def is_primitive(sub: Sublattice) -> bool:
    return saturation_index(sub) == 1


def span(ambient: Lattice, vectors: Sequence[Sequence[int]]) -> Sublattice:
    """Sublattice generated by arbitrary (possibly dependent) integer vectors."""
    m = IntMatrix.from_rows(vectors, cols=ambient.rank)
    return Sublattice(ambient, row_basis(m))


# ---------------------------------------------------------------------------
# Short vectors


def _cholesky_form(gram: Sequence[Sequence]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Write x G x^T = sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2 exactly.

    Raises ``LatticeError`` unless ``gram`` is positive definite.
    """
    n = len(gram)
    a = [[Fraction(x) for x in r] for r in gram]
    q = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if a[i][i] <= 0:
            raise LatticeError("form is not positive definite")
        q[i] = a[i][i]
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / q[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j][k] -= q[i] * mu[i][j] * mu[i][k]
                a[k][j] = a[j][k]
    return q, mu


def _int_range(center: Fraction, q: Fraction, budget: Fraction) -> range:
    """Integers x with q*(x - center)^2 <= budget."""
    if budget < 0:
        return range(0)
    r2 = budget / q
    r = isqrt(r2.numerator // r2.denominator) + 1
    lo = int(center // 1) - r
    hi = int(center // 1) + r + 1
    while lo <= hi and q * (lo - center) ** 2 > budget:
        lo += 1
    while hi >= lo and q * (hi - center) ** 2 > budget:
        hi -= 1
    return range(lo, hi + 1)


def short_vectors(gram, bound) -> list[tuple[int, ...]]:
    """All integer vectors with ``x G x^T <= bound`` for a positive-definite ``G``.

    ``gram`` may have rational entries.  Fincke-Pohst enumeration, exact.
    Output is sorted lexicographically.
    """
    rows = [list(r) for r in gram]
    n = len(rows)
    bound = Fraction(bound)
    if n == 0:
        return [()] if bound >= 0 else []
    q, mu = _cholesky_form(rows)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, budget: Fraction):
        center = -sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for xi in _int_range(center, q[i], budget):
            x[i] = xi
            rest = budget - q[i] * (xi - center) ** 2
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, rest)
        x[i] = 0

    rec(n - 1, bound)
    out.sort()
    return out


@dataclass(frozen=True)
class VectorList:
    vectors: list[tuple[int, ...]]
    complete: bool


def vectors_of_norm(lat: Lattice, n: int, box_bound: int = 0) -> VectorList:
    """All vectors v with v G v^T == n.

    Definite lattices are enumerated completely and ``box_bound`` is
    ignored.  Otherwise only the box ``[-box_bound, box_bound]^rank`` is
    searched and the result is flagged incomplete.
    """
    if box_bound < 0:
        raise LatticeError("box_bound must be nonnegative")
    g = lat.gram
    p, m, z = signature(g)
    if z == 0 and m == 0:
        vecs = [v for v in short_vectors(g.tolist(), n) if lat.norm(v) == n]
        return VectorList(vecs, True)
    if z == 0 and p == 0:
        vecs = [v for v in short_vectors((-g).tolist(), -n) if lat.norm(v) == n]
        return VectorList(vecs, True)
    if box_bound == 0:
        raise LatticeError("bound required")
    rng = range(-box_bound, box_bound + 1)
    vecs = [v for v in itertools.product(rng, repeat=lat.rank) if lat.norm(v) == n]
    return VectorList(vecs, False)
