"""Central charges over integral lattices and the finiteness sets they control.

A charge is a complexified lattice vector Omega = re + i*im with rational
coordinates; it acts on integral classes by ``w -> (Omega, w)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_linalg import IntMatrix, dot, primitive_part, vec_mat
from .lattices import (
    Lattice,
    LatticeError,
    Sublattice,
    orthogonal_complement,
    short_vectors,
    signature,
    vectors_of_norm,
)
from .mukai import mukai_lattice_of_polarization


@dataclass(frozen=True)
class ChargeVector:
    lattice: Lattice
    re: tuple[Fraction, ...]
    im: tuple[Fraction, ...]

    def __post_init__(self):
        re = tuple(Fraction(x) for x in self.re)
        im = tuple(Fraction(x) for x in self.im)
        if len(re) != self.lattice.rank or len(im) != self.lattice.rank:
            raise LatticeError("charge coordinates do not match lattice rank")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def plane_gram(self) -> list[list[Fraction]]:
        L = self.lattice
        return [[L.pair(self.re, self.re), L.pair(self.re, self.im)],
                [L.pair(self.im, self.re), L.pair(self.im, self.im)]]

    def scaled(self, n) -> "ChargeVector":
        return ChargeVector(self.lattice, [n * x for x in self.re], [n * x for x in self.im])


def exp_ih(d: int, n: int = 1) -> ChargeVector:
    """e^{i n h} = (1, n h i, -n^2 d / 2) on H^0 + Z h + H^4 with h^2 = d."""
    lat = mukai_lattice_of_polarization(d)
    return ChargeVector(lat, (1, 0, Fraction(-n * n * d, 2)), (0, n, 0))


def central_charge(omega: ChargeVector, w: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(Omega, w) as an exact pair (real part, imaginary part)."""
    if len(w) != omega.lattice.rank:
        raise LatticeError("vector length does not match lattice rank")
    g = vec_mat(list(w), omega.lattice.gram)
    return Fraction(dot(omega.re, g)), Fraction(dot(omega.im, g))


def positive_plane_check(omega: ChargeVector) -> bool:
    """Whether re, im span a positive-definite plane."""
    (a, b), (_, c) = omega.plane_gram()
    return a > 0 and a * c - b * b > 0


def _require_signature_2k(lat: Lattice):
    p, _, z = signature(lat.gram)
    if p != 2 or z != 0:
        raise LatticeError("completeness requires signature (2,k)")


def _plane_complement(omega: ChargeVector) -> Sublattice:
    rows = [primitive_part(omega.re), primitive_part(omega.im)]
    return orthogonal_complement(Sublattice(omega.lattice, IntMatrix.from_rows(rows)))


@dataclass(frozen=True)
class P0Verdict:
    verdict: str  # "InP0", "Excluded" or "NotPositivePlane"
    delta: tuple[int, ...] | None = None

    def as_dict(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.delta is not None:
            out["delta"] = list(self.delta)
        return out


def minus_two_classes_orthogonal(omega: ChargeVector) -> list[tuple[int, ...]]:
    """All (-2)-classes orthogonal to both re and im (ambient coordinates, sorted)."""
    perp = _plane_complement(omega)
    if perp.rank == 0:
        return []
    sub = perp.as_lattice()
    found = vectors_of_norm(sub, -2).vectors
    basis = perp.basis
    out = sorted(tuple(vec_mat(list(c), basis)) for c in found)
    return out


def p_zero_check(omega: ChargeVector) -> P0Verdict:
    """Decide whether Omega lies off every hyperplane delta^perp, delta^2 = -2.

    Requires signature (2, k): then the classes orthogonal to the plane form a
    negative-definite lattice and the search is exhaustive.  The chosen
    witness is the lexicographically largest such delta.
    """
    _require_signature_2k(omega.lattice)
    if not positive_plane_check(omega):
        return P0Verdict("NotPositivePlane")
    deltas = minus_two_classes_orthogonal(omega)
    if deltas:
        return P0Verdict("Excluded", deltas[-1])
    return P0Verdict("InP0")


@dataclass(frozen=True)
class GammaSet:
    omega: ChargeVector
    c_bound: Fraction
    members: list[tuple[int, ...]]
    complete: bool


def in_gamma(omega: ChargeVector, w: Sequence[int], c_bound) -> bool:
    c_bound = Fraction(c_bound)
    a, b = central_charge(omega, w)
    return omega.lattice.norm(w) >= -2 and a * a + b * b <= c_bound * c_bound


def majorant_gram(omega: ChargeVector) -> list[list[Fraction]]:
    """Gram of M(w) = 2 |proj_P(w)|^2 - w^2, P the plane of Omega.

    Positive definite when the lattice has signature (2, k) and P is a
    positive plane.
    """
    G = omega.lattice.gram
    R = [vec_mat(list(omega.re), G), vec_mat(list(omega.im), G)]  # rows of R G
    Hinv = rational_inverse_fraction(omega.plane_gram())
    n = G.rows
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            proj = sum(R[a][i] * Hinv[a][b] * R[b][j] for a in range(2) for b in range(2))
            row.append(2 * proj - G[i, j])
        out.append(row)
    return out


def rational_inverse_fraction(m: list[list[Fraction]]) -> list[list[Fraction]]:
    (a, b), (c, d) = m
    det = a * d - b * c
    if det == 0:
        raise ZeroDivisionError("singular plane Gram")
    return [[d / det, -b / det], [-c / det, a / det]]


def gamma_set(omega: ChargeVector, c_bound=1) -> GammaSet:
    """All w with w^2 >= -2 and |(Omega, w)| <= C.

    Found by Fincke-Pohst on the majorant M: writing w = p + q with p in the
    plane, M(w) = p^2 - q^2 <= 2 + 2 p^2 and p^2 <= C^2 tr(H) / det(H) for
    the plane Gram H, so the enumeration region is finite and contains every
    member.
    """
    c_bound = Fraction(c_bound)
    if c_bound < 0:
        raise LatticeError("C must be nonnegative")
    _require_signature_2k(omega.lattice)
    if not positive_plane_check(omega):
        raise LatticeError("Omega does not span a positive-definite plane")
    H = omega.plane_gram()
    tr = H[0][0] + H[1][1]
    det = H[0][0] * H[1][1] - H[0][1] * H[1][0]
    bound = 2 + 2 * c_bound * c_bound * tr / det
    candidates = short_vectors(majorant_gram(omega), bound)
    members = [w for w in candidates if in_gamma(omega, w, c_bound)]
    return GammaSet(omega, c_bound, members, True)


def genericity_bound(gamma: GammaSet, rank_functional: Sequence[int]) -> int:
    """1 + max |functional . w| over the members."""
    if not gamma.complete:
        raise LatticeError("genericity bound needs a complete Gamma set")
    if len(rank_functional) != gamma.omega.lattice.rank:
        raise LatticeError("functional length does not match lattice rank")
    return max((abs(dot(rank_functional, w)) for w in gamma.members), default=0) + 1
