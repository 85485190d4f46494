"""Mukai-lattice constructions: the K3 pairing, the A2 sublattice, L_K and
hyperbolic-plane detection."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .exact_linalg import IntMatrix, bilinear, content, integer_kernel, smith_normal_form
from .lattices import (
    Lattice,
    LatticeError,
    Sublattice,
    invariants,
    mukai24,
    saturate,
    saturation_index,
    signature,
    span,
)

A2_GRAM = IntMatrix.from_rows([[2, -1], [-1, 2]])


@dataclass(frozen=True)
class MukaiVector:
    """(r, c, m) in H^0 + NS + H^4."""

    r: int
    c: tuple[int, ...]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))


def mukai_pairing(v: MukaiVector, w: MukaiVector, ns_gram: IntMatrix | None = None) -> int:
    """c1.c2 - r1*m2 - r2*m1, with c1.c2 taken in ``ns_gram``."""
    n = ns_gram.rows if ns_gram is not None else 0
    if len(v.c) != n or len(w.c) != n:
        raise ValueError("NS components do not match the NS Gram matrix")
    cc = bilinear(v.c, ns_gram, w.c) if n else 0
    return cc - v.r * w.m - w.r * v.m


def mukai_gram(ns_gram: IntMatrix) -> IntMatrix:
    """Gram of H^0 + NS + H^4 in coordinates (r, c, m)."""
    n = ns_gram.rows
    size = n + 2
    out = [[0] * size for _ in range(size)]
    out[0][size - 1] = out[size - 1][0] = -1
    for i in range(n):
        for j in range(n):
            out[1 + i][1 + j] = ns_gram[i, j]
    return IntMatrix.from_rows(out)


def mukai_lattice_of_polarization(d: int) -> Lattice:
    """L_h = H^0 + Z h + H^4 with h^2 = d, coordinates (r, c, m)."""
    return Lattice(mukai_gram(IntMatrix.from_rows([[d]])), f"L_h(d={d})")


@dataclass(frozen=True)
class LambdaBasis:
    lambda1: tuple[int, ...]
    lambda2: tuple[int, ...]

    def gram(self, ambient: Lattice) -> IntMatrix:
        l1, l2 = self.lambda1, self.lambda2
        return IntMatrix.from_rows(
            [[ambient.norm(l1), ambient.pair(l1, l2)], [ambient.pair(l2, l1), ambient.norm(l2)]]
        )


def _unit(n: int, *pairs: tuple[int, int]) -> tuple[int, ...]:
    v = [0] * n
    for i, x in pairs:
        v[i] += x
    return tuple(v)


def embed_a2_in_mukai() -> tuple[Sublattice, LambdaBasis]:
    """The chosen primitive A2 inside MUKAI24.

    With e_i, f_i the standard basis of the i-th U block, lambda1 = e1 + f1
    and lambda2 = -e1 + e2 + f2.
    """
    amb = mukai24()
    a = _unit(24, (0, 1), (1, 1))
    b = _unit(24, (0, -1), (2, 1), (3, 1))
    return Sublattice(amb, IntMatrix.from_rows([a, b])), LambdaBasis(a, b)


def fano_mukai_vector(basis: LambdaBasis, ambient: Lattice | None = None) -> tuple[tuple[int, ...], int]:
    """lambda1 + lambda2 and its square (always 2)."""
    ambient = ambient or mukai24()
    if basis.gram(ambient) != A2_GRAM:
        raise LatticeError("basis does not have the A2 Gram matrix")
    v = tuple(x + y for x, y in zip(basis.lambda1, basis.lambda2))
    norm = ambient.norm(v)
    assert norm == 2
    return v, norm


def build_L_K(kappa: Sequence[int]) -> Sublattice:
    """Saturation of the span of A2 and ``kappa`` inside MUKAI24."""
    a2, lam = embed_a2_in_mukai()
    amb = a2.ambient
    kappa = tuple(kappa)
    if len(kappa) != amb.rank:
        raise LatticeError(f"kappa must have {amb.rank} coordinates")
    if amb.pair(kappa, lam.lambda1) or amb.pair(kappa, lam.lambda2):
        raise LatticeError("kappa must lie in A2-perp")
    if not any(kappa):
        raise LatticeError("kappa must be nonzero")
    return saturate(Sublattice(amb, IntMatrix.from_rows([lam.lambda1, lam.lambda2, kappa])))


def l_k_index(kappa: Sequence[int]) -> int:
    a2, lam = embed_a2_in_mukai()
    return saturation_index(Sublattice(a2.ambient, IntMatrix.from_rows([lam.lambda1, lam.lambda2, tuple(kappa)])))


def kuznetsov_picard_number(alg_lattice_rank: int) -> int:
    if alg_lattice_rank < 2:
        raise ValueError("the algebraic Mukai lattice always contains A2, so its rank is at least 2")
    return alg_lattice_rank - 2


# ---------------------------------------------------------------------------
# Hyperbolic planes


@dataclass(frozen=True)
class HyperbolicVerdict:
    verdict: str  # "Yes", "No" or "Unknown"
    e: tuple[int, ...] | None = None
    f: tuple[int, ...] | None = None
    reason: str | None = None

    def as_dict(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.verdict == "Yes":
            out["e"] = list(self.e)
            out["f"] = list(self.f)
        if self.reason:
            out["reason"] = self.reason
        return out


def _candidates(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    # one vector per +-pair, by sup-norm shell, then support size, then support, then values
    for k in range(1, bound + 1):
        for s in range(1, n + 1):
            for support in itertools.combinations(range(n), s):
                first = range(k, 0, -1)
                rest = [x for x in range(k, -k - 1, -1) if x]
                for vals in itertools.product(first, *([rest] * (s - 1))):
                    if max(abs(x) for x in vals) != k:
                        continue
                    v = [0] * n
                    for i, x in zip(support, vals):
                        v[i] = x
                    yield tuple(v)


def _solve_unit(g: Sequence[int]) -> list[int]:
    """Some integer x with g . x == 1, assuming gcd(g) == 1."""
    for i, x in enumerate(g):
        if abs(x) == 1:
            out = [0] * len(g)
            out[i] = x
            return out
    s, u, v = smith_normal_form(IntMatrix.from_rows([list(g)]))
    sign = u[0, 0]
    return [sign * v[i, 0] for i in range(len(g))]


def _complete_pair(lat: Lattice, e: tuple[int, ...]) -> tuple[int, ...] | None:
    """An isotropic f with e.f == 1, or None if the parity obstruction bites."""
    g = [sum(e[i] * lat.gram[i, j] for i in range(lat.rank)) for j in range(lat.rank)]
    if content(g) != 1:
        return None
    f0 = _solve_unit(g)
    if lat.norm(f0) % 2:
        perp = integer_kernel(IntMatrix.from_rows([g]))
        odd = next((t for t in perp if lat.norm(t) % 2), None)
        if odd is None:
            return None
        f0 = [a + b for a, b in zip(f0, odd)]
    k = lat.norm(f0) // 2
    return tuple(a - k * b for a, b in zip(f0, e))


def is_hyperbolic_pair(lat: Lattice, e, f) -> bool:
    return lat.norm(e) == 0 and lat.norm(f) == 0 and lat.pair(e, f) == 1


def find_hyperbolic_plane(lat: Lattice, search_bound: int) -> HyperbolicVerdict:
    """Look for e, f with e^2 = f^2 = 0 and e.f = 1.

    "No" is only returned with a certificate (definite or semidefinite form,
    or Gram content above 1).  Isotropic e are searched with coordinates up to
    ``search_bound``; each is completed to a pair when its pairing with the
    lattice is onto Z.  "Unknown" means the search ran out.
    """
    p, q, _ = signature(lat.gram)
    if p == 0 or q == 0:
        return HyperbolicVerdict("No", reason="definite")
    if content(lat.gram.entries) > 1:
        return HyperbolicVerdict("No", reason="content")
    for e in _candidates(lat.rank, search_bound):
        if lat.norm(e) != 0:
            continue
        f = _complete_pair(lat, e)
        if f is not None and is_hyperbolic_pair(lat, e, f):
            return HyperbolicVerdict("Yes", e=e, f=f)
    return HyperbolicVerdict("Unknown")
