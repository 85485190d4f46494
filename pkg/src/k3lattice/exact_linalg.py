"""Exact integer matrix algorithms.

Everything here works on Python ``int`` (arbitrary precision) and
``fractions.Fraction``; nothing ever touches floating point.  Vectors are
rows, and a lattice acts through ``v @ G @ w.T``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    ``rows`` and ``cols`` are the dimensions; ``entries`` is the row-major
    tuple of entries.  Zero-row and zero-column matrices are allowed and keep
    their other dimension.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(entries)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        for x in entries:
            if type(x) is not int:
                raise TypeError(f"matrix entries must be int, got {type(x).__name__}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls(n, n, [diag[i] if i == j else 0 for i in range(n) for j in range(n)])

    # -- access -----------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __iter__(self):
        return (self.row(i) for i in range(self.rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})" if self.rows else f"IntMatrix(0x{self.cols})"

    # -- arithmetic -------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in ocols)
        return IntMatrix(self.rows, other.cols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, n: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (n * a for a in self.entries))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )


def as_matrix(m) -> IntMatrix:
    """Coerce nested integer lists (or an ``IntMatrix``) to ``IntMatrix``."""
    if isinstance(m, IntMatrix):
        return m
    return IntMatrix.from_rows(m)


def direct_sum(*blocks: IntMatrix) -> IntMatrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = [[0] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(n, m, (x for r in out for x in r))


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_mat(v: Sequence, m: IntMatrix) -> list:
    """Row vector times matrix; ``v`` may hold ints or Fractions."""
    if len(v) != m.rows:
        raise ValueError("dimension mismatch")
    return [sum(v[i] * m[i, j] for i in range(m.rows)) for j in range(m.cols)]


def bilinear(u: Sequence, gram: IntMatrix, v: Sequence):
    return dot(vec_mat(u, gram), v)


# ---------------------------------------------------------------------------
# Determinant and rank


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix) -> int:
    return sum(1 for r in hermite_normal_form(m) if any(r))


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(S, U, V)`` with ``U @ m @ V == S``.

    ``U`` and ``V`` are unimodular; ``S`` is diagonal with nonnegative
    entries ``d1 | d2 | ...`` and its zero diagonal entries trail.  Pivots
    are chosen by minimal absolute value.
    """
    m = as_matrix(m)
    nr, nc = m.rows, m.cols
    a = m.tolist()
    u = IntMatrix.identity(nr).tolist()
    v = IntMatrix.identity(nc).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row[dst] += q * row[src]
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col[dst] += q * col[src]
        if q:
            for r in a:
                r[dst] += q * r[src]
            for r in v:
                r[dst] += q * r[src]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < nr and t < nc and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    flat = lambda rows: (x for r in rows for x in r)
    return (
        IntMatrix(nr, nc, flat(a)),
        IntMatrix(nr, nr, flat(u)),
        IntMatrix(nc, nc, flat(v)),
    )


def invariant_factors(m: IntMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    s, _, _ = smith_normal_form(m)
    return [d for d in (s[i, i] for i in range(min(s.rows, s.cols))) if d]


# ---------------------------------------------------------------------------
# Hermite normal form and kernels


def _hnf_with_transform(m: IntMatrix) -> tuple[list[list[int]], list[list[int]]]:
    a = m.tolist()
    nr, nc = m.rows, m.cols
    u = IntMatrix.identity(nr).tolist()
    r = 0
    for c in range(nc):
        if r == nr:
            break
        while True:
            nz = [i for i in range(r, nr) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, nr):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def hermite_normal_form(m: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form ``H = U @ m`` with ``U`` unimodular.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and
    zero rows are kept at the bottom so ``H`` has the shape of ``m``.
    """
    m = as_matrix(m)
    a, _ = _hnf_with_transform(m)
    return IntMatrix(m.rows, m.cols, (x for r in a for x in r))


def hermite_normal_form_transform(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Like :func:`hermite_normal_form` but also return ``U``."""
    m = as_matrix(m)
    a, u = _hnf_with_transform(m)
    return (
        IntMatrix(m.rows, m.cols, (x for r in a for x in r)),
        IntMatrix(m.rows, m.rows, (x for r in u for x in r)),
    )


def row_basis(m: IntMatrix) -> IntMatrix:
    """HNF rows of ``m`` with the zero rows dropped (a basis of the row span)."""
    h = hermite_normal_form(m)
    rows = [r for r in h if any(r)]
    return IntMatrix(len(rows), m.cols, (x for r in rows for x in r))


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """Saturated basis (as rows, in HNF) of ``{x in Z^cols : m @ x.T == 0}``."""
    m = as_matrix(m)
    s, _, v = smith_normal_form(m)
    r = sum(1 for i in range(min(s.rows, s.cols)) if s[i, i])
    vt = v.T
    rows = [vt.row(i) for i in range(r, m.cols)]
    return hermite_normal_form(IntMatrix(len(rows), m.cols, (x for row in rows for x in row)))


# ---------------------------------------------------------------------------
# Rational helpers


def rational_inverse(m: IntMatrix) -> list[list[Fraction]]:
    """Inverse over Q by Gauss-Jordan; raises ``ZeroDivisionError`` if singular."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                q = a[i][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def primitive_part(v: Sequence) -> list[int]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def content(entries: Iterable[int]) -> int:
    g = 0
    for x in entries:
        g = gcd(g, x)
    return g
