"""Exact linear algebra over arbitrary-precision rationals.

Scalars are ``fractions.Fraction`` (always in lowest terms, positive
denominator), so every rank, kernel and solve below is exact; no epsilon
appears anywhere in this module.  Row reduction works fraction-free: rows are
cleared to primitive integer vectors and updated by cross-multiplication, so
coefficient growth stays controlled even when path-algebra structure
constants compound.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import ContractViolation

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(value) -> Fraction:
    """Coerce ints, strings like '2/3' and Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class Matrix:
    """Immutable dense matrix of Fractions, row-major.

    0 x n and n x 0 matrices are legal and represent zero maps.
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        self.rows = rows
        self.cols = cols
        ent = tuple(frac(x) for x in entries)
        if len(ent) != rows * cols:
            raise ContractViolation(
                f"matrix {rows}x{cols} needs {rows * cols} entries, got {len(ent)}"
            )
        self.entries = ent
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ContractViolation("ragged rows")
        else:
            width = 0 if cols is None else cols
        flat = [x for r in rows for x in r]
        return Matrix(len(rows), width, flat)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [ZERO] * (rows * cols))

    # -- access ------------------------------------------------------------

    def __getitem__(self, idx) -> Fraction:
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    # -- structure ---------------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ContractViolation("hstack: row mismatch")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return Matrix(self.rows, self.cols + other.cols, out)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ContractViolation("vstack: col mismatch")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    @staticmethod
    def block_diag(blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [ZERO] * (rows * cols)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                base = (r0 + i) * cols + c0
                out[base : base + b.cols] = b.row(i)
            r0 += b.rows
            c0 += b.cols
        return Matrix(rows, cols, out)

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ContractViolation(
                f"matmul shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        n, k, m = self.rows, self.cols, other.cols
        out = [ZERO] * (n * m)
        orows = [other.row(i) for i in range(k)]
        for i in range(n):
            srow = self.row(i)
            acc = [ZERO] * m
            for t in range(k):
                a = srow[t]
                if a:
                    orow = orows[t]
                    acc = [x + a * y for x, y in zip(acc, orow)]
            out[i * m : (i + 1) * m] = acc
        return Matrix(n, m, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ContractViolation("add: shape mismatch")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ContractViolation("sub: shape mismatch")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix(self.rows, self.cols, [c * a for a in self.entries])

    def apply(self, vec: Sequence[Fraction]) -> tuple:
        """Matrix times column vector, returned as a tuple."""
        if len(vec) != self.cols:
            raise ContractViolation("apply: length mismatch")
        return tuple(
            sum((a * v for a, v in zip(self.row(i), vec) if a), ZERO) for i in range(self.rows)
        )

    # -- equality -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.to_lists()})"

    def rank(self) -> int:
        return rref_rank(self)[2]


# -- fraction-free row reduction --------------------------------------------


def _primitive(row: list) -> list:
    """Divide an integer row by the gcd of its entries (sign-normalised)."""
    g = 0
    for x in row:
        if x:
            g = gcd(g, abs(x))
            if g == 1:
                break
    if g > 1:
        row = [x // g for x in row]
    for x in row:
        if x:
            if x < 0:
                row = [-y for y in row]
            break
    return row


def _int_rows(m: Matrix) -> list:
    """Clear denominators per row, returning primitive integer rows."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        lcm = 1
        for x in row:
            d = x.denominator
            lcm = lcm * d // gcd(lcm, d)
        out.append(_primitive([int(x * lcm) for x in row]))
    return out


def _rref_int(rows: list, cols: int) -> tuple:
    """In-place fraction-free Gauss-Jordan on integer rows.

    Returns (rows, pivot column list); pivot rows are scaled to primitive
    integer vectors, fully reduced above and below.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(cols):
        sel = None
        for i in range(r, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        piv = rows[r]
        p = piv[c]
        for i in range(nrows):
            if i == r:
                continue
            a = rows[i][c]
            if a:
                rows[i] = _primitive([p * x - a * y for x, y in zip(rows[i], piv)])
        pivots.append(c)
        r += 1
    return rows[:r] + [row for row in rows[r:]], pivots


def rref_rank(m: Matrix) -> tuple:
    """Reduced row echelon form with pivot list and rank.

    The returned matrix has the same shape as the input, pivot entries equal
    to one, and is the canonical representative of the row-equivalence class
    (rref of rref = rref).
    """
    rows = _int_rows(m)
    rows, pivots = _rref_int(rows, m.cols)
    out = []
    for r, c in enumerate(pivots):
        p = rows[r][c]
        out.append([Fraction(x, p) for x in rows[r]])
    while len(out) < m.rows:
        out.append([ZERO] * m.cols)
    return Matrix.from_rows(out, cols=m.cols), list(pivots), len(pivots)


def kernel_basis(a: Matrix) -> "Subspace":
    """Basis of the right null space {v : a v = 0} as a Subspace.

    dim kernel = cols - rank(a).
    """
    red, pivots, rank = rref_rank(a)
    free = [c for c in range(a.cols) if c not in pivots]
    rows = []
    for f in free:
        vec = [ZERO] * a.cols
        vec[f] = ONE
        for r, p in enumerate(pivots):
            vec[p] = -red[r, f]
        rows.append(vec)
    return Subspace.from_rows(a.cols, rows)


def solve_linear(a: Matrix, b: Matrix) -> tuple:
    """Solve a x = b exactly.

    Returns (x, kernel) where x is one particular solution (or None when the
    system is inconsistent) and kernel spans all homogeneous solutions.
    """
    if a.rows != b.rows:
        raise ContractViolation("solve_linear: a.rows must equal b.rows")
    aug = a.hstack(b)
    red, pivots, _ = rref_rank(aug)
    if any(p >= a.cols for p in pivots):
        return None, kernel_basis(a)
    x = [[ZERO] * b.cols for _ in range(a.cols)]
    for r, p in enumerate(pivots):
        for j in range(b.cols):
            x[p][j] = red[r, a.cols + j]
    return Matrix.from_rows(x, cols=b.cols), kernel_basis(a)


class Subspace:
    """Subspace of Q^n, canonically represented by an rref basis matrix.

    Rows of ``basis`` are linearly independent vectors in reduced row echelon
    form, so equality of subspaces is plain data comparison.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Matrix):
        self.ambient_dim = ambient_dim
        self.basis = basis

    @staticmethod
    def from_rows(ambient_dim: int, rows: Sequence[Sequence]) -> "Subspace":
        m = Matrix.from_rows(rows, cols=ambient_dim)
        red, pivots, rank = rref_rank(m)
        return Subspace(ambient_dim, Matrix.from_rows([red.row(i) for i in range(rank)], cols=ambient_dim))

    @staticmethod
    def from_matrix(m: Matrix) -> "Subspace":
        return Subspace.from_rows(m.cols, m.to_lists())

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix(0, ambient_dim, []))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains_vector(self, vec: Sequence) -> bool:
        vec = [frac(x) for x in vec]
        if len(vec) != self.ambient_dim:
            raise ContractViolation("ambient mismatch")
        stacked = self.basis.vstack(Matrix.from_rows([vec], cols=self.ambient_dim))
        return rref_rank(stacked)[2] == self.dim

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ContractViolation("ambient mismatch")
        stacked = self.basis.vstack(other.basis)
        return rref_rank(stacked)[2] == self.dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    if u.ambient_dim != v.ambient_dim:
        raise ContractViolation("ambient mismatch")
    return Subspace.from_matrix(u.basis.vstack(v.basis))


def subspace_intersection(u: Subspace, v: Subspace) -> Subspace:
    """Zassenhaus: rref [[U U],[V 0]]; rows with zero left half span U n V."""
    if u.ambient_dim != v.ambient_dim:
        raise ContractViolation("ambient mismatch")
    n = u.ambient_dim
    top = u.basis.hstack(u.basis)
    bottom = v.basis.hstack(Matrix.zeros(v.basis.rows, n))
    red, pivots, rank = rref_rank(top.vstack(bottom))
    rows = []
    for r in range(rank):
        row = red.row(r)
        if all(x == 0 for x in row[:n]):
            rows.append(row[n:])
    return Subspace.from_rows(n, rows)


def subspace_complement(u: Subspace, v: Optional[Subspace] = None) -> Subspace:
    """Rows extending u's basis to a basis of v (default: the full space).

    Requires u <= v; the result w satisfies u + w = v and u n w = 0.
    """
    if v is None:
        v = Subspace.full(u.ambient_dim)
    if u.ambient_dim != v.ambient_dim:
        raise ContractViolation("ambient mismatch")
    if not v.contains(u):
        raise ContractViolation("complement requires u <= v")
    current = [list(u.basis.row(i)) for i in range(u.dim)]
    rank = u.dim
    picked = []
    for i in range(v.dim):
        cand = list(v.basis.row(i))
        trial = Matrix.from_rows(current + [cand], cols=u.ambient_dim)
        if rref_rank(trial)[2] > rank:
            current.append(cand)
            picked.append(cand)
            rank += 1
    return Subspace.from_rows(u.ambient_dim, picked)


def subspace_ops(u: Subspace, v: Subspace) -> tuple:
    """(sum, intersection, complement-of-u-in-sum) for equal ambient dims."""
    s = subspace_sum(u, v)
    return s, subspace_intersection(u, v), subspace_complement(u, s)
