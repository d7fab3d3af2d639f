"""Exact linear algebra over the rationals.

Every dimension in this package is the rank of a matrix with rational
entries, so nothing here ever touches floating point.  Scalars are
``gmpy2.mpq`` values; anything coercible (ints, ``Fraction``, strings such as
``"3/4"``) is accepted on input.

Subspaces are stored through their reduced row-echelon basis, which makes
equality of subspaces a plain comparison of bases.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq

Scalar = type(mpq())

__all__ = [
    "Scalar",
    "Q",
    "DimensionMismatch",
    "Matrix",
    "LinSubspace",
    "rref",
    "rank",
    "kernel",
    "intersect",
    "preimage",
    "image",
    "det",
]


class DimensionMismatch(ValueError):
    """Raised when shapes or ambient dimensions do not agree."""


def Q(value) -> Scalar:
    """Coerce ``value`` to an exact rational."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact scalars")
    if isinstance(value, str):
        value = value.strip()
        if "/" in value:
            num, den = value.split("/")
            return mpq(int(num), int(den))
        return mpq(int(value))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return mpq(int(value.numerator), int(value.denominator))
    return mpq(value)


class Matrix:
    """Immutable dense matrix of rationals.

    ``cols`` must be passed explicitly for a matrix with no rows.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Sequence], cols: int | None = None):
        grid = tuple(tuple(Q(x) for x in row) for row in entries)
        if cols is None:
            if not grid:
                raise DimensionMismatch("cols is required for an empty matrix")
            cols = len(grid[0])
        for row in grid:
            if len(row) != cols:
                raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _trusted(cls, grid: list[list], cols: int) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", len(grid))
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", tuple(tuple(r) for r in grid))
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = mpq(0)
        return cls._trusted([[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        grid = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
        return cls._trusted(grid, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        grid = [[mpq(0)] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise DimensionMismatch("column length does not match row count")
            for i, x in enumerate(col):
                grid[i][j] = Q(x)
        return cls._trusted(grid, len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)
        return f"Matrix([{body}], cols={self.cols})"

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "Matrix":
        return Matrix._trusted(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.rows,
        )

    def apply(self, v: Sequence) -> list[Scalar]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        v = [Q(x) for x in v]
        nz = [(j, x) for j, x in enumerate(v) if x]
        return [sum((row[j] * x for j, x in nz), mpq(0)) for row in self.entries]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols_b = other.transpose().entries
        grid = []
        for row in self.entries:
            nz = [(j, x) for j, x in enumerate(row) if x]
            grid.append([sum((x * col[j] for j, x in nz), mpq(0)) for col in cols_b])
        return Matrix._trusted(grid, other.cols)

    def stack(self, other: "Matrix") -> "Matrix":
        """Rows of ``self`` followed by rows of ``other``."""
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return Matrix._trusted([list(r) for r in self.entries + other.entries], self.cols)

    def rank(self) -> int:
        return rank(self)


def _rref_rows(grid: list[list], cols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan; returns nonzero reduced rows and pivot columns."""
    rows = [r for r in grid if any(r)]
    pivots: list[int] = []
    r = 0
    n = len(rows)
    for c in range(cols):
        if r == n:
            break
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if lead != 1:
            inv = 1 / lead
            rows[r] = [x * inv if x else x for x in rows[r]]
        prow = rows[r]
        support = [j for j in range(c, cols) if prow[j]]
        for i in range(n):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in support:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form; zero rows are kept at the bottom."""
    reduced, _ = _rref_rows([list(r) for r in m.entries], m.cols)
    z = mpq(0)
    reduced += [[z] * m.cols for _ in range(m.rows - len(reduced))]
    return Matrix._trusted(reduced, m.cols)


def rank(m: Matrix) -> int:
    return len(_rref_rows([list(r) for r in m.entries], m.cols)[0])


class LinSubspace:
    """A subspace of Q^n given by its canonical (RREF) basis."""

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, vectors: Iterable[Sequence], ambient_dim: int):
        grid = [[Q(x) for x in v] for v in vectors]
        for v in grid:
            if len(v) != ambient_dim:
                raise DimensionMismatch(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
        reduced, pivots = _rref_rows(grid, ambient_dim)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", Matrix._trusted(reduced, ambient_dim))
        object.__setattr__(self, "_pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("LinSubspace is immutable")

    @classmethod
    def full(cls, n: int) -> "LinSubspace":
        return cls(Matrix.identity(n).entries, n)

    @classmethod
    def zero(cls, n: int) -> "LinSubspace":
        return cls([], n)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __len__(self) -> int:
        return self.dim

    @property
    def vectors(self) -> tuple[tuple[Scalar, ...], ...]:
        return self.basis.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinSubspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"LinSubspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def __add__(self, other: "LinSubspace") -> "LinSubspace":
        _check_ambient(self, other)
        return LinSubspace(self.vectors + other.vectors, self.ambient_dim)

    def __contains__(self, v) -> bool:
        v = [Q(x) for x in v]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        # reduce v against the echelon basis
        for row, c in zip(self.basis.entries, self._pivots):
            f = v[c]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return not any(v)

    def contains_subspace(self, other: "LinSubspace") -> bool:
        return all(v in self for v in other.vectors)

    def annihilator(self) -> "LinSubspace":
        """Orthogonal complement for the standard dot product."""
        if self.dim == 0:
            return LinSubspace.full(self.ambient_dim)
        return kernel(self.basis)


def _check_ambient(a: LinSubspace, b: LinSubspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}"
        )


def kernel(m: Matrix) -> LinSubspace:
    """Right null space ``{v : m v = 0}``."""
    reduced, pivots = _rref_rows([list(r) for r in m.entries], m.cols)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [mpq(0)] * m.cols
        v[f] = mpq(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return LinSubspace(basis, m.cols)


def intersect(a: LinSubspace, b: LinSubspace) -> LinSubspace:
    _check_ambient(a, b)
    if a.dim == a.ambient_dim:
        return b
    if b.dim == b.ambient_dim:
        return a
    return (a.annihilator() + b.annihilator()).annihilator()


def preimage(m: Matrix, s: LinSubspace) -> LinSubspace:
    """``{v : m v in s}``."""
    if s.ambient_dim != m.rows:
        raise DimensionMismatch(
            f"subspace lives in dimension {s.ambient_dim}, matrix has {m.rows} rows"
        )
    if s.dim == s.ambient_dim:
        return LinSubspace.full(m.cols)
    ann = s.annihilator().basis
    return kernel(ann @ m)


def image(m: Matrix, s: LinSubspace | None = None) -> LinSubspace:
    """Image of ``s`` (default: the whole domain) under ``m``."""
    if s is None:
        return LinSubspace(m.transpose().entries, m.rows)
    if s.ambient_dim != m.cols:
        raise DimensionMismatch("subspace does not live in the matrix domain")
    return LinSubspace([m.apply(v) for v in s.vectors], m.rows)


def det(m: Matrix) -> Scalar:
    """Determinant by Gaussian elimination (exact)."""
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    a = [list(r) for r in m.entries]
    n = m.rows
    result = mpq(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return mpq(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        piv = a[c][c]
        result *= piv
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = f / piv
                row, prow = a[i], a[c]
                for j in range(c, n):
                    row[j] -= f * prow[j]
    return result
