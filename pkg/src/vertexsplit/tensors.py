"""Invariant operators on S^k U (x) S^d U.

A :class:`Tensor2` stores a ``(k+1) x (d+1)`` grid whose entry ``(i, j)`` is
the coefficient of ``x^(k-i) y^i (x) x^(d-j) y^j``.  Flattened vectors use the
row-major index ``i * (d + 1) + j``.

Every operator is also available as an explicit :class:`~vertexsplit.linalg.Matrix`
(``*_matrix`` functions, cached) so that kernels and images reduce to calls
into :mod:`vertexsplit.linalg`.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from gmpy2 import mpq

from .forms import BinaryForm, FormError, falling
from .linalg import LinSubspace, Matrix, Q, Scalar

__all__ = [
    "Tensor2",
    "polarize",
    "xi_mul",
    "transvect_D",
    "transvect_D2",
    "mult_map",
    "psi_k",
    "polarization_matrix",
    "xi_matrix",
    "D_matrix",
    "D2_matrix",
    "mult_matrix",
    "psi_matrix",
    "tensor",
    "psi_image",
]


class Tensor2:
    """Element of S^k U (x) S^d U."""

    __slots__ = ("k", "d", "grid")

    def __init__(self, k: int, d: int, grid: Sequence[Sequence]):
        g = tuple(tuple(Q(a) for a in row) for row in grid)
        if len(g) != k + 1 or any(len(row) != d + 1 for row in g):
            raise FormError(f"grid shape does not match ({k + 1}, {d + 1})")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "grid", g)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor2 is immutable")

    @classmethod
    def zero(cls, k: int, d: int) -> "Tensor2":
        return cls(k, d, [[0] * (d + 1) for _ in range(k + 1)])

    @classmethod
    def from_vector(cls, k: int, d: int, vec: Sequence) -> "Tensor2":
        if len(vec) != (k + 1) * (d + 1):
            raise FormError("vector length does not match the tensor shape")
        w = d + 1
        return cls(k, d, [vec[i * w:(i + 1) * w] for i in range(k + 1)])

    @property
    def vector(self) -> list[Scalar]:
        return [a for row in self.grid for a in row]

    def is_zero(self) -> bool:
        return not any(a for row in self.grid for a in row)

    def _check(self, other):
        if (self.k, self.d) != (other.k, other.d):
            raise FormError("tensor shapes differ")

    def __add__(self, other):
        self._check(other)
        return Tensor2(self.k, self.d, [[a + b for a, b in zip(r, s)] for r, s in zip(self.grid, other.grid)])

    def __sub__(self, other):
        self._check(other)
        return Tensor2(self.k, self.d, [[a - b for a, b in zip(r, s)] for r, s in zip(self.grid, other.grid)])

    def __neg__(self):
        return Tensor2(self.k, self.d, [[-a for a in r] for r in self.grid])

    def __mul__(self, scalar):
        s = Q(scalar)
        return Tensor2(self.k, self.d, [[a * s for a in r] for r in self.grid])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Tensor2):
            return NotImplemented
        return (self.k, self.d, self.grid) == (other.k, other.d, other.grid)

    def __hash__(self):
        return hash((self.k, self.d, self.grid))

    def __repr__(self):
        terms = []
        for i, row in enumerate(self.grid):
            for j, a in enumerate(row):
                if a:
                    left = BinaryForm.monomial(self.k, i)
                    right = BinaryForm.monomial(self.d, j)
                    terms.append(f"{a}*({left})@({right})")
        return f"Tensor2(k={self.k}, d={self.d}: {' + '.join(terms) or '0'})"


def tensor(a: BinaryForm, b: BinaryForm) -> Tensor2:
    """Pure tensor ``a (x) b``."""
    return Tensor2(a.degree, b.degree, [[p * q for q in b.coeffs] for p in a.coeffs])


def _apply(m: Matrix, t: Tensor2, k: int, d: int) -> Tensor2:
    return Tensor2.from_vector(k, d, m.apply(t.vector))


# ------------------------------------------------------------- polarization

@lru_cache(maxsize=None)
def polarization_matrix(k: int, d: int) -> Matrix:
    """Matrix of p_k : S^(d+k) U -> S^k U (x) S^d U."""
    n = d + k
    scale = mpq(factorial(n - k), factorial(n))
    rows = (k + 1) * (d + 1)
    cols = []
    for m in range(n + 1):
        # monomial x^(n-m) y^m; term i uses d_x^(k-i) d_y^i, landing on
        # x^(n-m-k+i) y^(m-i) which is index m - i in S^d
        col = [mpq(0)] * rows
        for i in range(k + 1):
            j = m - i
            if 0 <= j <= d:
                c = comb(k, i) * falling(n - m, k - i) * falling(m, i)
                if c:
                    col[i * (d + 1) + j] = scale * c
        cols.append(col)
    return Matrix.from_columns(cols, rows)


def polarize(f: BinaryForm, k: int) -> Tensor2:
    """p_k(f) in S^k U (x) S^(deg f - k) U, normalized so that m(p_k(f)) = f."""
    if k < 0 or f.degree < k:
        raise FormError(f"cannot polarize a degree {f.degree} form with k = {k}")
    d = f.degree - k
    return Tensor2.from_vector(k, d, polarization_matrix(k, d).apply(f.coeffs))


# -------------------------------------------------------------------- xi

@lru_cache(maxsize=None)
def xi_matrix(k: int, d: int) -> Matrix:
    """Multiplication by xi = x(x)y - y(x)x : S^(k-1)(x)S^(d-1) -> S^k(x)S^d."""
    if k < 1 or d < 1:
        raise FormError("xi multiplication needs k, d >= 1")
    rows = (k + 1) * (d + 1)
    cols = []
    for i in range(k):
        for j in range(d):
            col = [mpq(0)] * rows
            # x*a (x) y*b  -> (i, j+1);  y*a (x) x*b -> (i+1, j)
            col[i * (d + 1) + j + 1] += 1
            col[(i + 1) * (d + 1) + j] -= 1
            cols.append(col)
    return Matrix.from_columns(cols, rows)


def xi_mul(t: Tensor2) -> Tensor2:
    return _apply(xi_matrix(t.k + 1, t.d + 1), t, t.k + 1, t.d + 1)


# ------------------------------------------------------------ transvectants

@lru_cache(maxsize=None)
def D_matrix(k: int, d: int) -> Matrix:
    """First transvectant D = d_x (x) d_y - d_y (x) d_x on S^k U (x) S^d U."""
    if k < 1 or d < 1:
        raise FormError("D needs k, d >= 1")
    rows = k * d
    cols = []
    for i in range(k + 1):
        for j in range(d + 1):
            col = [mpq(0)] * rows
            if i < k and j > 0:
                col[i * d + (j - 1)] += (k - i) * j
            if i > 0 and j < d:
                col[(i - 1) * d + j] -= i * (d - j)
            cols.append(col)
    return Matrix.from_columns(cols, rows)


@lru_cache(maxsize=None)
def D2_matrix(k: int, d: int) -> Matrix:
    """D applied twice: S^k U (x) S^d U -> S^(k-2) U (x) S^(d-2) U."""
    if k < 2 or d < 2:
        raise FormError("D^2 needs k, d >= 2")
    return D_matrix(k - 1, d - 1) @ D_matrix(k, d)


def transvect_D(t: Tensor2) -> Tensor2:
    return _apply(D_matrix(t.k, t.d), t, t.k - 1, t.d - 1)


def transvect_D2(t: Tensor2) -> Tensor2:
    return _apply(D2_matrix(t.k, t.d), t, t.k - 2, t.d - 2)


# ----------------------------------------------------------- multiplication

@lru_cache(maxsize=None)
def mult_matrix(k: int, d: int) -> Matrix:
    """m : S^k U (x) S^d U -> S^(k+d) U."""
    rows = k + d + 1
    cols = []
    for i in range(k + 1):
        for j in range(d + 1):
            col = [mpq(0)] * rows
            col[i + j] = mpq(1)
            cols.append(col)
    return Matrix.from_columns(cols, rows)


def mult_map(t: Tensor2) -> BinaryForm:
    return BinaryForm(mult_matrix(t.k, t.d).apply(t.vector))


# --------------------------------------------------------------------- psi

@lru_cache(maxsize=None)
def psi_matrix(k: int, d: int) -> Matrix:
    """psi_k : U (x) S^(d+k-1) U -> S^k U (x) S^d U.

    The domain is coordinatized as ``(f0, f1)`` for ``x (x) f0 + y (x) f1``,
    i.e. the first ``d + k`` coordinates are the coefficients of ``f0``.
    """
    if k < 1 or d < 2:
        raise FormError("psi_k needs k >= 1 and d >= 2")
    pk = polarization_matrix(k, d - 1)  # S^(d+k-1) -> S^k (x) S^(d-1)
    n = d + k - 1
    rows = (k + 1) * (d + 1)
    cols = []
    for shift in (0, 1):  # multiply the second slot by x (index +0) or y (+1)
        for m in range(n + 1):
            col = [mpq(0)] * rows
            for i in range(k + 1):
                for j in range(d):
                    c = pk.entries[i * d + j][m]
                    if c:
                        col[i * (d + 1) + j + shift] += c
            cols.append(col)
    return Matrix.from_columns(cols, rows)


def psi_k(f0: BinaryForm, f1: BinaryForm, k: int) -> Tensor2:
    """Image of ``x (x) f0 + y (x) f1`` under psi_k."""
    if f0.degree != f1.degree:
        raise FormError("f0 and f1 must have the same degree")
    d = f0.degree - k + 1
    vec = list(f0.coeffs) + list(f1.coeffs)
    return Tensor2.from_vector(k, d, psi_matrix(k, d).apply(vec))


def psi_image(k: int, d: int) -> LinSubspace:
    m = psi_matrix(k, d)
    return LinSubspace(m.transpose().entries, m.rows)
