"""Projection vertices T in S^d U and their derivative calculus.

The numerical type ``(a; b_1 >= ... >= b_r)`` of a proper subspace is
recovered from the dimension profile of iterated inverse derivatives,
``n_j = dim (d^-1)^j T``: each application of ``d^-1`` lowers every block
size ``b_i`` by one and drops the blocks with ``b_i = 0``, while the span of
the points on the rational normal curve keeps its dimension.  Hence
``#{i : b_i >= j} = n_j - n_{j+1}`` and ``a + 1`` is the stable value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence


from .forms import BinaryForm, catalecticant_rank, derivative, parse_form
from .linalg import LinSubspace, Matrix, intersect, preimage

__all__ = [
    "VertexError",
    "Vertex",
    "NumericalType",
    "partial",
    "partial_inverse",
    "partial_span",
    "iterate",
    "numerical_type",
    "inverse_profile",
    "cd_generated_part",
    "validate_type",
    "make_vertex_of_type",
    "random_vertex",
]


class VertexError(ValueError):
    pass


@lru_cache(maxsize=None)
def dx_matrix(d: int) -> Matrix:
    """d/dx : S^d U -> S^(d-1) U."""
    return Matrix([[(d - i) if j == i else 0 for j in range(d + 1)] for i in range(d)], d + 1)


@lru_cache(maxsize=None)
def dy_matrix(d: int) -> Matrix:
    """d/dy : S^d U -> S^(d-1) U."""
    return Matrix([[(i + 1) if j == i + 1 else 0 for j in range(d + 1)] for i in range(d)], d + 1)


@dataclass(frozen=True)
class Vertex:
    """A linear subspace T of S^d U (ambient dimension d + 1)."""

    d: int
    space: LinSubspace

    def __post_init__(self):
        if self.d < 0:
            raise VertexError("degree must be non-negative")
        if self.space.ambient_dim != self.d + 1:
            raise VertexError(
                f"subspace has ambient dimension {self.space.ambient_dim}, expected {self.d + 1}"
            )

    @classmethod
    def from_forms(cls, forms: Iterable[BinaryForm], d: int | None = None) -> "Vertex":
        forms = list(forms)
        if d is None:
            if not forms:
                raise VertexError("degree required for an empty list of forms")
            d = forms[0].degree
        for f in forms:
            if f.degree != d:
                raise VertexError(f"form {f} has degree {f.degree}, expected {d}")
        return cls(d, LinSubspace([f.coeffs for f in forms], d + 1))

    @classmethod
    def parse(cls, exprs: Iterable[str], d: int) -> "Vertex":
        return cls.from_forms([parse_form(e, d) for e in exprs], d)

    @classmethod
    def monomial(cls, d: int, exponents: Iterable[int]) -> "Vertex":
        """Span of ``x^nu y^(d-nu)`` for the given x-exponents ``nu``."""
        exps = sorted(set(exponents))
        if any(not 0 <= e <= d for e in exps):
            raise VertexError(f"exponents must lie in 0..{d}")
        return cls.from_forms([BinaryForm.monomial(d, d - e) for e in exps], d)

    @classmethod
    def full(cls, d: int) -> "Vertex":
        return cls(d, LinSubspace.full(d + 1))

    @classmethod
    def zero(cls, d: int) -> "Vertex":
        return cls(d, LinSubspace.zero(d + 1))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def e(self) -> int:
        """Projective dimension of P(T)."""
        return self.dim - 1

    @property
    def s(self) -> int:
        """Dimension of the target space P^s = P(S^d U / T)."""
        return self.d - self.dim

    def forms(self) -> list[BinaryForm]:
        return [BinaryForm(v) for v in self.space.vectors]

    def is_proper(self) -> bool:
        return self.dim < self.d + 1

    def monomial_exponents(self) -> tuple[int, ...] | None:
        """x-exponents if T is spanned by monomials, else None."""
        exps = []
        for v in self.space.vectors:
            nz = [i for i, c in enumerate(v) if c]
            if len(nz) != 1:
                return None
            exps.append(self.d - nz[0])
        return tuple(sorted(exps, reverse=True))

    def __contains__(self, f: BinaryForm) -> bool:
        return f.degree == self.d and f.coeffs in self.space

    def __add__(self, other: "Vertex") -> "Vertex":
        if other.d != self.d:
            raise VertexError("degrees differ")
        return Vertex(self.d, self.space + other.space)

    def transform(self, phi: Sequence[Sequence]) -> "Vertex":
        """Image under S^d(phi) for an invertible 2x2 matrix ``phi``."""
        return Vertex.from_forms([f.substitute(phi) for f in self.forms()], self.d)

    def __str__(self) -> str:
        return "<" + ", ".join(str(f) for f in self.forms()) + ">"


@dataclass(frozen=True)
class NumericalType:
    """``(a; b_1 >= ... >= b_r)`` with ``a + 1`` the dimension of the C_d-generated part."""

    a: int = -1
    b: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(sorted((int(x) for x in self.b), reverse=True)))

    @property
    def r(self) -> int:
        return len(self.b)

    @property
    def dim(self) -> int:
        """Dimension of a space of this type."""
        return self.a + 1 + sum(x + 1 for x in self.b)

    def shifted(self) -> "NumericalType":
        """Type of the inverse derivative space."""
        return NumericalType(self.a, tuple(x - 1 for x in self.b if x >= 1))

    def __str__(self) -> str:
        body = ",".join(str(x) for x in self.b)
        if self.a == -1:
            return f"({body})"
        return f"({self.a}; {body})" if body else f"({self.a};)"

    def as_dict(self) -> dict:
        return {"a": self.a, "b": list(self.b)}


def partial(T: Vertex) -> Vertex:
    """dT = d_x T + d_y T inside S^(d-1) U."""
    if T.d < 1:
        raise VertexError("cannot differentiate a degree 0 vertex")
    vecs = list(T.space.vectors)
    dx, dy = dx_matrix(T.d), dy_matrix(T.d)
    return Vertex(T.d - 1, LinSubspace([dx.apply(v) for v in vecs] + [dy.apply(v) for v in vecs], T.d))


def partial_inverse(T: Vertex) -> Vertex:
    """Forms in S^(d+1) U whose first derivatives all lie in T."""
    d1 = T.d + 1
    if T.dim == 0:
        return Vertex.zero(d1)
    return Vertex(d1, intersect(preimage(dx_matrix(d1), T.space), preimage(dy_matrix(d1), T.space)))


def partial_span(g: BinaryForm, b: int) -> Vertex:
    """Span of all order-``b`` partial derivatives of ``g`` (zero for b = -1)."""
    if b == -1:
        return Vertex.zero(g.degree + 1)
    if b < 0:
        raise VertexError(f"derivative order must be >= -1, got {b}")
    if b > g.degree:
        raise VertexError(f"order {b} exceeds the degree {g.degree}")
    out = []
    for i in range(b + 1):
        h = g
        for _ in range(b - i):
            h = derivative(h, "x")
        for _ in range(i):
            h = derivative(h, "y")
        out.append(h)
    return Vertex.from_forms(out, g.degree - b)


def iterate(op, T: Vertex, times: int) -> Vertex:
    for _ in range(times):
        T = op(T)
    return T


def inverse_profile(T: Vertex) -> list[int]:
    """``[dim T, dim d^-1 T, ...]`` up to and including the first repeated value."""
    dims = [T.dim]
    cur = T
    for _ in range(T.dim + 1):
        cur = partial_inverse(cur)
        dims.append(cur.dim)
        if dims[-1] == dims[-2]:
            return dims
        if dims[-1] > dims[-2]:
            raise VertexError(f"inverse derivative increased the dimension: {dims}")
    raise VertexError(f"inverse-derivative profile did not stabilize: {dims}")


def numerical_type(T: Vertex) -> NumericalType:
    """Numerical type of a proper subspace, from its inverse-derivative profile."""
    if not T.is_proper():
        raise VertexError("numerical type is defined for proper subspaces only")
    prof = inverse_profile(T)
    a = prof[-1] - 1
    counts = [prof[j] - prof[j + 1] for j in range(len(prof) - 1)]
    # counts[j] = #{i : b_i >= j}
    b: list[int] = []
    for j, c in enumerate(counts):
        nxt = counts[j + 1] if j + 1 < len(counts) else 0
        if c < nxt:
            raise VertexError(f"non-monotone profile {prof}")
        b.extend([j] * (c - nxt))
    nt = NumericalType(a, tuple(b))
    if T.d >= 1:
        r = partial(T).dim - T.dim
        if r != nt.r:
            raise VertexError(
                f"profile {prof} gives r = {nt.r} but dim dT - dim T = {r}"
            )
    if nt.dim != T.dim:
        raise VertexError(f"type {nt} has dimension {nt.dim}, vertex has {T.dim}")
    return nt


def cd_generated_part(T: Vertex) -> Vertex:
    """S_T: the span of the scheme P(T) meet C_d."""
    nt = numerical_type(T)
    J = len(inverse_profile(T)) - 2
    stable = iterate(partial_inverse, T, J)
    S = iterate(partial, stable, J)
    if S.dim != nt.a + 1:
        raise VertexError(f"C_d-generated part has dimension {S.dim}, expected {nt.a + 1}")
    return S


def validate_type(nt: NumericalType, d: int) -> bool:
    """Whether a space of type ``nt`` exists in S^d U."""
    if nt.a < -1 or any(x < 0 for x in nt.b):
        return False
    return nt.a + 1 + sum(x + 2 for x in nt.b) <= d


def _random_form(rng: random.Random, n: int) -> BinaryForm:
    while True:
        f = BinaryForm([rng.randint(-9, 9) for _ in range(n + 1)])
        if not f.is_zero():
            return f


def make_vertex_of_type(nt: NumericalType, d: int, seed: int = 0, retries: int = 50) -> Vertex:
    """A random vertex of the given numerical type, verified after construction."""
    if not validate_type(nt, d):
        raise VertexError(f"no subspace of S^{d} U has type {nt}")
    rng = random.Random(seed)
    for _ in range(retries):
        forms: list[BinaryForm] = []
        slopes = rng.sample(range(-20, 21), nt.a + 1) if nt.a >= 0 else []
        for t in slopes:
            forms.append(BinaryForm.power(1, t, d))
        ok = True
        for bi in nt.b:
            f = _random_form(rng, d + bi)
            # f outside Sec^{b_i} C_{d+b_i}
            if catalecticant_rank(f) <= bi + 1:
                ok = False
                break
            forms.extend(partial_span(f, bi).forms())
        if not ok:
            continue
        T = Vertex.from_forms(forms, d)
        if T.dim == nt.dim and numerical_type(T) == nt:
            return T
    raise VertexError(f"could not construct a vertex of type {nt} in degree {d} after {retries} tries")


def random_vertex(d: int, dim: int, rng: random.Random) -> Vertex:
    """Span of ``dim`` random integer forms (coefficients in [-9, 9])."""
    while True:
        T = Vertex.from_forms([_random_form(rng, d) for _ in range(dim)], d)
        if T.dim == dim:
            return T
