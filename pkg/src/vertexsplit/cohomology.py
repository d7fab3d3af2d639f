"""Twisted sections of the restricted tangent and normal bundles.

For a curve ``f = pi_T o nu_d`` the spaces of sections of the twists
``T_f(-d-2-k)`` and ``N_f(-d-2-k)`` are kernels of the transvectants D and D^2
restricted to ``S^k U (x) T``.  Everything below turns those statements into
matrix ranks.  Each twist is computed along two independent routes where one
is available, and any disagreement raises :class:`RouteMismatch`.

Splitting types are normalized with twists ``c_i`` so that the summand
degree is ``c_i + d + 2`` for both bundles: a tangent summand O(d+1) has
``c = -1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from gmpy2 import mpq

from .forms import falling, multiply
from .linalg import Matrix, preimage, rank
from .tensors import D2_matrix, D_matrix, mult_matrix
from .vertex import (
    NumericalType,
    Vertex,
    iterate,
    numerical_type,
    partial,
    partial_inverse,
    validate_type,
)

__all__ = [
    "CurveError",
    "RouteMismatch",
    "SplittingError",
    "SplittingType",
    "ClosedForms",
    "h0_normal",
    "h0_tangent",
    "normal_profile",
    "tangent_profile",
    "normal_splitting",
    "boundary_values",
    "tangent_splitting",
    "normal_oracle",
    "closed_forms",
    "closed_form_type_e",
    "quadrics_through",
    "restricted_D2",
]


class CurveError(ValueError):
    """The vertex does not define a curve the bundle formulas apply to."""


class RouteMismatch(AssertionError):
    """Two independent computations of the same number disagree."""


class SplittingError(AssertionError):
    """A recovered splitting type violates a structural identity."""

    def __init__(self, message: str, profile: Sequence[int] = ()):
        super().__init__(f"{message} (profile {list(profile)})")
        self.profile = list(profile)


@dataclass(frozen=True)
class SplittingType:
    """A split bundle on P^1 given by twists ``c`` (degrees ``c_i + d + 2``)."""

    kind: str
    d: int
    e: int
    c: tuple[int, ...]
    profile: tuple[int, ...] = ()
    formal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(sorted(self.c, reverse=True)))
        if self.kind not in ("normal", "tangent"):
            raise ValueError(f"unknown bundle kind {self.kind!r}")
        problems = self.violations()
        if problems:
            raise SplittingError("; ".join(problems), self.profile)

    @property
    def s(self) -> int:
        return self.d - self.e - 1

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(x + self.d + 2 for x in self.c)

    def violations(self) -> list[str]:
        d, e, s, c = self.d, self.e, self.s, self.c
        out = []
        if self.kind == "normal":
            if len(c) != s - 1:
                out.append(f"{len(c)} summands, expected s - 1 = {s - 1}")
            if sum(x + 1 for x in c) != d + e:
                out.append(f"sum(c_i + 1) = {sum(x + 1 for x in c)} != d + e = {d + e}")
            if sum(c) != 2 * (e + 1):
                out.append(f"sum(c_i) = {sum(c)} != 2(e + 1) = {2 * (e + 1)}")
            if c and min(c) < 0:
                out.append(f"negative twist {min(c)}")
        else:
            if len(c) != s:
                out.append(f"{len(c)} summands, expected s = {s}")
            if c and min(c) < -1:
                out.append("tangent summand of degree below d + 1")
            if sum(self.degrees) != (s + 1) * d:
                out.append(f"total degree {sum(self.degrees)} != (s + 1) d = {(s + 1) * d}")
        return out

    def multiplicities(self) -> list[tuple[int, int]]:
        """``[(degree, multiplicity), ...]`` in decreasing degree."""
        out: list[tuple[int, int]] = []
        for deg in self.degrees:
            if out and out[-1][0] == deg:
                out[-1] = (deg, out[-1][1] + 1)
            else:
                out.append((deg, 1))
        return out

    def __str__(self) -> str:
        parts = []
        for deg, mult in self.multiplicities():
            parts.append(f"O({deg})" if mult == 1 else f"O^{mult}({deg})")
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "c": list(self.c),
            "degrees": list(self.degrees),
            "text": str(self),
            "formal": self.formal,
        }


def _require_curve(T: Vertex, *, normal: bool) -> None:
    from .geometry import meets_cd

    if not T.is_proper():
        raise CurveError("the vertex is the whole space")
    if T.dim and meets_cd(T):
        raise CurveError("the vertex meets the rational normal curve; the projection has lower degree")
    if normal and T.s < 3:
        raise CurveError(f"normal bundle computations need s >= 3, got s = {T.s}")


@lru_cache(maxsize=None)
def _embed(k: int, T: Vertex) -> Matrix:
    """Matrix of S^k U (x) T -> S^k U (x) S^d U in the monomial basis."""
    w = T.d + 1
    rows = (k + 1) * w
    cols = []
    for i in range(k + 1):
        for t in T.space.vectors:
            col = [mpq(0)] * rows
            col[i * w:(i + 1) * w] = t
            cols.append(col)
    return Matrix.from_columns(cols, rows)


def restricted_D2(T: Vertex, k: int) -> Matrix:
    """D^2 restricted to S^k U (x) T."""
    return D2_matrix(k, T.d) @ _embed(k, T)


def _m_preimage_dim(T: Vertex) -> int:
    """dim m^{-1}(T) for m : U (x) S^(d-1) U -> S^d U."""
    return preimage(mult_matrix(1, T.d - 1), T.space).dim


def h0_normal(T: Vertex, k: int, *, check: bool = True) -> int:
    """h^0 N_f(-d-2-k) for k >= 0."""
    if k < 0:
        raise ValueError("only k >= 0 is supported")
    if check:
        _require_curve(T, normal=True)
    if k == 0:
        value = T.d - 1 + T.dim
        direct = _m_preimage_dim(T)
        if direct != value:
            raise RouteMismatch(f"dim m^-1(T) = {direct}, expected d - 1 + dim T = {value}")
        return value
    if k == 1:
        return 2 * T.dim
    M = restricted_D2(T, k)
    return M.cols - rank(M)


def h0_tangent(T: Vertex, k: int, *, check: bool = True) -> int:
    """h^0 T_f(-d-2-k), computed as dim(ker D meet S^k U (x) T) and as dim d^-k T."""
    if k < 0:
        raise ValueError("only k >= 0 is supported")
    if check:
        _require_curve(T, normal=False)
    by_inverse = iterate(partial_inverse, T, k).dim
    if k == 0:
        by_kernel = T.dim
    else:
        M = D_matrix(k, T.d) @ _embed(k, T)
        by_kernel = M.cols - rank(M)
    if by_kernel != by_inverse:
        raise RouteMismatch(
            f"k = {k}: dim(ker D meet S^k U (x) T) = {by_kernel} but dim d^-k T = {by_inverse}"
        )
    return by_kernel


def normal_profile(T: Vertex, *, check: bool = True) -> list[int]:
    """``[f(0), f(-1), ...]`` with ``f(-k) = h^0 N_f(-d-2-k)``, ending at the first zero."""
    if check:
        _require_curve(T, normal=True)
    cap = 2 * T.e + 4
    prof = []
    for k in range(cap + 1):
        v = h0_normal(T, k, check=False)
        prof.append(v)
        if v == 0:
            return prof
    raise SplittingError(f"profile did not reach zero by k = {cap}", prof)


def tangent_profile(T: Vertex, *, check: bool = True) -> list[int]:
    if check:
        _require_curve(T, normal=False)
    prof = []
    for k in range(T.dim + 2):
        v = h0_tangent(T, k, check=False)
        prof.append(v)
        if v == 0:
            break
    return prof


def _twists_from_profile(prof: Sequence[int]) -> list[int]:
    """Multiset {c_i >= 0} with #{c_i = k} = f(-k) - 2 f(-k-1) + f(-k-2)."""
    f = lambda k: prof[k] if k < len(prof) else 0  # noqa: E731
    c: list[int] = []
    for k in range(len(prof) - 1, -1, -1):
        count = f(k) - 2 * f(k + 1) + f(k + 2)
        if count < 0:
            raise SplittingError(f"negative second difference at k = {k}", prof)
        c.extend([k] * count)
    return c


def boundary_values(T: Vertex, st: SplittingType | None = None) -> dict[int, int]:
    """h^0 N_f(t) for t = -d-1 and t = -d-2, keyed by the twist t.

    The first is 2(d - 1) for every curve; both are checked against the
    splitting ``st`` (recovered here if not given).
    """
    st = st or normal_splitting(T, ordinary=True)
    d = T.d
    out = {-d - 1: 2 * (d - 1), -d - 2: h0_normal(T, 0)}
    for t, v in out.items():
        direct = sum(max(0, deg + t + 1) for deg in st.degrees)
        if direct != v:
            raise RouteMismatch(f"h0 N_f({t}) = {v} but the splitting gives {direct}")
    return out


def _formal_flag(T: Vertex, ordinary: bool | None) -> bool:
    if ordinary is True:
        return False
    if ordinary is False:
        return True
    from .geometry import smoothness

    return smoothness(T).status != "Smooth"


def normal_splitting(T: Vertex, ordinary: bool | None = None) -> SplittingType:
    """Splitting type of N_f recovered from the section profile.

    ``ordinary`` controls the "formal" label: ``True`` means the caller
    vouches for ordinary singularities, ``None`` runs the smoothness check,
    ``False`` skips it and labels the result formal.
    """
    _require_curve(T, normal=True)
    prof = normal_profile(T, check=False)
    c = _twists_from_profile(prof)
    return SplittingType("normal", T.d, T.e, tuple(c), tuple(prof), _formal_flag(T, ordinary))


def _tangent_h0_from_type(nt: NumericalType, k: int) -> int:
    return sum(b - k + 1 for b in nt.b if b >= k)


def tangent_splitting(T: Vertex) -> SplittingType:
    """Splitting type of T_f from the numerical type, checked against the section profile."""
    _require_curve(T, normal=False)
    nt = numerical_type(T)
    if nt.a >= 0:
        raise CurveError(f"type {nt} has a C_d-generated part; not a projection vertex")
    c = list(nt.b) + [-1] * (T.s - nt.r)
    top = max(nt.b, default=-1)
    prof = []
    for k in range(top + 2):
        got = h0_tangent(T, k, check=False)
        want = _tangent_h0_from_type(nt, k)
        if got != want:
            raise RouteMismatch(f"k = {k}: h0 from kernel {got}, from type {nt}: {want}")
        prof.append(got)
    return SplittingType("tangent", T.d, T.e, tuple(c), tuple(prof))


@lru_cache(maxsize=None)
def _oracle_block(d: int, k: int, i: int) -> Matrix:
    """(f0, f1) -> x * P_i(f0) + y * P_i(f1) with P_i = d_x^(k-i) d_y^i."""
    n = d + k - 1
    rows = d + 1
    grid = [[mpq(0)] * (2 * (n + 1)) for _ in range(rows)]
    for m in range(n + 1):
        j = m - i  # P_i(x^(n-m) y^m) lands on index m - i of S^(d-1)
        if 0 <= j <= d - 1:
            c = falling(n - m, k - i) * falling(m, i)
            if c:
                grid[j][m] += c            # x * (...) keeps the index
                grid[j + 1][n + 1 + m] += c  # y * (...) shifts it by one
    return Matrix(grid, 2 * (n + 1))


def normal_oracle(T: Vertex, k: int, *, check: bool = True) -> int:
    """dim T_k: pairs (f0, f1) with x P(f0) + y P(f1) in T for every P in S^k U*.

    Independent of the transvectant route; it only uses differentiation and
    membership in T.
    """
    if k < 0:
        raise ValueError("only k >= 0 is supported")
    if check:
        _require_curve(T, normal=True)
    ann = T.space.annihilator().basis
    n_unknowns = 2 * (T.d + k)
    if ann.rows == 0:
        return n_unknowns
    blocks = None
    for i in range(k + 1):
        b = ann @ _oracle_block(T.d, k, i)
        blocks = b if blocks is None else blocks.stack(b)
    return n_unknowns - rank(blocks)


@dataclass(frozen=True)
class ClosedForms:
    h0: tuple[int, int, int]
    dim_d2T: int
    trivial_summands: int  # number of O(d+2) summands of N_f


def closed_forms(T: Vertex) -> ClosedForms:
    """h^0 N_f(-d-2-k) for k = 0, 1, 2 from dim T and dim d^2 T."""
    _require_curve(T, normal=True)
    d2 = iterate(partial, T, 2).dim
    return ClosedForms(
        (T.d - 1 + T.dim, 2 * T.dim, 3 * T.dim - d2),
        d2,
        T.d - 1 - d2,
    )


def closed_form_type_e(d: int, e: int) -> SplittingType:
    """N_f for a vertex of type (e): O^2(d+e+3) + O^(d-e-4)(d+2)."""
    if d - e - 4 < 0 or e < 0 or not validate_type(NumericalType(-1, (e,)), d):
        raise CurveError(f"no type ({e}) curve with d = {d}: need 0 <= e <= d - 4")
    c = (e + 1, e + 1) + (0,) * (d - e - 4)
    prof = [d + e] + [2 * e + 4 - 2 * k for k in range(1, e + 3)]
    return SplittingType("normal", d, e, c, tuple(prof))


def quadrics_through(T: Vertex) -> int:
    """Dimension of the space of quadrics in P^s containing the curve."""
    from .geometry import dual_basis

    _require_curve(T, normal=False)
    g = dual_basis(T)
    prods = []
    for i in range(len(g)):
        for j in range(i, len(g)):
            prods.append(multiply(g[i], g[j]).coeffs)
    M = Matrix.from_columns(prods, 2 * T.d + 1)
    value = M.cols - rank(M)
    s = T.s
    if T.d >= 2 * s + 1:
        bound = (s - 1) * (s - 2) // 2
        if value > bound:
            raise RouteMismatch(f"{value} quadrics exceed the bound (s-1)(s-2)/2 = {bound}")
    return value
