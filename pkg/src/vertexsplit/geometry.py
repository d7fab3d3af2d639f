"""Geometric predicates on projection vertices.

The curve of a vertex T is ``t -> [g_0(t) : ... : g_s(t)]`` where the ``g_i``
are a basis of the annihilator T^perp, read as dual forms; this follows from
``<g, l^d> = d! g(l)``.  Base points, secant membership and smoothness are all
decided from that parametrization.

Smoothness in general is settled by eliminating the collision system
``F_ij(p, p') = 0``.  A resultant of two random combinations of the ``F_ij`` is
first computed modulo a prime.  If the two modular eliminants share no
projective root, no rational eliminant can have one either, and that
certifies smoothness.  Otherwise the eliminants are recomputed over Z and
their rational roots are checked exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from math import factorial, gcd as igcd, lcm
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .forms import BinaryForm, DualForm, catalecticant_rank, gcd
from .linalg import LinSubspace
from .vertex import Vertex, iterate, numerical_type, partial, partial_inverse

__all__ = [
    "GeometryError",
    "SmoothnessVerdict",
    "ScrollReport",
    "dual_basis",
    "vertex_from_parametrization",
    "meets_cd",
    "secant_member",
    "monomial_smooth",
    "smoothness",
    "scroll_detect",
    "hilbert_dim",
    "collision_forms",
]

PRIME = 67108859  # below 2^26, so products of residues fit comfortably in int64


class GeometryError(ValueError):
    pass


def _weights(d: int) -> list[int]:
    return [factorial(i) * factorial(d - i) for i in range(d + 1)]


def _primitive(vec: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers with a positive leading entry."""
    den = reduce(lcm, (int(mpq(c).denominator) for c in vec), 1)
    ints = [int(mpq(c) * den) for c in vec]
    g = reduce(igcd, ints, 0)
    if g == 0:
        return ints
    lead = next(c for c in ints if c)
    if lead < 0:
        g = -g
    return [c // g for c in ints]


def dual_basis(T: Vertex) -> list[DualForm]:
    """A basis of T^perp as dual forms with coprime integer coefficients.

    The apolar pairing of ``u^(d-i) v^i`` with ``x^(d-i) y^i`` is
    ``i! (d-i)!``, so ``g`` annihilates ``t`` iff ``sum g_i t_i i!(d-i)! = 0``.
    """
    w = _weights(T.d)
    ann = T.space.annihilator()
    space = LinSubspace([[a / wi for a, wi in zip(v, w)] for v in ann.vectors], T.d + 1)
    return [DualForm(_primitive(v)) for v in space.vectors]


def vertex_from_parametrization(forms: Sequence[DualForm]) -> Vertex:
    """The vertex whose annihilator is spanned by the given dual forms."""
    forms = list(forms)
    if not forms:
        raise GeometryError("need at least one parametrizing form")
    d = forms[0].degree
    if any(g.degree != d for g in forms):
        raise GeometryError("parametrizing forms must share a degree")
    w = _weights(d)
    span = LinSubspace([[c * wi for c, wi in zip(g.coeffs, w)] for g in forms], d + 1)
    return Vertex(d, span.annihilator())


def meets_cd(T: Vertex) -> bool:
    """Whether P(T) contains a point l^d of the rational normal curve."""
    if T.dim == 0:
        raise GeometryError("meets_cd needs a nonzero vertex")
    if not T.is_proper():
        raise GeometryError("meets_cd needs a proper vertex")
    g = dual_basis(T)
    common = reduce(gcd, g[1:], g[0])
    return common.degree > 0


def secant_member(g: BinaryForm, b: int) -> bool:
    """Whether [g] lies in Sec^b C_n (spans of b + 1 points), by catalecticant rank."""
    if b < 0:
        raise GeometryError("secant index must be >= 0")
    return catalecticant_rank(g) <= b + 1


# ----------------------------------------------------------- verdicts


@dataclass(frozen=True)
class SmoothnessVerdict:
    status: str  # Smooth | Singular | Unknown
    method: str  # monomial-criterion | type-e-catalecticant | resultant-elimination
    witness: tuple | None = None
    trail: tuple[str, ...] = ()
    eliminant: tuple | None = None

    def as_dict(self) -> dict:
        out = {"status": self.status, "method": self.method, "trail": list(self.trail)}
        if self.witness is not None:
            out["witness"] = [str(c) for c in self.witness]
        if self.eliminant is not None:
            out["eliminant"] = [str(c) for c in self.eliminant]
        return out


def monomial_smooth(d: int, exponents: Sequence[int]) -> bool:
    """Criterion for monomial vertices: every x-exponent lies in [2, d-2]."""
    return all(2 <= nu <= d - 2 for nu in exponents)


def _type_e_verdict(T: Vertex) -> SmoothnessVerdict:
    e = T.e
    g_space = iterate(partial_inverse, T, e)  # type (0), so exactly <g>
    if g_space.dim != 1:
        raise GeometryError(f"d^-e(T) has dimension {g_space.dim}, expected 1")
    g = g_space.forms()[0]
    via_dT = iterate(partial_inverse, partial(T), e + 1)
    trail = [f"g = {g}"]
    if via_dT.dim == 1:
        if via_dT != g_space:
            raise AssertionError("d^-(e+1)(dT) and d^-e(T) disagree")
        trail.append("d^-(e+1)(dT) = <g>")
    else:
        # dT then contains points of C_(d-1); g is a short sum of powers
        trail.append(f"d^-(e+1)(dT) has dimension {via_dT.dim}")
    rank = catalecticant_rank(g)
    trail.append(f"middle catalecticant rank {rank}, threshold e + 2 = {e + 2}")
    trail = tuple(trail)
    status = "Singular" if secant_member(g, e + 1) else "Smooth"
    return SmoothnessVerdict(status, "type-e-catalecticant", None, trail)


def smoothness(T: Vertex, method: str = "auto", seed: int = 0) -> SmoothnessVerdict:
    """Decide whether the projected curve is smooth.

    ``method`` forces one route: ``"monomial"``, ``"type-e"`` or
    ``"elimination"``; ``"auto"`` takes the first that applies.
    """
    if T.dim and meets_cd(T):
        raise GeometryError("the vertex meets the rational normal curve")
    if not T.is_proper():
        raise GeometryError("the vertex is the whole space")
    if method not in ("auto", "monomial", "type-e", "elimination"):
        raise ValueError(f"unknown method {method!r}")
    exps = T.monomial_exponents()
    if method in ("auto", "monomial") and exps is not None and T.dim:
        ok = monomial_smooth(T.d, exps)
        trail = (f"x-exponents {list(exps)}, allowed range [2, {T.d - 2}]",)
        return SmoothnessVerdict("Smooth" if ok else "Singular", "monomial-criterion", None, trail)
    if method == "monomial":
        raise GeometryError("the vertex is not spanned by monomials")
    if method in ("auto", "type-e") and T.dim:
        nt = numerical_type(T)
        if nt.r == 1 and nt.b[0] == T.e:
            return _type_e_verdict(T)
    if method == "type-e":
        raise GeometryError("the vertex is not of type (e)")
    return _eliminate(T, seed)


# ------------------------------------------------------- collision forms


def collision_forms(T: Vertex) -> list[list[list[int]]]:
    """The integer arrays ``F[a][b]`` of the quotients F_ij, i < j.

    ``F[a][b]`` is the coefficient of ``u^(d-1-a) v^a u'^(d-1-b) v'^b``.
    """
    g = [[int(c) for c in f.coeffs] for f in dual_basis(T)]
    d = T.d
    out = []
    for i in range(len(g)):
        for j in range(i + 1, len(g)):
            M = [[g[i][a] * g[j][b] - g[j][a] * g[i][b] for b in range(d + 1)] for a in range(d + 1)]
            out.append(_divide_diagonal(M, d))
    return out


def _divide_diagonal(M: list[list[int]], d: int) -> list[list[int]]:
    """Exact quotient of an antisymmetric bihomogeneous form by ``u v' - u' v``."""
    F = [[0] * d for _ in range(d)]
    for a in range(d):
        for b in range(d):
            F[a][b] = M[a][b + 1] + (F[a - 1][b + 1] if a >= 1 and b + 1 < d else 0)
    # check every coefficient of F * (u v' - u' v) against M
    for a in range(d + 1):
        for b in range(d + 1):
            left = F[a][b - 1] if a < d and 1 <= b <= d else 0
            right = F[a - 1][b] if 1 <= a <= d and b < d else 0
            if M[a][b] != left - right:
                raise AssertionError("collision minor is not divisible by the diagonal")
    return F


# ------------------------------------------------------- modular route


def _modinv(a: np.ndarray) -> np.ndarray:
    result = np.ones_like(a)
    base = a % PRIME
    e = PRIME - 2
    while e:
        if e & 1:
            result = result * base % PRIME
        base = base * base % PRIME
        e >>= 1
    return result


def _batched_det_mod(M: np.ndarray) -> np.ndarray:
    """Determinants modulo PRIME of a stack of square int64 matrices."""
    M = M.copy() % PRIME
    N, n, _ = M.shape
    det = np.ones(N, dtype=np.int64)
    alive = np.ones(N, dtype=bool)
    rows = np.arange(N)
    for c in range(n):
        nz = M[:, c:, c] != 0
        has = nz.any(axis=1)
        alive &= has
        piv = np.argmax(nz, axis=1) + c
        swap = piv != c
        if swap.any():
            top = M[rows, c, :].copy()
            M[rows, c, :] = M[rows, piv, :]
            M[rows, piv, :] = top
            det = np.where(swap, (PRIME - det) % PRIME, det)
        p = M[:, c, c]
        det = det * p % PRIME
        inv = _modinv(np.where(has, p, 1))
        f = M[:, c + 1:, c] * inv[:, None] % PRIME
        M[:, c + 1:, :] = (M[:, c + 1:, :] - f[:, :, None] * M[:, c, None, :]) % PRIME
    return np.where(alive, det, 0)


def _sylvester_stack(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Sylvester matrices of rows of A, B (coefficient arrays of equal degree m)."""
    N, m1 = A.shape
    m = m1 - 1
    S = np.zeros((N, 2 * m, 2 * m), dtype=object if A.dtype == object else np.int64)
    for i in range(m):
        S[:, i, i:i + m1] = A
        S[:, m + i, i:i + m1] = B
    return S


def _specialize_mod(F: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Coefficients in p' of F((1, t), p') mod PRIME for each t."""
    d = F.shape[0]
    pw = np.ones((len(ts), d), dtype=np.int64)
    for a in range(1, d):
        pw[:, a] = pw[:, a - 1] * ts % PRIME
    out = np.zeros((len(ts), d), dtype=np.int64)
    for a in range(d):
        out = (out + pw[:, a, None] * F[a][None, :]) % PRIME
    return out


def _interpolate_mod(values: Sequence[int], p: int = PRIME) -> list[int]:
    """Coefficients (ascending) of the polynomial through (t, values[t]), t = 0..n."""
    n = len(values)
    coef = [int(v) % p for v in values]
    for j in range(1, n):
        inv = pow(j, p - 2, p)
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * inv % p
    # Newton basis prod (t - k) -> monomials
    poly = [0] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (t - i) + coef[i]
        poly = [((poly[k - 1] if k else 0) - i * poly[k]) % p for k in range(n)]
        poly[0] = (poly[0] + coef[i]) % p
    return poly


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gcd_mod(a: list[int], b: list[int], p: int = PRIME) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and a:
            f = a[-1] * inv % p
            shift = len(a) - len(b)
            for k, c in enumerate(b):
                a[k + shift] = (a[k + shift] - f * c) % p
            a = _trim(a)
        a, b = b, a
    return a


def _modular_certificate(Fs: list[np.ndarray], combos, D: int) -> tuple[bool, str]:
    ts = np.arange(D + 1, dtype=np.int64)
    polys = []
    for ca, cb in combos:
        A = sum(c * F for c, F in zip(ca, Fs)) % PRIME
        B = sum(c * F for c, F in zip(cb, Fs)) % PRIME
        S = _sylvester_stack(_specialize_mod(A, ts), _specialize_mod(B, ts))
        polys.append(_interpolate_mod(_batched_det_mod(S).tolist()))
    r1, r2 = polys
    if not any(r1) or not any(r2):
        return False, "an eliminant vanishes modulo the prime"
    g = _gcd_mod(r1, r2)
    at_infinity = r1[D] == 0 and r2[D] == 0
    if len(g) <= 1 and not at_infinity:
        return True, f"eliminants of degree {D} are coprime modulo {PRIME}"
    return False, "eliminants share a root modulo the prime"


# --------------------------------------------------------- exact route


def _bareiss(M: list[list[int]]) -> int:
    M = [list(r) for r in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _specialize(F: Sequence[Sequence[int]], p: Sequence) -> list:
    """Coefficients in p' of F(p, p') at an exact point p = (u, v)."""
    d = len(F)
    u, v = p
    out = []
    for b in range(d):
        out.append(sum(F[a][b] * u ** (d - 1 - a) * v ** a for a in range(d)))
    return out


def _exact_eliminant(F_A, F_B, D: int):
    """Res_{p'}(A((1,t),p'), B((1,t),p')) as an integer polynomial in t."""
    import sympy

    m = len(F_A) - 1
    vals = []
    for t in range(D + 1):
        a = _specialize(F_A, (1, t))
        b = _specialize(F_B, (1, t))
        S = [[0] * i + a + [0] * (m - i - 1) for i in range(m)]
        S += [[0] * i + b + [0] * (m - i - 1) for i in range(m)]
        vals.append(_bareiss(S))
    n = len(vals)
    coef = [mpq(v) for v in vals]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / j
    poly = [mpq(0)] * n
    for i in range(n - 1, -1, -1):
        poly = [(poly[k - 1] if k else 0) - i * poly[k] for k in range(n)]
        poly[0] += coef[i]
    if any(c.denominator != 1 for c in poly):
        raise AssertionError("eliminant interpolation left a fractional coefficient")
    return sympy.Poly.from_list([int(c) for c in reversed(poly)], sympy.Symbol("t"), domain="ZZ")


def _collides_at(Fs, p) -> DualForm | None:
    """gcd over all F_ij(p, .) when it is nonconstant, else None."""
    common = None
    for F in Fs:
        f = DualForm(_specialize(F, p))
        if f.is_zero():
            continue
        common = f if common is None else gcd(common, f)
        if common.degree == 0:
            return None
    if common is None:
        return DualForm([0] * len(Fs[0]))
    return common


def _rational_roots(G, infinite: bool) -> tuple[list[tuple], list[str]]:
    """Rational parameters killing G (plus u = 0 if flagged) and the irrational factors."""
    roots, leftovers = [], []
    if infinite:
        roots.append((mpq(0), mpq(1)))
    if G.degree() >= 1:
        for fac, _mult in G.factor_list()[1]:
            if fac.degree() == 1:
                a, b = fac.all_coeffs()
                roots.append((mpq(1), mpq(-int(b), int(a))))
            else:
                leftovers.append(str(fac.as_expr()))
    return roots, leftovers


def _eliminate(T: Vertex, seed: int) -> SmoothnessVerdict:
    d = T.d
    if T.dim == 0:
        return SmoothnessVerdict("Smooth", "resultant-elimination", None, ("rational normal curve",))
    if T.s < 1:
        raise GeometryError("the target space has dimension 0")
    Fs = collision_forms(T)
    if T.s == 1:
        # a map P^1 -> P^1 of degree d >= 2 is never an embedding
        return SmoothnessVerdict("Singular", "resultant-elimination", None, ("image is a line covered d times",))
    D = 2 * (d - 1) ** 2
    rng = random.Random(seed)
    modF = [np.array([[x % PRIME for x in row] for row in F], dtype=np.int64) for F in Fs]
    trail = [f"{len(Fs)} collision forms of bidegree ({d - 1}, {d - 1}), eliminant degree {D}"]

    def draw():
        return [rng.randint(-30, 30) for _ in Fs], [rng.randint(-30, 30) for _ in Fs]

    combos = [draw(), draw()]
    ok, note = _modular_certificate(modF, combos, D)
    trail.append(note)
    if ok:
        return SmoothnessVerdict("Smooth", "resultant-elimination", None, tuple(trail))

    def combine(c):
        return [[sum(ci * F[a][b] for ci, F in zip(c, Fs)) for b in range(d)] for a in range(d)]

    elims = []
    for ca, cb in combos:
        elims.append(_exact_eliminant(combine(ca), combine(cb), D))
    nonzero = [e for e in elims if not e.is_zero]
    if not nonzero:
        trail.append("both eliminants vanish identically; probing rational parameters")
        for t in range(-6, 7):
            for p in ((mpq(1), mpq(t)), (mpq(0), mpq(1))):
                common = _collides_at(Fs, p)
                if common is not None:
                    trail.append(f"collision at {p}: common factor {common}")
                    return SmoothnessVerdict("Singular", "resultant-elimination", p, tuple(trail))
        return SmoothnessVerdict("Unknown", "resultant-elimination", None, tuple(trail))

    # the eliminants are forms of degree D in (u, v) written in t = v/u;
    # a degree drop in every one of them is a common root at u = 0
    G = reduce(lambda a, b: a.gcd(b), nonzero).primitive()[1]
    infinite = all(e.degree() < D for e in nonzero)
    roots, leftovers = _rational_roots(G, infinite)
    for _ in range(3):
        # extra eliminants strip spurious common factors
        if not leftovers:
            break
        ca, cb = draw()
        more = _exact_eliminant(combine(ca), combine(cb), D)
        if not more.is_zero:
            G = G.gcd(more).primitive()[1]
            infinite = infinite and more.degree() < D
            roots, leftovers = _rational_roots(G, infinite)
    trail.append(f"common eliminant {G.as_expr()} (in t = v/u){', root at u = 0' if infinite else ''}")
    for p in roots:
        common = _collides_at(Fs, p)
        if common is not None:
            trail.append(f"collision at {tuple(str(c) for c in p)}: common factor {common}")
            return SmoothnessVerdict("Singular", "resultant-elimination", p, tuple(trail))
    if leftovers:
        trail.append("irrational candidate parameters: " + ", ".join(leftovers))
        return SmoothnessVerdict("Unknown", "resultant-elimination", None, tuple(trail),
                                 tuple(mpq(int(c)) for c in reversed(G.all_coeffs())))
    trail.append("no rational candidate is a collision")
    return SmoothnessVerdict("Smooth", "resultant-elimination", None, tuple(trail))


# ------------------------------------------------------------- scrolls


@dataclass(frozen=True)
class ScrollReport:
    resident: bool
    type: str
    tangent: object = None
    normal: object = None
    scroll_degree: int | None = None
    unique: bool | None = None

    def as_dict(self) -> dict:
        out = {"resident": self.resident, "type": self.type}
        if self.resident:
            out.update(
                tangent=self.tangent.as_dict(),
                normal=self.normal.as_dict(),
                scroll_degree=self.scroll_degree,
                unique=self.unique,
            )
        return out


def scroll_detect(T: Vertex) -> ScrollReport:
    """Whether the curve lies on a smooth rational normal scroll, with its bundles."""
    from .cohomology import closed_form_type_e, normal_splitting, tangent_splitting

    if T.d < T.s + 1:
        raise GeometryError(f"need d >= s + 1, got d = {T.d}, s = {T.s}")
    verdict = smoothness(T)
    if verdict.status != "Smooth":
        raise GeometryError(f"the curve is not certified smooth ({verdict.status})")
    nt = numerical_type(T)
    if not (nt.r == 1 and nt.b[0] == T.e):
        return ScrollReport(False, str(nt))
    tangent = tangent_splitting(T)
    normal = normal_splitting(T, ordinary=True)
    expected = closed_form_type_e(T.d, T.e)
    if normal.c != expected.c:
        raise AssertionError(f"computed N_f = {normal} but the scroll formula gives {expected}")
    if tangent.degrees != tuple([T.d + 2 + T.e] + [T.d + 1] * (T.s - 1)):
        raise AssertionError(f"unexpected tangent bundle {tangent} on a scroll")
    return ScrollReport(True, str(nt), tangent, normal, T.s - 1, True)


def hilbert_dim(dim_VP: int, s: int) -> int:
    """dim V_P + dim PGL(s+1) - 3."""
    if dim_VP < 0:
        raise ValueError("dim V_P must be non-negative")
    if s < 3:
        raise ValueError("need s >= 3")
    return dim_VP + (s + 1) ** 2 - 1 - 3
