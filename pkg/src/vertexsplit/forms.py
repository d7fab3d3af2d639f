"""Binary forms in ``(x, y)`` and dual forms in ``(u, v)``.

Coefficient convention (used everywhere in the package): ``coeffs[i]`` is the
coefficient of ``x^(n-i) y^i`` (resp. ``u^(n-i) v^i``), with no binomial
weights.  Dual forms act on binary forms as constant-coefficient differential
operators through ``u -> d/dx`` and ``v -> d/dy``.
"""

from __future__ import annotations

import re
from math import comb
from typing import Iterable, Sequence

from gmpy2 import mpq

from .linalg import Matrix, Q, Scalar, det, rank

__all__ = [
    "FormError",
    "FormSyntaxError",
    "BinaryForm",
    "DualForm",
    "parse_form",
    "parse_dual_form",
    "derivative",
    "apolar_apply",
    "pairing",
    "multiply",
    "gcd",
    "resultant",
    "catalecticant",
    "catalecticant_rank",
    "falling",
]


class FormError(ValueError):
    """Invalid operation on binary forms (degree out of range, zero input...)."""


class FormSyntaxError(FormError):
    pass


def falling(n: int, k: int) -> int:
    """Falling factorial ``n (n-1) ... (n-k+1)``; zero when ``k > n``."""
    if k > n:
        return 0
    out = 1
    for t in range(n - k + 1, n + 1):
        out *= t
    return out


class _Form:
    VARS = ("x", "y")
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = tuple(Q(a) for a in coeffs)
        if not c:
            raise FormError("a form needs at least one coefficient")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, degree: int):
        return cls([0] * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, i: int, coeff=1):
        """``coeff * x^(degree-i) y^i``."""
        if not 0 <= i <= degree:
            raise FormError(f"monomial index {i} out of range for degree {degree}")
        c = [0] * (degree + 1)
        c[i] = coeff
        return cls(c)

    @classmethod
    def power(cls, a, b, degree: int):
        """``(a x + b y)^degree``."""
        a, b = Q(a), Q(b)
        return cls([comb(degree, i) * a ** (degree - i) * b**i for i in range(degree + 1)])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.degree != self.degree:
            raise FormError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._same(other)
        return type(self)(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._same(other)
        return type(self)(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return type(self)(-a for a in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, _Form):
            return multiply(self, other)
        s = Q(other)
        return type(self)(a * s for a in self.coeffs)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.coeffs))

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r}, degree={self.degree})"

    def __str__(self):
        return format_form(self)

    def __call__(self, point: Sequence) -> Scalar:
        """Evaluate at ``(a, b)``, i.e. substitute the two variables."""
        a, b = (Q(t) for t in point)
        n = self.degree
        return sum((c * a ** (n - i) * b**i for i, c in enumerate(self.coeffs) if c), mpq(0))

    def partial(self, var: str):
        return derivative(self, var)

    def substitute(self, phi: Sequence[Sequence]):
        """Image under the linear change of variables ``phi``.

        ``phi = ((a, b), (c, e))`` sends the first variable to ``a X + c Y`` and
        the second to ``b X + e Y`` (columns are the images), so that pure
        powers map as ``l^n -> phi(l)^n``.
        """
        (a, b), (c, e) = phi
        n = self.degree
        first = type(self)([a, c])
        second = type(self)([b, e])
        out = type(self).zero(n)
        for i, coef in enumerate(self.coeffs):
            if coef:
                term = _pow(first, n - i) * _pow(second, i)
                out = out + term * coef
        return out


def _pow(f, k):
    out = type(f)([1])
    for _ in range(k):
        out = multiply(out, f)
    return out


class BinaryForm(_Form):
    """Homogeneous polynomial in ``x, y`` (an element of S^n U)."""

    VARS = ("x", "y")
    __slots__ = ()


class DualForm(_Form):
    """Homogeneous polynomial in ``u, v`` (an element of S^n U*)."""

    VARS = ("u", "v")
    __slots__ = ()


# ---------------------------------------------------------------- printing

def _fmt_coef(c) -> str:
    return str(c)


def format_form(f: _Form) -> str:
    """Render a form in the package's expression grammar."""
    xv, yv = f.VARS
    n = f.degree
    terms = []
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        parts = []
        if n - i:
            parts.append(xv if n - i == 1 else f"{xv}^{n - i}")
        if i:
            parts.append(yv if i == 1 else f"{yv}^{i}")
        mono = "*".join(parts)
        mag = abs(c)
        if not mono:
            body = _fmt_coef(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_coef(mag)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\^)|(\*)|(/)|([+-]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormSyntaxError(f"unexpected character {text[pos:].strip()[:1]!r} at {pos}")
        num, name, caret, star, slash, sign = m.groups()
        if num is not None:
            tokens.append(("int", int(num)))
        elif name is not None:
            tokens.append(("var", name))
        elif caret:
            tokens.append(("^", None))
        elif star:
            tokens.append(("*", None))
        elif slash:
            tokens.append(("/", None))
        else:
            tokens.append(("sign", sign))
        pos = m.end()
    return tokens


def _parse(text: str, variables: tuple[str, str]) -> dict[tuple[int, int], Scalar]:
    """Parse a monomial sum into ``{(deg_first, deg_second): coeff}``."""
    toks = _tokenize(text)
    if not toks:
        raise FormSyntaxError("empty expression")
    pos = 0
    terms: dict[tuple[int, int], Scalar] = {}

    def peek(kind=None):
        if pos < len(toks) and (kind is None or toks[pos][0] == kind):
            return toks[pos]
        return None

    first = True
    while pos < len(toks):
        sign = 1
        t = peek("sign")
        if t:
            sign = -1 if t[1] == "-" else 1
            pos += 1
        elif not first:
            raise FormSyntaxError(f"expected '+' or '-' before token {pos}")
        first = False

        coef = None
        if peek("int"):
            num = toks[pos][1]
            pos += 1
            den = 1
            if peek("/"):
                pos += 1
                if not peek("int"):
                    raise FormSyntaxError("expected denominator after '/'")
                den = toks[pos][1]
                pos += 1
                if den == 0:
                    raise FormSyntaxError("zero denominator")
            coef = mpq(num, den)
            if peek("*"):
                pos += 1
                if not peek("var"):
                    raise FormSyntaxError("expected a variable after '*'")
        exps = [0, 0]
        seen = set()
        while peek("var"):
            name = toks[pos][1]
            if name not in variables:
                raise FormSyntaxError(
                    f"unknown variable {name!r}; expected one of {variables}"
                )
            if name in seen:
                raise FormSyntaxError(f"variable {name!r} repeated in a monomial")
            seen.add(name)
            pos += 1
            e = 1
            if peek("^"):
                pos += 1
                if not peek("int"):
                    raise FormSyntaxError("expected an exponent after '^'")
                e = toks[pos][1]
                pos += 1
            exps[variables.index(name)] = e
            if peek("*"):
                pos += 1
                if not peek("var"):
                    raise FormSyntaxError("dangling '*'")
        if coef is None and not seen:
            raise FormSyntaxError(f"expected a term at token {pos}")
        if coef is None:
            coef = mpq(1)
        key = tuple(exps)
        terms[key] = terms.get(key, mpq(0)) + sign * coef
        if pos < len(toks) and not peek("sign"):
            raise FormSyntaxError(f"unexpected token {toks[pos]} at position {pos}")
    return terms


def _build(cls, text: str, degree: int | None):
    terms = _parse(text, cls.VARS)
    degs = {a + b for a, b in terms}
    if len(degs) > 1:
        raise FormError(f"mixed-degree monomials in {text!r}: degrees {sorted(degs)}")
    found = degs.pop()
    if degree is not None and found != degree:
        raise FormError(f"expression {text!r} has degree {found}, expected {degree}")
    c = [mpq(0)] * (found + 1)
    for (a, b), v in terms.items():
        c[b] += v
    return cls(c)


def parse_form(text: str, degree: int | None = None) -> BinaryForm:
    """Parse a sum of monomials in ``x, y``.

    >>> parse_form("2*x^2 - 3*x*y + y^2", 2).coeffs == (2, -3, 1)
    True
    """
    return _build(BinaryForm, text, degree)


def parse_dual_form(text: str, degree: int | None = None) -> DualForm:
    """Same grammar as :func:`parse_form` with variables ``u, v``."""
    return _build(DualForm, text, degree)


# --------------------------------------------------------------- operations

def derivative(f: _Form, var: str) -> _Form:
    """Formal partial derivative with respect to one of the two variables."""
    n = f.degree
    if n < 1:
        raise FormError("cannot differentiate a form of degree 0")
    if var not in f.VARS:
        raise FormError(f"{var!r} is not a variable of {type(f).__name__}")
    c = f.coeffs
    if var == f.VARS[0]:
        return type(f)((n - i) * c[i] for i in range(n))
    return type(f)((i + 1) * c[i + 1] for i in range(n))


def apolar_apply(f: DualForm, g: BinaryForm) -> BinaryForm:
    """Let ``f`` act on ``g`` as a differential operator (u -> d/dx, v -> d/dy)."""
    if not isinstance(f, DualForm) or not isinstance(g, BinaryForm):
        raise TypeError("apolar_apply expects (DualForm, BinaryForm)")
    k, b = f.degree, g.degree
    if k > b:
        raise FormError(f"operator of order {k} applied to a form of degree {b}")
    out = [mpq(0)] * (b - k + 1)
    for i, fc in enumerate(f.coeffs):
        if not fc:
            continue
        # u^(k-i) v^i acts as d_x^(k-i) d_y^i, sending index j to j - i
        for j in range(i, b - k + i + 1):
            gc = g.coeffs[j]
            if gc:
                out[j - i] += fc * gc * falling(b - j, k - i) * falling(j, i)
    return BinaryForm(out)


def pairing(f: DualForm, g: BinaryForm) -> Scalar:
    """Full contraction of equal-degree dual and binary forms."""
    if f.degree != g.degree:
        raise FormError(f"pairing needs equal degrees, got {f.degree} and {g.degree}")
    return apolar_apply(f, g).coeffs[0]


def multiply(f: _Form, g: _Form) -> _Form:
    if type(f) is not type(g):
        raise TypeError("cannot multiply forms in different variables")
    out = [mpq(0)] * (f.degree + g.degree + 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                if b:
                    out[i + j] += a * b
    return type(f)(out)


def _split_second(c: Sequence) -> tuple[list, int]:
    """Split off the largest power of the second variable.

    Returns the remaining coefficients (first entry nonzero), read as a
    polynomial in ``t = first/second`` of exact degree ``len - 1``, and the
    stripped power.
    """
    k = 0
    while k < len(c) - 1 and not c[k]:
        k += 1
    return list(c[k:]), k


def _poly_rem(a: list, b: list) -> list:
    """Remainder of dense polynomials (highest degree first, b[0] != 0)."""
    a = list(a)
    lb = b[0]
    while len(a) >= len(b):
        f = a[0] / lb if a[0] else None
        if f is not None:
            for i in range(1, len(b)):
                a[i] -= f * b[i]
        a.pop(0)
    while a and not a[0]:
        a.pop(0)
    return a


def gcd(f: _Form, g: _Form) -> _Form:
    """Monic greatest common divisor of two forms.

    Common powers of the second variable are split off first; the rest is
    dehomogenized (second variable = 1), run through Euclid over Q[t] and
    rehomogenized.  The first nonzero coefficient of the result is 1.
    """
    if type(f) is not type(g):
        raise TypeError("gcd of forms in different variables")
    if f.is_zero() and g.is_zero():
        raise FormError("gcd of two zero forms")
    if f.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(f)
    a, kf = _split_second(f.coeffs)
    b, kg = _split_second(g.coeffs)
    while b:
        a, b = b, _poly_rem(a, b)
    lead = a[0]
    return type(f)([mpq(0)] * min(kf, kg) + [c / lead for c in a])


def _monic(f: _Form) -> _Form:
    lead = next(c for c in f.coeffs if c)
    return type(f)(c / lead for c in f.coeffs)


def divides(h: _Form, f: _Form) -> bool:
    """True when the nonzero form ``h`` divides ``f`` exactly."""
    if h.is_zero():
        raise FormError("division by the zero form")
    if f.is_zero():
        return True
    a, kf = _split_second(f.coeffs)
    b, kh = _split_second(h.coeffs)
    if kh > kf or len(b) > len(a):
        return False
    return not _poly_rem(a, b)


def sylvester_matrix(f: _Form, g: _Form) -> Matrix:
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f.coeffs) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g.coeffs) + [0] * (size - n - 1 - i))
    return Matrix(rows, size)


def resultant(f: _Form, g: _Form) -> Scalar:
    """Homogeneous resultant (Sylvester determinant at the formal degrees).

    Vanishes exactly when ``f`` and ``g`` share a projective root over the
    algebraic closure, including the root at infinity.
    """
    if f.degree < 1 or g.degree < 1:
        raise FormError("resultant needs both degrees >= 1")
    return det(sylvester_matrix(f, g))


def catalecticant(g: BinaryForm, k: int) -> Matrix:
    """Hankel matrix of ``g`` with ``k + 1`` columns.

    Entry ``(r, j)`` is ``g_{r+j} / C(n, r+j)``: the matrix of the contraction
    ``S^k U* -> S^(n-k) U`` written in the divided-power coordinates of ``g``.
    It differs from the raw contraction matrix by nonzero row and column
    scalings, so the ranks agree.
    """
    n = g.degree
    if not 0 <= k <= n:
        raise FormError(f"catalecticant index {k} out of range 0..{n}")
    a = [c / comb(n, m) for m, c in enumerate(g.coeffs)]
    return Matrix([[a[r + j] for j in range(k + 1)] for r in range(n - k + 1)], k + 1)


def catalecticant_rank(g: BinaryForm, k: int | None = None) -> int:
    """Rank of the ``k``-th catalecticant (the middle one by default)."""
    if k is None:
        k = g.degree // 2
    return rank(catalecticant(g, k))
