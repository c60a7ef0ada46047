"""Exact arithmetic: univariate/bivariate polynomials over the rationals,
ring-generic hafnians, exact linear solves and a truncated power series
used by the total photon number distribution.

Coefficients are Python ``int`` whenever they are integral and
:class:`fractions.Fraction` otherwise, so every identity in the package is
checked without rounding.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivergentSeriesError,
    InconsistentSystemError,
    NotSymmetricError,
    SizeLimitError,
)

# Largest matrix the memoized hafnian accepts, per coefficient ring.
HAFNIAN_LIMIT_RATIONAL = 26
HAFNIAN_LIMIT_POLY = 22


def to_rational(value):
    """Convert ``value`` to an exact rational (``int`` when integral).

    Strings of the form ``"p/q"`` or ``"p"`` are accepted, as are floats
    (converted exactly).
    """
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        value = Fraction(value.strip())
    elif not isinstance(value, Fraction):
        value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class UniPoly:
    """Polynomial in one indeterminate with exact rational coefficients.

    ``coeffs[d]`` is the coefficient of degree ``d``. Trailing zeros are
    stripped, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [_norm(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def constant(cls, value):
        return cls((to_rational(value),))

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @classmethod
    def coerce(cls, value):
        if isinstance(value, UniPoly):
            return value
        return cls.constant(value)

    @property
    def degree(self):
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, d):
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not self.coeffs:
                return UniPoly((other,))
            return UniPoly((self.coeffs[0] + other,) + self.coeffs[1:])
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-x for x in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return UniPoly()
            return UniPoly(x * other for x in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = UniPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, value):
        return self.evaluate(value)

    def evaluate(self, value):
        """Horner evaluation. Exact for rational ``value``."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return _norm(acc) if isinstance(acc, Fraction) else acc

    def derivative(self):
        return UniPoly(d * c for d, c in enumerate(self.coeffs) if d)

    def compose(self, inner):
        """Return ``self(inner(x))``."""
        inner = UniPoly.coerce(inner)
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def signed_from_signless(self, order):
        """Map a signless polynomial to its sign-alternating version.

        The coefficient of ``x**(order - 2r)`` is multiplied by ``(-1)**r``;
        this is how the signed matching/GBS polynomials relate to their
        signless counterparts.
        """
        out = list(self.coeffs)
        for d in range(len(out)):
            if out[d] and (order - d) % 4 == 2:
                out[d] = -out[d]
            elif out[d] and (order - d) % 2:
                raise ValueError(f"degree {d} has the wrong parity for order {order}")
        return UniPoly(out)

    signless_from_signed = signed_from_signless

    def render(self, var="x"):
        items = [((d,), c) for d, c in reversed(list(enumerate(self.coeffs))) if c]
        return _render(items, (var,))

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"UniPoly({self.render()!r})"


class BiPoly:
    """Polynomial in ``x`` and ``z`` stored as ``{(deg_x, deg_z): coeff}``.

    Zero coefficients are never stored, so equality is dict equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = _norm(c)
            if c != 0:
                clean[(int(key[0]), int(key[1]))] = c
        self.terms = clean

    @classmethod
    def from_x_coeffs(cls, coeffs_in_z):
        """Build from ``{deg_x: UniPoly in z}``."""
        terms = {}
        for dx, p in coeffs_in_z.items():
            p = UniPoly.coerce(p)
            for dz, c in enumerate(p.coeffs):
                if c:
                    terms[(dx, dz)] = c
        return cls(terms)

    @classmethod
    def from_z_coeffs(cls, coeffs_in_x):
        """Build from a sequence whose entry ``k`` is the ``z**k`` coefficient
        (an ``int``/``Fraction`` or a :class:`UniPoly` in ``x``)."""
        terms = {}
        for dz, p in enumerate(coeffs_in_x):
            p = UniPoly.coerce(p)
            for dx, c in enumerate(p.coeffs):
                if c:
                    terms[(dx, dz)] = c
        return cls(terms)

    def x_coeff(self, dx):
        """Coefficient of ``x**dx`` as a UniPoly in ``z``."""
        deg = max((k[1] for k in self.terms if k[0] == dx), default=-1)
        out = [0] * (deg + 1)
        for (a, b), c in self.terms.items():
            if a == dx:
                out[b] = c
        return UniPoly(out)

    def z_coeff(self, dz):
        """Coefficient of ``z**dz`` as a UniPoly in ``x``."""
        deg = max((k[0] for k in self.terms if k[1] == dz), default=-1)
        out = [0] * (deg + 1)
        for (a, b), c in self.terms.items():
            if b == dz:
                out[a] = c
        return UniPoly(out)

    def degree_x(self):
        return max((k[0] for k in self.terms), default=-1)

    def degree_z(self):
        return max((k[1] for k in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == BiPoly({(0, 0): other}).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly({(0, 0): other})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def evaluate(self, x, z):
        total = 0
        for (a, b), c in self.terms.items():
            total += c * x**a * z**b
        return _norm(total) if isinstance(total, Fraction) else total

    def substitute_z(self, z):
        """Fix ``z`` to a number, returning a UniPoly in ``x``."""
        out = {}
        for (a, b), c in self.terms.items():
            out[a] = out.get(a, 0) + c * z**b
        deg = max(out, default=-1)
        return UniPoly([out.get(d, 0) for d in range(deg + 1)])

    def render(self, names=("x", "z")):
        items = sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)
        return _render(items, names)

    def to_json(self, order=None):
        payload = {"coeffs": {f"({a},{b})": str(c) for (a, b), c in sorted(self.terms.items())}}
        if order is not None:
            payload = {"order": order, **payload}
        return payload

    @classmethod
    def from_json(cls, payload):
        terms = {}
        for key, val in payload["coeffs"].items():
            a, b = key.strip("() ").split(",")
            terms[(int(a), int(b))] = to_rational(val)
        return cls(terms)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"BiPoly({self.render()!r})"


# -- text rendering / parsing -------------------------------------------------

def _render(items, names):
    """Render ``[(degrees, coeff), ...]`` (already ordered) as text."""
    if not items:
        return "0"
    parts = []
    for degs, c in items:
        mono = "*".join(
            (name if d == 1 else f"{name}^{d}") for name, d in zip(names, degs) if d
        )
        neg = c < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def _parse_terms(text, names):
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial text")
    if src == "0":
        return {}
    pos = 0
    out = {}
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {src[pos:]!r}")
        sign, body = m.group(1), m.group(2)
        pos = m.end()
        coeff = Fraction(1)
        degs = [0] * len(names)
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"empty factor in {body!r}")
            base, _, exp = factor.partition("^")
            if base in names:
                degs[names.index(base)] += int(exp) if exp else 1
            else:
                if exp:
                    raise ValueError(f"exponent on a constant in {factor!r}")
                coeff *= Fraction(base)
        if sign == "-":
            coeff = -coeff
        key = tuple(degs)
        out[key] = out.get(key, 0) + coeff
    return out


def parse_unipoly(text, var="x"):
    """Parse the grammar produced by :meth:`UniPoly.render`."""
    terms = _parse_terms(text, (var,))
    deg = max((k[0] for k in terms), default=-1)
    return UniPoly([terms.get((d,), 0) for d in range(deg + 1)])


def parse_bipoly(text, names=("x", "z")):
    return BiPoly(_parse_terms(text, tuple(names)))


# -- hafnians -----------------------------------------------------------------

def _rows(matrix):
    rows = [list(r) for r in matrix]
    k = len(rows)
    for r in rows:
        if len(r) != k:
            raise NotSymmetricError("hafnian input must be square")
    for i in range(k):
        for j in range(i + 1, k):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetricError(f"entries ({i},{j}) and ({j},{i}) differ")
    return rows


def _has_poly(rows):
    return any(isinstance(x, UniPoly) for r in rows for x in r)


def hafnian(matrix, strategy="memo"):
    """Hafnian of a symmetric matrix over the rationals or over UniPoly.

    Diagonal entries are never read: a perfect matching pairs distinct
    indices. The empty matrix has hafnian 1 and odd sizes give 0.

    Parameters
    ----------
    matrix : sequence of sequences
        Square symmetric matrix with ``int``, ``Fraction`` or
        :class:`UniPoly` entries.
    strategy : {"memo", "recursive"}
        ``"memo"`` expands along the lowest index and memoizes on the
        remaining index set (``O(k 2**k)`` ring operations); ``"recursive"``
        is the plain ``(k-1)!!`` expansion without a table, which is cheaper
        for many tiny matrices.
    """
    rows = _rows(matrix)
    k = len(rows)
    poly = _has_poly(rows)
    if k % 2:
        return UniPoly() if poly else 0
    if strategy == "memo":
        limit = HAFNIAN_LIMIT_POLY if poly else HAFNIAN_LIMIT_RATIONAL
        if k > limit:
            raise SizeLimitError(f"hafnian of a {k}x{k} matrix exceeds the limit {limit}")
        value = _haf_memo(rows, k)
    elif strategy == "recursive":
        value = _haf_recursive(rows, list(range(k)))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if poly:
        return UniPoly.coerce(value)
    return _norm(value) if isinstance(value, Fraction) else value


def _haf_memo(rows, k):
    memo = {0: 1}

    def rec(mask):
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        row = rows[i]
        total = 0
        m = rest
        while m:
            b = m & -m
            m ^= b
            w = row[b.bit_length() - 1]
            if w:
                total = total + w * rec(rest ^ b)
        memo[mask] = total
        return total

    return rec((1 << k) - 1)


def _haf_recursive(rows, idx):
    if not idx:
        return 1
    i, rest = idx[0], idx[1:]
    total = 0
    for pos, j in enumerate(rest):
        w = rows[i][j]
        if w:
            total = total + w * _haf_recursive(rows, rest[:pos] + rest[pos + 1:])
    return total


# -- linear algebra -------------------------------------------------------------

@dataclass(frozen=True)
class LinearSolution:
    """Result of :func:`solve_linear_exact`.

    ``unique`` is False when the system is rank deficient; ``x`` is then one
    particular solution (free variables set to zero).
    """

    x: tuple
    rank: int
    unique: bool


def solve_linear_exact(a, b):
    """Solve ``a @ x = b`` exactly by Gauss-Jordan elimination over Q.

    ``a`` may be rectangular; overdetermined systems are accepted when
    consistent. Raises :class:`InconsistentSystemError` otherwise.
    """
    rows = [[Fraction(to_rational(v)) for v in r] for r in a]
    rhs = [Fraction(to_rational(v)) for v in b]
    if len(rows) != len(rhs):
        raise ValueError("row count of a does not match length of b")
    n = len(rows[0]) if rows else 0
    aug = [r + [v] for r, v in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            raise InconsistentSystemError(f"equation {i} is inconsistent with the others")
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return LinearSolution(tuple(_norm(v) for v in x), len(pivots), len(pivots) == n)


# -- series ---------------------------------------------------------------------

def truncated_inverse_sqrt_product(lambdas, c, max_order):
    """Taylor coefficients of ``prod_j (1 - c**2 lam_j**2 w**2) ** -1/2``.

    Returns ``max_order + 1`` floats, the coefficients of ``w**0 ...
    w**max_order``. Each factor is the binomial series whose ``w**(2x)``
    coefficient is ``C(2x, x) (c lam / 2)**(2x)``; odd coefficients are zero.
    """
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    out = [0.0] * (max_order + 1)
    out[0] = 1.0
    for lam in lambdas:
        t = abs(c * lam)
        if t >= 1:
            raise DivergentSeriesError(
                f"|c*lambda| = {t} >= 1: the series diverges (c must stay below 1/||A||_2)"
            )
        if t == 0:
            continue
        q = (t / 2) ** 2
        factor = [0.0] * (max_order + 1)
        term = 1.0
        for x in range(max_order // 2 + 1):
            if x:
                # C(2x,x)/C(2x-2,x-1) = (2x)(2x-1)/x^2
                term *= q * (2 * x) * (2 * x - 1) / (x * x)
            factor[2 * x] = term
        prod = [0.0] * (max_order + 1)
        for i, a in enumerate(out):
            if a == 0.0:
                continue
            for j in range(0, max_order + 1 - i, 2):
                prod[i + j] += a * factor[j]
        out = prod
    return out


def multinomial(counts):
    """``(sum counts)! / prod(k!)`` as an exact integer."""
    total, result = 0, 1
    for k in counts:
        total += k
        result *= math.comb(total, k)
    return result

