"""GBS, displaced GBS and mixed displaced GBS polynomials.

Every polynomial here is available two ways: from its definition as a sum
over vertex subsets, and through a single object built on a doubled graph
(a hafnian of the prism for GBS, a matching polynomial of the prism or of
the loss extension ``C(x)`` for the displaced versions). Polynomials are
stored signless; signed versions come from a parity sign map.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import BiPoly, UniPoly, hafnian, solve_linear_exact, to_rational
from .budget import Meter
from .errors import DimensionError, RankDeficientError, SizeLimitError
from .graphs import Graph, block_matrix, induced_subgraph, loss_extension, prism
from .kernels import GRADED_LIMIT, TABLE_LIMIT, graded_hafnian_sums, subset_hafnians
from .matching import matching_counts, matching_signless_bivariate

DEFINITION_LIMIT = 20


@dataclass(frozen=True)
class GbsPolynomial:
    """Signless GBS polynomial ``sum_r g(G, r) x**(M - 2r)``."""

    signless: UniPoly
    order: int

    @property
    def signed(self):
        return self.signless.signed_from_signless(self.order)

    def coefficient(self, r):
        """``g(G, r)``, the sum of ``haf(A_S)**2`` over ``|S| = 2r``."""
        return self.signless.coeff(self.order - 2 * r)

    def coefficients(self):
        return [self.coefficient(r) for r in range(self.order // 2 + 1)]

    def __str__(self):
        return self.signless.render("x")


@dataclass(frozen=True)
class DgbsPolynomial:
    """Displaced GBS polynomial in ``(x, z)``.

    ``kind`` is ``"pure"`` (squared matching polynomials of induced
    subgraphs) or ``"mixed"`` (unsquared matching polynomials of induced
    subgraphs of the doubled loss matrix).
    """

    poly: BiPoly
    order: int
    kind: str = "pure"

    def coefficient(self, size):
        """The ``z``-polynomial multiplying ``x**(M - size)``."""
        if not 0 <= size <= self.order:
            raise ValueError(f"size must lie in [0, {self.order}]")
        return self.poly.x_coeff(self.order - size)

    def at_z_zero(self):
        return UniPoly([self.poly.terms.get((d, 0), 0) for d in range(self.order + 1)])

    def __str__(self):
        return self.poly.render(("x", "z"))


def _cap(order, limit):
    if order > limit:
        raise SizeLimitError(f"order {order} exceeds the definition cap {limit}")


def _popcounts(n):
    out = [0] * (1 << n)
    for mask in range(1, 1 << n):
        out[mask] = out[mask >> 1] + (mask & 1)
    return out


# -- GBS ------------------------------------------------------------------------

def gbs_by_definition(g, cap=DEFINITION_LIMIT):
    """Signless GBS polynomial from ``sum_S haf(A_S)**2 x**(M - |S|)``."""
    _cap(g.order, min(cap, TABLE_LIMIT))
    m = g.order
    table = subset_hafnians(g.weights)
    pc = _popcounts(m)
    acc = [0] * (m + 1)
    for mask, h in enumerate(table):
        if h:
            acc[pc[mask]] += h * h
    return GbsPolynomial(UniPoly([acc[m - d] for d in range(m + 1)]), m)


def gbs_by_prism(g):
    """Signless GBS polynomial as the hafnian of the prism with rung weight ``x``."""
    value = hafnian(prism(g).weights)
    return GbsPolynomial(UniPoly.coerce(value), g.order)


def gbs_coefficient(g, r, budget=None):
    """``g(G, r) = sum_{|S|=2r} haf(A_S)**2`` without building the polynomial.

    Uses the subset table when ``M <= 24``; otherwise enumerates the
    ``2r``-subsets directly, which stays cheap for small ``r``.
    """
    m = g.order
    if not 0 <= 2 * r <= m:
        raise ValueError(f"need 0 <= 2r <= {m}, got r={r}")
    if r == 0:
        return 1
    if m <= TABLE_LIMIT:
        table = subset_hafnians(g.weights)
        pc = _popcounts(m)
        return sum(h * h for mask, h in enumerate(table) if h and pc[mask] == 2 * r)
    meter = Meter("gbs_coefficient subset enumeration", budget)
    rows = g.weights
    total = 0
    for s in combinations(range(m), 2 * r):
        meter.tick()
        h = hafnian([[rows[i][j] for j in s] for i in s], strategy="recursive" if r <= 4 else "memo")
        total += h * h
    return total


def prism_evaluations(g, nodes):
    """``[(x, haf(prism(g) at x))]`` for rational nodes ``x``."""
    p = prism(g)
    return [(to_rational(x), hafnian(p.evaluate(x).weights)) for x in nodes]


def recover_gbs_from_evaluations(order, evals):
    """Recover the GBS coefficients from values of the prism hafnian.

    Each pair ``(x, v)`` gives ``sum_r g_r x**(M - 2r) = v``. Only ``x**2``
    enters up to an overall factor, so nodes must be nonzero with distinct
    squares; at least ``floor(M/2) + 1`` are needed. Extra nodes must agree
    with the others.
    """
    m = int(order)
    need = m // 2 + 1
    pts = [(to_rational(x), to_rational(v)) for x, v in evals]
    if any(x == 0 for x, _ in pts):
        raise ValueError("evaluation nodes must be nonzero")
    squares = [x * x for x, _ in pts]
    if len(set(squares)) != len(squares):
        raise ValueError("repeated evaluation nodes (nodes x and -x count as the same)")
    if len(pts) < need:
        raise ValueError(f"need at least {need} nodes for order {m}, got {len(pts)}")
    a = [[Fraction(x) ** (m - 2 * r) for r in range(need)] for x, _ in pts]
    sol = solve_linear_exact(a, [v for _, v in pts])
    if not sol.unique:
        raise RankDeficientError(f"system has rank {sol.rank} < {need}")
    c = [0] * (m + 1)
    for r, g in enumerate(sol.x):
        c[m - 2 * r] = g
    return GbsPolynomial(UniPoly(c), m)


# -- displaced GBS --------------------------------------------------------------

def _square_z(counts, size):
    zc = [0] * (size + 1)
    for r, c in enumerate(counts):
        zc[size - 2 * r] = c
    p = UniPoly(zc)
    return p


def _subset_matchings(rows, order, masks):
    """Map mask -> counts tuple of the induced subgraph on that mask."""
    if order <= GRADED_LIMIT:
        table = graded_hafnian_sums(rows)
        pc = _popcounts(order)
        return {mask: tuple(table[mask][2 * r] for r in range(pc[mask] // 2 + 1)) for mask in masks}
    out = {}
    for mask in masks:
        idx = [i for i in range(order) if mask >> i & 1]
        out[mask] = matching_counts([[rows[i][j] for j in idx] for i in idx])
    return out


def dgbs_by_definition(g, cap=DEFINITION_LIMIT):
    """``sum_S (mu+(A_S)(z))**2 x**(M - |S|)`` summed over vertex subsets."""
    _cap(g.order, cap)
    m = g.order
    masks = range(1 << m)
    counts = _subset_matchings(g.weights, m, masks)
    by_size = [UniPoly() for _ in range(m + 1)]
    for mask in masks:
        size = bin(mask).count("1")
        p = _square_z(counts[mask], size)
        by_size[size] = by_size[size] + p * p
    return DgbsPolynomial(BiPoly.from_x_coeffs({m - s: by_size[s] for s in range(m + 1)}), m, "pure")


def dgbs_by_duality(g, budget=None):
    """Matching polynomial of the prism with rung weight ``x``."""
    return DgbsPolynomial(matching_signless_bivariate(prism(g), budget), g.order, "pure")


def _check_pair(a, b):
    brows = b.rows if isinstance(b, Graph) else [list(r) for r in b]
    if len(brows) != a.order or any(len(r) != a.order for r in brows):
        raise DimensionError(f"A has order {a.order} but B is {len(brows)}x{len(brows[0]) if brows else 0}")
    return brows


def mdgbs_by_definition(a, b, cap=DEFINITION_LIMIT):
    """``sum_{S ⊆ [M]} mu+(C(0) restricted to S ∪ (S+M))(z) x**(M - |S|)``."""
    _check_pair(a, b)
    _cap(a.order, cap)
    m = a.order
    c0 = block_matrix(a, b)
    masks = [s | (s << m) for s in range(1 << m)]
    counts = _subset_matchings(c0.weights, 2 * m, masks)
    by_size = [UniPoly() for _ in range(m + 1)]
    for s in range(1 << m):
        size = bin(s).count("1")
        by_size[size] = by_size[size] + _square_z(counts[s | (s << m)], 2 * size)
    return DgbsPolynomial(BiPoly.from_x_coeffs({m - s: by_size[s] for s in range(m + 1)}), m, "mixed")


def mdgbs_by_duality(a, b, budget=None):
    """Matching polynomial of ``C(x) = [[A, B + xI], [Bᵀ + xI, A]]``."""
    _check_pair(a, b)
    return DgbsPolynomial(matching_signless_bivariate(loss_extension(a, b), budget), a.order, "mixed")


# -- closed forms ---------------------------------------------------------------

def _poch(a, k):
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def _signed(terms, order):
    c = [0] * (order + 1)
    for d, v in terms:
        c[d] += v
    return GbsPolynomial(UniPoly(c).signless_from_signed(order), order)


def closed_form_gbs(family, *params):
    """Signless GBS polynomial of a standard family from its closed form.

    ``family`` is ``"cycle"`` (n >= 3), ``"complete"`` (n >= 1),
    ``"complete_bipartite"`` (m, n >= 1) or ``"book"`` (n >= 1, the graph of
    ``n`` 4-cycles sharing one edge).
    """
    if any(int(p) < 1 for p in params):
        raise ValueError("family parameters must be positive")
    if family == "cycle":
        (n,) = params
        if n < 3:
            raise ValueError("a cycle needs n >= 3")
        terms = [(n - 2 * r, (-1) ** r * Fraction(n, n - r) * math.comb(n - r, r)) for r in range(n // 2 + 1)]
        if n % 2 == 0:
            terms.append((0, 2 * (-1) ** (n // 2)))
        return _signed(terms, n)
    if family == "complete":
        (n,) = params
        # terminating 3F0(1/2, -n/2, 1/2 - n/2; ; -4/x**2) times x**n
        half = Fraction(1, 2)
        terms = []
        for k in range(n // 2 + 1):
            v = _poch(half, k) * _poch(Fraction(-n, 2), k) * _poch(half - Fraction(n, 2), k)
            terms.append((n - 2 * k, v / math.factorial(k) * (-4) ** k))
        return _signed(terms, n)
    if family == "complete_bipartite":
        m, n = params
        terms = [
            (m + n - 2 * r, (-1) ** r * math.comb(m, r) * math.comb(n, r) * math.factorial(r) ** 2)
            for r in range(min(m, n) + 1)
        ]
        return _signed(terms, m + n)
    if family == "book":
        (n,) = params
        x2 = UniPoly((0, 0, 1))
        p = (x2 - 1) ** (n - 1) * (x2 - (n + 1)) ** 2
        return GbsPolynomial(p.signless_from_signed(2 * n + 2), 2 * n + 2)
    raise ValueError(f"unknown family {family!r}")


def signed_difference(p, q):
    """Signed ``GBS_p - GBS_q`` for two polynomials of the same order."""
    return p.signed - q.signed


def induced_gbs(g, s):
    return gbs_by_definition(induced_subgraph(g, s))
