"""Signed and signless matching polynomials of weighted graphs.

The signless polynomial is ``mu+(z) = sum_r m(G, r) z**(M - 2r)``, where
``m(G, r)`` sums, over all sets of ``r`` disjoint edges, the product of
their weights. Weights are used as they are (never squared), and may be
rationals or polynomials in ``x``; in the latter case the result is a
bivariate polynomial.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass

from .algebra import BiPoly, UniPoly
from .budget import Meter
from .errors import SizeLimitError
from .graphs import PolyGraph
from .kernels import graded_hafnian_sums

ORACLE_LIMIT = 16


@dataclass(frozen=True)
class MatchingPolynomial:
    """Signless matching polynomial ``mu+`` of a graph on ``order`` vertices.

    ``counts[r]`` is the weighted number of ``r``-matchings, i.e. the
    coefficient of ``z**(order - 2r)``.
    """

    counts: tuple
    order: int

    @property
    def signless(self):
        c = [0] * (self.order + 1)
        for r, m in enumerate(self.counts):
            c[self.order - 2 * r] = m
        return UniPoly(c)

    @property
    def signed(self):
        return self.signless.signed_from_signless(self.order)

    def match_count(self, r):
        if not 0 <= r <= self.order // 2:
            raise ValueError(f"r must lie in [0, {self.order // 2}]")
        return self.counts[r] if r < len(self.counts) else 0

    def evaluate(self, z, weight=1):
        """``sum_r m(G, r) * weight**r * z**(M - 2r)`` (works for floats)."""
        total = 0
        for r, m in enumerate(self.counts):
            if m:
                total += float(m) * weight**r * z ** (self.order - 2 * r)
        return total

    def __str__(self):
        return self.signless.render("z")


def _neighbour_masks(rows):
    k = len(rows)
    out = []
    for i in range(k):
        m = 0
        for j in range(k):
            if j != i and rows[i][j]:
                m |= 1 << j
        out.append(m)
    return out


def matching_counts(rows, budget=None):
    """Weighted ``r``-matching counts of a symmetric matrix (diagonal ignored).

    Eliminates the lowest live vertex ``v``: either ``v`` stays unmatched, or
    it is matched to a live neighbour ``u`` with weight ``a[v][u]``. This is
    the edge recurrence applied to every edge at ``v`` in turn, with the
    residual graph identified by its live vertex set.
    """
    k = len(rows)
    nbr = _neighbour_masks(rows)
    meter = Meter("matching polynomial recurrence", budget)
    memo = {0: (1,)}

    def rec(live):
        hit = memo.get(live)
        if hit is not None:
            return hit
        meter.tick()
        low = live & -live
        v = low.bit_length() - 1
        rest = live ^ low
        out = list(rec(rest))
        size = bin(live).count("1") // 2 + 1
        out.extend([0] * (size - len(out)))
        row = rows[v]
        m = rest & nbr[v]
        while m:
            b = m & -m
            m ^= b
            w = row[b.bit_length() - 1]
            for r, c in enumerate(rec(rest ^ b)):
                if c:
                    out[r + 1] = out[r + 1] + w * c
        res = tuple(out)
        memo[live] = res
        return res

    limit = sys.getrecursionlimit()
    if k + 100 > limit:
        sys.setrecursionlimit(k + 100)
    try:
        return rec((1 << k) - 1)
    finally:
        sys.setrecursionlimit(limit)


def blocked_matching_counts(weights, pattern, budget=None, memo=None):
    """Matching counts of the reduced Kronecker graph of ``weights`` and ``pattern``.

    Block ``i`` holds ``pattern[i]`` twin vertices; two vertices of blocks
    ``i`` and ``j`` are joined with weight ``weights[i][j]`` (the diagonal
    weight joins twins of one block). Twins are interchangeable, so the
    memo key is the vector of remaining block sizes, which keeps the state
    space at ``prod(n_i + 1)`` even when the graph itself is dense.

    ``memo`` may be a dict reused across calls with the same ``weights``;
    sub-results for smaller block vectors are then shared between patterns.
    """
    pattern = tuple(int(v) for v in pattern)
    k = len(pattern)
    if len(weights) != k:
        raise ValueError("pattern length must equal the matrix order")
    meter = Meter("blocked matching recurrence", budget)
    memo = {} if memo is None else memo

    def rec(counts):
        hit = memo.get(counts)
        if hit is not None:
            return hit
        i = next((j for j, v in enumerate(counts) if v), None)
        if i is None:
            return (1,)
        meter.tick()
        less = counts[:i] + (counts[i] - 1,) + counts[i + 1:]
        out = list(rec(less))
        size = (sum(counts)) // 2 + 1
        out.extend([0] * (size - len(out)))
        row = weights[i]
        for j in range(i, k):
            mult = less[j]
            w = row[j]
            if not mult or not w:
                continue
            nxt = less[:j] + (less[j] - 1,) + less[j + 1:]
            f = w * mult
            for r, c in enumerate(rec(nxt)):
                if c:
                    out[r + 1] = out[r + 1] + f * c
        res = tuple(out)
        memo[counts] = res
        return res

    limit = sys.getrecursionlimit()
    need = sum(pattern) + 100
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        return rec(pattern)
    finally:
        sys.setrecursionlimit(limit)


def matching_signless(g, budget=None):
    """Signless matching polynomial of a :class:`Graph`.

    Returns a :class:`MatchingPolynomial`. For a :class:`PolyGraph` use
    :func:`matching_signless_bivariate`.
    """
    if isinstance(g, PolyGraph):
        raise TypeError("use matching_signless_bivariate for polynomial weights")
    return MatchingPolynomial(matching_counts(g.weights, budget), g.order)


def matching_signless_bivariate(g, budget=None):
    """``mu+`` of a graph whose weights are polynomials in ``x``, as a BiPoly in ``(x, z)``."""
    rows = g.weights if isinstance(g, PolyGraph) else tuple(
        tuple(UniPoly.coerce(v) for v in r) for r in g.weights
    )
    counts = matching_counts(rows, budget)
    zc = [UniPoly()] * (g.order + 1)
    for r, c in enumerate(counts):
        zc[g.order - 2 * r] = UniPoly.coerce(c)
    return BiPoly.from_z_coeffs(zc)


def matching_signed(g, budget=None):
    """Matching polynomial ``sum_r (-1)**r m(G, r) x**(M - 2r)`` as a UniPoly."""
    return matching_signless(g, budget).signed


def match_count(g, r, budget=None):
    return matching_signless(g, budget).match_count(r)


def matching_signless_oracle(g):
    """Independent ``mu+`` via ``sum_S haf(A_S) z**(M - |S|)`` over all vertex subsets.

    Cost is ``2**M`` table entries, so the order is capped at 16. Used to
    cross-check the recurrence.
    """
    if g.order > ORACLE_LIMIT:
        raise SizeLimitError(f"oracle is limited to {ORACLE_LIMIT} vertices, got {g.order}")
    if g.order == 0:
        return MatchingPolynomial((1,), 0)
    sums = graded_hafnian_sums(g.weights)[-1]
    return MatchingPolynomial(tuple(sums[2 * r] for r in range(g.order // 2 + 1)), g.order)
