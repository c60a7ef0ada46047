"""Click patterns, orbits and meta-orbits, partition counting and the
max-orbit knapsack.

A click pattern is a tuple of photon counts. Its orbit is the set of all
its permutations; orbits are represented by the nondecreasing permutation.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import permutations

from .algebra import multinomial
from .errors import InfeasibleError


def _check_pattern(p):
    p = tuple(int(v) for v in p)
    if not p:
        raise ValueError("a click pattern needs at least one mode")
    if any(v < 0 for v in p):
        raise ValueError(f"negative photon count in {p}")
    return p


def multiplicities(p, n=None):
    """``(k_0, ..., k_n)``: how many modes registered ``j`` photons."""
    p = _check_pattern(p)
    n = max(p) if n is None else n
    counts = Counter(p)
    return tuple(counts.get(j, 0) for j in range(n + 1))


def decollision(p):
    """Binary pattern of length ``n*M``; block ``i`` is ``(0,)*(n-n_i) + (1,)*n_i``."""
    p = _check_pattern(p)
    n = max(p)
    if n == 0:
        raise ValueError("decollision of the all-zero pattern is undefined")
    out = []
    for v in p:
        out.extend((0,) * (n - v) + (1,) * v)
    return tuple(out)


def orbit_size(p):
    """Number of distinct permutations of ``p``: ``M! / prod_j k_j!``."""
    return multinomial(multiplicities(p))


@dataclass(frozen=True)
class Orbit:
    """Orbit of a click pattern, stored by its sorted representative."""

    representative: tuple

    def __post_init__(self):
        object.__setattr__(self, "representative", tuple(sorted(_check_pattern(self.representative))))

    @property
    def modes(self):
        return len(self.representative)

    @property
    def total(self):
        return sum(self.representative)

    @property
    def max_count(self):
        return max(self.representative)

    @property
    def size(self):
        return orbit_size(self.representative)

    def elements(self):
        """All distinct permutations, in lexicographic order."""
        return sorted(set(permutations(self.representative)))

    def factorial_product(self):
        """``n! = prod_i n_i!`` (the same for every element of the orbit)."""
        return math.prod(math.factorial(v) for v in self.representative)

    def label(self):
        return "(" + "".join(map(str, self.representative)) + ")" if self.max_count < 10 else str(self.representative)


@dataclass(frozen=True, order=True)
class MetaOrbitKey:
    """Label of a meta-orbit: total photon number and attained maximum count."""

    total: int
    max_count: int

    def __post_init__(self):
        if not 1 <= self.max_count <= self.total:
            raise ValueError("need 1 <= max_count <= total")

    def label(self):
        return f"|n|={self.total},Delta={self.max_count}"


def _partitions(total, max_part, max_len):
    """Partitions of ``total`` into at most ``max_len`` parts each <= ``max_part``,
    as nonincreasing tuples."""
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first, max_len - 1):
            yield (first,) + rest


def _display_key(rep):
    n = max(rep)
    ks = multiplicities(rep)
    return (n,) + tuple(ks[j] for j in range(n, 1, -1))


def enumerate_orbits(modes, total, max_count):
    """All orbits of ``modes``-mode patterns with ``total`` photons and every
    count at most ``max_count``.

    Ordering: by attained maximum ``n``; within it by ``k_n``, then
    ``k_{n-1}``, ... ``k_2`` increasing. This is the display order of the
    orbit plots (e.g. ``(111122), (011222), (002222), (111113), ...``).
    """
    if total < 0 or max_count < 0 or modes < 1:
        raise ValueError("need total >= 0, max_count >= 0 and modes >= 1")
    if total == 0:
        return [Orbit((0,) * modes)]
    reps = []
    for part in _partitions(total, max_count, modes):
        reps.append(tuple(sorted(part + (0,) * (modes - len(part)))))
    reps.sort(key=_display_key)
    return [Orbit(r) for r in reps]


def series_mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def _geometric_divide(series, step, n):
    """Multiply a truncated series by ``1 / (1 - x**step)``."""
    out = list(series[: n + 1]) + [0] * max(0, n + 1 - len(series))
    for d in range(step, n + 1):
        out[d] += out[d - step]
    return out


def partition_count(total):
    """Number of partitions of ``total``: coefficient of ``x**total`` in
    ``prod_k 1/(1 - x**k)``."""
    if total < 0:
        raise ValueError("total must be nonnegative")
    series = [1] + [0] * total
    for k in range(1, total + 1):
        series = _geometric_divide(series, k, total)
    return series[total]


def gaussian_binomial_series(modes, max_count, order):
    """Coefficients up to ``x**order`` of the Gaussian binomial
    ``[max_count + modes choose modes]_x``."""
    series = [1] + [0] * order
    for j in range(1, modes + 1):
        numer = [0] * (order + 1)
        numer[0] = 1
        e = max_count + modes + 1 - j
        if e <= order:
            numer[e] -= 1
        series = series_mul(series, numer, order)
        series = _geometric_divide(series, j, order)
    return series


def restricted_partition_count(modes, max_count, total):
    """Partitions of ``total`` into at most ``modes`` parts, each ``<= max_count``."""
    if min(modes, max_count, total) < 0:
        raise ValueError("arguments must be nonnegative")
    return gaussian_binomial_series(modes, max_count, total)[total]


def meta_orbit_count(modes, max_count, total):
    """Number of orbits in the meta-orbit with attained maximum ``max_count``."""
    return restricted_partition_count(modes, max_count, total) - restricted_partition_count(
        modes, max_count - 1, total
    )


def combinatorial_weight(p, n):
    """``prod_j C(n, j) ** k_j``: ways to place each count inside its block of ``n``."""
    p = _check_pattern(p)
    if max(p) > n:
        raise ValueError(f"count {max(p)} exceeds n={n}")
    return math.prod(math.comb(n, v) for v in p)


@dataclass(frozen=True)
class CountIdentity:
    lhs: int
    rhs: int

    @property
    def holds(self):
        return self.lhs == self.rhs


def verify_count_identity(modes, n, r):
    """Compare ``sum_orbits |O| * weight`` with ``C(n*M, 2r)``.

    Every ``2r``-subset of the ``n*M`` vertices of ``G × K̄_n`` comes from
    exactly one pattern with counts at most ``n``, so both sides agree.
    """
    if not 0 <= 2 * r <= n * modes:
        raise ValueError("need 0 <= 2r <= n*M")
    lhs = sum(o.size * combinatorial_weight(o.representative, n) for o in enumerate_orbits(modes, 2 * r, n))
    return CountIdentity(lhs, math.comb(n * modes, 2 * r))


@dataclass(frozen=True)
class KnapsackResult:
    """Optimal multiplicity vector ``k`` with ``cost = prod k_i!`` (exact)."""

    k: tuple
    cost: int

    @property
    def log_cost(self):
        return sum(math.lgamma(v + 1) for v in self.k)

    @property
    def orbit_size(self):
        return math.factorial(sum(self.k)) // self.cost

    def pattern(self):
        return tuple(i for i, c in enumerate(self.k) for _ in range(c))


def max_orbit_knapsack(modes, total, m, caps=None):
    """Multiplicity vector maximizing the orbit size.

    Minimizes ``prod_i k_i!`` over ``(k_0, ..., k_m)`` with ``sum k_i = modes``
    and ``sum i*k_i = total`` (and ``k_i <= caps[i]``) by dynamic programming
    over (modes used, photons used). Costs are compared as exact integers;
    ties go to the lexicographically smallest ``k``.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    caps = [modes] * (m + 1) if caps is None else [min(int(c), modes) for c in caps]
    if len(caps) != m + 1:
        raise ValueError(f"caps must have {m + 1} entries")
    if total < 0 or total > m * modes:
        raise InfeasibleError(f"{total} photons cannot be spread over {modes} modes with at most {m} each")
    # best[(used, photons)] = (cost, prefix)
    best = {(0, 0): (1, ())}
    for i in range(m + 1):
        nxt = {}
        for (used, ph), (cost, prefix) in best.items():
            for k in range(0, caps[i] + 1):
                u, p = used + k, ph + i * k
                if u > modes or p > total:
                    break
                cand = (cost * math.factorial(k), prefix + (k,))
                cur = nxt.get((u, p))
                if cur is None or cand < cur:
                    nxt[(u, p)] = cand
        best = nxt
    hit = best.get((modes, total))
    if hit is None:
        raise InfeasibleError(f"no multiplicity vector meets modes={modes}, total={total}, caps={caps}")
    return KnapsackResult(hit[1], hit[0])
