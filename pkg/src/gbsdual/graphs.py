"""Weighted undirected graphs as exact symmetric matrices, and the graph
constructions used throughout: disjoint union, tensor product with the
looped complete graph, the prism ``G □ P2(x)``, the loss extension ``C(x)``,
induced subgraphs and the reduced Kronecker product.

Vertices are 0-based here; the file formats and the CLI speak 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import UniPoly, to_rational
from .combinatorics import decollision
from .errors import DimensionError, NotSymmetricError


def _square(matrix, convert):
    rows = tuple(tuple(convert(v) for v in r) for r in matrix)
    for r in rows:
        if len(r) != len(rows):
            raise DimensionError(f"matrix is not square: row of length {len(r)} in a {len(rows)}-row matrix")
    return rows


def _check_symmetric(rows):
    k = len(rows)
    for i in range(k):
        for j in range(i + 1, k):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetricError(f"weights[{i}][{j}] != weights[{j}][{i}]")


@dataclass(frozen=True)
class Graph:
    """Weighted graph on ``order`` vertices.

    ``weights`` is a symmetric matrix of exact rationals. Diagonal entries
    are loop weights; they are kept (they matter for the reduced Kronecker
    product and for displacement) but a hafnian never pairs a vertex with
    itself.
    """

    weights: tuple

    def __post_init__(self):
        rows = _square(self.weights, to_rational)
        _check_symmetric(rows)
        object.__setattr__(self, "weights", rows)

    @classmethod
    def from_matrix(cls, matrix):
        return cls(tuple(tuple(r) for r in matrix))

    @property
    def order(self):
        return len(self.weights)

    @property
    def rows(self):
        return [list(r) for r in self.weights]

    def weight(self, i, j):
        return self.weights[i][j]

    def edges(self):
        """``[(i, j, w)]`` for ``i < j`` with nonzero weight."""
        return [
            (i, j, self.weights[i][j])
            for i in range(self.order)
            for j in range(i + 1, self.order)
            if self.weights[i][j] != 0
        ]

    @property
    def edge_count(self):
        return len(self.edges())

    def is_simple(self):
        return all(w == 1 for _, _, w in self.edges()) and all(
            self.weights[i][i] == 0 for i in range(self.order)
        )

    def scaled(self, c):
        c = to_rational(c)
        return Graph(tuple(tuple(v * c for v in r) for r in self.weights))

    def to_numpy(self, scale=1.0):
        if self.order == 0:
            return np.zeros((0, 0))
        return np.array([[float(v) for v in r] for r in self.weights]) * scale

    def __repr__(self):
        return f"Graph(order={self.order}, edges={self.edge_count})"


@dataclass(frozen=True)
class PolyGraph:
    """Graph whose edge weights are polynomials in ``x`` (a UniPoly matrix)."""

    weights: tuple

    def __post_init__(self):
        rows = _square(self.weights, UniPoly.coerce)
        _check_symmetric(rows)
        object.__setattr__(self, "weights", rows)

    @property
    def order(self):
        return len(self.weights)

    @property
    def rows(self):
        return [list(r) for r in self.weights]

    def evaluate(self, x):
        """Substitute a rational for ``x``."""
        return Graph(tuple(tuple(p.evaluate(to_rational(x)) for p in r) for r in self.weights))

    def __repr__(self):
        return f"PolyGraph(order={self.order})"


def vertex_subset(members, order):
    """Validate and canonicalize a vertex subset as a sorted tuple."""
    s = tuple(sorted(members))
    for a, b in zip(s, s[1:]):
        if a == b:
            raise ValueError(f"vertex {a} repeated in subset")
    if s and (s[0] < 0 or s[-1] >= order):
        raise IndexError(f"subset {s} has indices outside [0, {order})")
    return s


# -- constructors ---------------------------------------------------------------

def empty_graph(order):
    return Graph(tuple((0,) * order for _ in range(order)))


def from_edge_list(order, edges):
    """Build a graph from ``(i, j[, w])`` triples (0-based, ``w`` defaults to 1).

    ``i == j`` sets a loop weight. Listing the same pair twice is an error.
    """
    w = [[0] * order for _ in range(order)]
    seen = set()
    for e in edges:
        i, j = int(e[0]), int(e[1])
        val = to_rational(e[2]) if len(e) > 2 else 1
        if not (0 <= i < order and 0 <= j < order):
            raise IndexError(f"edge ({i}, {j}) outside a graph of order {order}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
        w[i][j] = w[j][i] = val
    return Graph.from_matrix(w)


def path_graph(n):
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_graph_with_loops(n, loop=1):
    """``K̄_n``: the all-ones adjacency matrix ``J_n`` (loops of weight ``loop``)."""
    return Graph(tuple(tuple(loop if i == j else 1 for j in range(n)) for i in range(n)))


def complete_bipartite(m, n):
    return from_edge_list(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def book_graph(n):
    """``n`` 4-cycles sharing the spine edge ``(0, 1)``."""
    edges = [(0, 1)]
    for p in range(n):
        a, b = 2 + 2 * p, 3 + 2 * p
        edges += [(0, a), (a, b), (b, 1)]
    return from_edge_list(2 * n + 2, edges)


# -- operations -----------------------------------------------------------------

def disjoint_union(g1, g2):
    m1, m2 = g1.order, g2.order
    rows = [list(r) + [0] * m2 for r in g1.weights]
    rows += [[0] * m1 + list(r) for r in g2.weights]
    return Graph.from_matrix(rows)


def tensor_with_loops_complete(g, n):
    """``G × K̄_n``: the Kronecker product ``A ⊗ J_n`` (vertex ``(i, a)`` is ``i*n + a``)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m = g.order
    return Graph.from_matrix(
        [[g.weights[p // n][q // n] for q in range(m * n)] for p in range(m * n)]
    )


def prism(g):
    """``G □ P2(x)``: two copies of ``G`` joined by rungs of weight ``x``."""
    m = g.order
    x = UniPoly((0, 1))
    rows = []
    for p in range(2 * m):
        row = []
        for q in range(2 * m):
            if (p < m) == (q < m):
                row.append(UniPoly.coerce(g.weights[p % m][q % m]))
            else:
                row.append(x if p % m == q % m else UniPoly())
        rows.append(row)
    return PolyGraph(tuple(map(tuple, rows)))


def _block_rows(b, m):
    rows = b.rows if isinstance(b, Graph) else [[to_rational(v) for v in r] for r in b]
    if len(rows) != m or any(len(r) != m for r in rows):
        raise DimensionError(f"B must be {m}x{m}")
    return rows


def block_matrix(a, b):
    """The ``2M × 2M`` graph ``[[A, B], [Bᵀ, A]]``.

    ``b`` may be a Graph or any square matrix; it need not be symmetric.
    """
    m = a.order
    brows = _block_rows(b, m)
    rows = []
    for p in range(2 * m):
        row = []
        for q in range(2 * m):
            i, j = p % m, q % m
            if (p < m) == (q < m):
                row.append(a.weights[i][j])
            elif p < m:
                row.append(brows[i][j])
            else:
                row.append(brows[j][i])
        rows.append(row)
    return Graph.from_matrix(rows)


def split_blocks(c0):
    """Inverse of :func:`block_matrix`: return ``(A, B)`` from ``[[A, B], [Bᵀ, A]]``."""
    n = c0.order
    if n % 2:
        raise DimensionError("block matrix must have even order")
    m = n // 2
    w = c0.weights
    a = [[w[i][j] for j in range(m)] for i in range(m)]
    if any(w[m + i][m + j] != a[i][j] for i in range(m) for j in range(m)):
        raise DimensionError("diagonal blocks of the matrix differ")
    b = [[w[i][m + j] for j in range(m)] for i in range(m)]
    return Graph.from_matrix(a), b


def loss_extension(a, b):
    """``C(x) = [[A, B + x I], [Bᵀ + x I, A]]`` as a PolyGraph."""
    m = a.order
    c0 = block_matrix(a, b)
    rows = [[UniPoly.coerce(v) for v in r] for r in c0.weights]
    for i in range(m):
        rows[i][i + m] = rows[i][i + m] + UniPoly((0, 1))
        rows[i + m][i] = rows[i][i + m]
    return PolyGraph(tuple(map(tuple, rows)))


def induced_subgraph(g, s):
    s = vertex_subset(s, g.order)
    return Graph(tuple(tuple(g.weights[i][j] for j in s) for i in s))


def reduced_kronecker(a, pattern):
    """``A ⊘ J`` for a click pattern: the principal submatrix of ``A ⊗ J_n``
    left after dropping the first ``n - n_i`` rows/columns of block ``i``
    (``n = max n_i``). The result has order ``sum(pattern)``."""
    pattern = tuple(int(v) for v in pattern)
    if len(pattern) != a.order:
        raise DimensionError(f"pattern length {len(pattern)} != graph order {a.order}")
    n = max(pattern, default=0)
    bits = decollision(pattern)
    keep = [p // n for p, bit in enumerate(bits) if bit]
    return Graph(tuple(tuple(a.weights[i][j] for j in keep) for i in keep))


def eigenvalues_symmetric(g):
    """Real eigenvalues of the weight matrix (floating point, ascending)."""
    if g.order == 0:
        return []
    return list(np.linalg.eigvalsh(g.to_numpy()))


def spectral_norm(g):
    return max((abs(v) for v in eigenvalues_symmetric(g)), default=0.0)

