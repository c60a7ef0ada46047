"""Photon-counting statistics of a Gaussian boson sampler encoding a graph.

A graph ``A`` (scaled by ``c``) is encoded either purely, ``C = c(A ⊕ A)``,
or with uniform loss, ``C = c[[A, B], [Bᵀ, A]]``. With a real displacement
``d`` the state has

    sigma_Q = (I - X C)^-1,        D = (d, d),
    P = exp(-1/2 Dᵀ sigma_Q^-1 D) / sqrt(det sigma_Q),

and every click-pattern probability is ``P / n!`` times a hafnian (no
displacement) or a matching polynomial evaluated at the common value ``z``
of ``Dᵀ sigma_Q^-1`` (uniform displacement). Exact combinatorics are kept
until the final floating-point evaluation.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import truncated_inverse_sqrt_product
from .combinatorics import MetaOrbitKey, Orbit, enumerate_orbits
from .errors import InvalidEncodingError, NonUniformDisplacementError
from .gbs import dgbs_by_duality, gbs_by_definition, gbs_coefficient
from .graphs import Graph, block_matrix, reduced_kronecker, spectral_norm, tensor_with_loops_complete
from .kernels import TABLE_LIMIT, hafnian_float
from .matching import blocked_matching_counts, matching_signed

UNIFORM_RTOL = 1e-10


def _as_rows(b, m):
    if b is None:
        return None
    rows = b.rows if isinstance(b, Graph) else [list(r) for r in b]
    if len(rows) != m or any(len(r) != m for r in rows):
        raise InvalidEncodingError(f"B must be {m}x{m}")
    return rows


@dataclass(frozen=True, eq=False)
class GaussianEncoding:
    """Immutable encoding of a graph into a Gaussian state.

    Build with :func:`build_encoding`. ``z`` is the uniform value of
    ``Dᵀ sigma_Q^-1`` (0 without displacement, ``None`` when the
    displacement does not give a uniform value).
    """

    kind: str
    a: Graph
    b: tuple
    c: float
    d: tuple
    cmat: np.ndarray = field(repr=False)
    sigma_q: np.ndarray = field(repr=False)
    det_sigma_q: float = 0.0
    prefactor: float = 0.0
    z: float = None
    # matching counts of residual graphs, shared by every pattern of this encoding
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def modes(self):
        return self.a.order

    @property
    def displaced(self):
        return any(v != 0 for v in self.d)

    def doubled_graph(self):
        """The unscaled ``[[A, B], [Bᵀ, A]]`` for the lossy kind."""
        g = self._memo.get("doubled")
        if g is None:
            g = self._memo["doubled"] = block_matrix(self.a, self.b)
        return g

    def metadata(self):
        return {
            "kind": self.kind,
            "modes": self.modes,
            "c": self.c,
            "d": list(self.d),
            "z": self.z,
            "det_sigma_q": self.det_sigma_q,
            "prefactor": self.prefactor,
        }


def build_encoding(kind, a, b=None, c=0.5, d=None):
    """Assemble a :class:`GaussianEncoding`.

    Parameters
    ----------
    kind : {"pure", "lossy"}
    a : Graph
        Unscaled adjacency matrix (loops allowed).
    b : Graph or matrix, optional
        Off-diagonal block for the lossy kind.
    c : float
        Scale; must satisfy ``0 < c`` and ``||C||_2 < 1`` (for the pure kind
        this is ``c < 1/||A||_2``).
    d : float or sequence of float, optional
        Real displacement per mode; a scalar is broadcast.
    """
    m = a.order
    if kind not in ("pure", "lossy"):
        raise InvalidEncodingError(f"unknown encoding kind {kind!r}")
    c = float(c)
    if not c > 0:
        raise InvalidEncodingError("c must be positive")
    if kind == "pure":
        if b is not None:
            raise InvalidEncodingError("the pure kind takes no B block")
        brows = [[0] * m for _ in range(m)]
    else:
        if b is None:
            raise InvalidEncodingError("the lossy kind needs a B block")
        brows = _as_rows(b, m)
    if d is None:
        d = 0.0
    if np.ndim(d) == 0:
        d = [float(d)] * m
    d = tuple(float(v) for v in d)
    if len(d) != m:
        raise InvalidEncodingError(f"displacement has {len(d)} entries for {m} modes")

    am = a.to_numpy()
    bm = np.array([[float(v) for v in r] for r in brows]) if m else np.zeros((0, 0))
    cm = c * np.block([[am, bm], [bm.T, am]]) if m else np.zeros((0, 0))
    norm = float(np.linalg.norm(cm, 2)) if m else 0.0
    if norm >= 1:
        bound = 1 / (norm / c)
        raise InvalidEncodingError(
            f"c = {c} gives ||C||_2 = {norm:.6g} >= 1; c must stay below {bound:.6g}"
        )
    x = np.block([[np.zeros((m, m)), np.eye(m)], [np.eye(m), np.zeros((m, m))]]) if m else np.zeros((0, 0))
    q_inv = np.eye(2 * m) - x @ cm
    det_inv = float(np.linalg.det(q_inv)) if m else 1.0
    if not det_inv > 0:
        raise InvalidEncodingError("I - XC is singular or det sigma_Q <= 0")
    sigma_q = np.linalg.inv(q_inv) if m else np.zeros((0, 0))
    dd = np.array(d + d)
    expo = -0.5 * float(dd @ q_inv @ dd) if m else 0.0
    prefactor = math.exp(expo) * math.sqrt(det_inv)

    gamma = q_inv.T @ dd if m else np.zeros(0)
    if m == 0 or not np.any(gamma):
        z = 0.0 if not any(d) else float(gamma[0]) if m else 0.0
    else:
        z0 = float(gamma[0])
        scale = max(float(np.max(np.abs(gamma))), 1e-300)
        z = z0 if np.max(np.abs(gamma - z0)) <= UNIFORM_RTOL * scale else None
    return GaussianEncoding(
        kind, a, tuple(tuple(r) for r in brows), c, d, cm, sigma_q, 1 / det_inv, prefactor, z
    )


def is_physical(e):
    """True when the encoding describes a physical state.

    Pure encodings are physical whenever valid. The lossy kind additionally
    needs a symmetric positive semidefinite ``B`` (the mixed polynomial
    identities do not need this, so it is only reported).
    """
    if e.kind == "pure":
        return True
    bm = np.array([[float(v) for v in r] for r in e.b])
    if not np.allclose(bm, bm.T):
        return False
    return bool(np.min(np.linalg.eigvalsh(bm), initial=0.0) >= -1e-12)


def uniform_displacement(a, z_target, c=1.0, b=None):
    """Real displacement ``d`` making every entry of ``Dᵀ sigma_Q^-1`` equal ``z_target``.

    Solves ``(I - cA - cBᵀ) d = z 1`` together with the second-half
    equations (identical for symmetric ``B``).

    Raises
    ------
    NonUniformDisplacementError
        If the system is singular or has no solution; the message reports
        the rank.
    """
    m = a.order
    am = a.to_numpy()
    bm = np.zeros((m, m)) if b is None else np.array([[float(v) for v in r] for r in _as_rows(b, m)])
    eye = np.eye(m)
    k = np.vstack([eye - c * am - c * bm.T, eye - c * am - c * bm])
    rhs = np.full(2 * m, float(z_target))
    rank = int(np.linalg.matrix_rank(k))
    if rank < m:
        raise NonUniformDisplacementError(f"displacement system has rank {rank} < {m}; no unique uniform d")
    sol, *_ = np.linalg.lstsq(k, rhs, rcond=None)
    resid = float(np.max(np.abs(k @ sol - rhs), initial=0.0))
    if resid > 1e-9 * max(1.0, abs(z_target)):
        raise NonUniformDisplacementError(f"no real d gives uniform z (residual {resid:.3g})")
    return sol


# -- pattern and orbit probabilities -------------------------------------------

def _factorial_product(p):
    return math.prod(math.factorial(v) for v in p)


def _blocks(e, p):
    """Base matrix and block sizes whose reduced Kronecker graph is the residual."""
    if e.kind == "pure":
        return e.a, tuple(p)
    return e.doubled_graph(), tuple(p) + tuple(p)


def _poly_value(counts, order, z, c):
    total = 0.0
    for r, m in enumerate(counts):
        if m:
            total += float(m) * c**r * z ** (order - 2 * r)
    return total


def _counts(e, base, blocks):
    counts = blocked_matching_counts(base.weights, blocks, memo=e._memo.setdefault("counts", {}))
    return counts + (0,) * (sum(blocks) // 2 + 1 - len(counts))


def _require_z(e):
    if e.z is None:
        raise NonUniformDisplacementError(
            "displacement does not give a uniform z; build d with uniform_displacement"
        )
    return e.z


def pattern_weight(e, p, method="auto"):
    """``n! p(n) / P``: the squared (pure) or plain (lossy) hafnian/matching term."""
    p = tuple(int(v) for v in p)
    if len(p) != e.modes:
        raise ValueError(f"pattern has {len(p)} entries for {e.modes} modes")
    if not any(p):
        return 1.0
    z = _require_z(e)
    if method == "auto":
        method = "hafnian" if z == 0 else "matching"
    base, blocks = _blocks(e, p)
    size = sum(blocks)
    if method == "hafnian":
        if z != 0:
            raise ValueError("the hafnian path needs zero displacement")
        if size % 2:
            v = 0.0
        elif size <= TABLE_LIMIT:
            v = hafnian_float(reduced_kronecker(base, blocks).to_numpy(e.c))
        else:
            v = float(_counts(e, base, blocks)[size // 2]) * e.c ** (size // 2)
    elif method == "matching":
        v = _poly_value(_counts(e, base, blocks), size, z, e.c)
    else:
        raise ValueError(f"unknown method {method!r}")
    return v * v if e.kind == "pure" else v


def pattern_probability(e, p, method="auto"):
    return e.prefactor * pattern_weight(e, p, method) / _factorial_product(p)


def orbit_probability(e, o, method="auto"):
    """Probability of observing any permutation of the orbit's pattern.

    For a lossy encoding that is not physical (see :func:`is_physical`) the
    value is a quasi-probability and may be negative; it is returned as is
    so that coefficient identities still hold.
    """
    o = o if isinstance(o, Orbit) else Orbit(o)
    if o.modes != e.modes:
        raise ValueError(f"orbit has {o.modes} modes, encoding has {e.modes}")
    total = math.fsum(pattern_weight(e, p, method) for p in o.elements())
    return e.prefactor * total / o.factorial_product()


def _hermite_sum(size, z, c):
    """``sum_r size!/((size-2r)! r! 2**r) z**(size-2r) c**r``."""
    total = 0.0
    for r in range(size // 2 + 1):
        coeff = math.factorial(size) // (math.factorial(size - 2 * r) * math.factorial(r) * 2**r)
        total += coeff * c**r * z ** (size - 2 * r)
    return total


def complete_loops_parameters(modes, c, d):
    """``(P, z)`` for the all-ones matrix ``J_M`` with uniform displacement ``d``."""
    if not 0 < c * modes < 1:
        raise InvalidEncodingError(f"c must lie in (0, 1/{modes}) for {modes} modes")
    z = d * (1 - c * modes)
    prefactor = math.exp(-modes * d * d * (1 - c * modes)) * math.sqrt(1 - (c * modes) ** 2)
    return prefactor, z


def orbit_probability_complete_loops(modes, c, d, o):
    """Closed form for the complete graph with loops of weight 1.

    Every residual graph of an orbit with ``|n|`` photons is the complete
    graph on ``|n|`` vertices, so the orbit probability is
    ``P |O| (sum_r |n|!/((|n|-2r)! r! 2**r) z**(|n|-2r) c**r)**2 / n!``.
    """
    o = o if isinstance(o, Orbit) else Orbit(o)
    if o.modes != modes:
        raise ValueError(f"orbit has {o.modes} modes, expected {modes}")
    prefactor, z = complete_loops_parameters(modes, c, d)
    h = _hermite_sum(o.total, z, c)
    return prefactor * o.size * h * h / o.factorial_product()


# -- coarse-grained distributions ----------------------------------------------

@dataclass
class CoarseDistribution:
    """Ordered ``(key, probability)`` pairs plus metadata about the encoding."""

    entries: list
    metadata: dict = field(default_factory=dict)

    def keys(self):
        return [k for k, _ in self.entries]

    def values(self):
        return [v for _, v in self.entries]

    def as_dict(self):
        return dict(self.entries)

    def __getitem__(self, key):
        for k, v in self.entries:
            if k == key:
                return v
        raise KeyError(key)

    def total(self):
        return math.fsum(self.values())

    @staticmethod
    def render_key(key):
        if isinstance(key, Orbit):
            return str(key.representative)
        if isinstance(key, MetaOrbitKey):
            return f"|n|={key.total},Delta={key.max_count}"
        return str(key)

    def to_csv(self, drop_zeros=False):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "probability"])
        for k, v in self.entries:
            if drop_zeros and v == 0:
                continue
            w.writerow([self.render_key(k), repr(float(v))])
        return buf.getvalue()

    def to_json(self):
        return json.dumps(
            {
                "metadata": self.metadata,
                "entries": [{"key": self.render_key(k), "probability": float(v)} for k, v in self.entries],
            },
            indent=2,
        )


def _clamp(v):
    if v < 0:
        if v < -1e-12:
            raise InvalidEncodingError(
                f"probability {v:.3g} is negative beyond rounding; the encoding is not physical"
            )
        return 0.0
    return v


def total_photon_distribution(e, max_total):
    """``p(|n|)`` for ``|n| = 0, 2, ..., max_total`` (pure, undisplaced).

    ``p(|n|)`` is the ``w**|n|`` coefficient of
    ``prod_j sqrt(1 - c**2 lam_j**2) / sqrt(1 - c**2 lam_j**2 w**2)``.
    """
    if e.kind != "pure" or e.displaced:
        raise ValueError("the total photon distribution is available for undisplaced pure encodings")
    if max_total < 0:
        raise ValueError("max_total must be nonnegative")
    lams = np.linalg.eigvalsh(e.a.to_numpy()) if e.modes else []
    beta = math.prod(math.sqrt(1 - (e.c * lam) ** 2) for lam in lams)
    series = truncated_inverse_sqrt_product(list(lams), e.c, max_total)
    entries = [(t, _clamp(beta * series[t])) for t in range(0, max_total + 1, 2)]
    meta = dict(e.metadata(), tail_mass=max(0.0, 1.0 - math.fsum(v for _, v in entries)))
    return CoarseDistribution(entries, meta)


def orbit_distribution(e, total, max_count=None, method="auto"):
    """Orbit probabilities for all orbits with ``total`` photons (display order)."""
    max_count = total if max_count is None else max_count
    orbits = enumerate_orbits(e.modes, total, max_count)
    return CoarseDistribution([(o, _clamp(orbit_probability(e, o, method))) for o in orbits], e.metadata())


def complete_loops_distribution(modes, c, d, total, max_count=None):
    max_count = total if max_count is None else max_count
    prefactor, z = complete_loops_parameters(modes, c, d)
    meta = {"kind": "pure", "graph": f"complete graph with loops on {modes} vertices",
            "modes": modes, "c": c, "d": d, "z": z, "prefactor": prefactor,
            "det_sigma_q": 1 / (1 - (c * modes) ** 2)}
    return CoarseDistribution(
        [(o, orbit_probability_complete_loops(modes, c, d, o)) for o in enumerate_orbits(modes, total, max_count)],
        meta,
    )


def meta_orbit_distribution(e, total, n_max=None, method="auto"):
    """``p(|n|, Delta_n)`` for ``n = 1 .. n_max``: orbits grouped by their maximum count."""
    if total < 1:
        raise ValueError("total must be at least 1")
    n_max = total if n_max is None else min(n_max, total)
    entries = []
    for n in range(1, n_max + 1):
        group = [o for o in enumerate_orbits(e.modes, total, n) if o.max_count == n]
        entries.append((MetaOrbitKey(total, n), _clamp(math.fsum(orbit_probability(e, o, method) for o in group))))
    return CoarseDistribution(entries, e.metadata())


# -- distinguishing graphs ------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    equal: bool
    strategy: str
    witness: str

    def __str__(self):
        head = "equal" if self.equal else "different"
        return f"{head} ({self.strategy}): {self.witness}"


def _poly_verdict(strategy, pa, pb):
    if pa == pb:
        return Verdict(True, strategy, str(pa))
    return Verdict(False, strategy, str(pa - pb))


def distinguish(ga, gb, strategy="gbs", n=2, max_r=None, total=None, n_max=None, c=None, rtol=1e-9):
    """Compare an invariant of two graphs of equal order.

    Strategies: ``"matching"``, ``"gbs"``, ``"gbs_collision"`` (uses ``n``
    and optionally ``max_r`` to stop at the first coefficients), ``"dgbs"``
    and ``"meta"`` (meta-orbit probabilities at ``total`` photons, ``c``
    defaulting to half the admissible bound). The witness is the common
    invariant when equal and the difference otherwise.
    """
    if ga.order != gb.order:
        raise ValueError(f"graphs have different orders ({ga.order} and {gb.order})")
    if strategy == "matching":
        return _poly_verdict(strategy, matching_signed(ga), matching_signed(gb))
    if strategy == "gbs":
        return _poly_verdict(strategy, gbs_by_definition(ga).signed, gbs_by_definition(gb).signed)
    if strategy == "gbs_collision":
        ta, tb = tensor_with_loops_complete(ga, n), tensor_with_loops_complete(gb, n)
        if max_r is None:
            return _poly_verdict(strategy, gbs_by_definition(ta).signed, gbs_by_definition(tb).signed)
        size = ta.order
        for r in range(min(max_r, size // 2) + 1):
            ca, cb = gbs_coefficient(ta, r), gbs_coefficient(tb, r)
            if ca != cb:
                sign = (-1) ** r
                return Verdict(False, strategy, f"coefficient of x^{size - 2 * r} differs by {sign * (ca - cb)}")
        return Verdict(True, strategy, f"coefficients of x^{size} .. x^{size - 2 * min(max_r, size // 2)} agree")
    if strategy == "dgbs":
        return _poly_verdict(strategy, dgbs_by_duality(ga).poly, dgbs_by_duality(gb).poly)
    if strategy == "meta":
        if total is None:
            raise ValueError("the meta strategy needs total")
        if c is None:
            c = 0.5 / max(spectral_norm(ga), spectral_norm(gb), 1e-300)
        da = meta_orbit_distribution(build_encoding("pure", ga, c=c), total, n_max)
        db = meta_orbit_distribution(build_encoding("pure", gb, c=c), total, n_max)
        for (k, va), (_, vb) in zip(da.entries, db.entries):
            if not math.isclose(va, vb, rel_tol=rtol, abs_tol=1e-300):
                return Verdict(False, strategy, f"{CoarseDistribution.render_key(k)}: {va!r} vs {vb!r}")
        return Verdict(True, strategy, f"all Delta classes at |n|={total} agree to rtol {rtol}")
    raise ValueError(f"unknown strategy {strategy!r}")


__all__ = [
    "GaussianEncoding",
    "build_encoding",
    "is_physical",
    "uniform_displacement",
    "pattern_probability",
    "orbit_probability",
    "orbit_probability_complete_loops",
    "complete_loops_parameters",
    "CoarseDistribution",
    "total_photon_distribution",
    "orbit_distribution",
    "complete_loops_distribution",
    "meta_orbit_distribution",
    "Verdict",
    "distinguish",
]
