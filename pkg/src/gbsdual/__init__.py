"""Exact GBS, displaced GBS and matching polynomials of graphs, their
dualities, and the photon-counting statistics they describe."""

__version__ = "0.1.0"

from .algebra import BiPoly, UniPoly, hafnian, parse_bipoly, parse_unipoly, solve_linear_exact
from .combinatorics import (
    MetaOrbitKey,
    Orbit,
    combinatorial_weight,
    decollision,
    enumerate_orbits,
    max_orbit_knapsack,
    orbit_size,
    partition_count,
    restricted_partition_count,
    verify_count_identity,
)
from .errors import GbsDualError
from .formats import load_fixture, load_graph, parse_graph6, to_graph6
from .gbs import (
    DgbsPolynomial,
    GbsPolynomial,
    closed_form_gbs,
    dgbs_by_definition,
    dgbs_by_duality,
    gbs_by_definition,
    gbs_by_prism,
    gbs_coefficient,
    mdgbs_by_definition,
    mdgbs_by_duality,
    recover_gbs_from_evaluations,
)
from .graphs import (
    Graph,
    PolyGraph,
    disjoint_union,
    from_edge_list,
    induced_subgraph,
    loss_extension,
    prism,
    reduced_kronecker,
    tensor_with_loops_complete,
)
from .kernels import BACKEND
from .matching import (
    MatchingPolynomial,
    match_count,
    matching_signed,
    matching_signless,
    matching_signless_oracle,
)
from .stats import (
    CoarseDistribution,
    GaussianEncoding,
    build_encoding,
    distinguish,
    meta_orbit_distribution,
    orbit_probability,
    orbit_probability_complete_loops,
    total_photon_distribution,
    uniform_displacement,
)

__all__ = [
    "__version__",
    "BiPoly",
    "UniPoly",
    "hafnian",
    "parse_bipoly",
    "parse_unipoly",
    "solve_linear_exact",
    "MetaOrbitKey",
    "Orbit",
    "combinatorial_weight",
    "decollision",
    "enumerate_orbits",
    "max_orbit_knapsack",
    "orbit_size",
    "partition_count",
    "restricted_partition_count",
    "verify_count_identity",
    "GbsDualError",
    "load_fixture",
    "load_graph",
    "parse_graph6",
    "to_graph6",
    "DgbsPolynomial",
    "GbsPolynomial",
    "closed_form_gbs",
    "dgbs_by_definition",
    "dgbs_by_duality",
    "gbs_by_definition",
    "gbs_by_prism",
    "gbs_coefficient",
    "mdgbs_by_definition",
    "mdgbs_by_duality",
    "recover_gbs_from_evaluations",
    "Graph",
    "PolyGraph",
    "disjoint_union",
    "from_edge_list",
    "induced_subgraph",
    "loss_extension",
    "prism",
    "reduced_kronecker",
    "tensor_with_loops_complete",
    "BACKEND",
    "MatchingPolynomial",
    "match_count",
    "matching_signed",
    "matching_signless",
    "matching_signless_oracle",
    "CoarseDistribution",
    "GaussianEncoding",
    "build_encoding",
    "distinguish",
    "meta_orbit_distribution",
    "orbit_probability",
    "orbit_probability_complete_loops",
    "total_photon_distribution",
    "uniform_displacement",
]
