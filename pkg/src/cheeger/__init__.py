"""Spectral gaps and higher-dimensional Cheeger constants of finite
simplicial complexes, with machine-checkable certificates for the
inequalities connecting them."""

from .complexes import (
    SimplicialComplex,
    from_facets,
    incidence_number,
    load_complex,
    save_complex,
)
from .cochains import (
    RealCochain,
    Z2Cochain,
    block_order,
    boundary,
    coboundary,
    coboundary_matrix,
    coset_weight,
    partition_cochain,
    partition_cochain_coboundary,
    real_cochain,
    z2_cochain,
)
from .expansion import (
    ExpansionValue,
    cheeger_constant,
    cochain_expansion,
    coboundary_expansion,
    congestion,
    graph_expansion,
    min_congestion_over_minimizers,
    rainbow_faces,
    restricted_coboundary_expansion,
    restricted_expansion,
)
from .generators import (
    complete_complex,
    connected_random_graph,
    graph_complex,
    moebius_cylinder,
    projective_plane,
    random_complex,
    y_complex,
)
from .partitions import Partition, iter_partitions, stirling2
from .spectral import (
    HodgeSplit,
    SpectralResult,
    eigendecompose,
    full_laplacian,
    hodge_split,
    lower_laplacian,
    rayleigh_quotient_bound,
    spectral_gap,
    upper_laplacian,
)
from .util import INF, InputError, ResourceError

__version__ = "0.1.0"
