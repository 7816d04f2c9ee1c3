"""High-girth quasi-cyclic and spatially-coupled LDPC code construction.

The package builds codes by two-level circulant lifting of a protograph,
optimizing the lifting exponents with greedy cost tables so that the
expanded Tanner graph is free of short cycles, and extends the same
machinery to spatially-coupled chains through their finite cycle
window.  A brute-force oracle over the expanded graphs and a
belief-propagation Monte-Carlo simulator round out the toolbox.
"""

from .algebra import (
    BinaryPcm,
    BivariatePolyMatrix,
    Monomial,
    Protomatrix,
    UnivariatePolyMatrix,
    full_expand,
    protograph_of,
    x_expand,
    y_expand,
)
from .cycles import (
    ClosedPath,
    count_cycles,
    enumerate_closed_paths,
    is_cycle,
    poly_girth,
)
from .errors import (
    ConstructionFailure,
    FormatError,
    GirthforgeError,
    IncompleteMatrixError,
    InvalidSpreadError,
    SizeGuardError,
)
from .optimizer import (
    ConstructionTemplate,
    CostTables,
    ExponentVariable,
    PathInventory,
    SweepRow,
    build_cost_tables,
    build_path_inventory,
    construct_and_spread,
    crm_construct,
    descend,
    greedy_step,
    hqc_construct,
    length_weights,
    sweep_min_lifting,
    weighted_cycle_cost,
)
from .oracle import (
    TannerGraph,
    VerificationReport,
    exhaustive_cycle_count,
    graph_girth,
    shortest_cycle,
    verify_construction,
)
from .spreading import (
    ScCode,
    ScStructure,
    SpreadingSpec,
    assemble_sc,
    crm,
    crm_block_shape,
    despread,
    spread,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryPcm",
    "BivariatePolyMatrix",
    "ClosedPath",
    "ConstructionFailure",
    "ConstructionTemplate",
    "CostTables",
    "ExponentVariable",
    "FormatError",
    "GirthforgeError",
    "IncompleteMatrixError",
    "InvalidSpreadError",
    "Monomial",
    "PathInventory",
    "Protomatrix",
    "ScCode",
    "ScStructure",
    "SizeGuardError",
    "SpreadingSpec",
    "SweepRow",
    "TannerGraph",
    "UnivariatePolyMatrix",
    "VerificationReport",
    "assemble_sc",
    "build_cost_tables",
    "build_path_inventory",
    "construct_and_spread",
    "count_cycles",
    "crm",
    "crm_block_shape",
    "crm_construct",
    "descend",
    "despread",
    "enumerate_closed_paths",
    "exhaustive_cycle_count",
    "full_expand",
    "graph_girth",
    "greedy_step",
    "hqc_construct",
    "is_cycle",
    "length_weights",
    "poly_girth",
    "protograph_of",
    "shortest_cycle",
    "spread",
    "sweep_min_lifting",
    "verify_construction",
    "weighted_cycle_cost",
    "x_expand",
    "y_expand",
]
