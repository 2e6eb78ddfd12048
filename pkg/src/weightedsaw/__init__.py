"""Exact enumeration and verified bounds for weighted self-avoiding walks on Cayley graphs."""

from .enumeration import (
    BACKEND,
    AggregateTable,
    EnumConfig,
    certify_truncation_exactness,
    enumerate_aggregate,
    iter_walks,
    neighbor_table,
    oracle_enumerate,
)
from .errors import WeightedSAWError
from .groups import FreeAbelian, FreeGroup, Heisenberg3, Homomorphism, make_group
from .height import (
    HeightStructure,
    StructuralConstants,
    WalkClass,
    classify_walk,
    make_height,
    span,
    structural_constants,
)
from .walks import Walk
from .weights import (
    ConstantLength,
    ExplicitLength,
    ExplicitWeight,
    InverseWeightLength,
    NormLength,
    PowerLawWeight,
    nearest_neighbour_weight,
    total_weight,
    truncate,
    validate_weight,
)

__version__ = "0.1.0"
