"""Exact arithmetic for general n-adic grids on the real line.

Far numbers, grid representations, the adjacency decision procedure and
two-grid interval covers, all over :class:`fractions.Fraction`.
"""
from .adjacency import (
    AdjacencyReport,
    Failing,
    LimitProfile,
    ProfileMatch,
    endpoint_separation,
    is_adjacent,
    is_adjacent_standard_translate,
    limit_profile,
    representation_invariance,
)
from .exact import (
    BaseNExpansion,
    DigitSequence,
    DomainError,
    digit_at,
    expand,
    frac_floor,
    location_value,
    nadic_add_integer,
)
from .far import (
    INFINITE,
    FarnessCertificate,
    certificate,
    compute_C,
    compute_d,
    is_n_far,
    tie_length,
)
from .grids import (
    GridRep,
    Interval,
    canonicalize,
    cell_containing,
    reps_equal,
    standard_grid,
    translated_standard_grid,
    verify_grid_axioms,
)
from .mei import (
    CoverResult,
    NoCoverError,
    Query,
    adversarial_witness,
    cover,
    cover_constant_estimate,
    oracle_cover,
)

__version__ = "0.1.0"
