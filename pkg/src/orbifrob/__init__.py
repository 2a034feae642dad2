"""Orbifold Frobenius data for quasi-homogeneous isolated singularities.

Exact constructions: Milnor rings with rational weights, diagonal symmetry
groups with supergradings and discrete torsion, twisted sectors with their
bigrading, the mirror dualization transform, spectrum matching against the
named algebras, table drivers and foldings.  All arithmetic is exact
(rationals, roots of unity, cyclotomic integers).
"""

from .catalog import (
    CatalogEntry,
    FoldResult,
    NotClosed,
    NotProjectiveSymmetry,
    SocleNotPreserved,
    Spectrum,
    default_catalog,
    fold,
    load_catalog,
    match,
    reproduce_p8,
    reproduce_table1,
    reproduce_table2,
    reproduce_table3,
    spectrum_of,
    validate_catalog,
)
from .dual import (
    DegenerateStructure,
    DualModule,
    MetricNotPullable,
    NoEulerizationGiven,
    NotCyclic,
    NotQuasiEuler,
    check_degenerate_axioms,
    degenerate_structure,
    double_dual_matches,
    dualize,
    eulerize,
    involution_check,
    maximality_report,
    pairing_invariance,
)
from .exact import CyclotomicSum, Scaled, UnitPhase, cyclo_trace_reduce, phase
from .milnor import (
    MilnorRing,
    NoSolution,
    NonIsolated,
    Underdetermined,
    solve_weights,
)
from .orbifold import (
    AxiomFailure,
    AxiomReport,
    GFrobeniusStructure,
    InvariantClass,
    OrbifoldModule,
    ReconstructionUnsupported,
    Sector,
    build_module,
    check_axioms,
    metric_normalizations,
    mutated_copy,
    reconstruct_structure,
)
from .poly import ParseError, Polynomial, parse_polynomial
from .symmetry import (
    DiscreteTorsion,
    GroupOrderExceeded,
    SymmetryGroup,
    enumerate_sigma,
    generate_group,
    grading_element,
    is_symmetry,
)

__version__ = "0.1.0"
