"""Exact chief-series, cohomology and block computations for Lie algebras.

Everything is computed over GF(p) or Q with exact arithmetic: chief series
and split abelian factor multiplicities, Chevalley-Eilenberg cohomology in
degrees 0..2, restricted cohomology and the block structure of the
restricted enveloping algebra, and truncated induced modules with their
Shapiro-lemma dimension identity.
"""

__version__ = "0.1.0"

from .linalg import GF, QQ, Field, Subspace, kernel_basis, rank, rref, solve
from .lie import (
    IdealHandle,
    JacobiViolation,
    AntisymmetryViolation,
    LieAlgebra,
    NotAnIdeal,
    build_lie_algebra,
    derivation_algebra,
    derived_and_central_series,
    direct_sum,
    is_solvable,
    lie_from_matrices,
    p_power,
    quotient_algebra,
    semidirect_product,
    subalgebra_on,
)
from .reps import (
    Representation,
    adjoint_rep,
    annihilator,
    composition_series,
    dual_rep,
    end_dim,
    hom_rep,
    intertwiner_space,
    invariants,
    is_irreducible,
    is_isomorphic,
    restrict_to,
    socle_minimal_ideals,
    spin,
    trivial_rep,
)
from .cohomology import (
    CohomologyResult,
    cohomology,
    differential,
    five_term_exactness,
    h1_of_ideal_with_action,
)
from .chief import (
    ChiefSeries,
    chief_series,
    factor_extension_splits,
    split_multiplicity,
    verify_multiplicity_formula,
    verify_solvable_identity,
)
from .restricted import (
    BlockPartition,
    NotRestricted,
    PMapViolation,
    UAlg,
    blocks,
    ext1_dim,
    find_nonvanishing_module,
    p_image_mod_derived,
    restricted_h1,
    restricted_irreducibles,
    second_loewy_multiplicity,
    six_term_consistency,
    u_algebra,
    verify_pmap,
)
from .induction import (
    InducedModule,
    direct_coinduced,
    filtration_factor_check,
    shapiro_check,
    truncated_coinduced,
    truncated_induced,
)
from .fileio import LoadedSpec, SpecFileError, load_spec, spec_to_dict
from .catalog import catalog, catalog_names, get as catalog_get
from .suites import SUITE_IDS, Report, emit_report, run_suite
