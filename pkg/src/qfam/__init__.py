"""Numerical verification of quantum families of maps on finite quantum
spaces: finite-dimensional C*-algebras, their *-homomorphisms, quantum
semigroups, magic unitaries, and the defect checks tying them together.
"""

from .algebra import (
    DEFAULT_TOL,
    FAITHFULNESS_FLOOR,
    AlgebraElement,
    FdCStarAlgebra,
    LinearFunctional,
    TensorLayout,
    classify_faithful,
    classify_state,
    classify_trace,
    make_algebra,
    max_image_defect,
    operator_norm,
    orthonormal_basis,
    sigma_map,
    tensor_layout,
    tensor_product,
    trace_state,
)
from .documents import (
    parse_spec_document,
    parse_spec_file,
    save_document,
    serialize,
)
from .errors import (
    DegenerateStateError,
    DocumentParseError,
    IncompatibleAlgebraError,
    InvalidCharacterError,
    InvalidDimensionError,
    InvalidMatrixError,
    InvalidSemigroupError,
    MissingComponentError,
    NotAHomomorphismError,
    NotMagicError,
    PreconditionError,
    QfamError,
    ResourceLimitError,
)
from .families import (
    FixedPointSpace,
    InvarianceReport,
    QuantumFamily,
    action_coefficients,
    classical_family,
    commutation_defect,
    compose_families,
    evaluate_at_character,
    factorization_defect,
    fixed_point_space,
    invariance_defects,
    make_family,
    singleton_family,
    trivial_family,
    triviality_defect,
)
from .morphisms import (
    Character,
    StarMorphism,
    characters_of,
    compose_morphisms,
    enumerate_set_map_tables,
    enumerate_set_maps,
    flip,
    functions_algebra,
    identity_morphism,
    make_and_verify_morphism,
    require_star_hom,
    scalar_algebra,
    set_map_morphism,
    tensor_morphisms,
)
from .representations import (
    ActionMatrixReport,
    DensityReport,
    MagicReport,
    MagicUnitary,
    ModularReport,
    Representation,
    action_matrix,
    magic_unitary_check,
    matrix_isometry_defect,
    modular_compatibility_defect,
    modular_report,
    nonclassical_magic_4x4,
    permutation_magic_unitary,
    podles_rank,
    projection_family_check,
    representation_defect,
    tensor_representations,
    wang_family,
)
from .semigroups import (
    CancellationReport,
    QuantumSemigroup,
    action_defect,
    cancellation_rank,
    classical_semigroup_algebra,
    coassociativity_defect,
    coideal_defect,
    convolve,
    counit_defect,
    group_table,
    left_zero_table,
    map_monoid_table,
    qs_morphism_defect,
    table_identity,
    table_is_associative,
    table_is_left_cancellative,
    table_is_right_cancellative,
)
from .suites import (
    SUITES,
    CheckOutcome,
    all_maps_family,
    conjugation_family,
    diagonal_phase_family,
    haar_unitary,
    invariant_corpus,
    random_magic_unitary,
    random_partition,
    run_all,
    run_suite,
    sign_conjugation_family,
    uniform_state,
)

__version__ = "0.1.0"
