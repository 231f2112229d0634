"""Combinatorial invariants of generalized Hasse invariants for zip data.

Exact (integer/rational) computations for reductive groups over finite
fields: root data with Frobenius structure, Weyl group enumeration with
minimal coset representatives, Smith normal form, the character-lattice
twist endomorphism and its invariant factors, orbit censuses, equivariant
Picard ranks, and positivity certificates.  All values are immutable and
computations are pure, so everything can be shared freely across threads.
"""

from .exact_linear import (
    IntMatrix,
    NonSquareError,
    RatMatrix,
    SingularMatrixError,
    SmithDecomposition,
    determinant,
    kernel_basis,
    rational_inverse,
    smith_normal_form,
    solve_rational,
)
from .root_datum import (
    CONTAINS_B,
    CONTAINS_BMINUS,
    Component,
    FrobeniusStructure,
    InvalidQError,
    InvalidRankError,
    ParabolicType,
    PositiveRoots,
    Root,
    RootDatum,
    SingularCartanError,
    UnsupportedSeriesError,
    build_group,
    char_lattice_of_parabolic,
    fundamental_weights,
    gl,
    gsp,
    opp_type,
    picard_torsion,
    positive_roots,
    product_group,
    simple_group,
    unitary,
    weil_restriction,
)
from .weyl import (
    CosetReps,
    WeylElement,
    WeylGroup,
    WeylGroupTooLargeError,
    classical_order,
    enumerate_weyl,
    longest_element,
    min_coset_reps,
)
from .zip_core import (
    CENTRAL,
    MINUSCULE,
    NEITHER,
    SMALL_NOT_MINUSCULE,
    HasseReport,
    NonNormalizedCocharacterError,
    OrbitCensus,
    OrbitEntry,
    PicObstructionError,
    ZipDatum,
    build_zip_datum,
    classify_cocharacter,
    hasse_number,
    orbit_census,
    pic_rank,
    s0_characters,
    zeta_matrix,
)
from .positivity import (
    AMPLE,
    ANTIAMPLE,
    CERTIFIED_NEGATIVE,
    MIXED,
    NOT_APPLICABLE,
    NOT_IN_LATTICE,
    NotRationalCaseError,
    NotWeilRestrictionError,
    PositivityReport,
    PreconditionViolatedError,
    antiample_check,
    borel_zeta_matrix,
    fundamental_zeta_inverse,
    fundamental_zeta_matrix,
    hasse_divisor_coeffs,
    is_ample,
    weil_pullback_check,
    zeta_inverse,
)

__version__ = "0.1.0"
