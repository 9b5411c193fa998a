"""Exact constructions and obstructions for zero-sum halves of antipodal
spherical designs: root systems, Leech minimal vectors, the tight 7-design
on S^22, harmonic-index design tests and intersection-number parity."""

from .designs import (
    DEFAULT_KMAX,
    DEFAULT_SEED,
    DesignReport,
    IndexSearchReport,
    SignSearchResult,
    gegenbauer_gram,
    gegenbauer_moment,
    gram_orthogonality,
    full_column_rank,
    is_harmonic_T_design,
    local_search_half,
    search_index,
    sign_kernel_search,
    sum_vector,
    witness_to_half,
)
from .exact import ExactMatrix, ExactVector, QuadraticScalar, Rational, inner_product
from .golay_leech import (
    GolayCode,
    construct_leech_half,
    construct_tight7,
    generate_golay,
    generate_leech_min,
    golay_half,
)
from .harmonic import (
    CharacteristicMatrix,
    HarmonicBasis,
    Polynomial,
    characteristic_matrix,
    gegenbauer,
    harm_dim,
    harmonic_basis,
    laplacian,
)
from .linalg import kernel_basis, rank, rref
from .points import Chart, HalfSelection, PointSet
from .roots import (
    ObstructionCertificate,
    RootFamily,
    brute_force_half_search,
    construct_half,
    generate_roots,
    verify_certificate,
)
from .schemes import (
    ClassSpec,
    IntersectionTable,
    ParityWitness,
    check_halving_identity,
    half_parity_obstruction,
    inner_distribution,
    intersection_numbers,
)

__version__ = "0.1.0"
