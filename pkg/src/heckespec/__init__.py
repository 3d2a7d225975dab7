"""Corner-type Hecke algebra representations and open-chain spectral checks.

Builds the irreducible representations attached to hook-shaped Young
diagrams over exact rational or floating-point scalars, assembles the
traceless open-chain Hamiltonian, predicts its q-independent cosine
spectrum, and verifies the defining relations, trace identities,
triangular intertwiner, commuting family, wedge-power construction, and
isospectrality, exactly where possible and numerically elsewhere.
"""

from .corner import (
    Basis,
    BasisIndex,
    CornerShape,
    apply_generator,
    dimension_cap,
    enumerate_basis,
    generator_matrices,
    generator_matrix,
    verify_cyclic_conjugation,
    verify_defining_relations,
    verify_trace_identity,
)
from .errors import CapacityExceeded, DegenerateWedge, NonGenericParameter, SingularConjugator
from .hamiltonian import (
    ISOSPECTRAL_Q_GRID,
    EigenSystem,
    SpectrumPrediction,
    build_hamiltonian,
    commuting_family_check,
    hamiltonian_shift,
    intertwiner_matrix,
    numeric_spectrum,
    path_adjacency,
    predicted_spectrum,
    two_row_eigensystem,
    two_row_hamiltonian,
    verify_intertwiner,
    verify_isospectral,
    verify_large_q_limit,
    verify_spectrum,
    wedge_eigenvector,
)
from .reports import CheckResult, VerificationReport
from .scalars import (
    APPROXIMATE,
    EPS_EQUALITY,
    EPS_GENERIC,
    EXACT,
    GenericityCertificate,
    QParam,
    Scalar,
    ensure_generic,
    q_int,
)
from .wedge import (
    TensorSpace,
    WedgeBasisMap,
    antisymmetrizer,
    corner_product_condition,
    embed_generator,
    hamiltonian_via_wedge,
    verify_general_idempotent_condition,
    verify_hamiltonian_transport,
    verify_sum_product_identity,
    verify_wedge_equivalence,
    verify_wedge_relations,
    wedge_basis_map,
    wedge_generator,
)

__version__ = "0.1.0"
