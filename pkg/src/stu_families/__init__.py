"""Local-unitary classification of four-charge STU black holes."""

from .classifier import (
    FamilyId,
    GroupSignature,
    PartitionError,
    case_label,
    classify_family,
    group_signature,
    sign_equivalent,
)
from .invariants import InvariantTriple, acin_invariants, cayley_hyperdet, delta, entropy, three_tangle
from .schmidt import (
    SchmidtForm,
    SdIntermediates,
    build_sd_unitaries,
    charges_to_state,
    eta_coefficients,
    phase_canonicalize,
    schmidt_decompose,
)
from .state import (
    ChargeVector,
    FullChargeVector,
    LocalUnitary,
    NotUnitaryError,
    PureState3Q,
    apply_local_unitaries,
    normalize,
    state_norm,
)

__version__ = "0.1.0"
