"""Entanglement and faithfulness metrics for two-qubit states.

The package quantifies what local filtering and decoherence do to the
entanglement of a Bell state: the concurrence, the fully entangled fraction
(FEF), fidelity-witness detectability ("faithfulness"), closed-form filter
scans, and a simulated 36-setting coincidence-tomography pipeline with
maximum-likelihood reconstruction.
"""

from .analytic import (
    conc_single,
    conc_two,
    critical_nu_single,
    crossing_nu_b,
    fef_single_x,
    fef_single_z,
    fef_two,
    fef_two_max,
    theta_from_correlation,
    unfaithful_boundary,
    unfaithful_region,
)
from .channels import LocalFilter, apply_filter_a, apply_filter_b, dephase, local_rotate
from .linalg import (
    PAULIS,
    SIGMA0,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    EigenSpectrum,
    Tolerances,
    general_eigenvalues,
    herm_eigen,
    kron,
    svd3,
    tolerances,
)
from .metrics import (
    FidelityWitness,
    MetricsReport,
    build_witness,
    concurrence,
    fef_bruteforce,
    fef_closed_form,
    fef_closed_form_from_state,
    fef_maximizer_witness,
    fef_spectral,
    is_faithful,
    max_ent_state,
    metrics_report,
    ppt_entangled,
    witness_value,
    x2,
)
from .states import (
    PauliRep,
    assert_density_matrix,
    bell_diag_eigenvalues,
    bell_diagonal,
    bell_state,
    bell_vector,
    from_pauli,
    random_state,
    rank2_bd,
    to_pauli,
    trace_distance,
)
from .tomography import (
    CountRecord,
    ErrorBarReport,
    MleResult,
    TomoConfig,
    linear_inversion,
    metrics_with_errorbars,
    mle_reconstruct,
    simulate_counts,
)

__version__ = "0.1.0"
