"""Two-mode Fourier cat code: construction, gates and loss diagnostics."""

from .groups import (
    FiniteMatrixGroup,
    GroupFourierTransform,
    Irrep,
    build_fourier_transform,
    cyclic_group,
    generate_group,
    irrep_table,
    normalizer_membership,
    pauli_group,
    quaternion_group,
    regular_representation,
    verify_block_diagonalization,
)
from .fock import (
    FockConfig,
    FockOperator,
    FockState,
    annihilate,
    cat_state,
    coherent_product,
    coherent_state,
    hermitian_inv_sqrt,
    infidelity,
    number_diagonal_operator,
    passive_gaussian_unitary,
)
from .encoding import (
    CatQuditCode,
    CodeBasis,
    Constellation,
    cat_qudit,
    code_basis,
    covariant_encode,
    deformed_encode,
    encode,
    gram_fourier_spectrum,
    gram_matrix,
    make_constellation,
    min_euclidean_distance,
    orthonormal_group_basis,
)
from .gates import (
    LogicalAction,
    composite_hadamard_check,
    cz_gate_check,
    cz_target,
    logical_action,
    mod4_measurement,
    mod4_verification,
    phase_aligned_distance,
    s_gate_check,
    snap_gate_check,
    y_readout,
    zeno_projected_hamiltonian,
    zy_eigenstates,
)
from .channels import (
    LossChannel,
    QecMatrix,
    kl_first_order_check,
    lambda_matrix,
    lindblad_kernel_check,
    loss_gram_matrices,
    petz_entanglement_fidelity,
    qec_matrix_analytic,
    qec_matrix_fock,
    sweep_alpha,
    sweep_gamma,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
