"""Exact-arithmetic workbench for free-fermionic six-vertex models, charged
(2n+4)-vertex models, their Fock-space Hamiltonians, and the symmetric
function families they compute."""

from .exactpoly import (
    ExactScalar,
    InexactDivision,
    LaurentPoly,
    Registry,
    RegistryMismatch,
    divexact,
    exp_truncated,
    parse,
    poly_det,
    render,
)
from .partitions import (
    Partition,
    StrictPartition,
    complement_reverse,
    conjugate,
    enumerate_strict,
    interleaves,
    rho,
    rho_plus,
    rho_shift,
    z_lambda,
)
from .fockspace import (
    FockVector,
    HamiltonianParams,
    apply_Jk,
    apply_psi,
    apply_psi_star,
    apply_Uk_Dk,
    boundary_operator,
    tau_function,
    vacuum_pairing,
    wick_tau,
)
from .symmfunc import (
    SuperAlphabet,
    SymParams,
    gen_e,
    gen_h,
    llt_polynomial,
    omega,
    sigma_skew,
    supersym_schur,
    supersym_schur_bialternant,
)
from .qfock import (
    GFunction,
    WedgeWord,
    normal_order,
    q_apply_Jk,
    q_tau,
    rho_star_conjugation_check,
    validate_g,
)
from .latticemodel import (
    LatticeState,
    ModelSpec,
    RowWeights,
    VertexWeights,
    column_restricted_transfer,
    enumerate_states,
    extended_boundary_Z,
    free_fermion_check,
    model_spec,
    partition_function,
    standard_weights,
    transform_model,
)
from .ybe import (
    RWeightTable,
    check_appendix_suite,
    check_ybe,
    r_weights_free_fermion,
    r_weights_nonff,
)
from .harness import CheckConfig, CheckReport
from .cli import cli_run

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
