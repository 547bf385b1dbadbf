from variational.basis import (
    CoulombBasis,
    NonorthogonalBasis,
    Observable,
    OscillatorBasis,
    VariationalSpec,
    basis_for,
    gram_matrix,
    hamiltonian_matrix,
)
from variational.cholesky import CholeskyReduction, cholesky_reduction
from variational.observables import HellmannFeynmanCheck, coupling_for, expectation, hellmann_feynman_check
from variational.reduction import ReducedModel, clear_reduction_cache, mixed_overlap, reduced_model
from variational.solver import (
    SolveStatus,
    VariationalResult,
    level_energy,
    match_levels,
    merge_sectors,
    solve_fixed,
    solve_generalized,
    spectrum,
)
