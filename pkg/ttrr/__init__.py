from ttrr.polynomial import polynomial_roots, truncation_polynomial
from ttrr.recurrence import (
    CoefficientSequence,
    NegatedRecurrence,
    RecurrenceModel,
    alternating_transform,
    generate_coefficients,
    negated_model,
)
from ttrr.tridiagonal import (
    SymTridiag,
    TridiagonalSystem,
    eig_sym_tridiag,
    eigvecs_sym_tridiag,
    symmetrize,
    to_tridiagonal,
)
