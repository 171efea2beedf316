# src/medium/__init__.py
from .coherences import (
    CoherenceCoefficients,
    DenominatorTerms,
    ShiftedDetunings,
    build_system_matrix,
    closed_form_betas,
    denominator_terms,
    determinant_polynomial,
    shifted_detunings,
    singular_velocities,
    solve_steady_state,
    steady_state_vectors,
    unit_drives,
)
from .doppler import (
    adaptive_average,
    doppler_average,
    hermite_rule,
    hot_response,
    hot_spectrum,
    nodes_for_clearance,
    pole_clearance,
)
from .response import (
    COMPONENTS,
    OpticalResponse,
    gain_regions,
    response_at,
    response_from_betas,
    spectrum,
)

