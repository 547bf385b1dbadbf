from truncation.nodes import count_nodes, full_line_nodes
from truncation.solutions import (
    StateLabel,
    TruncationPoint,
    TruncationSolutionCoulomb,
    TruncationSolutionSextic,
    Wavefunction,
    WeightDescriptor,
)
from truncation.solver import (
    assemble_wavefunction,
    coulomb_energy,
    coulomb_points_for_window,
    coulomb_solution,
    label_state,
    residual_ratio,
    sextic_b_for_a,
    sextic_constraint,
    sextic_points_for_window,
    sextic_spectrum,
    state_nodes,
)
