from moments.quadrature import coulomb_moment_seeds, quadrature_oracle, sextic_moment_seeds
from moments.tables import MomentTable, clear_cache, coulomb_moments, sextic_moments
from moments.precise import (
    clear_precise_cache,
    precise_context,
    precise_coulomb_moments,
    precise_sextic_moments,
    working_dps,
)
