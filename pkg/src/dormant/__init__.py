"""Exact arithmetic of dormant modular curves of type (0,4)."""

__version__ = "0.1.0"

from .arith import (  # noqa: E402
    EdgeLabel,
    PrimeLevel,
    RadiusClass,
    bracket,
    delta,
    delta_inv,
    rho_star,
    unit_fold,
)
from .csets import (  # noqa: E402
    CSetReport,
    RadiiTuple4,
    count_B04_dp,
    cset_11,
    csets_04,
    degree_04,
    ds_membership,
    dsn_membership,
    enumerate_B04,
    enumerate_B11,
)
from .errors import *  # noqa: E402,F401,F403
from .invariants import (  # noqa: E402
    critical_points_bound,
    example_closed_forms,
    genus_04,
    genus_04_simplified,
    identity_889_check,
)
from .tower import (  # noqa: E402
    PadicRadiusSpec,
    alpha_goodness_certificate,
    p_lower_bound,
    tower_report,
    truncate_radii,
)
