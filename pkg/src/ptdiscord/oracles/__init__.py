"""Independent brute-force verifiers and the state factory."""

from ..qmat import Measurement
from .measurement import (OracleOptions, OracleResult, deficit_oracle, gqd_oracle,
                          pinch_distance)
from .separable import SeparableOptions, separable_upper_search
from .simplex_qp import simplex_qp_oracle
from .states import (Family, StateSpec, bell_diagonal, isotropic, make_state,
                     max_entangled, product, random_cq, random_ginibre,
                     random_separable, werner, x_state)

__all__ = [
    "Family", "Measurement", "OracleOptions", "OracleResult", "SeparableOptions",
    "StateSpec", "bell_diagonal", "deficit_oracle", "gqd_oracle", "isotropic",
    "make_state", "max_entangled", "pinch_distance", "product", "random_cq",
    "random_ginibre", "random_separable", "separable_upper_search",
    "simplex_qp_oracle", "werner", "x_state",
]
