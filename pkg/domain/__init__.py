from domain.grid import deriv1, deriv2, integrate, make_grid
from domain.norms import ul_norm
from domain.weights import chi_bound_check, weight_chi, weighted_integral

__all__ = [
    "chi_bound_check",
    "deriv1",
    "deriv2",
    "integrate",
    "make_grid",
    "ul_norm",
    "weight_chi",
    "weighted_integral",
]
