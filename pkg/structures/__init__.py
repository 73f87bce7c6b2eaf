from structures.balance import (
    balance_residual,
    instantaneous_balance_residual,
    refinement_order,
    rho_residual,
    slaving_check,
)
from structures.calibration import default_structure_params, gamma_calibrate, gamma_max, theta_calibrate
from structures.checks import dpos_check, flux_bound_check, flux_ratio_sup, ordering_check
from structures.decay import decay_fit, equilibrium_distance, ul_decay_series
from structures.localized import gronwall_checks, gronwall_constants, localized_energies
from structures.triples import (
    check_alphabet,
    eds_boltzmann,
    eds_primary,
    eds_rdnm,
    eds_secondary,
    eds_theta,
)

__all__ = [
    "balance_residual",
    "check_alphabet",
    "decay_fit",
    "default_structure_params",
    "dpos_check",
    "eds_boltzmann",
    "eds_primary",
    "eds_rdnm",
    "eds_secondary",
    "eds_theta",
    "equilibrium_distance",
    "flux_bound_check",
    "flux_ratio_sup",
    "gamma_calibrate",
    "gamma_max",
    "gronwall_checks",
    "gronwall_constants",
    "instantaneous_balance_residual",
    "localized_energies",
    "ordering_check",
    "refinement_order",
    "rho_residual",
    "slaving_check",
    "theta_calibrate",
    "ul_decay_series",
]
