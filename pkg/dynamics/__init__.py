from dynamics.effective import effective_diffusivity, simulate_effective_diffusion
from dynamics.fields import extract_rho, extract_w, instantaneous_rhs_fields
from dynamics.fisher import fisher_kpp_state
from dynamics.imex import rd_rhs, simulate_rd, simulate_rdnm, stationarity_residual, step_rd
from dynamics.kinetics import (
    comparison_check,
    equilibrium_from_data,
    kinetic_lower_bound,
    ode_envelope_check,
    simulate_kinetic_ode,
)
from dynamics.linearized import simulate_linearized

__all__ = [
    "comparison_check",
    "effective_diffusivity",
    "equilibrium_from_data",
    "extract_rho",
    "extract_w",
    "fisher_kpp_state",
    "instantaneous_rhs_fields",
    "kinetic_lower_bound",
    "ode_envelope_check",
    "rd_rhs",
    "simulate_effective_diffusion",
    "simulate_kinetic_ode",
    "simulate_linearized",
    "simulate_rd",
    "simulate_rdnm",
    "stationarity_residual",
    "step_rd",
]
