"""Error hierarchy shared by every rdlab package."""

from typing import Any


class LabError(Exception):
    """Base class for all errors raised by the lab."""


class ConfigurationError(LabError):
    """Invalid grid, parameters, profile options or scenario file."""


class IntegrationError(LabError):
    """Non-finite values produced by a time integrator."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} at t={t:.6g}")
        self.t = t


class PositivityViolation(LabError):
    """A concentration dropped below -tol_pos during an admissible run."""

    def __init__(self, species: str, minimum: float, t: float):
        super().__init__(f"{species} reached {minimum:.3e} at t={t:.6g}")
        self.species = species
        self.minimum = minimum
        self.t = t


class StructureParameterError(LabError):
    """Structure parameters (alpha, beta, theta, gamma) fail an admissibility condition."""

    def __init__(self, condition: str, detail: str = ""):
        message = f"structure parameter condition failed: {condition}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
        self.condition = condition


class FitError(LabError):
    """A decay fit could not be computed on the requested window."""


class NumericalError(LabError):
    """A numerical sub-solve failed; diagnostics are attached."""

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class DomainError(LabError):
    """Input outside the mathematical domain of an operation (e.g. log of zero)."""


class EmissionError(LabError):
    """Writing report artifacts failed."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"cannot write {path}: {reason}")
        self.path = path
