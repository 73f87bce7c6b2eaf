from models.errors import (
    ConfigurationError,
    DomainError,
    EmissionError,
    FitError,
    IntegrationError,
    LabError,
    NumericalError,
    PositivityViolation,
    StructureParameterError,
)
from models.grid import Field, Grid1D, WeightField
from models.kernel import KernelDecay, KernelParams, SpectralKernel, SymbolActions
from models.report import AcceptanceItem, Report, TimeSeries
from models.scenario import ScenarioConfig
from models.state import KineticPath, Params, ScalarTrajectory, State, Trajectory
from models.structure import DecayFit, EDSField, LocalizedSeries, StructureParams

__all__ = [
    "AcceptanceItem",
    "ConfigurationError",
    "DecayFit",
    "DomainError",
    "EmissionError",
    "EDSField",
    "Field",
    "FitError",
    "Grid1D",
    "IntegrationError",
    "KernelDecay",
    "KernelParams",
    "KineticPath",
    "LabError",
    "LocalizedSeries",
    "NumericalError",
    "Params",
    "PositivityViolation",
    "Report",
    "ScalarTrajectory",
    "ScenarioConfig",
    "SpectralKernel",
    "State",
    "StructureParams",
    "SymbolActions",
    "TimeSeries",
    "Trajectory",
    "WeightField",
]
