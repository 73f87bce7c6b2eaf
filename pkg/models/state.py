import numpy as np
from pydantic import BaseModel, ConfigDict, Field as ModelField, field_validator, model_validator

from models.grid import Field, Grid1D


class Params(BaseModel):
    """Diffusivities and reaction rate; (n_st, m_st) select the generalized reaction nA = mB."""

    model_config = ConfigDict(frozen=True)

    a: float = ModelField(gt=0, description="Diffusivity of u")
    b: float = ModelField(gt=0, description="Diffusivity of v")
    k: float = ModelField(default=1.0, gt=0, description="Reaction rate")
    n_st: int | None = ModelField(default=None, ge=1, description="Stoichiometric coefficient of A")
    m_st: int | None = ModelField(default=None, ge=1, description="Stoichiometric coefficient of B")

    @model_validator(mode="after")
    def _check_stoichiometry(self) -> "Params":
        if (self.n_st is None) != (self.m_st is None):
            raise ValueError("n_st and m_st must be given together")
        if self.n_st is not None and self.n_st + self.m_st < 3:
            raise ValueError("n_st + m_st must be at least 3")
        return self

    @property
    def stoichiometry(self) -> tuple[int, int]:
        if self.n_st is None:
            return 1, 2
        return self.n_st, self.m_st

    @property
    def ratio(self) -> float:
        return self.a / self.b

    @property
    def a_max(self) -> float:
        return max(self.a, self.b)


class State(BaseModel):
    """Concentrations (u, v) at time t."""

    model_config = ConfigDict(frozen=True)

    u: Field
    v: Field
    t: float = 0.0

    @model_validator(mode="after")
    def _same_grid(self) -> "State":
        if self.u.grid != self.v.grid:
            raise ValueError("u and v must share one grid")
        return self

    @property
    def grid(self) -> Grid1D:
        return self.u.grid

    @classmethod
    def from_arrays(cls, grid: Grid1D, u: np.ndarray, v: np.ndarray, t: float = 0.0) -> "State":
        return cls(u=Field(grid=grid, values=u), v=Field(grid=grid, values=v), t=t)

    def min_value(self) -> float:
        return float(min(self.u.values.min(), self.v.values.min()))


class KineticPath(BaseModel):
    """Solution of the spatially homogeneous kinetics."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    u_bar: np.ndarray
    v_bar: np.ndarray
    conserved: float = ModelField(description="Value of m*u + n*v along the path (2u + v for A = 2B)")

    @field_validator("times", "u_bar", "v_bar", mode="before")
    @classmethod
    def _as_array(cls, v: object) -> np.ndarray:
        return np.asarray(v, dtype=float)

    @property
    def limit(self) -> tuple[float, float]:
        return float(self.u_bar[-1]), float(self.v_bar[-1])


class Trajectory(BaseModel):
    """Time-ordered snapshots of one run."""

    model_config = ConfigDict(frozen=True)

    snapshots: tuple[State, ...]
    params: Params
    dt: float = ModelField(gt=0, description="Largest step used by the integrator")
    scheme: str = "imex-euler"
    substeps: tuple[int, ...] = ModelField(
        default=(), description="Number of equal substeps taken between consecutive snapshots"
    )

    @model_validator(mode="after")
    def _check(self) -> "Trajectory":
        if not self.snapshots:
            raise ValueError("trajectory needs at least one snapshot")
        times = [s.t for s in self.snapshots]
        if any(t1 <= t0 for t0, t1 in zip(times, times[1:])):
            raise ValueError("snapshot times must be strictly increasing")
        grid = self.snapshots[0].grid
        if any(s.grid != grid for s in self.snapshots):
            raise ValueError("all snapshots must share one grid")
        return self

    @property
    def grid(self) -> Grid1D:
        return self.snapshots[0].grid

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.snapshots])

    def u_matrix(self) -> np.ndarray:
        return np.stack([s.u.values for s in self.snapshots])

    def v_matrix(self) -> np.ndarray:
        return np.stack([s.v.values for s in self.snapshots])

    def at(self, t: float, atol: float = 1e-9) -> State:
        idx = int(np.argmin(np.abs(self.times - t)))
        if abs(self.snapshots[idx].t - t) > atol * max(1.0, abs(t)):
            raise KeyError(f"no snapshot at t={t}")
        return self.snapshots[idx]

    def covers(self, t_lo: float, t_hi: float) -> bool:
        times = self.times
        return bool(times[0] <= t_lo + 1e-12 and times[-1] >= t_hi - 1e-12)


class ScalarTrajectory(BaseModel):
    """Snapshots of a single scalar field, e.g. the effective-diffusion density w."""

    model_config = ConfigDict(frozen=True)

    times: tuple[float, ...]
    fields: tuple[Field, ...]
    params: Params
    dt: float = ModelField(gt=0)
    scheme: str = "fv-linearly-implicit"

    @model_validator(mode="after")
    def _check(self) -> "ScalarTrajectory":
        if len(self.times) != len(self.fields):
            raise ValueError("times and fields differ in length")
        if any(t1 <= t0 for t0, t1 in zip(self.times, self.times[1:])):
            raise ValueError("snapshot times must be strictly increasing")
        return self

    def matrix(self) -> np.ndarray:
        return np.stack([f.values for f in self.fields])


class EnvelopeReport(BaseModel):
    """Outcome of comparing a run with the kinetic envelopes started from sup/inf data."""

    upper_margin: float = ModelField(description="min over snapshots of envelope - solution (upper)")
    lower_margin: float = ModelField(description="min over snapshots of solution - envelope (lower)")
    lower_bound_margin: float = ModelField(description="min_x v - 2d/(1+sqrt(1+8d)), d = inf v0")
    oracle_deviation: float = ModelField(
        description="max gap between the scheme's kinetic envelope and a high-order ODE solve"
    )
    tolerance: float
    passed: bool
