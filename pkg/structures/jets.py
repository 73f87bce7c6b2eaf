"""Pointwise jets (u, v and their first two x-derivatives) and the quantities derived from them."""

from dataclasses import dataclass

import numpy as np

from domain.grid import d1, d2
from models.state import Params, State


@dataclass(frozen=True)
class Jet:
    u: np.ndarray
    v: np.ndarray
    ux: np.ndarray
    vx: np.ndarray
    uxx: np.ndarray
    vxx: np.ndarray

    @property
    def rho(self) -> np.ndarray:
        return self.u - self.v**2

    @property
    def rho_x(self) -> np.ndarray:
        return self.ux - 2.0 * self.v * self.vx

    @property
    def w(self) -> np.ndarray:
        return 2.0 * self.u + self.v

    @property
    def wx(self) -> np.ndarray:
        return 2.0 * self.ux + self.vx

    @property
    def wxx(self) -> np.ndarray:
        return 2.0 * self.uxx + self.vxx

    def ut(self, p: Params) -> np.ndarray:
        return p.a * self.uxx - p.k * self.rho

    def vt(self, p: Params) -> np.ndarray:
        return p.b * self.vxx + 2.0 * p.k * self.rho

    def wt(self, p: Params) -> np.ndarray:
        return p.b * self.wxx + 2.0 * (p.a - p.b) * self.uxx


def jet_from_state(s: State) -> Jet:
    """Stencil derivatives of a state; the same stencils the solver uses."""
    u, v, grid = s.u.values, s.v.values, s.grid
    return Jet(u=u, v=v, ux=d1(u, grid), vx=d1(v, grid), uxx=d2(u, grid), vxx=d2(v, grid))


def random_jets(count: int, seed: int, amplitude: float = 2.0) -> Jet:
    """Independent admissible jets: u, v >= 0 (a quarter with v = 0 exactly), Gaussian derivatives."""
    rng = np.random.default_rng(seed)
    u = rng.uniform(0.0, amplitude, count)
    v = rng.uniform(0.0, amplitude, count)
    v[: count // 4] = 0.0
    scale = rng.lognormal(0.0, 1.0, (4, count))
    derivs = rng.standard_normal((4, count)) * scale
    return Jet(u=u, v=v, ux=derivs[0], vx=derivs[1], uxx=derivs[2], vxx=derivs[3])
