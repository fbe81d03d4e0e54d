"""Time-dependent line states and a Crank-Nicolson reference propagator.

Two analytically solvable families drive the dynamical checks:

* superpositions of particle-in-a-box eigenstates on [0, L], where the
  decomposition oscillates with the relative phases while T stays fixed
  at sum(|c_k|**2 E_k);

* the free Gaussian packet psi(x, t) = pi**(-1/4) (1 + i t)**(-1/2)
  * exp(-x**2 / (2 (1 + i t))), whose parts exchange under spreading as
  T_C = t**2 / (4 (1 + t**2)) and T_W = 1 / (4 (1 + t**2)) with
  T = 1/4 throughout.

:func:`cn_propagate` evolves any line state under the free Hamiltonian
with hard walls at the grid ends, giving an independent numerical route
to the same densities.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .quadgrid import Grid1D, integrate
from .qstate import Wavefunction

__all__ = [
    "PibSuperposition",
    "GaussianPacket",
    "pib_energy",
    "pib_eigenfunction",
    "pib_evolve",
    "gaussian_evolve",
    "cn_propagate",
    "decomposition_timeseries",
    "l2_distance",
]

# Crank-Nicolson is unconditionally stable but its phase error grows as
# dt**2; steps coarser than this are never what the caller wants.
DT_MAX = 1e-2

# Largest probability mass the grid may cut off a Gaussian's tails.
_TAIL_TOL = 1e-9

_COEFF_NORM_TOL = 1e-12


@dataclass(frozen=True)
class PibSuperposition:
    """Superposition of box eigenstates k = 1, 2, ... on [0, L].

    ``coefficients[k-1]`` multiplies eigenstate k; they must carry unit
    total weight.  The zero-potential energy sum(|c_k|**2 E_k) equals the
    kinetic energy at every time.
    """

    coefficients: tuple
    L: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(complex(c) for c in self.coefficients))
        object.__setattr__(self, "L", float(self.L))
        if not self.coefficients:
            raise ValueError("superposition needs at least one coefficient")
        if not self.L > 0.0:
            raise ValueError(f"need L > 0, got {self.L}")
        weight = sum(abs(c) ** 2 for c in self.coefficients)
        if abs(weight - 1.0) > _COEFF_NORM_TOL:
            raise ValueError(f"coefficient weights sum to {weight!r}, expected 1")

    def energy(self) -> float:
        return sum(
            abs(c) ** 2 * pib_energy(k, self.L)
            for k, c in enumerate(self.coefficients, start=1)
        )

    def values(self, x: np.ndarray, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        psi = np.zeros(x.shape, dtype=complex)
        for k, c in enumerate(self.coefficients, start=1):
            if c == 0:
                continue
            psi += c * math.e ** (-1j * pib_energy(k, self.L) * t) * pib_eigenfunction(
                k, self.L, x
            )
        return psi


@dataclass(frozen=True)
class GaussianPacket:
    """Free minimum-uncertainty packet with unit initial width."""

    def values(self, x: np.ndarray, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        z = 1.0 + 1j * t
        return math.pi ** (-0.25) / np.sqrt(z) * np.exp(-(x**2) / (2.0 * z))

    def kinetic_parts(self, t: float) -> tuple:
        """Closed-form (T_C, T_W, T) at time t."""
        spread = 1.0 + t * t
        return t * t / (4.0 * spread), 1.0 / (4.0 * spread), 0.25


def pib_energy(k: int, L: float = 1.0) -> float:
    """Box eigenvalue E_k = k**2 pi**2 / (2 L**2)."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return (k * math.pi / L) ** 2 / 2.0


def pib_eigenfunction(k: int, L: float, x: np.ndarray) -> np.ndarray:
    """Box eigenstate sqrt(2/L) sin(k pi x / L)."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return math.sqrt(2.0 / L) * np.sin(k * math.pi * np.asarray(x, dtype=float) / L)


def pib_evolve(state: PibSuperposition, t: float, grid: Grid1D) -> Wavefunction:
    """Sample a box superposition at time t on a grid spanning [0, L]."""
    if grid.ndim != 1:
        raise ValueError("box states live on line grids")
    lo, hi = float(grid.points[0]), float(grid.points[-1])
    if abs(lo) > 1e-12 or abs(hi - state.L) > 1e-12 * state.L:
        raise ValueError(f"grid spans [{lo!r}, {hi!r}], box needs [0, {state.L!r}]")
    return Wavefunction.from_values(state.values(grid.points, t), grid)


def gaussian_evolve(packet: GaussianPacket, t: float, grid: Grid1D) -> Wavefunction:
    """Sample the free packet at time t, verifying the grid holds it.

    With spread s(t) = sqrt(1 + t**2), the mass beyond a wall at X is
    erfc(|X| / s) / 2 per side; the grid is rejected when the combined
    tail loss reaches 1e-9.
    """
    if grid.ndim != 1:
        raise ValueError("the packet lives on a line grid")
    s = math.sqrt(1.0 + t * t)
    lost = 0.5 * (
        math.erfc(abs(grid.points[0]) / s) + math.erfc(abs(grid.points[-1]) / s)
    )
    if lost >= _TAIL_TOL or grid.points[0] > 0.0 or grid.points[-1] < 0.0:
        raise ValueError(
            f"grid [{float(grid.points[0])!r}, {float(grid.points[-1])!r}] loses "
            f"{lost:.3e} of the packet at t={float(t)!r}; widen it"
        )
    return Wavefunction.from_values(packet.values(grid.points, t), grid)


def cn_propagate(w: Wavefunction, dt: float, steps: int) -> Wavefunction:
    """Crank-Nicolson free evolution with hard walls at the grid ends.

    Solves (1 + i dt H / 2) psi' = (1 - i dt H / 2) psi per step with the
    second-difference Hamiltonian on interior points and psi pinned at
    the walls, so the scheme is exactly unitary on the interior up to
    solver roundoff.
    """
    if w.grid.ndim != 1:
        raise ValueError("the propagator handles line states only")
    if not 0.0 < dt <= DT_MAX:
        raise ValueError(f"need 0 < dt <= {DT_MAX}, got {dt!r}")
    if steps < 0:
        raise ValueError(f"need steps >= 0, got {steps}")
    psi = w.values.copy()
    if steps == 0:
        return Wavefunction.from_values(psi, w.grid, azimuthal_m=w.azimuthal_m)
    h = w.grid.spacing
    lam = 0.5 * dt
    diag = 1.0 / h**2
    off = -0.5 / h**2
    n_int = w.grid.n_points - 2
    ab = np.zeros((3, n_int), dtype=complex)
    ab[0, 1:] = 1j * lam * off
    ab[1, :] = 1.0 + 1j * lam * diag
    ab[2, :-1] = 1j * lam * off
    b_diag = 1.0 - 1j * lam * diag
    b_off = -1j * lam * off
    inner = psi[1:-1]
    for _ in range(steps):
        rhs = b_diag * inner
        rhs[1:] += b_off * inner[:-1]
        rhs[:-1] += b_off * inner[1:]
        inner = solve_banded((1, 1), ab, rhs)
    psi[1:-1] = inner
    return Wavefunction.from_values(psi, w.grid, azimuthal_m=w.azimuthal_m)


def decomposition_timeseries(evolve, times) -> list:
    """Decompose evolve(t) at each time, returning (t, report) pairs.

    ``evolve`` maps a float time to a :class:`Wavefunction`; the import
    of :func:`~dequant.functionals.decompose` is deferred to keep module
    load order flat.
    """
    from .functionals import decompose

    times = [float(t) for t in times]
    if not times:
        raise ValueError("need at least one time")
    return [(t, decompose(evolve(t))) for t in times]


def l2_distance(a: Wavefunction, b: Wavefunction) -> float:
    """Grid-weighted L2 distance between two states on one grid."""
    if a.grid is not b.grid and a.values.shape != b.values.shape:
        raise ValueError("states live on different grids")
    gap = np.abs(a.values - b.values) ** 2
    return math.sqrt(integrate(gap, a.grid))
