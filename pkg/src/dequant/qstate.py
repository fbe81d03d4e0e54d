"""Wavefunction container and pointwise state operations.

A state is stored as complex samples psi = sqrt(p) * exp(i*S) on a line
or spherical grid, plus an integer azimuthal quantum number m for the
analytic exp(i*m*phi) factor of 3D states (m = 0 on line grids).

Two numerical policies used throughout:

* the phase gradient is read off the probability current
  Im(conj(psi) * grad psi) / p, never from unwrapping arg(psi), and is
  defined as 0 wherever p falls below a relative floor;
* the amplitude gradient differentiates sqrt(p).  For fields that are
  real up to one global phase the signed real representative is
  differentiated instead of |psi|: the two agree identically off nodes,
  but the modulus has a kink at each sign change that costs four digits
  in integrated quantities, while the signed field is smooth through
  them.
"""

import numpy as np
from dataclasses import dataclass

from .quadgrid import (
    ComplexField,
    RealField,
    azimuthal_factor,
    gradient_components,
    integrate,
)

__all__ = [
    "Wavefunction",
    "density",
    "density_floor",
    "phase_gradient_sq",
    "amplitude_gradient_sq",
    "normalize",
    "real_representative",
    "P_FLOOR_REL",
]

# Relative density floor: below P_FLOOR_REL * max(p) the current-based
# phase quantities are defined as zero instead of dividing noise by noise.
P_FLOOR_REL = 1e-12

# A field counts as real-up-to-phase when the residual imaginary part
# after removing one global phase is this small relative to max |psi|.
_REAL_PHASE_RTOL = 1e-10

_NORM_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Wavefunction:
    """Normalized state on a grid.

    Attributes
    ----------
    psi : ComplexField
        Samples of the wavefunction (without the exp(i*m*phi) factor on
        spherical grids).
    azimuthal_m : int
        Analytic azimuthal quantum number; must be 0 on line grids.
    """

    psi: ComplexField
    azimuthal_m: int = 0

    def __post_init__(self):
        if not isinstance(self.psi, ComplexField):
            object.__setattr__(self, "psi", ComplexField(np.asarray(self.psi.values), self.psi.grid))
        if self.grid.ndim == 1 and self.azimuthal_m != 0:
            raise ValueError("line-grid states cannot carry an azimuthal quantum number")
        if int(self.azimuthal_m) != self.azimuthal_m:
            raise ValueError("azimuthal_m must be an integer")

    @classmethod
    def from_values(cls, values, grid, azimuthal_m: int = 0) -> "Wavefunction":
        return cls(ComplexField(np.asarray(values), grid), azimuthal_m)

    @property
    def grid(self):
        return self.psi.grid

    @property
    def values(self) -> np.ndarray:
        return self.psi.values

    def norm(self) -> float:
        """Square root of the total probability on the grid."""
        return float(np.sqrt(integrate(np.abs(self.values) ** 2, self.grid)))


def density(w: Wavefunction) -> RealField:
    """Probability density p = |psi|**2."""
    return RealField(np.abs(w.values) ** 2, w.grid)


def density_floor(p_values: np.ndarray) -> float:
    """Absolute floor under which current-based quantities are zeroed."""
    return P_FLOOR_REL * float(np.max(p_values))


def normalize(w: Wavefunction) -> Wavefunction:
    """Rescale to unit norm.  Rejects numerically zero fields."""
    nrm = w.norm()
    if not nrm > 0.0 or not np.isfinite(nrm):
        raise ValueError("cannot normalize a zero or non-finite field")
    return Wavefunction(ComplexField(w.values / nrm, w.grid), w.azimuthal_m)


def real_representative(w: Wavefunction) -> "np.ndarray | None":
    """Signed real samples g with psi = exp(i*alpha) * g, if they exist.

    The global phase alpha is taken from the largest-magnitude sample.
    Returns None for genuinely complex fields (position-dependent phase).
    """
    values = w.values
    mags = np.abs(values)
    peak = float(mags.max())
    if peak == 0.0:
        return None
    idx = np.unravel_index(int(np.argmax(mags)), values.shape)
    phase = values[idx] / mags[idx]
    aligned = values * np.conj(phase)
    if float(np.abs(aligned.imag).max()) <= _REAL_PHASE_RTOL * peak:
        return np.ascontiguousarray(aligned.real)
    return None


def _sqrtp_gradients(w: Wavefunction) -> list:
    """Gradient components of sqrt(p), smooth through sign changes."""
    g = real_representative(w)
    if g is not None:
        return gradient_components(g, w.grid)
    return gradient_components(np.abs(w.values), w.grid)


def amplitude_gradient_sq(w: Wavefunction) -> RealField:
    """Pointwise |grad sqrt(p)|**2.

    sqrt(p) carries no azimuthal dependence, so no m**2 term appears
    here even on spherical grids.
    """
    comps = _sqrtp_gradients(w)
    total = np.zeros(w.grid.shape)
    for c in comps:
        total += c * c
    return RealField(total, w.grid)


def phase_gradient_sq(w: Wavefunction) -> RealField:
    """Pointwise |grad S|**2 from the probability current.

    Computed as sum over axes of (Im(conj(psi) d_axis psi) / p)**2 plus
    the analytic azimuthal term m**2/(r*sin(theta))**2, and defined as 0
    where p < density_floor.
    """
    values = w.values
    p = np.abs(values) ** 2
    floor = density_floor(p)
    live = p >= floor
    safe_p = np.maximum(p, floor if floor > 0.0 else 1.0)
    total = np.zeros(w.grid.shape)
    for d in gradient_components(values, w.grid):
        cur = (np.conj(values) * d).imag
        total += (cur / safe_p) ** 2
    if w.azimuthal_m != 0:
        total += w.azimuthal_m**2 * azimuthal_factor(w.grid)
    return RealField(np.where(live, total, 0.0), w.grid)
