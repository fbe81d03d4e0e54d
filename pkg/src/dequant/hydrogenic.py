"""Hydrogen-like bound states sampled on spherical (r, theta) grids.

States are the standard Coulomb eigenfunctions for unit nuclear charge in
atomic units,

    psi_nlm = R_nl(r) * Theta_lm(theta) * exp(i m phi) / sqrt(2 pi),

sampled over the (r, theta) half-plane with the azimuthal quantum number
carried symbolically (see :class:`~dequant.qstate.Wavefunction`).  The
sampled array is real; normalization constants are assembled in log space
so that high quantum numbers stay finite.

Closed forms for the kinetic decomposition of these states:

    T   = 1 / (2 n**2)
    T_C = |m| / (2 n**3)
    T_W = (n - |m|) / (2 n**3)

The classical part comes entirely from the azimuthal phase and vanishes
for m = 0.
"""

import math
from dataclasses import dataclass

import numpy as np

from .quadgrid import Grid2D, RealField, make_spherical_grid
from .qstate import Wavefunction, normalize

__all__ = [
    "OrbitalSpec",
    "assoc_laguerre",
    "assoc_legendre",
    "orbital",
    "analytic_values",
    "radial_distributions",
]

# Norm defects below KEEP_TOL are grid noise; within RENORM_TOL the state
# is rescaled; beyond that the grid does not hold the orbital's tail.
_KEEP_TOL = 1e-9
_RENORM_TOL = 1e-6


@dataclass(frozen=True)
class OrbitalSpec:
    """Quantum numbers (n, l, m) of one bound state."""

    n: int
    l: int
    m: int

    def __post_init__(self):
        for name in ("n", "l", "m"):
            if not isinstance(getattr(self, name), (int, np.integer)):
                raise ValueError(f"{name} must be an integer")
        if self.n < 1:
            raise ValueError(f"need n >= 1, got n={self.n}")
        if not 0 <= self.l < self.n:
            raise ValueError(f"need 0 <= l < n, got l={self.l} with n={self.n}")
        if abs(self.m) > self.l:
            raise ValueError(f"need |m| <= l, got m={self.m} with l={self.l}")

    @property
    def label(self) -> str:
        return f"({self.n},{self.l},{self.m})"


def assoc_laguerre(k: int, alpha: float, x: np.ndarray) -> np.ndarray:
    """Generalized Laguerre polynomial L_k^alpha by upward recurrence."""
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if k == 0:
        return prev
    cur = 1.0 + alpha - x
    for i in range(2, k + 1):
        prev, cur = cur, ((2 * i - 1 + alpha - x) * cur - (i - 1 + alpha) * prev) / i
    return cur


def assoc_legendre(l: int, m: int, x: np.ndarray) -> np.ndarray:
    """Associated Legendre P_l^m (m >= 0, Condon-Shortley phase)."""
    if m < 0 or l < m:
        raise ValueError(f"need 0 <= m <= l, got l={l}, m={m}")
    x = np.asarray(x, dtype=float)
    pmm = np.ones_like(x)
    if m > 0:
        s = np.sqrt((1.0 - x) * (1.0 + x))
        fact = 1.0
        for _ in range(m):
            pmm = -pmm * fact * s
            fact += 2.0
    if l == m:
        return pmm
    pm1 = x * (2 * m + 1) * pmm
    if l == m + 1:
        return pm1
    for ll in range(m + 2, l + 1):
        pmm, pm1 = pm1, (x * (2 * ll - 1) * pm1 - (ll - 1 + m) * pmm) / (ll - m)
    return pm1


def _radial_part(n: int, l: int, r: np.ndarray) -> np.ndarray:
    # R_nl = N * rho**l * exp(-rho/2) * L_{n-l-1}^{2l+1}(rho), rho = 2r/n,
    # with ln N = (3/2) ln(2/n) + (1/2)[ln (n-l-1)! - ln 2n - ln (n+l)!].
    rho = 2.0 * r / n
    log_norm = 1.5 * math.log(2.0 / n) + 0.5 * (
        math.lgamma(n - l) - math.log(2.0 * n) - math.lgamma(n + l + 1)
    )
    return np.exp(log_norm + l * np.log(rho) - 0.5 * rho) * assoc_laguerre(
        n - l - 1, 2 * l + 1, rho
    )


def _angular_part(l: int, m_abs: int, theta: np.ndarray) -> np.ndarray:
    # Theta_lm = A * P_l^{|m|}(cos theta) with
    # ln A = (1/2)[ln(2l+1) - ln 2 + ln (l-|m|)! - ln (l+|m|)!].
    log_norm = 0.5 * (
        math.log(2 * l + 1)
        - math.log(2.0)
        + math.lgamma(l - m_abs + 1)
        - math.lgamma(l + m_abs + 1)
    )
    return math.exp(log_norm) * assoc_legendre(l, m_abs, np.cos(theta))


def orbital(spec: OrbitalSpec, grid: Grid2D | None = None) -> Wavefunction:
    """Sample one bound state, checking that the grid holds its norm.

    Norm defects below 1e-9 are accepted as-is, defects up to 1e-6 are
    removed by rescaling, and anything larger raises: the grid is then
    missing tail or resolution and no rescale can repair the shape.
    """
    if grid is None:
        grid = make_spherical_grid()
    if grid.ndim != 2:
        raise ValueError("bound states need a spherical (r, theta) grid")
    radial = _radial_part(spec.n, spec.l, grid.r.points)
    angular = _angular_part(spec.l, abs(spec.m), grid.theta.points)
    values = np.outer(radial, angular) / math.sqrt(2.0 * math.pi)
    w = Wavefunction.from_values(values, grid, azimuthal_m=spec.m)
    defect = abs(w.norm() - 1.0)
    if defect < _KEEP_TOL:
        return w
    if defect <= _RENORM_TOL:
        return normalize(w)
    raise ValueError(
        f"grid does not support orbital {spec.label}: norm defect {defect:.3e}; "
        "extend r_max or refine the grid"
    )


def analytic_values(spec: OrbitalSpec) -> tuple:
    """Closed-form (T_C, T_W, T) for one bound state, in Hartree."""
    n, m_abs = spec.n, abs(spec.m)
    return (
        m_abs / (2.0 * n**3),
        (n - m_abs) / (2.0 * n**3),
        1.0 / (2.0 * n**2),
    )


def radial_distributions(w: Wavefunction) -> RealField:
    """Radial probability density P(r), normalized so integral(P dr) = 1."""
    if w.grid.ndim != 2:
        raise ValueError("radial distribution needs a spherical state")
    p = np.abs(w.values) ** 2
    radial = (w.grid.weights * p).sum(axis=1) / w.grid.r.weights
    return RealField(radial, w.grid.r)
