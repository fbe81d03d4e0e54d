"""Kinetic-energy functionals and the classical/gradient decomposition.

For psi = sqrt(p) * exp(i*S) the positive kinetic-energy density
|grad psi|**2 / 2 splits pointwise into

    T_C density:  p * |grad S|**2 / 2      (classical transport part)
    T_W density:  |grad sqrt(p)|**2 / 2    (density-gradient part)

The integrated T_W equals one eighth of the Fisher information of p.
Deforming the gradient as grad psi + u * psi and minimizing over real
fields u recovers T_C exactly at the osmotic momentum
u_c = -grad(p) / (2 p), with T_u quadratic around the minimum:
T_{u_c + delta} - T_{u_c} = (1/2) * integral(delta**2 * p).

Everything here consumes normalized :class:`~dequant.qstate.Wavefunction`
objects and returns plain floats or grid-aligned fields.
"""

import numpy as np
from dataclasses import dataclass

from scipy import ndimage

from .quadgrid import Grid1D, RealField, azimuthal_factor, gradient_components, integrate
from .qstate import (
    P_FLOOR_REL,
    Wavefunction,
    amplitude_gradient_sq,
    density,
    density_floor,
    phase_gradient_sq,
    real_representative,
)

__all__ = [
    "ConsistencyError",
    "DecompositionReport",
    "OsmoticField",
    "quantum_kinetic_integrand",
    "quantum_kinetic",
    "classical_integrand",
    "classical_kinetic",
    "weizsacker_integrand",
    "weizsacker",
    "fisher_information",
    "shannon_entropy",
    "osmotic_term",
    "deformed_kinetic",
    "variational_scan",
    "decompose",
    "identity_residual",
    "parabola_vertex",
    "OSMOTIC_FLOOR_REL",
]

# The osmotic ratio -grad(p)/(2p) is still accurate at densities far below
# the current floor P_FLOOR_REL (the numerator is differenced from smooth
# data), and zeroing it next to a node leaves an O(weight) hole in the
# deformed energy.  It is therefore floored much deeper, where the
# differenced numerator itself drowns in rounding noise.
OSMOTIC_FLOOR_REL = 1e-20

# Internal guard for the two Fisher routes (tests assert tighter bounds).
_FISHER_GUARD_RTOL = 1e-5


class ConsistencyError(RuntimeError):
    """Raised when two independent routes to the same quantity disagree."""


@dataclass(frozen=True, eq=False)
class OsmoticField:
    """Real deformation field, one component per grid axis."""

    components: tuple

    def __post_init__(self):
        if not self.components:
            raise ValueError("osmotic field needs at least one component")
        grid = self.components[0].grid
        if len(self.components) != grid.ndim:
            raise ValueError(
                f"need {grid.ndim} components for this grid, got {len(self.components)}"
            )
        for c in self.components:
            if not isinstance(c, RealField) or c.grid is not grid:
                raise ValueError("all components must be RealFields on one grid")

    @property
    def grid(self):
        return self.components[0].grid

    def scaled(self, factor: float) -> "OsmoticField":
        return OsmoticField(
            tuple(RealField(factor * c.values, c.grid) for c in self.components)
        )

    def plus(self, other: "OsmoticField") -> "OsmoticField":
        if other.grid is not self.grid:
            raise ValueError("cannot add osmotic fields on different grids")
        return OsmoticField(
            tuple(
                RealField(a.values + b.values, a.grid)
                for a, b in zip(self.components, other.components)
            )
        )


@dataclass(frozen=True, eq=False)
class DecompositionReport:
    """Scalar decomposition of one state plus its spatial profiles.

    The integrand fields live on the state's grid for line states and on
    the radial grid (theta already integrated out, volume factor folded
    in) for spherical states, so integrating any profile against its grid
    weights reproduces the matching scalar.
    """

    T: float
    T_C: float
    T_W: float
    fisher: float
    shannon: float
    integrand_T: RealField
    integrand_TC: RealField
    integrand_TW: RealField

    @property
    def closure_residual(self) -> float:
        """|T - T_C - T_W|, the integrated identity defect."""
        return abs(self.T - self.T_C - self.T_W)


def quantum_kinetic_integrand(w: Wavefunction) -> RealField:
    """Kinetic-energy density |grad psi|**2 / 2 (gradient form).

    On spherical grids the analytic azimuthal factor contributes
    m**2 * p / (r*sin(theta))**2 on top of the sampled axes.
    """
    values = w.values
    total = np.zeros(w.grid.shape)
    for d in gradient_components(values, w.grid):
        total += np.abs(d) ** 2
    if w.azimuthal_m != 0:
        total += w.azimuthal_m**2 * azimuthal_factor(w.grid) * np.abs(values) ** 2
    return RealField(0.5 * total, w.grid)


def classical_integrand(w: Wavefunction) -> RealField:
    """Classical kinetic-energy density p * |grad S|**2 / 2."""
    p = np.abs(w.values) ** 2
    return RealField(0.5 * p * phase_gradient_sq(w).values, w.grid)


def weizsacker_integrand(w: Wavefunction) -> RealField:
    """Gradient kinetic-energy density |grad sqrt(p)|**2 / 2."""
    return RealField(0.5 * amplitude_gradient_sq(w).values, w.grid)


def quantum_kinetic(w: Wavefunction) -> float:
    """Total kinetic energy T in Hartree."""
    return integrate(quantum_kinetic_integrand(w), w.grid)


def classical_kinetic(w: Wavefunction) -> float:
    """Classical part T_C in Hartree."""
    return integrate(classical_integrand(w), w.grid)


def weizsacker(w: Wavefunction) -> float:
    """Gradient part T_W in Hartree."""
    return integrate(weizsacker_integrand(w), w.grid)


def fisher_information(w: Wavefunction, cross_check: bool = True) -> float:
    """Fisher information of the density, reported as 8 * T_W.

    With ``cross_check`` the independent floored form
    integral(|grad p|**2 / p over p >= floor) is evaluated and compared
    against the amplitude route restricted to the same nodes; both sides
    exclude identical sub-floor points, so the comparison isolates the
    differencing routes.  Disagreement raises :class:`ConsistencyError`.
    """
    amp = amplitude_gradient_sq(w).values
    total = 4.0 * integrate(amp, w.grid)
    if cross_check:
        p = np.abs(w.values) ** 2
        floor = density_floor(p)
        live = p >= floor
        grad_p_sq = np.zeros(w.grid.shape)
        for d in gradient_components(p, w.grid):
            grad_p_sq += d * d
        ratio = np.zeros(w.grid.shape)
        np.divide(grad_p_sq, p, out=ratio, where=live)
        direct = integrate(np.where(live, ratio, 0.0), w.grid)
        matched = 4.0 * integrate(np.where(live, amp, 0.0), w.grid)
        if abs(direct - matched) > _FISHER_GUARD_RTOL * abs(total) + 1e-30:
            raise ConsistencyError(
                f"Fisher routes disagree: |grad p|^2/p gives {direct!r}, "
                f"8*T_W on the same nodes gives {matched!r}"
            )
    return total


def shannon_entropy(w: Wavefunction) -> float:
    """Differential entropy -integral(p * ln p), zeroed below the floor."""
    p = np.abs(w.values) ** 2
    floor = density_floor(p)
    live = p >= floor
    integrand = np.zeros(w.grid.shape)
    np.multiply(p, np.log(p, out=np.zeros_like(p), where=live), out=integrand, where=live)
    return -integrate(integrand, w.grid)


def osmotic_term(w: Wavefunction) -> OsmoticField:
    """Osmotic momentum u_c = -grad(p) / (2 p) per axis.

    Components are zeroed where p < OSMOTIC_FLOOR_REL * max(p); there the
    differenced numerator carries no signal.  Points zeroed this way are
    excluded from variational assertions.
    """
    p = np.abs(w.values) ** 2
    peak = float(p.max())
    if peak == 0.0:
        raise ValueError("osmotic momentum of a zero field is undefined")
    live = p >= OSMOTIC_FLOOR_REL * peak
    comps = []
    for d in gradient_components(p, w.grid):
        ratio = np.zeros(w.grid.shape)
        np.divide(d, p, out=ratio, where=live)
        comps.append(RealField(-0.5 * np.where(live, ratio, 0.0), w.grid))
    return OsmoticField(tuple(comps))


def deformed_kinetic(w: Wavefunction, u: OsmoticField) -> float:
    """Deformed kinetic energy T_u = (1/2) integral |grad psi + u psi|**2.

    ``u`` has one real component per sampled axis; the analytic azimuthal
    direction is never deformed, so its m**2 term enters undeformed.
    T_{u=0} reproduces T exactly and u = u_c attains the minimum T_C.
    """
    if u.grid is not w.grid:
        for c in u.components:
            if c.values.shape != w.grid.shape:
                raise ValueError("deformation field is not aligned to the state's grid")
    values = w.values
    total = np.zeros(w.grid.shape)
    for d, c in zip(gradient_components(values, w.grid), u.components):
        total += np.abs(d + c.values * values) ** 2
    if w.azimuthal_m != 0:
        total += w.azimuthal_m**2 * azimuthal_factor(w.grid) * np.abs(values) ** 2
    return 0.5 * integrate(total, w.grid)


def variational_scan(w: Wavefunction, alphas) -> list:
    """Evaluate alpha -> T_{alpha * u_c} on the given scaling factors.

    Returns a list of (alpha, T_alpha) pairs.  The exact profile is the
    parabola T_C + (1 - alpha)**2 * T_W with its vertex at alpha = 1.
    """
    alphas = [float(a) for a in alphas]
    if not alphas:
        raise ValueError("need at least one scan point")
    u_c = osmotic_term(w)
    return [(a, deformed_kinetic(w, u_c.scaled(a))) for a in alphas]


def parabola_vertex(points) -> tuple:
    """Least-squares quadratic vertex (alpha*, T*) of scan points."""
    pts = [(float(a), float(v)) for a, v in points]
    if len(pts) < 3:
        raise ValueError("vertex fit needs at least three scan points")
    a, v = np.array(pts).T
    c2, c1, c0 = np.polyfit(a, v, 2)
    if c2 <= 1e-12 * max(1.0, float(np.abs(v).max())):
        raise ValueError("scan points do not trace an upward parabola")
    vertex = -c1 / (2.0 * c2)
    return float(vertex), float(c0 - c1 * c1 / (4.0 * c2))


def _radial_profile(values: np.ndarray, grid) -> RealField:
    """Integrate theta out of a 2D integrand, keeping radial weights out."""
    radial = (grid.weights * values).sum(axis=1) / grid.r.weights
    return RealField(radial, grid.r)


def decompose(w: Wavefunction) -> DecompositionReport:
    """Full decomposition of one state.

    Computes T, T_C, T_W by their independent routes, Fisher information
    (with its internal cross-check) and Shannon entropy, plus the spatial
    profiles of the three kinetic densities.
    """
    t_all = quantum_kinetic_integrand(w)
    t_cls = classical_integrand(w)
    t_grd = weizsacker_integrand(w)
    T = integrate(t_all, w.grid)
    T_C = integrate(t_cls, w.grid)
    T_W = integrate(t_grd, w.grid)
    if w.grid.ndim == 2:
        t_all = _radial_profile(t_all.values, w.grid)
        t_cls = _radial_profile(t_cls.values, w.grid)
        t_grd = _radial_profile(t_grd.values, w.grid)
    return DecompositionReport(
        T=T,
        T_C=T_C,
        T_W=T_W,
        fisher=fisher_information(w),
        shannon=shannon_entropy(w),
        integrand_T=t_all,
        integrand_TC=t_cls,
        integrand_TW=t_grd,
    )


def _node_mask(w: Wavefunction) -> np.ndarray:
    """Grid points within three steps of a zero of psi."""
    p = np.abs(w.values) ** 2
    near_zero = p < P_FLOOR_REL * float(p.max())
    g = real_representative(w)
    if g is not None:
        for axis in range(w.grid.ndim):
            lo = [slice(None)] * w.grid.ndim
            hi = [slice(None)] * w.grid.ndim
            lo[axis] = slice(None, -1)
            hi[axis] = slice(1, None)
            flip = (g[tuple(lo)] * g[tuple(hi)]) < 0.0
            near_zero[tuple(lo)] |= flip
            near_zero[tuple(hi)] |= flip
    if not near_zero.any():
        return near_zero
    structure = ndimage.generate_binary_structure(w.grid.ndim, 1)
    return ndimage.binary_dilation(near_zero, structure=structure, iterations=3)


def identity_residual(w: Wavefunction) -> tuple:
    """Largest node-safe defect of the pointwise identity.

    Returns (max residual, mask), where the residual is
    |tau - tau_C - tau_W| / max(tau, 1e-12 * max(tau)) and the mask keeps
    points with p >= 1e-10 * max(p) lying at least three grid steps from
    every zero of psi.
    """
    t_all = quantum_kinetic_integrand(w).values
    gap = np.abs(t_all - classical_integrand(w).values - weizsacker_integrand(w).values)
    residual = gap / np.maximum(t_all, 1e-12 * float(t_all.max()))
    p = np.abs(w.values) ** 2
    mask = (p >= 1e-10 * float(p.max())) & ~_node_mask(w)
    if not mask.any():
        return 0.0, mask
    return float(residual[mask].max()), mask
