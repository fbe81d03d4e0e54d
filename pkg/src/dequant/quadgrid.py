"""Quadrature grids and high-order finite differences.

Everything downstream integrates and differentiates sampled fields on the
uniform grids defined here, so this module fixes the numerical conventions
once:

* integration is composite Simpson (odd point count, exact for cubics),
* differentiation is a 7-point sixth-order stencil, with one-sided
  stencils of the same order at the three nodes nearest each boundary,
* the spherical product grid samples (r, theta) only; wavefunctions carry
  an exp(i*m*phi) factor analytically, so the azimuthal volume factor
  2*pi together with the Jacobian r**2*sin(theta) is folded into the
  quadrature weights.

All lengths are in Bohr radii and all energies in Hartree (hbar = m = 1).
"""

import numpy as np
from dataclasses import dataclass

__all__ = [
    "Grid1D",
    "Grid2D",
    "RealField",
    "ComplexField",
    "make_uniform_grid",
    "make_spherical_grid",
    "integrate",
    "derivative",
    "gradient_components",
    "azimuthal_factor",
    "DEFAULT_R_MAX",
    "DEFAULT_N_R",
    "DEFAULT_N_THETA",
    "DEFAULT_R_MIN",
    "DEFAULT_THETA_MARGIN",
]

# Default spherical grid for hydrogen-like orbitals: sized so every n = 3
# orbital integrates to unit norm within 1e-9, and offset from r = 0 and
# theta = 0, pi so metric factors 1/r and 1/sin(theta) stay finite.
DEFAULT_R_MAX = 60.0
DEFAULT_N_R = 4001
DEFAULT_N_THETA = 1001
DEFAULT_R_MIN = 1e-6
DEFAULT_THETA_MARGIN = 1e-6

_UNIFORM_RTOL = 1e-12
_MIN_STENCIL_POINTS = 7

# First-derivative weights on seven consecutive nodes, exact for degree-6
# polynomials.  Row k of _EDGE evaluates at node k using nodes 0..6; the
# right boundary uses the same rows reversed and negated.
_CENTRAL = np.array([-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60])
_EDGE = np.array(
    [
        [-49.0 / 20, 6.0, -15.0 / 2, 20.0 / 3, -15.0 / 4, 6.0 / 5, -1.0 / 6],
        [-1.0 / 6, -77.0 / 60, 5.0 / 2, -5.0 / 3, 5.0 / 6, -1.0 / 4, 1.0 / 30],
        [1.0 / 30, -2.0 / 5, -7.0 / 12, 4.0 / 3, -1.0 / 2, 2.0 / 15, -1.0 / 60],
    ]
)


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Uniform 1D grid with composite-Simpson weights.

    Attributes
    ----------
    points : ndarray
        Strictly increasing, uniformly spaced sample positions.
    weights : ndarray
        Simpson weights; ``weights.sum()`` equals the grid extent.
    spacing : float
        Distance between adjacent points.
    """

    points: np.ndarray
    weights: np.ndarray
    spacing: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        wts = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)
        n = pts.size
        if n < 3 or n % 2 == 0:
            raise ValueError(f"Simpson grid needs an odd point count >= 3, got {n}")
        if wts.shape != pts.shape:
            raise ValueError("weights and points must have matching length")
        deltas = np.diff(pts)
        if deltas.min() <= 0.0:
            raise ValueError("grid points must be strictly increasing")
        h = self.spacing
        if np.abs(deltas - h).max() > _UNIFORM_RTOL * max(abs(h), 1.0):
            raise ValueError("grid points must be uniformly spaced")
        extent = pts[-1] - pts[0]
        if abs(wts.sum() - extent) > _UNIFORM_RTOL * max(extent, 1.0):
            raise ValueError("quadrature weights must sum to the grid extent")

    @property
    def n_points(self) -> int:
        return self.points.size

    @property
    def shape(self) -> tuple:
        return self.points.shape

    @property
    def ndim(self) -> int:
        return 1


@dataclass(frozen=True, eq=False)
class Grid2D:
    """Product grid over (r, theta) for azimuthally symmetric 3D states.

    The azimuthal angle is never sampled; ``weights`` holds the full
    per-node measure ``w_r * w_theta * 2*pi * r**2 * sin(theta)`` so that
    a plain weighted sum of a sampled density is its 3D integral.
    """

    r: Grid1D
    theta: Grid1D
    weights: np.ndarray

    def __post_init__(self):
        expected = (self.r.n_points, self.theta.n_points)
        if self.weights.shape != expected:
            raise ValueError(
                f"2D weights shaped {self.weights.shape}, expected {expected}"
            )
        if self.r.points[0] <= 0.0:
            raise ValueError("radial grid must start at r > 0")
        if self.theta.points[0] <= 0.0 or self.theta.points[-1] >= np.pi:
            raise ValueError("polar grid must stay strictly inside (0, pi)")

    @property
    def shape(self) -> tuple:
        return (self.r.n_points, self.theta.n_points)

    @property
    def ndim(self) -> int:
        return 2


def _check_alignment(values: np.ndarray, grid) -> np.ndarray:
    values = np.asarray(values)
    if values.shape != grid.shape:
        raise ValueError(
            f"field shaped {values.shape} is not aligned to grid shaped {grid.shape}"
        )
    return values


@dataclass(frozen=True, eq=False)
class RealField:
    """Real samples of a function, one per grid node."""

    values: np.ndarray
    grid: "Grid1D | Grid2D"

    def __post_init__(self):
        vals = _check_alignment(self.values, self.grid)
        if np.iscomplexobj(vals):
            raise ValueError("RealField requires real-valued samples")
        object.__setattr__(self, "values", vals.astype(float, copy=False))


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Complex samples of a function, one per grid node."""

    values: np.ndarray
    grid: "Grid1D | Grid2D"

    def __post_init__(self):
        vals = _check_alignment(self.values, self.grid)
        object.__setattr__(self, "values", vals.astype(complex, copy=False))


def make_uniform_grid(xmin: float, xmax: float, n_points: int) -> Grid1D:
    """Build a uniform Simpson grid on [xmin, xmax].

    Parameters
    ----------
    xmin, xmax : float
        Interval endpoints, ``xmax > xmin``.
    n_points : int
        Number of nodes; must be odd and at least 3 so the interval
        splits into an integer number of Simpson panels.
    """
    if n_points < 3 or n_points % 2 == 0:
        raise ValueError(f"n_points must be odd and >= 3, got {n_points}")
    if not xmax > xmin:
        raise ValueError(f"need xmax > xmin, got [{xmin}, {xmax}]")
    points = np.linspace(xmin, xmax, n_points)
    h = (xmax - xmin) / (n_points - 1)
    weights = np.ones(n_points)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    weights *= h / 3.0
    return Grid1D(points=points, weights=weights, spacing=h)


def make_spherical_grid(
    r_max: float = DEFAULT_R_MAX,
    n_r: int = DEFAULT_N_R,
    n_theta: int = DEFAULT_N_THETA,
    r_min: float = DEFAULT_R_MIN,
    theta_margin: float = DEFAULT_THETA_MARGIN,
) -> Grid2D:
    """Build the (r, theta) product grid with the volume element folded in.

    Parameters
    ----------
    r_max : float
        Radial extent in Bohr.  Must comfortably contain the density; the
        orbital constructors check the resulting norm defect.
    n_r, n_theta : int
        Node counts per axis (odd, >= 3).
    r_min, theta_margin : float
        Small offsets keeping r and sin(theta) strictly positive.
    """
    if r_min <= 0.0:
        raise ValueError("r_min must be positive")
    if theta_margin <= 0.0 or 2.0 * theta_margin >= np.pi:
        raise ValueError("theta_margin must lie in (0, pi/2)")
    r = make_uniform_grid(r_min, r_max, n_r)
    theta = make_uniform_grid(theta_margin, np.pi - theta_margin, n_theta)
    jacobian = 2.0 * np.pi * np.outer(r.points**2, np.sin(theta.points))
    weights = np.outer(r.weights, theta.weights) * jacobian
    return Grid2D(r=r, theta=theta, weights=weights)


def _values_of(f, grid) -> np.ndarray:
    if isinstance(f, (RealField, ComplexField)):
        if f.grid is not grid:
            _check_alignment(f.values, grid)
        return f.values
    return _check_alignment(np.asarray(f), grid)


def integrate(f, grid) -> float:
    """Integrate a sampled field over the grid's full measure.

    For a :class:`Grid2D` the weights already include
    ``2*pi*r**2*sin(theta)``, so this is the 3D integral of an
    azimuthally symmetric integrand.  Complex samples integrate to a
    complex value.
    """
    values = _values_of(f, grid)
    if grid.ndim == 1:
        acc = np.sum(grid.weights * values)
    else:
        acc = np.sum(grid.weights * values)
    return complex(acc) if np.iscomplexobj(values) else float(acc)


def _diff6(values: np.ndarray, spacing: float, axis: int) -> np.ndarray:
    work = np.moveaxis(values, axis, 0)
    n = work.shape[0]
    if n < _MIN_STENCIL_POINTS:
        raise ValueError(
            f"sixth-order differences need >= {_MIN_STENCIL_POINTS} points per axis, got {n}"
        )
    out = np.empty_like(work)
    interior = np.zeros_like(work[3 : n - 3])
    for k, c in enumerate(_CENTRAL):
        if c != 0.0:
            interior = interior + c * work[k : n - 6 + k]
    out[3 : n - 3] = interior
    for row in range(3):
        w = _EDGE[row]
        out[row] = sum(w[k] * work[k] for k in range(7))
        out[n - 1 - row] = -sum(w[k] * work[n - 1 - k] for k in range(7))
    out /= spacing
    return np.moveaxis(out, 0, axis)


def derivative(f, grid, axis: int | None = None):
    """Differentiate a sampled field along one grid axis.

    Parameters
    ----------
    f : RealField, ComplexField or ndarray
        Samples aligned to ``grid``.
    grid : Grid1D or Grid2D
        Grid carrying the spacing.
    axis : int, optional
        Required for 2D grids: 0 differentiates in r, 1 in theta.  The
        result is the plain coordinate derivative; metric factors such as
        1/r are the caller's business (see :func:`gradient_components`).

    Returns an object of the same kind as the input (field in, field out).
    """
    values = _values_of(f, grid)
    if grid.ndim == 1:
        if axis not in (None, 0):
            raise ValueError("1D grids only support axis 0")
        result = _diff6(values, grid.spacing, 0)
    else:
        if axis not in (0, 1):
            raise ValueError("2D derivative needs axis 0 (r) or axis 1 (theta)")
        spacing = grid.r.spacing if axis == 0 else grid.theta.spacing
        result = _diff6(values, spacing, axis)
    if isinstance(f, RealField):
        return RealField(result, grid)
    if isinstance(f, ComplexField):
        return ComplexField(result, grid)
    return result


def gradient_components(values, grid) -> list:
    """Physical gradient components of a sampled scalar.

    Returns ``[df/dx]`` on a line grid and ``[df/dr, (1/r) df/dtheta]``
    on a spherical grid.  The azimuthal component of an exp(i*m*phi)
    factor is not included here; see :func:`azimuthal_factor`.
    """
    values = _values_of(values, grid)
    if grid.ndim == 1:
        return [_diff6(values, grid.spacing, 0)]
    d_r = _diff6(values, grid.r.spacing, 0)
    d_t = _diff6(values, grid.theta.spacing, 1) / grid.r.points[:, None]
    return [d_r, d_t]


def azimuthal_factor(grid) -> np.ndarray:
    """Squared azimuthal metric factor 1/(r*sin(theta))**2 on a 2D grid.

    Multiplied by m**2 this turns the analytic exp(i*m*phi) dependence
    into its contribution to squared gradients.  Only defined for
    :class:`Grid2D`; 1D states carry no azimuthal quantum number.
    """
    if grid.ndim != 2:
        raise ValueError("azimuthal factor is only defined on spherical grids")
    rs = grid.r.points[:, None] * np.sin(grid.theta.points)[None, :]
    return 1.0 / rs**2
