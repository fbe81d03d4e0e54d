"""Decomposition of quantum kinetic energy into classical and gradient parts.

The kinetic energy T of a normalized wavefunction splits as
T = T_C + T_W, where T_C is the classical transport energy carried by
the phase gradient and T_W is the density-gradient (Weizsacker) term,
one eighth of the Fisher information.  This package samples states on
Simpson-weighted grids, evaluates both parts and their pointwise
densities with matched high-order stencils, exposes the deformation
T_u whose minimizer recovers T_C, and provides hydrogen-like orbitals
plus two exactly solvable time-dependent systems for validation.
"""

from .quadgrid import (
    ComplexField,
    Grid1D,
    Grid2D,
    RealField,
    derivative,
    gradient_components,
    integrate,
    make_spherical_grid,
    make_uniform_grid,
)
from .qstate import (
    Wavefunction,
    density,
    normalize,
)
from .functionals import (
    ConsistencyError,
    DecompositionReport,
    OsmoticField,
    classical_kinetic,
    decompose,
    deformed_kinetic,
    fisher_information,
    identity_residual,
    osmotic_term,
    parabola_vertex,
    quantum_kinetic,
    shannon_entropy,
    variational_scan,
    weizsacker,
)
from .hydrogenic import (
    OrbitalSpec,
    analytic_values,
    orbital,
    radial_distributions,
)
from .dynamics import (
    GaussianPacket,
    PibSuperposition,
    cn_propagate,
    decomposition_timeseries,
    gaussian_evolve,
    l2_distance,
    pib_evolve,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexField",
    "ConsistencyError",
    "DecompositionReport",
    "GaussianPacket",
    "Grid1D",
    "Grid2D",
    "OrbitalSpec",
    "OsmoticField",
    "PibSuperposition",
    "RealField",
    "Wavefunction",
    "analytic_values",
    "classical_kinetic",
    "cn_propagate",
    "decompose",
    "decomposition_timeseries",
    "deformed_kinetic",
    "density",
    "derivative",
    "fisher_information",
    "gaussian_evolve",
    "gradient_components",
    "identity_residual",
    "integrate",
    "l2_distance",
    "make_spherical_grid",
    "make_uniform_grid",
    "normalize",
    "orbital",
    "osmotic_term",
    "parabola_vertex",
    "pib_evolve",
    "quantum_kinetic",
    "radial_distributions",
    "shannon_entropy",
    "variational_scan",
    "weizsacker",
    "__version__",
]
