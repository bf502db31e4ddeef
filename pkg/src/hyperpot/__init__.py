"""Hyperbolic polynomials, their Newtonian potentials, and monodromy lattices."""

from .geometry import (
    GeometryError,
    HyperbolicityReport,
    ZoneLabel,
    component_seeds,
    is_strictly_hyperbolic,
    sample_hyperbolicity_domain,
    zone_index,
)
from .lattice import (
    GeneratorSet,
    Lattice,
    LatticeError,
    LinearForm,
    OrbitReport,
    build_D_tilde,
    build_model_hyperbolic,
    build_plane_curve_model,
    fixed_vectors,
    form_kernel,
    orbit,
    pl_reflect,
    pl_transvect,
    probe_completely_infinite,
    quotient_lattice,
    value_spectrum,
)
from .milnor import RankReport, mu_codim2, mu_hypersurface, rank_H
from .poly import MultiPoly, PolyError, UniPoly, real_root_count, restrict_to_line
from .potential import (
    PotentialError,
    QuadConfig,
    QuadratureResult,
    arnold_charge,
    attraction_force,
    ellipsoid_charge,
    potential,
)

__version__ = "0.1.0"
