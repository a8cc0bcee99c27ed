"""Two-dimensional Gaussian wave packets carrying mean angular momentum.

The package models normalized Gaussian states of a particle in the plane:
their real parametrization, moments and probability current; the family of
minimal-energy packets at fixed angular momentum; angular-momentum and
energy fluctuations; expansions over oscillator angular-momentum modes; and
closed-form evolution under oscillator, uniform-magnetic-field and free
Hamiltonians, each backed by an independent numerical oracle.
"""

from .constants import DEFAULT_SEED, HBAR, MASS
from .errors import ConsistencyError, GausspackError, InvalidParameterError, ToleranceError
from .evolution import (
    EvolutionContext,
    FreeAsymptotics,
    FreeEvolutionRecord,
    ShrinkAnalysis,
    evolve_free,
    evolve_magnetic,
    evolve_oscillator,
    free_asymptotics,
    magnetic_energy,
    shrink_analysis,
)
from .fluctuations import (
    SubPoissonOptimum,
    VarianceReport,
    angular_momentum_stats,
    energy_stats,
    mean_l_squared,
    sigma_e,
    sigma_l,
    subpoisson_optimum,
    variance_report,
    wick_fourth_moment,
)
from .fock import (
    FockCoefficients,
    LGMode,
    antirotating_coeffs,
    coherent_coeffs,
    corotating_coeffs,
    fock_coefficients,
    generating_derivatives,
    generating_function,
    lg_mode_eval,
    pk_asymptotic,
    squeezed_coeffs,
)
from .minimal import (
    EnergySplit,
    MinimumReport,
    MinPacketSpec,
    UniversalInvariants,
    build_min_packet,
    energy_split,
    internal_energy,
    mean_energy,
    min_packet_covariances,
    min_packet_squeezing,
    min_packet_state,
    squeezing_factors,
    universal_invariants,
    verify_center_minimum,
    verify_minimum,
)
from .packet import (
    AngularSplit,
    EllipseGeometry,
    FirstMoments,
    GaussianState,
    RealParams,
    angular_split,
    covariances,
    density,
    ellipse,
    first_moments,
    gaussian_state,
    normalization,
    params_from_moments,
    probability_current,
    wavefunction,
)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "HBAR",
    "MASS",
    "DEFAULT_SEED",
    "GausspackError",
    "InvalidParameterError",
    "ToleranceError",
    "ConsistencyError",
    "RealParams",
    "FirstMoments",
    "GaussianState",
    "AngularSplit",
    "EllipseGeometry",
    "first_moments",
    "params_from_moments",
    "covariances",
    "gaussian_state",
    "angular_split",
    "normalization",
    "wavefunction",
    "density",
    "probability_current",
    "ellipse",
    "MinPacketSpec",
    "EnergySplit",
    "UniversalInvariants",
    "MinimumReport",
    "build_min_packet",
    "min_packet_covariances",
    "min_packet_state",
    "mean_energy",
    "internal_energy",
    "energy_split",
    "squeezing_factors",
    "min_packet_squeezing",
    "universal_invariants",
    "verify_minimum",
    "verify_center_minimum",
    "SubPoissonOptimum",
    "VarianceReport",
    "angular_momentum_stats",
    "energy_stats",
    "mean_l_squared",
    "sigma_l",
    "sigma_e",
    "subpoisson_optimum",
    "variance_report",
    "wick_fourth_moment",
    "LGMode",
    "FockCoefficients",
    "lg_mode_eval",
    "coherent_coeffs",
    "squeezed_coeffs",
    "corotating_coeffs",
    "antirotating_coeffs",
    "fock_coefficients",
    "generating_function",
    "generating_derivatives",
    "pk_asymptotic",
    "EvolutionContext",
    "FreeEvolutionRecord",
    "ShrinkAnalysis",
    "FreeAsymptotics",
    "evolve_oscillator",
    "evolve_magnetic",
    "magnetic_energy",
    "evolve_free",
    "shrink_analysis",
    "free_asymptotics",
    "CheckResult",
    "run_checks",
]
