"""Computable Dunkl analysis for the sign-change groups Z_2^N.

The package covers the one-dimensional (rank-one) theory and its
tensor-product extension: normalized Bessel kernels, hypergroup
convolutions of radial measures, signed product and spherical-mean
measures, the Dunkl transform on weighted grids, heat and Cauchy
transition kernels with exact path samplers, and a verification
battery that re-derives every identity by at least two routes.
"""

from .bessel_kingman import (
    cauchy_density,
    cauchy_measure,
    cauchy_radial_cdf,
    convolve_measures,
    convolve_points,
    hankel_transform,
    rayleigh_density,
    rayleigh_measure,
    rayleigh_radial_cdf,
    stable_half_subordinator,
    subordinate,
)
from .core import (
    MultiplicityVector,
    alternating_sum_bessel,
    dunkl_kernel,
    dunkl_kernel_unitary,
    dunkl_laplacian,
    dunkl_operator,
    generalized_bessel,
    generalized_bessel_unitary,
    group_elements,
    intertwiner_atoms,
    weight,
)
from .errors import (
    ConfigError,
    ConsistencyError,
    DunklKitError,
    NumericalError,
    PositivityError,
    QuadratureError,
    ResolutionError,
)
from .harmonics import (
    SphereQuadrature,
    addition_theorem_residual,
    apply_laplacian,
    eval_homogeneous,
    funk_hecke_pair,
    harmonic_basis,
    harmonic_basis_json,
    kernel_series,
    laplacian_coefficient,
    orbit_integral,
    plane_wave_residual,
    radialize_kernel,
    reproducing_kernel,
    sphere_moment,
)
from .markov import (
    KernelSemigroup,
    KRadialMeasure,
    MarkovKernelHandle,
    PathEnsemble,
    PathSample,
    build_semigroup,
    convolve_k,
    marginal_ks,
    radial_hat,
    semigroup_from_json,
    simulate_paths,
    translate_measure,
)
from .measures import (
    LineMeasure,
    RadialProfileMeasure,
    SignedLineMeasure,
    as_weighted_atoms,
    dirac,
    measure_from_json,
    measure_to_json,
)
from .rank_one import (
    intertwiner_measure,
    kernel_real,
    kernel_unitary,
    kernel_value,
    signed_product_measure,
    spherical_mean,
    spherical_mean_measure,
)
from .special import bessel_j, bessel_j_imag, gegenbauer
from .transform import (
    GridFunction,
    TransformPlan,
    bump,
    chapman_kolmogorov_defect,
    darboux_residual,
    dunkl_transform_grid,
    heat_kernel,
    heat_kernel_spectral,
    heat_normalization_defect,
    radial_bump,
    radial_heat_profile,
    radial_translate,
    spherical_mean_radial,
    spherical_mean_spectral,
    spherical_mean_wave,
    translated_normalization_defect,
)
from .verify import TOLERANCES, SuiteReport, run_all, run_suite, suite_names

__version__ = "0.1.0"

__all__ = [
    "addition_theorem_residual",
    "alternating_sum_bessel",
    "apply_laplacian",
    "as_weighted_atoms",
    "bessel_j",
    "bessel_j_imag",
    "build_semigroup",
    "bump",
    "cauchy_density",
    "cauchy_measure",
    "cauchy_radial_cdf",
    "chapman_kolmogorov_defect",
    "ConfigError",
    "ConsistencyError",
    "convolve_k",
    "convolve_measures",
    "convolve_points",
    "darboux_residual",
    "dirac",
    "dunkl_kernel",
    "dunkl_kernel_unitary",
    "dunkl_laplacian",
    "dunkl_operator",
    "dunkl_transform_grid",
    "DunklKitError",
    "eval_homogeneous",
    "funk_hecke_pair",
    "gegenbauer",
    "generalized_bessel",
    "generalized_bessel_unitary",
    "GridFunction",
    "group_elements",
    "hankel_transform",
    "harmonic_basis",
    "harmonic_basis_json",
    "heat_kernel",
    "heat_kernel_spectral",
    "heat_normalization_defect",
    "intertwiner_atoms",
    "intertwiner_measure",
    "kernel_real",
    "kernel_series",
    "kernel_unitary",
    "kernel_value",
    "KernelSemigroup",
    "KRadialMeasure",
    "laplacian_coefficient",
    "LineMeasure",
    "marginal_ks",
    "MarkovKernelHandle",
    "measure_from_json",
    "measure_to_json",
    "MultiplicityVector",
    "NumericalError",
    "orbit_integral",
    "PathEnsemble",
    "PathSample",
    "plane_wave_residual",
    "PositivityError",
    "QuadratureError",
    "radial_bump",
    "radial_hat",
    "radial_heat_profile",
    "radial_translate",
    "radialize_kernel",
    "RadialProfileMeasure",
    "rayleigh_density",
    "rayleigh_measure",
    "rayleigh_radial_cdf",
    "reproducing_kernel",
    "ResolutionError",
    "run_all",
    "run_suite",
    "semigroup_from_json",
    "signed_product_measure",
    "SignedLineMeasure",
    "simulate_paths",
    "sphere_moment",
    "SphereQuadrature",
    "spherical_mean",
    "spherical_mean_measure",
    "spherical_mean_radial",
    "spherical_mean_spectral",
    "spherical_mean_wave",
    "stable_half_subordinator",
    "subordinate",
    "suite_names",
    "SuiteReport",
    "TOLERANCES",
    "TransformPlan",
    "translate_measure",
    "translated_normalization_defect",
    "weight",
]
