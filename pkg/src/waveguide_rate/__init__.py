"""Maximum information rate of an ideal rectangular metallic waveguide.

Computes the power-constrained communication rate of a lossless rectangular
waveguide: exact discrete-mode evaluation via a one-dimensional multiplier
solve, high-power closed forms, the broadband single-direction rate, and a
self-verification layer of independent quadrature oracles.
"""

from .capacity import (
    C_LIGHT,
    HBAR,
    BracketingError,
    DimensionlessPoint,
    DirectionSpec,
    PhysicalChannelSpec,
    RateSolution,
    beta0_asymptotic,
    gamma_of,
    lambda0_asymptotic,
    rate_asymptotic_dimensionless,
    rate_caves_variant_physical,
    rate_dimensionless,
    rate_multimode_physical,
    rate_single_direction,
    solve_beta0,
)
from .dispersion import WaveTriple, freq_ratio, freq_ratio_radial
from .modes import (
    ChannelGeometry,
    ModeIndex,
    Species,
    WeightedTransversePair,
    enumerate_transverse,
    sorted_by_kappa,
)
from .spectral import (
    DEFAULT_TOL,
    SpectralValue,
    ToleranceConfig,
    TruncationError,
    capacity_sum,
    capacity_sum_deriv,
    mode_spectral_term,
    mode_spectral_term_deriv,
    phi,
    phi_deriv,
    phi_deriv_series,
    phi_series,
    term_deriv_envelope,
    term_envelope,
)
from .verify import OracleReport, default_suite

__version__ = "0.1.0"
