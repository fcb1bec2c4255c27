"""Capacity-achieving multiplier and information rates of the waveguide.

The entropy-maximizing input state under an average-power constraint is
thermal, which reduces the whole optimization to a one-dimensional root
solve: find the dimensionless multiplier beta0 with

    W'(beta0) = -gamma / pi,        gamma = A P / (c^2 hbar),

after which the maximum rate in bits per unit time follows from

    R sqrt(A) / c = [gamma beta0 / pi + W(beta0)] / ln 2.

W' is strictly increasing (log-convexity of the partition function), so the
root is unique; it always sits below the continuum-limit guess
beta* = (g pi^6 / (80 gamma))^{1/4} because the discrete mode sum
undercounts the continuum.  The solver brackets the root around beta* and
polishes with safeguarded Newton steps, falling back to bisection whenever a
step leaves the bracket.

Closed forms provided alongside the exact solve: the high-power asymptote
R -> (4 / (3 ln 2)) (g pi^2 A / (80 c^2))^{1/4} (P / hbar)^{3/4}, the
matching multiplier asymptote, the alternative cos(theta)-weighted
maximization (smaller by (3/2)^{1/4}), and the broadband single-direction
rate R = (cos(theta) / ln 2) sqrt(pi P / (3 hbar)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .modes import ChannelGeometry
from .spectral import (
    DEFAULT_TOL,
    SpectralValue,
    ToleranceConfig,
    capacity_sum,
    capacity_sum_deriv,
)

__all__ = [
    "C_LIGHT",
    "HBAR",
    "DimensionlessPoint",
    "RateSolution",
    "PhysicalChannelSpec",
    "DirectionSpec",
    "BracketingError",
    "gamma_of",
    "beta0_asymptotic",
    "solve_beta0",
    "rate_dimensionless",
    "rate_asymptotic_dimensionless",
    "rate_multimode_physical",
    "lambda0_asymptotic",
    "rate_caves_variant_physical",
    "rate_single_direction",
]

# CODATA defaults; overridable per PhysicalChannelSpec
C_LIGHT = 299792458.0          # m/s
HBAR = 1.054571817e-34         # J s

_LN2 = math.log(2.0)


class BracketingError(RuntimeError):
    """The multiplier solve failed to bracket or converge on the root."""


@dataclass(frozen=True)
class DimensionlessPoint:
    """The scaled problem state: power parameter gamma, multiplier beta."""

    gamma: float
    beta: float

    def __post_init__(self):
        if self.gamma <= 0 or self.beta <= 0:
            raise ValueError(f"gamma and beta must be positive, got {self}")


@dataclass(frozen=True)
class RateSolution:
    """Output bundle of the multiplier solve at one gamma."""

    gamma: float
    beta0: float
    w_at_beta0: float
    rate_dimensionless: float
    rate_asymptotic: float
    ratio: float
    residual: float
    iterations: int


@dataclass(frozen=True)
class PhysicalChannelSpec:
    """A physical channel: geometry, input power and species/constants config."""

    geometry: ChannelGeometry
    power: float                      # average power, watts
    species_count: int = 2            # 2 = TE + TM, 1 = single species
    c: float = C_LIGHT
    hbar: float = HBAR

    def __post_init__(self):
        if self.power <= 0:
            raise ValueError(f"power must be positive, got {self.power}")
        if self.species_count not in (1, 2):
            raise ValueError(f"species_count must be 1 or 2, got {self.species_count}")
        if self.c <= 0 or self.hbar <= 0:
            raise ValueError("physical constants must be positive")


@dataclass(frozen=True)
class DirectionSpec:
    """A single propagation direction (polar theta, azimuth phi)."""

    theta: float
    phi: float = 0.0
    species_count: int = 1

    def __post_init__(self):
        if not 0.0 <= self.theta < math.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2), got {self.theta}")
        if not 0.0 <= self.phi <= math.pi / 2:
            raise ValueError(f"phi must lie in [0, pi/2], got {self.phi}")
        if self.species_count not in (1, 2):
            raise ValueError(f"species_count must be 1 or 2, got {self.species_count}")


def gamma_of(spec: PhysicalChannelSpec) -> float:
    """Dimensionless power parameter gamma = A P / (c^2 hbar)."""
    return spec.geometry.area * spec.power / (spec.c**2 * spec.hbar)


def beta0_asymptotic(gamma: float, species_count: int = 2) -> float:
    """Continuum-limit multiplier guess beta* = (g pi^6 / (80 gamma))^{1/4}."""
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    return (species_count * math.pi**6 / (80.0 * gamma)) ** 0.25


def _species_name(species_count: int) -> str:
    # single-species calculations follow the TM lattice, which includes the
    # edge modes; asymptotics are insensitive to the choice
    return "both" if species_count == 2 else "tm"


def _solve(gamma: float, tol: ToleranceConfig, species_count: int) -> RateSolution:
    """Bracketed, safeguarded-Newton solve of W'(beta) = -gamma/pi."""
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    species = _species_name(species_count)
    scale = gamma / math.pi
    target = -scale
    evals = 0

    def h(beta: float) -> float:
        nonlocal evals
        evals += 1
        d = capacity_sum_deriv(beta, tol, species=species)
        if not math.isfinite(d.value):
            raise BracketingError(f"non-finite W' at beta = {beta}")
        return d.value - target

    # The discrete sum undercounts the continuum, so h(beta*) > 0 and the
    # root lies below; expand the bracket geometrically on whichever side
    # turns out to need it.
    hi = beta0_asymptotic(gamma, species_count)
    f_hi = h(hi)
    while f_hi < 0.0:
        hi *= 1.6
        f_hi = h(hi)
        if evals > tol.max_root_iterations:
            raise BracketingError(f"no sign change above beta* at gamma = {gamma}")
    lo = hi / 1.6
    f_lo = h(lo)
    while f_lo > 0.0:
        hi, f_hi = lo, f_lo
        lo /= 1.6
        f_lo = h(lo)
        if evals > tol.max_root_iterations:
            raise BracketingError(f"no sign change below beta* at gamma = {gamma}")

    # safeguarded Newton: secant slope from the bracket endpoints, bisection
    # whenever the proposed step escapes or fails to shrink the residual
    beta = 0.5 * (lo + hi)
    f_beta = h(beta)
    prev_beta, prev_f = hi, f_hi
    while abs(f_beta) > tol.root_rel_tol * scale:
        if evals > tol.max_root_iterations:
            raise BracketingError(
                f"multiplier solve exceeded {tol.max_root_iterations} evaluations "
                f"at gamma = {gamma} (residual {abs(f_beta):.3e})"
            )
        if f_beta > 0.0:
            hi, f_hi = beta, f_beta
        else:
            lo, f_lo = beta, f_beta
        slope = (f_beta - prev_f) / (beta - prev_beta) if beta != prev_beta else 0.0
        prev_beta, prev_f = beta, f_beta
        step_ok = False
        if slope > 0.0:
            candidate = beta - f_beta / slope
            step_ok = lo < candidate < hi
        if not step_ok:
            candidate = 0.5 * (lo + hi)
        if candidate == beta:  # interval exhausted at machine precision
            break
        beta = candidate
        f_beta = h(beta)

    w = capacity_sum(beta, tol, species=species)
    rate = (gamma * beta / math.pi + w.value) / _LN2
    asym = rate_asymptotic_dimensionless(gamma, species_count)
    return RateSolution(
        gamma=gamma,
        beta0=beta,
        w_at_beta0=w.value,
        rate_dimensionless=rate,
        rate_asymptotic=asym,
        ratio=rate / asym,
        residual=abs(f_beta),
        iterations=evals,
    )


def solve_beta0(gamma: float, tol: ToleranceConfig = DEFAULT_TOL) -> RateSolution:
    """Solve W'(beta0) = -gamma/pi for the full TE+TM mode sum.

    Returns the complete RateSolution bundle; beta0 satisfies
    |W'(beta0) + gamma/pi| <= root_rel_tol * gamma/pi.
    """
    return _solve(gamma, tol, species_count=2)


def rate_dimensionless(gamma: float, tol: ToleranceConfig = DEFAULT_TOL) -> RateSolution:
    """Exact dimensionless rate R sqrt(A) / c at the given gamma.

    Identical to ``solve_beta0``; the rate fields of the solution are always
    populated.  The ratio field compares against the high-power asymptote
    and approaches 1 from below as gamma grows.
    """
    return _solve(gamma, tol, species_count=2)


def rate_asymptotic_dimensionless(gamma: float, species_count: int = 2) -> float:
    """High-power asymptote of R sqrt(A) / c:

        (4 / (3 ln 2)) * (g pi^2 / 80)^{1/4} * gamma^{3/4}.
    """
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if species_count not in (1, 2):
        raise ValueError(f"species_count must be 1 or 2, got {species_count}")
    g = species_count
    return 4.0 / (3.0 * _LN2) * (g * math.pi**2 / 80.0) ** 0.25 * gamma**0.75


def rate_multimode_physical(spec: PhysicalChannelSpec,
                            tol: ToleranceConfig = DEFAULT_TOL,
                            method: str = "exact") -> float:
    """Multimode rate in bits/second for a physical channel.

    method="asymptotic" evaluates the closed form
    (4 / (3 ln 2)) (g pi^2 A / (80 c^2))^{1/4} (P / hbar)^{3/4} directly;
    method="exact" solves the discrete-mode problem at gamma(spec) and
    rescales by c / sqrt(A).  Non-square geometries use the square-lattice
    mode sum at equal area on the exact path (the asymptote is exact for any
    rectangle).
    """
    g = spec.species_count
    if method == "asymptotic":
        return (4.0 / (3.0 * _LN2)
                * (g * math.pi**2 * spec.geometry.area / (80.0 * spec.c**2)) ** 0.25
                * (spec.power / spec.hbar) ** 0.75)
    if method == "exact":
        gamma = gamma_of(spec)
        sol = _solve(gamma, tol, species_count=g)
        return sol.rate_dimensionless * spec.c / math.sqrt(spec.geometry.area)
    raise ValueError(f"method must be 'exact' or 'asymptotic', got {method!r}")


def lambda0_asymptotic(spec: PhysicalChannelSpec) -> float:
    """High-power multiplier lambda0 = (g pi^2 A / (80 P hbar^3 c^2))^{1/4}, in 1/J.

    Consistent with the dimensionless guess: pi lambda0 hbar c / sqrt(A)
    equals beta0_asymptotic(gamma(spec)).
    """
    g = spec.species_count
    return (g * math.pi**2 * spec.geometry.area
            / (80.0 * spec.power * spec.hbar**3 * spec.c**2)) ** 0.25


def rate_caves_variant_physical(spec: PhysicalChannelSpec) -> float:
    """Asymptotic rate under the cos(theta)-weighted per-mode maximization.

    Same A^{1/4} P^{3/4} scaling with 120 replacing 80 in the prefactor,
    i.e. smaller than the multimode asymptote by (3/2)^{1/4}.
    """
    g = spec.species_count
    return (4.0 / (3.0 * _LN2)
            * (g * math.pi**2 * spec.geometry.area / (120.0 * spec.c**2)) ** 0.25
            * (spec.power / spec.hbar) ** 0.75)


def rate_single_direction(power_over_hbar: float, direction: DirectionSpec) -> float:
    """Broadband rate in bits/second for a single propagation direction:

        R = (cos(theta) / ln 2) * sqrt(pi (P/hbar) / 3) * (sqrt(2) if both species).

    Independent of the azimuth and of the cross-sectional area; the
    cos(theta) accounts for the reduced longitudinal group velocity.
    """
    if power_over_hbar <= 0:
        raise ValueError(f"power_over_hbar must be positive, got {power_over_hbar}")
    rate = math.cos(direction.theta) / _LN2 * math.sqrt(math.pi * power_over_hbar / 3.0)
    if direction.species_count == 2:
        rate *= math.sqrt(2.0)
    return rate
