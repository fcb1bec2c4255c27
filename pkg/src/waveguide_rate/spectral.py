"""Per-mode spectral integrals and the truncated transverse mode sum.

The longitudinal continuum limit turns each transverse mode into the
semi-infinite integral

    F(n1, n2; beta) = integral_0^inf dx  ln[ 1 / (1 - e^{-beta f(n1, n2, x)}) ],

a Bose-gas log-partition density over the guided dispersion branch.  Since
the dispersion depends on (n1, n2) only through kappa = sqrt(n1^2 + n2^2)
and is homogeneous of degree one, the whole two-parameter family collapses
to a single special function of one variable,

    Phi(t) = integral_0^inf du  ln[ 1 / (1 - e^{-t g(u)}) ],
    g(u)   = (u + sqrt(u^2 + 4)) / 2,

with F(n1, n2; beta) = kappa * Phi(beta * kappa).  Two independent
evaluations of Phi are provided:

* ``phi`` / ``phi_deriv``: adaptive quadrature, split at the point where the
  integrand has decayed by ~35 e-foldings, with the remaining tail handled
  through an exponential substitution.  This is the canonical, error-reporting
  path.
* ``phi_series`` / ``phi_deriv_series``: expansion of the logarithm into
  ln(1/(1-z)) = sum z^m / m, which reduces each term to exponential
  integrals, integral_0^inf e^{-s g(u)} du = e^{-s}/s + E2(s).  The series
  converges geometrically and vectorizes over thousands of arguments, so the
  large mode sums use it; tests pin the two paths against each other.

The mode sum

    W(beta) = sum_{n1,n2>=1} F(n1,n2;beta) + sum_{n1>=1} F(n1,0;beta)

equals half the species-degeneracy-weighted sum over the full TE/TM mode
multiset.  It is truncated over the quarter disk kappa <= K with an analytic
tail envelope (see ``term_envelope``) integrated over the excluded region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .dispersion import freq_ratio_radial
from .modes import (
    interior_kappa_multiset,
    rectangular_edge_kappas,
    rectangular_interior_kappas,
)

__all__ = [
    "ToleranceConfig",
    "SpectralValue",
    "TruncationError",
    "DEFAULT_TOL",
    "phi",
    "phi_deriv",
    "phi_series",
    "phi_deriv_series",
    "mode_spectral_term",
    "mode_spectral_term_deriv",
    "term_envelope",
    "term_deriv_envelope",
    "capacity_sum",
    "capacity_sum_deriv",
]

# e-foldings of integrand decay before switching to the substituted tail
_TAIL_EFOLDS = 35.0
# arguments beyond this underflow e^{-t} in float64
_T_UNDERFLOW = 700.0


class TruncationError(RuntimeError):
    """Transverse cutoff cap reached before the tail bound was met."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Error-control knobs shared by the quadrature, summation and solver layers.

    sum_tail_tol is relative to the running partial sum; root_rel_tol is
    relative to the root-equation scale (gamma / pi).
    """

    quad_rel_tol: float = 1e-10
    sum_tail_tol: float = 1e-10
    root_rel_tol: float = 1e-10
    series_rel_tol: float = 1e-14
    max_transverse_cutoff: int = 10**6
    max_root_iterations: int = 200

    def __post_init__(self):
        for name in ("quad_rel_tol", "sum_tail_tol", "root_rel_tol", "series_rel_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.max_transverse_cutoff < 1 or self.max_root_iterations < 1:
            raise ValueError("cutoff cap and iteration cap must be >= 1")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class SpectralValue:
    """A computed spectral quantity with its error estimate."""

    value: float
    est_error: float
    terms_used: int

    def __post_init__(self):
        if self.est_error < 0:
            raise ValueError("est_error must be nonnegative")


def _g(u):
    """Reduced dispersion branch g(u) = (u + sqrt(u^2 + 4)) / 2 = f(1, 0, u)."""
    return freq_ratio_radial(1.0, u)


def _log_bose(x):
    """ln[1 / (1 - e^{-x})] for x > 0, stable for both tiny and huge x."""
    return -np.log1p(-np.exp(-x))


def _bose_occupancy(x):
    """1 / (e^x - 1) computed as e^{-x} / (1 - e^{-x}); underflows cleanly."""
    ex = np.exp(-x)
    return ex / (1.0 - ex)


# --- quadrature evaluation ---------------------------------------------------

def _split_point(t: float) -> float:
    """u* with t * g(u*) = _TAIL_EFOLDS, or 0 if already past it at u = 0."""
    G = _TAIL_EFOLDS / t
    if G <= 1.0:
        return 0.0
    return G - 1.0 / G  # inverse of g


def _split_quadrature(integrand, t: float, rel_tol: float) -> tuple[float, float, int]:
    """Integrate ``integrand(u, t)`` over [0, inf) with the split strategy."""
    ustar = _split_point(t)
    if ustar > 0.0:
        head, head_err, info = integrate.quad(
            integrand, 0.0, ustar, args=(t,), epsabs=0.0, epsrel=rel_tol,
            limit=200, full_output=1,
        )
        neval = info["neval"]
    else:
        head, head_err, neval = 0.0, 0.0, 0

    def tail_integrand(v):
        # u = u* - ln(v)/t maps (0, 1] onto [u*, inf)
        u = ustar - math.log(v) / t
        return integrand(u, t) / (t * v)

    eps_abs = max(1e-300, 1e-16 * abs(head))
    eps_rel = rel_tol if ustar == 0.0 else 1e-8
    tail, tail_err, info = integrate.quad(
        tail_integrand, 0.0, 1.0, epsabs=eps_abs, epsrel=eps_rel,
        limit=200, full_output=1,
    )
    return head + tail, head_err + tail_err, neval + info["neval"]


def phi(t: float, tol: ToleranceConfig = DEFAULT_TOL) -> SpectralValue:
    """The reduced spectral function Phi(t), by adaptive quadrature.

    Parameters
    ----------
    t : float
        Positive scaled argument (beta * kappa for a physical mode).
    tol : ToleranceConfig
        quad_rel_tol controls the target relative error.

    Returns
    -------
    SpectralValue
        value ~ Phi(t) > 0, est_error from the quadrature routine,
        terms_used = number of integrand evaluations.
    """
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    value, err, neval = _split_quadrature(
        lambda u, tt: _log_bose(tt * _g(u)), t, tol.quad_rel_tol
    )
    return SpectralValue(value, err, neval)


def phi_deriv(t: float, tol: ToleranceConfig = DEFAULT_TOL) -> SpectralValue:
    """dPhi/dt = -integral_0^inf g(u) / (e^{t g(u)} - 1) du, strictly negative."""
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    value, err, neval = _split_quadrature(
        lambda u, tt: _g(u) * _bose_occupancy(tt * _g(u)), t, tol.quad_rel_tol
    )
    return SpectralValue(-value, err, neval)


# --- series evaluation -------------------------------------------------------

def _series_sum(t: np.ndarray, efolds: float, summand) -> np.ndarray:
    """sum_m summand(m, m*t) for m = 1.. until the e^{-mt} tail is negligible.

    Arguments are bucketed by the required term count M(t) ~ efolds/t so the
    m-grid is shared within a bucket; buckets are chunked to bound the size
    of the (M x chunk) work array.  Entries with t past the float64
    underflow point contribute zero.
    """
    out = np.zeros_like(t)
    live = np.nonzero(t < _T_UNDERFLOW)[0]
    if live.size == 0:
        return out
    tl = t[live]
    res = np.zeros_like(tl)
    need = np.ceil(efolds / tl).astype(np.int64) + 4
    buckets = 2 ** np.ceil(np.log2(need.astype(float))).astype(np.int64)
    for mb in np.unique(buckets):
        sel = np.nonzero(buckets == mb)[0]
        step = max(1, int(8e6 // mb))
        m = np.arange(1, mb + 1, dtype=float)[:, None]
        for i in range(0, sel.size, step):
            idx = sel[i : i + step]
            res[idx] = summand(m, m * tl[idx][None, :]).sum(axis=0)
    out[live] = res
    return out


def phi_series(t, series_rel_tol: float = DEFAULT_TOL.series_rel_tol):
    """Vectorized Phi via the Bose log-series; agrees with ``phi`` to ~1e-13.

    Each term of ln(1/(1-z)) = sum_m z^m / m integrates in closed form:
    (1/m) * [e^{-mt}/(mt) + E2(mt)].  Accepts a scalar or array of positive
    arguments and mirrors the input shape.
    """
    arr = np.asarray(t, dtype=float)
    if arr.size and np.any(arr <= 0):
        raise ValueError("arguments must be positive")
    flat = np.atleast_1d(arr).ravel()
    res = _series_sum(
        flat,
        -math.log(series_rel_tol) + 4.0,
        lambda m, s: (np.exp(-s) / s + special.expn(2, s)) / m,
    )
    return res.reshape(arr.shape) if arr.ndim else float(res[0])


def phi_deriv_series(t, series_rel_tol: float = DEFAULT_TOL.series_rel_tol):
    """Vectorized dPhi/dt via the same series, strictly negative.

    Differentiating each log-series term cancels the 1/m weight:
    dPhi/dt = -sum_m [e^{-mt} (1/(mt) + 1/(mt)^2) + E1(mt)].
    """
    arr = np.asarray(t, dtype=float)
    if arr.size and np.any(arr <= 0):
        raise ValueError("arguments must be positive")
    flat = np.atleast_1d(arr).ravel()
    res = _series_sum(
        flat,
        -math.log(series_rel_tol) + 4.0,
        lambda m, s: np.exp(-s) * (1.0 / s + 1.0 / s**2) + special.exp1(s),
    )
    res = -res
    return res.reshape(arr.shape) if arr.ndim else float(res[0])


# --- single mode terms and their envelopes ----------------------------------

def _validated_kappa(n1: int, n2: int) -> float:
    if n1 < 0 or n2 < 0:
        raise ValueError(f"negative mode index ({n1}, {n2})")
    if n1 == 0 and n2 == 0:
        raise ValueError("(n1, n2) = (0, 0) is excluded")
    return float(np.hypot(n1, n2))


def mode_spectral_term(n1: int, n2: int, beta: float,
                       tol: ToleranceConfig = DEFAULT_TOL) -> SpectralValue:
    """F(n1, n2; beta) = kappa * Phi(beta * kappa); positive, decreasing in beta."""
    kappa = _validated_kappa(n1, n2)
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    p = phi(beta * kappa, tol)
    return SpectralValue(kappa * p.value, kappa * p.est_error, p.terms_used)


def mode_spectral_term_deriv(n1: int, n2: int, beta: float,
                             tol: ToleranceConfig = DEFAULT_TOL) -> SpectralValue:
    """dF/dbeta = kappa^2 * Phi'(beta * kappa); strictly negative."""
    kappa = _validated_kappa(n1, n2)
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    p = phi_deriv(beta * kappa, tol)
    return SpectralValue(kappa * kappa * p.value, kappa * kappa * p.est_error,
                         p.terms_used)


def term_envelope(n1: int, n2: int, beta: float) -> float:
    """Analytic upper bound on F(n1, n2; beta), used by the sum truncation.

    From ln(1/(1-z)) <= z/(1-z) with z = e^{-t g(u)} <= e^{-t}, and
    integral e^{-t g(u)} du <= 2 e^{-t} / t:

        F <= 2 e^{-beta kappa} / (beta (1 - e^{-beta kappa})).
    """
    kappa = _validated_kappa(n1, n2)
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    x = beta * kappa
    return 2.0 * math.exp(-x) / (beta * -math.expm1(-x))


def term_deriv_envelope(n1: int, n2: int, beta: float) -> float:
    """Analytic upper bound on |dF/dbeta|:

        |dF/dbeta| <= (2 kappa / beta + 1 / beta^2)
                      * e^{-beta kappa} / (1 - e^{-beta kappa}).
    """
    kappa = _validated_kappa(n1, n2)
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    x = beta * kappa
    return (2.0 * kappa / beta + 1.0 / beta**2) * math.exp(-x) / -math.expm1(-x)


# --- truncated mode sums -----------------------------------------------------

_SPECIES_CHOICES = ("both", "te", "tm")


def _interior_tail(beta: float, cutoff: float, diag: float, deriv: bool) -> float:
    """Envelope integral over the excluded interior region kappa > cutoff.

    Each excluded pair's lattice cell (diagonal ``diag``) lies in the quarter
    plane at radius > cutoff - diag, so the lattice sum is dominated by
    (pi/2) integral r dr of the (decreasing) envelope.  Valid whenever
    beta * cutoff is large enough that the envelope decreases in kappa,
    guaranteed by the caller's choice of starting cutoff.
    """
    a = max(cutoff - diag, 0.0)
    occ = 1.0 / -math.expm1(-beta * cutoff)  # bounds 1/(1 - e^{-beta kappa})
    ea = math.exp(-beta * a)
    b = beta
    if not deriv:
        return (2.0 / b * occ) * (math.pi / 2.0) * ea * (1.0 + b * a) / b**2
    # envelope (2 r / b + 1 / b^2) e^{-b r} occ, integrated exactly
    j2 = ea * (a * a / b + 2.0 * a / b**2 + 2.0 / b**3)
    j1 = ea * (a / b + 1.0 / b**2)
    return occ * (math.pi / 2.0) * (2.0 / b * j2 + j1 / b**2)


def _edge_tail(beta: float, cutoff: float, spacing: float, deriv: bool) -> float:
    """Envelope integral over one excluded edge family kappa = n * spacing > cutoff."""
    a = max(cutoff - spacing, 0.0)
    occ = 1.0 / -math.expm1(-beta * cutoff)
    ea = math.exp(-beta * a)
    b = beta
    if not deriv:
        return (2.0 / b * occ) * ea / b / spacing
    j1 = ea * (a / b + 1.0 / b**2)
    j0 = ea / b
    return occ * (2.0 / b * j1 + j0 / b**2) / spacing


def _species_plan(species: str) -> tuple[float, bool]:
    """Interior weight and edge inclusion for a species selection.

    The full sum counts interior pairs once for each of TE and TM and each
    edge family once (TM only); the half sums split accordingly:
    both = interior + edges, te = interior / 2, tm = interior / 2 + edges,
    where "edges" means the two families (n, 0) and (0, n) at weight 1/2
    each (they coincide on the square lattice).
    """
    if species not in _SPECIES_CHOICES:
        raise ValueError(f"species must be one of {_SPECIES_CHOICES}, got {species!r}")
    interior_weight = 1.0 if species == "both" else 0.5
    include_edge = species != "te"
    return interior_weight, include_edge


def _lattice_sum(beta: float, tol: ToleranceConfig, species: str,
                 aspect_ratio: float, deriv: bool) -> SpectralValue:
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    if aspect_ratio <= 0:
        raise ValueError(f"aspect ratio must be positive, got {aspect_ratio}")
    interior_weight, include_edge = _species_plan(species)
    r = float(aspect_ratio)
    square = r == 1.0
    diag = math.hypot(r, 1.0 / r)

    def band_sum(kappas: np.ndarray) -> float:
        if kappas.size == 0:
            return 0.0
        if deriv:
            return float(np.sum(kappas**2 * phi_deriv_series(beta * kappas,
                                                             tol.series_rel_tol)))
        return float(np.sum(kappas * phi_series(beta * kappas, tol.series_rel_tol)))

    # starting cutoff gives beta * K ~ 48 e-foldings, usually one-shot
    cutoff = max(8.0, math.ceil(48.0 / beta))
    while True:
        if cutoff * max(r, 1.0 / r) > tol.max_transverse_cutoff:
            raise TruncationError(
                f"transverse cutoff cap {tol.max_transverse_cutoff} reached at "
                f"beta = {beta}; tail bound not met"
            )
        if square:
            kap, cnt = interior_kappa_multiset(int(cutoff))
            if deriv:
                vals = kap * kap * phi_deriv_series(beta * kap, tol.series_rel_tol)
            else:
                vals = kap * phi_series(beta * kap, tol.series_rel_tol)
            interior = float(np.dot(vals, cnt))
            n_terms = int(cnt.sum())
            edge_families = [(np.arange(1.0, math.floor(cutoff) + 1.0), 1.0, 1.0)]
        else:
            kap = rectangular_interior_kappas(cutoff, r)
            interior = band_sum(kap)
            n_terms = kap.size
            edge_families = [
                (rectangular_edge_kappas(cutoff, r), 0.5, r),
                (rectangular_edge_kappas(cutoff, 1.0 / r), 0.5, 1.0 / r),
            ]

        value = interior_weight * interior
        tail = interior_weight * _interior_tail(beta, cutoff, diag, deriv)
        if include_edge:
            for family, weight, spacing in edge_families:
                value += weight * band_sum(family)
                tail += weight * _edge_tail(beta, cutoff, spacing, deriv)
                n_terms += family.size

        if tail <= tol.sum_tail_tol * abs(value):
            est = tail + abs(value) * tol.series_rel_tol
            return SpectralValue(value, est, n_terms)
        cutoff = math.ceil(cutoff * 1.4)


def capacity_sum(beta: float, tol: ToleranceConfig = DEFAULT_TOL, *,
                 species: str = "both", aspect_ratio: float = 1.0) -> SpectralValue:
    """The transverse mode sum W(beta), truncated with a certified tail bound.

    W(beta) = sum over interior pairs (n1, n2 >= 1) of F(n1, n2; beta) plus
    the edge sum over (n1 >= 1, 0); equivalently half the degeneracy-weighted
    sum over the full TE/TM multiset.  Positive, strictly decreasing and
    convex in beta, with W(beta) -> pi^5 / (120 beta^3) in the continuum
    limit beta -> 0.

    Parameters
    ----------
    beta : float
        Positive dimensionless multiplier.
    tol : ToleranceConfig
        sum_tail_tol (relative) controls truncation; max_transverse_cutoff
        caps the lattice, raising TruncationError when insufficient.
    species : {"both", "te", "tm"}
        Restrict to one mode species (half sums); default is the full sum.
    aspect_ratio : float
        Lattice anisotropy r = sqrt(L2/L1).  Values other than 1 are an
        extension beyond the square-guide sum, validated only against the
        area-law asymptote.
    """
    return _lattice_sum(beta, tol, species, aspect_ratio, deriv=False)


def capacity_sum_deriv(beta: float, tol: ToleranceConfig = DEFAULT_TOL, *,
                       species: str = "both", aspect_ratio: float = 1.0) -> SpectralValue:
    """dW/dbeta, the termwise derivative sum: strictly negative, increasing."""
    return _lattice_sum(beta, tol, species, aspect_ratio, deriv=True)
