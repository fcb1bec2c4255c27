"""Transverse mode lattice of the rectangular waveguide.

Propagating modes carry a pair of nonnegative transverse indices (n1, n2),
excluding (0, 0), and come in two species: TE modes require both indices
>= 1, TM modes allow a single zero index.  Interior index pairs therefore
host both species (degeneracy 2) while edge pairs (n, 0) and (0, n) host a
single one (degeneracy 1).  Everything downstream consumes either the
explicit weighted pair list built here or, for large cutoffs, the collapsed
multiset of transverse magnitudes kappa = sqrt(n1^2 + n2^2) with pair
counts, which this module caches.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Species",
    "ModeIndex",
    "WeightedTransversePair",
    "ChannelGeometry",
    "enumerate_transverse",
    "sorted_by_kappa",
    "interior_kappa_multiset",
    "rectangular_interior_kappas",
    "rectangular_edge_kappas",
]


class Species(enum.Enum):
    """Mode species label."""

    TE = "TE"
    TM = "TM"


@dataclass(frozen=True)
class ModeIndex:
    """One transverse waveguide mode: index pair plus species tag.

    TE requires n1 >= 1 and n2 >= 1; TM allows a zero index but not both.
    """

    n1: int
    n2: int
    species: Species

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError(f"negative mode index ({self.n1}, {self.n2})")
        if self.n1 == 0 and self.n2 == 0:
            raise ValueError("(n1, n2) = (0, 0) is excluded")
        if self.species is Species.TE and (self.n1 < 1 or self.n2 < 1):
            raise ValueError(f"TE modes need n1, n2 >= 1, got ({self.n1}, {self.n2})")

    @property
    def kappa(self) -> float:
        return float(np.hypot(self.n1, self.n2))


@dataclass(frozen=True)
class WeightedTransversePair:
    """Transverse index pair with its species degeneracy (1 or 2)."""

    n1: int
    n2: int
    degeneracy: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0 or (self.n1 == 0 and self.n2 == 0):
            raise ValueError(f"invalid index pair ({self.n1}, {self.n2})")
        expected = 2 if (self.n1 >= 1 and self.n2 >= 1) else 1
        if self.degeneracy != expected:
            raise ValueError(
                f"pair ({self.n1}, {self.n2}) must have degeneracy {expected}, "
                f"got {self.degeneracy}"
            )

    @property
    def kappa(self) -> float:
        return float(np.hypot(self.n1, self.n2))


@dataclass(frozen=True)
class ChannelGeometry:
    """Transverse dimensions of the guide, in meters."""

    L1: float
    L2: float

    def __post_init__(self):
        if self.L1 <= 0 or self.L2 <= 0:
            raise ValueError(f"transverse dimensions must be positive, got {self}")

    @property
    def area(self) -> float:
        """Cross-sectional area L1 * L2 in m^2."""
        return self.L1 * self.L2

    @property
    def aspect_ratio(self) -> float:
        """Lattice anisotropy r = sqrt(L2 / L1); r = 1 for a square guide."""
        return float(np.sqrt(self.L2 / self.L1))

    @property
    def is_square(self) -> bool:
        return self.L1 == self.L2


def enumerate_transverse(cutoff: int) -> list[WeightedTransversePair]:
    """All transverse pairs with max(n1, n2) <= cutoff and their degeneracies.

    Interior pairs (n1 >= 1, n2 >= 1) carry degeneracy 2 (TE and TM),
    edge pairs (n, 0) and (0, n) carry degeneracy 1 (TM only).  The
    degeneracy-weighted count is exactly 2 N^2 + 2 N for cutoff N.
    """
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    pairs = [
        WeightedTransversePair(n1, n2, 2)
        for n1 in range(1, cutoff + 1)
        for n2 in range(1, cutoff + 1)
    ]
    for n in range(1, cutoff + 1):
        pairs.append(WeightedTransversePair(n, 0, 1))
        pairs.append(WeightedTransversePair(0, n, 1))
    return pairs


def sorted_by_kappa(pairs: list[WeightedTransversePair]) -> list[WeightedTransversePair]:
    """Stable sort by ascending kappa, ties broken by (n1, n2).

    Sorting on the integer kappa^2 avoids any floating-point tie ambiguity.
    """
    if not pairs:
        raise ValueError("empty pair list")
    return sorted(pairs, key=lambda p: (p.n1 * p.n1 + p.n2 * p.n2, p.n1, p.n2))


# --- collapsed kappa multisets for large-cutoff summation -------------------
#
# For cutoffs in the thousands the explicit pair list is wasteful: many pairs
# share the same integer kappa^2 = n1^2 + n2^2, and the per-mode spectral
# integral depends on the pair only through kappa.  The helpers below return
# (kappa values, pair counts) as float arrays restricted to the quarter disk
# kappa <= cutoff, which is the natural truncation region for tail bounds.
# The square-lattice multiset is cached and grown monotonically; contents
# depend only on the cutoff, never on call order.

_cache_lock = threading.Lock()
_cached_cutoff: int = 0
_cached_k2: np.ndarray = np.empty(0, dtype=np.int64)
_cached_counts: np.ndarray = np.empty(0, dtype=np.int64)


def _build_interior(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(1, cutoff + 1, dtype=np.int64)
    k2 = (n[:, None] ** 2 + n[None, :] ** 2).ravel()
    k2 = k2[k2 <= cutoff * cutoff]
    counts = np.bincount(k2)
    vals = np.nonzero(counts)[0]
    return vals, counts[vals]


def interior_kappa_multiset(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct kappa values and pair counts for n1, n2 >= 1, kappa <= cutoff.

    Returns (kappa, count) float arrays with kappa ascending.  Cached: the
    lattice is built once for the largest cutoff seen and sliced for smaller
    requests.
    """
    global _cached_cutoff, _cached_k2, _cached_counts
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    with _cache_lock:
        if cutoff > _cached_cutoff:
            # round up to limit rebuild churn during adaptive growth
            build = max(cutoff, int(_cached_cutoff * 1.3))
            _cached_k2, _cached_counts = _build_interior(build)
            _cached_cutoff = build
        hi = np.searchsorted(_cached_k2, cutoff * cutoff, side="right")
        k2 = _cached_k2[:hi]
        counts = _cached_counts[:hi]
    return np.sqrt(k2.astype(float)), counts.astype(float)


def rectangular_interior_kappas(cutoff: float, aspect_ratio: float) -> np.ndarray:
    """Effective kappa values for an anisotropic lattice, one entry per pair.

    For a guide with aspect ratio r = sqrt(L2/L1) the scaled transverse
    magnitude of the pair (n1, n2) is sqrt((n1 r)^2 + (n2 / r)^2).  Returns
    all interior-pair values <= cutoff, unsorted and uncollapsed (distinct
    pairs rarely coincide off the square lattice).
    """
    r = float(aspect_ratio)
    if r <= 0:
        raise ValueError(f"aspect ratio must be positive, got {r}")
    n1_max = int(np.floor(cutoff / r))
    n2_max = int(np.floor(cutoff * r))
    if n1_max < 1 or n2_max < 1:
        return np.empty(0)
    n1 = np.arange(1, n1_max + 1, dtype=float) * r
    n2 = np.arange(1, n2_max + 1, dtype=float) / r
    k = np.hypot(n1[:, None], n2[None, :]).ravel()
    return k[k <= cutoff]


def rectangular_edge_kappas(cutoff: float, aspect_ratio: float) -> np.ndarray:
    """Effective kappa values of the edge pairs (n, 0), n >= 1, up to cutoff."""
    r = float(aspect_ratio)
    if r <= 0:
        raise ValueError(f"aspect ratio must be positive, got {r}")
    n_max = int(np.floor(cutoff / r))
    return np.arange(1, n_max + 1, dtype=float) * r
