"""Guided-mode dispersion of a lossless rectangular metallic waveguide.

A mode with transverse wavenumber magnitude kappa and longitudinal
discretization parameter x3 (both scaled to be dimensionless) oscillates at
the scaled frequency

    f(kappa, x3) = (x3 + sqrt(x3^2 + 4 kappa^2)) / 2 .

The more familiar textbook expression 2 kappa^2 / (-x3 + sqrt(x3^2 + 4 kappa^2))
is algebraically identical (multiply through by the conjugate) but suffers
catastrophic cancellation in the denominator when x3 >> kappa, so the
rationalized form above is the canonical evaluation everywhere in this
package.  The longitudinal parameter enters nonlinearly because the
periodic-boundary quantization references the group velocity of the
bouncing ray, not the vacuum speed of light.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["WaveTriple", "freq_ratio", "freq_ratio_radial"]


@dataclass(frozen=True)
class WaveTriple:
    """Scaled wave-vector components in the positive octant.

    x1, x2 are the transverse components, x3 the longitudinal parameter.
    The pair (x1, x2) = (0, 0) is excluded: with no transverse wavenumber
    there is no guided mode and the dispersion function degenerates to 0/0.
    """

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        if self.x1 < 0 or self.x2 < 0 or self.x3 < 0:
            raise ValueError(f"wave components must be nonnegative, got {self}")

    @property
    def kappa(self) -> float:
        """Transverse wavenumber magnitude sqrt(x1^2 + x2^2)."""
        return float(np.hypot(self.x1, self.x2))


def freq_ratio_radial(kappa, x3):
    """Dispersion function in radial form, f = (x3 + sqrt(x3^2 + 4 kappa^2)) / 2.

    Accepts scalars or arrays (broadcast together).  Assumes kappa > 0 and
    x3 >= 0; no validation is performed on array input.  The result is
    >= kappa and >= x3, strictly increasing in both arguments.
    """
    return 0.5 * (x3 + np.hypot(x3, 2.0 * kappa))


def freq_ratio(w: WaveTriple) -> float:
    """Scaled mode frequency of the wave triple ``w``.

    Homogeneous of degree 1 in (x1, x2, x3) and a function of the
    transverse components only through kappa = sqrt(x1^2 + x2^2).

    Raises
    ------
    ValueError
        If (x1, x2) = (0, 0), which is not a guided mode.
    """
    kappa = w.kappa
    if kappa == 0.0:
        raise ValueError("zero transverse wavenumber: (x1, x2) = (0, 0) is not a guided mode")
    return float(freq_ratio_radial(kappa, w.x3))
