"""Point geometry of the symmetrized bidisc.

The symmetrization map pi(z1, z2) = (z1 + z2, z1 z2) sends the closed
bidisc onto the closed symmetrized bidisc; a point (s, p) is recovered
from its fiber by solving z^2 - s z + p = 0.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum

from .numerics import DEFAULT_TOL, Tolerances

__all__ = [
    "GammaPoint",
    "RegionTag",
    "symmetrize_point",
    "point_roots",
    "classify_point",
]


@dataclass(frozen=True)
class GammaPoint:
    """A point (s, p) in the coordinates of the symmetrized bidisc."""

    s: complex
    p: complex


class RegionTag(Enum):
    INTERIOR_G = "INTERIOR_G"
    BOUNDARY_NOT_BGAMMA = "BOUNDARY_NOT_BGAMMA"
    BGAMMA_NOT_BDGAMMA = "BGAMMA_NOT_BDGAMMA"
    BDGAMMA = "BDGAMMA"
    OUTSIDE = "OUTSIDE"


def symmetrize_point(z1: complex, z2: complex) -> GammaPoint:
    """Image of (z1, z2) under the symmetrization map."""
    z1, z2 = complex(z1), complex(z2)
    if not (cmath.isfinite(z1) and cmath.isfinite(z2)):
        raise ValueError("inputs must be finite")
    return GammaPoint(z1 + z2, z1 * z2)


def point_roots(pt: GammaPoint) -> tuple[complex, complex]:
    """Both roots of z^2 - s z + p = 0, sorted by (modulus, argument).

    The larger-magnitude root is computed first and the other obtained as
    p divided by it, which avoids the cancellation of the naive quadratic
    formula.
    """
    s, p = complex(pt.s), complex(pt.p)
    if not (cmath.isfinite(s) and cmath.isfinite(p)):
        raise ValueError("point must be finite")
    sq = cmath.sqrt(s * s - 4.0 * p)
    if abs(s + sq) >= abs(s - sq):
        big = 0.5 * (s + sq)
    else:
        big = 0.5 * (s - sq)
    if big == 0:
        roots = (0j, 0j)
    else:
        roots = (big, p / big)
    return tuple(sorted(roots, key=lambda z: (abs(z), cmath.phase(z))))


def classify_point(pt: GammaPoint, tol: Tolerances = DEFAULT_TOL) -> RegionTag:
    """Locate a point relative to the symmetrized bidisc.

    Classification runs on the fiber roots with an absolute band of
    ``psd_tol`` on the root moduli: strictly inside the open region, on
    the distinguished boundary (both roots unimodular), on its diagonal
    subset (coincident unimodular roots), elsewhere on the topological
    boundary, or outside.
    """
    z1, z2 = point_roots(pt)
    band = tol.psd_tol
    m1, m2 = abs(z1), abs(z2)
    if max(m1, m2) > 1.0 + band:
        return RegionTag.OUTSIDE
    if max(m1, m2) < 1.0 - band:
        return RegionTag.INTERIOR_G
    if abs(m1 - 1.0) <= band and abs(m2 - 1.0) <= band:
        if abs(z1 - z2) <= band:
            return RegionTag.BDGAMMA
        return RegionTag.BGAMMA_NOT_BDGAMMA
    return RegionTag.BOUNDARY_NOT_BGAMMA
