"""Water-filling of sorted weight vectors and its parametric deformation.

``water_fill`` raises the smallest of the first ``d`` entries to a common
level ``c`` so that total mass is preserved.  ``DeformationFamily``
parametrizes the continuous deformation ``a(t)`` of a source vector that
sweeps its column from zero back to itself while keeping the water-filled
spectrum equal to ``min(gamma', t)`` entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidInput, RangeError
from .kernels import water_level

# relative slack when validating t against the top of the source spectrum;
# absorbs bisection error from independently computed brackets
_RANGE_SLACK = 1e-9


def _check_sorted_nonneg(alpha: np.ndarray, name: str = "alpha") -> np.ndarray:
    a = np.asarray(alpha, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise InvalidInput(f"{name} must be a non-empty vector")
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"{name} contains non-finite entries")
    if np.any(a < 0):
        raise InvalidInput(f"{name} contains negative entries")
    if np.any(np.diff(a) > 0):
        raise InvalidInput(f"{name} must be sorted non-increasing")
    return a


@dataclass(frozen=True)
class WaterFillResult:
    """Water-filled vector ``gamma``, its level ``c`` and split index.

    ``split_index`` is the 1-based first index with ``c >= alpha_j`` (the
    first flooded entry).
    """

    gamma: np.ndarray
    level: float
    split_index: int

    @property
    def dim(self) -> int:
        return len(self.gamma)

    def is_flat(self, rel_tol: float = 1e-9) -> bool:
        top = float(self.gamma[0])
        return top - float(self.gamma[-1]) <= rel_tol * max(1.0, top)


def water_fill(alpha, d: int) -> WaterFillResult:
    """Water-filling of a non-increasing, nonnegative vector in dimension d.

    The level solves ``sum_{i<=d} (c - alpha_i)^+ = sum_{i>d} alpha_i``
    exactly via a closed-form scan over the linear segments of the flood
    equation (no iteration).
    """
    a = _check_sorted_nonneg(alpha)
    n = len(a)
    if not (1 <= d <= n):
        raise DimensionError(f"d={d} outside 1..{n}")
    c, _seg = water_level(np.ascontiguousarray(a), int(d))
    gamma = np.maximum(a[:d], c)
    flooded = np.nonzero(c >= a[:d])[0]
    split = int(flooded[0]) + 1 if len(flooded) else d
    return WaterFillResult(gamma=gamma, level=float(c), split_index=split)


@dataclass(frozen=True)
class DeformationFamily:
    """The one-parameter deformation of a source column.

    ``a_i(t) = (min(t, c') / c') * min(a'_i, max(t, c'))`` where ``c'`` is
    the water level of the source in dimension ``dim``.  Valid for
    ``t in [0, gamma'_1]``.
    """

    source: np.ndarray
    dim: int
    fill: WaterFillResult

    @property
    def t_max(self) -> float:
        return float(self.fill.gamma[0])


def deformation_family(source, d: int) -> DeformationFamily:
    a = _check_sorted_nonneg(source, "source")
    return DeformationFamily(source=a, dim=int(d), fill=water_fill(a, d))


def _check_t(fam: DeformationFamily, t: float) -> float:
    hi = fam.t_max
    slack = _RANGE_SLACK * max(1.0, hi)
    if t < -slack or t > hi + slack:
        raise RangeError(f"t={t} outside [0, {hi}]")
    return min(max(t, 0.0), hi)


def deform_at(fam: DeformationFamily, t: float) -> np.ndarray:
    """Evaluate the deformation at ``t``; result is non-increasing.

    An all-zero source has an undefined water level; by continuity the
    deformation is identically zero in that case.
    """
    t = _check_t(fam, t)
    c = fam.fill.level
    if c == 0.0:
        return np.zeros_like(fam.source)
    return (min(t, c) / c) * np.minimum(fam.source, max(t, c))


def deformed_spectrum(fam: DeformationFamily, t: float) -> np.ndarray:
    """Spectrum of the deformation at ``t``: ``min(gamma'_i, t)`` entrywise.

    Equals the water-filling of ``deform_at(fam, t)`` in dimension
    ``fam.dim`` without recomputing the flood equation.
    """
    t = _check_t(fam, t)
    return np.minimum(fam.fill.gamma, t)
