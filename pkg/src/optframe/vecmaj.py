"""Sorted-vector arithmetic and (sub)majorization predicates.

Vectors are plain numpy arrays; the non-increasing rearrangement of ``x``
is written ``x_desc`` throughout.  Partial sums are accumulated with
compensated (Kahan) summation so golden tests stay stable across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, InvalidInput, TraceMismatch


def _as_finite_array(x, name: str = "x") -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if a.ndim != 1:
        raise InvalidInput(f"{name} must be one-dimensional")
    if a.size == 0:
        raise InvalidInput(f"{name} must be non-empty")
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"{name} contains non-finite entries")
    return a


def kahan_partial_sums(x: np.ndarray) -> np.ndarray:
    """Compensated running sums: out[j] = x[0] + ... + x[j]."""
    out = np.empty(len(x))
    total = 0.0
    comp = 0.0
    for j, v in enumerate(x):
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
        out[j] = total
    return out


def default_tol(y: np.ndarray) -> float:
    return 1e-9 * max(1.0, abs(float(np.sum(y))))


def sort_desc(x) -> tuple[np.ndarray, np.ndarray]:
    """Non-increasing rearrangement of ``x`` plus the position permutation.

    ``perm[i]`` is the position of the original entry ``x[i]`` in the sorted
    output.  Ties keep their original relative order (stable sort), so the
    permutation is deterministic.
    """
    a = _as_finite_array(x)
    order = np.argsort(-a, kind="stable")
    perm = np.empty_like(order)
    perm[order] = np.arange(len(order))
    return a[order], perm


@dataclass(frozen=True)
class BlockVector:
    """A non-increasing vector written as levels with multiplicities.

    ``levels`` strictly decreasing, ``mults`` positive integers; the
    represented vector is ``(levels[0],)*mults[0] + ...``.
    """

    levels: np.ndarray
    mults: np.ndarray

    def __post_init__(self):
        levels = _as_finite_array(self.levels, "levels")
        mults = np.asarray(self.mults, dtype=int)
        if len(levels) != len(mults):
            raise InvalidInput("levels and mults must have equal length")
        if np.any(np.diff(levels) >= 0):
            raise InvalidInput("levels must be strictly decreasing")
        if np.any(mults < 1):
            raise InvalidInput("multiplicities must be positive")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "mults", mults)

    @property
    def length(self) -> int:
        return int(self.mults.sum())

    def expand(self) -> np.ndarray:
        return np.repeat(self.levels, self.mults)

    def trace(self) -> float:
        return float(np.dot(self.levels, self.mults))


def _sub_check(y_desc: np.ndarray, x_desc: np.ndarray, tol: float) -> bool:
    k = min(len(x_desc), len(y_desc))
    px = kahan_partial_sums(x_desc[:k])
    py = kahan_partial_sums(y_desc[:k])
    return bool(np.all(px <= py + tol))


def majorizes(y, x, tol: float | None = None) -> bool:
    """True iff ``x`` is majorized by ``y`` (partial-sum dominance, equal sums).

    Lengths may differ; partial sums are compared up to the shorter length
    and the full sums must agree within ``tol``.
    """
    ya = _as_finite_array(y, "y")
    xa = _as_finite_array(x, "x")
    if tol is None:
        tol = default_tol(ya)
    y_desc = np.sort(ya)[::-1]
    x_desc = np.sort(xa)[::-1]
    if abs(float(np.sum(x_desc)) - float(np.sum(y_desc))) > tol:
        return False
    return _sub_check(y_desc, x_desc, tol)


def submajorizes(y, x, tol: float | None = None) -> bool:
    """True iff ``x`` is submajorized by ``y`` (no total-sum clause)."""
    ya = _as_finite_array(y, "y")
    xa = _as_finite_array(x, "x")
    if tol is None:
        tol = default_tol(ya)
    return _sub_check(np.sort(ya)[::-1], np.sort(xa)[::-1], tol)


def block_majorizes(a: BlockVector, b, tol: float | None = None) -> bool:
    """Majorization of ``b`` by a block vector, checked only at block cuts.

    For equal-trace vectors with ``a`` constant on blocks of sizes ``r_k``,
    dominance of the partial sums at the cut indices ``s_k = r_1+...+r_k``
    is equivalent to full majorization, so only ``p - 1`` sums are tested.
    """
    ba = _as_finite_array(b, "b")
    if np.any(np.diff(ba) > 0):
        raise InvalidInput("b must be sorted non-increasing")
    if tol is None:
        tol = default_tol(ba)
    if abs(a.trace() - float(np.sum(ba))) > tol:
        raise TraceMismatch("block vector and b have different traces")
    pb = kahan_partial_sums(ba)
    cut = 0
    acc = 0.0
    for k in range(len(a.levels) - 1):
        cut += int(a.mults[k])
        acc += float(a.levels[k]) * int(a.mults[k])
        if acc > pb[cut - 1] + tol:
            return False
    return True


def trace_phi(x, phi: Callable[[float], float]) -> float:
    """Sum of ``phi`` over the entries of ``x``.

    Raises DomainError when ``phi`` is undefined or non-finite at an entry.
    """
    xa = _as_finite_array(x)
    total = 0.0
    for v in xa:
        try:
            fv = phi(float(v))
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise DomainError(f"phi undefined at {v!r}") from exc
        if not math.isfinite(fv):
            raise DomainError(f"phi non-finite at {v!r}")
        total += fv
    return total
