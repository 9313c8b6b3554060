"""Convex potentials of frames and designs.

A potential is the trace of a convex scalar function applied to the frame
operator; because the operators here are handled through their spectra,
every potential reduces to a sum over eigenvalues.  The joint potential of
a design is the sum over its groups and equals the potential of the
concatenated spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, InvalidInput
from .vecmaj import trace_phi

MSE_DOMAIN_MIN = 1e-12


@dataclass(frozen=True)
class Potential:
    """A convex scalar function with metadata.

    ``domain_min`` is the smallest admissible spectrum entry; convexity is
    not proven symbolically, only probed on samples by the test suite.
    """

    name: str
    phi: Callable[[float], float]
    domain_min: float = 0.0
    strictly_convex: bool = True

    def __call__(self, x: float) -> float:
        if x < self.domain_min:
            raise DomainError(
                f"{self.name} undefined at {x!r} (domain minimum {self.domain_min})"
            )
        return self.phi(x)


FP = Potential("fp", lambda x: x * x)
MSE = Potential("mse", lambda x: 1.0 / x, domain_min=MSE_DOMAIN_MIN)


def power_potential(p: float) -> Potential:
    """The potential x -> x**p; convex on the nonnegative axis for p >= 1."""
    if p < 1.0:
        raise InvalidInput("power potentials require exponent >= 1")
    return Potential(f"power{p:g}", lambda x: x**p, strictly_convex=p > 1.0)


@dataclass(frozen=True)
class SpectrumVector:
    """Per-group spectra of a design and their concatenation."""

    per_group: list

    @property
    def concatenated(self) -> np.ndarray:
        return np.concatenate([np.asarray(g, dtype=float) for g in self.per_group])

    def sorted_desc(self) -> np.ndarray:
        return np.sort(self.concatenated)[::-1]


def potential_of(spectrum, pot: Potential) -> float:
    """Sum of the potential over a spectrum (trace of phi of the operator)."""
    return trace_phi(np.asarray(spectrum, dtype=float), pot)


def lambda_vector(design) -> SpectrumVector:
    """Concatenated spectrum of a design (list of frame families)."""
    from .synth import frame_operator, sym_eigenvalues

    return SpectrumVector(per_group=[sym_eigenvalues(frame_operator(f)) for f in design])


def joint_potential(design_or_spectra, pot: Potential) -> float:
    """Sum of the potential over all groups of a design.

    Accepts a list of frame families, a SpectrumVector, or a list of
    per-group spectra; all reduce to the potential of the concatenation.
    """
    if isinstance(design_or_spectra, SpectrumVector):
        return potential_of(design_or_spectra.concatenated, pot)
    seq = list(design_or_spectra)
    if seq and hasattr(seq[0], "vectors"):
        return joint_potential(lambda_vector(seq), pot)
    return sum(potential_of(np.asarray(g, dtype=float), pot) for g in seq)


def pinched_potential(gram_or_vectors, dims, pot: Potential) -> float:
    """Potential of the block pinching of a global frame operator.

    The rows of ``gram_or_vectors`` (n vectors in R^{sum(dims)}, given as
    columns of a matrix) are projected onto the coordinate blocks of sizes
    ``dims``; the value is the sum of per-block potentials, which equals
    the joint potential of the projected design.
    """
    t = np.asarray(gram_or_vectors, dtype=float)
    dims = np.asarray(dims, dtype=int)
    if t.ndim != 2:
        raise InvalidInput("expected a matrix of column vectors")
    if int(dims.sum()) != t.shape[0]:
        raise InvalidInput("block sizes do not add up to the ambient dimension")
    from .synth import FrameFamily, frame_operator, sym_eigenvalues

    total = 0.0
    start = 0
    for d in dims:
        block = t[start : start + d, :]
        w = sym_eigenvalues(frame_operator(FrameFamily(vectors=block)))
        total += potential_of(w, pot)
        start += d
    return total
