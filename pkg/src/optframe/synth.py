"""Frame synthesis: vector families with prescribed norms and spectrum.

``schur_horn_vectors`` realizes the classical existence theorem
constructively: whenever the squared norms are majorized by the
(zero-padded) target spectrum there is a family of vectors whose frame
operator has exactly that spectrum.  The construction builds an orthogonal
matrix by a finite chain of Givens rotations so that the diagonal of
``V diag(lambda) V^T`` equals the norms, then factors the synthesis
operator directly; the frame operator is diagonal by construction, no
eigensolver is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleDesign, InternalInvariantViolation, InvalidInput
from .kernels import jacobi_eig
from .partition import PartitionSolution, ProblemInput
from .vecmaj import majorizes


@dataclass(frozen=True)
class FrameFamily:
    """A family of ``count`` vectors in R^dim, columns of ``vectors``."""

    vectors: np.ndarray  # dim x count

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def count(self) -> int:
        return self.vectors.shape[1]

    def norms_sq(self) -> np.ndarray:
        return np.sum(self.vectors * self.vectors, axis=0)


def frame_operator(fam: FrameFamily) -> np.ndarray:
    """Frame operator S = T T^t of the family; symmetric PSD by construction."""
    t = fam.vectors
    s = t @ t.T
    return 0.5 * (s + s.T)


def sym_eigenvalues(s, tol: float = 1e-10) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, sorted non-increasing.

    Cyclic Jacobi sweeps; asymmetric input (beyond ``tol`` relative) is
    rejected rather than symmetrized silently.
    """
    a = np.asarray(s, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput("expected a square matrix")
    scale = max(1.0, float(np.abs(a).max()))
    if float(np.abs(a - a.T).max()) > tol * scale:
        raise InvalidInput("matrix is not symmetric")
    w, _v = jacobi_eig(0.5 * (a + a.T))
    return w


def schur_horn_vectors(norms_sq, spectrum, tol: float | None = None) -> FrameFamily:
    """Vectors with squared norms ``norms_sq`` and frame spectrum ``spectrum``.

    Requires ``norms_sq`` majorized by the spectrum padded with zeros to
    length n; otherwise no such family exists and InfeasibleDesign is
    raised.  The output is the deterministic Givens-chain representative:
    any orthogonally equivalent family is equally valid.
    """
    a = np.asarray(norms_sq, dtype=float)
    lam = np.sort(np.asarray(spectrum, dtype=float))[::-1]
    n, d = len(a), len(lam)
    if d > n:
        raise InvalidInput("spectrum longer than the number of vectors")
    if np.any(a < 0) or np.any(lam < 0):
        raise InvalidInput("norms and spectrum must be nonnegative")
    lam_pad = np.concatenate([lam, np.zeros(n - d)])
    if tol is None:
        tol = 1e-9 * max(1.0, float(lam_pad.sum()))
    if not majorizes(lam_pad, a, tol):
        raise InfeasibleDesign("norms are not majorized by the padded spectrum")

    # Build orthogonal V with diag(V diag(lam_pad) V^T) = a by rotating one
    # diagonal entry to its target per step.  Processing targets smallest
    # first against the adjacent bracketing pair of still-active values
    # keeps the remaining subproblem majorized, so a bracket always exists.
    vals = lam_pad.copy()
    v = np.eye(n)
    active = np.ones(n, dtype=bool)
    pos_of = np.empty(n, dtype=int)
    span = max(1.0, float(lam_pad[0]) if n else 1.0)
    for idx in np.argsort(a, kind="stable"):
        t = float(a[idx])
        act = np.nonzero(active)[0]
        diffs = vals[act] - t
        nearest = act[int(np.argmin(np.abs(diffs)))]
        if abs(vals[nearest] - t) <= 1e-12 * span or len(act) == 1:
            if abs(vals[nearest] - t) > 1e-7 * span:
                raise InternalInvariantViolation("Givens chain lost majorization")
            pos_of[idx] = nearest
            active[nearest] = False
            vals[nearest] = t
            continue
        above = act[diffs >= 0.0]
        below = act[diffs <= 0.0]
        if len(above) == 0 or len(below) == 0:
            raise InternalInvariantViolation("no bracketing pair for target norm")
        p = above[int(np.argmin(vals[above]))]  # smallest value >= t
        q = below[int(np.argmax(vals[below]))]  # largest value <= t
        vhi, vlo = float(vals[p]), float(vals[q])
        c = np.sqrt((t - vlo) / (vhi - vlo))
        s = np.sqrt((vhi - t) / (vhi - vlo))
        row_p = v[p].copy()
        v[p] = c * row_p + s * v[q]
        v[q] = -s * row_p + c * v[q]
        vals[p] = t
        vals[q] = vhi + vlo - t
        active[p] = False
        pos_of[idx] = p

    t_full = np.sqrt(lam)[:, None] * v.T[:d, :]
    order = np.empty(n, dtype=int)
    order[np.arange(n)] = pos_of
    return FrameFamily(vectors=t_full[:, order])


def synthesize_design(inp: ProblemInput, sol: PartitionSolution) -> list[FrameFamily]:
    """One frame family per group realizing the optimal partition.

    Column j of the partition gives the squared norms, its water-filled
    spectrum the target frame-operator spectrum; water-filling guarantees
    the majorization precondition, so synthesis never fails on a valid
    solution.
    """
    fams = []
    for j in range(inp.m):
        col = sol.partition[:, j]
        fams.append(schur_horn_vectors(col, sol.spectra[j]))
    return fams


def design_norms(design: list[FrameFamily]) -> np.ndarray:
    """Row recomposition: per-index squared norms summed across groups."""
    return np.sum(np.stack([f.norms_sq() for f in design]), axis=0)
