"""Randomized and brute-force checks that computed designs are optimal.

``optimality_trial`` samples random admissible designs and confirms the
solver's spectrum majorizes none of them (equivalently, is majorized by
all of them) and that its joint potential is minimal for each probe
potential.  ``brute_force_small`` grid-searches the full partition space
of tiny two-group instances as an independent oracle for the optimum, and
``monotonicity_trial`` checks entrywise spectral dominance when the
weights shrink.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvalidInput
from .partition import ProblemInput, problem_input, solve
from .potentials import FP, MSE, Potential, lambda_vector, potential_of, power_potential
from .synth import FrameFamily
from .vecmaj import majorizes

DEFAULT_POTENTIALS = (FP, MSE, power_potential(3.0))


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    trials: int = 100
    potentials: tuple = DEFAULT_POTENTIALS
    tol: float = 1e-9

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidInput("trials must be >= 1")


@dataclass
class TrialReport:
    """Violation counts of a randomized check; empty failures means pass."""

    trials: int
    violations: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "violations": self.violations,
            "passed": self.passed,
            "failures": self.failures,
        }


def random_partition(alpha, m: int, rng: np.random.Generator) -> np.ndarray:
    """A random admissible weight partition: row i splits alpha_i by a
    normalized positive random vector."""
    a = np.asarray(alpha, dtype=float)
    if np.any(a <= 0):
        raise InvalidInput("alpha must be strictly positive")
    w = rng.random((len(a), m)) + 1e-12
    w /= w.sum(axis=1, keepdims=True)
    return a[:, None] * w


def random_design(partition: np.ndarray, dims, rng: np.random.Generator) -> list[FrameFamily]:
    """A random design over a partition: uniformly random directions scaled
    so that vector i of group j has squared norm partition[i, j]."""
    a = np.asarray(partition, dtype=float)
    dims = np.asarray(dims, dtype=int)
    fams = []
    for j, d in enumerate(dims):
        g = rng.standard_normal((int(d), a.shape[0]))
        g /= np.linalg.norm(g, axis=0, keepdims=True)
        fams.append(FrameFamily(vectors=g * np.sqrt(a[:, j])))
    return fams


def optimality_trial(inp: ProblemInput, cfg: TrialConfig) -> TrialReport:
    """Sample random designs and count optimality violations (expected 0).

    Per-trial RNG streams are spawned from the seed, so serial and parallel
    runs produce identical reports.  A trial whose spectrum is singular for
    a restricted-domain potential trivially satisfies minimality and is
    skipped for that potential.
    """
    sol = solve(inp)
    op_lam = sol.lambda_sorted
    op_pots = {p.name: potential_of(op_lam, p) for p in cfg.potentials}
    report = TrialReport(trials=cfg.trials)
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)
    for t, stream in enumerate(streams):
        rng = np.random.default_rng(stream)
        part = random_partition(inp.alpha, inp.m, rng)
        design = random_design(part, inp.dims, rng)
        lam_trial = lambda_vector(design).concatenated
        bad = []
        if not majorizes(lam_trial, op_lam, cfg.tol * max(1.0, float(op_lam[0]))):
            bad.append("majorization")
        for pot in cfg.potentials:
            try:
                val = potential_of(lam_trial, pot)
            except DomainError:
                continue
            if op_pots[pot.name] > val + cfg.tol * max(1.0, abs(val)):
                bad.append(f"potential:{pot.name}")
        if bad:
            report.violations += 1
            report.failures.append({"trial": t, "checks": bad})
    return report


def _batch_waterfill_fp(cols: np.ndarray, d: int) -> np.ndarray:
    """Frame potential of the water-filling of each row of ``cols`` in
    dimension ``d``; rows need not be sorted."""
    a = np.sort(cols, axis=1)[:, ::-1]
    n = a.shape[1]
    tail = a[:, d:].sum(axis=1)
    c = np.empty(len(a))
    undecided = np.ones(len(a), dtype=bool)
    acc = tail.copy()
    for s in range(d - 1, -1, -1):
        acc += a[:, s]
        cand = acc / (d - s)
        take = undecided & ((cand <= a[:, s - 1]) if s > 0 else undecided)
        c[take] = cand[take]
        undecided &= ~take
    gamma = np.maximum(a[:, :d], c[:, None])
    return np.sum(gamma * gamma, axis=1)


def brute_force_small(alpha, dims, grid_steps: int = 200) -> float:
    """Minimum joint frame potential over a dense grid of two-group splits.

    Each row's fraction assigned to group 1 ranges over {0, 1/g, ..., 1};
    per column the best spectrum is its water-filling, so the grid value
    is exact up to grid resolution.  Only m = 2 and n <= 3 are tractable.
    """
    a = np.asarray(alpha, dtype=float)
    dims = np.asarray(dims, dtype=int)
    n = len(a)
    if len(dims) != 2 or n > 3:
        raise InvalidInput("brute force supports only m=2 instances with n<=3")
    fr = np.linspace(0.0, 1.0, grid_steps + 1)
    d1, d2 = int(dims[0]), int(dims[1])
    if n == 1:
        cols1 = fr[:, None] * a
        cols2 = (1.0 - fr)[:, None] * a
        vals = _batch_waterfill_fp(cols1, d1) + _batch_waterfill_fp(cols2, d2)
        return float(vals.min())
    mesh = np.meshgrid(*([fr] * (n - 1)), indexing="ij")
    rest = np.column_stack([m.ravel() for m in mesh])
    best = np.inf
    # chunk by the first row's fraction to bound peak memory at (g+1)^(n-1)
    for f0 in fr:
        fracs = np.column_stack([np.full(len(rest), f0), rest])
        cols1 = fracs * a
        cols2 = (1.0 - fracs) * a
        vals = _batch_waterfill_fp(cols1, d1) + _batch_waterfill_fp(cols2, d2)
        best = min(best, float(vals.min()))
    return best


def monotonicity_trial(alpha, beta, dims, tol: float = 1e-8) -> TrialReport:
    """Check entrywise spectral dominance: shrinking every weight can only
    shrink every entry of the optimal spectra (same dimensions)."""
    inp_a = problem_input(alpha, dims)
    inp_b = problem_input(beta, dims)
    if np.any(inp_b.alpha > inp_a.alpha + 1e-12 * np.maximum(1.0, inp_a.alpha)):
        raise InvalidInput("beta must be entrywise <= alpha (after sorting)")
    if np.any(inp_b.alpha <= 0):
        raise InvalidInput("beta must be strictly positive")
    sol_a = solve(inp_a)
    sol_b = solve(inp_b)
    report = TrialReport(trials=1)
    scale = max(1.0, float(inp_a.alpha[0]))
    for j in range(inp_a.m):
        gap = float(np.min(sol_a.spectra[j] - sol_b.spectra[j]))
        if gap < -tol * scale:
            report.violations += 1
            report.failures.append({"group": j + 1, "min_gap": gap})
    return report
