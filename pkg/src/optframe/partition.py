"""Optimal weight partitions via the recursive multi-water-filling solver.

Given positive weights ``alpha`` (one energy budget per vector) and
dimensions ``d_1 >= ... >= d_m`` (one per task), ``solve`` computes a
nonnegative n-by-m matrix whose rows sum to ``alpha`` such that the
water-filled spectra of its columns majorize-dominate those of every other
admissible partition.  The construction proceeds level by level in m: the
level-j step deforms the j-1 previously built columns along a
one-parameter family, assigns the leftover mass to column j, and fixes the
parameter row by row at the unique fixed point of the residual's leading
water level.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionError,
    InternalInvariantViolation,
    InvalidInput,
)
from .vecmaj import sort_desc
from .waterfill import DeformationFamily, deform_at, deformation_family, water_fill


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical knobs of the solver.

    t_tol scales the bisection interval for each fixed point; flat_tol
    decides when a residual spectrum counts as constant; merge_tol merges
    adjacent spectral levels that differ only by accumulated bisection
    error; verify_tol is used by the post-hoc consistency checks.
    """

    t_tol: float = 1e-12
    flat_tol: float = 1e-9
    merge_tol: float = 1e-7
    verify_tol: float = 1e-8
    max_bisect: int = 200


DEFAULT_CFG = ToleranceConfig()


@dataclass(frozen=True)
class ProblemInput:
    """Canonicalized problem data: sorted weights and dimensions.

    ``alpha_perm``/``dims_perm`` map user positions to sorted positions so
    results can be reported back in the original order.
    """

    alpha: np.ndarray
    dims: np.ndarray
    alpha_perm: np.ndarray
    dims_perm: np.ndarray

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def m(self) -> int:
        return len(self.dims)


def problem_input(alpha, dims) -> ProblemInput:
    """Validate and canonicalize (sort descending) weights and dimensions."""
    a = np.asarray(alpha, dtype=float)
    if a.ndim != 1 or a.size == 0 or not np.all(np.isfinite(a)):
        raise InvalidInput("alpha must be a non-empty finite vector")
    if np.any(a <= 0):
        raise InvalidInput("all weights must be strictly positive")
    d = np.asarray(dims)
    if d.ndim != 1 or d.size == 0:
        raise InvalidInput("dims must be a non-empty integer vector")
    if not np.issubdtype(d.dtype, np.integer):
        if np.any(d != np.floor(d)):
            raise InvalidInput("dims must be integers")
        d = d.astype(int)
    if np.any(d < 1):
        raise DimensionError("all dimensions must be >= 1")
    a_sorted, a_perm = sort_desc(a)
    d_sorted, d_perm = sort_desc(d.astype(float))
    d_sorted = d_sorted.astype(int)
    if d_sorted[0] > len(a_sorted):
        raise DimensionError(
            f"largest dimension {d_sorted[0]} exceeds number of weights {len(a_sorted)}"
        )
    return ProblemInput(alpha=a_sorted, dims=d_sorted, alpha_perm=a_perm, dims_perm=d_perm)


@dataclass(frozen=True)
class BlockSpectrum:
    """Block form of the optimal concatenated spectrum.

    ``levels`` are the strictly decreasing distinct values, ``mults`` their
    multiplicities, ``cuts`` the 1-based end indices of the corresponding
    runs inside the leading (largest-dimension) spectrum, and ``h[i-1]``
    counts the groups whose dimension is at least ``i``.
    """

    p: int
    levels: np.ndarray
    mults: np.ndarray
    cuts: np.ndarray
    h: np.ndarray


@dataclass(frozen=True)
class PartitionSolution:
    """Output of ``solve``: the partition, its spectra and diagnostics."""

    partition: np.ndarray          # n x m, canonical (sorted) order
    spectra: list                  # per-group water-filled spectra
    t_seq: np.ndarray              # fixed points of the final level
    stop_iteration: int            # k: row at which the final level froze
    lambda_sorted: np.ndarray      # concatenated spectrum, non-increasing
    blocks: BlockSpectrum
    elapsed: float = field(default=0.0, compare=False)


def _residual_from(alpha: np.ndarray, deformed: np.ndarray) -> np.ndarray:
    """Leftover column alpha_i - sum_j a_ij(t), clamped against roundoff."""
    res = alpha - deformed.sum(axis=1)
    floor = -1e-12 * max(1.0, float(alpha[0]))
    low = res.min() if len(res) else 0.0
    if low < floor:
        raise InternalInvariantViolation(
            f"residual column went negative ({low:.3e}); solver invariant broken"
        )
    np.clip(res, 0.0, None, out=res)
    return res


def residual_column(families: list[DeformationFamily], alpha: np.ndarray, t: float) -> np.ndarray:
    """Residual column at parameter ``t``: nonnegative and non-increasing."""
    if not families:
        return np.asarray(alpha, dtype=float).copy()
    deformed = np.column_stack([deform_at(f, t) for f in families])
    return _residual_from(np.asarray(alpha, dtype=float), deformed)


def is_flat(gamma, cfg: ToleranceConfig = DEFAULT_CFG) -> bool:
    """True when a sorted spectrum is constant up to the flatness tolerance."""
    g = np.asarray(gamma, dtype=float)
    top = float(g[0])
    return top - float(g[-1]) <= cfg.flat_tol * max(1.0, top)


def find_t(
    families: list[DeformationFamily],
    alpha: np.ndarray,
    d_last: int,
    cfg: ToleranceConfig = DEFAULT_CFG,
    row: int = 1,
) -> float:
    """Fixed point of the residual's leading water level at iteration ``row``.

    Solves ``top_water_level(residual(t)[row-1:]) = t`` by bisection on
    ``[0, gamma'_{row,1}]``; the left side is continuous, piecewise linear
    and strictly decreasing minus t, so the root is unique.
    """
    alpha = np.asarray(alpha, dtype=float)
    hi = float(families[0].fill.gamma[row - 1])
    dim = d_last - row + 1

    def top(t: float) -> float:
        res = residual_column(families, alpha, t)[row - 1 :]
        res = np.sort(res)[::-1]
        return float(water_fill(res, dim).gamma[0])

    tol = cfg.t_tol * max(1.0, hi)
    if hi <= tol:
        return 0.0
    if top(0.0) <= 0.0:
        return 0.0
    if top(hi) - hi > cfg.flat_tol * max(1.0, hi):
        raise InternalInvariantViolation("fixed-point bracket not sign-changing")
    lo, up = 0.0, hi
    for _ in range(cfg.max_bisect):
        if up - lo <= tol:
            break
        mid = 0.5 * (lo + up)
        if top(mid) - mid >= 0.0:
            lo = mid
        else:
            up = mid
    return 0.5 * (lo + up)


def _level_step(
    alpha: np.ndarray,
    prev_cols: list[np.ndarray],
    dims: np.ndarray,
    cfg: ToleranceConfig,
) -> tuple[np.ndarray, list[float], int]:
    """One level of the recursion: split off column ``len(prev_cols)+1``.

    Returns the new column set, the fixed-point sequence and the stop row.
    """
    j = len(prev_cols) + 1
    d_last = int(dims[j - 1])
    fams = [deformation_family(prev_cols[c], int(dims[c])) for c in range(j - 1)]
    n = len(alpha)
    cols = np.zeros((n, j))
    t_seq: list[float] = []
    k = d_last
    for i in range(1, d_last + 1):
        t_i = find_t(fams, alpha, d_last, cfg, row=i)
        t_seq.append(t_i)
        deformed = np.column_stack([deform_at(f, t_i) for f in fams])
        res = _residual_from(alpha, deformed)
        trunc = np.sort(res[i - 1 :])[::-1]
        wf = water_fill(trunc, d_last - i + 1)
        if is_flat(wf.gamma, cfg):
            cols[i - 1 :, : j - 1] = deformed[i - 1 :, :]
            cols[i - 1 :, j - 1] = res[i - 1 :]
            k = i
            break
        cols[i - 1, : j - 1] = deformed[i - 1, :]
        cols[i - 1, j - 1] = res[i - 1]
    return cols, t_seq, k


def multiplicities_from_cuts(cuts, dims) -> np.ndarray:
    """Spectral multiplicities from run cuts: r_l = sum of h_i over the run.

    ``h_i`` counts the groups with dimension at least ``i``; equivalently
    ``r_l = sum_j (min(g_l, d_j) - g_{l-1})^+``.
    """
    cuts = np.asarray(cuts, dtype=int)
    dims = np.asarray(dims, dtype=int)
    h = np.array([(dims >= i).sum() for i in range(1, cuts[-1] + 1)])
    r = np.empty(len(cuts), dtype=int)
    prev = 0
    for ell, g in enumerate(cuts):
        r[ell] = h[prev:g].sum()
        prev = g
    return r


def extract_blocks(
    spectra: list[np.ndarray],
    dims,
    alpha,
    cfg: ToleranceConfig = DEFAULT_CFG,
) -> BlockSpectrum:
    """Block decomposition of the optimal spectrum, with identity checks.

    Runs of (nearly) equal values in the leading spectrum give the levels
    and cut indices; multiplicities follow from the dimension profile.  The
    four structure identities are validated and a StructureError signals a
    solver bug.
    """
    from .errors import StructureError

    dims = np.asarray(dims, dtype=int)
    alpha = np.asarray(alpha, dtype=float)
    g1 = np.asarray(spectra[0], dtype=float)
    d1 = len(g1)

    cuts: list[int] = []
    levels: list[float] = []
    run_start = 0
    for i in range(1, d1 + 1):
        if i == d1 or abs(g1[i] - g1[run_start]) > cfg.merge_tol * max(1.0, abs(g1[run_start])):
            cuts.append(i)
            levels.append(float(np.mean(g1[run_start:i])))
            run_start = i
    cuts_a = np.array(cuts, dtype=int)
    levels_a = np.array(levels)
    mults = multiplicities_from_cuts(cuts_a, dims)
    h = np.array([(dims >= i).sum() for i in range(1, d1 + 1)])
    p = len(levels_a)

    total_dim = int(dims.sum())
    tol = cfg.verify_tol * max(1.0, float(levels_a[0]))
    if mults.sum() != total_dim:
        raise StructureError("multiplicities do not add up to the total dimension")

    # identity (a): the sorted concatenated spectrum is the block expansion
    lam = np.sort(np.concatenate(spectra))[::-1]
    expansion = np.repeat(levels_a, mults)
    if np.max(np.abs(lam - expansion)) > tol:
        raise StructureError("concatenated spectrum does not match the block expansion")

    # identity (b): run sums of h agree with the clipped-window formula
    prev = 0
    for ell, g in enumerate(cuts_a):
        alt = int(np.sum(np.clip(np.minimum(g, dims) - prev, 0, None)))
        if alt != mults[ell]:
            raise StructureError("multiplicity identity violated")
        prev = g

    # identities (c)/(d): level mass equals the alpha window mass
    prev = 0
    for ell in range(p):
        end = cuts_a[ell] if ell < p - 1 else len(alpha)
        mass = float(alpha[prev:end].sum())
        if abs(mults[ell] * levels_a[ell] - mass) > cfg.verify_tol * max(1.0, mass):
            raise StructureError(f"level {ell + 1} mass identity violated")
        prev = cuts_a[ell]

    return BlockSpectrum(p=p, levels=levels_a, mults=mults, cuts=cuts_a, h=h)


def solve(inp: ProblemInput, cfg: ToleranceConfig = DEFAULT_CFG) -> PartitionSolution:
    """Compute the optimal weight partition and its spectra.

    Deterministic for fixed tolerances; for m = 1 the partition is alpha
    itself and the spectrum its water-filling.
    """
    start = time.perf_counter()
    alpha, dims = inp.alpha, inp.dims
    m = inp.m

    cols = [alpha.copy()]
    t_seq: list[float] = []
    k = 0
    for j in range(2, m + 1):
        mat, t_seq, k = _level_step(alpha, cols, dims[:j], cfg)
        cols = [mat[:, c].copy() for c in range(j)]

    partition = np.column_stack(cols)
    spectra = [water_fill(np.sort(c)[::-1], int(dims[j])).gamma for j, c in enumerate(cols)]
    lam = np.sort(np.concatenate(spectra))[::-1]
    if lam[-1] <= 0.0:
        raise InternalInvariantViolation("optimal spectrum has a non-positive entry")
    blocks = extract_blocks(spectra, dims, alpha, cfg)
    elapsed = time.perf_counter() - start
    return PartitionSolution(
        partition=partition,
        spectra=spectra,
        t_seq=np.array(t_seq),
        stop_iteration=k,
        lambda_sorted=lam,
        blocks=blocks,
        elapsed=elapsed,
    )


@dataclass
class VerifyReport:
    """Named pass/fail results of the post-hoc solution checks."""

    checks: dict

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def failed_checks(self) -> list[str]:
        return [name for name, (ok, _) in self.checks.items() if not ok]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": {name: {"passed": ok, "detail": msg} for name, (ok, msg) in self.checks.items()},
        }


def verify_solution(
    inp: ProblemInput,
    sol: PartitionSolution,
    cfg: ToleranceConfig = DEFAULT_CFG,
) -> VerifyReport:
    """Re-derive every structural property of a solution and report on each.

    Report-only: never raises on a failed check.
    """
    alpha, dims = inp.alpha, inp.dims
    a = sol.partition
    checks: dict = {}
    tol = cfg.verify_tol * max(1.0, float(alpha[0]))

    row_sums = a.sum(axis=1)
    dev = float(np.max(np.abs(row_sums - alpha)))
    checks["row_sums"] = (dev <= tol, f"max |row sum - alpha| = {dev:.3e}")

    neg = float(a.min())
    checks["nonnegative"] = (neg >= -tol, f"min entry = {neg:.3e}")

    wf_ok, wf_msg = True, "spectra match column water-fillings"
    for j in range(inp.m):
        col = np.sort(a[:, j])[::-1]
        gamma = water_fill(col, int(dims[j])).gamma
        d = float(np.max(np.abs(gamma - sol.spectra[j])))
        if d > tol:
            wf_ok, wf_msg = False, f"group {j + 1} spectrum off by {d:.3e}"
            break
    checks["column_waterfill"] = (wf_ok, wf_msg)

    il_ok, il_msg = True, "spectra interleave across groups"
    for r in range(inp.m):
        for s in range(r + 1, inp.m):
            ds = int(dims[s])
            d = float(np.max(np.abs(sol.spectra[r][:ds] - sol.spectra[s][:ds])))
            if d > tol:
                il_ok, il_msg = False, f"groups {r + 1},{s + 1} differ by {d:.3e}"
    checks["interleaving"] = (il_ok, il_msg)

    ts = sol.t_seq
    mono = len(ts) < 2 or bool(np.all(np.diff(ts) <= cfg.verify_tol * max(1.0, float(ts[0]))))
    nonneg_t = len(ts) == 0 or float(ts[-1]) >= -cfg.verify_tol
    checks["t_monotone"] = (mono and nonneg_t, f"t sequence {np.round(ts, 12).tolist()}")

    blk_ok, blk_msg = True, "block identities hold"
    try:
        extract_blocks(sol.spectra, dims, alpha, cfg)
    except Exception as exc:  # StructureError or shape issues from tampering
        blk_ok, blk_msg = False, str(exc)
    checks["block_identities"] = (blk_ok, blk_msg)

    lam_min = float(sol.lambda_sorted[-1])
    checks["lambda_positive"] = (lam_min > 0.0, f"min spectral value = {lam_min:.6g}")

    return VerifyReport(checks=checks)
