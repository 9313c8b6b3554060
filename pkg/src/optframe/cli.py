"""Command-line front end: solve, synth, verify, sample, mono.

JSON (full precision, ``"schema": 1``) is the canonical output format;
CSV is offered for the partition and frame matrices.  Exit codes: 0 ok,
1 verification failure, 2 usage or invalid input, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import InfeasibleDesign, InvalidInput, OptframeError
from .oracle import TrialConfig, brute_force_small, monotonicity_trial, optimality_trial
from .partition import (
    BlockSpectrum,
    PartitionSolution,
    ProblemInput,
    ToleranceConfig,
    problem_input,
    solve,
    verify_solution,
)
from .potentials import FP, MSE, potential_of
from .synth import design_norms, frame_operator, sym_eigenvalues, synthesize_design

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _parse_floats(text: str, name: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",") if v.strip() != ""])
    except ValueError as exc:
        raise InvalidInput(f"could not parse {name}: {exc}") from exc


def _parse_ints(text: str, name: str) -> np.ndarray:
    try:
        return np.array([int(v) for v in text.split(",") if v.strip() != ""])
    except ValueError as exc:
        raise InvalidInput(f"could not parse {name}: {exc}") from exc


def _default_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("OPTFRAME_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InvalidInput(f"OPTFRAME_SEED is not an integer: {env!r}") from exc
    return 0


def _cfg_from_args(args) -> ToleranceConfig:
    kw = {}
    if getattr(args, "tol_t", None) is not None:
        kw["t_tol"] = args.tol_t
    if getattr(args, "tol_flat", None) is not None:
        kw["flat_tol"] = args.tol_flat
    return ToleranceConfig(**kw)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _csv_matrix(mat: np.ndarray) -> str:
    return "\n".join(",".join(repr(float(v)) for v in row) for row in np.atleast_2d(mat))


def _solution_doc(inp: ProblemInput, sol: PartitionSolution) -> dict:
    # row i / column j of the original order live at sorted positions
    # alpha_perm[i] / dims_perm[j]
    part_orig = sol.partition[inp.alpha_perm, :][:, inp.dims_perm]
    return {
        "schema": 1,
        "alpha_sorted": inp.alpha.tolist(),
        "dims_sorted": inp.dims.tolist(),
        "alpha_perm": inp.alpha_perm.tolist(),
        "dims_perm": inp.dims_perm.tolist(),
        "partition": sol.partition.tolist(),
        "partition_original_order": part_orig.tolist(),
        "spectra": [g.tolist() for g in sol.spectra],
        "lambda_sorted": sol.lambda_sorted.tolist(),
        "blocks": {
            "p": sol.blocks.p,
            "levels": sol.blocks.levels.tolist(),
            "mults": sol.blocks.mults.tolist(),
            "cuts": sol.blocks.cuts.tolist(),
            "h": sol.blocks.h.tolist(),
        },
        "t_seq": sol.t_seq.tolist(),
        "stop_iteration": sol.stop_iteration,
        "potentials": {
            "fp": potential_of(sol.lambda_sorted, FP),
            "mse": potential_of(sol.lambda_sorted, MSE),
        },
        "elapsed_seconds": sol.elapsed,
    }


def _solution_from_doc(doc: dict) -> tuple[ProblemInput, PartitionSolution]:
    if doc.get("schema") != 1:
        raise InvalidInput("unsupported or missing schema version")
    inp = ProblemInput(
        alpha=np.asarray(doc["alpha_sorted"], dtype=float),
        dims=np.asarray(doc["dims_sorted"], dtype=int),
        alpha_perm=np.asarray(doc["alpha_perm"], dtype=int),
        dims_perm=np.asarray(doc["dims_perm"], dtype=int),
    )
    b = doc["blocks"]
    blocks = BlockSpectrum(
        p=int(b["p"]),
        levels=np.asarray(b["levels"], dtype=float),
        mults=np.asarray(b["mults"], dtype=int),
        cuts=np.asarray(b["cuts"], dtype=int),
        h=np.asarray(b["h"], dtype=int),
    )
    sol = PartitionSolution(
        partition=np.asarray(doc["partition"], dtype=float),
        spectra=[np.asarray(g, dtype=float) for g in doc["spectra"]],
        t_seq=np.asarray(doc["t_seq"], dtype=float),
        stop_iteration=int(doc["stop_iteration"]),
        lambda_sorted=np.asarray(doc["lambda_sorted"], dtype=float),
        blocks=blocks,
    )
    return inp, sol


def _plot_data_csv(sol: PartitionSolution) -> str:
    lines = ["group,index,level"]
    for j, gamma in enumerate(sol.spectra):
        for i, v in enumerate(gamma, start=1):
            lines.append(f"{j + 1},{i},{float(v)!r}")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    inp = problem_input(_parse_floats(args.alpha, "--alpha"), _parse_ints(args.dims, "--dims"))
    sol = solve(inp, _cfg_from_args(args))
    doc = _solution_doc(inp, sol)
    doc["alpha"] = _parse_floats(args.alpha, "--alpha").tolist()
    doc["dims"] = _parse_ints(args.dims, "--dims").tolist()
    if args.plot_data:
        with open(args.plot_data, "w") as fh:
            fh.write(_plot_data_csv(sol))
    if args.format == "csv":
        _emit(_csv_matrix(sol.partition) + "\n", args.out)
    else:
        _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.infile:
        with open(args.infile) as fh:
            inp, sol = _solution_from_doc(json.load(fh))
    else:
        if not (args.alpha and args.dims):
            raise InvalidInput("synth needs --in FILE or both --alpha and --dims")
        inp = problem_input(_parse_floats(args.alpha, "--alpha"), _parse_ints(args.dims, "--dims"))
        sol = solve(inp, _cfg_from_args(args))
    design = synthesize_design(inp, sol)

    norm_dev = 0.0
    spec_dev = 0.0
    achieved_spectra = []
    for j, fam in enumerate(design):
        norms = fam.norms_sq()
        norm_dev = max(norm_dev, float(np.max(np.abs(norms - sol.partition[:, j]))))
        w = sym_eigenvalues(frame_operator(fam))
        achieved_spectra.append(w.tolist())
        spec_dev = max(spec_dev, float(np.max(np.abs(w - sol.spectra[j]))))
    recomposed = design_norms(design)
    row_dev = float(np.max(np.abs(recomposed - inp.alpha)))
    scale = max(1.0, float(sol.lambda_sorted[0]))
    ok = norm_dev <= 1e-8 * scale and spec_dev <= 1e-8 * scale and row_dev <= 1e-8 * scale

    doc = {
        "schema": 1,
        "dims": inp.dims.tolist(),
        "matrices": [fam.vectors.tolist() for fam in design],
        "verification": {
            "achieved_norms": [fam.norms_sq().tolist() for fam in design],
            "achieved_spectra": achieved_spectra,
            "max_norm_deviation": norm_dev,
            "max_spectrum_deviation": spec_dev,
            "max_row_sum_deviation": row_dev,
            "passed": ok,
        },
    }
    if args.format == "csv":
        parts = []
        for j, fam in enumerate(design):
            parts.append(f"# group {j + 1} ({fam.dim}x{fam.count})")
            parts.append(_csv_matrix(fam.vectors))
        _emit("\n".join(parts) + "\n", args.out)
    else:
        _emit(json.dumps(doc, indent=2), args.out)
    if not ok:
        print("synthesis verification exceeded tolerances", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_verify(args) -> int:
    with open(args.infile) as fh:
        inp, sol = _solution_from_doc(json.load(fh))
    report = verify_solution(inp, sol, _cfg_from_args(args))
    doc = {"schema": 1, **report.to_dict()}
    _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_sample(args) -> int:
    inp = problem_input(_parse_floats(args.alpha, "--alpha"), _parse_ints(args.dims, "--dims"))
    cfg = TrialConfig(seed=_default_seed(args), trials=args.trials)
    report = optimality_trial(inp, cfg)
    doc = {"schema": 1, "seed": cfg.seed, **report.to_dict()}
    _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_mono(args) -> int:
    alpha = _parse_floats(args.alpha, "--alpha")
    beta = _parse_floats(args.beta, "--beta")
    dims = _parse_ints(args.dims, "--dims")
    report = monotonicity_trial(alpha, beta, dims)
    doc = {"schema": 1, **report.to_dict()}
    _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_brute(args) -> int:
    alpha = _parse_floats(args.alpha, "--alpha")
    dims = _parse_ints(args.dims, "--dims")
    inp = problem_input(alpha, dims)
    sol = solve(inp)
    grid_min = brute_force_small(inp.alpha, inp.dims, args.grid_steps)
    algo = potential_of(sol.lambda_sorted, FP)
    doc = {"schema": 1, "grid_min_fp": grid_min, "algorithm_fp": algo,
           "passed": grid_min >= algo - 1e-3}
    _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK if doc["passed"] else EXIT_VERIFY


def _add_common(p: argparse.ArgumentParser, need_alpha: bool = True) -> None:
    p.add_argument("--alpha", required=need_alpha, help="comma-separated positive weights")
    p.add_argument("--dims", required=need_alpha, help="comma-separated dimensions")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="write output to PATH instead of stdout")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol-t", type=float, default=None, dest="tol_t")
    p.add_argument("--tol-flat", type=float, default=None, dest="tol_flat")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optframe",
        description="Optimal frame designs for multitasking devices with energy budgets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal weight partition and spectra")
    _add_common(p)
    p.add_argument("--plot-data", default=None, help="write spectra step profiles as CSV to PATH")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("synth", help="synthesize frame vectors for a solution")
    _add_common(p, need_alpha=False)
    p.add_argument("--in", dest="infile", default=None, help="solve output JSON to synthesize from")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="re-check the identities of a solve output")
    _add_common(p, need_alpha=False)
    p.add_argument("--in", dest="infile", required=True, help="solve output JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="randomized optimality check")
    _add_common(p)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("mono", help="spectral monotonicity check for beta <= alpha")
    _add_common(p)
    p.add_argument("--beta", required=True, help="comma-separated weights, entrywise <= alpha")
    p.set_defaults(func=cmd_mono)

    p = sub.add_parser("brute", help="grid oracle for tiny two-group instances")
    _add_common(p)
    p.add_argument("--grid-steps", type=int, default=200, dest="grid_steps")
    p.set_defaults(func=cmd_brute)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInput, InfeasibleDesign) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OptframeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
