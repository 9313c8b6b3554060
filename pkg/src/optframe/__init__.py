"""Optimal frame designs for multitasking devices with energy budgets.

Computes the universally optimal weight partition and spectra for a set
of positive energy budgets split across tasks of given dimensions, and
synthesizes explicit frame vector families realizing them.
"""

from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    InfeasibleDesign,
    InternalInvariantViolation,
    InvalidInput,
    OptframeError,
    RangeError,
    StructureError,
    TraceMismatch,
)
from .kernels import BACKEND
from .oracle import (
    TrialConfig,
    brute_force_small,
    monotonicity_trial,
    optimality_trial,
    random_design,
    random_partition,
)
from .partition import (
    BlockSpectrum,
    PartitionSolution,
    ProblemInput,
    ToleranceConfig,
    problem_input,
    solve,
    verify_solution,
)
from .potentials import (
    FP,
    MSE,
    Potential,
    SpectrumVector,
    joint_potential,
    lambda_vector,
    pinched_potential,
    potential_of,
    power_potential,
)
from .synth import (
    FrameFamily,
    frame_operator,
    schur_horn_vectors,
    sym_eigenvalues,
    synthesize_design,
)
from .vecmaj import BlockVector, block_majorizes, majorizes, sort_desc, submajorizes
from .waterfill import (
    DeformationFamily,
    WaterFillResult,
    deform_at,
    deformation_family,
    deformed_spectrum,
    water_fill,
)

__version__ = "1.0.0"

__all__ = [
    "BACKEND",
    "BlockSpectrum",
    "BlockVector",
    "ConvergenceError",
    "DeformationFamily",
    "DimensionError",
    "DomainError",
    "FP",
    "FrameFamily",
    "InfeasibleDesign",
    "InternalInvariantViolation",
    "InvalidInput",
    "MSE",
    "OptframeError",
    "PartitionSolution",
    "Potential",
    "ProblemInput",
    "RangeError",
    "SpectrumVector",
    "StructureError",
    "ToleranceConfig",
    "TraceMismatch",
    "TrialConfig",
    "WaterFillResult",
    "block_majorizes",
    "brute_force_small",
    "deform_at",
    "deformation_family",
    "deformed_spectrum",
    "frame_operator",
    "joint_potential",
    "lambda_vector",
    "majorizes",
    "monotonicity_trial",
    "optimality_trial",
    "pinched_potential",
    "potential_of",
    "power_potential",
    "problem_input",
    "random_design",
    "random_partition",
    "schur_horn_vectors",
    "solve",
    "sort_desc",
    "submajorizes",
    "sym_eigenvalues",
    "synthesize_design",
    "verify_solution",
    "water_fill",
    "__version__",
]
