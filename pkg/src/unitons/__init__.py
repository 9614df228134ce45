"""Harmonic two-spheres in complex Grassmannians from meromorphic data.

Exact construction of finite-uniton-number harmonic maps S^2 -> G_p(C^n),
plus the combinatorial classification layer (adapted rank-profile pairs),
the loop/polynomial model, and an algebraic + finite-difference verifier.
"""

from .errors import (
    BadArguments,
    DivisionByZeroFunction,
    InfeasibleEvaluation,
    InfeasiblePair,
    ParseError,
    PatternViolation,
    PoleAtPoint,
    RankDropAtPoint,
    SplitFailure,
    StepTooLarge,
    UnitonError,
)
from .gaussrat import GaussRat, format_gaussrat, parse_gaussrat
from .ratfun import MeroVector, RatFun
from .exactla import (
    Frame,
    project_onto,
    subspace_meet_join,
    subspace_rank,
)
from .chain import (
    F0Array,
    ProjectionStack,
    UnitonChain,
    elementary_C,
    elementary_S,
    h_grid_to_k,
    h_to_r,
    k_to_h,
)

__version__ = "0.1.0"

__all__ = [
    "BadArguments",
    "DivisionByZeroFunction",
    "F0Array",
    "Frame",
    "GaussRat",
    "InfeasibleEvaluation",
    "InfeasiblePair",
    "MeroVector",
    "ParseError",
    "PatternViolation",
    "PoleAtPoint",
    "ProjectionStack",
    "RankDropAtPoint",
    "RatFun",
    "SplitFailure",
    "StepTooLarge",
    "UnitonChain",
    "UnitonError",
    "elementary_C",
    "elementary_S",
    "format_gaussrat",
    "h_grid_to_k",
    "h_to_r",
    "k_to_h",
    "parse_gaussrat",
    "project_onto",
    "subspace_meet_join",
    "subspace_rank",
]
