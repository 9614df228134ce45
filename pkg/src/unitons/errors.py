"""Exception types shared across the library."""


class UnitonError(Exception):
    """Base class for all library errors."""


class ParseError(UnitonError):
    """Malformed textual or JSON input."""


class DivisionByZeroFunction(UnitonError):
    """Division by the zero rational function."""


class PoleAtPoint(UnitonError):
    """Evaluation requested at a pole of some rational function."""


class PatternViolation(UnitonError):
    """A grid of meromorphic vectors breaks the alternating base-space pattern."""


class RankDropAtPoint(UnitonError):
    """A constructed frame has lower rank at this point than its generic rank."""


class SplitFailure(UnitonError):
    """A subspace fails to split against the running tautological bundle."""


class BadArguments(UnitonError):
    """Arguments outside the hypotheses of a combinatorial operation."""


class InfeasiblePair(UnitonError):
    """A rank-profile pair demands more derivative data than the degree budget allows."""


class StepTooLarge(UnitonError):
    """Finite-difference step failed the Richardson (h, h/2) agreement guard."""


class InfeasibleEvaluation(UnitonError):
    """No generic evaluation points could be found within the sampling budget."""
