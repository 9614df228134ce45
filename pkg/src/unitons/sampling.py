"""Generic evaluation point sampling.

Points are Gaussian rationals whose real and imaginary parts have numerator
and denominator of magnitude at most 97.  Pole-bearing points are rejected
outright; rank genericity is the caller's business (the chain builder keeps
drawing until it holds 8 points realizing the maximal observed ranks).
"""

from __future__ import annotations

import random

from gmpy2 import mpq

from .errors import InfeasibleEvaluation
from .gaussrat import GaussRat

MAGNITUDE = 97
DEFAULT_COUNT = 8


def point_stream(seed: int):
    """Deterministic infinite stream of candidate points."""
    rng = random.Random(seed)

    def draw_rat():
        num = rng.randint(-MAGNITUDE, MAGNITUDE)
        den = rng.randint(1, MAGNITUDE)
        return mpq(num, den)

    while True:
        yield GaussRat(draw_rat(), draw_rat())


def sample_pole_free(ratfun_sources, count: int = DEFAULT_COUNT, seed: int = 0,
                     budget: int = 512):
    """First ``count`` stream points avoiding every pole of the given functions.

    ``ratfun_sources`` is an iterable of RatFun; duplicates are fine.
    """
    funs = list(ratfun_sources)
    out = []
    seen = set()
    stream = point_stream(seed)
    for _ in range(budget):
        z = next(stream)
        if z in seen:
            continue
        seen.add(z)
        if any(f.has_pole_at(z) for f in funs):
            continue
        out.append(z)
        if len(out) == count:
            return out
    raise InfeasibleEvaluation(
        f"could not find {count} pole-free points within {budget} draws"
    )
