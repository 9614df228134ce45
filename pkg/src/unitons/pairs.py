"""Adapted rank-profile pairs: the combinatorial skeleton of a construction.

A pair (L, S) of lower-triangular nonnegative-integer matrices records, per
starting row i and derivative offset t, the generic ranks of projected
derivative data taking values in F0 (the L side) and its orthocomplement
(the S side).  This module owns the rank-counting formula for the
tautological bundles, the uniton-number bound, the array-vs-pair matching
validator, exhaustive enumeration of the pairs realizing a target
Grassmannian, and a seeded generator of matching arrays.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from .chain import F0Array, UnitonChain, elementary_C
from .errors import BadArguments, InfeasiblePair
from .exactla import independent_columns
from .gaussrat import ZERO, GaussRat
from .ratfun import MeroVector, RatFun


class OutOfRange(BadArguments):
    """Index outside 0..r."""


# -- the pair ----------------------------------------------------------------


@dataclass(frozen=True)
class AdaptedPair:
    """Column-stored triangular rank profiles.

    L[i][t] is the rank contributed by F0-valued data starting at row i,
    after t projected derivatives; S is the orthocomplement side.  Column i
    has length r - i and is non-increasing.  Sum bounds: sum(L) <= k,
    sum(S) <= n - k, total <= n (total = n means the last flag factor is
    trivial; the enumerator treats that case specially).
    """

    r: int
    k: int
    n: int
    L: tuple
    S: tuple

    def __post_init__(self):
        object.__setattr__(self, "L", tuple(tuple(int(x) for x in col) for col in self.L))
        object.__setattr__(self, "S", tuple(tuple(int(x) for x in col) for col in self.S))
        if not 0 <= self.k <= self.n:
            raise BadArguments(f"k={self.k} outside 0..{self.n}")
        for name, tri in (("L", self.L), ("S", self.S)):
            if len(tri) != self.r:
                raise BadArguments(f"{name} must have {self.r} columns")
            for i, col in enumerate(tri):
                if len(col) != self.r - i:
                    raise BadArguments(f"{name} column {i} must have length {self.r - i}")
                if any(x < 0 for x in col):
                    raise BadArguments(f"{name} entries must be nonnegative")
                if any(col[t] < col[t + 1] for t in range(len(col) - 1)):
                    raise BadArguments(f"{name} column {i} must be non-increasing")
        if self.sum_l() > self.k:
            raise BadArguments("sum of L entries exceeds dim F0")
        if self.sum_s() > self.n - self.k:
            raise BadArguments("sum of S entries exceeds codim F0")
        if self.sum_l() + self.sum_s() > self.n:
            raise BadArguments("total entry sum exceeds the ambient dimension")

    # -- accessors -------------------------------------------------------------

    def l(self, i: int, t: int) -> int:
        if 0 <= i < self.r and 0 <= t < self.r - i:
            return self.L[i][t]
        return 0

    def s(self, i: int, t: int) -> int:
        if 0 <= i < self.r and 0 <= t < self.r - i:
            return self.S[i][t]
        return 0

    def sum_l(self) -> int:
        return sum(sum(col) for col in self.L)

    def sum_s(self) -> int:
        return sum(sum(col) for col in self.S)

    def row_entries(self, row: int):
        """All entries x_t^{row-t} lying on display row ``row``."""
        out = []
        for t in range(row + 1):
            out.append(self.l(t, row - t))
            out.append(self.s(t, row - t))
        return out

    def alpha_rank(self, i: int) -> int:
        """Generic rank of alpha_{i+1}: all entries of display rows 0..i."""
        return sum(sum(self.row_entries(row)) for row in range(i + 1))

    # -- block indices ----------------------------------------------------------

    def block_A(self, i: int) -> int:
        """First-entry prefix sums; A_i = sum_{t<i} (l_t^0 + s_t^0)."""
        return sum(self.l(t, 0) + self.s(t, 0) for t in range(i))

    def block_B(self, i: int) -> int:
        """B_i = A_i + l_i^0 (the L block of row i ends where the S block starts)."""
        return self.block_A(i) + self.l(i, 0)

    def l_block_columns(self, i: int):
        """0-based column indices of the F0-valued block in row i."""
        a = self.block_A(i)
        return list(range(a, a + self.l(i, 0)))

    def s_block_columns(self, i: int):
        b = self.block_B(i)
        return list(range(b, b + self.s(i, 0)))

    # -- display / serialization -------------------------------------------------

    def rows_display(self, side: str):
        """Lower-triangular row-major matrix (paper layout) for printing."""
        tri = self.L if side == "L" else self.S
        out = []
        for row in range(self.r):
            out.append([tri[t][row - t] if row - t < self.r - t and t <= row else 0
                        for t in range(self.r)])
        return out

    def to_json(self):
        return {
            "k": self.k,
            "L": [list(col) for col in self.L],
            "S": [list(col) for col in self.S],
        }

    @staticmethod
    def from_json(obj, r: int, n: int) -> "AdaptedPair":
        return AdaptedPair(r=r, k=int(obj["k"]), n=n,
                           L=tuple(tuple(col) for col in obj["L"]),
                           S=tuple(tuple(col) for col in obj["S"]))

    def swapped(self) -> "AdaptedPair":
        """Interchange the two sides and k with n-k."""
        return AdaptedPair(r=self.r, k=self.n - self.k, n=self.n,
                           L=self.S, S=self.L)

    def flat_key(self):
        row_major = []
        for row in range(self.r):
            row_major.extend(self.l(t, row - t) for t in range(row + 1))
        for row in range(self.r):
            row_major.extend(self.s(t, row - t) for t in range(row + 1))
        return tuple(row_major)

    def dominates(self, other: "AdaptedPair") -> bool:
        """Entrywise >= comparison (same shape)."""
        return all(
            self.l(i, t) >= other.l(i, t) and self.s(i, t) >= other.s(i, t)
            for i in range(self.r) for t in range(self.r - i)
        )


# -- rank formula and bound ----------------------------------------------------


def rank_formula(pair: AdaptedPair, i: int) -> int:
    """Generic rank of the tautological bundle F_i, combinatorially."""
    if not 0 <= i <= pair.r:
        raise OutOfRange(f"partial-map index {i} outside 0..{pair.r}")
    if i == 0:
        return pair.k
    if i % 2 == 0:
        acc = pair.k
        for j in range(i // 2):
            for t in range(2 * j + 2):
                acc += pair.s(t, 2 * j + 1 - t) - pair.l(t, 2 * j + 1 - t)
        return acc
    acc = pair.k
    for j in range((i - 1) // 2 + 1):
        for t in range(2 * j + 1):
            acc += pair.s(t, 2 * j - t) - pair.l(t, 2 * j - t)
    return pair.n - acc


def uniton_bound(k: int, p: int, n: int) -> int:
    """Sharp bound r_k on the uniton number for maps into G_p(C^n), dim F0 = k.

    Hypothesis 2p <= n; callers with 2p > n must dualize first.  The k = p
    case tightens to p - 1 only when 2p < n: at 2p = n the bound p is
    attained (middle-Grassmannian diagonal).
    """
    if 2 * p > n:
        raise BadArguments(f"uniton_bound needs 2p <= n, got p={p}, n={n}")
    if not 0 <= k <= n:
        raise BadArguments(f"k={k} outside 0..{n}")
    if k < p:
        a_k = 1 if k % 2 == 0 else 0
        return min(2 * p - k - a_k, n - 1)
    if k + p <= n:
        if k == p and 2 * p < n:
            return p - 1
        return p
    a_k = 1 if (n - k) % 2 == 0 else 0
    return 2 * p - (n - k) - a_k


def uniton_bound_dualized(k: int, p: int, n: int) -> int:
    """Bound valid for any p, via the rank-complement symmetry."""
    if 2 * p <= n:
        return uniton_bound(k, p, n)
    return uniton_bound(n - k, n - p, n)


def bound_case(k: int, p: int, n: int) -> str:
    """Case label of the bound theorem ((i)/(ii)/(iii)), for 2p <= n."""
    if k < p:
        return "i"
    return "ii" if k + p <= n else "iii"


def bound_a_k(k: int, p: int, n: int) -> int:
    if k < p:
        return 1 if k % 2 == 0 else 0
    return 1 if (n - k) % 2 == 0 else 0


# -- matching ------------------------------------------------------------------


@dataclass
class MatchClause:
    clause: str
    row: int
    side: str
    expected: int
    got: object
    ok: bool

    def to_json(self):
        return {
            "clause": self.clause,
            "row": self.row,
            "side": self.side,
            "expected": self.expected,
            "got": self.got,
            "ok": self.ok,
        }


@dataclass
class MatchReport:
    clauses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.clauses)

    def failures(self):
        return [c for c in self.clauses if not c.ok]

    def to_json(self):
        return {"passed": self.passed, "clauses": [c.to_json() for c in self.clauses]}


def _projected_block_vectors(chain: UnitonChain, pair: AdaptedPair, row: int,
                             j: int, cols, z0):
    """Evaluate C^row_row K^{(row-j)}_{j, c} for c in the given block columns."""
    stack = chain.stack_at(z0, depth=row)
    cmat = elementary_C(row, row, stack)
    out = []
    order = row - j
    n = chain.n
    for c in cols:
        vec = chain.source.entries[j][c]
        if order:
            vec = vec.derivative(order)
        vals = vec.eval(z0)
        out.append([
            sum((cmat[a][b] * vals[b] for b in range(n) if cmat[a][b] and vals[b]),
                ZERO)
            for a in range(n)
        ])
    return out


def matching_check(array: F0Array, pair: AdaptedPair, points=None,
                   chain: UnitonChain | None = None) -> MatchReport:
    """Verify the block-membership and rank clauses of array-vs-pair matching.

    Rank clauses are generic: the rank of each span is the maximum over the
    sample points.  Failures land in the report; nothing raises.
    """
    if (array.r, array.n, array.k) != (pair.r, pair.n, pair.k):
        raise BadArguments("array and pair disagree on (r, n, k)")
    if chain is None:
        chain = UnitonChain(array)
    if points is None:
        points = chain.points
    report = MatchReport()
    n = array.n

    for i in range(pair.r):
        ok_l = all(
            array._lies_in_F0(array.entries[i][c]) for c in pair.l_block_columns(i)
        )
        report.clauses.append(MatchClause("i", i, "L", 1, int(ok_l), ok_l))
        ok_s = all(
            array._lies_in_F0perp(array.entries[i][c]) for c in pair.s_block_columns(i)
        )
        report.clauses.append(MatchClause("i", i, "S", 1, int(ok_s), ok_s))

    def generic_rank(vector_lists):
        best = 0
        for vecs in vector_lists:
            best = max(best, len(independent_columns(vecs, n)))
        return best

    for i in range(pair.r):
        combined_l = {z0: [] for z0 in points}
        combined_s = {z0: [] for z0 in points}
        for j in range(i + 1):
            lcols = pair.l_block_columns(j)
            per_point = []
            for z0 in points:
                vecs = _projected_block_vectors(chain, pair, i, j, lcols, z0)
                combined_l[z0].extend(vecs)
                per_point.append(vecs)
            got = generic_rank(per_point)
            want = pair.l(j, i - j)
            report.clauses.append(MatchClause("ii", i, f"L[j={j}]", want, got, got == want))
            scols = pair.s_block_columns(j)
            per_point = []
            for z0 in points:
                vecs = _projected_block_vectors(chain, pair, i, j, scols, z0)
                combined_s[z0].extend(vecs)
                per_point.append(vecs)
            got = generic_rank(per_point)
            want = pair.s(j, i - j)
            report.clauses.append(MatchClause("ii", i, f"S[j={j}]", want, got, got == want))
        want = sum(pair.l(j, i - j) for j in range(i + 1))
        got = generic_rank(combined_l.values())
        report.clauses.append(MatchClause("iii", i, "L", want, got, got == want))
        want = sum(pair.s(j, i - j) for j in range(i + 1))
        got = generic_rank(combined_s.values())
        report.clauses.append(MatchClause("iii", i, "S", want, got, got == want))
    return report


# -- random matching arrays ------------------------------------------------------


def _random_rat(rng: random.Random) -> mpq:
    num = rng.randint(-9, 9)
    den = rng.choice((1, 1, 2, 3))
    return mpq(num, den)


def _random_gauss(rng: random.Random) -> GaussRat:
    return GaussRat(_random_rat(rng), _random_rat(rng))


def random_matching_array(pair: AdaptedPair, seed: int, degree: int,
                          F0_basis=None) -> F0Array:
    """Fill the pair's blocks with random polynomial data, zero elsewhere.

    Columns whose rank profile dies at offset T are degree-forced to T so the
    drop is certain; columns alive through their whole range get the full
    ``degree``.  Success is generic, not guaranteed: the caller must run
    matching_check.
    """
    r, n, k = pair.r, pair.n, pair.k
    max_block = max(
        [pair.l(i, 0) for i in range(r)] + [pair.s(i, 0) for i in range(r)],
        default=0,
    )
    if degree < r + max_block:
        raise InfeasiblePair(
            f"degree {degree} < r + max block rank = {r + max_block}"
        )
    rng = random.Random(seed)
    if F0_basis is None:
        basis_l = [[GaussRat(1) if a == m else ZERO for a in range(n)] for m in range(k)]
        basis_s = [[GaussRat(1) if a == k + m else ZERO for a in range(n)]
                   for m in range(n - k)]
    else:
        from .exactla import Frame, subspace_orthocomplement

        basis_l = [list(c) for c in F0_basis]
        basis_s = [list(c) for c in subspace_orthocomplement(Frame(tuple(tuple(c) for c in F0_basis), n)).columns]

    grid = [[None] * n for _ in range(r)]

    def fill_block(row, cols, profile, basis):
        for c_idx, col in enumerate(cols):
            alive = [t for t in range(len(profile)) if profile[t] > c_idx]
            t_max = max(alive)
            full_range = t_max == len(profile) - 1
            deg = degree if full_range else t_max
            coords = [[ZERO] * n for _ in range(deg + 1)]
            for d in range(deg + 1):
                vec = [ZERO] * n
                while all(not x for x in vec):
                    vec = [ZERO] * n
                    for b in basis:
                        a = _random_gauss(rng)
                        for idx in range(n):
                            if b[idx]:
                                vec[idx] = vec[idx] + a * b[idx]
                coords[d] = vec
            entry = MeroVector([
                RatFun([coords[d][idx] for d in range(deg + 1)])
                for idx in range(n)
            ])
            grid[row][col] = entry

    for i in range(r):
        if pair.l(i, 0):
            fill_block(i, pair.l_block_columns(i), pair.L[i], basis_l)
        if pair.s(i, 0):
            fill_block(i, pair.s_block_columns(i), pair.S[i], basis_s)

    entries = [
        [grid[i][j] if grid[i][j] is not None else MeroVector.zero(n)
         for j in range(n)]
        for i in range(r)
    ]
    return F0Array(n, k, entries, F0_basis=F0_basis)


def alpha1_is_full(array: F0Array) -> bool:
    """Exact coefficient-rank fullness test on the first-row data."""
    vectors = []
    for j in range(array.n):
        vectors.extend(array.entries[0][j].coefficient_vectors())
    return len(independent_columns(vectors, array.n)) == array.n


# -- enumeration -----------------------------------------------------------------


def _monotone_columns(length: int, cap: int, budget: int, unit_first: bool):
    """All non-increasing integer columns of the given length with sum <= budget."""
    if length == 0:
        yield ()
        return
    top = min(cap, budget)
    for first in range(top, -1, -1):
        if unit_first and first > 1:
            continue
        for rest in _monotone_columns(length - 1, first, budget - first, unit_first):
            yield (first,) + rest


def _triangles(r: int, budget: int, unit_first_col: bool):
    """All column-monotone triangular profiles with total sum <= budget."""

    def rec(i, remaining):
        if i == r:
            yield ()
            return
        for col in _monotone_columns(r - i, remaining, remaining,
                                     unit_first_col and i == 0):
            for rest in rec(i + 1, remaining - sum(col)):
                yield (col,) + rest

    yield from rec(0, budget)


def static_candidates(n: int, p: int, r: int, k: int):
    """Adapted pairs at fixed k passing every static classification filter.

    Filters: column monotonicity and sum budgets; total <= n-1 (proper last
    uniton), relaxed to n exactly on the middle-Grassmannian diagonal
    n = 2p = 2k where the saturated pair is the classification; seed-row
    entries 0/1 (single derivative towers, the shape fullness forces);
    l_0^0 >= 1 when k >= 1 and s_0^0 >= 1 when k <= n-1; display row r-1
    not identically zero (uniton number exactly r); rank formula hits p;
    entrywise-minimal among surviving candidates (no removable data).
    """
    total_cap = n if (n == 2 * p and k == p) else n - 1
    out = []
    for L in _triangles(r, min(k, total_cap), True):
        lsum = sum(sum(c) for c in L)
        if k >= 1 and (not L[0] or L[0][0] < 1):
            continue
        for S in _triangles(r, min(n - k, total_cap - lsum), True):
            if k <= n - 1 and (not S[0] or S[0][0] < 1):
                continue
            pair = AdaptedPair(r=r, k=k, n=n, L=L, S=S)
            if not any(pair.row_entries(r - 1)):
                continue
            if rank_formula(pair, r) != p:
                continue
            out.append(pair)
    out.sort(key=AdaptedPair.flat_key)
    return out


def minimal_pairs(pairs):
    """Drop every pair that entrywise dominates another one in the list.

    A dominating pair carries data beyond what its classification needs;
    run this after the realizability pass so the comparison set only holds
    genuinely constructible pairs.
    """
    return [
        p1 for p1 in pairs
        if not any(p2 is not p1 and p1.dominates(p2) for p2 in pairs)
    ]


def realizes(pair: AdaptedPair, seeds=(1, 2, 3), degree: int | None = None,
             sample_count: int = 4):
    """Ground-truth pass: some seeded random array matches the pair with a
    full alpha_1.  Returns the witnessing array or None."""
    if degree is None:
        max_block = max(
            [pair.l(i, 0) for i in range(pair.r)]
            + [pair.s(i, 0) for i in range(pair.r)] + [0]
        )
        degree = max(pair.r + max_block, pair.k, pair.n - pair.k, 1)
    for seed in seeds:
        try:
            array = random_matching_array(pair, seed=seed, degree=degree)
        except InfeasiblePair:
            return None
        if not alpha1_is_full(array):
            continue
        chain = UnitonChain(array, sample_count=sample_count)
        if matching_check(array, pair, chain=chain).passed:
            return array
    return None


def enumerate_pairs(n: int, p: int, r: int, realizability: bool = True):
    """All (k, pair) with rank F_r = p, uniton number exactly r, and the
    fullness/realizability filters; k descending, then row-major lex."""
    if not 1 <= r <= n - 1:
        raise BadArguments(f"r={r} outside 1..{n - 1}")
    if not 0 <= p <= n:
        raise BadArguments(f"p={p} outside 0..{n}")
    out = []
    for k in range(n, -1, -1):
        if r > uniton_bound_dualized(k, p, n):
            continue
        kept = static_candidates(n, p, r, k)
        if realizability:
            kept = [pair for pair in kept if realizes(pair) is not None]
        for pair in minimal_pairs(kept):
            out.append((k, pair))
    return out
