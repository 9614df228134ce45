"""Construction engine for harmonic maps built from alternating meromorphic data.

The pipeline: an F0Array (grid of meromorphic vectors whose columns alternate
between a fixed subspace F0 and its orthocomplement) is transformed into an
H-grid by an exact binomial recombination; the H-grid spans the nested
subbundles alpha_1, ..., alpha_r through the elementary projection operators
C^i_s; the map value at a point is the product of the constant factor Q with
the reflection factors of the alphas.  All pointwise work is exact over Q(i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    InfeasibleEvaluation,
    PatternViolation,
    PoleAtPoint,
    RankDropAtPoint,
    SplitFailure,
)
from .exactla import (
    Frame,
    Matrix,
    complement_projector,
    eye,
    independent_columns,
    mat_add,
    mat_eq,
    mat_mul,
    mat_sub,
    project_onto,
    subspace_intersect,
    subspace_orthocomplement,
    subspace_sum,
    zeros,
)
from .gaussrat import ONE, ZERO, GaussRat
from .ratfun import MeroVector, RatFun
from .sampling import DEFAULT_COUNT, point_stream

from . import floatla


def gbinom(a: int, b: int) -> GaussRat:
    return GaussRat(math.comb(a, b)) if 0 <= b <= a else GaussRat(0)


# -- F0 arrays ---------------------------------------------------------------


def _standard_basis_columns(n: int, k: int):
    return tuple(
        tuple(ONE if i == j else ZERO for i in range(n)) for j in range(k)
    )


class F0Array:
    """An r x n grid of meromorphic vectors with the alternating column pattern.

    Per column, either the even rows take values in F0 and the odd rows in
    F0-perp, or the other way around; zero vectors are compatible with both.
    The pattern is checked exactly on numerator coefficients.
    """

    def __init__(self, n, k, entries, F0_basis=None, validate=True):
        self.n = int(n)
        self.k = int(k)
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k={k} outside 0..{n}")
        self.entries = tuple(
            tuple(self._coerce_entry(v) for v in row) for row in entries
        )
        self.r = len(self.entries)
        for row in self.entries:
            if len(row) != self.n:
                raise ValueError("array rows must have length n")
        if F0_basis is None:
            self.F0_basis = _standard_basis_columns(self.n, self.k)
        else:
            self.F0_basis = tuple(tuple(c) for c in F0_basis)
            cols = independent_columns(list(self.F0_basis), self.n)
            if len(cols) != self.k or len(self.F0_basis) != self.k:
                raise ValueError("F0_basis must be k independent vectors")
        self.F0_frame = Frame(self.F0_basis, self.n)
        self.F0_projector = project_onto(self.F0_frame)
        self.F0_perp_projector = complement_projector(self.F0_projector)
        self._standard_f0 = self.F0_basis == _standard_basis_columns(self.n, self.k)
        self.column_types = tuple(
            self._column_type(j, strict=validate) for j in range(self.n)
        )

    def _coerce_entry(self, v):
        if v is None:
            return MeroVector.zero(self.n)
        if not isinstance(v, MeroVector):
            v = MeroVector(v)
        if v.n != self.n:
            raise ValueError("entry has wrong ambient dimension")
        return v

    def _lies_in_F0(self, vec: MeroVector) -> bool:
        if self._standard_f0:
            return all(vec.coords[i].is_zero() for i in range(self.k, self.n))
        perp = self.F0_perp_projector
        for cv in vec.coefficient_vectors():
            if any(sum((perp[i][j] * cv[j] for j in range(self.n)), ZERO)
                   for i in range(self.n)):
                return False
        return True

    def _lies_in_F0perp(self, vec: MeroVector) -> bool:
        if self._standard_f0:
            return all(vec.coords[i].is_zero() for i in range(self.k))
        proj = self.F0_projector
        for cv in vec.coefficient_vectors():
            if any(sum((proj[i][j] * cv[j] for j in range(self.n)), ZERO)
                   for i in range(self.n)):
                return False
        return True

    def _column_type(self, j: int, strict: bool = True) -> str:
        ok_even_f0 = True  # even rows in F0, odd rows in F0-perp
        ok_even_perp = True
        for i in range(self.r):
            v = self.entries[i][j]
            if v.is_zero():
                continue
            in_f0 = self._lies_in_F0(v)
            in_perp = self._lies_in_F0perp(v)
            if not in_f0 and not in_perp:
                if strict:
                    raise PatternViolation(
                        f"entry ({i},{j + 1}) lies in neither F0 nor its complement"
                    )
                return "broken"
            want_f0 = i % 2 == 0
            if not (in_f0 if want_f0 else in_perp):
                ok_even_f0 = False
            if not (in_perp if want_f0 else in_f0):
                ok_even_perp = False
        if ok_even_f0 and ok_even_perp:
            return "either"
        if ok_even_f0:
            return "type1"
        if ok_even_perp:
            return "type2"
        if strict:
            raise PatternViolation(
                f"column {j + 1} breaks the alternating pattern"
            )
        return "broken"

    def all_ratfuns(self):
        for row in self.entries:
            for vec in row:
                yield from vec.coords


# -- the K -> H transform -----------------------------------------------------


def k_to_h(array: F0Array) -> "UnitonChain":
    """Binomial recombination of the array rows into spanning data.

    Row 0 is copied; row i (i >= 1) becomes the alternating-sign binomial
    combination of rows 1..i.  The inverse relation reassembles the array
    exactly (see h_grid_to_k).
    """
    return UnitonChain(array)


def _h_from_k(array: F0Array):
    r, n = array.r, array.n
    h = []
    for i in range(r):
        row = []
        for j in range(n):
            if i == 0:
                row.append(array.entries[0][j])
                continue
            acc = MeroVector.zero(n)
            for s in range(1, i + 1):
                c = gbinom(i - 1, s - 1)
                if (s + i) % 2 == 1:
                    c = -c
                term = array.entries[s][j].scale(RatFun.const(c))
                acc = acc + term
            row.append(acc)
        h.append(tuple(row))
    return tuple(h)


def h_grid_to_k(chain: "UnitonChain"):
    """Inverse transform: K_{i,j} = sum_{s=1..i} binom(i-1, s-1) H_{s,j}."""
    r, n = chain.r, chain.n
    out = []
    for i in range(r):
        row = []
        for j in range(n):
            if i == 0:
                row.append(chain.H[0][j])
                continue
            acc = MeroVector.zero(n)
            for s in range(1, i + 1):
                acc = acc + chain.H[s][j].scale(RatFun.const(gbinom(i - 1, s - 1)))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def h_to_r(chain: "UnitonChain"):
    """Polynomial-model rows: R_i = sum_l binom(i, l) H_l."""
    r, n = chain.r, chain.n
    out = []
    for i in range(r):
        row = []
        for j in range(n):
            acc = MeroVector.zero(n)
            for l in range(i + 1):
                acc = acc + chain.H[l][j].scale(RatFun.const(gbinom(i, l)))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


# -- projection stacks --------------------------------------------------------


@dataclass
class ProjectionStack:
    """Projections pi_1..pi_depth onto alpha_1..alpha_depth at one point.

    sections[i] maps (k, j) to the spanning column alpha^{(k)}_{i+1,j}
    (zero columns included so derivative bookkeeping stays label-stable).
    """

    point: GaussRat
    n: int
    frames: list = field(default_factory=list)
    projectors: list = field(default_factory=list)
    sections: list = field(default_factory=list)
    _cmemo: dict = field(default_factory=dict)
    _smemo: dict = field(default_factory=dict)

    @property
    def depth(self) -> int:
        return len(self.projectors)

    def pi(self, l: int) -> Matrix:
        return self.projectors[l - 1]

    def pi_perp(self, l: int) -> Matrix:
        return complement_projector(self.projectors[l - 1])


def elementary_C(i: int, s: int, stack: ProjectionStack) -> Matrix:
    """s'th elementary function of pi_i^perp, ..., pi_1^perp (Pascal recursion)."""
    n = stack.n
    if s < 0 or s > i:
        return zeros(n, n)
    if s == 0:
        return eye(n)
    if i > stack.depth:
        raise ValueError(f"stack holds {stack.depth} projectors, need {i}")
    key = (i, s)
    hit = stack._cmemo.get(key)
    if hit is not None:
        return hit
    val = mat_mul(stack.pi_perp(i), elementary_C(i - 1, s - 1, stack))
    if s <= i - 1:
        val = mat_add(val, elementary_C(i - 1, s, stack))
    stack._cmemo[key] = val
    return val


def elementary_S(i: int, j: int, stack: ProjectionStack) -> Matrix:
    """Sum of ordered products Pi_i...Pi_1 with exactly j perp factors."""
    n = stack.n
    if i < 0 or j < 0 or j > i:
        return zeros(n, n)
    if i == 0:
        return eye(n)
    if i > stack.depth:
        raise ValueError(f"stack holds {stack.depth} projectors, need {i}")
    key = (i, j)
    hit = stack._smemo.get(key)
    if hit is not None:
        return hit
    val = mat_mul(stack.pi(i), elementary_S(i - 1, j, stack))
    if j >= 1:
        val = mat_add(val, mat_mul(stack.pi_perp(i),
                                   elementary_S(i - 1, j - 1, stack)))
    stack._smemo[key] = val
    return val


# -- the chain ----------------------------------------------------------------


class UnitonChain:
    """An F0Array together with everything derived from it.

    Immutable after construction; all evaluation methods are pure.  Generic
    ranks of every alpha_i and F_i are pinned at build time as the maximum
    over the standard sample points, and later evaluations are checked
    against them.
    """

    def __init__(self, source: F0Array, q_sign: int = 1, *, seed: int = 0,
                 points=None, sample_count: int = DEFAULT_COUNT, _twin=None):
        if q_sign not in (1, -1):
            raise ValueError("q_sign must be +1 or -1")
        self.source = source
        self.q_sign = q_sign
        self.n = source.n
        self.k = source.k
        self.r = source.r
        self.H = _h_from_k(source)
        self._hderivs = {}
        self._stacks = {} if _twin is None else _twin._stacks
        self.F0_frame = source.F0_frame
        self.F0_projector = source.F0_projector
        if _twin is None:
            self._establish_generic(seed=seed, points=points, count=sample_count)
        else:
            self.points = _twin.points
            self.generic_alpha_ranks = _twin.generic_alpha_ranks
            base_f = _twin.generic_f_ranks_plus
            self.generic_f_ranks_plus = base_f

    # -- derived data --------------------------------------------------------

    def h_deriv(self, i: int, j: int, order: int) -> MeroVector:
        key = (i, j, order)
        hit = self._hderivs.get(key)
        if hit is None:
            if order == 0:
                hit = self.H[i][j]
            else:
                hit = self.h_deriv(i, j, order - 1).derivative()
            self._hderivs[key] = hit
        return hit

    def start_frame(self) -> Frame:
        """The constant bundle the tautological chain starts from (F0 or its
        complement, per the sign of the constant factor)."""
        if self.q_sign == 1:
            return self.F0_frame
        return subspace_orthocomplement(self.F0_frame)

    def q_matrix(self) -> Matrix:
        p = project_onto(self.start_frame())
        return mat_sub(p, complement_projector(p))

    def dualize(self) -> "UnitonChain":
        """Flip the constant factor's sign; realizes F -> F-perp on every F_i."""
        return UnitonChain(self.source, -self.q_sign, _twin=self)

    @property
    def generic_f_ranks(self):
        """Generic ranks of F_0..F_r for this chain's sign."""
        if self.q_sign == 1:
            return self.generic_f_ranks_plus
        return tuple(self.n - x for x in self.generic_f_ranks_plus)

    # -- pointwise construction ----------------------------------------------

    def _alpha_sections(self, i: int, z0: GaussRat, stack: ProjectionStack):
        """Labeled spanning columns of alpha_{i+1}: (k, j) -> vector."""
        out = {}
        cmats = {s: elementary_C(i, s, stack) for s in range(i + 1)}
        for kk in range(i + 1):
            for j in range(self.n):
                acc = None
                for s in range(kk, i + 1):
                    h = self.h_deriv(s - kk, j, kk)
                    if all(c.is_zero() for c in h.coords):
                        continue
                    hv = h.eval(z0)
                    cm = cmats[s]
                    term = [
                        sum((cm[a][b] * hv[b] for b in range(self.n)
                             if cm[a][b] and hv[b]), ZERO)
                        for a in range(self.n)
                    ]
                    if acc is None:
                        acc = term
                    else:
                        acc = [x + y for x, y in zip(acc, term)]
                if acc is None:
                    acc = [ZERO] * self.n
                out[(kk, j)] = tuple(acc)
        return out

    def stack_at(self, z0: GaussRat, depth: int | None = None,
                 check_rank: bool = False) -> ProjectionStack:
        """Build (and cache) the projection stack at z0 up to ``depth``."""
        if depth is None:
            depth = self.r
        stack = self._stacks.get(z0)
        if stack is None:
            stack = ProjectionStack(point=z0, n=self.n)
            self._stacks[z0] = stack
        while stack.depth < depth:
            i = stack.depth
            sections = self._alpha_sections(i, z0, stack)
            cols = [v for (_, v) in sorted(sections.items()) if any(v)]
            frame = Frame(tuple(cols), self.n, z0)
            stack.sections.append(sections)
            stack.frames.append(frame)
            stack.projectors.append(project_onto(frame))
        if check_rank and self.generic_alpha_ranks is not None:
            for i in range(depth):
                have = stack.frames[i].rank()
                want = self.generic_alpha_ranks[i]
                if have != want:
                    raise RankDropAtPoint(
                        f"alpha_{i + 1} has rank {have} < generic {want} at z = {z0}"
                    )
        return stack

    def build_alpha(self, i: int, z0: GaussRat,
                    stack: ProjectionStack | None = None) -> Frame:
        """Frame spanning alpha_{i+1} at z0 (zero columns dropped)."""
        if stack is None:
            stack = self.stack_at(z0, depth=i)
        if stack.depth > i:
            return stack.frames[i]
        if stack.depth < i:
            raise ValueError("stack is too shallow for this level")
        sections = self._alpha_sections(i, z0, stack)
        cols = [v for (_, v) in sorted(sections.items()) if any(v)]
        return Frame(tuple(cols), self.n, z0)

    def evaluate_phi(self, i: int, z0: GaussRat, check_rank: bool = True) -> Matrix:
        """phi_i(z0) = Q (pi_1 - pi_1^perp) ... (pi_i - pi_i^perp), exact."""
        if not 0 <= i <= self.r:
            raise ValueError(f"partial-map index {i} outside 0..{self.r}")
        stack = self.stack_at(z0, depth=i, check_rank=check_rank)
        acc = self.q_matrix()
        for l in range(1, i + 1):
            refl = mat_sub(stack.pi(l), stack.pi_perp(l))
            acc = mat_mul(acc, refl)
        return acc

    def f_chain(self, z0: GaussRat, strict: bool = True, check_rank: bool = True):
        """Tautological bundles F_1..F_r at z0.

        strict mode raises SplitFailure when rank additivity against the
        running bundle fails or when phi_i is not the reflection in F_i.
        """
        stack = self.stack_at(z0, check_rank=check_rank)
        current = Frame(self.start_frame().columns, self.n, z0)
        out = []
        for i in range(1, self.r + 1):
            alpha = stack.frames[i - 1]
            alpha_perp = subspace_orthocomplement(alpha)
            cur_perp = subspace_orthocomplement(current)
            inter1 = subspace_intersect(alpha, current)
            inter2 = subspace_intersect(alpha_perp, cur_perp)
            if strict:
                inside = inter1.rank()
                outside = subspace_intersect(alpha, cur_perp).rank()
                if inside + outside != alpha.rank():
                    raise SplitFailure(
                        f"F_{i - 1} does not split alpha_{i} at z = {z0}"
                    )
            nxt = subspace_sum(inter1, inter2)
            if strict:
                p = project_onto(nxt)
                refl = mat_sub(p, complement_projector(p))
                if not mat_eq(refl, self.evaluate_phi(i, z0, check_rank=False)):
                    raise SplitFailure(
                        f"phi_{i} is not the reflection in F_{i} at z = {z0}"
                    )
            out.append(nxt)
            current = nxt
        return out

    # -- float backend ---------------------------------------------------------

    def evaluate_phi_complex(self, i: int, z0: complex):
        """Double-precision mirror of evaluate_phi (SVD projectors)."""
        import numpy as np

        if not 0 <= i <= self.r:
            raise ValueError(f"partial-map index {i} outside 0..{self.r}")
        n = self.n
        projectors = []
        cmemo = {}

        def cmat(ii, ss):
            if ss < 0 or ss > ii:
                return np.zeros((n, n), dtype=complex)
            if ss == 0:
                return np.eye(n, dtype=complex)
            key = (ii, ss)
            if key not in cmemo:
                perp = np.eye(n) - projectors[ii - 1]
                cmemo[key] = perp @ cmat(ii - 1, ss - 1) + cmat(ii - 1, ss)
            return cmemo[key]

        for lvl in range(i):
            cols = []
            for kk in range(lvl + 1):
                for j in range(n):
                    acc = np.zeros(n, dtype=complex)
                    for s in range(kk, lvl + 1):
                        h = self.h_deriv(s - kk, j, kk)
                        if all(c.is_zero() for c in h.coords):
                            continue
                        hv = np.array(h.eval_complex(z0), dtype=complex)
                        acc = acc + cmat(lvl, s) @ hv
                    cols.append(acc)
            scale = max((float(abs(c).max()) for c in cols if c.size), default=0.0)
            keep = [c for c in cols if scale and float(abs(c).max()) > 1e-12 * scale]
            projectors.append(floatla.projector([list(c) for c in keep], n))
        q = np.array([[complex(x) for x in row] for row in self.q_matrix()])
        acc = q
        for lvl in range(i):
            p = projectors[lvl]
            acc = acc @ (2.0 * p - np.eye(n))
        return acc

    # -- genericity ------------------------------------------------------------

    def _rank_signature(self, z0: GaussRat):
        stack = self.stack_at(z0)
        alpha_ranks = tuple(f.rank() for f in stack.frames)
        f_ranks = [self.F0_frame.rank()]
        try:
            frames = self.f_chain(z0, strict=False, check_rank=False)
            f_ranks.extend(f.rank() for f in frames)
        except PoleAtPoint:
            raise
        return alpha_ranks, tuple(f_ranks)

    def _establish_generic(self, seed: int, points, count: int):
        self.generic_alpha_ranks = None
        funs = list(self.source.all_ratfuns()) + [
            c for row in self.H for vec in row for c in vec.coords
        ]
        if points is not None:
            chosen = list(points)
            sigs = [self._rank_signature(z) for z in chosen]
            best_alpha = tuple(
                max(s[0][i] for s in sigs) for i in range(self.r)
            )
            best_f = tuple(
                max(s[1][i] for s in sigs) for i in range(self.r + 1)
            )
            keep = [z for z, s in zip(chosen, sigs) if s == (best_alpha, best_f)]
            if not keep:
                raise InfeasibleEvaluation(
                    "no supplied point realizes the generic ranks"
                )
            self.points = tuple(keep)
            self.generic_alpha_ranks = best_alpha
            self.generic_f_ranks_plus = (
                best_f if self.q_sign == 1
                else tuple(self.n - x for x in best_f)
            )
            return
        stream = point_stream(seed)
        pool = []  # (point, signature)
        best = None
        budget = 64 + 8 * count
        for _ in range(budget):
            z = next(stream)
            if any(z == p for p, _ in pool):
                continue
            if any(f.has_pole_at(z) for f in funs):
                continue
            sig = self._rank_signature(z)
            pool.append((z, sig))
            cand = (
                tuple(max(s[0][i] for _, s in pool) for i in range(self.r)),
                tuple(max(s[1][i] for _, s in pool) for i in range(self.r + 1)),
            )
            best = cand
            generic = [z for z, s in pool if s == best]
            if len(generic) >= count:
                self.points = tuple(generic[:count])
                self.generic_alpha_ranks = best[0]
                self.generic_f_ranks_plus = (
                    best[1] if self.q_sign == 1
                    else tuple(self.n - x for x in best[1])
                )
                return
        raise InfeasibleEvaluation(
            f"could not collect {count} generic points within {budget} draws"
        )

    # -- convenience -----------------------------------------------------------

    def summary(self):
        return {
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "Q_sign": self.q_sign,
            "alpha_ranks": list(self.generic_alpha_ranks),
            "f_ranks": list(self.generic_f_ranks),
            "points": [str(z) for z in self.points],
        }


def covering_condition_holds(chain: UnitonChain, z0: GaussRat) -> bool:
    """pi_i alpha_{i+1} = alpha_i (column-space equality), exactly."""
    stack = chain.stack_at(z0)
    for i in range(1, chain.r):
        alpha_next = stack.frames[i]
        alpha_this = stack.frames[i - 1]
        pi = stack.pi(i)
        pushed = [
            [sum((pi[a][b] * col[b] for b in range(chain.n)), ZERO)
             for a in range(chain.n)]
            for col in alpha_next.columns
        ]
        pushed_rank = len(independent_columns(pushed, chain.n))
        joint = len(independent_columns(
            pushed + [list(c) for c in alpha_this.columns], chain.n
        ))
        if not (pushed_rank == alpha_this.rank() == joint):
            return False
    return True
