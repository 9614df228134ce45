"""Extended solutions and the finite Grassmannian model.

The spectral family Phi_lambda = (pi_1 + lam pi_1^perp) ... (pi_r + lam pi_r^perp)
is evaluated exactly for exact unit-modulus lambda and expanded symbolically
in lambda.  The model space lives in C^{rn}: a block vector
(v_0, ..., v_{r-1}) stands for v_0 + lam v_1 + ... + lam^{r-1} v_{r-1} modulo
lam^r; multiplication by lam is the block shift that drops the overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .chain import UnitonChain, elementary_S
from .errors import BadArguments
from .exactla import (
    Matrix,
    complement_projector,
    conj_transpose,
    eye,
    independent_columns,
    mat_add,
    mat_mul,
    mat_scale,
    zeros,
)
from .gaussrat import ONE, ZERO, GaussRat
from .ratfun import MeroVector


def extended_solution_at(chain: UnitonChain, z0, lam, check_rank: bool = True):
    """Phi_lambda(z0) for exact Gaussian-rational lambda of modulus one.

    Exact whenever lambda is exact with |lambda|^2 = 1 (fourth roots of
    unity and every rational point of the circle); pass a complex lambda to
    get the double-precision value instead.
    """
    if isinstance(lam, complex):
        import numpy as np

        exact = extended_solution_at(chain, z0, GaussRat(1), check_rank)
        stack = chain.stack_at(z0, check_rank=check_rank)
        acc = np.eye(chain.n, dtype=complex)
        for l in range(1, chain.r + 1):
            p = np.array([[complex(x) for x in row] for row in stack.pi(l)])
            acc = acc @ (p + lam * (np.eye(chain.n) - p))
        return acc
    if not isinstance(lam, GaussRat):
        lam = GaussRat(lam)
    if lam.abs2() != 1:
        raise BadArguments(f"lambda = {lam} is not unit-modulus")
    stack = chain.stack_at(z0, check_rank=check_rank)
    acc = eye(chain.n)
    for l in range(1, chain.r + 1):
        factor = mat_add(stack.pi(l), mat_scale(stack.pi_perp(l), lam))
        acc = mat_mul(acc, factor)
    return acc


def polynomial_coefficients(chain: UnitonChain, z0, check_rank: bool = True):
    """Matrices T_0..T_r with Phi_lambda = sum lam^j T_j, expanded exactly."""
    stack = chain.stack_at(z0, check_rank=check_rank)
    n = chain.n
    coeffs = [eye(n)]
    for l in range(1, chain.r + 1):
        pi = stack.pi(l)
        perp = stack.pi_perp(l)
        new = []
        for j in range(len(coeffs) + 1):
            m = None
            if j < len(coeffs):
                m = mat_mul(coeffs[j], pi)
            if j >= 1:
                m2 = mat_mul(coeffs[j - 1], perp)
                m = m2 if m is None else mat_add(m, m2)
            new.append(m)
        coeffs = new
    return coeffs


def ordered_product_coefficient(chain: UnitonChain, z0, j: int) -> Matrix:
    """Independent oracle for T_j: direct sum over perp placements.

    Enumerates the subsets of factor slots carrying a perp and multiplies
    the factors out left to right, with no recursion shared with
    polynomial_coefficients.
    """
    stack = chain.stack_at(z0)
    n, r = chain.n, chain.r
    if j < 0 or j > r:
        return zeros(n, n)
    acc = zeros(n, n)
    for perp_slots in combinations(range(1, r + 1), j):
        prod = eye(n)
        for l in range(1, r + 1):
            factor = stack.pi_perp(l) if l in perp_slots else stack.pi(l)
            prod = mat_mul(prod, factor)
        acc = mat_add(acc, prod)
    return acc


def coefficients_vs_ordered_sums(chain: UnitonChain, z0) -> bool:
    """T_j equals the ordered-product sum in the factor order, and the
    adjoint of the high-index-first sum S^r_j, at this point."""
    coeffs = polynomial_coefficients(chain, z0)
    stack = chain.stack_at(z0)
    from .exactla import mat_eq

    for j in range(chain.r + 1):
        direct = ordered_product_coefficient(chain, z0, j)
        if not mat_eq(coeffs[j], direct):
            return False
        s = elementary_S(chain.r, j, stack)
        if not mat_eq(coeffs[j], conj_transpose(s)):
            return False
    return True


def image_T0_rank(chain: UnitonChain, points=None) -> int:
    """Rank of the span of Im T_0 aggregated over sample points (type-one
    extended solutions have full image)."""
    if points is None:
        points = chain.points
    cols = []
    for z0 in points:
        t0 = polynomial_coefficients(chain, z0)[0]
        cols.extend([[t0[a][b] for a in range(chain.n)] for b in range(chain.n)])
    return len(independent_columns(cols, chain.n))


# -- block vectors in C^{rn} ---------------------------------------------------


def block_shift(vec, r: int, n: int, steps: int = 1):
    """Multiply by lam^steps: shift blocks up, dropping the overflow."""
    out = [ZERO] * (r * n)
    for b in range(r - steps):
        out[(b + steps) * n:(b + steps + 1) * n] = vec[b * n:(b + 1) * n]
    return tuple(out)


@dataclass
class AdaptedVectorReport:
    labels: list = field(default_factory=list)  # "type_i" | "type_ii" | "both" | "neither"

    @property
    def all_adapted(self) -> bool:
        return all(lbl != "neither" for lbl in self.labels)

    def to_json(self):
        return {"all_adapted": self.all_adapted, "labels": list(self.labels)}


def f0_adapted_check(vectors, f0_projector: Matrix, r: int, n: int) -> AdaptedVectorReport:
    """Classify block vectors by whether their blocks alternate F0 / F0-perp.

    type_i: even blocks in F0, odd blocks in F0-perp; type_ii: the reverse;
    both: the zero vector; neither: not adapted.
    """
    perp = complement_projector(f0_projector)
    report = AdaptedVectorReport()
    for vec in vectors:
        if len(vec) != r * n:
            raise BadArguments("block vector has wrong length")
        ok_i = True
        ok_ii = True
        for b in range(r):
            block = vec[b * n:(b + 1) * n]
            if all(not x for x in block):
                continue
            in_f0 = all(
                not sum((perp[a][c] * block[c] for c in range(n)), ZERO)
                for a in range(n)
            )
            in_perp = all(
                not sum((f0_projector[a][c] * block[c] for c in range(n)), ZERO)
                for a in range(n)
            )
            want_f0 = b % 2 == 0
            if not (in_f0 if want_f0 else in_perp):
                ok_i = False
            if not (in_perp if want_f0 else in_f0):
                ok_ii = False
        if ok_i and ok_ii:
            report.labels.append("both")
        elif ok_i:
            report.labels.append("type_i")
        elif ok_ii:
            report.labels.append("type_ii")
        else:
            report.labels.append("neither")
    return report


@dataclass
class ModelSpace:
    """The model subspace of C^{rn} at one point, with its spanning set.

    ``derivative_values`` holds, per spanning section, the value of its
    first z-derivative; lambda-shift stability quantifies over sections and
    their derivatives (W_(1)), not just the fiber.
    """

    point: object
    blocks: int
    ambient: int
    spanning: list  # (shift m, derivative order d, column j, vector)
    basis: list
    derivative_values: list = field(default_factory=list)

    def rank(self) -> int:
        return len(self.basis)

    def shift_stable(self) -> bool:
        """Exact rank test for lam W_(1) inside W."""
        r, n = self.blocks, self.ambient
        shifted = [block_shift(v, r, n) for (_, _, _, v) in self.spanning]
        shifted += [block_shift(v, r, n) for v in self.derivative_values]
        base = [list(v) for v in self.basis]
        joint = base + [list(v) for v in shifted]
        return len(independent_columns(joint, r * n)) == self.rank()

    def to_json(self):
        from .gaussrat import format_gaussrat

        return {
            "point": str(self.point),
            "blocks": self.blocks,
            "ambient": self.ambient,
            "rank": self.rank(),
            "basis": [[format_gaussrat(x) for x in v] for v in self.basis],
        }


def _column_block_section(chain: UnitonChain, j: int, use_partial_sums: bool):
    """The C^{rn}-valued section (v_0, ..., v_{r-1}) of array column j.

    Plain blocks v_i = K_{i,j}, or the partial sums R_{i,j} = K_{0,j} + ... +
    K_{i,j}; the two spanning sets generate the same model space.
    """
    blocks = []
    acc = None
    for i in range(chain.r):
        k_ij = chain.source.entries[i][j]
        if use_partial_sums:
            acc = k_ij if acc is None else acc + k_ij
            blocks.append(acc)
        else:
            blocks.append(k_ij)
    return blocks


def model_space(chain: UnitonChain, z0, jet_order: int | None = None,
                use_partial_sums: bool = False) -> ModelSpace:
    """Build the model space W at z0.

    W is spanned by the block sections of the array columns together with
    their lam^m-shifted jets of order up to m, for m up to jet_order
    (default r - 1).  The spanning vectors are F0-adapted blockwise; the
    lambda-shift stability of W is an exact rank statement.
    """
    r, n = chain.r, chain.n
    if r == 0:
        return ModelSpace(z0, 0, n, [], [])
    if jet_order is None:
        jet_order = r - 1
    if not 0 <= jet_order <= r - 1:
        raise BadArguments(f"jet_order {jet_order} outside 0..{r - 1}")
    spanning = []
    deriv_values = []
    for j in range(n):
        blocks = _column_block_section(chain, j, use_partial_sums)
        if all(b.is_zero() for b in blocks):
            continue
        derivs = {0: blocks}

        def jet_value(m, d):
            while max(derivs) < d:
                top = max(derivs)
                derivs[top + 1] = [b.derivative() for b in derivs[top]]
            vec = []
            for b in derivs[d]:
                vec.extend(b.eval(z0))
            return block_shift(tuple(vec), r, n, m) if m else tuple(vec)

        for m in range(jet_order + 1):
            for d in range(m + 1):
                vec = jet_value(m, d)
                if any(vec):
                    spanning.append((m, d, j, vec))
                    deriv_values.append(jet_value(m, d + 1))
    basis = independent_columns([list(v) for (_, _, _, v) in spanning], r * n)
    return ModelSpace(z0, r, n, spanning, [tuple(v) for v in basis],
                      deriv_values)


def model_spans_agree(chain: UnitonChain, z0) -> bool:
    """The plain-block and partial-sum spanning sets give the same W."""
    w_plain = model_space(chain, z0, use_partial_sums=False)
    w_sums = model_space(chain, z0, use_partial_sums=True)
    joint = [list(v) for v in w_plain.basis] + [list(v) for v in w_sums.basis]
    joint_rank = len(independent_columns(joint, chain.r * chain.n))
    return joint_rank == w_plain.rank() == w_sums.rank()


def raw_shift_stability(vectors, r: int, n: int) -> bool:
    """Shift stability of a hand-supplied constant span in C^{rn}."""
    base = [list(v) for v in vectors]
    rank = len(independent_columns(base, r * n))
    shifted = [list(block_shift(tuple(v), r, n)) for v in vectors]
    return len(independent_columns(base + shifted, r * n)) == rank
