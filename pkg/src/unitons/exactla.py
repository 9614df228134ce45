"""Exact complex linear algebra over Q(i).

Matrices are tuples of row tuples of GaussRat.  Everything here is pure and
exact: ranks are true ranks, projectors are exactly Hermitian idempotent.
Sizes are small (ambient dimension <= ~12), so dense Gaussian elimination is
the whole story.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gaussrat import ONE, ZERO, GaussRat

Matrix = tuple  # tuple of row-tuples


def mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def zeros(nrows: int, ncols: int) -> Matrix:
    row = (ZERO,) * ncols
    return tuple(row for _ in range(nrows))


def eye(n: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def shape(a: Matrix):
    return len(a), len(a[0]) if a else 0


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in r) for r in a)


def mat_scale(a: Matrix, c: GaussRat) -> Matrix:
    return tuple(tuple(x * c for x in r) for r in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    out = []
    for ra in a:
        row = []
        for cb in bt:
            acc = ZERO
            for x, y in zip(ra, cb):
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a: Matrix, v) -> list:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def conj_transpose(a: Matrix) -> Matrix:
    return tuple(tuple(x.conjugate() for x in col) for col in zip(*a))


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_hermitian(a: Matrix) -> bool:
    return mat_eq(a, conj_transpose(a))


def mat_from_columns(cols, nrows: int) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(tuple(c[i] for c in cols) for i in range(nrows))


def columns_of(a: Matrix) -> list:
    m, n = shape(a)
    return [[a[i][j] for i in range(m)] for j in range(n)]


def _rref_in_place(rows, ncols):
    """Reduced row echelon form; returns pivot column list."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(a: Matrix) -> int:
    m, n = shape(a)
    if m == 0 or n == 0:
        return 0
    rows = [list(r) for r in a]
    return len(_rref_in_place(rows, n))


def nullspace(a: Matrix) -> list:
    """Basis of the right kernel of a, as a list of column vectors."""
    m, n = shape(a)
    if n == 0:
        return []
    if m == 0:
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    rows = [list(r) for r in a]
    pivots = _rref_in_place(rows, n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for r, c in enumerate(pivots):
            v[c] = -rows[r][free]
        basis.append(v)
    return basis


def independent_columns(cols, nrows: int) -> list:
    """Subset of the given columns forming a basis of their span."""
    live = [c for c in cols if any(c)]
    if not live:
        return []
    rows = [list(r) for r in zip(*live)]
    pivots = _rref_in_place(rows, len(live))
    return [live[c] for c in pivots]


def solve_hermitian(g: Matrix, rhs: Matrix) -> Matrix:
    """Solve g X = rhs for invertible g by Gauss-Jordan elimination."""
    n, _ = shape(g)
    _, m = shape(rhs)
    rows = [list(gr) + list(rr) for gr, rr in zip(g, rhs)]
    pivots = _rref_in_place(rows, n)
    if len(pivots) != n:
        raise ZeroDivisionError("singular Gram matrix")
    return tuple(tuple(rows[i][n:]) for i in range(n))


# -- frames and projectors ---------------------------------------------------


@dataclass(frozen=True)
class Frame:
    """A pointwise subspace of C^n, presented by spanning columns.

    Columns may be dependent or zero; every consumer reduces to a basis
    first.  ``point`` records the evaluation point the columns came from
    (None for constant subspaces).
    """

    columns: tuple
    n: int
    point: object = None

    def __post_init__(self):
        cols = tuple(tuple(c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        for c in cols:
            if len(c) != self.n:
                raise ValueError("frame column has wrong ambient dimension")

    @staticmethod
    def from_columns(cols, n: int, point=None) -> "Frame":
        return Frame(tuple(tuple(c) for c in cols), n, point)

    @staticmethod
    def empty(n: int, point=None) -> "Frame":
        return Frame((), n, point)

    @staticmethod
    def standard(n: int, k: int) -> "Frame":
        """span{e_1, ..., e_k} in C^n."""
        cols = tuple(
            tuple(ONE if i == j else ZERO for i in range(n)) for j in range(k)
        )
        return Frame(cols, n)

    def basis_columns(self) -> list:
        return independent_columns(list(self.columns), self.n)

    def rank(self) -> int:
        return len(self.basis_columns())

    def matrix(self) -> Matrix:
        return mat_from_columns(list(self.columns), self.n)


def project_onto(frame: Frame) -> Matrix:
    """Hermitian idempotent projector onto the frame's column span.

    Computed as B (B* B)^{-1} B* on an exactly rank-revealed basis B, so
    rank-deficient input frames are fine; the empty frame gives the zero
    matrix.
    """
    basis = frame.basis_columns()
    n = frame.n
    if not basis:
        return zeros(n, n)
    b = mat_from_columns(basis, n)
    bh = conj_transpose(b)
    gram = mat_mul(bh, b)
    ginv_bh = solve_hermitian(gram, bh)
    return mat_mul(b, ginv_bh)


def complement_projector(p: Matrix) -> Matrix:
    n, _ = shape(p)
    return mat_sub(eye(n), p)


def subspace_rank(frame: Frame) -> int:
    return frame.rank()


def frames_compatible(a: Frame, b: Frame):
    if a.n != b.n:
        raise ValueError("frames live in different ambient dimensions")
    if a.point is not None and b.point is not None and a.point != b.point:
        raise ValueError("frames evaluated at different points")
    return a.point if a.point is not None else b.point


def subspace_sum(a: Frame, b: Frame) -> Frame:
    point = frames_compatible(a, b)
    cols = independent_columns(list(a.columns) + list(b.columns), a.n)
    return Frame(tuple(cols), a.n, point)


def subspace_intersect(a: Frame, b: Frame) -> Frame:
    """Kernel of the stacked system [A | -B] pushed through A."""
    point = frames_compatible(a, b)
    abasis = a.basis_columns()
    bbasis = b.basis_columns()
    if not abasis or not bbasis:
        return Frame.empty(a.n, point)
    stacked = tuple(
        tuple(list(row_a) + [-x for x in row_b])
        for row_a, row_b in zip(
            mat_from_columns(abasis, a.n), mat_from_columns(bbasis, b.n)
        )
    )
    kernel = nullspace(stacked)
    ra = len(abasis)
    cols = []
    for v in kernel:
        coeffs = v[:ra]
        col = [ZERO] * a.n
        for c, basis_col in zip(coeffs, abasis):
            if c:
                for i in range(a.n):
                    col[i] = col[i] + c * basis_col[i]
        cols.append(col)
    return Frame(tuple(tuple(c) for c in independent_columns(cols, a.n)), a.n, point)


def subspace_orthocomplement(a: Frame) -> Frame:
    """Kernel of the adjoint: all v with <v, col> = 0 for every column."""
    basis = a.basis_columns()
    if not basis:
        return Frame(tuple(Frame.standard(a.n, a.n).columns), a.n, a.point)
    bh = conj_transpose(mat_from_columns(basis, a.n))
    kernel = nullspace(bh)
    return Frame(tuple(tuple(v) for v in kernel), a.n, a.point)


def subspace_meet_join(a: Frame, b: Frame, op: str) -> Frame:
    """Dispatch helper: op in {"intersect", "sum", "orthocomplement"}."""
    if op == "intersect":
        return subspace_intersect(a, b)
    if op == "sum":
        return subspace_sum(a, b)
    if op == "orthocomplement":
        return subspace_orthocomplement(a)
    raise ValueError(f"unknown subspace operation {op!r}")


def contains_vector(frame_basis_matrix: Matrix, v, n: int) -> bool:
    """Exact membership test v in span(columns), given the basis matrix."""
    m, r = shape(frame_basis_matrix)
    if all(not x for x in v):
        return True
    if r == 0:
        return False
    aug_cols = columns_of(frame_basis_matrix) + [list(v)]
    return len(independent_columns(aug_cols, n)) == r


def to_complex(a: Matrix):
    return [[complex(x) for x in row] for row in a]
