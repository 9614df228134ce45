"""Algebraic and finite-difference checks on constructed chains.

Exact checks (unitarity, involution, splitting, containments) are zero
tolerance.  Differential checks approximate the Wirtinger derivatives of the
projection fields by central differences on four-point stencils; stencil
values are evaluated in exact rational arithmetic, so the reported residual
is pure truncation error and contracts cleanly by ~4x under h -> h/2.  Each
check runs a Richardson pair (h, h/2); a mismatch between the two derivative
estimates beyond 25% of scale raises StepTooLarge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

from .chain import UnitonChain, elementary_S
from .errors import BadArguments, StepTooLarge
from .exactla import (
    Frame,
    Matrix,
    complement_projector,
    conj_transpose,
    contains_vector,
    eye,
    mat_eq,
    mat_mul,
    mat_sub,
    mat_vec,
    project_onto,
    subspace_intersect,
    subspace_orthocomplement,
)
from .gaussrat import GaussRat, ONE, ZERO
from .loop import extended_solution_at

GUARD_FRACTION = 0.25
TOL_FLOOR = 1e-12


def as_step(h) -> GaussRat:
    """Coerce a step size to an exact rational (decimal strings are exact)."""
    if isinstance(h, GaussRat):
        if h.im != 0:
            raise BadArguments("step must be real")
        return h
    return GaussRat(mpq(Fraction(str(h))))


# -- reports -------------------------------------------------------------------


@dataclass
class CheckReport:
    check: str
    backend: str  # "exact" | "float"
    points: list = field(default_factory=list)
    residuals: list = field(default_factory=list)  # empty for exact checks
    passed: bool = True
    details: list = field(default_factory=list)

    @property
    def max_residual(self):
        return max(self.residuals) if self.residuals else None

    def second_order_ok(self) -> bool:
        """residual(h/2) <= 0.3 residual(h) + floor, per point."""
        return all(
            d["residual_half_h"] <= 0.3 * d["residual_h"] + TOL_FLOOR
            for d in self.details
            if "residual_half_h" in d
        )

    def to_json(self):
        return {
            "check": self.check,
            "backend": self.backend,
            "points": [str(p) for p in self.points],
            "residuals": list(self.residuals),
            "pass": self.passed,
            "details": self.details,
        }


# -- exact/complex conversion helpers -------------------------------------------


def _cpx(obj):
    if isinstance(obj, tuple) and obj and isinstance(obj[0], tuple):
        return np.array([[complex(x) for x in row] for row in obj])
    return np.array([complex(x) for x in obj])


def _norm(obj) -> float:
    arr = _cpx(obj) if not isinstance(obj, np.ndarray) else obj
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vscale(a, c):
    return tuple(x * c for x in a)


I_UNIT = GaussRat(0, 1)


def _wirt(vals, h: GaussRat, kind: str, is_matrix: bool):
    """Central-difference Wirtinger derivative from a 4-point stencil.

    vals: dict with keys xp, xm, yp, ym.  kind: "z" or "zbar".
    """
    if is_matrix:
        dx = tuple(
            tuple((a - b) for a, b in zip(ra, rb))
            for ra, rb in zip(vals["xp"], vals["xm"])
        )
        dy = tuple(
            tuple((a - b) for a, b in zip(ra, rb))
            for ra, rb in zip(vals["yp"], vals["ym"])
        )
        sign = GaussRat(0, -1) if kind == "z" else GaussRat(0, 1)
        quarter = ONE / (GaussRat(4) * h)
        return tuple(
            tuple((x + sign * y) * quarter for x, y in zip(rx, ry))
            for rx, ry in zip(dx, dy)
        )
    dx = _vsub(vals["xp"], vals["xm"])
    dy = _vsub(vals["yp"], vals["ym"])
    sign = GaussRat(0, -1) if kind == "z" else GaussRat(0, 1)
    quarter = ONE / (GaussRat(4) * h)
    return _vscale(_vadd(dx, _vscale(dy, sign)), quarter)


def _stencil_points(z0: GaussRat, h: GaussRat):
    ih = GaussRat(0, 1) * h
    return {
        "c": z0,
        "xp": z0 + h,
        "xm": z0 - h,
        "yp": z0 + ih,
        "ym": z0 - ih,
    }


def _perp_sum(chain: UnitonChain, i: int, z) -> Matrix:
    """Sum of the complement projectors of levels 1..i at the point z."""
    stack = chain.stack_at(z, depth=i)
    n = chain.n
    acc = tuple(tuple(ZERO for _ in range(n)) for _ in range(n))
    for l in range(1, i + 1):
        perp = complement_projector(stack.projectors[l - 1])
        acc = tuple(
            tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(acc, perp)
        )
    return acc


def _a_fields(chain: UnitonChain, i: int, z0: GaussRat, h: GaussRat):
    """(A_z, A_zbar) of the i'th partial map at z0, by central differences.

    A_z = d_z sum(pi_l^perp); A_zbar = -d_zbar sum(pi_l^perp).
    """
    pts = _stencil_points(z0, h)
    vals = {key: _perp_sum(chain, i, z) for key, z in pts.items() if key != "c"}
    a_z = _wirt(vals, h, "z", True)
    d_zbar = _wirt(vals, h, "zbar", True)
    n = chain.n
    a_zbar = tuple(tuple(-x for x in row) for row in d_zbar)
    return a_z, a_zbar


def _guard_pair(est_h, est_h2, scale: float, check: str, z0):
    diff = _norm(_cpx(est_h) - _cpx(est_h2))
    ref = max(scale, _norm(est_h2), 1e-30)
    if diff > GUARD_FRACTION * ref:
        raise StepTooLarge(
            f"{check}: derivative estimates at h and h/2 differ by "
            f"{diff:.3g} (scale {ref:.3g}) at z = {z0}"
        )


# -- exact checks ----------------------------------------------------------------


def check_unitary_involution(chain: UnitonChain, i: int, points=None) -> CheckReport:
    """phi_i = phi_i^*, phi_i^2 = I and phi_i phi_i^* = I, exactly."""
    if points is None:
        points = chain.points
    report = CheckReport(check="unitary_involution", backend="exact", points=list(points))
    ident = eye(chain.n)
    for z0 in points:
        phi = chain.evaluate_phi(i, z0, check_rank=False)
        phi_star = conj_transpose(phi)
        unitary = mat_eq(mat_mul(phi, phi_star), ident)
        hermitian = mat_eq(phi, phi_star)
        involutive = mat_eq(mat_mul(phi, phi), ident)
        ok = unitary and hermitian and involutive
        report.details.append({
            "point": str(z0),
            "unitary": unitary,
            "hermitian": hermitian,
            "involutive": involutive,
        })
        report.passed &= ok
    return report


def _f_frame(chain: UnitonChain, i: int, z0: GaussRat) -> Frame:
    """F_i at z0 (F_0 for i = 0), without strict split verification."""
    if i == 0:
        return Frame(chain.start_frame().columns, chain.n, z0)
    return chain.f_chain(z0, strict=False, check_rank=False)[i - 1]


def check_splitting(chain: UnitonChain, i: int, points=None) -> CheckReport:
    """Rank additivity of alpha_{i+1} against F_i, and projector commutation."""
    if points is None:
        points = chain.points
    report = CheckReport(check="splitting", backend="exact", points=list(points))
    for z0 in points:
        stack = chain.stack_at(z0, depth=i + 1, check_rank=False)
        alpha = stack.frames[i]
        f_i = _f_frame(chain, i, z0)
        f_perp = subspace_orthocomplement(f_i)
        inside = subspace_intersect(alpha, f_i).rank()
        outside = subspace_intersect(alpha, f_perp).rank()
        additivity = inside + outside == alpha.rank()
        p_f = project_onto(f_i)
        p_a = stack.projectors[i]
        commute = mat_eq(mat_mul(p_f, p_a), mat_mul(p_a, p_f))
        report.details.append({
            "point": str(z0),
            "rank_alpha": alpha.rank(),
            "rank_in_F": inside,
            "rank_in_Fperp": outside,
            "additivity": additivity,
            "commute": commute,
        })
        report.passed &= additivity and commute
    return report


def check_sij_images(chain: UnitonChain, i: int, points=None) -> CheckReport:
    """S^i_j pi_F0 images land in F_i or its complement according to parity."""
    if points is None:
        points = chain.points
    base = chain if chain.q_sign == 1 else chain.dualize()
    report = CheckReport(check="sij_images", backend="exact", points=list(points))
    n = chain.n
    p_f0 = base.F0_projector
    p_f0_perp = complement_projector(p_f0)
    for z0 in points:
        stack = base.stack_at(z0, depth=i, check_rank=False)
        f_i = _f_frame(base, i, z0)
        f_basis = f_i.basis_columns()
        f_mat = tuple(tuple(c[a] for c in f_basis) for a in range(n))
        f_perp = subspace_orthocomplement(f_i)
        fp_basis = f_perp.basis_columns()
        fp_mat = tuple(tuple(c[a] for c in fp_basis) for a in range(n))
        ok_all = True
        for j in range(i + 1):
            s_mat = elementary_S(i, j, stack)
            for side, proj in (("F0", p_f0), ("F0perp", p_f0_perp)):
                target_in_f = (j % 2 == 0) == (side == "F0")
                target_mat, target_n = (f_mat, len(f_basis)) if target_in_f else (fp_mat, len(fp_basis))
                for m in range(n):
                    e_m = [ONE if a == m else ZERO for a in range(n)]
                    v = mat_vec(s_mat, mat_vec(proj, e_m))
                    if not contains_vector(target_mat, v, n):
                        ok_all = False
        report.details.append({"point": str(z0), "contained": ok_all})
        report.passed &= ok_all
    return report


# -- differential checks -----------------------------------------------------------


def _section_values(chain: UnitonChain, i: int, label, pts):
    """Evaluate the labeled spanning section of alpha_{i+1} on a stencil."""
    out = {}
    for key, z in pts.items():
        stack = chain.stack_at(z, depth=i + 1, check_rank=False)
        out[key] = stack.sections[i][label]
    return out


def check_uniton_conditions(chain: UnitonChain, i: int, points=None,
                            h=1e-5, tol=1e-6,
                            injected_sections=None) -> CheckReport:
    """Spanning sections of alpha_{i+1} are killed by pi_{i+1}^perp after
    D_zbar and after A_z (the flag-factor conditions for the i'th map).

    injected_sections: optional callables z -> exact vector replacing the
    chain's sections (and the projector they span); the hook negative
    controls use it to smuggle in non-meromorphic data.
    """
    if points is None:
        points = chain.points
    h = as_step(h)
    half = h / GaussRat(2)
    report = CheckReport(check="uniton_conditions", backend="float", points=list(points))

    def labels_and_values(z0, hh):
        pts = _stencil_points(z0, hh)
        if injected_sections is not None:
            secs = []
            for f in injected_sections:
                secs.append({key: tuple(f(z)) for key, z in pts.items()})
            center_cols = [s["c"] for s in secs if any(s["c"])]
            proj_next = project_onto(Frame(tuple(center_cols), chain.n, z0))
            return secs, proj_next
        stack0 = chain.stack_at(z0, depth=i + 1, check_rank=False)
        secs = []
        for label in sorted(stack0.sections[i]):
            vals = _section_values(chain, i, label, pts)
            secs.append(vals)
        return secs, stack0.projectors[i]

    def run(z0, hh):
        secs, proj_next = labels_and_values(z0, hh)
        perp_next = complement_projector(proj_next)
        a_z, a_zbar = _a_fields(chain, i, z0, hh)
        worst = 0.0
        for vals in secs:
            scale = max(_norm(v) for v in vals.values())
            if scale == 0.0:
                continue
            d_zbar_sigma = _wirt(vals, hh, "zbar", False)
            dzb = _vadd(d_zbar_sigma, tuple(mat_vec(a_zbar, list(vals["c"]))))
            res1 = _norm(mat_vec(perp_next, list(dzb)))
            a_sigma = mat_vec(a_z, list(vals["c"]))
            res2 = _norm(mat_vec(perp_next, a_sigma))
            worst = max(worst, res1 / scale, res2 / scale)
        return worst, a_z

    for z0 in points:
        res_h, est_h = run(z0, h)
        res_h2, est_h2 = run(z0, half)
        _guard_pair(est_h, est_h2, max(res_h, 1.0), "uniton_conditions", z0)
        report.residuals.append(res_h)
        report.details.append({
            "point": str(z0),
            "residual_h": res_h,
            "residual_half_h": res_h2,
        })
        report.passed &= res_h <= tol
    return report


def check_shift_identity(chain: UnitonChain, i: int, points=None,
                         h=1e-5, tol=1e-6) -> CheckReport:
    """A_z of the k-jet section equals minus the (k+1)-jet, for k < i."""
    if points is None:
        points = chain.points
    h = as_step(h)
    half = h / GaussRat(2)
    report = CheckReport(check="shift_identity", backend="float", points=list(points))

    def run(z0, hh):
        pts = _stencil_points(z0, hh)
        a_z, _ = _a_fields(chain, i, z0, hh)
        stack0 = chain.stack_at(z0, depth=i + 1, check_rank=False)
        worst = 0.0
        for (kk, j) in sorted(stack0.sections[i]):
            if kk > i - 1:
                continue
            vals = _section_values(chain, i, (kk, j), pts)
            scale = max(_norm(v) for v in vals.values())
            target = stack0.sections[i][(kk + 1, j)]
            scale = max(scale, _norm(target))
            if scale == 0.0:
                continue
            lhs = mat_vec(a_z, list(vals["c"]))
            res = _norm(_vadd(tuple(lhs), target))
            worst = max(worst, res / scale)
        return worst, a_z

    for z0 in points:
        res_h, est_h = run(z0, h)
        res_h2, est_h2 = run(z0, half)
        _guard_pair(est_h, est_h2, max(res_h, 1.0), "shift_identity", z0)
        report.residuals.append(res_h)
        report.details.append({
            "point": str(z0),
            "residual_h": res_h,
            "residual_half_h": res_h2,
        })
        report.passed &= res_h <= tol
    return report


def check_harmonicity(chain: UnitonChain, i: int, points=None,
                      h=1e-5, tol=1e-6) -> CheckReport:
    """Commutation of A_z with the induced d-bar operator on basis sections."""
    if points is None:
        points = chain.points
    h = as_step(h)
    half = h / GaussRat(2)
    report = CheckReport(check="harmonicity", backend="float", points=list(points))
    n = chain.n

    def a_z_at(z, hh):
        return _a_fields(chain, i, z, hh)[0]

    def run(z0, hh):
        pts = _stencil_points(z0, hh)
        a_z_vals = {key: a_z_at(z, hh) for key, z in pts.items()}
        a_z0 = a_z_vals["c"]
        _, a_zbar0 = _a_fields(chain, i, z0, hh)
        scale = max(1.0, max(_norm(v) for v in a_z_vals.values()))
        worst = 0.0
        for m in range(n):
            e_m = [ONE if a == m else ZERO for a in range(n)]
            lhs = mat_vec(a_z0, mat_vec(a_zbar0, e_m))
            g_vals = {key: tuple(mat_vec(a_z_vals[key], e_m))
                      for key in ("xp", "xm", "yp", "ym")}
            d_zbar_g = _wirt(g_vals, hh, "zbar", False)
            rhs = _vadd(d_zbar_g, tuple(mat_vec(a_zbar0, mat_vec(a_z0, e_m))))
            res = _norm(_vsub(tuple(lhs), rhs))
            worst = max(worst, res / scale)
        return worst, a_z0

    for z0 in points:
        res_h, est_h = run(z0, h)
        res_h2, est_h2 = run(z0, half)
        _guard_pair(est_h, est_h2, max(res_h, 1.0), "harmonicity", z0)
        report.residuals.append(res_h)
        report.details.append({
            "point": str(z0),
            "residual_h": res_h,
            "residual_half_h": res_h2,
        })
        report.passed &= res_h <= tol
    return report


def check_interchange(chain: UnitonChain, points=None,
                      h=1e-5, tol=1e-6) -> CheckReport:
    """A_z of the full map swaps the final bundle with its complement."""
    if points is None:
        points = chain.points
    h = as_step(h)
    half = h / GaussRat(2)
    r = chain.r
    report = CheckReport(check="interchange", backend="float", points=list(points))

    def run(z0, hh):
        a_z, _ = _a_fields(chain, r, z0, hh)
        f_r = _f_frame(chain, r, z0)
        p_f = project_onto(f_r)
        p_perp = complement_projector(p_f)
        op_scale = max(1.0, _norm(a_z))
        worst = 0.0
        for f in f_r.basis_columns():
            res = _norm(mat_vec(p_f, mat_vec(a_z, list(f))))
            worst = max(worst, res / (op_scale * max(_norm(f), 1e-30)))
        for g in subspace_orthocomplement(f_r).basis_columns():
            res = _norm(mat_vec(p_perp, mat_vec(a_z, list(g))))
            worst = max(worst, res / (op_scale * max(_norm(g), 1e-30)))
        return worst, a_z

    for z0 in points:
        res_h, est_h = run(z0, h)
        res_h2, est_h2 = run(z0, half)
        _guard_pair(est_h, est_h2, max(res_h, 1.0), "interchange", z0)
        report.residuals.append(res_h)
        report.details.append({
            "point": str(z0),
            "residual_h": res_h,
            "residual_half_h": res_h2,
        })
        report.passed &= res_h <= tol
    return report


def check_extended_solution_equation(chain: UnitonChain, points=None,
                                     lam=None, h=1e-5, tol=1e-6) -> CheckReport:
    """Phi^{-1} d_z Phi = (1 - lam^{-1}) A_z of the lam = -1 member."""
    if points is None:
        points = chain.points
    if lam is None:
        lam = GaussRat(0, 1)
    if lam.abs2() != 1:
        raise BadArguments("lambda must be unit-modulus")
    h = as_step(h)
    half = h / GaussRat(2)
    minus_one = GaussRat(-1)
    report = CheckReport(check="extended_solution_equation", backend="float",
                         points=list(points))

    def run(z0, hh):
        pts = _stencil_points(z0, hh)
        phi_vals = {key: extended_solution_at(chain, z, lam, check_rank=False)
                    for key, z in pts.items()}
        psi_vals = {key: extended_solution_at(chain, z, minus_one, check_rank=False)
                    for key, z in pts.items()}
        d_phi = _wirt(phi_vals, hh, "z", True)
        d_psi = _wirt(psi_vals, hh, "z", True)
        phi_inv = conj_transpose(phi_vals["c"])  # unitary
        psi_inv = conj_transpose(psi_vals["c"])
        lhs = mat_mul(phi_inv, d_phi)
        a_z_psi = tuple(
            tuple(x / GaussRat(2) for x in row)
            for row in mat_mul(psi_inv, d_psi)
        )
        factor = GaussRat(1) - (GaussRat(1) / lam)
        rhs = tuple(tuple(x * factor for x in row) for row in a_z_psi)
        err = mat_sub(lhs, rhs)
        scale = max(1.0, _norm(lhs))
        return _norm(err) / scale, d_phi

    for z0 in points:
        res_h, est_h = run(z0, h)
        res_h2, est_h2 = run(z0, half)
        _guard_pair(est_h, est_h2, max(res_h, 1.0), "extended_solution_equation", z0)
        report.residuals.append(res_h)
        report.details.append({
            "point": str(z0),
            "residual_h": res_h,
            "residual_half_h": res_h2,
        })
        report.passed &= res_h <= tol
    return report


def check_split_closures(chain: UnitonChain, i: int, points=None,
                         h=1e-5, tol=1e-6) -> CheckReport:
    """F_i cap alpha_{i+1} is D_zbar-closed and F_i^perp cap alpha_{i+1}^perp
    is D_z-closed (sections realized by projecting constants)."""
    if points is None:
        points = chain.points
    h = as_step(h)
    half = h / GaussRat(2)
    report = CheckReport(check="split_closures", backend="float", points=list(points))
    n = chain.n

    def bundle_projector(z, which: str) -> Matrix:
        stack = chain.stack_at(z, depth=i + 1, check_rank=False)
        alpha = stack.frames[i]
        f_i = _f_frame(chain, i, z)
        if which == "hol":
            w = subspace_intersect(alpha, f_i)
        else:
            w = subspace_intersect(subspace_orthocomplement(alpha),
                                   subspace_orthocomplement(f_i))
        return project_onto(w)

    def run(z0, hh):
        pts = _stencil_points(z0, hh)
        a_z, a_zbar = _a_fields(chain, i, z0, hh)
        worst = 0.0
        for which, kind in (("hol", "zbar"), ("antihol", "z")):
            projs = {key: bundle_projector(z, which) for key, z in pts.items()}
            p0 = projs["c"]
            perp0 = complement_projector(p0)
            for m in range(n):
                e_m = [ONE if a == m else ZERO for a in range(n)]
                vals = {key: tuple(mat_vec(projs[key], e_m))
                        for key in ("xp", "xm", "yp", "ym")}
                center = tuple(mat_vec(p0, e_m))
                scale = max(_norm(center), max(_norm(v) for v in vals.values()))
                if scale < 1e-12:
                    continue
                d_sigma = _wirt(vals, hh, kind, False)
                field = a_zbar if kind == "zbar" else a_z
                full = _vadd(d_sigma, tuple(mat_vec(field, list(center))))
                res = _norm(mat_vec(perp0, list(full)))
                worst = max(worst, res / scale)
        return worst, a_z

    for z0 in points:
        res_h, est_h = run(z0, h)
        res_h2, est_h2 = run(z0, half)
        _guard_pair(est_h, est_h2, max(res_h, 1.0), "split_closures", z0)
        report.residuals.append(res_h)
        report.details.append({
            "point": str(z0),
            "residual_h": res_h,
            "residual_half_h": res_h2,
        })
        report.passed &= res_h <= tol
    return report


def backend_consistency(chain: UnitonChain, i: int, points=None) -> float:
    """Max relative deviation between exact and double-precision phi_i."""
    if points is None:
        points = chain.points
    worst = 0.0
    for z0 in points:
        exact = _cpx(chain.evaluate_phi(i, z0, check_rank=False))
        approx = chain.evaluate_phi_complex(i, complex(z0))
        denom = max(1.0, float(np.max(np.abs(exact))))
        worst = max(worst, float(np.max(np.abs(exact - approx))) / denom)
    return worst


ALL_CHECKS = {
    "unitary": check_unitary_involution,
    "splitting": check_splitting,
    "sij": check_sij_images,
    "uniton": check_uniton_conditions,
    "shift": check_shift_identity,
    "harmonicity": check_harmonicity,
    "interchange": check_interchange,
    "extended": check_extended_solution_equation,
}
