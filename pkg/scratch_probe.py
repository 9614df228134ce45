"""Scratch probe: engine sanity + the product-order / T_j-vs-S^r_j questions."""
import time

from unitons.chain import F0Array, UnitonChain, elementary_C, elementary_S
from unitons.exactla import (
    conj_transpose, eye, mat_eq, mat_mul, mat_sub, complement_projector,
    project_onto, Frame,
)
from unitons.ratfun import MeroVector, RatFun
from unitons.gaussrat import GaussRat

Z = RatFun.z()
one = RatFun.const(1)
zero = RatFun.zero()


def mv(*coords):
    return MeroVector(list(coords))


t0 = time.time()
# g2c5 case (b)-like data: n=5, k=4, r=3
n, k = 5, 4
L0 = mv(one, Z, Z * Z, Z * Z * Z, zero)                # deg-3 in F0
E0 = mv(zero, zero, zero, zero, one + Z)               # F0-perp
L1 = mv(one + Z, Z, zero, one, zero)                   # free F0 data, row 1 col 2
L2 = mv(Z, one, one + Z * Z, zero, zero)               # free F0 data, row 2 col 1
rows = [
    [L0, E0, None, None, None],
    [None, L1, None, None, None],
    [L2, None, None, None, None],
]
arr = F0Array(n, k, rows)
chain = UnitonChain(arr)
print("built in", round(time.time() - t0, 2), "s")
print("alpha ranks:", chain.generic_alpha_ranks)
print("f ranks:", chain.generic_f_ranks)

z0 = chain.points[0]
stack = chain.stack_at(z0)
phi = chain.evaluate_phi(3, z0)
print("phi hermitian:", mat_eq(phi, conj_transpose(phi)))
print("phi involutive:", mat_eq(mat_mul(phi, phi), eye(n)))

# product order: does Q (pi1-) (pi2-) (pi3-) equal reversed?
refls = [mat_sub(stack.pi(l), stack.pi_perp(l)) for l in (1, 2, 3)]
q = chain.q_matrix()
fwd = q
for mrefl in refls:
    fwd = mat_mul(fwd, mrefl)
rev = q
for mrefl in reversed(refls):
    rev = mat_mul(rev, mrefl)
print("order forward == reversed:", mat_eq(fwd, rev))

# T_j from product (pi_1 + lam pi_1^perp) ... (pi_r + lam pi_r^perp) in
# 1-leftmost order vs S^r_j (high-left order)
r = 3
coeffs = [eye(n)]
for l in range(1, r + 1):
    pi = stack.pi(l)
    perp = stack.pi_perp(l)
    new = []
    for j in range(len(coeffs) + 1):
        m = None
        if j < len(coeffs):
            m = mat_mul(coeffs[j], pi)
        if j >= 1:
            m2 = mat_mul(coeffs[j - 1], perp)
            m = m2 if m is None else tuple(
                tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(m, m2)
            )
        new.append(m)
    coeffs = new
for j in range(r + 1):
    s = elementary_S(r, j, stack)
    print(f"T_{j} == S^r_{j}:", mat_eq(coeffs[j], s),
          " T_j == (S^r_j)^*:", mat_eq(coeffs[j], conj_transpose(s)))

# covering condition
from unitons.chain import covering_condition_holds
print("covering:", covering_condition_holds(chain, z0))

# C vs S identity: C^i_k = sum binom(s,k) S^i_s
import math
ok = True
for i in range(r + 1):
    for kk in range(i + 1):
        acc = None
        for s in range(kk, i + 1):
            term = tuple(
                tuple(x * GaussRat(math.comb(s, kk)) for x in row)
                for row in elementary_S(i, s, stack)
            )
            acc = term if acc is None else tuple(
                tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(acc, term)
            )
        if not mat_eq(acc, elementary_C(i, kk, stack)):
            ok = False
print("C from S identity:", ok)
print("total", round(time.time() - t0, 2), "s")
