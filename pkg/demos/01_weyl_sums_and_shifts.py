"""Weyl sums, exact phase arithmetic, and the shift-of-variables identity.

A Weyl sum f(alpha; N) = sum_{n<=N} e(alpha_d n^d + ... + alpha_1 n) is a
sum of N unit vectors whose directions are controlled by a polynomial.
Naive evaluation loses precision because alpha_d n^d grows like N^d before
reduction mod 1; here every phase is reduced exactly as a rational before
any trigonometry happens, so even N^6-sized arguments cost no accuracy.

Run: python3 demos/01_weyl_sums_and_shifts.py
"""
import numpy as np

from vmvt import (eval_K, eval_f, shift_coeffs, shift_jacobian_determinant,
                  verify_shift_identity)

rng = np.random.default_rng(42)

print("=== Weyl sums at rational and generic phases ===")
# at alpha = (a/q, 0) the cubic sum is periodic in n with period q and
# exhibits square-root cancellation; at generic alpha, cancellation is
# typically stronger
N = 10_000
for label, alpha in [
    ("alpha = (1/7, 0, 0)", (1 / 7, 0.0, 0.0)),
    ("alpha = (1/2, 0, 0)", (0.5, 0.0, 0.0)),
    ("generic alpha      ", tuple(rng.random(3))),
]:
    val = eval_f(alpha, N)
    print(f"  {label}: |f| = {abs(val):12.3f}   (N = {N}, trivial bound {N})")

print()
print("=== Dirichlet kernel: closed form vs direct summation ===")
# K(gamma) = sum_{n<=N} e(gamma n) has a closed form; near integers the
# closed form is numerically delicate, which is exactly where it matters
for gamma in (0.3, 1e-9, 0.5):
    direct = sum(np.exp(2j * np.pi * gamma * n) for n in range(1, 101))
    closed = eval_K(gamma, 100)
    print(f"  gamma = {gamma:<8g}  closed = {closed:.6f}  "
          f"|closed - direct| = {abs(closed - direct):.2e}")

print()
print("=== Shift of variables n -> n - y ===")
# substituting n -> n - y turns the phase polynomial Omega(n) into another
# polynomial with coefficients c_i; the map alpha -> c is volume-preserving
# (unipotent, determinant 1), which is what makes shifted moments equal
# unshifted ones after integration
alpha = tuple(rng.random(4))
sc = shift_coeffs(alpha, y=5)
print(f"  base coefficients : {tuple(round(float(a), 6) for a in alpha)}")
print(f"  shifted (y=5)     : "
      f"{tuple(round(float(c), 6) for c in sc.c[:-1])}")
print(f"  constant term c0  : {float(sc.c0):.6f}")
for d in (2, 3, 4, 5):
    det = shift_jacobian_determinant(d, 5)
    dev = verify_shift_identity(tuple(rng.random(d)), 5, 64)
    print(f"  degree {d}: Jacobian det = {det}, identity deviation = {dev:.1e}")
