"""Major and minor arcs: where a Weyl sum can be large.

The circle-method heuristic: f(alpha; N) is large only when the leading
coefficient alpha_d is unusually close to a rational a/q with small q.
The "major arcs" are small intervals around those rationals; everything
else is "minor". This demo builds the dissection, shows its measure is
tiny, and confirms that |f| on random minor-arc points is much smaller
than on major-arc centers.

Run: python3 demos/02_arc_dissection.py
"""
import numpy as np

from vmvt import build_dissection, classify, eval_f

N, u = 64, 0.5

print(f"=== Arc dissection at N = {N}, u = {u} ===")
dis = build_dissection(N, u)
print(f"  denominator cutoff Q  : {dis.Q}")
print(f"  half-width per arc    : {dis.width:.6g}")
print(f"  number of raw arcs    : {len(dis.arcs)}")
print(f"  total measure         : {dis.total_measure:.6g} "
      f"(bound 2 N^(-1/2) = {2 * N ** -0.5:.6g})")
print(f"  overlap measure       : {dis.overlap_measure}")

print()
print("=== Sample arcs around small denominators ===")
for approx, (lo, hi) in dis.arcs[:6]:
    print(f"  a/q = {approx.a}/{approx.q:<3d} arc = [{lo:.6f}, {hi:.6f}]")

print()
print("=== |f| on major-arc centers vs minor-arc points ===")
rng = np.random.default_rng(1)
major_vals = []
for approx, _ in dis.arcs[:8]:
    alpha = (approx.a / approx.q, 0.0, 0.0)
    major_vals.append(abs(eval_f(alpha, N)))
minor_vals = []
while len(minor_vals) < 8:
    x = float(rng.random())
    if not classify(x, N, u).major:
        minor_vals.append(abs(eval_f((x, 0.0, 0.0), N)))
print(f"  mean |f| on major-arc centers : {np.mean(major_vals):8.2f}")
print(f"  mean |f| at minor-arc points  : {np.mean(minor_vals):8.2f}")
print(f"  trivial bound                 : {N}")

print()
print("=== Membership test consistency ===")
pts = rng.random(10_000)
inside = dis.contains(pts)
agree = all(classify(float(x), N, u).major == bool(m)
            for x, m in zip(pts, inside))
print(f"  classify() vs interval union on 10^4 points: "
      f"{'agree' if agree else 'DISAGREE'}")
