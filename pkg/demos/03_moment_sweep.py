"""Restricted-box moments and slope fitting: reading off an exponent.

The p-th moment of |f| over a box whose (d-1)-st coefficient is restricted
to [0, N^-u) should grow like a power of N. For even p the moment equals
an exactly countable weighted sum over the solution-count profile of a
Diophantine system, so the experiment is noise-free: sweep N, fit the
log-log slope, compare with the predicted exponent.

Run: python3 demos/03_moment_sweep.py
"""
from vmvt import predict_exponent, sweep_moment
from vmvt.experiments import summary_block

print("=== Predicted exponents ===")
for d, p, u in [(2, 6.0, 0.5), (3, 4.0, 1.0), (3, 12.0, 1.5)]:
    pred = predict_exponent(d, p, u)
    print(f"  d={d} p={p:4} u={u:4}: exponent {pred.predicted_exponent} "
          f"({pred.regime})")

print()
print("=== Exact sweep: d=2, p=6, u=0.5 (prediction: slope 3) ===")
res = sweep_moment(2, 6.0, 0.5, [32, 64, 128, 256])
for row in res.rows:
    print(f"  N = {row.N:4d}  moment = {row.value:16.4f}  "
          f"({row.runtime_ms:7.1f} ms)")
print()
print(summary_block(res))

print()
print("=== Monte Carlo sweep of the same moment ===")
# the same integral estimated stochastically: median-of-means over a
# keyed counter-mode stream, so results are reproducible per seed
res_mc = sweep_moment(2, 6.0, 0.5, [32, 64, 128, 256], method="monte_carlo",
                      samples=400_000, seed=7)
for row, exact_row in zip(res_mc.rows, res.rows):
    rel = abs(row.value - exact_row.value) / exact_row.value
    print(f"  N = {row.N:4d}  estimate = {row.value:16.4f} "
          f"+- {row.stderr:12.4f}  (rel. error vs exact {rel:.2%})")
print(f"  fitted slope: {res_mc.fitted_slope:.4f} "
      f"(exact sweep gave {res.fitted_slope:.4f})")
print()
print("  note: |f|^6 is heavy-tailed -- rare near-resonant alphas carry")
print("  most of the mass, so plain sampling underestimates the moment and")
print("  its slope. This is precisely why the exact counting path exists.")
