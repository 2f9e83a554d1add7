"""
Maximum entropy gap profiles
============================

The complexity is the entropy of the most likely gap profile.  Compare the
discrete optimum on a finite chain with the continuous Lagrange solution and
with the exact count.
"""

from rydjam import complexity, continuous_optimizer, discrete_complexity_estimate
from rydjam.entropy import exact_log_density

b, L = 2, 1200
for rho in (0.22, 0.25, 0.28, 0.31):
    N = round(rho * L)
    est, prof = discrete_complexity_estimate(N, L, b)
    sol = continuous_optimizer(b, N / L)
    exact = exact_log_density(N, L, b)
    print(f"rho={N / L:.4f}  discrete={est:.5f}  exact ln J/L={exact:.5f}  f={complexity(b, N / L).f:.5f}")
    print("   M/N =", [round(m / N, 4) for m in prof.counts], " p* =", [round(p, 4) for p in sol.p])
