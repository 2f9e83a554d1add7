"""
Random sequential adsorption
============================

Monte Carlo jamming densities against the quadrature values, and the
equilibrium density that the dynamics misses.
"""

from rydjam import SimConfig, jamming_limit_quadrature, rho_star, simulate_rsa

for b in (1, 2, 3, 5):
    s = simulate_rsa(SimConfig(L=20_000, b=b, trials=20, seed=2024))
    q = jamming_limit_quadrature(b).value
    print(f"b={b}  MC {s.mean_density:.5f} +- {s.std_error:.5f}   quadrature {q:.6f}   rho* {rho_star(b).rho_star:.6f}")
