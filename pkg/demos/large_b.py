"""
Large blockade range
====================

b * rho_inf climbs toward the Renyi parking constant, while b * rho_star
stays below 1 and creeps up slowly.
"""

from rydjam import renyi_constant, rho_star, scaled_jamming_limit

R = renyi_constant().value
print(f"Renyi constant {R:.12f}")
for b in (1, 10, 100, 1000):
    print(f"b={b:5d}  b*rho_inf={scaled_jamming_limit(b).value:.6f}  b*rho*={b * rho_star(b).rho_star:.6f}")
