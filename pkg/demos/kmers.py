"""
k-mer deposition
================

Jammed k-mer deposits are the Rydberg chain with b = k - 1 and density
rescaled by k.  The equilibrium coverage is smallest at k = 9.
"""

from rydjam import kmer_complexity, kmer_jamming_limit, kmer_rho_star

print(kmer_complexity(2, 0.8, check=True))
for k in range(2, 16):
    print(f"k={k:2d}  rho*={kmer_rho_star(k):.6f}  rho_inf={kmer_jamming_limit(k).value:.6f}")
