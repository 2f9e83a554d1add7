"""
Counting jammed chains
======================

Brute force and the generating function give the same exact numbers.
"""

from rydjam import enumerate_jammed, jammed_counts
from rydjam.genfunc import growth_rate, sum_over_lengths

# b = 2, 16 sites: every jammed configuration, split by number of atoms
print(enumerate_jammed(16, 2))
print(jammed_counts(2, 16).row(16))

# the series route has no size limit; counts are exact Python ints
table = jammed_counts(1, 200)
totals = table.totals()
print(totals[:12])
print(totals[200])

# consecutive totals approach the growth rate w_b
g = growth_rate(1)
print(totals[200] / totals[199], g.w, g.log_w)

# summing over all lengths with N atoms fixed gives (b+1)^(N+1)
for N in range(1, 6):
    print(N, sum_over_lengths(2, N), 3 ** (N + 1))
