"""
Complexity of jammed configurations
===================================

f(rho) for several blockade ranges, with its maximum at the equilibrium
density.  Writes complexity.svg next to this script.
"""

from pathlib import Path

import numpy as np

from rydjam import complexity, rho_star
from rydjam.genfunc import growth_rate
from rydjam.plotting import PlotSpec, Series, render_svg

series = []
for b in range(1, 6):
    lo, hi = 1 / (2 * b + 1), 1 / (b + 1)
    rho = np.linspace(lo, hi, 300)
    f = [complexity(b, r).f for r in rho]
    series.append(Series(list(rho), f, f"b = {b}"))
    e = rho_star(b)
    print(f"b={b}  rho*={e.rho_star:.6f}  f(rho*)={e.f_at_star:.12f}  ln w_b={growth_rate(b).log_w:.12f}")

out = Path(__file__).with_name("complexity.svg")
render_svg(PlotSpec(series, xlabel="density", ylabel="complexity f"), out)
print("wrote", out)
