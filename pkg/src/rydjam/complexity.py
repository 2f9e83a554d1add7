"""Complexity (configurational entropy) of jammed configurations.

For ``1/(2b+1) < rho < 1/(b+1)`` the complexity is

    f(rho) = rho * ln(1 + z + ... + z^b) - (1 - (b+1) rho) * ln z

where ``z > 0`` is a root of ``p(z) = sum_{i=0}^{b} (i + b + 1 - 1/rho) z^i``.
Writing the ratio ``(1 - z)/(1 - z^{b+1})`` as the reciprocal geometric sum
keeps ``z = 1`` regular (it is the root at ``rho = 2/(3b+2)``).

The coefficients of ``p`` increase with ``i``, so there is exactly one sign
change and hence exactly one positive root; roots are still isolated by
scanning so that a violation would be caught rather than assumed away.
All logarithms are natural (nats per site).
"""

from __future__ import annotations

import csv
import decimal
import io
import logging
import math
from dataclasses import dataclass, field
from decimal import Decimal

import numpy as np

from .genfunc import bisect_root
from .model import _params

__all__ = [
    "PolynomialSpec",
    "ComplexityPoint",
    "EquilibriumDensity",
    "ComplexityError",
    "polynomial_spec",
    "positive_roots",
    "complexity",
    "complexity_value",
    "complexity_closed_b1",
    "complexity_closed_b2",
    "rho_star",
    "kmer_complexity",
    "kmer_complexity_direct",
    "kmer_rho_star",
    "b_scaled_limits",
    "golden_section_max",
    "complexity_grid",
    "complexity_csv",
]

log = logging.getLogger(__name__)


class ComplexityError(RuntimeError):
    """The root structure contradicts the existence of a positive root."""


@dataclass(frozen=True)
class PolynomialSpec:
    b: int
    rho: float
    coeffs: tuple[float, ...]  # c_0 .. c_b, ascending powers

    def __call__(self, z: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self, z: float) -> float:
        acc = 0.0
        for i in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * z + i * self.coeffs[i]
        return acc


def polynomial_spec(params, rho: float) -> PolynomialSpec:
    b = _params(params).b
    inv = 1.0 / rho
    return PolynomialSpec(b, rho, tuple(i + b + 1 - inv for i in range(b + 1)))


@dataclass(frozen=True)
class ComplexityPoint:
    rho: float
    z: float | None
    f: float
    root_candidates: tuple[float, ...] = field(default=())


@dataclass(frozen=True)
class EquilibriumDensity:
    b: int
    z_star: float
    rho_star: float
    f_at_star: float


def _geometric_sum(z: float, b: int) -> float:
    return sum(z ** i for i in range(b + 1))


def complexity_value(b: int, rho: float, z: float) -> float:
    """f evaluated at a given root ``z`` (no root search)."""
    if z == 0.0:
        return 0.0
    return rho * math.log(_geometric_sum(z, b)) - (1.0 - (b + 1) * rho) * math.log(z)


def positive_roots(poly: PolynomialSpec, tol: float = 1e-14, grid_points: int = 400) -> list[float]:
    """All positive real roots, located by a sign scan then bisection and a Newton polish.

    The scan runs over a geometric grid on ``(0, Z]`` where
    ``Z = 1 + max|c_i / c_b|`` bounds every root (Cauchy).  Roots of even
    multiplicity do not change sign and are not reported.
    """
    c = poly.coeffs
    lead = c[-1]
    if lead == 0:
        raise ValueError("leading coefficient vanishes; density at support edge")
    zmax = 1.0 + max(abs(ci / lead) for ci in c[:-1])
    zmin = min(1e-12, zmax * 1e-12)
    grid = np.geomspace(zmin, zmax, grid_points)
    grid = np.unique(np.concatenate([grid, [1.0]]))
    vals = [poly(z) for z in grid]
    roots = []
    for i in range(len(grid) - 1):
        lo, hi, flo, fhi = grid[i], grid[i + 1], vals[i], vals[i + 1]
        if flo == 0.0:
            roots.append(float(lo))
            continue
        if fhi == 0.0 or (flo > 0) == (fhi > 0):
            continue
        z = bisect_root(poly, float(lo), float(hi), tol=tol * max(1.0, float(hi)))
        d = poly.derivative(z)
        if d != 0.0:
            zn = z - poly(z) / d
            if lo <= zn <= hi and abs(poly(zn)) <= abs(poly(z)):
                z = zn
        roots.append(float(z))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    return roots


def complexity(params, rho: float) -> ComplexityPoint:
    """Complexity ``f(rho)`` together with the root that realises it."""
    b = _params(params).b
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {rho}")
    lo, hi = 1.0 / (2 * b + 1), 1.0 / (b + 1)
    if rho <= lo or rho > hi:
        return ComplexityPoint(rho, None, 0.0)
    if rho == hi:
        return ComplexityPoint(rho, 0.0, 0.0, (0.0,))
    poly = polynomial_spec(b, rho)
    if poly.coeffs[-1] <= 0.0:
        # rho sits on the left edge up to rounding
        return ComplexityPoint(rho, None, 0.0)
    roots = [z for z in positive_roots(poly) if z > 0.0]
    if not roots:
        raise ComplexityError(f"no positive root of p(z) for b={b}, rho={rho}")
    if len(roots) > 1:
        log.warning("p(z) has %d positive roots for b=%d, rho=%r: %r", len(roots), b, rho, roots)
    values = [complexity_value(b, rho, z) for z in roots]
    best = int(np.argmax(values))
    return ComplexityPoint(rho, roots[best], max(values[best], 0.0), tuple(roots))


def complexity_closed_b1(rho: float) -> float:
    """Explicit complexity for b = 1 on ``1/3 < rho < 1/2``."""
    if not 1 / 3 < rho < 1 / 2:
        raise ValueError(f"b = 1 closed form needs 1/3 < rho < 1/2, got {rho}")
    return rho * math.log(rho) - (1 - 2 * rho) * math.log(1 - 2 * rho) - (3 * rho - 1) * math.log(3 * rho - 1)


def complexity_closed_b2(rho: float) -> float:
    """Explicit complexity for b = 2 on ``1/5 < rho < 1/3``.

    Evaluated in 50-digit decimal arithmetic: near ``rho = 1/5`` the second
    logarithm's numerator cancels to O((5 rho - 1)^2) and double precision
    loses about nine digits there.
    """
    with decimal.localcontext() as ctx:
        ctx.prec = 50
        r = Decimal(rho)
        disc = -44 * r * r + 24 * r - 3
        if not (Decimal(1) / 5 < r < Decimal(1) / 3) or disc <= 0:
            raise ValueError(f"b = 2 closed form needs 1/5 < rho < 1/3, got {rho}")
        first = (3 * r - 1) * ((disc.sqrt() - 4 * r + 1) / (10 * r - 2)).ln()
        ratio = _closed_b2_ratio(r)
        if ratio is None:
            # removable 0/0 at rho = 1/4: average the two sides
            h = Decimal("1e-20")
            ratio = (_closed_b2_ratio(r - h) + _closed_b2_ratio(r + h)) / 2
        return float(first - r * ratio.ln())


def _closed_b2_ratio(r: Decimal) -> Decimal | None:
    s = (-44 * r * r + 24 * r - 3).sqrt()
    num = -350 * r ** 3 + (25 * r * r - 10 * r + 1) * s + 215 * r * r - 44 * r + 3
    den = r * r * s - 134 * r ** 3 + 57 * r * r - 6 * r
    return None if den == 0 else num / den


def rho_star(params, tol: float = 1e-14) -> EquilibriumDensity:
    """Density maximising the complexity, from the root of ``z^{b+1} + ... + z^{2b+1} = 1``."""
    b = _params(params).b
    z = bisect_root(lambda t: sum(t ** j for j in range(b + 1, 2 * b + 2)) - 1.0, 0.0, 1.0, tol=tol)
    zb1, zb2 = z ** (b + 1), z ** (b + 2)
    rho = (1 - z) * (1 - zb1) / (1 + b - b * z - 2 * zb1 - 2 * b * zb1 + zb2 + 2 * b * zb2)
    return EquilibriumDensity(b, z, rho, complexity(b, rho).f)


def kmer_complexity(k: int, rho: float, *, check: bool = False) -> float:
    """Complexity of jammed k-mer deposits at coverage ``rho``.

    Same code path as the Rydberg model with ``b = k - 1`` and density
    ``rho / k``.  With ``check=True`` the k-mer form is also evaluated
    independently and a disagreement above 1e-12 raises.
    """
    if int(k) != k or k < 2:
        raise ValueError("k must be an integer >= 2")
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"coverage must lie in [0, 1], got {rho}")
    f = complexity(k - 1, rho / k).f
    if check:
        other = kmer_complexity_direct(k, rho)
        if abs(f - other) > 1e-12:
            raise ComplexityError(f"k-mer forms disagree at k={k}, rho={rho}: {f} vs {other}")
    return f


def kmer_complexity_direct(k: int, rho: float) -> float:
    """The k-mer complexity written directly in k, roots via companion-matrix eigenvalues."""
    if not k / (2 * k - 1) < rho <= 1.0:
        return 0.0
    if rho == 1.0:
        return 0.0
    coeffs = [i + k - k / rho for i in range(k)]
    roots = np.roots(coeffs[::-1])
    cands = [r.real for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r)) and r.real > 0]
    if not cands:
        raise ComplexityError(f"no positive root for k={k}, rho={rho}")
    vals = []
    for z in cands:
        # Newton polish on the k-mer polynomial
        p = np.polynomial.Polynomial(coeffs)
        dz = p.deriv()
        for _ in range(3):
            d = dz(z)
            if d:
                z = z - p(z) / d
        ratio = 1.0 / sum(z ** i for i in range(k))  # (1 - z)/(1 - z^k)
        vals.append(rho / k * (-math.log(ratio) - (k / rho - k) * math.log(z)))
    return max(vals)


def kmer_rho_star(k: int) -> float:
    """Equilibrium coverage of k-mer deposits, ``k`` times the Rydberg value at ``b = k - 1``."""
    if int(k) != k or k < 2:
        raise ValueError("k must be an integer >= 2")
    return k * rho_star(k - 1).rho_star


def golden_section_max(func, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 500):
    """Maximise a unimodal ``func`` on ``[lo, hi]``; returns ``(x, func(x))``."""
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = func(d)
    x = 0.5 * (a + b)
    return x, func(x)


def b_scaled_limits(b_max: int, tol: float = 1e-10) -> list[tuple[int, float, float]]:
    """Rows ``(b, b * rho_star, b * rho_inf)`` for ``b = 1..b_max``."""
    from .rsa import jamming_limit_quadrature

    if b_max < 1:
        raise ValueError("b_max must be >= 1")
    rows = []
    for b in range(1, b_max + 1):
        rows.append((b, b * rho_star(b).rho_star, b * jamming_limit_quadrature(b, tol).value))
    return rows


def complexity_grid(params, rho_min: float, rho_max: float, steps: int) -> list[ComplexityPoint]:
    """Evaluate the complexity on ``steps`` evenly spaced densities, endpoints included."""
    if steps < 1 or rho_min > rho_max or rho_min < 0 or rho_max > 1:
        raise ValueError("invalid density grid")
    if steps == 1:
        grid = [rho_min]
    else:
        grid = [rho_min + (rho_max - rho_min) * i / (steps - 1) for i in range(steps)]
    return [complexity(params, rho) for rho in grid]


def complexity_csv(b: int, points, fh=None) -> str | None:
    """Write ``b,rho,z,f`` rows with 15 significant digits."""
    own = fh is None
    fh = io.StringIO() if own else fh
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["b", "rho", "z", "f"])
    for p in sorted(points, key=lambda p: p.rho):
        w.writerow([b, f"{p.rho:.15g}", "" if p.z is None else f"{p.z:.15g}", f"{p.f:.15g}"])
    return fh.getvalue() if own else None
