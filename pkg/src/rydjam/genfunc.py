"""Exact counts of jammed configurations from their bivariate generating functions.

The Rydberg generating function is assembled from three building blocks:
a start run of ``0..b`` neutral sites, inner blocks (one atom followed by
``b..2b`` neutral sites) and an end block (one atom followed by ``0..b``
neutral sites)::

    F_b(x, y) = 1 + s_b(y) e_b(x, y) / (1 - p_b(x, y))

with ``x`` marking excited atoms and ``y`` marking sites.  Coefficients are
extracted by truncated power-series arithmetic over Python integers, so
counts are exact at any size.  A second route runs the linear recurrence
of the closed rational form and must agree to the last digit.
"""

from __future__ import annotations

import csv
import io
import math
from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np

from .model import ModelParams, _params, n_bounds

__all__ = [
    "BlockEncoding",
    "CoeffTable",
    "GrowthRate",
    "block_encoding",
    "jammed_counts",
    "jammed_counts_recurrence",
    "jammed_count_row",
    "kmer_counts",
    "total_counts",
    "growth_rate",
    "sum_over_lengths",
    "bisect_root",
]


@dataclass(frozen=True)
class BlockEncoding:
    """Monomials ``(x-degree, y-degree, coefficient)`` of the building blocks."""

    start: tuple[tuple[int, int, int], ...]
    block: tuple[tuple[int, int, int], ...]
    end: tuple[tuple[int, int, int], ...]


def block_encoding(params) -> BlockEncoding:
    b = _params(params).b
    return BlockEncoding(
        start=tuple((0, j, 1) for j in range(b + 1)),
        block=tuple((1, j, 1) for j in range(b + 1, 2 * b + 2)),
        end=tuple((1, j, 1) for j in range(1, b + 2)),
    )


@dataclass(frozen=True)
class CoeffTable:
    """Exact counts ``J_{N,L}`` for ``0 <= L <= L_max``; absent keys are zero.

    ``kind`` is ``"rydberg"`` (``param`` is ``b``, ``N`` counts atoms) or
    ``"kmer"`` (``param`` is ``k``, ``N`` counts occupied sites).
    """

    param: int
    L_max: int
    entries: dict[tuple[int, int], int] = field(repr=False)
    kind: str = "rydberg"

    @property
    def b(self) -> int:
        return self.param if self.kind == "rydberg" else self.param - 1

    def count(self, N: int, L: int) -> int:
        if L > self.L_max:
            raise KeyError(f"L = {L} beyond table L_max = {self.L_max}")
        return self.entries.get((N, L), 0)

    def row(self, L: int) -> dict[int, int]:
        """``{N: J_{N,L}}`` with non-zero entries only."""
        return {n: c for (n, l), c in sorted(self.entries.items()) if l == L and c}

    def totals(self) -> list[int]:
        out = [0] * (self.L_max + 1)
        for (_, L), c in self.entries.items():
            out[L] += c
        return out

    def column(self, N: int) -> list[int]:
        return [self.entries.get((N, L), 0) for L in range(self.L_max + 1)]

    def to_csv(self, fh=None) -> str | None:
        """Write ``b,N,L,count`` rows (``k,...`` for k-mer tables), sorted by L then N."""
        own = fh is None
        fh = io.StringIO() if own else fh
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["b" if self.kind == "rydberg" else "k", "N", "L", "count"])
        for (N, L), c in sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            w.writerow([self.param, N, L, str(c)])
        return fh.getvalue() if own else None


def _zeros(n: int) -> np.ndarray:
    return np.array([0] * n, dtype=object)


def _shift(row: np.ndarray, by: int) -> np.ndarray:
    """Multiply an x-polynomial by ``x**by`` (coefficients above the cap are dropped)."""
    out = _zeros(len(row))
    if by < len(row):
        out[by:] = row[: len(row) - by]
    return out


def _series_rows(b: int, L_max: int, width: int) -> Iterator[np.ndarray]:
    """Yield the x-polynomial coefficient of ``y**L`` in F_b for L = 0..L_max.

    ``G = 1/(1 - p_b)`` obeys ``G_L = [L == 0] + x * sum_{j=b+1}^{2b+1} G_{L-j}``
    and ``F_L = [L == 0] + x * sum_d c_d G_{L-d}`` where ``c_d`` is the number
    of ways to write ``d`` as start length plus end length.  Only the last
    ``2b+1`` rows of G are kept.
    """
    depth = 2 * b + 1
    c = [0] + [min(d, 2 * b + 2 - d, b + 1) for d in range(1, depth + 1)]
    hist: deque[np.ndarray] = deque([_zeros(width) for _ in range(depth)], maxlen=depth)
    for L in range(L_max + 1):
        # hist[-d] is G_{L-d}
        g = _zeros(width)
        f = _zeros(width)
        for d in range(1, depth + 1):
            prev = hist[-d]
            if d >= b + 1:
                g = g + prev
            f = f + c[d] * prev
        g = _shift(g, 1)
        f = _shift(f, 1)
        if L == 0:
            g[0] += 1
            f[0] += 1
        hist.append(g)
        yield f


def _row_width(b: int, L_max: int) -> int:
    return L_max // (b + 1) + 2


def _table_from_rows(param, L_max, rows, kind="rydberg") -> CoeffTable:
    entries = {}
    for L, row in enumerate(rows):
        for N, c in enumerate(row):
            if c:
                if c < 0:
                    raise ArithmeticError(f"negative coefficient at N={N}, L={L}")
                entries[(N, L)] = int(c)
    return CoeffTable(param, L_max, entries, kind)


def jammed_counts(params, L_max: int) -> CoeffTable:
    """Exact ``J_{N,L}`` for all ``L <= L_max`` by series expansion of F_b."""
    b = _params(params).b
    if L_max < 0:
        raise ValueError("L_max must be non-negative")
    rows = _series_rows(b, L_max, _row_width(b, L_max))
    return _table_from_rows(b, L_max, rows)


def jammed_count_row(params, L: int) -> dict[int, int]:
    """``{N: J_{N,L}}`` for one (possibly large) length using O(b L) memory."""
    b = _params(params).b
    row = None
    for row in _series_rows(b, L, _row_width(b, L)):
        pass
    return {N: int(c) for N, c in enumerate(row) if c}


def _poly_mul_y(p: dict, q: dict) -> dict:
    """Multiply polynomials stored as ``{(y_deg, x_deg): coeff}``."""
    out: dict = {}
    for (ya, xa), ca in p.items():
        for (yb, xb), cb in q.items():
            key = (ya + yb, xa + xb)
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _rational_recurrence(num: dict, den: dict, L_max: int, width: int):
    """Coefficient rows of ``num / den`` in y, given ``den`` has constant term 1."""
    if den.get((0, 0)) != 1 or any(y == 0 and x > 0 for (y, x) in den):
        raise ValueError("denominator must have constant term 1 in y")
    den_terms = [(y, x, c) for (y, x), c in den.items() if y > 0]
    rows: list[np.ndarray] = []
    for L in range(L_max + 1):
        row = _zeros(width)
        for (y, x), c in num.items():
            if y == L and x < width:
                row[x] += c
        for y, x, c in den_terms:
            if y <= L:
                row = row - c * _shift(rows[L - y], x)
        rows.append(row)
    return rows


def jammed_counts_recurrence(params, L_max: int) -> CoeffTable:
    """Same table as :func:`jammed_counts`, via the closed rational form.

    ``F_b = ((1-y)^2 + xy - xy^{b+1} - xy^{b+2} + xy^{2b+2})
             / ((1-y)(1 - y - x y^{b+1} + x y^{2b+2}))``
    """
    b = _params(params).b
    num = {(0, 0): 1, (1, 0): -2, (2, 0): 1}
    for y, c in ((1, 1), (b + 1, -1), (b + 2, -1), (2 * b + 2, 1)):
        num[(y, 1)] = num.get((y, 1), 0) + c
    den = _poly_mul_y({(0, 0): 1, (1, 0): -1},
                      {(0, 0): 1, (1, 0): -1, (b + 1, 1): -1, (2 * b + 2, 1): 1})
    rows = _rational_recurrence(num, den, L_max, _row_width(b, L_max))
    return _table_from_rows(b, L_max, rows)


def kmer_counts(k: int, L_max: int) -> CoeffTable:
    """Exact counts of jammed k-mer depositions; ``N`` is the number of occupied sites.

    Expands ``(1 - y^k) / (1 - y - x^k y^k + x^k y^{2k})``.
    """
    if int(k) != k or k < 2:
        raise ValueError("k-mer length must be an integer >= 2")
    num = {(0, 0): 1, (k, 0): -1}
    den = {(0, 0): 1, (1, 0): -1, (k, k): -1, (2 * k, k): 1}
    rows = _rational_recurrence(num, den, L_max, L_max + 1)
    return _table_from_rows(k, L_max, rows, kind="kmer")


def total_counts(params, L_max: int) -> list[int]:
    """``J_0..J_{L_max}``: total jammed configurations per length."""
    return jammed_counts(params, L_max).totals()


def bisect_root(func, lo: float, hi: float, tol: float = 1e-14, max_iter: int = 200) -> float:
    """Bisection for a sign change of ``func`` on ``[lo, hi]``."""
    flo, fhi = func(lo), func(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid in (lo, hi):
            break
        fm = func(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class GrowthRate:
    b: int
    y: float  # smallest-modulus root of 1 - y^{b+1}(1 + ... + y^b)
    w: float  # 1 / y

    @property
    def log_w(self) -> float:
        return math.log(self.w)


def growth_rate(params, tol: float = 1e-14) -> GrowthRate:
    """Exponential growth rate ``w_b`` of the total counts ``J_L ~ w_b^L``.

    The root lies in (1/2, 1): the polynomial ``y^{b+1}(1 + ... + y^b)`` is
    increasing, below 1 at y = 1/2 and equal to b + 1 at y = 1.
    """
    b = _params(params).b

    def q(y):
        return sum(y ** j for j in range(b + 1, 2 * b + 2)) - 1.0

    y = bisect_root(q, 0.5, 1.0, tol=tol)
    return GrowthRate(b, y, 1.0 / y)


def sum_over_lengths(params, N: int) -> int:
    """``sum_L J_{N,L}`` over every length that admits N atoms.

    Jammed configurations with N >= 1 atoms have length at most ``(2b+1) N``.
    For ``N >= 1`` the result must equal ``(b+1)**(N+1)``; the empty
    configuration makes ``N = 0`` the exception (sum 1).
    """
    b = _params(params).b
    if N < 0:
        raise ValueError("N must be non-negative")
    L_top = (2 * b + 1) * N
    total = sum(jammed_counts(b, L_top).column(N))
    if N >= 1 and total != (b + 1) ** (N + 1):
        raise ArithmeticError(f"sum over lengths {total} != (b+1)^(N+1) for b={b}, N={N}")
    return total


def _check_bounds(table: CoeffTable) -> bool:
    """True iff every non-zero entry respects the N bounds for its length."""
    for (N, L), c in table.entries.items():
        lo, hi = n_bounds(L, ModelParams(table.b))
        if c and not lo <= N <= hi:
            return False
    return True
