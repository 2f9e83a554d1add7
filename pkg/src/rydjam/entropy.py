"""Entropy maximisation over gap profiles: the independent route to the complexity.

Jammed configurations with N atoms on L sites that end in a full block are
counted by multinomials ``N! / prod M_a!`` over the lattice points

    R_{N,L} = {M in N_0^{b+1} : sum M_a = N, sum a M_a = L - (b+1) N}

and ``J_{N,L}`` grows like the largest such term, i.e. like
``exp(N H(M/N))``.  In the continuum limit this is a maximum-entropy
problem with a mean constraint, solved by a geometric distribution
``p_i = p_0 z^i``.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .complexity import complexity
from .genfunc import jammed_count_row
from .model import GapProfile, _params

__all__ = [
    "FeasibleSet",
    "ProbabilityVector",
    "LagrangeSolution",
    "shannon_entropy",
    "multinomial",
    "feasible_points",
    "feasible_set",
    "feasible_set_size",
    "discrete_complexity_estimate",
    "exact_log_density",
    "continuous_optimizer",
    "EXHAUSTIVE_LIMIT",
]

EXHAUSTIVE_LIMIT = 10 ** 6


class ProbabilityVector(tuple):
    """Non-negative entries summing to one (within 1e-12)."""

    def __new__(cls, values: Sequence[float]):
        vals = tuple(float(v) for v in values)
        if any(v < 0 for v in vals) or abs(math.fsum(vals) - 1.0) > 1e-12:
            raise ValueError(f"not a probability vector: {vals}")
        return super().__new__(cls, vals)


@dataclass(frozen=True)
class FeasibleSet:
    N: int
    L: int
    b: int
    points: tuple[GapProfile, ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class LagrangeSolution:
    b: int
    rho: float
    lam: float
    mu: float
    z: float
    p: ProbabilityVector
    f: float
    degenerate: bool = False


def shannon_entropy(p: Sequence[float]) -> float:
    """``-sum p_i ln p_i`` with ``0 ln 0 = 0``."""
    total = 0.0
    for v in p:
        if v < 0:
            raise ValueError("probabilities must be non-negative")
        if v > 0:
            total -= v * math.log(v)
    return total


def multinomial(N: int, profile) -> int:
    """Exact ``N! / prod M_a!``."""
    counts = profile.counts if isinstance(profile, GapProfile) else tuple(profile)
    if sum(counts) != N or any(m < 0 for m in counts):
        raise ValueError(f"profile {counts} does not sum to N = {N}")
    out, n = 1, 0
    for m in counts:
        n += m
        out *= math.comb(n, m)
    return out


def _slack(N: int, L: int, b: int) -> int:
    return L - (b + 1) * N


def feasible_points(N: int, L: int, params) -> Iterator[tuple[int, ...]]:
    """Yield every ``(M_0, ..., M_b)`` in R_{N,L}, recursing from ``M_b`` down to ``M_1``."""
    b = _params(params).b
    S = _slack(N, L, b)
    if N < 0 or S < 0 or S > b * N:
        return
    tail = [0] * (b + 1)

    def rec(a, left_n, left_s):
        if a == 0:
            if left_s == 0:
                tail[0] = left_n
                yield tuple(tail)
            return
        # remaining sizes 1..a-1 can absorb at most (a-1) per gap
        for m in range(min(left_n, left_s // a), -1, -1):
            rest_s = left_s - a * m
            if rest_s > (a - 1) * (left_n - m):
                break
            tail[a] = m
            yield from rec(a - 1, left_n - m, rest_s)
        tail[a] = 0

    yield from rec(b, N, S)


def feasible_set(N: int, L: int, params) -> FeasibleSet:
    b = _params(params).b
    pts = tuple(GapProfile(m) for m in feasible_points(N, L, b))
    return FeasibleSet(N, L, b, pts)


def feasible_set_size(N: int, L: int, params) -> int:
    """``|R_{N,L}|`` by dynamic programming over part sizes (no enumeration)."""
    b = _params(params).b
    S = _slack(N, L, b)
    if N < 0 or S < 0 or S > b * N:
        return 0
    # ways[n][s]: choose counts for sizes 1..a using n gaps and slack s
    ways = [[0] * (S + 1) for _ in range(N + 1)]
    ways[0][0] = 1
    for a in range(1, b + 1):
        for n in range(1, N + 1):
            row, prev = ways[n], ways[n - 1]
            for s in range(a, S + 1):
                row[s] += prev[s - a]
    return sum(ways[n][S] for n in range(N + 1))


def _objective(M: Sequence[int], N: int, L: int) -> float:
    return N / L * shannon_entropy([m / N for m in M])


def _local_moves(b: int) -> list[tuple[int, ...]]:
    """Integer directions preserving both linear constraints.

    ``e_i - e_j - e_k + e_l`` with ``i + l == j + k``; these span the
    constraint lattice.
    """
    moves = set()
    for i in range(b + 1):
        for l in range(i + 2, b + 1):
            for j in range(i + 1, l):
                k = i + l - j
                v = [0] * (b + 1)
                v[i] += 1
                v[l] += 1
                v[j] -= 1
                v[k] -= 1
                moves.add(tuple(v))
                moves.add(tuple(-x for x in v))
    return sorted(moves)


def _round_to_lattice(p: Sequence[float], N: int, S: int) -> list[int] | None:
    """A point of R_{N,L} near ``N * p``, or None if the repair gets stuck.

    Gap counts for sizes ``1..b`` are rounded, then nudged one unit at a
    time until the slack equals ``S`` and at most ``N`` gaps are used;
    ``M_0`` takes up the rest.
    """
    b = len(p) - 1
    M = [0] + [max(0, round(N * v)) for v in p[1:]]
    for _ in range(10 * (N + b + 1)):
        s = sum(a * m for a, m in enumerate(M))
        n = sum(M[1:])
        if s == S and n <= N:
            M[0] = N - n
            return M
        if s < S:
            if n < N:
                M[1] += 1
            else:
                a = next((a for a in range(1, b) if M[a] > 0), None)
                if a is None:
                    return None
                M[a] -= 1
                M[a + 1] += 1
        elif s > S:
            if M[1] > 0:
                M[1] -= 1
            else:
                a = max(a for a in range(2, b + 1) if M[a] > 0)
                M[a] -= 1
                M[a - 1] += 1
        else:
            # right slack, too many gaps: merge sizes i and j into i + j
            pair = next(((i, j) for i in range(1, b + 1) for j in range(i, b + 1 - i)
                         if M[i] > (i == j) and M[j] > 0), None)
            if pair is None:
                return None
            i, j = pair
            M[i] -= 1
            M[j] -= 1
            M[i + j] += 1
    return None


def _local_search(M: list[int], N: int, L: int, b: int) -> list[int]:
    moves = _local_moves(b)
    best = _objective(M, N, L)
    improved = True
    while improved:
        improved = False
        for v in moves:
            cand = [m + d for m, d in zip(M, v)]
            if min(cand) < 0:
                continue
            val = _objective(cand, N, L)
            if val > best + 1e-15:
                M, best, improved = cand, val, True
    return M


def discrete_complexity_estimate(N: int, L: int, params, *, exhaustive_limit: int = EXHAUSTIVE_LIMIT):
    """``max over R_{N,L} of (N/L) H(M/N)`` and the maximising profile.

    Exhaustive below ``exhaustive_limit`` lattice points; otherwise a rounded
    continuous optimum refined by constraint-preserving unit moves.  Raises ``ValueError`` when R_{N,L} is empty, i.e.
    no jammed configuration ends in a full block at that density.
    """
    b = _params(params).b
    size = feasible_set_size(N, L, b)
    if size == 0:
        raise ValueError(f"R_{{N,L}} is empty for N={N}, L={L}, b={b}: zero-count density")
    if N == 0:
        return 0.0, GapProfile((0,) * (b + 1))
    if size <= exhaustive_limit:
        best_val, best = -1.0, None
        for M in feasible_points(N, L, b):
            val = _objective(M, N, L)
            if val > best_val:
                best_val, best = val, M
        return best_val, GapProfile(best)
    S = _slack(N, L, b)
    start = None
    if N / L < 1 / (b + 1):
        sol = continuous_optimizer(b, N / L)
        start = _round_to_lattice(sol.p, N, S)
    if start is None:
        start = next(feasible_points(N, L, b))
        start = list(start)
    M = _local_search(start, N, L, b)
    return _objective(M, N, L), GapProfile(M)


def exact_log_density(N: int, L: int, params) -> float:
    """``ln J_{N,L} / L`` from the exact big-integer count."""
    b = _params(params).b
    if L < 1:
        raise ValueError("L must be positive")
    count = jammed_count_row(b, L).get(N, 0)
    if count == 0:
        raise ValueError(f"J_{{{N},{L}}} = 0 for b={b}")
    return math.log(count) / L


def continuous_optimizer(params, rho: float) -> LagrangeSolution:
    """Maximum-entropy gap distribution at density ``rho`` via the Lagrange conditions.

    The multipliers come from the positive root ``z`` of the complexity
    polynomial: ``mu = -rho ln z`` and ``lambda = -rho (1 - ln S(z))`` with
    ``S(z) = 1 + z + ... + z^b``; then ``p_i = z^i / S(z)``.  Both
    constraints are re-checked to 1e-10.
    """
    b = _params(params).b
    lo, hi = 1.0 / (2 * b + 1), 1.0 / (b + 1)
    if rho == hi:
        p = ProbabilityVector([1.0] + [0.0] * b)
        return LagrangeSolution(b, rho, -rho, math.inf, 0.0, p, 0.0, degenerate=True)
    if not lo < rho < hi:
        raise ValueError(f"density {rho} outside the open support ({lo}, {hi})")
    z = complexity(b, rho).z
    powers = [z ** i for i in range(b + 1)]
    S = math.fsum(powers)
    probs = [w / S for w in powers]
    probs[0] = 1.0 - math.fsum(probs[1:])
    p = ProbabilityVector(probs)
    mu = -rho * math.log(z)
    lam = -rho * (1.0 - math.log(S))
    mean = math.fsum(i * v for i, v in enumerate(p))
    target = 1.0 / rho - (b + 1)
    if abs(mean - target) > 1e-10:
        raise ArithmeticError(f"mean constraint violated: {mean} vs {target}")
    f = rho + lam + mu * target
    return LagrangeSolution(b, rho, lam, mu, z, p, f)
