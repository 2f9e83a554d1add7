"""Random sequential adsorption (RSA) of Rydberg excitations and jamming limits.

Dynamics: starting from an all-neutral chain, repeatedly excite a site
chosen uniformly among the currently excitable ones (no excited atom within
distance ``b``) until none is left.

Sampling route.  Picking uniformly among excitable sites has the same law
as drawing a uniformly random priority order of all sites and greedily
exciting each site, in that order, if it is still excitable (a blocked
site stays blocked, so skipping it is the same as rejecting it).  The
greedy pass is evaluated in parallel rounds: every undecided site whose
priority is the smallest among undecided sites within distance ``b`` is
excited, and its neighbourhood is blocked.  This gives exactly the greedy
result and vectorises well.  :func:`rsa_trial_sequential` is the literal
one-excitation-at-a-time process, kept as a reference.

Seeding.  Trial ``t`` of a run with master seed ``s`` draws from
``Generator(PCG64(SeedSequence(s, spawn_key=(t,))))``, so every trial is
reproducible on its own and the trials can be run in any order.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .model import _params
from .quadrature import QuadratureResult, integrate

__all__ = [
    "SimConfig",
    "SimSummary",
    "trial_rng",
    "rsa_trial",
    "rsa_trial_sequential",
    "simulate_rsa",
    "jamming_limit_quadrature",
    "kmer_jamming_limit",
    "kmer_jamming_limit_direct",
    "renyi_constant",
    "scaled_jamming_limit",
    "scaled_limit_table",
    "comparison_rows",
    "comparison_csv",
    "RENYI_CONSTANT",
]

RENYI_CONSTANT = 0.7475979202  # ten-digit reference value


@dataclass(frozen=True)
class SimConfig:
    L: int
    b: int
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        _params(self.b)


@dataclass(frozen=True)
class SimSummary:
    mean_density: float
    std_error: float
    trials: int
    seed: int
    L: int
    b: int
    per_trial_densities: tuple[float, ...] | None = None


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial, derived from ``(seed, trial)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def _window(mask_or_vals: np.ndarray, b: int, fill, reducer) -> np.ndarray:
    padded = np.concatenate([np.full(b, fill, mask_or_vals.dtype), mask_or_vals,
                             np.full(b, fill, mask_or_vals.dtype)])
    return reducer(sliding_window_view(padded, 2 * b + 1), axis=1)


def greedy_by_priority(priority: np.ndarray, b: int) -> np.ndarray:
    """Excite sites greedily in increasing ``priority`` order; returns the excited mask."""
    L = len(priority)
    big = np.iinfo(np.int64).max
    pr = priority.astype(np.int64)
    undecided = np.ones(L, dtype=bool)
    excited = np.zeros(L, dtype=bool)
    while undecided.any():
        live = np.where(undecided, pr, big)
        chosen = undecided & (live == _window(live, b, big, np.min))
        excited |= chosen
        undecided &= ~_window(chosen, b, False, np.any)
    return excited


def rsa_trial(L: int, b: int, rng: np.random.Generator) -> np.ndarray:
    """One RSA run to jamming; returns the boolean array of excited sites."""
    return greedy_by_priority(rng.permutation(L), b)


def rsa_trial_sequential(L: int, b: int, rng: np.random.Generator) -> np.ndarray:
    """Reference RSA run: pick uniformly among excitable sites one at a time."""
    excitable = list(range(L))
    pos = {s: s for s in range(L)}
    excited = np.zeros(L, dtype=bool)

    def drop(s):
        i = pos.pop(s)
        last = excitable.pop()
        if last != s:
            excitable[i] = last
            pos[last] = i

    while excitable:
        s = excitable[int(rng.integers(len(excitable)))]
        excited[s] = True
        for t in range(max(0, s - b), min(L, s + b + 1)):
            if t in pos:
                drop(t)
    return excited


def simulate_rsa(config: SimConfig, *, keep_trials: bool = False, workers: int = 1) -> SimSummary:
    """Monte Carlo estimate of the jamming density (mean and standard error)."""

    def one(t):
        return float(rsa_trial(config.L, config.b, trial_rng(config.seed, t)).sum()) / config.L

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            dens = list(pool.map(one, range(config.trials)))
    else:
        dens = [one(t) for t in range(config.trials)]
    arr = np.array(dens)
    mean = math.fsum(dens) / len(dens)
    se = float(arr.std(ddof=1) / math.sqrt(len(dens))) if len(dens) > 1 else 0.0
    return SimSummary(mean, se, config.trials, config.seed, config.L, config.b,
                      tuple(dens) if keep_trials else None)


def _harmonic_tail(y: np.ndarray, b: int) -> np.ndarray:
    """``sum_{j=1}^{b} (1 - y^j) / j`` evaluated elementwise."""
    out = np.zeros_like(y)
    pw = np.ones_like(y)
    for j in range(1, b + 1):
        pw = pw * y
        out += (1.0 - pw) / j
    return out


def jamming_limit_quadrature(params, tol: float = 1e-10) -> QuadratureResult:
    """Jamming density ``int_0^1 exp(-2 sum_{j<=b} (1 - y^j)/j) dy``."""
    b = _params(params).b
    return integrate(lambda y: np.exp(-2.0 * _harmonic_tail(y, b)), 0.0, 1.0, tol)


def kmer_jamming_limit_direct(k: int, tol: float = 1e-10) -> QuadratureResult:
    """k-mer coverage ``k int_0^inf exp(-u - 2 sum_{j<k} (1 - e^{-ju})/j) du``."""
    if int(k) != k or k < 2:
        raise ValueError("k must be an integer >= 2")

    def integrand(u):
        s = np.zeros_like(u)
        for j in range(1, k):
            s += -np.expm1(-j * u) / j
        return k * np.exp(-u - 2.0 * s)

    return integrate(integrand, 0.0, math.inf, tol)


def kmer_jamming_limit(k: int, tol: float = 1e-10) -> QuadratureResult:
    """k-mer jamming coverage as ``k`` times the Rydberg limit at ``b = k - 1``.

    The direct k-mer integral is evaluated too; disagreement above 1e-9
    raises ``ArithmeticError``.
    """
    if int(k) != k or k < 2:
        raise ValueError("k must be an integer >= 2")
    ryd = jamming_limit_quadrature(k - 1, tol)
    direct = kmer_jamming_limit_direct(k, tol)
    value = k * ryd.value
    if abs(value - direct.value) > 1e-9:
        raise ArithmeticError(f"k-mer jamming limits disagree for k={k}: {value} vs {direct.value}")
    return QuadratureResult(value, k * ryd.abs_error_estimate, ryd.evaluations + direct.evaluations)


def _running_integral(kernel, log_kernel, y: float, tol: float) -> tuple[float, int]:
    """``int_0^y kernel(x) dx``, switching to ``x = e^u`` above 1.

    ``log_kernel(u)`` must return ``e^u * kernel(e^u)``.
    """
    head = integrate(kernel, 0.0, min(y, 1.0), tol)
    if y <= 1.0:
        return head.value, head.evaluations
    tail = integrate(log_kernel, 0.0, math.log(y), tol)
    return head.value + tail.value, head.evaluations + tail.evaluations


def _nested_outer(kernel, log_kernel, upper: float, tol: float, inner_tol: float) -> QuadratureResult:
    """``int_0^upper exp(-2 int_0^y kernel) dy``; ``upper`` may be infinite."""
    counter = [0]

    def outer(ys):
        vals = np.empty_like(ys)
        for i, y in enumerate(ys):
            inner, n = _running_integral(kernel, log_kernel, float(y), inner_tol)
            counter[0] += n
            vals[i] = math.exp(-2.0 * inner)
        return vals

    res = integrate(outer, 0.0, upper, tol)
    return QuadratureResult(res.value, res.abs_error_estimate, res.evaluations + counter[0])


def _renyi_kernel(x):
    # (1 - e^{-x}) / x, equal to 1 at x = 0
    with np.errstate(invalid="ignore", divide="ignore"):
        out = -np.expm1(-x) / x
    return np.where(x == 0.0, 1.0, out)


def _renyi_log_kernel(u):
    return -np.expm1(-np.exp(u))


def renyi_constant(tol: float = 1e-10, y_max: float | None = None) -> QuadratureResult:
    """Renyi parking constant ``int_0^inf exp(-2 int_0^y (1 - e^{-x})/x dx) dy``.

    The outer range is mapped onto ``[0, 1)`` by ``y = t / (1 - t)``; the
    mapped integrand tends to ``exp(-2 gamma)`` at ``t = 1``, so no
    truncation is needed.  ``y_max`` truncates the outer integral instead.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    upper = math.inf if y_max is None else float(y_max)
    return _nested_outer(_renyi_kernel, _renyi_log_kernel, upper, tol, tol * 1e-2)


def scaled_jamming_limit(params, tol: float = 1e-10) -> QuadratureResult:
    """``b * rho_inf`` via ``int_0^b exp(-2 int_0^y (1 - (1 - x/b)^b)/x dx) dy``."""
    b = _params(params).b

    def kernel(x):
        with np.errstate(invalid="ignore", divide="ignore"):
            num = -np.expm1(b * np.log1p(-np.minimum(x, b) / b))
            out = num / x
        return np.where(x == 0.0, 1.0, out)

    def log_kernel(u):
        x = np.minimum(np.exp(u), b)
        with np.errstate(divide="ignore"):
            return -np.expm1(b * np.log1p(-x / b))

    return _nested_outer(kernel, log_kernel, float(b), tol, tol * 1e-2)


def scaled_limit_table(b_max: int, tol: float = 1e-10, check_tol: float = 1e-8) -> list[tuple[int, float]]:
    """``(b, b * rho_inf)`` for ``b = 1..b_max`` from the rescaled integral.

    Each row is cross-checked against ``b`` times the direct integral.
    """
    if b_max < 1:
        raise ValueError("b_max must be >= 1")
    rows = []
    for b in range(1, b_max + 1):
        scaled = scaled_jamming_limit(b, tol).value
        direct = b * jamming_limit_quadrature(b, tol).value
        if abs(scaled - direct) > check_tol:
            raise ArithmeticError(f"scaled and direct jamming limits disagree at b={b}: {scaled} vs {direct}")
        rows.append((b, scaled))
    return rows


def comparison_rows(b_max: int, tol: float = 1e-10):
    """Rows ``(b, rho_inf, rho_star, b*rho_inf, b*rho_star)`` for b = 1..b_max."""
    from .complexity import rho_star

    rows = []
    for b in range(1, b_max + 1):
        inf = jamming_limit_quadrature(b, tol).value
        star = rho_star(b).rho_star
        rows.append((b, inf, star, b * inf, b * star))
    return rows


def comparison_csv(rows, fh=None) -> str | None:
    """Write ``b,rho_inf,rho_star,b_rho_inf,b_rho_star`` with 15 significant digits."""
    own = fh is None
    fh = io.StringIO() if own else fh
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["b", "rho_inf", "rho_star", "b_rho_inf", "b_rho_star"])
    for b, *vals in sorted(rows):
        w.writerow([b] + [f"{v:.15g}" for v in vals])
    return fh.getvalue() if own else None
