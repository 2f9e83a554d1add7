"""Configurations of the one-dimensional Rydberg blockade model.

A configuration is a 0/1 sequence: 1 is an excited (Rydberg) atom, 0 a
neutral one.  With blockade range ``b`` two excited atoms must have index
difference at least ``b + 1``, i.e. at least ``b`` neutral sites between
them.  Getting this off by one silently corrupts every count downstream,
so the rule lives in exactly one place (:func:`is_blockade_valid`).

A configuration is jammed when no neutral site can be excited any more.
By convention the empty configuration (``L = 0``) is jammed, while an
all-neutral configuration of positive length never is.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "Configuration",
    "ModelParams",
    "GapProfile",
    "BruteForceLimitError",
    "is_blockade_valid",
    "is_jammed",
    "enumerate_jammed",
    "density",
    "gap_sequence",
    "gap_profile",
    "configuration_from_gaps",
    "n_bounds",
    "DEFAULT_BRUTE_FORCE_CAP",
]

DEFAULT_BRUTE_FORCE_CAP = 26
_CHUNK = 1 << 20

_SYMBOLS = {"1": 1, "0": 0, "•": 1, "◦": 0, "x": 1, ".": 0, "#": 1, "-": 0}


class BruteForceLimitError(ValueError):
    """Raised when an exhaustive 2**L scan is requested above the cap."""


@dataclass(frozen=True)
class ModelParams:
    b: int

    def __post_init__(self):
        if int(self.b) != self.b or self.b < 1:
            raise ValueError(f"blockade range must be a positive integer, got {self.b!r}")

    @property
    def k(self) -> int:
        """Equivalent k-mer length."""
        return self.b + 1


def _params(params) -> ModelParams:
    return params if isinstance(params, ModelParams) else ModelParams(int(params))


@dataclass(frozen=True)
class Configuration:
    sites: tuple[int, ...]

    def __post_init__(self):
        sites = tuple(int(s) for s in self.sites)
        if any(s not in (0, 1) for s in sites):
            raise ValueError("sites must be 0 (neutral) or 1 (excited)")
        object.__setattr__(self, "sites", sites)

    @classmethod
    def parse(cls, text: str) -> Configuration:
        """Build from a string such as ``"•◦•"``, ``"101"`` or ``"x.x"``.

        Whitespace and commas are ignored.
        """
        sites = []
        for ch in text:
            if ch.isspace() or ch == ",":
                continue
            try:
                sites.append(_SYMBOLS[ch])
            except KeyError:
                raise ValueError(f"unknown site symbol {ch!r}") from None
        return cls(tuple(sites))

    @classmethod
    def from_mask(cls, mask: int, length: int) -> Configuration:
        """Bit ``i`` of ``mask`` is site ``i``."""
        return cls(tuple((mask >> i) & 1 for i in range(length)))

    @property
    def length(self) -> int:
        return len(self.sites)

    @property
    def n_excited(self) -> int:
        return sum(self.sites)

    def to_mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self.sites) if s)

    def __str__(self):
        return "".join("•" if s else "◦" for s in self.sites)

    def __len__(self):
        return len(self.sites)


def _as_config(config) -> Configuration:
    if isinstance(config, Configuration):
        return config
    if isinstance(config, str):
        return Configuration.parse(config)
    return Configuration(tuple(config))


@dataclass(frozen=True)
class GapProfile:
    """Counts ``M_0..M_b`` of the gaps preceding each full block.

    A block is one excited atom followed by exactly ``b`` neutral sites.
    ``truncated`` marks configurations whose last block is cut short
    (``tail`` neutral sites after the final atom, ``0 <= tail < b``); the
    counts then describe only the full-block prefix.
    """

    counts: tuple[int, ...]
    truncated: bool = False
    tail: int | None = None

    def __post_init__(self):
        counts = tuple(int(m) for m in self.counts)
        if len(counts) < 2 or any(m < 0 for m in counts):
            raise ValueError("gap counts must be non-negative with length b + 1 >= 2")
        object.__setattr__(self, "counts", counts)

    @property
    def b(self) -> int:
        return len(self.counts) - 1

    @property
    def n_blocks(self) -> int:
        return sum(self.counts)

    @property
    def neutral_in_gaps(self) -> int:
        return sum(a * m for a, m in enumerate(self.counts))

    def length(self) -> int:
        """Length of the full-block part: ``(b + 1) N + sum(a M_a)``."""
        return (self.b + 1) * self.n_blocks + self.neutral_in_gaps


def is_blockade_valid(config, params) -> bool:
    """True iff every two excited sites are more than ``b`` indices apart."""
    b = _params(params).b
    last = None
    for i, s in enumerate(_as_config(config).sites):
        if s:
            if last is not None and i - last <= b:
                return False
            last = i
    return True


def is_jammed(config, params) -> bool:
    """True iff the configuration is valid and no neutral site is excitable."""
    config = _as_config(config)
    b = _params(params).b
    if not is_blockade_valid(config, b):
        return False
    L = config.length
    if L == 0:
        return True
    excited = [i for i, s in enumerate(config.sites) if s]
    if not excited:
        return False
    # neutral runs: boundary runs in [0, b], interior runs in [b, 2b]
    if excited[0] > b or L - 1 - excited[-1] > b:
        return False
    return all(j - i - 1 <= 2 * b for i, j in zip(excited, excited[1:]))


def _jammed_mask(x: np.ndarray, L: int, b: int) -> np.ndarray:
    """Vectorised jammedness test on an array of bitmasks."""
    full = np.uint64((1 << L) - 1)
    ok = np.ones(x.shape, dtype=bool)
    covered = x.copy()
    for d in range(1, b + 1):
        sd = np.uint64(d)
        ok &= (x & (x >> sd)) == 0
        covered |= (x << sd) | (x >> sd)
    return ok & ((covered & full) == full)


def enumerate_jammed(L: int, params, *, cap: int = DEFAULT_BRUTE_FORCE_CAP,
                     return_configs: bool = False):
    """Count jammed configurations of length ``L`` by scanning all 2**L strings.

    Returns a dict ``{N: J_{N,L}}`` with only the non-zero counts.  With
    ``return_configs=True`` a second value is returned: the sorted list of
    jammed bitmasks (bit ``i`` = site ``i``).
    """
    b = _params(params).b
    if L < 0:
        raise ValueError("length must be non-negative")
    if L > cap:
        raise BruteForceLimitError(
            f"brute-force enumeration is limited to L <= {cap} (2**L strings); "
            f"got L = {L}. Use the generating-function route instead."
        )
    total = 1 << L
    counts = np.zeros(L + 1, dtype=np.int64)
    configs = [] if return_configs else None
    for start in range(0, total, _CHUNK):
        x = np.arange(start, min(start + _CHUNK, total), dtype=np.uint64)
        jam = _jammed_mask(x, L, b)
        counts += np.bincount(np.bitwise_count(x[jam]), minlength=L + 1)[: L + 1]
        if return_configs:
            configs.extend(int(v) for v in x[jam])
    result = {n: int(c) for n, c in enumerate(counts) if c}
    if return_configs:
        return result, configs
    return result


def density(config) -> Fraction:
    """Exact density ``N / L``."""
    config = _as_config(config)
    if config.length == 0:
        raise ValueError("density is undefined for the empty configuration")
    return Fraction(config.n_excited, config.length)


def n_bounds(L: int, params) -> tuple[int, int]:
    """Range ``ceil(L/(2b+1)) <= N <= ceil(L/(b+1))`` allowed for jammed configs."""
    b = _params(params).b
    return -(-L // (2 * b + 1)), -(-L // (b + 1))


def gap_sequence(config, params) -> tuple[list[int], int]:
    """Ordered gaps ``a_1..a_N`` in front of each block, and the tail length.

    The tail is the number of neutral sites after the last excited atom;
    it equals ``b`` exactly when the configuration ends in a full block.
    """
    config = _as_config(config)
    b = _params(params).b
    if not is_jammed(config, b):
        raise ValueError(f"gap decomposition needs a jammed configuration, got {config}")
    excited = [i for i, s in enumerate(config.sites) if s]
    if not excited:
        return [], 0
    gaps = [excited[0]]
    gaps += [j - i - 1 - b for i, j in zip(excited, excited[1:])]
    return gaps, config.length - 1 - excited[-1]


def gap_profile(config, params) -> GapProfile:
    """Gap counts ``M_0..M_b`` of a jammed configuration.

    For a configuration ending in a full block the identities
    ``sum(M) == N`` and ``sum(a * M_a) == L - (b+1) N`` hold.  Otherwise the
    profile is ``truncated`` and only covers blocks ``1..N-1``.
    """
    b = _params(params).b
    gaps, tail = gap_sequence(config, b)
    truncated = bool(gaps) and tail < b
    counts = [0] * (b + 1)
    for a in gaps[:-1] if truncated else gaps:
        counts[a] += 1
    return GapProfile(tuple(counts), truncated=truncated, tail=tail if truncated else None)


def configuration_from_gaps(gaps: Sequence[int], params, tail: int | None = None) -> Configuration:
    """Inverse of :func:`gap_sequence`; ``tail`` defaults to a full final block."""
    b = _params(params).b
    if any(not 0 <= a <= b for a in gaps):
        raise ValueError(f"gaps must lie in [0, {b}]")
    if not gaps:
        return Configuration(())
    tail = b if tail is None else tail
    if not 0 <= tail <= b:
        raise ValueError(f"tail must lie in [0, {b}]")
    sites: list[int] = []
    for i, a in enumerate(gaps):
        sites += [0] * a + [1]
        sites += [0] * (b if i < len(gaps) - 1 else tail)
    return Configuration(tuple(sites))
