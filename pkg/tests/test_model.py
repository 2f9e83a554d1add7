from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rydjam.model import (
    BruteForceLimitError,
    Configuration,
    GapProfile,
    ModelParams,
    configuration_from_gaps,
    density,
    enumerate_jammed,
    gap_profile,
    gap_sequence,
    is_blockade_valid,
    is_jammed,
    n_bounds,
)


def naive_valid(sites, b):
    ex = [i for i, s in enumerate(sites) if s]
    return all(j - i > b for i in ex for j in ex if j > i)


def naive_jammed(sites, b):
    """Valid, and exciting any neutral site would break validity."""
    if not naive_valid(sites, b):
        return False
    for i, s in enumerate(sites):
        if not s:
            trial = list(sites)
            trial[i] = 1
            if naive_valid(trial, b):
                return False
    return True


sites_strategy = st.lists(st.integers(0, 1), max_size=18)


@pytest.mark.parametrize("text,b,expected", [("•◦•", 1, True), ("••", 1, False), ("•◦◦•", 2, True)])
def test_blockade_examples(text, b, expected):
    assert is_blockade_valid(text, b) is expected


@pytest.mark.parametrize("text,b,expected", [
    ("◦•◦", 1, True),
    ("•◦◦", 1, False),
    ("•◦◦•◦◦•◦◦•◦◦•◦◦•", 2, True),
    ("", 1, True),
    ("◦◦", 1, False),
])
def test_jammed_examples(text, b, expected):
    assert is_jammed(text, b) is expected


def test_invalid_is_not_jammed():
    assert not is_jammed("•••", 1)


@given(sites_strategy, st.integers(1, 4))
def test_blockade_matches_pairwise_rule(sites, b):
    assert is_blockade_valid(sites, b) == naive_valid(sites, b)


@given(sites_strategy, st.integers(1, 4))
def test_jammed_matches_definition(sites, b):
    # the empty chain is jammed by convention; the naive rule agrees
    assert is_jammed(sites, b) == naive_jammed(sites, b)


@pytest.mark.parametrize("L,b,expected", [
    (16, 2, {4: 45, 5: 50, 6: 1}),
    (0, 1, {0: 1}),
    (0, 3, {0: 1}),
    (3, 1, {1: 1, 2: 1}),
    (1, 1, {1: 1}),
])
def test_enumerate_examples(L, b, expected):
    assert enumerate_jammed(L, b) == expected


@pytest.mark.parametrize("b", [1, 2, 3])
def test_enumerate_matches_scalar_test(b):
    for L in range(11):
        counts, masks = enumerate_jammed(L, b, return_configs=True)
        expected = {}
        for sites in product((0, 1), repeat=L):
            if naive_jammed(sites, b):
                expected[sum(sites)] = expected.get(sum(sites), 0) + 1
        assert counts == expected
        assert all(is_jammed(Configuration.from_mask(m, L), b) for m in masks)
        assert len(masks) == sum(counts.values())


def test_enumerate_cap():
    with pytest.raises(BruteForceLimitError, match="limited to L <= 26"):
        enumerate_jammed(27, 1)
    assert enumerate_jammed(10, 1, cap=10)
    with pytest.raises(BruteForceLimitError):
        enumerate_jammed(11, 1, cap=10)


def test_counts_respect_bounds():
    for b in (1, 2, 3):
        for L in range(1, 18):
            lo, hi = n_bounds(L, b)
            assert all(lo <= N <= hi for N in enumerate_jammed(L, b))


def test_density():
    assert density("◦•◦") == Fraction(1, 3)
    assert density(Configuration.parse("•◦◦•◦◦•◦◦•◦◦•◦◦•")) == Fraction(6, 16)
    with pytest.raises(ValueError):
        density("")


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(0)
    assert ModelParams(3).k == 4


def test_configuration_parse_roundtrip():
    c = Configuration.parse("1 0 0, 1")
    assert c.sites == (1, 0, 0, 1)
    assert str(c) == "•◦◦•"
    assert Configuration.from_mask(c.to_mask(), c.length) == c
    with pytest.raises(ValueError):
        Configuration.parse("1a")


def test_gap_profile_full_block():
    # b=2: gaps 0, 2, 1 then full block
    c = configuration_from_gaps([0, 2, 1], 2)
    assert is_jammed(c, 2)
    p = gap_profile(c, 2)
    assert p.counts == (1, 1, 1)
    assert not p.truncated
    assert p.length() == c.length


def test_gap_profile_truncated():
    c = Configuration.parse("◦•◦◦•◦")  # b=2, tail 1 < b
    p = gap_profile(c, 2)
    assert p.truncated and p.tail == 1
    assert p.counts == (0, 1, 0)


@settings(max_examples=200)
@given(st.integers(1, 4).flatmap(lambda b: st.tuples(
    st.just(b), st.lists(st.integers(0, b), min_size=1, max_size=10), st.integers(0, b))))
def test_gap_roundtrip(data):
    b, gaps, tail = data
    c = configuration_from_gaps(gaps, b, tail)
    assert is_jammed(c, b)
    assert gap_sequence(c, b) == (gaps, tail)
    if tail == b:
        p = gap_profile(c, b)
        assert p.n_blocks == c.n_excited
        assert p.neutral_in_gaps == c.length - (b + 1) * c.n_excited


def test_gap_sequence_rejects_unjammed():
    with pytest.raises(ValueError):
        gap_sequence("•◦◦", 1)


def test_gap_profile_validation():
    with pytest.raises(ValueError):
        GapProfile((1,))
    with pytest.raises(ValueError):
        GapProfile((1, -1))
