import io
import math
from itertools import groupby, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rydjam.genfunc import (
    _check_bounds,
    bisect_root,
    block_encoding,
    growth_rate,
    jammed_count_row,
    jammed_counts,
    jammed_counts_recurrence,
    kmer_counts,
    sum_over_lengths,
    total_counts,
)
from rydjam.model import enumerate_jammed

# ln of the real root of w^3 = w + 1, frozen from a 30-digit mpmath solve
LN_W1 = 0.2811995743229618


def kmer_oracle(k, L):
    """Brute force: occupied runs are multiples of k, empty runs shorter than k."""
    out = {}
    for sites in product((0, 1), repeat=L):
        runs = [(s, len(list(g))) for s, g in groupby(sites)]
        if all(n % k == 0 for s, n in runs if s) and all(n < k for s, n in runs if not s):
            out[sum(sites)] = out.get(sum(sites), 0) + 1
    return out


def test_figure_counts():
    assert jammed_counts(2, 16).row(16) == {4: 45, 5: 50, 6: 1}
    assert jammed_count_row(2, 16) == {4: 45, 5: 50, 6: 1}


@pytest.mark.parametrize("b", [1, 2, 3])
def test_series_matches_brute_force(b):
    table = jammed_counts(b, 16)
    for L in range(17):
        assert table.row(L) == enumerate_jammed(L, b)


@pytest.mark.parametrize("b", [1, 2, 3, 4, 5])
def test_series_matches_rational_form(b):
    assert jammed_counts(b, 60).entries == jammed_counts_recurrence(b, 60).entries


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 120))
def test_single_row_matches_table(b, L):
    assert jammed_count_row(b, L) == jammed_counts(b, L).row(L)


def test_empty_chain():
    for b in (1, 2, 5):
        assert jammed_counts(b, 0).row(0) == {0: 1}


def test_bounds_hold():
    for b in (1, 2, 3, 7):
        assert _check_bounds(jammed_counts(b, 80))


def test_coefficients_are_python_ints():
    row = jammed_count_row(1, 600)
    assert all(type(v) is int for v in row.values())
    assert max(row.values()) > 2 ** 64


@pytest.mark.parametrize("k", [2, 3, 4])
def test_kmer_counts_match_brute_force(k):
    table = kmer_counts(k, 13)
    for L in range(14):
        assert table.row(L) == kmer_oracle(k, L), (k, L)


def test_kmer_small_rows():
    t = kmer_counts(2, 4)
    assert t.row(3) == {2: 2}
    assert t.row(4) == {2: 1, 4: 1}


@pytest.mark.parametrize("k", [2, 3, 5])
def test_kmer_growth_matches_rydberg(k):
    # total k-mer counts grow at the same rate as the Rydberg model with b = k - 1
    totals = kmer_counts(k, 400).totals()
    ratio = totals[400] / totals[399]
    assert abs(ratio - growth_rate(k - 1).w) < 1e-6


def test_growth_rate_b1():
    y = min(r.real for r in np.roots([1, 1, 0, -1]) if abs(r.imag) < 1e-12 and r.real > 0)
    assert abs(-math.log(y) - LN_W1) < 1e-14
    g = growth_rate(1)
    assert abs(g.log_w - LN_W1) < 1e-14
    assert abs(g.w ** 3 - g.w - 1) < 1e-13


@pytest.mark.parametrize("b", [1, 2, 4, 8])
def test_growth_rate_is_asymptotic_ratio(b):
    totals = total_counts(b, 800)
    assert abs(totals[800] / totals[799] - growth_rate(b).w) < 1e-8


def test_growth_rate_b1_equals_b2():
    # both roots coincide: y^2 + y^3 = 1 implies y^3 + y^4 + y^5 = 1
    assert abs(growth_rate(1).y - growth_rate(2).y) < 1e-14


@pytest.mark.parametrize("b", [1, 2, 3])
def test_sum_over_lengths(b):
    for N in range(1, 7):
        assert sum_over_lengths(b, N) == (b + 1) ** (N + 1)
    assert sum_over_lengths(b, 0) == 1


def test_sum_over_lengths_rejects_negative():
    with pytest.raises(ValueError):
        sum_over_lengths(1, -1)


def test_bisect_root():
    r = bisect_root(lambda x: x * x - 2, 0.0, 2.0)
    assert abs(r - math.sqrt(2)) < 1e-14
    with pytest.raises(ValueError):
        bisect_root(lambda x: x * x + 1, 0.0, 2.0)


def test_block_encoding():
    enc = block_encoding(2)
    assert [m[1] for m in enc.block] == [3, 4, 5]
    assert [m[1] for m in enc.start] == [0, 1, 2]
    assert [m[1] for m in enc.end] == [1, 2, 3]


def test_csv_layout():
    text = jammed_counts(1, 3).to_csv()
    assert text.splitlines() == ["b,N,L,count", "1,0,0,1", "1,1,1,1", "1,1,2,2", "1,1,3,1", "1,2,3,1"]
    buf = io.StringIO()
    kmer_counts(2, 2).to_csv(buf)
    assert buf.getvalue().startswith("k,N,L,count\n")


def test_table_lookup_beyond_range():
    with pytest.raises(KeyError):
        jammed_counts(1, 3).count(1, 4)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        jammed_counts(1, -1)
    with pytest.raises(ValueError):
        kmer_counts(1, 5)
    with pytest.raises(ValueError):
        jammed_counts(0, 5)
