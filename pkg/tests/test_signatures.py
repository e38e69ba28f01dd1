import itertools

import pytest
from hypothesis import given, strategies as st

from unitary_designs.signatures import (
    dual,
    enumerate_signatures,
    partitions_max_parts,
    signature_stats,
    validate_signature,
    zero_weight_signatures,
)


def brute_signatures(d, r, s):
    out = []
    for mu in itertools.product(range(r, -s - 1, -1), repeat=d):
        if any(mu[i] < mu[i + 1] for i in range(d - 1)):
            continue
        if sum(mu) == r - s and sum(x for x in mu if x > 0) <= r:
            out.append(mu)
    return out


def brute_partitions(t, d):
    # all compositions of t, sorted, deduplicated
    found = set()

    def rec(rem, prefix):
        if rem == 0:
            found.add(tuple(sorted(prefix, reverse=True)))
            return
        for k in range(1, rem + 1):
            rec(rem - k, prefix + [k])

    rec(t, [])
    return {p for p in found if len(p) <= d}


def test_worked_example_d3_r2_s2():
    sigs = enumerate_signatures(3, 2, 2)
    assert set(sigs) == {(0, 0, 0), (1, 0, -1), (2, 0, -2), (2, -1, -1), (1, 1, -2)}
    assert sigs == sorted(sigs, reverse=True)


def test_trivial_cases():
    for d in range(1, 6):
        assert enumerate_signatures(d, 0, 0) == [(0,) * d]
    assert enumerate_signatures(2, 1, 0) == [(1, 0)]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
@pytest.mark.parametrize("r", range(5))
@pytest.mark.parametrize("s", range(5))
def test_matches_brute_force(d, r, s):
    sigs = enumerate_signatures(d, r, s)
    assert sigs == brute_signatures(d, r, s)
    assert len(set(sigs)) == len(sigs)


@pytest.mark.parametrize("d", range(1, 7))
def test_dual_swaps_r_and_s(d):
    for r in range(7 - d):
        for s in range(7 - d):
            left = set(enumerate_signatures(d, r, s))
            right = {dual(mu) for mu in enumerate_signatures(d, s, r)}
            assert left == right


def test_signature_stats():
    assert signature_stats((1, 1, 0, -1)) == (1, 2, (1, 0, -1, -1))
    assert signature_stats((0, 0, 0)) == (0, 0, (0, 0, 0))
    assert signature_stats((2, 0, -2)) == (0, 2, (2, 0, -2))


def test_validate_rejects_increasing():
    with pytest.raises(ValueError):
        validate_signature((0, 1))
    with pytest.raises(ValueError):
        validate_signature(())


def test_partitions_examples():
    assert partitions_max_parts(4, 2) == [(4,), (3, 1), (2, 2)]
    assert partitions_max_parts(0, 3) == [()]
    for t in range(1, 7):
        assert partitions_max_parts(t, 1) == [(t,)]


@given(st.integers(0, 9), st.integers(1, 9))
def test_partitions_match_brute_force(t, d):
    parts = partitions_max_parts(t, d)
    assert set(parts) == brute_partitions(t, d)
    assert len(parts) == len(set(parts))
    assert parts == sorted(parts, reverse=True)


def test_zero_weight_signatures_excludes_trivial():
    assert zero_weight_signatures(3, 1) == [(1, 0, -1)]
    assert len(zero_weight_signatures(3, 2)) == 4
