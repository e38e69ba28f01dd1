"""Haar moments  int |tr U|^{2t} dU  as exact integers.

The moment equals the number of permutations of t letters whose longest
increasing subsequence has length at most d. Via RSK this is the sum of
f_lambda^2 over partitions lambda of t with at most d rows, where f_lambda
counts standard Young tableaux (hook length formula).
"""

from __future__ import annotations

from bisect import bisect_left
from functools import lru_cache
from itertools import permutations
from math import factorial

from .errors import InvariantViolation
from .signatures import partitions_max_parts

BRUTE_FORCE_MAX_T = 8


def hook_length_count(shape) -> int:
    """Number of standard Young tableaux of the given partition shape."""
    shape = tuple(shape)
    n = sum(shape)
    conj = [sum(1 for row in shape if row > j) for j in range(shape[0])] if shape else []
    hooks = 1
    for i, row in enumerate(shape):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    q, rem = divmod(factorial(n), hooks)
    if rem:
        raise InvariantViolation(f"hook length formula not integral for {shape}")
    return q


def longest_increasing_subsequence(seq) -> int:
    tails: list = []
    for x in seq:
        k = bisect_left(tails, x)
        if k == len(tails):
            tails.append(x)
        else:
            tails[k] = x
    return len(tails)


@lru_cache(maxsize=None)
def _lis_histogram(t: int) -> tuple[int, ...]:
    # hist[k] = number of permutations of t letters with LIS exactly k
    hist = [0] * (t + 1)
    for perm in permutations(range(t)):
        hist[longest_increasing_subsequence(perm)] += 1
    return tuple(hist)


def haar_moment_brute_force(d: int, t: int) -> int:
    """Count permutations of ``t`` letters with no increasing run longer than ``d``."""
    if t > BRUTE_FORCE_MAX_T:
        raise ValueError(f"brute force limited to t <= {BRUTE_FORCE_MAX_T}")
    if t == 0:
        return 1
    return sum(_lis_histogram(t)[: d + 1])


def haar_moment_hook(d: int, t: int) -> int:
    return sum(hook_length_count(lam) ** 2 for lam in partitions_max_parts(t, d))


def haar_moment(d: int, t: int) -> int:
    """Exact value of int_{U(d)} |tr U|^{2t} dU.

    Uses the tableau sum; for ``t <= 8`` the permutation scan runs as well
    and the two must agree.
    """
    if d < 1 or t < 0:
        raise ValueError("need d >= 1 and t >= 0")
    value = haar_moment_hook(d, t)
    if t <= BRUTE_FORCE_MAX_T:
        check = haar_moment_brute_force(d, t)
        if check != value:
            raise InvariantViolation(f"moment mismatch at d={d}, t={t}: {value} vs {check}")
    return value
