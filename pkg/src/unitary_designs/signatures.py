"""Signatures (highest weights of U(d) irreps) and integer partitions.

A signature is a nonincreasing tuple of integers of length ``d``. Partitions
are nonincreasing tuples of positive integers. Both are plain tuples so they
can be used as dictionary keys.
"""

from __future__ import annotations

from typing import Iterator

Signature = tuple[int, ...]
Partition = tuple[int, ...]


def validate_signature(mu) -> Signature:
    mu = tuple(int(x) for x in mu)
    if not mu:
        raise ValueError("signature must have length >= 1")
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise ValueError(f"signature {mu} is not nonincreasing")
    return mu


def weight(mu: Signature) -> int:
    return sum(mu)


def positive_weight(mu: Signature) -> int:
    """Sum of the positive entries, i.e. the size of the positive part."""
    return sum(x for x in mu if x > 0)


def dual(mu: Signature) -> Signature:
    """The contragredient signature (-mu_d, ..., -mu_1)."""
    return tuple(-x for x in reversed(mu))


def signature_stats(mu) -> tuple[int, int, Signature]:
    """Return ``(weight, positive_weight, dual)`` for a signature."""
    mu = validate_signature(mu)
    return weight(mu), positive_weight(mu), dual(mu)


def _nonincreasing(length: int, total: int, hi: int, lo: int) -> Iterator[tuple[int, ...]]:
    # sequences of the given length, entries in [lo, hi], nonincreasing, with given sum;
    # generated in lexicographically descending order
    if length == 0:
        if total == 0:
            yield ()
        return
    if not (lo * length <= total <= hi * length):
        return
    for first in range(hi, lo - 1, -1):
        rest = total - first
        for tail in _nonincreasing(length - 1, rest, first, lo):
            yield (first,) + tail


def enumerate_signatures(d: int, r: int, s: int) -> list[Signature]:
    """Signatures of the irreps occurring in ``V^{(x)r} (x) (V*)^{(x)s}`` for ``V = C^d``.

    These are the length-``d`` nonincreasing integer sequences ``mu`` with
    ``|mu| = r - s`` and ``|mu_+| <= r``. Output is in lexicographically
    descending order.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if r < 0 or s < 0:
        raise ValueError("r and s must be nonnegative")
    # |mu_+| <= r bounds every entry by r from above and by -s from below
    return [
        mu
        for mu in _nonincreasing(d, r - s, r, -s)
        if positive_weight(mu) <= r
    ]


def partitions_max_parts(t: int, d: int) -> list[Partition]:
    """All partitions of ``t`` into at most ``d`` parts, lexicographically descending."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if d < 1:
        raise ValueError("d must be >= 1")
    out: list[Partition] = []

    def rec(remaining: int, max_part: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        if len(prefix) == d:
            return
        for part in range(min(remaining, max_part), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(t, t, ())
    return out


def zero_weight_signatures(d: int, t: int) -> list[Signature]:
    """Nontrivial signatures with ``|mu| = 0`` and ``1 <= |mu_+| <= t``.

    These index the zonal polynomials that a ``t``-design must annihilate.
    """
    return [mu for mu in enumerate_signatures(d, t, t) if any(mu)]
