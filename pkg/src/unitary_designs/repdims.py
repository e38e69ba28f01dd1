"""Exact dimensions: the Weyl dimension formula and dim Hom(d, r, s).

Everything here is integer arithmetic on Python ints, so results are exact
at any size.
"""

from __future__ import annotations

from math import comb
from typing import Optional

from .errors import InvariantViolation
from .signatures import enumerate_signatures, validate_signature


def weyl_dimension(mu) -> int:
    """Dimension of the U(d) irrep with highest weight ``mu``.

    Evaluates prod_{i<j} (mu_i - mu_j + j - i) / (j - i) as one numerator and
    one denominator product followed by a single exact division.
    """
    mu = validate_signature(mu)
    d = len(mu)
    num = 1
    den = 1
    for i in range(d):
        for j in range(i + 1, d):
            num *= mu[i] - mu[j] + j - i
            den *= j - i
    q, rem = divmod(num, den)
    if rem != 0 or q <= 0:
        raise InvariantViolation(f"Weyl dimension of {mu} is not a positive integer ({num}/{den})")
    return q


def dim_hom(d: int, r: int, s: int) -> int:
    """Dimension of Hom(r, s) on U(d): sum of d_mu^2 over the admissible signatures."""
    return sum(weyl_dimension(mu) ** 2 for mu in enumerate_signatures(d, r, s))


def dim_hom_closed(d: int, r: int, s: int) -> Optional[int]:
    """Closed-form value of dim Hom(d, r, s) when one is known, else ``None``.

    Covers the tabulated polynomials for r, s <= 3 (with their validity
    ranges in d), the U(2) binomial C(r+s+3, 3), and the pure-degree case
    C(d^2+r-1, r).
    """
    if d < 1 or r < 0 or s < 0:
        raise ValueError("need d >= 1 and r, s >= 0")
    if r < s:
        r, s = s, r
    d2 = d * d
    if (r, s) == (1, 1):
        return d2 * d2 - 2 * d2 + 2
    if (r, s) == (2, 1) and d >= 2:
        return _exact(d2 * (d2 * d2 - 3 * d2 + 6), 2)
    if (r, s) == (2, 2) and d >= 3:
        return _exact(d2**4 - 6 * d2**3 + 25 * d2**2 - 28 * d2 + 16, 4)
    if (r, s) == (3, 2):
        if d == 3:
            return 2835
        if d >= 4:
            return _exact(d2 * (d2**4 - 8 * d2**3 + 47 * d2**2 - 88 * d2 + 84), 12)
    if (r, s) == (3, 3):
        if d == 3:
            return 7540
        if d == 4:
            return 265879
        if d >= 5:
            return _exact(
                d2**6 - 12 * d2**5 + 103 * d2**4 - 378 * d2**3 + 778 * d2**2 - 600 * d2 + 252,
                36,
            )
    if d == 2:
        return comb(r + s + 3, 3)
    if s == 0:
        return comb(d2 + r - 1, r)
    return None


def _exact(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise InvariantViolation(f"closed form {num}/{den} is not an integer")
    return q


def dim_hom_upper(d: int, r: int, s: int) -> int:
    """The embedding bound C(d^2+r-1, r) * C(d^2+s-1, s) >= dim Hom(d, r, s)."""
    return comb(d * d + r - 1, r) * comb(d * d + s - 1, s)
