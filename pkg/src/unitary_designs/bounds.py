"""Absolute and relative size bounds for unitary designs and codes.

Relative bounds come from an expansion F = sum_mu c_mu Z_mu over zero-weight
signatures: if F(U^dag M) <= 0 on distinct pairs of a code with all c_mu >= 0,
then |X| <= F(I) / c_0, and F(I) = sum_mu c_mu d_mu^2. Values are exact
Fractions whenever the inputs are rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Optional, Union

import numpy as np

from .errors import InputError, PreconditionError
from .repdims import dim_hom, weyl_dimension
from .signatures import enumerate_signatures, validate_signature, weight
from .unitary_sets import AnySet
from .zonal import batch_trace_powers, char_eval, required_power, table1_signature, trace_powers

Number = Union[int, Fraction, float]


@dataclass(frozen=True)
class BoundReport:
    value: Number
    kind: str  # "upper" (codes) or "lower" (designs)
    conditions: dict = field(default_factory=dict)
    equality: str = ""

    def to_dict(self) -> dict:
        v = self.value
        return {
            "value": float(v),
            "exact": str(v) if isinstance(v, Rational) else None,
            "kind": self.kind,
            "conditions": self.conditions,
            "equality": self.equality,
        }


def _num(x) -> Number:
    if isinstance(x, bool):
        raise InputError("expected a number")
    if isinstance(x, (int, Fraction)):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    return float(x)


# ----------------------------------------------------------------------------
# absolute bounds


def absolute_design_bound(d: int, t: int) -> int:
    """Every t-design in U(d) has at least dim Hom(ceil(t/2), floor(t/2)) elements."""
    if t < 1:
        raise InputError("t must be >= 1")
    return dim_hom(d, (t + 1) // 2, t // 2)


def absolute_code_bound(d: int, s: int, has_orthogonal_pair: bool = False) -> int:
    """An s-distance set has at most dim Hom(s, s) elements, or dim Hom(s, s-1)
    if some pair is orthogonal."""
    if s < 1:
        raise InputError("s must be >= 1")
    return dim_hom(d, s, s - 1) if has_orthogonal_pair else dim_hom(d, s, s)


# ----------------------------------------------------------------------------
# relative bounds with one or two distances


def _one_distance(d: int, alpha) -> Number:
    alpha = _num(alpha)
    if not alpha < 1:
        raise PreconditionError(f"need alpha < 1, got {alpha}")
    if alpha < 0:
        raise PreconditionError(f"need alpha >= 0, got {alpha}")
    return (d * d - alpha) / (1 - alpha) if not isinstance(alpha, int) else Fraction(d * d - alpha, 1 - alpha)


def _two_distance(d: int, alpha, beta, ordered: bool) -> Number:
    alpha, beta = _num(alpha), _num(beta)
    if ordered and not alpha < beta:
        raise PreconditionError(f"need alpha < beta, got {alpha} >= {beta}")
    if not alpha + beta <= 4:
        raise PreconditionError(f"need alpha + beta <= 4, got {alpha + beta}")
    if not alpha + beta < alpha * beta + 2:
        raise PreconditionError(
            f"need alpha + beta < alpha*beta + 2, got {alpha + beta} >= {alpha * beta + 2}"
        )
    num = (d * d - alpha) * (d * d - beta)
    den = alpha * beta - alpha - beta + 2
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    return num / den


def rel_code_bound_1(d: int, alpha) -> BoundReport:
    """1-distance set with |tr(U^dag M)|^2 = alpha < 1: |X| <= (d^2 - alpha)/(1 - alpha)."""
    return BoundReport(_one_distance(d, alpha), "upper", {"alpha": str(alpha)},
                       "equality iff X is a 1-design")


def rel_code_bound_2(d: int, alpha, beta) -> BoundReport:
    """2-distance set with values {alpha, beta}: |X| <= (d^2-a)(d^2-b)/(ab - a - b + 2)."""
    return BoundReport(_two_distance(d, alpha, beta, ordered=False), "upper",
                       {"alpha": str(alpha), "beta": str(beta)}, "equality iff X is a 2-design")


def rel_design_bound_1(d: int, alpha) -> BoundReport:
    """1-design with |tr(U^dag M)|^2 >= alpha on distinct pairs: |X| >= (d^2 - alpha)/(1 - alpha)."""
    return BoundReport(_one_distance(d, alpha), "lower", {"alpha": str(alpha)},
                       "equality iff |tr(U^dag M)|^2 = alpha for all distinct pairs")


def rel_design_bound_2(d: int, alpha, beta) -> BoundReport:
    """2-design avoiding (alpha, beta): |X| >= (d^2-a)(d^2-b)/(ab - a - b + 2)."""
    return BoundReport(_two_distance(d, alpha, beta, ordered=True), "lower",
                       {"alpha": str(alpha), "beta": str(beta)},
                       "equality iff |tr(U^dag M)|^2 takes only the values alpha, beta")


# ----------------------------------------------------------------------------
# general relative bound

ZonalExpansion = Mapping[tuple, Number]


def _zero_signature(d: int) -> tuple:
    return (0,) * d


def validate_expansion(expansion: ZonalExpansion, d: int) -> dict:
    out = {}
    for mu, c in expansion.items():
        mu = validate_signature(mu)
        if len(mu) != d:
            raise InputError(f"signature {mu} does not have length {d}")
        if weight(mu) != 0:
            raise InputError(f"signature {mu} is not of weight zero")
        out[mu] = _num(c)
    return out


def expansion_at_identity(expansion: ZonalExpansion, d: int) -> Number:
    """F(I) = sum_mu c_mu d_mu^2, since Z_mu(I) = d_mu^2."""
    exp = validate_expansion(expansion, d)
    return sum(c * weyl_dimension(mu) ** 2 for mu, c in exp.items())


def general_relative_bound(expansion: ZonalExpansion, d: int) -> Number:
    """|X| <= F(I)/c_0 for F = sum c_mu Z_mu, c_mu >= 0, c_0 > 0.

    Only the sign pattern is validated. That F(U^dag M) <= 0 on distinct pairs
    is the caller's responsibility; see :func:`expansion_violations`.
    """
    exp = validate_expansion(expansion, d)
    c0 = exp.get(_zero_signature(d), 0)
    if not c0 > 0:
        raise PreconditionError("constant coefficient c_0 must be positive")
    neg = [mu for mu, c in exp.items() if c < 0]
    if neg:
        raise PreconditionError(f"negative coefficients for {neg}")
    f_id = expansion_at_identity(exp, d)
    if isinstance(f_id, (int, Fraction)) and isinstance(c0, (int, Fraction)):
        return Fraction(f_id) / Fraction(c0)
    return f_id / c0


def evaluate_expansion(expansion: ZonalExpansion, U, M) -> complex:
    """F(U^dag M) for a zonal expansion."""
    U = np.asarray(U, dtype=complex)
    d = U.shape[0]
    exp = validate_expansion(expansion, d)
    K = max([1] + [required_power(mu) for mu in exp])
    tp = trace_powers(U, M, K)
    return complex(sum(float(c) * weyl_dimension(mu) * char_eval(mu, tp) for mu, c in exp.items()))


def expansion_violations(expansion: ZonalExpansion, X: AnySet, tol: float = 1e-9) -> list[tuple[int, int, float]]:
    """Distinct pairs (i, j) of X where F(U_i^dag U_j) is not real and <= 0."""
    mats = X.matrices
    d = mats.shape[1]
    exp = validate_expansion(expansion, d)
    K = max([1] + [required_power(mu) for mu in exp])
    bad = []
    for i, U in enumerate(mats):
        tp = batch_trace_powers(U, mats, K)
        vals = sum(float(c) * weyl_dimension(mu) * char_eval(mu, tp) for mu, c in exp.items())
        for j, v in enumerate(np.atleast_1d(vals)):
            if j != i and (v.real > tol or abs(v.imag) > tol):
                bad.append((i, j, float(v.real)))
    return bad


def one_distance_expansion(d: int, alpha) -> dict:
    """F = Z_{(1,0..0,-1)}/(d^2-1) + (1 - alpha), the annihilator of alpha."""
    alpha = _num(alpha)
    c = Fraction(1, d * d - 1)
    return {_zero_signature(d): 1 - alpha, table1_signature("1,-1", d): c}


def two_distance_expansion(d: int, alpha, beta) -> dict:
    """Zonal coefficients of (|tr L|^2 - alpha)(|tr L|^2 - beta), valid for d >= 3.

    The four |mu_+| = 2 terms enter as characters (c_mu = 1/d_mu), the
    adjoint term with (4 - alpha - beta)/(d^2 - 1), and the constant is
    alpha*beta - alpha - beta + 2.
    """
    if d < 3:
        raise PreconditionError("the two-distance zonal expansion needs d >= 3")
    alpha, beta = _num(alpha), _num(beta)
    out = {_zero_signature(d): alpha * beta - alpha - beta + 2,
           table1_signature("1,-1", d): (4 - alpha - beta) * Fraction(1, d * d - 1)}
    for row in ("2,-2", "2,-1,-1", "1,1,-2", "1,1,-1,-1"):
        try:
            mu = table1_signature(row, d)
        except InputError:
            continue  # signature does not fit; its dimension formula vanishes here
        out[mu] = Fraction(1, weyl_dimension(mu))
    return out


# ----------------------------------------------------------------------------
# tightness diagnostics


def annihilator_Ft(d: int, t: int, U, M) -> complex:
    """F_t(U^dag M) = sum of Z_mu over all mu with |mu| = r - s, |mu_+| <= r.

    Vanishes on distinct pairs of a tight t-design.
    """
    U = np.asarray(U, dtype=complex)
    M = np.asarray(M, dtype=complex)
    if U.shape != (d, d):
        raise InputError(f"expected {d}x{d} matrices")
    if t < 1:
        raise InputError("t must be >= 1")
    r, s = (t + 1) // 2, t // 2
    sigs = enumerate_signatures(d, r, s)
    K = max([1] + [required_power(mu) for mu in sigs])
    tp = trace_powers(U, M, K)
    return complex(sum(weyl_dimension(mu) * char_eval(mu, tp) for mu in sigs))


def _tight3_lhs_rhs(a: complex, b: complex, d: int) -> tuple[complex, complex]:
    lhs = 0.5 * ((d * d - 2) * a * a + d * b) * np.conj(a)
    return lhs, (d * d - 3) * a


def tight3_residual(U, M, d: Optional[int] = None) -> float:
    """|1/2 [(d^2-2) tr(L)^2 + d tr(L^2)] conj(tr L) - (d^2-3) tr(L)| at L = U^dag M."""
    U = np.asarray(U, dtype=complex)
    d = U.shape[0] if d is None else d
    tp = trace_powers(U, M, 2)
    lhs, rhs = _tight3_lhs_rhs(complex(tp.p[1]), complex(tp.p[2]), d)
    return float(abs(lhs - rhs))


def tight3_residual_direct(U, M) -> float:
    """Same quantity evaluated from explicit traces (independent of trace_powers)."""
    L = np.asarray(U).conj().T @ np.asarray(M)
    lhs, rhs = _tight3_lhs_rhs(np.trace(L), np.trace(L @ L), L.shape[0])
    return float(abs(lhs - rhs))
