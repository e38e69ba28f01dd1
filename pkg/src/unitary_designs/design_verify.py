"""Decide whether a (weighted) set of unitaries is a t-design.

Three independent criteria:

* frame potential: sum_{U,V} w(U) w(V) |tr(U^dag V)|^{2t} equals the Haar
  moment exactly for designs and exceeds it otherwise;
* zonal sums: sum_M w(M) Z_{mu,U}(M) vanishes for every U and every
  nontrivial mu with |mu| = 0, |mu_+| <= t;
* moment operator (t <= 2): the averaged U^{(x)t} (x) (U^dag)^{(x)t} equals
  the known permutation-operator combination.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import InputError, InvariantViolation
from .moments import haar_moment
from .repdims import weyl_dimension
from .signatures import zero_weight_signatures
from .unitary_sets import AnySet, gram_traces, matrices_and_weights
from .zonal import batch_trace_powers, char_eval, required_power

DEFAULT_TOL = 1e-6
_CHUNK_ENTRIES = 4_000_000


@dataclass(frozen=True)
class VerificationReport:
    t: int
    potential: float
    moment: int
    gap: float
    verdict: bool
    criterion: str
    tolerance: float
    residual: float = 0.0  # criterion-specific statistic (relative gap, max zonal sum, ...)

    @property
    def relative_gap(self) -> float:
        return self.gap / self.moment

    def to_dict(self) -> dict:
        return asdict(self)


def _gram_abs2_blocks(mats: np.ndarray):
    """Yield (row_slice, |tr(U_i^dag U_j)|^2 block) without materializing the full Gram matrix."""
    n = len(mats)
    rows = max(1, _CHUNK_ENTRIES // max(n, 1))
    for start in range(0, n, rows):
        sl = slice(start, min(n, start + rows))
        yield sl, np.abs(gram_traces(mats[sl], mats)) ** 2


def frame_potentials(X: AnySet, ts) -> dict[int, float]:
    """Weighted frame potentials for several t in one pass over the Gram matrix."""
    mats, w = matrices_and_weights(X)
    ts = [int(t) for t in ts]
    if any(t < 0 for t in ts):
        raise InputError("t must be nonnegative")
    d2 = mats.shape[1] ** 2
    acc = {t: 0.0 for t in ts}
    for sl, G in _gram_abs2_blocks(mats):
        idx = np.arange(sl.start, sl.stop)
        G[np.arange(len(idx)), idx] = d2
        G /= d2  # scale to [0, 1] so high powers stay well conditioned
        for t in ts:
            acc[t] += float(w[sl] @ (G**t) @ w)
    return {t: acc[t] * d2**t for t in ts}


def frame_potential(X: AnySet, t: int) -> float:
    return frame_potentials(X, [t])[t]


def _report(X: AnySet, t: int, potential: float, tol: float, criterion: str,
            verdict: Optional[bool] = None, residual: Optional[float] = None) -> VerificationReport:
    moment = haar_moment(X.d, t)
    gap = potential - moment
    if gap < -tol * moment:
        raise InvariantViolation(
            f"frame potential {potential!r} below Haar moment {moment} at t={t}; numerics broken"
        )
    rel = gap / moment
    if verdict is None:
        verdict = abs(rel) <= tol
    return VerificationReport(t, float(potential), moment, float(gap), bool(verdict), criterion,
                              tol, float(rel if residual is None else residual))


def is_design(X: AnySet, t: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Frame-potential test: relative gap to the Haar moment within ``tol``."""
    return _report(X, t, frame_potential(X, t), tol, "frame_potential")


def design_reports(X: AnySet, t_max: int, tol: float = DEFAULT_TOL) -> list[VerificationReport]:
    pots = frame_potentials(X, range(1, t_max + 1))
    return [_report(X, t, pots[t], tol, "frame_potential") for t in range(1, t_max + 1)]


def strength(X: AnySet, t_max: int, tol: float = DEFAULT_TOL) -> int:
    """Largest t <= t_max for which X is a t-design (0 if not a 1-design)."""
    if t_max < 1:
        raise InputError("t_max must be >= 1")
    verdicts = [r.verdict for r in design_reports(X, t_max, tol)]
    s = 0
    while s < t_max and verdicts[s]:
        s += 1
    if any(verdicts[s:]):
        raise InvariantViolation(f"non-monotone design verdicts {verdicts}; check the tolerance")
    return s


# ----------------------------------------------------------------------------
# zonal criterion


def zonal_sums(X: AnySet, t: int) -> dict[tuple, np.ndarray]:
    """For each nontrivial zero-weight mu with |mu_+| <= t, the vector over U in X
    of sum_M w(M) Z_{mu,U}(M)."""
    mats, w = matrices_and_weights(X)
    d = mats.shape[1]
    sigs = zero_weight_signatures(d, t)
    if not sigs:
        return {}
    K = max(1, max(required_power(mu) for mu in sigs))
    dims = {mu: weyl_dimension(mu) for mu in sigs}
    out = {mu: np.empty(len(mats), dtype=complex) for mu in sigs}
    for i, U in enumerate(mats):
        # trace powers shared by every mu for this U
        tp = batch_trace_powers(U, mats, K)
        for mu in sigs:
            out[mu][i] = dims[mu] * (w @ char_eval(mu, tp))
    return out


def zonal_design_check(X: AnySet, t: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """A set is a t-design iff every weighted zonal sum vanishes (within tol * d_mu^2)."""
    if t < 1:
        raise InputError("t must be >= 1")
    worst = 0.0
    verdict = True
    for mu, sums in zonal_sums(X, t).items():
        scaled = float(np.max(np.abs(sums))) / weyl_dimension(mu) ** 2
        worst = max(worst, scaled)
        verdict &= scaled <= tol
    potential = frame_potential(X, t)
    return _report(X, t, potential, tol, "zonal_sums", verdict=verdict, residual=worst)


def reproducing_inner_product(X: AnySet, mu, U, M) -> complex:
    """Discrete inner product <Z_{mu,U}, Z_{mu,M}>_X = sum_V w(V) conj(Z_{mu,U}(V)) Z_{mu,M}(V).

    On a design exact for Hom(|mu_+|*2, |mu_+|*2) this equals Z_{mu,M}(U).
    """
    mats, w = matrices_and_weights(X)
    K = max(1, required_power(mu))
    dmu = weyl_dimension(mu)
    zu = dmu * char_eval(mu, batch_trace_powers(np.asarray(U, dtype=complex), mats, K))
    zm = dmu * char_eval(mu, batch_trace_powers(np.asarray(M, dtype=complex), mats, K))
    return complex(w @ (np.conj(zu) * zm))


# ----------------------------------------------------------------------------
# moment-operator criterion

OPERATOR_MAX_SIDE = 2500


def permutation_operator(perm, d: int) -> np.ndarray:
    """Matrix of P_perm on (C^d)^{(x)n}: tensor factor k is sent to slot perm[k].

    ``perm`` is 0-based. For the involutions and inverse pairs that appear in
    the moment formulas the direction convention does not matter.
    """
    n = len(perm)
    dim = d**n
    eye = np.eye(dim).reshape((d,) * n + (dim,))
    # P (x_0 (x) ... (x) x_{n-1}) has x_k in slot perm[k]
    axes = [0] * n
    for k, p in enumerate(perm):
        axes[p] = k
    return eye.transpose(axes + [n]).reshape(dim, dim)


def _cycles_to_perm(cycles, n: int):
    perm = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a - 1] = b - 1
    return perm


def haar_moment_operator(d: int, t: int) -> np.ndarray:
    """int U^{(x)t} (x) (U^dag)^{(x)t} dU for t in {1, 2}."""
    if t == 1:
        return permutation_operator(_cycles_to_perm([(1, 2)], 2), d) / d
    if t == 2:
        if d < 2:
            raise InputError("t = 2 operator formula needs d >= 2")
        P = lambda cyc: permutation_operator(_cycles_to_perm(cyc, 4), d)
        return ((P([(1, 3), (2, 4)]) + P([(1, 4), (2, 3)])) / (d * d - 1)
                - (P([(1, 4, 2, 3)]) + P([(1, 3, 2, 4)])) / (d * (d * d - 1)))
    raise InputError("moment operator only available for t in {1, 2}")


def moment_operator(X: AnySet, t: int) -> np.ndarray:
    mats, w = matrices_and_weights(X)
    d = mats.shape[1]
    side = d ** (2 * t)
    if side > OPERATOR_MAX_SIDE:
        raise InputError(f"moment operator of side {side} too large (limit {OPERATOR_MAX_SIDE})")
    acc = np.zeros((side, side), dtype=complex)
    for U, wu in zip(mats, w):
        Ud = U.conj().T
        factors = [U] * t + [Ud] * t
        acc += wu * _kron_all(factors)
    return acc


def _kron_all(factors):
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def moment_operator_residual(X: AnySet, t: int) -> float:
    """Frobenius distance between the averaged tensor power and its Haar value."""
    if t not in (1, 2):
        raise InputError("moment operator only available for t in {1, 2}")
    return float(np.linalg.norm(moment_operator(X, t) - haar_moment_operator(X.d, t)))


def moment_operator_check(X: AnySet, t: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    residual = moment_operator_residual(X, t)
    # residual^2 = potential - moment, so this threshold matches the potential test
    verdict = residual**2 <= tol * haar_moment(X.d, t)
    return _report(X, t, frame_potential(X, t), tol, "moment_operator", verdict=verdict,
                   residual=residual)


CRITERIA = {
    "potential": is_design,
    "zonal": zonal_design_check,
    "operator": moment_operator_check,
}
