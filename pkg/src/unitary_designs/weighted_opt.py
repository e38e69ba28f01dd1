"""Weighted t-designs by convex optimization over the probability simplex.

The weighted frame potential w^T K w with K_ij = |tr(U_i^dag U_j)|^{2t} is a
convex quadratic (K is a Gram matrix of the vectors U^{(x)t} (x) conj(U)^{(x)t}),
bounded below by the Haar moment with equality exactly at weighted designs.
We minimize it with pairwise Frank-Wolfe steps, which move mass between two
support points per iteration and drop points exactly when their weight hits
zero. Support reduction then walks along null directions of K restricted to
the support (Caratheodory), which leave the moment map unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .design_verify import frame_potential
from .errors import InputError, InvariantViolation
from .group_designs import _keys, phase_canonicalize
from .moments import haar_moment
from .unitary_sets import UnitarySet, WeightedUnitarySet, gram_abs2

STATIONARITY_TOL = 1e-10
MONOTONE_SLACK = 1e-12


@dataclass
class FitResult:
    weights: np.ndarray
    gap: float
    iterations: int
    converged: bool
    objective_history: list = field(default_factory=list, repr=False)

    def support(self, threshold: float = 0.0) -> np.ndarray:
        return np.flatnonzero(self.weights > threshold)

    def to_weighted(self, pool: UnitarySet, threshold: float = 0.0) -> WeightedUnitarySet:
        """Restrict the pool to points with weight above ``threshold`` and renormalize."""
        idx = self.support(threshold)
        w = self.weights[idx]
        labels = None if pool.labels is None else tuple(pool.labels[i] for i in idx)
        return WeightedUnitarySet(UnitarySet(pool.matrices[idx], labels=labels), w / math.fsum(w))


def design_kernel(mats: np.ndarray, t: int) -> np.ndarray:
    """K_ij = (|tr(U_i^dag U_j)|^2 / d^2)^t, the frame-potential kernel scaled to [0, 1]."""
    d2 = mats.shape[1] ** 2
    return (gram_abs2(UnitarySet(mats)) / d2) ** t


def fit_weights(pool: UnitarySet, t: int, tol: float = 1e-6, max_iter: int = 200_000) -> FitResult:
    """Minimize the weighted frame potential over the simplex on ``pool``.

    Starts from uniform weights. ``converged`` means the gap to the Haar
    moment is within ``tol * moment`` or the iterate is stationary (spread of
    the gradient over the support at most 1e-10). Running out of iterations
    returns the last iterate with ``converged = False``.
    """
    n = len(pool)
    if n == 0:
        raise InputError("pool is empty")
    if t < 1:
        raise InputError("t must be >= 1")
    d = pool.d
    scale = float(d * d) ** t
    target = haar_moment(d, t) / scale
    K = design_kernel(pool.matrices, t)
    w = np.full(n, 1.0 / n)
    Kw = K @ w
    f = float(w @ Kw)
    history = [f * scale]
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        if f - target <= tol * target:
            converged = True
            break
        grad = Kw  # half the gradient; ordering is all that matters
        active = np.flatnonzero(w > 0)
        s = int(np.argmin(grad))
        a = int(active[np.argmax(grad[active])])
        if grad[a] - grad[s] <= STATIONARITY_TOL:
            converged = True
            break
        curv = K[s, s] + K[a, a] - 2 * K[s, a]
        step = w[a]
        if curv > 0:
            step = min(step, (grad[a] - grad[s]) / curv)
        if w[a] - step <= 1e-15:
            step = w[a]  # drop step: a leaves the support
        w[s] += step
        w[a] -= step
        if w[a] <= 0:
            w[a] = 0.0
        Kw += step * (K[:, s] - K[:, a])
        f_new = float(w @ Kw)
        if f_new > f + MONOTONE_SLACK:
            raise InvariantViolation(f"objective increased from {f!r} to {f_new!r}")
        f = f_new
        history.append(f * scale)
    else:
        it = max_iter
    f, w = _polish(K, w, f)
    history.append(f * scale)
    gap = (f - target) * scale
    if gap < -1e-9:
        raise InvariantViolation(f"weighted potential below the Haar moment (gap {gap!r})")
    converged = converged or gap <= tol * haar_moment(d, t)
    return FitResult(w, gap, it, converged, history)


def _polish(K: np.ndarray, w: np.ndarray, f: float, floor: float = 1e-10) -> tuple[float, np.ndarray]:
    # active-set refinement: exact minimizer of w^T K w subject to sum w = 1 on
    # the support, dropping points whose optimal weight is below `floor`;
    # accepted only if it lowers the objective
    idx = np.flatnonzero(w > 0)
    while len(idx):
        Ks = K[np.ix_(idx, idx)]
        sol, *_ = np.linalg.lstsq(Ks, np.ones(len(idx)), rcond=1e-13)
        total = sol.sum()
        if total <= 0:
            return f, w
        sol = sol / total
        small = sol <= floor
        if not small.any():
            break
        idx = idx[~small]
    else:
        return f, w
    cand = np.zeros_like(w)
    cand[idx] = sol / math.fsum(sol)
    fc = float(cand @ K @ cand)
    if fc < f:
        return fc, cand
    return f, w


def merge_phase_duplicates(W: WeightedUnitarySet) -> WeightedUnitarySet:
    """Combine matrices equal up to global phase, summing their weights."""
    canon = phase_canonicalize(W.matrices)
    keep: list[int] = []
    weights: list[float] = []
    seen: dict[bytes, list[int]] = {}
    for i, (A, key) in enumerate(zip(canon, _keys(canon))):
        for j in seen.get(key, ()):
            if np.linalg.norm(canon[keep[j]] - A) <= 1e-8:
                weights[j] += W.weights[i]
                break
        else:
            seen.setdefault(key, []).append(len(keep))
            keep.append(i)
            weights.append(float(W.weights[i]))
    if len(keep) == len(W):
        return W
    w = np.array(weights)
    return WeightedUnitarySet(UnitarySet(W.matrices[keep]), w / math.fsum(w))


def prune_support(W: WeightedUnitarySet, t: int, tol: float = 1e-6,
                  null_rtol: float = 1e-10) -> WeightedUnitarySet:
    """Shrink the support of a weighted t-design without leaving the design set.

    Any real v with K v = 0 satisfies sum_U v(U) U^{(x)t} (x) conj(U)^{(x)t} = 0
    and (through the constant polynomial) sum v = 0, so w + s v remains a
    weighted t-design; s is pushed until a weight reaches zero. Repeats while
    K on the support is singular, leaving at most rank(K) <= dim Hom(t, t)
    points.
    """
    if not isinstance(W, WeightedUnitarySet):
        W = WeightedUnitarySet(W, W.uniform_weights())
    moment = haar_moment(W.d, t)
    gap = frame_potential(W, t) - moment
    if gap > tol * moment:
        raise InputError(f"input is not a weighted {t}-design within tol (relative gap {gap / moment:.3e})")
    W = merge_phase_duplicates(W)
    mats = W.matrices
    w = np.array(W.weights, dtype=float)
    K = design_kernel(mats, t)
    alive = np.arange(len(w))
    while len(alive) > 1:
        Ks = K[np.ix_(alive, alive)]
        evals, evecs = np.linalg.eigh(Ks)
        null = evecs[:, evals <= null_rtol * max(evals[-1], 1.0)]
        if null.shape[1] == 0:
            break
        v = null[:, 0]
        ws = w[alive]
        if not np.any(v < 0):
            v = -v
        neg = v < 0
        ratios = ws[neg] / -v[neg]
        k = int(np.argmin(ratios))
        ws = ws + ratios[k] * v
        drop = np.flatnonzero(neg)[k]
        ws[drop] = 0.0
        ws[ws < 0] = 0.0
        w[alive] = ws
        alive = alive[ws > 0]
        w_alive = w[alive]
        w[alive] = w_alive / math.fsum(w_alive)
    out = WeightedUnitarySet(UnitarySet(mats[alive]), w[alive] / math.fsum(w[alive]))
    gap = frame_potential(out, t) - moment
    if gap > 2 * tol * moment:
        raise InvariantViolation(f"pruning left the design set (relative gap {gap / moment:.3e})")
    return out
