"""Irreducible characters and zonal polynomials of U(d) evaluated numerically.

Characters are computed from the trace powers p_k = tr(L^k) of L = U^dag M
and det(L), never from eigenvalues: Newton's identities turn power sums into
complete (h_k) or elementary (e_k) symmetric functions and a Jacobi-Trudi
determinant gives the Schur polynomial. A signature with negative entries is
shifted to a partition mu' = mu - mu_d and the character picks up
det(L)^{mu_d}.

All evaluation routines broadcast over leading axes so a whole batch of
pairs (U, M) can be processed at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InputError, UnitarityError
from .repdims import weyl_dimension
from .signatures import Signature, validate_signature

UNITARITY_TOL = 1e-8


@dataclass(frozen=True)
class TracePowerData:
    """Power sums of the spectrum of L = U^dag M.

    ``p[k] = tr(L^k)`` for ``k = 0..K`` (so ``p[0] = d``); ``det = det(L)``.
    Arrays may carry leading batch axes.
    """

    d: int
    p: np.ndarray
    det: np.ndarray

    @property
    def K(self) -> int:
        return self.p.shape[-1] - 1


def _check_unitary(A: np.ndarray, tol: float, index=0):
    dev = np.max(np.abs(A.conj().T @ A - np.eye(A.shape[0])))
    if dev > tol:
        raise UnitarityError(index, float(dev), tol)


def _power_traces(L: np.ndarray, K: int) -> np.ndarray:
    """tr(L^k) for k = 0..K over a batch of square matrices (..., d, d)."""
    d = L.shape[-1]
    out = np.empty(L.shape[:-2] + (K + 1,), dtype=complex)
    out[..., 0] = d
    P = L
    for k in range(1, K + 1):
        if k > 1:
            P = P @ L
        out[..., k] = np.trace(P, axis1=-2, axis2=-1)
    return out


def trace_powers(U, M, K: int, tol: float = UNITARITY_TOL) -> TracePowerData:
    """Trace powers and determinant of ``U^dag M``."""
    U = np.asarray(U, dtype=complex)
    M = np.asarray(M, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1] or U.shape != M.shape:
        raise InputError(f"dimension mismatch: {U.shape} vs {M.shape}")
    if K < 1:
        raise InputError("K must be positive")
    _check_unitary(U, tol, 0)
    _check_unitary(M, tol, 1)
    L = U.conj().T @ M
    return TracePowerData(U.shape[0], _power_traces(L, K), np.asarray(np.linalg.det(L)))


def batch_trace_powers(U: np.ndarray, Ms: np.ndarray, K: int) -> TracePowerData:
    """Trace powers of ``U^dag M`` for every ``M`` in the stack ``Ms`` (n, d, d).

    No unitarity check: callers pass validated sets.
    """
    L = np.einsum("ji,njk->nik", U.conj(), Ms)
    return TracePowerData(U.shape[-1], _power_traces(L, K), np.linalg.det(L))


def _shifted_partition(mu: Signature) -> tuple[int, tuple[int, ...]]:
    shift = mu[-1]
    lam = tuple(x - shift for x in mu if x - shift > 0)
    return shift, lam


def _conjugate(lam: tuple[int, ...]) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def _jacobi_trudi_plan(lam: tuple[int, ...], d: int) -> tuple[str, tuple[int, ...], int]:
    """Choose the smaller of the h- and e-form determinants.

    Returns (form, rows, highest symmetric-function index needed). The e-form
    is preferred on ties: |e_k| <= C(d, k) keeps its entries small.
    """
    if not lam:
        return "h", (), 0
    conj = _conjugate(lam)
    if len(conj) <= len(lam):
        return "e", conj, min(d, conj[0] + len(conj) - 1)
    return "h", lam, lam[0] + len(lam) - 1


def required_power(mu, d: Optional[int] = None) -> int:
    """Largest trace power k needed to evaluate the character of ``mu``."""
    mu = validate_signature(mu)
    _, lam = _shifted_partition(mu)
    return _jacobi_trudi_plan(lam, len(mu) if d is None else d)[2]


def _complete_from_power(p: np.ndarray, n: int) -> np.ndarray:
    # Newton: k h_k = sum_{i=1}^k p_i h_{k-i}
    h = np.zeros(p.shape[:-1] + (n + 1,), dtype=complex)
    h[..., 0] = 1.0
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, k + 1):
            acc = acc + p[..., i] * h[..., k - i]
        h[..., k] = acc / k
    return h


def _elementary_from_power(p: np.ndarray, n: int, d: int) -> np.ndarray:
    # Newton: k e_k = sum_{i=1}^k (-1)^{i-1} p_i e_{k-i};  e_k = 0 for k > d
    e = np.zeros(p.shape[:-1] + (n + 1,), dtype=complex)
    e[..., 0] = 1.0
    for k in range(1, min(n, d) + 1):
        acc = 0
        for i in range(1, k + 1):
            term = p[..., i] * e[..., k - i]
            acc = acc + term if i % 2 else acc - term
        e[..., k] = acc / k
    return e


def _jacobi_trudi(seq: np.ndarray, rows: tuple[int, ...]) -> np.ndarray:
    n = len(rows)
    if n == 0:
        return np.ones(seq.shape[:-1], dtype=complex)
    mat = np.zeros(seq.shape[:-1] + (n, n), dtype=complex)
    top = seq.shape[-1] - 1
    for i, part in enumerate(rows):
        for j in range(n):
            k = part - i + j
            if 0 <= k <= top:
                mat[..., i, j] = seq[..., k]
    if n == 1:
        return mat[..., 0, 0]
    return np.linalg.det(mat)


def schur_from_power_sums(lam, p: np.ndarray, d: int) -> np.ndarray:
    """Schur polynomial s_lam of d variables given their power sums p[0..K]."""
    lam = tuple(x for x in lam if x > 0)
    if len(lam) > d:
        return np.zeros(p.shape[:-1], dtype=complex)
    form, rows, need = _jacobi_trudi_plan(lam, d)
    if need > p.shape[-1] - 1:
        raise InputError(f"need trace powers up to {need}, have {p.shape[-1] - 1}")
    if form == "h":
        seq = _complete_from_power(p, need)
    else:
        seq = _elementary_from_power(p, need, d)
    return _jacobi_trudi(seq, rows)


def char_eval(mu, tp: TracePowerData) -> np.ndarray:
    """Character chi_mu(L) from trace-power data (broadcasts over batch axes)."""
    mu = validate_signature(mu)
    if len(mu) != tp.d:
        raise InputError(f"signature {mu} has length {len(mu)}, expected {tp.d}")
    shift, lam = _shifted_partition(mu)
    value = schur_from_power_sums(lam, tp.p, tp.d)
    if shift:
        # |det| = 1 for unitary L, so negative powers are harmless
        value = value * np.asarray(tp.det, dtype=complex) ** shift
    return value[()] if np.ndim(value) == 0 else value


def zonal_eval(mu, U, M, K: Optional[int] = None, tol: float = UNITARITY_TOL) -> complex:
    """Z_{mu,U}(M) = d_mu chi_mu(U^dag M)."""
    mu = validate_signature(mu)
    if K is None:
        K = max(1, required_power(mu))
    tp = trace_powers(U, M, K, tol)
    return complex(weyl_dimension(mu) * char_eval(mu, tp))


# ----------------------------------------------------------------------------
# Closed forms for the first few zonal polynomials, written in tr(L), tr(L^2).

TABLE1_ROWS = (
    "0",
    "1",
    "1,-1",
    "2,-1",
    "1,1,-1",
    "2,-2",
    "2,-1,-1",
    "1,1,-2",
    "1,1,-1,-1",
)


def table1_signature(row: str, d: int) -> Signature:
    """Pad a row pattern such as ``"2,-1,-1"`` with zeros to a length-``d`` signature."""
    parts = [int(x) for x in row.split(",")]
    pos = [x for x in parts if x > 0]
    neg = [x for x in parts if x < 0]
    if len(pos) + len(neg) > d:
        raise InputError(f"row ({row}) needs d >= {len(pos) + len(neg)}, got d = {d}")
    return tuple(pos + [0] * (d - len(pos) - len(neg)) + neg)


def _table1_row_of(mu: Signature) -> str:
    d = len(mu)
    for row in TABLE1_ROWS:
        try:
            if table1_signature(row, d) == mu:
                return row
        except InputError:
            continue
    raise InputError(f"no tabulated closed form for signature {mu}")


def zonal_table1_oracle(mu, U, M) -> complex:
    """Zonal polynomial from its tabulated closed form in tr(L) and tr(L^2)."""
    U = np.asarray(U, dtype=complex)
    M = np.asarray(M, dtype=complex)
    mu = validate_signature(mu)
    d = U.shape[0]
    if len(mu) != d:
        raise InputError(f"signature {mu} does not match dimension {d}")
    row = _table1_row_of(mu)
    L = U.conj().T @ M
    a = np.trace(L)
    b = np.trace(L @ L)
    sym = a * a + b  # 2 h_2
    alt = a * a - b  # 2 e_2
    aa = abs(a) ** 2
    if row == "0":
        return 1.0 + 0j
    if row == "1":
        return d * a
    if row == "1,-1":
        return (d * d - 1) * (aa - 1)
    if row == "2,-1":
        return d * (d - 1) * (d + 2) / 2 * (sym / 2 * np.conj(a) - a)
    if row == "1,1,-1":
        return d * (d + 1) * (d - 2) / 2 * (alt / 2 * np.conj(a) - a)
    if row == "2,-2":
        return d * d * (d - 1) * (d + 3) / 4 * (abs(sym) ** 2 / 4 - aa)
    if row == "2,-1,-1":
        return (d * d - 1) * (d * d - 4) / 4 * (sym * np.conj(alt) / 4 - aa + 1)
    if row == "1,1,-2":
        return (d * d - 1) * (d * d - 4) / 4 * (alt * np.conj(sym) / 4 - aa + 1)
    # "1,1,-1,-1"
    return d * d * (d + 1) * (d - 3) / 4 * (abs(alt) ** 2 / 4 - aa)
