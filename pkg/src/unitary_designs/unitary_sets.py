"""Finite sets of unitary matrices: validation, uset-v1 files, Gram data, sampling."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import FormatError, InputError, UnitarityError

log = logging.getLogger(__name__)

UNITARITY_TOL = 1e-8
WEIGHT_SUM_TOL = 1e-12
PHASE_DUPLICATE_TOL = 1e-8
FORMAT = "uset-v1"


def unitarity_deviation(A: np.ndarray) -> float:
    return float(np.max(np.abs(A.conj().T @ A - np.eye(A.shape[0]))))


@dataclass(frozen=True)
class UnitarySet:
    """An ordered list of d x d unitaries, stored as one (n, d, d) complex array."""

    matrices: np.ndarray
    labels: Optional[tuple[str, ...]] = None
    unitarity_tol: float = field(default=UNITARITY_TOL, compare=False)

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=complex)
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise InputError(f"expected a stack of square matrices, got shape {mats.shape}")
        for i, A in enumerate(mats):
            dev = unitarity_deviation(A)
            if dev > self.unitarity_tol:
                raise UnitarityError(i, dev, self.unitarity_tol)
        if self.labels is not None and len(self.labels) != len(mats):
            raise InputError("labels and matrices differ in length")
        mats.setflags(write=False)
        object.__setattr__(self, "matrices", mats)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_list(cls, matrices: Sequence, d: Optional[int] = None, **kw) -> "UnitarySet":
        if len(matrices) == 0:
            if d is None:
                raise InputError("empty set needs an explicit dimension")
            return cls(np.zeros((0, d, d), dtype=complex), **kw)
        return cls(np.stack([np.asarray(m, dtype=complex) for m in matrices]), **kw)

    @property
    def d(self) -> int:
        return self.matrices.shape[1]

    def __len__(self):
        return self.matrices.shape[0]

    def __iter__(self):
        return iter(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]

    def uniform_weights(self) -> np.ndarray:
        n = len(self)
        return np.full(n, 1.0 / n)

    def left_multiply(self, V) -> "UnitarySet":
        return UnitarySet(np.asarray(V) @ self.matrices, self.labels, self.unitarity_tol)

    def right_multiply(self, V) -> "UnitarySet":
        return UnitarySet(self.matrices @ np.asarray(V), self.labels, self.unitarity_tol)

    def union(self, other: "UnitarySet") -> "UnitarySet":
        if other.d != self.d:
            raise InputError("cannot join sets of different dimension")
        return UnitarySet(np.concatenate([self.matrices, other.matrices]),
                          unitarity_tol=max(self.unitarity_tol, other.unitarity_tol))


@dataclass(frozen=True)
class WeightedUnitarySet:
    base: UnitarySet
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (len(self.base),):
            raise InputError(f"{len(w)} weights for {len(self.base)} matrices")
        if np.any(~np.isfinite(w)) or np.any(w <= 0):
            raise InputError("weights must be positive")
        total = float(math.fsum(w))
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise InputError(f"weights sum to {total!r}, not 1")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def d(self) -> int:
        return self.base.d

    @property
    def matrices(self) -> np.ndarray:
        return self.base.matrices

    def __len__(self):
        return len(self.base)


AnySet = Union[UnitarySet, WeightedUnitarySet]


def matrices_and_weights(X: AnySet) -> tuple[np.ndarray, np.ndarray]:
    """The (n, d, d) stack and a probability vector (uniform when unweighted)."""
    if isinstance(X, WeightedUnitarySet):
        return X.base.matrices, X.weights
    if len(X) == 0:
        raise InputError("set is empty")
    return X.matrices, X.uniform_weights()


# ----------------------------------------------------------------------------
# uset-v1 files


def _encode_matrix(A: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in A]


def dumps_set(X: AnySet) -> str:
    if isinstance(X, WeightedUnitarySet):
        base, weights = X.base, X.weights
    else:
        base, weights = X, None
    doc: dict = {"format": FORMAT, "d": base.d}
    if weights is not None:
        doc["weights"] = [float(w) for w in weights]
    if base.labels is not None:
        doc["labels"] = list(base.labels)
    doc["matrices"] = [_encode_matrix(A) for A in base.matrices]
    # json writes floats with repr, the shortest string that round-trips exactly
    lines = ["{"]
    keys = list(doc)
    for k in keys:
        sep = "," if k != keys[-1] else ""
        if k == "matrices":
            body = ",\n".join("  " + json.dumps(m, separators=(",", ":")) for m in doc[k])
            lines.append(f'"matrices":[\n{body}\n]{sep}')
        else:
            lines.append(f"{json.dumps(k)}:{json.dumps(doc[k], separators=(',', ':'))}{sep}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_set(X: AnySet, path) -> None:
    Path(path).write_text(dumps_set(X), encoding="utf-8")


def loads_set(text: str, unitarity_tol: float = UNITARITY_TOL) -> AnySet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    if doc.get("format") != FORMAT:
        raise FormatError(f"format must be {FORMAT!r}, got {doc.get('format')!r}")
    d = doc.get("d")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise FormatError("'d' must be a positive integer")
    mats = doc.get("matrices")
    if not isinstance(mats, list):
        raise FormatError("'matrices' must be an array")
    arr = np.empty((len(mats), d, d), dtype=complex)
    for n, m in enumerate(mats):
        if not isinstance(m, list) or len(m) != d:
            raise FormatError(f"matrix {n} must have {d} rows")
        for i, row in enumerate(m):
            if not isinstance(row, list) or len(row) != d:
                raise FormatError(f"matrix {n} row {i} must have {d} entries")
            for j, z in enumerate(row):
                if (not isinstance(z, list) or len(z) != 2
                        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in z)):
                    raise FormatError(f"matrix {n} entry ({i},{j}) must be [re, im]")
                arr[n, i, j] = complex(z[0], z[1])
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise FormatError("'labels' must be an array of strings")
        if len(labels) != len(mats):
            raise FormatError("'labels' and 'matrices' differ in length")
        labels = tuple(labels)
    base = UnitarySet(arr, labels=labels, unitarity_tol=unitarity_tol)
    if "weights" in doc:
        w = doc["weights"]
        if not isinstance(w, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in w):
            raise FormatError("'weights' must be an array of numbers")
        if len(w) != len(mats):
            raise FormatError("'weights' and 'matrices' differ in length")
        return WeightedUnitarySet(base, np.array(w, dtype=float))
    return base


def load_set(path, unitarity_tol: float = UNITARITY_TOL) -> AnySet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise FormatError(f"{path} is not UTF-8 text") from None
    return loads_set(text, unitarity_tol)


# ----------------------------------------------------------------------------
# Gram data


def gram_traces(A: np.ndarray, B: Optional[np.ndarray] = None) -> np.ndarray:
    """Matrix of tr(A_i^dag B_j) for stacks A (n, d, d) and B (m, d, d)."""
    if B is None:
        B = A
    a = A.reshape(A.shape[0], -1)
    b = B.reshape(B.shape[0], -1)
    return a.conj() @ b.T


def gram_abs2(X: AnySet) -> np.ndarray:
    """G_ij = |tr(U_i^dag U_j)|^2 (real symmetric, diagonal d^2)."""
    mats = X.matrices
    if len(mats) == 0:
        raise InputError("set is empty")
    G = np.abs(gram_traces(mats)) ** 2
    G = (G + G.T) / 2
    np.fill_diagonal(G, mats.shape[1] ** 2)
    return G


@dataclass(frozen=True)
class DistanceProfile:
    """Distinct off-diagonal values of |tr(U^dag V)|^2 with ordered-pair multiplicities."""

    clusters: tuple[tuple[float, int], ...]
    cluster_tol: float
    phase_duplicates: tuple[tuple[int, int], ...] = ()

    @property
    def degree(self) -> int:
        return len(self.clusters)

    @property
    def values(self) -> list[float]:
        return [v for v, _ in self.clusters]


def distance_profile(X: AnySet, cluster_tol: float = 1e-6) -> DistanceProfile:
    mats = X.matrices
    n = len(mats)
    if n < 2:
        raise InputError("distance profile needs at least two matrices")
    d = mats.shape[1]
    G = gram_abs2(X)
    iu = np.triu_indices(n, 1)
    vals = G[iu]
    dup = np.abs(np.sqrt(vals) - d) <= PHASE_DUPLICATE_TOL * d
    duplicates = tuple((int(i), int(j)) for i, j, f in zip(iu[0], iu[1], dup) if f)
    if duplicates:
        log.warning("%d pair(s) are equal up to global phase, e.g. %s", len(duplicates), duplicates[0])
    order = np.sort(vals)
    clusters = []
    start = 0
    for k in range(1, len(order) + 1):
        if k == len(order) or order[k] - order[k - 1] > cluster_tol:
            chunk = order[start:k]
            # each unordered pair counts twice as an ordered pair
            clusters.append((float(np.mean(chunk)), 2 * (k - start)))
            start = k
    return DistanceProfile(tuple(clusters), cluster_tol, duplicates)


# ----------------------------------------------------------------------------
# constructions


def haar_unitaries(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """n Haar-random unitaries as an (n, d, d) array.

    QR of a complex Ginibre matrix with the diagonal of R rotated to be
    positive real; without that phase fix the distribution is not Haar.
    """
    z = (rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=1, axis2=2)
    return q * (diag / np.abs(diag))[:, None, :]


def sample_haar(d: int, n: int, seed: int) -> UnitarySet:
    if n < 0:
        raise InputError("n must be nonnegative")
    if d < 1:
        raise InputError("d must be positive")
    rng = np.random.default_rng(seed)
    return UnitarySet(haar_unitaries(d, n, rng))


def clock_and_shift(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Shift S|j> = |j+1 mod d> and clock C = diag(1, w, ..., w^{d-1}), w = exp(2 pi i/d)."""
    S = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    C = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return S, C


def weyl_heisenberg(d: int) -> UnitarySet:
    """The d^2 products S^a C^b, a unitary operator basis."""
    if d < 1:
        raise InputError("d must be positive")
    S, C = clock_and_shift(d)
    mats = []
    labels = []
    for a in range(d):
        Sa = np.linalg.matrix_power(S, a)
        for b in range(d):
            mats.append(Sa @ np.linalg.matrix_power(C, b))
            labels.append(f"S^{a}C^{b}")
    return UnitarySet(np.stack(mats), labels=tuple(labels))
