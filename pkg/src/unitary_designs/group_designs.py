"""Group designs: closure of generators modulo phase, Clifford and Chau catalogs,
and design certificates from character data.

For a group image X, tr(U^dag V) = chi(g^{-1} h), so the frame potential of
X collapses to the character sum (1/|G|) sum_g |chi(g)|^{2t}. Global phases
do not change |chi|, so everything works on the projective quotient.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .design_verify import DEFAULT_TOL, VerificationReport
from .errors import FormatError, GroupTooLargeError, InputError, UnitarityError
from .moments import haar_moment
from .unitary_sets import UNITARITY_TOL, UnitarySet, clock_and_shift, unitarity_deviation

HASH_RESOLUTION = 1e-6
MATCH_TOL = 1e-8
_TIE_TOL = 1e-9
CHAU_DIMENSIONS = (2, 3, 5, 7, 11)

# generators of Chau's subgroups H' <= Sp(2, d) of order d^2 - 1
CHAU_GENERATORS = {
    2: ([[0, 1], [1, 1]],),
    3: ([[1, 1], [1, 2]], [[1, 2], [2, 2]]),
    5: ([[2, 0], [0, 3]], [[1, 2], [1, 3]]),
    7: ([[2, 0], [0, 4]], [[1, 2], [1, 3]]),
    11: ([[2, 0], [0, 6]], [[1, 1], [1, 2]]),
}

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PHASE_GATE = np.diag([1, 1j])


# ----------------------------------------------------------------------------
# phase canonical form and hashing


def phase_canonicalize(mats: np.ndarray) -> np.ndarray:
    """Divide each matrix by the phase of its largest-modulus entry.

    Ties (within 1e-9) go to the first entry in row-major order. Works on a
    single matrix or a stack (n, d, d).
    """
    single = mats.ndim == 2
    stack = mats[None] if single else mats
    flat = stack.reshape(stack.shape[0], -1)
    mod = np.abs(flat)
    top = mod.max(axis=1, keepdims=True)
    pivot = np.argmax(mod >= top - _TIE_TOL, axis=1)
    ph = flat[np.arange(len(flat)), pivot]
    out = stack * (np.conj(ph) / np.abs(ph))[:, None, None]
    return out[0] if single else out


def _keys(canon: np.ndarray) -> list[bytes]:
    grid = np.rint(canon.reshape(canon.shape[0], -1).view(float) / HASH_RESOLUTION).astype(np.int64)
    return [row.tobytes() for row in grid]


class _PhaseIndex:
    """Hash-grid set of phase-canonical matrices with exact confirmation."""

    def __init__(self):
        self.buckets: dict[bytes, list[int]] = {}
        self.items: list[np.ndarray] = []

    def find(self, canon: np.ndarray, key: bytes) -> Optional[int]:
        for idx in self.buckets.get(key, ()):
            if np.linalg.norm(self.items[idx] - canon) <= MATCH_TOL:
                return idx
        return None

    def add(self, canon: np.ndarray, key: bytes) -> tuple[int, bool]:
        found = self.find(canon, key)
        if found is not None:
            return found, False
        self.items.append(canon)
        self.buckets.setdefault(key, []).append(len(self.items) - 1)
        return len(self.items) - 1, True


class PhaseCanonicalSet(UnitarySet):
    """A set of phase-canonical unitaries, pairwise distinct modulo global phase."""

    def __post_init__(self):
        super().__post_init__()
        canon = phase_canonicalize(self.matrices)
        index = _PhaseIndex()
        for i, (A, key) in enumerate(zip(canon, _keys(canon))):
            if not index.add(A, key)[1]:
                raise InputError(f"matrix {i} repeats an earlier element up to phase")
        canon.setflags(write=False)
        object.__setattr__(self, "matrices", canon)
        object.__setattr__(self, "_index", index)

    def index_of(self, A) -> Optional[int]:
        """Position of ``A`` (up to global phase) in the set, or None."""
        canon = phase_canonicalize(np.asarray(A, dtype=complex)[None])
        return self._index.find(canon[0], _keys(canon)[0])

    def contains_all(self, mats: np.ndarray) -> bool:
        canon = phase_canonicalize(mats)
        return all(self._index.find(A, k) is not None for A, k in zip(canon, _keys(canon)))


def close_group(generators, max_size: int = 100_000, tol: float = UNITARITY_TOL,
                mod_phase: bool = True) -> PhaseCanonicalSet | UnitarySet:
    """Breadth-first closure of a generator set under multiplication.

    With ``mod_phase`` (the default) elements are identified up to a global
    phase and the result is a :class:`PhaseCanonicalSet` in discovery order,
    starting from the identity. Raises :class:`GroupTooLargeError` once more
    than ``max_size`` elements are found.
    """
    gens = np.asarray(generators.matrices if isinstance(generators, UnitarySet) else generators,
                      dtype=complex)
    if gens.ndim != 3 or gens.shape[1] != gens.shape[2] or len(gens) == 0:
        raise InputError("need a nonempty stack of square generator matrices")
    for i, g in enumerate(gens):
        dev = unitarity_deviation(g)
        if dev > tol:
            raise UnitarityError(i, dev, tol)
    if max_size < 1:
        raise InputError("max_size must be >= 1")
    d = gens.shape[1]
    norm = phase_canonicalize if mod_phase else (lambda m: m)
    index = _PhaseIndex()
    ident = np.eye(d, dtype=complex)[None]
    index.add(ident[0], _keys(ident)[0])
    frontier = ident
    while len(frontier):
        fresh = []
        for g in gens:
            prods = norm(frontier @ g)
            for A, key in zip(prods, _keys(prods)):
                idx, new = index.add(A, key)
                if new:
                    if len(index.items) > max_size:
                        raise GroupTooLargeError(
                            f"closure exceeded max_size={max_size}; the group may be infinite"
                        )
                    fresh.append(A)
        frontier = np.array(fresh).reshape(-1, d, d)
    mats = np.array(index.items)
    if mod_phase:
        return PhaseCanonicalSet(mats, unitarity_tol=max(tol, 1e-7))
    return UnitarySet(mats, unitarity_tol=max(tol, 1e-7))


# ----------------------------------------------------------------------------
# Weyl-Heisenberg displacements and their symplectic normalizer


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % k for k in range(2, math.isqrt(q) + 1))


def displacement(v, p: int) -> np.ndarray:
    """X^{v0} Z^{v1} with X the shift and Z the clock (phase convention irrelevant mod phase)."""
    S, C = clock_and_shift(p)
    return np.linalg.matrix_power(S, int(v[0]) % p) @ np.linalg.matrix_power(C, int(v[1]) % p)


def metaplectic(F, p: int) -> np.ndarray:
    """Unitary implementing the symplectic matrix ``F`` over F_p, p an odd prime.

    Quadratic-phase (Gauss sum) formula: with tau = -exp(i pi/p),
    for F = [[a, b], [c, e]] and b != 0,
        U = p^{-1/2} sum_{j,k} tau^{b^{-1} (a k^2 - 2 j k + e j^2)} |j><k|,
    and for b = 0,  U = sum_k tau^{a c k^2} |a k><k|.
    Then U X^x Z^z U^dag is proportional to the displacement of F (x, z).
    """
    if p == 2 or not _is_prime(p):
        raise InputError("metaplectic formula needs an odd prime")
    (a, b), (c, e) = [[int(x) % p for x in row] for row in F]
    if (a * e - b * c) % p != 1:
        raise InputError(f"{F} is not in SL(2, {p})")
    half = (p + 1) // 2  # tau = omega^{(p+1)/2} for odd p
    omega = np.exp(2j * np.pi / p)
    j = np.arange(p)[:, None]
    k = np.arange(p)[None, :]
    if b:
        binv = pow(b, -1, p)
        expo = (half * binv * (a * k * k - 2 * j * k + e * j * j)) % p
        return omega**expo / np.sqrt(p)
    U = np.zeros((p, p), dtype=complex)
    for kk in range(p):
        U[(a * kk) % p, kk] = omega ** ((half * a * c * kk * kk) % p)
    return U


def acts_as(U: np.ndarray, F, p: int, tol: float = 1e-9) -> bool:
    """Whether conjugation by ``U`` maps each displacement D(v) to D(F v) up to phase."""
    F = np.asarray(F) % p
    for v in ((1, 0), (0, 1)):
        img = U @ displacement(v, p) @ U.conj().T
        target = displacement(F @ np.array(v), p)
        if abs(abs(np.trace(target.conj().T @ img)) - p) > tol:
            return False
    return True


def _qubit_image(F) -> np.ndarray:
    # the single-qubit Clifford group mod phase is generated by H and S;
    # search short words for one realizing F
    words = [np.eye(2, dtype=complex)]
    for _ in range(4):
        words = words + [w @ g for w in words for g in (HADAMARD, PHASE_GATE)]
        for w in words:
            if acts_as(w, F, 2):
                return w
    raise InputError(f"no single-qubit Clifford realizes {F}")


def _affine_design(p: int, symplectic_gens, max_size: int) -> PhaseCanonicalSet:
    S, C = clock_and_shift(p)
    gens = [S, C]
    for F in symplectic_gens:
        gens.append(_qubit_image(F) if p == 2 else metaplectic(F, p))
    return close_group(np.stack(gens), max_size=max_size)


def chau_design(d: int) -> PhaseCanonicalSet:
    """The d^2 (d^2 - 1)-element Clifford 2-design from Chau's subgroup of Sp(2, d)."""
    if d not in CHAU_GENERATORS:
        raise InputError(f"Chau designs exist only for d in {CHAU_DIMENSIONS}")
    return _affine_design(d, CHAU_GENERATORS[d], max_size=d**2 * (d**2 - 1))


def clifford_design(q: int) -> PhaseCanonicalSet:
    """The full Clifford group on one qudit of prime dimension q, size q^3 (q^2 - 1)."""
    if not _is_prime(q):
        raise InputError(f"clifford_design needs a prime dimension, got {q}")
    if q == 2:
        gens = ([[1, 1], [0, 1]], [[1, 0], [1, 1]])
    else:
        gens = ([[1, 1], [0, 1]], [[0, q - 1], [1, 0]])
    return _affine_design(q, gens, max_size=q**3 * (q**2 - 1))


# ----------------------------------------------------------------------------
# character data


@dataclass(frozen=True)
class CharacterData:
    """Class sizes and character values of one representation of a finite group.

    Only |chi| matters for design checks, so values may be moduli.
    """

    group_order: int
    degree: int
    classes: tuple[tuple[int, complex], ...]

    def __post_init__(self):
        if self.group_order < 1 or self.degree < 1:
            raise InputError("group order and degree must be positive")
        if sum(size for size, _ in self.classes) != self.group_order:
            raise InputError("class sizes do not add up to the group order")
        if any(size < 1 for size, _ in self.classes):
            raise InputError("class sizes must be positive")
        if not any(size == 1 and abs(v - self.degree) <= 1e-9 * self.degree
                   for size, v in self.classes):
            raise InputError("no identity class (size 1, value = degree)")

    def power_average(self, t: int) -> float:
        """(1/|G|) sum_g |chi(g)|^{2t}."""
        total = math.fsum(size * abs(v) ** (2 * t) for size, v in self.classes)
        return total / self.group_order


def character_design_check(table: CharacterData, t: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Group-design test: the |chi|^{2t} average must equal the Haar moment."""
    if t < 0:
        raise InputError("t must be nonnegative")
    moment = haar_moment(table.degree, t)
    lhs = table.power_average(t)
    gap = lhs - moment
    return VerificationReport(t, lhs, moment, gap, abs(gap) <= tol * moment, "character", tol,
                              gap / moment)


def _check_closed(X: PhaseCanonicalSet, sample: int = 2000, seed: int = 0) -> None:
    n = len(X)
    mats = X.matrices
    if n <= 300:
        for A in mats:
            if not X.contains_all(A @ mats):
                raise InputError("set is not closed under multiplication")
        return
    rng = np.random.default_rng(seed)
    i = rng.integers(0, n, sample)
    j = rng.integers(0, n, sample)
    if not X.contains_all(mats[i] @ mats[j]):
        raise InputError("set is not closed under multiplication")


def abs_character_data(X: PhaseCanonicalSet, check_closed: bool = True) -> CharacterData:
    """Per-element |tr| records of a group given modulo phase."""
    if not isinstance(X, PhaseCanonicalSet):
        X = PhaseCanonicalSet(X.matrices)
    if check_closed:
        _check_closed(X)
    values = np.abs(np.trace(X.matrices, axis1=1, axis2=2))
    return CharacterData(len(X), X.d, tuple((1, complex(v)) for v in values))


def character_data_from_group(mats: np.ndarray, value_tol: float = 1e-9) -> CharacterData:
    """Character data of an honest (not projective) matrix group.

    Elements are grouped by trace value; that groups together possibly
    several conjugacy classes sharing a character value, which is all the
    design test needs.
    """
    traces = np.trace(mats, axis1=1, axis2=2)
    classes: list[list] = []
    for z in traces:
        for cls in classes:
            if abs(cls[1] - z) <= value_tol:
                cls[0] += 1
                break
        else:
            classes.append([1, complex(z)])
    return CharacterData(len(mats), mats.shape[1], tuple((n, v) for n, v in classes))


CHARTAB_FORMAT = "chartab-v1"


def loads_chartab(text: str) -> CharacterData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != CHARTAB_FORMAT:
        raise FormatError(f"format must be {CHARTAB_FORMAT!r}")
    order, degree, classes = doc.get("group_order"), doc.get("degree"), doc.get("classes")
    if not isinstance(order, int) or not isinstance(degree, int):
        raise FormatError("'group_order' and 'degree' must be integers")
    if not isinstance(classes, list):
        raise FormatError("'classes' must be an array")
    recs = []
    for i, c in enumerate(classes):
        if not isinstance(c, dict) or not isinstance(c.get("size"), int):
            raise FormatError(f"class {i} needs an integer 'size'")
        v = c.get("value")
        if not isinstance(v, list) or len(v) not in (1, 2) or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
            raise FormatError(f"class {i} 'value' must be [re, im] or [abs]")
        recs.append((c["size"], complex(v[0], v[1]) if len(v) == 2 else complex(abs(v[0]))))
    try:
        return CharacterData(order, degree, tuple(recs))
    except InputError as exc:
        raise FormatError(str(exc)) from None


def dumps_chartab(table: CharacterData) -> str:
    doc = {
        "format": CHARTAB_FORMAT,
        "group_order": table.group_order,
        "degree": table.degree,
        "classes": [{"size": s, "value": [v.real, v.imag]} for s, v in table.classes],
    }
    return json.dumps(doc, indent=1) + "\n"


def load_chartab(path) -> CharacterData:
    try:
        return loads_chartab(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def binary_icosahedral() -> np.ndarray:
    """The 120 elements of SL(2, 5) as the binary icosahedral subgroup of SU(2)."""
    phi = (1 + math.sqrt(5)) / 2

    def quat(a, b, c, e):
        return np.array([[a + 1j * b, c + 1j * e], [-c + 1j * e, a - 1j * b]])

    g1 = quat(0.5, 0.5, 0.5, 0.5)
    g2 = quat(phi / 2, 1 / (2 * phi), 0.5, 0.0)
    return close_group(np.stack([g1, g2]), max_size=120, mod_phase=False).matrices
