"""Photon-sector Lorentz-violation coefficients and the LIV energy factor.

The CPT-even coefficient ``k_F`` is a rank-4 tensor with the index
symmetries of the Riemann tensor.  It is repackaged into four 3x3
matrices

    kappa_DE[j, k] = -2 k_F[0, j, 0, k]
    kappa_HB[j, k] = 1/2 eps[j, p, q] eps[k, r, s] k_F[p, q, r, s]
    kappa_DB[j, k] = k_F[0, j, p, q] eps[k, p, q] = -kappa_HE[k, j]

with spatial indices running over 1..3 of the tensor (0..2 of the
matrices).  The scalar factor ``L`` weights the electric and magnetic
quadratic forms by the vacuum field mean squares, so that the energy
density becomes ``(1 + L) u``.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

__all__ = [
    "KFTensor",
    "KAFVector",
    "KappaSet",
    "FieldStats",
    "Medium",
    "Violation",
    "ValidationReport",
    "SymmetryError",
    "LARGE_COEFFICIENT",
    "validate_kf",
    "kappa_from_kf",
    "liv_factor",
    "cross_term",
    "load_kf_file",
    "parse_kf_document",
]

Index4 = tuple[int, int, int, int]

LARGE_COEFFICIENT = 1e-2

# cyclic completion (j, p, q) of each spatial index, 0-based in matrix space
_CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


class SymmetryError(ValueError):
    """A k_F tensor breaks one of the required index symmetries."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.flags.writeable = False
    return a


def _orbit(idx: Index4) -> dict[Index4, int]:
    """Signed images of ``idx`` under the pair antisymmetries and pair exchange."""
    k, l, m, n = idx
    out: dict[Index4, int] = {}
    for (a, b, c, d), sign in (((k, l, m, n), 1), ((m, n, k, l), 1)):
        out.setdefault((a, b, c, d), sign)
        out.setdefault((b, a, c, d), -sign)
        out.setdefault((a, b, d, c), -sign)
        out.setdefault((b, a, d, c), sign)
    return out


@dataclass(frozen=True)
class KFTensor:
    """Dense 4x4x4x4 ``k_F`` components (read-only).

    The constructor stores what it is given; use :meth:`from_entries` to
    build a symmetry-consistent tensor from one representative per orbit.
    """

    components: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.components, dtype=float)
        if c.shape != (4, 4, 4, 4):
            raise ValueError(f"k_F must have shape (4, 4, 4, 4), got {c.shape}")
        object.__setattr__(self, "components", _readonly(c))

    @classmethod
    def zeros(cls) -> "KFTensor":
        return cls(np.zeros((4, 4, 4, 4)))

    @classmethod
    def from_entries(cls, entries: Mapping[Sequence[int], float] | Iterable[tuple[Sequence[int], float]]) -> "KFTensor":
        """Fill every symmetry partner of the supplied entries.

        Explicit entries that disagree with each other after completion,
        or a nonzero value on an index tuple the symmetries force to zero,
        raise :class:`SymmetryError`.
        """
        items = entries.items() if isinstance(entries, Mapping) else entries
        filled: dict[Index4, tuple[float, Index4]] = {}
        for raw_idx, value in items:
            idx = tuple(int(i) for i in raw_idx)
            if len(idx) != 4 or not all(0 <= i <= 3 for i in idx):
                raise ValueError(f"k_F index must be 4 integers in 0..3, got {raw_idx!r}")
            value = float(value)
            if not math.isfinite(value):
                raise ValueError(f"non-finite k_F entry at {idx}: {value!r}")
            if value != 0.0 and (idx[0] == idx[1] or idx[2] == idx[3]):
                raise SymmetryError(f"k_F{list(idx)} is forced to zero by antisymmetry but was given {value!r}")
            for j, sign in _orbit(idx).items():
                v = sign * value
                if j in filled and filled[j][0] != v:
                    raise SymmetryError(
                        f"conflicting k_F entries: {list(filled[j][1])} implies k_F{list(j)} = {filled[j][0]!r}, "
                        f"{list(idx)} implies {v!r}"
                    )
                filled.setdefault(j, (v, idx))
        c = np.zeros((4, 4, 4, 4))
        for j, (v, _) in filled.items():
            c[j] = v
        return cls(c)

    def __getitem__(self, idx: Index4) -> float:
        return float(self.components[idx])

    def __add__(self, other: "KFTensor") -> "KFTensor":
        return KFTensor(self.components + other.components)

    def __mul__(self, s: float) -> "KFTensor":
        return KFTensor(float(s) * self.components)

    __rmul__ = __mul__

    def nonzero_entries(self) -> dict[Index4, float]:
        return {tuple(int(i) for i in idx): float(self.components[tuple(idx)])
                for idx in np.argwhere(self.components != 0.0)}


@dataclass(frozen=True)
class KAFVector:
    """CPT-odd coefficient ``(k_AF)^kappa`` (inverse length).  Stored, never used."""

    components: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        c = tuple(float(x) for x in self.components)
        if len(c) != 4:
            raise ValueError(f"k_AF needs 4 components, got {len(c)}")
        if not all(math.isfinite(x) for x in c):
            raise ValueError(f"k_AF components must be finite, got {c}")
        object.__setattr__(self, "components", c)


@dataclass(frozen=True)
class KappaSet:
    kappa_DE: np.ndarray
    kappa_HB: np.ndarray
    kappa_DB: np.ndarray
    kappa_HE: np.ndarray

    def __post_init__(self):
        for name in ("kappa_DE", "kappa_HB", "kappa_DB", "kappa_HE"):
            m = np.asarray(getattr(self, name), dtype=float) + 0.0  # drop signed zeros
            if m.shape != (3, 3):
                raise ValueError(f"{name} must be 3x3, got shape {m.shape}")
            object.__setattr__(self, name, _readonly(m))

    @classmethod
    def isotropic(cls, de: float = 0.0, hb: float = 0.0) -> "KappaSet":
        z = np.zeros((3, 3))
        return cls(de * np.eye(3), hb * np.eye(3), z, z)

    def as_dict(self) -> dict[str, list[list[float]]]:
        return {name: getattr(self, name).tolist()
                for name in ("kappa_DE", "kappa_HB", "kappa_DB", "kappa_HE")}


@dataclass(frozen=True)
class Medium:
    epsilon: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        for name in ("epsilon", "mu"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)


def _as_sq(x, name: str) -> float | np.ndarray:
    a = np.asarray(x, dtype=float)
    if a.ndim == 0:
        v = float(a)
    elif a.shape == (3,):
        v = _readonly(a)
    else:
        raise ValueError(f"{name} must be a scalar or a 3-vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)) or np.any(a < 0):
        raise ValueError(f"{name} must be finite and >= 0 componentwise, got {x!r}")
    return v


def _as_dir(x, name: str) -> np.ndarray | None:
    if x is None:
        return None
    d = np.asarray(x, dtype=float)
    if d.shape != (3,) or not np.all(np.isfinite(d)):
        raise ValueError(f"{name} must be a finite 3-vector")
    norm = np.linalg.norm(d)
    if norm == 0.0:
        raise ValueError(f"{name} must be nonzero")
    return _readonly(d / norm)


@dataclass(frozen=True)
class FieldStats:
    """Mean-square vacuum fields entering the LIV factor.

    ``E_sq``/``B_sq`` are either scalars (optionally with a unit direction
    ``E_dir``/``B_dir``) or 3-vectors of per-component mean squares.
    """

    E_sq: float | np.ndarray
    B_sq: float | np.ndarray
    E_dir: np.ndarray | None = None
    B_dir: np.ndarray | None = None
    isotropic: bool = False

    def __post_init__(self):
        e = _as_sq(self.E_sq, "E_sq")
        b = _as_sq(self.B_sq, "B_sq")
        if np.sum(e) == 0.0 and np.sum(b) == 0.0:
            raise ValueError("E_sq and B_sq cannot both vanish")
        object.__setattr__(self, "E_sq", e)
        object.__setattr__(self, "B_sq", b)
        object.__setattr__(self, "E_dir", _as_dir(self.E_dir, "E_dir"))
        object.__setattr__(self, "B_dir", _as_dir(self.B_dir, "B_dir"))
        for sq, d, name in ((e, self.E_dir, "E"), (b, self.B_dir, "B")):
            if d is not None and np.ndim(sq) != 0:
                raise ValueError(f"give {name} either per-component mean squares or a direction, not both")


@dataclass(frozen=True)
class Violation:
    relation: str
    indices: tuple[Index4, Index4] | Index4
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "valid"
        head = self.violations[0]
        more = f" (+{len(self.violations) - 1} more)" if len(self.violations) > 1 else ""
        return f"{head.relation} violated at {head.indices}{more}"


def _metric() -> np.ndarray:
    return np.diag([1.0, -1.0, -1.0, -1.0])


def validate_kf(t: KFTensor, *, bianchi: bool = False, double_trace: bool = False,
                atol: float = 0.0) -> ValidationReport:
    """Check the index symmetries of ``t``.

    Always checked: antisymmetry in each index pair and pair-exchange
    symmetry, each reported once per offending pair of index tuples.
    ``bianchi`` adds the cyclic identity on the last three indices and
    ``double_trace`` the vanishing double trace (metric diag(+,-,-,-)).
    """
    c = t.components
    if not np.all(np.isfinite(c)):
        bad = tuple(int(i) for i in np.argwhere(~np.isfinite(c))[0])
        raise ValueError(f"non-finite k_F entry at {bad}")
    out: list[Violation] = []
    seen: set[tuple[str, Index4, Index4]] = set()

    def check(rel: str, i: Index4, j: Index4, expected: float, got: float):
        if abs(got - expected) > atol:
            key = (rel, *sorted((i, j)))
            if key not in seen:
                seen.add(key)
                out.append(Violation(rel, (i, j), f"k_F{list(j)} = {got!r}, expected {expected!r}"))

    for idx in itertools.product(range(4), repeat=4):
        k, l, m, n = idx
        v = float(c[idx])
        check("first-pair antisymmetry", idx, (l, k, m, n), -v, float(c[l, k, m, n]))
        check("second-pair antisymmetry", idx, (k, l, n, m), -v, float(c[k, l, n, m]))
        check("pair-exchange symmetry", idx, (m, n, k, l), v, float(c[m, n, k, l]))

    if bianchi:
        for k, l, m, n in itertools.product(range(4), repeat=4):
            if not l < m < n:
                continue  # the cyclic sum is antisymmetric in (l, m, n)
            s = float(c[k, l, m, n] + c[k, m, n, l] + c[k, n, l, m])
            if abs(s) > atol:
                out.append(Violation("cyclic (Bianchi) identity", (k, l, m, n), f"cyclic sum = {s!r}"))
    if double_trace:
        eta = _metric()
        tr = float(np.einsum("km,ln,klmn->", eta, eta, c))
        if abs(tr) > atol:
            out.append(Violation("double tracelessness", (0, 0, 0, 0), f"double trace = {tr!r}"))

    big = np.max(np.abs(c))
    if big >= 1.0:
        idx = tuple(int(i) for i in np.unravel_index(np.argmax(np.abs(c)), c.shape))
        out.append(Violation("smallness |k_F| < 1", idx, f"|k_F| = {big!r}"))
    notes = []
    if big > LARGE_COEFFICIENT:
        notes.append(f"largest |k_F| component {big:.3g} exceeds {LARGE_COEFFICIENT:g}; coefficients are expected to be small")
    return ValidationReport(tuple(out), tuple(notes))


def kappa_from_kf(t: KFTensor) -> KappaSet:
    """Build the four kappa matrices from a symmetry-consistent ``k_F``.

    Each contraction is written out over the two nonzero Levi-Civita
    orderings, paired as differences, so symmetric input gives results
    that are exactly symmetric.
    """
    report = validate_kf(t)
    if not report.ok:
        raise SymmetryError(f"invalid k_F tensor: {report.summary()}")
    c = t.components
    de = np.empty((3, 3))
    hb = np.empty((3, 3))
    db = np.empty((3, 3))
    for j, p, q in _CYCLIC:
        for k, r, s in _CYCLIC:
            P, Q, R, S = p + 1, q + 1, r + 1, s + 1
            de[j, k] = -2.0 * c[0, j + 1, 0, k + 1]
            hb[j, k] = 0.5 * ((c[P, Q, R, S] - c[P, Q, S, R]) + (c[Q, P, S, R] - c[Q, P, R, S]))
            db[j, k] = c[0, j + 1, R, S] - c[0, j + 1, S, R]
    return KappaSet(de, hb, db, -db.T)


def _is_scalar_matrix(m: np.ndarray) -> bool:
    return bool(np.all(m == m[0, 0] * np.eye(3)))


def _quadratic(kappa: np.ndarray, sq, direction, isotropic: bool, name: str) -> float:
    if np.ndim(sq) == 1:
        return float(np.dot(np.diag(kappa), sq))
    if sq == 0.0:
        return 0.0
    if direction is not None:
        return float(sq * (direction @ kappa @ direction))
    if isotropic:
        return float(sq * np.trace(kappa) / 3.0)
    if _is_scalar_matrix(kappa):
        return float(sq * kappa[0, 0])
    raise ValueError(f"anisotropic {name} needs a field direction or the isotropic flag")


def liv_factor(k: KappaSet, f: FieldStats, m: Medium = Medium()) -> float:
    """Ratio of the kappa-weighted to the plain vacuum energy density.

    ``L = (<E.kDE.E> + <B.kHB.B>) / (eps <E^2> + <B^2>/mu)``.  The kappa_DB
    and kappa_HE cross terms cancel identically; see :func:`cross_term`.
    """
    e2 = float(np.sum(f.E_sq))
    b2 = float(np.sum(f.B_sq))
    den = m.epsilon * e2 + b2 / m.mu
    if not den > 0.0:
        raise ValueError("zero denominator: eps*E^2 + B^2/mu must be > 0")
    num = (_quadratic(k.kappa_DE, f.E_sq, f.E_dir, f.isotropic, "kappa_DE")
           + _quadratic(k.kappa_HB, f.B_sq, f.B_dir, f.isotropic, "kappa_HB"))
    return num / den


def cross_term(k: KappaSet, E: Sequence[float], B: Sequence[float]) -> float:
    """Mixed E-B part of the energy density, ``1/2 (E.kDB.B + B.kHE.E)``.

    Zero whenever ``kappa_HE = -kappa_DB^T``; kept as a diagnostic.
    """
    e = np.asarray(E, dtype=float)
    b = np.asarray(B, dtype=float)
    return 0.5 * (float(e @ k.kappa_DB @ b) + float(b @ k.kappa_HE @ e))


_KF_KEYS = {"kf", "kaf", "medium"}


def parse_kf_document(doc: Mapping) -> tuple[KFTensor, KAFVector | None, Medium]:
    """Build coefficient objects from a parsed TOML document."""
    unknown = set(doc) - _KF_KEYS
    if unknown:
        raise ValueError(f"unknown keys in k_F file: {sorted(unknown)}")
    entries = []
    for i, row in enumerate(doc.get("kf", [])):
        if not isinstance(row, Mapping) or set(row) != {"indices", "value"}:
            raise ValueError(f"kf[{i}] must be a table with exactly 'indices' and 'value'")
        entries.append((row["indices"], row["value"]))
    kf = KFTensor.from_entries(entries)
    kaf = KAFVector(tuple(doc["kaf"])) if "kaf" in doc else None
    med = doc.get("medium", {})
    if set(med) - {"epsilon", "mu"}:
        raise ValueError(f"unknown keys in [medium]: {sorted(set(med) - {'epsilon', 'mu'})}")
    medium = Medium(**med)
    report = validate_kf(kf)
    for w in report.warnings:
        warnings.warn(w, stacklevel=2)
    return kf, kaf, medium


def load_kf_file(path: str | Path) -> tuple[KFTensor, KAFVector | None, Medium]:
    """Read a k_F coefficient file (TOML).

    ::

        kf = [{indices = [0, 1, 0, 1], value = 1.0e-17}]
        kaf = [0.0, 0.0, 0.0, 0.0]          # optional
        medium = {epsilon = 1.0, mu = 1.0}  # optional

    One representative per symmetry orbit is enough.
    """
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    return parse_kf_document(doc)
