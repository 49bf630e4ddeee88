"""
Coherent matrix towers.

A locally Hilbert space is modelled by a finite chain of coordinate spaces
``C^{d_1} ⊆ C^{d_2} ⊆ ... ⊆ C^{d_N}``, where level ``α`` is spanned by the
first ``d_α`` standard basis vectors. A locally bounded operator is then a
*tower*: one square matrix per level such that

* the top-left ``d_α × d_α`` block of level ``β`` equals level ``α``
  (restriction coherence), and
* level ``β`` is block diagonal with respect to the split
  ``C^{d_α} ⊕ (rest)`` (each smaller space is reducing).

Levels are numbered from 1 in every public function.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ChainMismatch,
    CoherenceViolation,
    DimensionMismatch,
    InvalidChain,
    LevelOutOfRange,
    NonFiniteEntry,
)

COH_TOL = 1e-10
NUM_TOL = 1e-9
EIG_TOL = 1e-8
MAX_LEVELS = 64


@dataclass(frozen=True)
class IndexChain:
    """Strictly increasing level dimensions ``d_1 < ... < d_N``."""

    dims: tuple

    def __init__(self, dims: Sequence[int], max_levels: int = MAX_LEVELS):
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise InvalidChain("chain must have at least one level")
        if len(dims) > max_levels:
            raise InvalidChain(
                f"chain has {len(dims)} levels, maximum is {max_levels}",
                levels=len(dims), max_levels=max_levels,
            )
        if dims[0] < 1:
            raise InvalidChain("dimensions must be positive", dims=list(dims))
        if any(b <= a for a, b in zip(dims, dims[1:])):
            raise InvalidChain("dimensions must be strictly increasing", dims=list(dims))
        object.__setattr__(self, "dims", dims)

    def __len__(self):
        return len(self.dims)

    def dim(self, level: int) -> int:
        return self.dims[self._index(level)]

    def _index(self, level: int) -> int:
        if not 1 <= level <= len(self.dims):
            raise LevelOutOfRange(
                f"level {level} outside 1..{len(self.dims)}", level=level, levels=len(self.dims)
            )
        return level - 1


@dataclass(frozen=True, eq=False)
class OperatorTower:
    """Validated, immutable family of level matrices.

    Build instances with :func:`validate_tower`; the constructor performs no
    checks. The stored arrays are read-only.
    """

    chain: IndexChain
    levels: tuple

    @property
    def dims(self):
        return self.chain.dims

    @property
    def top(self) -> np.ndarray:
        return self.levels[-1]

    def __len__(self):
        return len(self.levels)

    def __repr__(self):
        return f"OperatorTower(dims={list(self.dims)})"


def _freeze(matrix) -> np.ndarray:
    arr = np.array(matrix, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


def coherence_defect(chain: IndexChain, levels: Sequence[np.ndarray]):
    """Return ``(worst deviation, (α, β), kind)`` over all level pairs α < β.

    ``kind`` is ``"restriction"`` or ``"reduction"``. For a one-level chain
    the deviation is 0 and the pair is ``None``.
    """
    worst, where, kind = 0.0, None, None
    for b in range(len(chain)):
        big = levels[b]
        for a in range(b):
            d = chain.dims[a]
            dev = np.max(np.abs(big[:d, :d] - levels[a]))
            if dev > worst:
                worst, where, kind = float(dev), (a + 1, b + 1), "restriction"
            off = max(np.max(np.abs(big[:d, d:])), np.max(np.abs(big[d:, :d])))
            if off > worst:
                worst, where, kind = float(off), (a + 1, b + 1), "reduction"
    return worst, where, kind


def validate_tower(chain, raw_levels, tol: float = COH_TOL) -> OperatorTower:
    """Check coherence and reduction of ``raw_levels`` and return a tower.

    Parameters
    ----------
    chain : IndexChain or sequence of int
    raw_levels : sequence of array_like
        One square complex matrix per level, level ``α`` of size ``d_α``.
    tol : float
        Absolute entrywise tolerance for both invariants.

    Raises
    ------
    DimensionMismatch, NonFiniteEntry, CoherenceViolation
    """
    if not isinstance(chain, IndexChain):
        chain = IndexChain(chain)
    if len(raw_levels) != len(chain):
        raise DimensionMismatch(
            f"expected {len(chain)} levels, got {len(raw_levels)}",
            expected=len(chain), got=len(raw_levels),
        )
    levels = []
    for i, (d, raw) in enumerate(zip(chain.dims, raw_levels)):
        m = np.asarray(raw, dtype=np.complex128)
        if m.shape != (d, d):
            raise DimensionMismatch(
                f"level {i + 1} has shape {m.shape}, expected ({d}, {d})",
                level=i + 1, shape=list(m.shape), expected=d,
            )
        if not np.all(np.isfinite(m)):
            raise NonFiniteEntry(f"level {i + 1} contains NaN or Inf", level=i + 1)
        levels.append(_freeze(m))

    for b in range(len(chain)):
        for a in range(b):
            d = chain.dims[a]
            big = levels[b]
            dev = float(np.max(np.abs(big[:d, :d] - levels[a])))
            if dev > tol:
                raise CoherenceViolation(
                    f"top-left block of level {b + 1} differs from level {a + 1} by {dev:.3g}",
                    pair=[a + 1, b + 1], deviation=dev, kind="restriction",
                )
            if d < big.shape[0]:
                off = float(max(np.max(np.abs(big[:d, d:])), np.max(np.abs(big[d:, :d]))))
                if off > tol:
                    raise CoherenceViolation(
                        f"level {b + 1} does not reduce the level-{a + 1} subspace "
                        f"(off-diagonal block {off:.3g})",
                        pair=[a + 1, b + 1], deviation=off, kind="reduction",
                    )
    return OperatorTower(chain, tuple(levels))


def tower_from_top(chain, top, tol: float = COH_TOL) -> OperatorTower:
    """Build a tower from its top matrix by taking leading truncations."""
    if not isinstance(chain, IndexChain):
        chain = IndexChain(chain)
    top = np.asarray(top, dtype=np.complex128)
    return validate_tower(chain, [top[:d, :d] for d in chain.dims], tol)


def diagonal_tower(chain, entries) -> OperatorTower:
    """Tower whose top level is ``diag(entries)``."""
    if not isinstance(chain, IndexChain):
        chain = IndexChain(chain)
    entries = np.asarray(entries, dtype=np.complex128)
    if entries.shape != (chain.dims[-1],):
        raise DimensionMismatch(
            f"need {chain.dims[-1]} diagonal entries, got {entries.shape[0]}",
            expected=chain.dims[-1], got=int(entries.shape[0]),
        )
    return tower_from_top(chain, np.diag(entries))


def identity_tower(chain) -> OperatorTower:
    if not isinstance(chain, IndexChain):
        chain = IndexChain(chain)
    return diagonal_tower(chain, np.ones(chain.dims[-1]))


def zero_tower(chain) -> OperatorTower:
    if not isinstance(chain, IndexChain):
        chain = IndexChain(chain)
    return diagonal_tower(chain, np.zeros(chain.dims[-1]))


def number_matrix_diagonal(n: int) -> np.ndarray:
    """Entries ``1, 1/2, 3, 1/4, 5, ...``: odd k maps to k, even k to 1/k."""
    k = np.arange(1, n + 1, dtype=float)
    return np.where(k % 2 == 1, k, 1.0 / k)


def number_matrix_tower(n: int = 6) -> OperatorTower:
    """Truncation to levels ``1..n`` (with ``d_k = k``) of the unbounded
    diagonal operator ``diag(1, 1/2, 3, 1/4, ...)``."""
    return diagonal_tower(range(1, n + 1), number_matrix_diagonal(n))


def _require_level(chain: IndexChain, level: int) -> int:
    return chain._index(level)


def restrict(tower: OperatorTower, level: int) -> np.ndarray:
    """Return a writable copy of the matrix at ``level`` (1-based)."""
    return np.array(tower.levels[tower.chain._index(level)])


def _same_chain(t1: OperatorTower, t2: OperatorTower):
    if t1.chain != t2.chain:
        raise ChainMismatch(
            "operands live on different chains",
            left=list(t1.dims), right=list(t2.dims),
        )


def _rebuild(chain, levels, tol=COH_TOL) -> OperatorTower:
    if __debug__:
        return validate_tower(chain, levels, tol)
    return OperatorTower(chain, tuple(_freeze(m) for m in levels))


def adjoint(tower: OperatorTower) -> OperatorTower:
    return _rebuild(tower.chain, [m.conj().T for m in tower.levels])


def add(t1: OperatorTower, t2: OperatorTower) -> OperatorTower:
    _same_chain(t1, t2)
    return _rebuild(t1.chain, [a + b for a, b in zip(t1.levels, t2.levels)])


def scale(c: complex, tower: OperatorTower) -> OperatorTower:
    return _rebuild(tower.chain, [c * m for m in tower.levels])


def compose(t1: OperatorTower, t2: OperatorTower) -> OperatorTower:
    """Levelwise product ``t1 ∘ t2``."""
    _same_chain(t1, t2)
    return _rebuild(t1.chain, [a @ b for a, b in zip(t1.levels, t2.levels)])


def spectral_norm(m: np.ndarray) -> float:
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


@dataclass(frozen=True)
class SeminormVector:
    """Level norms ``p_α(T) = ‖T_α‖``; nondecreasing in α."""

    values: tuple

    def __getitem__(self, level):
        return self.values[level]

    def __len__(self):
        return len(self.values)

    def is_upward_filtered(self, tol: float = NUM_TOL) -> bool:
        return all(a <= b + tol for a, b in zip(self.values, self.values[1:]))


def seminorms(tower: OperatorTower) -> SeminormVector:
    """Largest singular value of every level."""
    return SeminormVector(tuple(spectral_norm(m) for m in tower.levels))


@dataclass(frozen=True)
class NormalityCertificate:
    normal: bool
    worst_level: int
    deviation: float

    def __bool__(self):
        return self.normal


def is_normal(tower: OperatorTower, tol: float = NUM_TOL) -> NormalityCertificate:
    """Test ``‖T_α T_α* − T_α* T_α‖ ≤ tol`` at every level."""
    worst, where = -1.0, 1
    for i, m in enumerate(tower.levels):
        h = m.conj().T
        dev = spectral_norm(m @ h - h @ m)
        if dev > worst:
            worst, where = dev, i + 1
    return NormalityCertificate(worst <= tol, where, worst)
