"""
Local spectrum and continuous functional calculus of normal towers.

The local spectrum of a tower is the union of the level spectra. For a
normal tower every level is unitarily diagonalisable, ``T_α = U_α D_α U_α*``,
and ``f(T)`` is the tower with levels ``U_α f(D_α) U_α*``.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import EigensolverFailure, InternalError, NotNormal
from .functions import FunctionSpec
from .spectra import canonical_sort, dedup, hausdorff, multiset_contains
from .tower import (
    COH_TOL,
    EIG_TOL,
    NUM_TOL,
    OperatorTower,
    is_normal,
    spectral_norm,
    validate_tower,
)

log = logging.getLogger(__name__)

# relative size of the strictly upper Schur part tolerated for a normal level
SCHUR_OFFDIAG_TOL = 1e-8


def schur(m: np.ndarray, level: int):
    """Complex Schur form ``m = Z R Z*``; returns ``(R, Z)``."""
    try:
        r, z = scipy.linalg.schur(m, output="complex")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigensolverFailure(f"Schur reduction failed at level {level}: {exc}", level=level) from exc
    return r, z


def level_eigenvalues(m: np.ndarray, level: int) -> np.ndarray:
    r, _ = schur(m, level)
    return canonical_sort(np.diag(r))


def diagonalize(m: np.ndarray, level: int):
    """Unitary diagonalisation of a normal matrix: ``m = Z diag(d) Z*``.

    The triangular Schur factor of a normal matrix is diagonal; a strictly
    upper part larger than ``1e-8 · ‖m‖`` is reported as :class:`NotNormal`.
    """
    r, z = schur(m, level)
    off = np.max(np.abs(np.triu(r, 1))) if r.shape[0] > 1 else 0.0
    if off > SCHUR_OFFDIAG_TOL * max(spectral_norm(m), np.finfo(float).tiny):
        raise NotNormal(
            f"level {level} has non-diagonal Schur form (off-diagonal {off:.3g})",
            worst_level=level, deviation=float(off),
        )
    return np.diag(r).copy(), z


@dataclass(frozen=True)
class LocalSpectrum:
    """Per-level eigenvalues (with multiplicity) and their merged union."""

    per_level: tuple
    merged: np.ndarray
    normal: bool
    tol: float = EIG_TOL

    def is_nested(self) -> bool:
        return all(
            multiset_contains(a, b, self.tol)
            for a, b in zip(self.per_level, self.per_level[1:])
        )

    def first_level(self, z) -> int:
        """Smallest level whose spectrum contains ``z``, or 0 if none does."""
        for i, ev in enumerate(self.per_level):
            if np.min(np.abs(ev - z)) <= self.tol:
                return i + 1
        return 0


def local_spectrum(tower: OperatorTower, eig_tol: float = EIG_TOL,
                   normal_tol: float = NUM_TOL) -> LocalSpectrum:
    """Eigenvalues of every level and their tolerance-deduplicated union.

    Non-normal towers are accepted but flagged (``normal=False``); their
    eigenvalues are ill-conditioned and the nesting property then rests
    only on the block structure.
    """
    per_level = tuple(level_eigenvalues(m, i + 1) for i, m in enumerate(tower.levels))
    normal = bool(is_normal(tower, normal_tol))
    if not normal:
        log.warning("local spectrum of a non-normal tower; eigenvalues may be inaccurate")
    merged = dedup(np.concatenate(per_level), eig_tol)
    return LocalSpectrum(per_level, merged, normal, eig_tol)


def _require_normal(tower: OperatorTower, tol: float):
    cert = is_normal(tower, tol)
    if not cert:
        raise NotNormal(
            f"tower is not normal: level {cert.worst_level} commutator norm {cert.deviation:.3g}",
            worst_level=cert.worst_level, deviation=cert.deviation,
        )


def apply_function(tower: OperatorTower, f: FunctionSpec, tol: float = NUM_TOL,
                   eig_tol: float = EIG_TOL, coh_tol: float = COH_TOL) -> OperatorTower:
    """Continuous functional calculus ``f(T)`` of a normal tower.

    Parameters
    ----------
    tower : OperatorTower
        Must be normal within ``tol``.
    f : FunctionSpec
        Table specs must cover every eigenvalue within ``eig_tol``.

    Notes
    -----
    ``named:identity`` returns ``tower`` itself, since the calculus maps the
    coordinate function to the operator exactly. Every other function goes
    through a per-level unitary diagonalisation, and the resulting levels are
    re-validated at ``10 * coh_tol``.
    """
    _require_normal(tower, tol)
    if f.is_identity:
        return tower
    levels = []
    for i, m in enumerate(tower.levels):
        d, z = diagonalize(m, i + 1)
        fd = f(d, eig_tol)
        levels.append((z * fd) @ z.conj().T)
    try:
        return validate_tower(tower.chain, levels, 10 * coh_tol)
    except Exception as exc:  # pragma: no cover - guarded by theory
        raise InternalError(f"calculus output lost coherence: {exc}") from exc


def polynomial_calculus(tower: OperatorTower, terms, tol: float = NUM_TOL,
                        coh_tol: float = COH_TOL) -> OperatorTower:
    """Evaluate ``Σ c · T^j (T*)^k`` levelwise by matrix products.

    ``terms`` is a polynomial :class:`FunctionSpec` or an iterable accepted
    by :meth:`FunctionSpec.polynomial`.
    """
    spec = terms if isinstance(terms, FunctionSpec) else FunctionSpec.polynomial(terms)
    if spec.kind != "polynomial":
        raise TypeError("polynomial_calculus needs a polynomial FunctionSpec")
    _require_normal(tower, tol)
    levels = []
    for m in tower.levels:
        n = m.shape[0]
        h = m.conj().T
        out = np.zeros((n, n), dtype=np.complex128)
        for t in spec.terms:
            out += t.coeff * (np.linalg.matrix_power(m, t.j) @ np.linalg.matrix_power(h, t.k))
        levels.append(out)
    return validate_tower(tower.chain, levels, 10 * coh_tol)


@dataclass(frozen=True)
class Classification:
    normal: bool
    self_adjoint: bool
    unitary: bool
    # direct route: ‖T − T*‖ and ‖T T* − I‖ per level
    direct_self_adjoint: bool
    direct_unitary: bool

    @property
    def consistent(self) -> bool:
        return (self.self_adjoint == self.direct_self_adjoint
                and self.unitary == self.direct_unitary)

    def to_dict(self):
        return {
            "self_adjoint": self.self_adjoint,
            "unitary": self.unitary,
            "normal": self.normal,
            "consistent": self.consistent,
        }


def classify(tower: OperatorTower, tol: float = NUM_TOL, eig_tol: float = EIG_TOL) -> Classification:
    """Self-adjoint / unitary / normal flags, by spectrum and by norms.

    For a normal tower, ``‖T − T*‖ = 2 max |Im λ|`` and
    ``‖T T* − I‖ = max ||λ|² − 1|``, so the direct thresholds are scaled
    to match the spectral ones.
    """
    normal = bool(is_normal(tower, tol))
    spec = local_spectrum(tower, eig_tol, tol)
    lam = spec.merged
    sa = normal and float(np.max(np.abs(lam.imag))) <= tol
    un = normal and float(np.max(np.abs(np.abs(lam) - 1))) <= tol
    d_sa = max(spectral_norm(m - m.conj().T) for m in tower.levels)
    d_un = max(spectral_norm(m @ m.conj().T - np.eye(m.shape[0])) for m in tower.levels)
    return Classification(
        normal=normal,
        self_adjoint=sa,
        unitary=un,
        direct_self_adjoint=normal and d_sa <= 2 * tol,
        direct_unitary=normal and d_un <= 2 * tol + tol * tol,
    )


@dataclass(frozen=True)
class SpectralMappingReport:
    image_spectrum: np.ndarray   # σ_loc(f(T))
    mapped_spectrum: np.ndarray  # f(σ_loc(T))
    distance: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.distance <= self.tol

    def to_dict(self):
        return {
            "hausdorff": self.distance,
            "tol": self.tol,
            "passed": self.passed,
            "spectrum_of_image": [[float(z.real), float(z.imag)] for z in self.image_spectrum],
            "image_of_spectrum": [[float(z.real), float(z.imag)] for z in self.mapped_spectrum],
        }


def check_spectral_mapping(tower: OperatorTower, f: FunctionSpec, tol: float = EIG_TOL,
                           normal_tol: float = NUM_TOL,
                           eig_tol: float = EIG_TOL) -> SpectralMappingReport:
    """Compare ``σ_loc(f(T))`` with ``f(σ_loc(T))`` in Hausdorff distance."""
    _require_normal(tower, normal_tol)
    image = local_spectrum(apply_function(tower, f, normal_tol, eig_tol), eig_tol, normal_tol)
    base = local_spectrum(tower, eig_tol, normal_tol)
    mapped = dedup(f(base.merged, eig_tol), eig_tol)
    return SpectralMappingReport(image.merged, mapped, hausdorff(image.merged, mapped), tol)
