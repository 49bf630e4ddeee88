"""
Characters of the commutative algebra generated by a normal tower.

Every character of ``A[T]`` factors through some level and is evaluation at
a point of that level's spectrum, so characters are stored as the pair
``(min_level, value)``: the spectral point and the first level containing it.
Elements of ``A[T]`` are written ``f(T)`` for a :class:`FunctionSpec` ``f``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import UnknownCharacter
from .funcalc import (
    LocalSpectrum,
    _require_normal,
    apply_function,
    diagonalize,
    local_spectrum,
    polynomial_calculus,
)
from .functions import FunctionSpec
from .spectra import nearest
from .tower import EIG_TOL, NUM_TOL, OperatorTower, _require_level, seminorms


@dataclass(frozen=True)
class Character:
    min_level: int
    value: complex

    def __call__(self, a: "AlgebraElement", tol: float = EIG_TOL) -> complex:
        return a.expr(self.value, tol)

    def to_dict(self):
        return {"min_level": self.min_level, "value": [float(self.value.real), float(self.value.imag)]}


@dataclass(frozen=True)
class AlgebraElement:
    """The element ``f(T)`` of ``A[T]``."""

    expr: FunctionSpec

    @classmethod
    def of(cls, f):
        return f if isinstance(f, cls) else cls(f)

    def times(self, other: "AlgebraElement", points=None) -> "AlgebraElement":
        return AlgebraElement(self.expr.product(other.expr, points))

    def star(self, points=None) -> "AlgebraElement":
        return AlgebraElement(self.expr.conjugate(points))


def _spectrum(tower, spectrum: Optional[LocalSpectrum], eig_tol, normal_tol):
    if spectrum is None:
        _require_normal(tower, normal_tol)
        spectrum = local_spectrum(tower, eig_tol, normal_tol)
    return spectrum


def enumerate_characters(tower: OperatorTower, eig_tol: float = EIG_TOL,
                         normal_tol: float = NUM_TOL,
                         spectrum: Optional[LocalSpectrum] = None) -> list:
    """One character per merged spectral point, in canonical spectral order."""
    spec = _spectrum(tower, spectrum, eig_tol, normal_tol)
    return [Character(spec.first_level(z), complex(z)) for z in spec.merged]


def _lookup(chars, phi: Character, tol: float) -> Character:
    for c in chars:
        if c.min_level == phi.min_level and abs(c.value - phi.value) <= tol:
            return c
    raise UnknownCharacter(
        f"no character at {phi.value} with min_level {phi.min_level}",
        min_level=phi.min_level, value=[phi.value.real, phi.value.imag],
    )


def factor_level(tower: OperatorTower, phi: Character, level: int,
                 eig_tol: float = EIG_TOL, normal_tol: float = NUM_TOL,
                 spectrum: Optional[LocalSpectrum] = None) -> bool:
    """Does ``phi`` factor through ``level``, i.e. is its value an
    eigenvalue of ``T_level``?"""
    _require_level(tower.chain, level)
    spec = _spectrum(tower, spectrum, eig_tol, normal_tol)
    _lookup(enumerate_characters(tower, eig_tol, spectrum=spec), phi, eig_tol)
    return bool(np.min(np.abs(spec.per_level[level - 1] - phi.value)) <= eig_tol)


def gelfand(tower: OperatorTower, a, eig_tol: float = EIG_TOL, normal_tol: float = NUM_TOL,
            spectrum: Optional[LocalSpectrum] = None) -> dict:
    """Gelfand transform of ``a = f(T)``: maps each character to ``f(λ)``."""
    a = AlgebraElement.of(a)
    spec = _spectrum(tower, spectrum, eig_tol, normal_tol)
    a.expr.check_coverage(spec.merged, eig_tol)
    chars = enumerate_characters(tower, eig_tol, spectrum=spec)
    return {c: c(a, eig_tol) for c in chars}


def gelfand_by_diagonalization(tower: OperatorTower, a, phi: Character,
                               normal_tol: float = NUM_TOL) -> complex:
    """Independent route for polynomial elements.

    Materialise ``a`` at level ``phi.min_level`` by matrix products, rotate
    it into the basis that diagonalises ``T`` there and read the diagonal
    entry belonging to the eigenvalue ``phi.value``.
    """
    a = AlgebraElement.of(a)
    level = phi.min_level
    p = polynomial_calculus(tower, a.expr, normal_tol).levels[level - 1]
    d, z = diagonalize(tower.levels[level - 1], level)
    i, _ = nearest(d, phi.value)
    return complex(z[:, i].conj() @ p @ z[:, i])


@dataclass(frozen=True)
class IsometryReport:
    operator_norms: tuple   # p_α(a) = ‖f(T)_α‖
    gelfand_norms: tuple    # q_α(Γ(a)) = max |Γ(a)(Φ)| over Φ through α
    rtol: float

    @property
    def deviations(self):
        return tuple(abs(p - q) for p, q in zip(self.operator_norms, self.gelfand_norms))

    @property
    def passed(self) -> bool:
        return all(
            _rel_close(p, q, self.rtol)
            for p, q in zip(self.operator_norms, self.gelfand_norms)
        )

    def to_dict(self):
        return {
            "p": list(self.operator_norms),
            "q": list(self.gelfand_norms),
            "deviation": list(self.deviations),
            "rtol": self.rtol,
            "passed": self.passed,
        }


# absolute floor for comparisons where both sides vanish
ZERO_FLOOR = 1e-12


def _rel_close(p, q, rtol):
    return abs(p - q) <= max(rtol * max(abs(p), abs(q)), ZERO_FLOOR)


def local_isometry_check(tower: OperatorTower, a, rtol: float = 1e-8,
                         eig_tol: float = EIG_TOL, normal_tol: float = NUM_TOL) -> IsometryReport:
    """Compare the level norms of ``f(T)`` with level sup-norms of ``Γ(a)``."""
    a = AlgebraElement.of(a)
    spec = _spectrum(tower, None, eig_tol, normal_tol)
    transform = gelfand(tower, a, eig_tol, spectrum=spec)
    p = seminorms(apply_function(tower, a.expr, normal_tol, eig_tol)).values
    q = []
    for level in range(1, len(tower) + 1):
        vals = [abs(v) for c, v in transform.items() if c.min_level <= level]
        q.append(max(vals))
    return IsometryReport(tuple(p), tuple(q), rtol)


def kernel_contains(tower: OperatorTower, phi: Character, a, tol: float = NUM_TOL,
                    eig_tol: float = EIG_TOL, normal_tol: float = NUM_TOL,
                    spectrum: Optional[LocalSpectrum] = None) -> bool:
    """Is ``a`` in the maximal ideal ``ker(phi)``?"""
    a = AlgebraElement.of(a)
    spec = _spectrum(tower, spectrum, eig_tol, normal_tol)
    phi = _lookup(enumerate_characters(tower, eig_tol, spectrum=spec), phi, eig_tol)
    a.expr.check_coverage(spec.merged, eig_tol)
    return abs(phi(a, eig_tol)) <= tol
