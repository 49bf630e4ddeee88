"""
Grid model of the locally C*-algebras ``C(R)`` and ``C([0, ∞))``.

Two interval chains are supported:

``symmetric``
    level ``n`` is ``[-n, n]``; ``C(R)`` with ``p_n(f) = sup_{[-n,n]} |f|``.
``halfline``
    level ``n`` is ``[1/2, n]``; ``C([0, ∞))`` with seminorms that never see
    the points of ``[0, 1/2)``.

Functions are sampled on the uniform level-``N`` grid of spacing
``1 / samples_per_unit``; interval endpoints are always grid points, so the
level grids are nested and sup-norms of monotone functions are exact.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import ChainMismatch, InvalidChain, LevelOutOfRange, OutOfDomain

HALFLINE_LEFT = 0.5
DEFAULT_SAMPLES_PER_UNIT = 1000
MODES = ("symmetric", "halfline")


@dataclass(frozen=True)
class IntervalChain:
    mode: str
    N: int
    samples_per_unit: int = DEFAULT_SAMPLES_PER_UNIT

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidChain(f"unknown mode {self.mode!r}", mode=self.mode)
        if self.N < 1:
            raise InvalidChain("N must be at least 1", N=self.N)
        if self.samples_per_unit < 10:
            raise InvalidChain("samples_per_unit must be at least 10",
                               samples_per_unit=self.samples_per_unit)

    def interval(self, n: int):
        self._check_level(n)
        if self.mode == "symmetric":
            return (-float(n), float(n))
        return (HALFLINE_LEFT, float(n))

    def _check_level(self, n: int):
        if not 1 <= n <= self.N:
            raise LevelOutOfRange(f"level {n} outside 1..{self.N}", level=n, levels=self.N)

    @cached_property
    def grid(self) -> np.ndarray:
        lo, hi = self.interval(self.N)
        count = int(math.floor((hi - lo) * self.samples_per_unit + 1e-9))
        pts = lo + np.arange(count + 1) / self.samples_per_unit
        ends = [float(n) for n in range(1, self.N + 1)] + [lo]
        if self.mode == "symmetric":
            ends += [-float(n) for n in range(1, self.N + 1)]
        pts = np.concatenate([pts, ends])
        return np.unique(np.round(pts, 12))

    def mask(self, n: int) -> np.ndarray:
        lo, hi = self.interval(n)
        g = self.grid
        return (g >= lo - 1e-12) & (g <= hi + 1e-12)

    def min_level(self, x: float) -> int:
        """Smallest level whose interval contains ``x``."""
        lo, hi = self.interval(self.N)
        if not lo <= x <= hi:
            raise OutOfDomain(
                f"{x} lies outside every level interval of the {self.mode} chain",
                x=x, mode=self.mode,
            )
        return max(1, math.ceil(abs(x) - 1e-12))


@dataclass(frozen=True, eq=False)
class GridFunction:
    chain: IntervalChain
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128)
        if v.shape != self.chain.grid.shape:
            raise InvalidChain("sample count does not match the chain grid",
                               expected=int(self.chain.grid.size), got=int(v.size))
        if not np.all(np.isfinite(v)):
            raise OutOfDomain("grid function has non-finite samples")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def sample(cls, chain: IntervalChain, fn: Callable):
        return cls(chain, np.asarray(fn(chain.grid), dtype=np.complex128))

    def _other(self, other):
        if isinstance(other, GridFunction):
            if other.chain != self.chain:
                raise ChainMismatch("grid functions live on different chains")
            return other.values
        return complex(other)

    def __add__(self, other):
        return GridFunction(self.chain, self.values + self._other(other))

    def __sub__(self, other):
        return GridFunction(self.chain, self.values - self._other(other))

    def __mul__(self, other):
        return GridFunction(self.chain, self.values * self._other(other))

    __radd__ = __add__
    __rmul__ = __mul__

    def conj(self):
        return GridFunction(self.chain, self.values.conj())


def g_ell(ell: int):
    """``t ↦ 1 / (2 + t ℓ²)``: decreasing on ``[0, ∞)`` with value 1/2 at 0."""
    return lambda t: 1.0 / (2.0 + np.asarray(t, dtype=float) * ell * ell)


def clamp1(t):
    return np.clip(np.asarray(t, dtype=float), -1.0, 1.0)


def generator(spec: str) -> Callable:
    """Named generators: ``identity``, ``clamp1``, ``gl:<ℓ>``,
    ``const:<re>,<im>``, ``exp``."""
    if spec == "identity":
        return lambda t: np.asarray(t, dtype=float)
    if spec == "clamp1":
        return clamp1
    if spec == "exp":
        return lambda t: np.exp(np.asarray(t, dtype=float))
    if spec.startswith("gl:"):
        return g_ell(int(spec[3:]))
    if spec.startswith("const:"):
        re_, _, im_ = spec[6:].partition(",")
        c = complex(float(re_), float(im_ or 0.0))
        return lambda t: np.full(np.shape(t), c)
    raise ValueError(f"unknown generator {spec!r}")


def make_function(chain: IntervalChain, spec: str) -> GridFunction:
    return GridFunction.sample(chain, generator(spec))


def seminorm_p(f: GridFunction, n: int) -> float:
    """Grid sup of ``|f|`` over the level-``n`` interval."""
    return float(np.max(np.abs(f.values[f.chain.mask(n)])))


def quotient_equal(f: GridFunction, g: GridFunction, n: int, tol: float = 1e-9) -> bool:
    """``π_n(f) = π_n(g)``, i.e. ``p_n(f - g) ≤ tol``."""
    return seminorm_p(f - g, n) <= tol


@dataclass(frozen=True)
class EvaluationCharacter:
    """Point evaluation ``f ↦ f(x)``, induced from level ``min_level``.

    On a grid it reads the nearest sample; for an ``L``-Lipschitz function
    the error is at most ``L / (2 · samples_per_unit)``.
    """

    chain: IntervalChain
    x: float
    min_level: int

    def __call__(self, f: GridFunction) -> complex:
        if f.chain != self.chain:
            raise ChainMismatch("evaluation character and function use different chains")
        i = int(np.argmin(np.abs(self.chain.grid - self.x)))
        return complex(f.values[i])


def evaluation_character(chain: IntervalChain, x: float) -> EvaluationCharacter:
    return EvaluationCharacter(chain, float(x), chain.min_level(x))


@dataclass(frozen=True)
class WitnessRow:
    ell: int
    level: int
    seminorm: float
    expected: float
    bound: float
    phi: float

    @property
    def passed(self) -> bool:
        return (self.seminorm < self.bound
                and abs(self.seminorm - self.expected) <= 1e-6
                and self.phi == 0.5)

    def to_dict(self):
        return {
            "l": self.ell,
            "n": self.level,
            "p_n": self.seminorm,
            "expected": self.expected,
            "bound": self.bound,
            "phi": self.phi,
            "status": "PASS" if self.passed else "FAIL",
        }


def noncontinuity_witness(max_l: int, N: int = 10,
                          samples_per_unit: int = DEFAULT_SAMPLES_PER_UNIT) -> list:
    """Tabulate ``p_n(g_ℓ)`` against ``1/ℓ`` on the half-line chain.

    The functional ``Φ(f) = f(0)`` is not induced by any level (0 is outside
    every ``[1/2, n]``), so ``Φ(g_ℓ) = g_ℓ(0) = 1/2`` is computed from the
    closed form. Each row holds although ``p_n(g_ℓ) → 0``: no seminorm ball
    is mapped into ``Φ^{-1}(B(0, 1/2))``.
    """
    chain = IntervalChain("halfline", N, samples_per_unit)
    rows = []
    for ell in range(1, max_l + 1):
        f = GridFunction.sample(chain, g_ell(ell))
        phi = float(g_ell(ell)(0.0))
        for n in range(1, N + 1):
            rows.append(WitnessRow(ell, n, seminorm_p(f, n), 2.0 / (4.0 + ell * ell), 1.0 / ell, phi))
    return rows
