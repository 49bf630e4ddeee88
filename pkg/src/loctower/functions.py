"""
Function specifications for the continuous functional calculus.

A :class:`FunctionSpec` is a closed, serialisable description of a
continuous function on a finite set of complex points:

``polynomial``
    ``Σ c · z^j · conj(z)^k`` given as a list of :class:`Term`.
``named``
    one of ``identity``, ``conj``, ``exp``, ``re``, ``im``, ``abs2`` or
    ``const(c)`` with ``c`` any literal accepted by :class:`complex`.
``table``
    explicit ``(point, value)`` pairs; evaluation looks up the nearest point
    and fails if none lies within the matching tolerance.
"""

import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidFunctionSpec, TableCoverageGap
from .spectra import nearest
from .tower import EIG_TOL

NAMED = ("identity", "conj", "exp", "re", "im", "abs2", "const")

_CONST_RE = re.compile(r"^const\((.+)\)$")


@dataclass(frozen=True)
class Term:
    j: int
    k: int
    coeff: complex

    def __post_init__(self):
        if self.j < 0 or self.k < 0:
            raise InvalidFunctionSpec("polynomial powers must be non-negative", j=self.j, k=self.k)


def _named_eval(name: str, const: complex, z: np.ndarray) -> np.ndarray:
    if name == "identity":
        return z.copy()
    if name == "conj":
        return z.conj()
    if name == "exp":
        return np.exp(z)
    if name == "re":
        return z.real.astype(np.complex128)
    if name == "im":
        return z.imag.astype(np.complex128)
    if name == "abs2":
        return (z * z.conj()).real.astype(np.complex128)
    return np.full(z.shape, const, dtype=np.complex128)


@dataclass(frozen=True)
class FunctionSpec:
    kind: str
    terms: tuple = ()
    name: str = ""
    const: complex = 0j
    points: tuple = ()
    values: tuple = ()

    # -- constructors -----------------------------------------------------
    @classmethod
    def polynomial(cls, terms):
        """``terms`` is an iterable of :class:`Term` or ``(j, k, coeff)``."""
        out = []
        for t in terms:
            if not isinstance(t, Term):
                j, k, c = t
                t = Term(int(j), int(k), complex(c))
            out.append(t)
        return cls("polynomial", terms=tuple(out))

    @classmethod
    def named(cls, name: str):
        name = name.strip()
        m = _CONST_RE.match(name)
        if m:
            try:
                c = complex(m.group(1).replace(" ", ""))
            except ValueError:
                raise InvalidFunctionSpec(f"bad constant in {name!r}", name=name) from None
            return cls("named", name=name, const=c)
        if name not in NAMED or name == "const":
            raise InvalidFunctionSpec(f"unknown named function {name!r}", name=name, known=list(NAMED))
        return cls("named", name=name)

    @classmethod
    def constant(cls, c: complex):
        c = complex(c)
        return cls("named", name=f"const({c.real!r}{c.imag:+}j)", const=c)

    @classmethod
    def table(cls, points, values, tol: float = EIG_TOL):
        pts = tuple(complex(p) for p in points)
        vals = tuple(complex(v) for v in values)
        if len(pts) != len(vals):
            raise InvalidFunctionSpec("table points and values differ in length")
        for i, p in enumerate(pts):
            for q in pts[:i]:
                if abs(p - q) <= tol:
                    raise InvalidFunctionSpec(
                        "table points must be pairwise distinct", point=[p.real, p.imag]
                    )
        return cls("table", points=pts, values=vals)

    @classmethod
    def tabulate(cls, f: "FunctionSpec", points, tol: float = EIG_TOL):
        """Table of ``f`` sampled on ``points``."""
        pts = np.asarray(points, dtype=np.complex128)
        return cls.table(pts, f(pts, tol), tol)

    # -- evaluation -------------------------------------------------------
    @property
    def is_identity(self) -> bool:
        return self.kind == "named" and self.name == "identity"

    def __call__(self, z, tol: float = EIG_TOL):
        """Evaluate at a scalar or array of complex points."""
        scalar = np.ndim(z) == 0
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        if self.kind == "polynomial":
            out = np.zeros(z.shape, dtype=np.complex128)
            zc = z.conj()
            for t in self.terms:
                out += t.coeff * z**t.j * zc**t.k
        elif self.kind == "named":
            out = _named_eval(self.name if not self.name.startswith("const") else "const",
                              self.const, z)
        elif self.kind == "table":
            pts = np.asarray(self.points, dtype=np.complex128)
            vals = np.asarray(self.values, dtype=np.complex128)
            out = np.empty(z.shape, dtype=np.complex128)
            for idx, w in np.ndenumerate(z):
                i, d = nearest(pts, w)
                if d > tol:
                    raise TableCoverageGap(
                        f"table has no point within {tol:g} of {w}",
                        point=[float(w.real), float(w.imag)],
                    )
                out[idx] = vals[i]
        else:
            raise InvalidFunctionSpec(f"unknown kind {self.kind!r}")
        return complex(out[0]) if scalar else out

    def check_coverage(self, points, tol: float = EIG_TOL):
        """Raise :class:`TableCoverageGap` if a point is not covered."""
        if self.kind == "table":
            self(np.asarray(points, dtype=np.complex128), tol)

    # -- algebra ----------------------------------------------------------
    def product(self, other: "FunctionSpec", points=None, tol: float = EIG_TOL):
        """Pointwise product. Polynomials multiply symbolically; anything
        else is tabulated on ``points``."""
        if self.kind == "polynomial" and other.kind == "polynomial":
            acc = {}
            for a in self.terms:
                for b in other.terms:
                    key = (a.j + b.j, a.k + b.k)
                    acc[key] = acc.get(key, 0j) + a.coeff * b.coeff
            return FunctionSpec.polynomial((j, k, c) for (j, k), c in sorted(acc.items()))
        pts = self._points_for(other, points)
        return FunctionSpec.table(pts, self(pts, tol) * other(pts, tol), tol)

    def conjugate(self, points=None, tol: float = EIG_TOL):
        """The function ``conj ∘ f``."""
        if self.kind == "polynomial":
            return FunctionSpec.polynomial((t.k, t.j, np.conj(t.coeff)) for t in self.terms)
        if self.kind == "table":
            return FunctionSpec.table(self.points, [np.conj(v) for v in self.values], tol)
        pts = self._points_for(None, points)
        return FunctionSpec.table(pts, np.conj(self(pts, tol)), tol)

    def _points_for(self, other, points):
        if points is not None:
            return np.asarray(points, dtype=np.complex128)
        for spec in (self, other):
            if spec is not None and spec.kind == "table":
                return np.asarray(spec.points, dtype=np.complex128)
        raise InvalidFunctionSpec("points are required to combine non-polynomial functions")


def parse_shorthand(text: str) -> Optional[FunctionSpec]:
    """``named:<name>`` shorthand used on the command line, else ``None``."""
    if text.startswith("named:"):
        return FunctionSpec.named(text[len("named:"):])
    return None
