"""Worked examples reproduced as data: each demo returns a JSON-ready dict."""

import numpy as np

from . import io
from .character import enumerate_characters
from .funcalc import apply_function, check_spectral_mapping, classify, local_spectrum
from .function_algebra import (
    IntervalChain,
    evaluation_character,
    make_function,
    noncontinuity_witness,
    quotient_equal,
    seminorm_p,
)
from .functions import FunctionSpec
from .tower import diagonal_tower, number_matrix_tower, seminorms


def _pairs(values):
    return [io.complex_to_json(z) for z in values]


def number_matrix_level_spectrum(n: int) -> list:
    """``{1, 1/2, 3, ..., 2m-1}`` for ``n = 2m-1`` and the same set with
    ``1/(2m)`` appended for ``n = 2m``."""
    m = (n + 1) // 2
    odd = [2.0 * k - 1 for k in range(1, m + 1)]
    halves = [1.0 / (2 * k) for k in range(1, n // 2 + 1)]
    return sorted(odd + halves)


def number_matrix(levels: int = 6) -> dict:
    tower = number_matrix_tower(levels)
    spec = local_spectrum(tower)
    per_level = []
    for n, ev in enumerate(spec.per_level, start=1):
        expected = number_matrix_level_spectrum(n)
        match = bool(np.allclose(ev.real, expected, rtol=0, atol=1e-8)
                     and np.all(np.abs(ev.imag) <= 1e-8))
        per_level.append({"level": n, "eigenvalues": _pairs(ev), "matches_formula": match})
    return {
        "demo": "number-matrix",
        "tower": io.tower_to_dict(tower),
        "per_level": per_level,
        "merged": _pairs(spec.merged),
        "characters": io.characters_to_json(enumerate_characters(tower, spectrum=spec)),
        "seminorms": list(seminorms(tower).values),
        "classification": classify(tower).to_dict(),
    }


def multiplication_tower(levels: int = 3):
    """Diagonal model of ``h ↦ x h(x)``: level ``n`` holds the integer
    sample points of ``[-n, n]``."""
    entries = [-1.0, 0.0, 1.0]
    for n in range(2, levels + 1):
        entries += [-float(n), float(n)]
    dims = [2 * n + 1 for n in range(1, levels + 1)]
    return diagonal_tower(dims, entries)


def exp_calculus(levels: int = 3) -> dict:
    tower = multiplication_tower(levels)
    f = FunctionSpec.named("exp")
    image = apply_function(tower, f)
    report = check_spectral_mapping(tower, f)
    x = np.diag(tower.top).real
    rel = np.abs(np.diag(image.top) - np.exp(x)) / np.exp(x)
    return {
        "demo": "exp-calculus",
        "tower": io.tower_to_dict(tower),
        "image": io.tower_to_dict(image),
        "max_relative_error": float(rel.max()),
        "spectral_mapping": report.to_dict(),
    }


def noncontinuous_character(max_l: int = 5, levels: int = 10) -> dict:
    rows = noncontinuity_witness(max_l, levels)
    chain = IntervalChain("halfline", levels)
    return {
        "demo": "noncontinuous-character",
        "left_endpoint": chain.interval(1)[0],
        "rows": [r.to_dict() for r in rows],
        "all_pass": all(r.passed for r in rows),
    }


def quotient_counterexample(levels: int = 3) -> dict:
    chain = IntervalChain("symmetric", max(levels, 2))
    f = make_function(chain, "identity")
    g = make_function(chain, "clamp1")
    at2 = evaluation_character(chain, 2.0)
    return {
        "demo": "quotient-counterexample",
        "p": [seminorm_p(f - g, n) for n in range(1, chain.N + 1)],
        "quotient_equal": [quotient_equal(f, g, n) for n in range(1, chain.N + 1)],
        "f_at_2": io.complex_to_json(at2(f)),
        "g_at_2": io.complex_to_json(at2(g)),
        "difference_at_2": abs(at2(f) - at2(g)),
        "evaluation_min_level": at2.min_level,
    }


DEMOS = {
    "number-matrix": number_matrix,
    "exp-calculus": exp_calculus,
    "noncontinuous-character": noncontinuous_character,
    "quotient-counterexample": quotient_counterexample,
}
