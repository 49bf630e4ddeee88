"""
JSON interchange formats.

Complex numbers are ``[re, im]`` pairs. Floats are written with Python's
shortest round-trip repr, so ``parse(serialize(x))`` is bit-exact. NaN and
Infinity tokens are rejected on input.

Tower::

    {"dims": [d1, ..., dN], "levels": [matrix, ...]}

where each matrix is a list of rows of ``[re, im]`` pairs (a flat row-major
list of ``d*d`` pairs is also accepted).
"""

import json

import numpy as np

from .character import Character
from .errors import InvalidFunctionSpec, NonFiniteEntry, ParseError
from .function_algebra import GridFunction, IntervalChain
from .functions import FunctionSpec, Term
from .tower import COH_TOL, IndexChain, OperatorTower, validate_tower


def _reject_constant(token):
    raise NonFiniteEntry(f"non-finite literal {token!r} is not allowed", token=token)


def loads(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed input: {exc}", line=exc.lineno, column=exc.colno) from None


def dumps(obj, indent=None) -> str:
    return json.dumps(obj, indent=indent, allow_nan=False, ensure_ascii=False)


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(pair) -> complex:
    if (not isinstance(pair, (list, tuple)) or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
        raise ParseError(f"expected [re, im] pair, got {pair!r}")
    z = complex(float(pair[0]), float(pair[1]))
    if not np.isfinite(z):
        raise NonFiniteEntry("non-finite complex entry", value=[str(pair[0]), str(pair[1])])
    return z


# -- towers ---------------------------------------------------------------

def matrix_to_json(m) -> list:
    return [[complex_to_json(z) for z in row] for row in np.asarray(m)]


def matrix_from_json(data, d: int) -> np.ndarray:
    if not isinstance(data, list):
        raise ParseError("matrix must be an array")
    if len(data) == d and all(isinstance(r, list) and r and isinstance(r[0], list) for r in data):
        rows = data
    elif len(data) == d * d:
        rows = [data[i * d:(i + 1) * d] for i in range(d)]
    else:
        rows = data
    out = [[complex_from_json(z) for z in row] for row in rows]
    try:
        return np.array(out, dtype=np.complex128).reshape(len(out), -1) if out else np.zeros((0, 0))
    except ValueError:
        raise ParseError("ragged matrix rows") from None


def tower_to_dict(tower: OperatorTower) -> dict:
    return {"dims": list(tower.dims), "levels": [matrix_to_json(m) for m in tower.levels]}


def tower_from_dict(data, tol: float = COH_TOL) -> OperatorTower:
    if not isinstance(data, dict) or "dims" not in data or "levels" not in data:
        raise ParseError('tower needs "dims" and "levels"')
    chain = IndexChain(data["dims"])
    levels = data["levels"]
    if not isinstance(levels, list):
        raise ParseError('"levels" must be an array')
    dims = list(chain.dims) + [0] * max(0, len(levels) - len(chain))
    return validate_tower(chain, [matrix_from_json(m, d) for m, d in zip(levels, dims)], tol)


def dump_tower(tower: OperatorTower) -> str:
    return dumps(tower_to_dict(tower))


def load_tower(text: str, tol: float = COH_TOL) -> OperatorTower:
    return tower_from_dict(loads(text), tol)


# -- function specs -------------------------------------------------------

def spec_to_dict(f: FunctionSpec) -> dict:
    if f.kind == "polynomial":
        return {"kind": "polynomial",
                "terms": [{"j": t.j, "k": t.k, "coeff": complex_to_json(t.coeff)} for t in f.terms]}
    if f.kind == "named":
        return {"kind": "named", "name": f.name}
    return {"kind": "table",
            "points": [{"z": complex_to_json(p), "fz": complex_to_json(v)}
                       for p, v in zip(f.points, f.values)]}


def spec_from_dict(data) -> FunctionSpec:
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidFunctionSpec('function spec needs a "kind"')
    kind = data["kind"]
    if kind == "polynomial":
        terms = []
        for t in data.get("terms", []):
            j, k = t.get("j"), t.get("k")
            if not isinstance(j, int) or not isinstance(k, int):
                raise InvalidFunctionSpec("term powers must be integers", term=t)
            terms.append(Term(j, k, complex_from_json(t.get("coeff"))))
        return FunctionSpec.polynomial(terms)
    if kind == "named":
        name = data.get("name")
        if not isinstance(name, str):
            raise InvalidFunctionSpec('named spec needs a string "name"')
        return FunctionSpec.named(name)
    if kind == "table":
        pts = data.get("points", [])
        return FunctionSpec.table([complex_from_json(p["z"]) for p in pts],
                                  [complex_from_json(p["fz"]) for p in pts])
    raise InvalidFunctionSpec(f"unknown function kind {kind!r}", kind=kind)


def dump_spec(f: FunctionSpec) -> str:
    return dumps(spec_to_dict(f))


def load_spec(text: str) -> FunctionSpec:
    return spec_from_dict(loads(text))


# -- characters -----------------------------------------------------------

def characters_to_json(chars) -> list:
    return [c.to_dict() for c in chars]


def characters_from_json(data) -> list:
    return [Character(int(c["min_level"]), complex_from_json(c["value"])) for c in data]


def gelfand_to_json(transform: dict) -> list:
    return [{"character": c.to_dict(), "value": complex_to_json(v)} for c, v in transform.items()]


# -- grid functions -------------------------------------------------------

def grid_to_dict(f: GridFunction) -> dict:
    c = f.chain
    return {"mode": c.mode, "N": c.N, "samples_per_unit": c.samples_per_unit,
            "values": [complex_to_json(z) for z in f.values]}


def grid_from_dict(data) -> GridFunction:
    try:
        chain = IntervalChain(data["mode"], int(data["N"]), int(data["samples_per_unit"]))
        values = [complex_from_json(z) for z in data["values"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad grid function: {exc}") from None
    return GridFunction(chain, np.array(values, dtype=np.complex128))


def dump_grid(f: GridFunction) -> str:
    return dumps(grid_to_dict(f))


def load_grid(text: str) -> GridFunction:
    return grid_from_dict(loads(text))
