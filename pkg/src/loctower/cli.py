"""
Command-line front end.

    loctower <subcommand> [input] [--fn SPEC] [--level K] [--tol X]
             [--coh-tol X] [--eig-tol X] [--out PATH] [--pretty]

Exit status: 0 on success, 2 on validation or numerical errors (a JSON error
object ``{code, message, context}`` is written instead of the result), 1 on
usage errors.
"""

import argparse
import json
import sys
from pathlib import Path

from . import io
from .character import enumerate_characters, gelfand, local_isometry_check
from .demos import DEMOS
from .errors import TowerError
from .funcalc import apply_function, check_spectral_mapping, classify, local_spectrum
from .functions import FunctionSpec, parse_shorthand
from .tower import COH_TOL, EIG_TOL, NUM_TOL, is_normal, restrict, seminorms

TOWER_COMMANDS = ("validate", "spectrum", "apply", "classify", "gelfand",
                  "characters", "isometry", "specmap")
NEEDS_FN = ("apply", "gelfand", "isometry", "specmap")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=_positive, default=None)
    common.add_argument("--coh-tol", type=_positive, default=COH_TOL)
    common.add_argument("--eig-tol", type=_positive, default=EIG_TOL)
    common.add_argument("--out", default=None, help="write result here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="prepend aligned tables")
    common.add_argument("--level", type=int, default=None)
    common.add_argument("--fn", default=None,
                        help="named:<name>, inline JSON, or a path to a JSON function spec")

    parser = _Parser(prog="loctower", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in TOWER_COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("input", help="tower file, or - for stdin")
    p = sub.add_parser("demo", parents=[common])
    p.add_argument("input", choices=sorted(DEMOS), metavar="NAME",
                   help=", ".join(sorted(DEMOS)))
    p.add_argument("--max-l", type=int, default=5)
    p.add_argument("--levels", type=int, default=None)
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def parse_fn(text: str) -> FunctionSpec:
    spec = parse_shorthand(text)
    if spec is not None:
        return spec
    if text.lstrip().startswith("{"):
        return io.load_spec(text)
    return io.load_spec(_read(text))


# -- pretty tables --------------------------------------------------------

def _fmt(x):
    if isinstance(x, float):
        return f"{x:.6g}"
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, float) for v in x):
        return _fmt_complex(x)
    return str(x)


def _fmt_complex(pair):
    re_, im = pair
    if im == 0:
        return f"{re_:.6g}"
    return f"{re_:.6g}{im:+.6g}i"


def table(headers, rows) -> str:
    cells = [[_fmt(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    line = lambda r: "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out += [line(r) for r in cells]
    return "\n".join(out)


def _pretty(command: str, result) -> str:
    if command == "spectrum":
        if "per_level" in result:
            rows = [[i + 1, ", ".join(_fmt_complex(z) for z in ev)]
                    for i, ev in enumerate(result["per_level"])]
            return table(["level", "eigenvalues"], rows)
        return table(["eigenvalue"], [[_fmt_complex(z)] for z in result["eigenvalues"]])
    if command == "characters":
        return table(["min_level", "value"], [[c["min_level"], _fmt_complex(c["value"])] for c in result])
    if command == "gelfand":
        return table(["min_level", "character", "transform"],
                     [[e["character"]["min_level"], _fmt_complex(e["character"]["value"]),
                       _fmt_complex(e["value"])] for e in result])
    if command == "isometry":
        return table(["level", "p", "q", "deviation"],
                     [[i + 1, p, q, d] for i, (p, q, d) in
                      enumerate(zip(result["p"], result["q"], result["deviation"]))])
    if command == "demo" and result.get("demo") == "noncontinuous-character":
        return table(["l", "n", "p_n(g_l)", "2/(4+l^2)", "1/l", "Phi(g_l)", "status"],
                     [[r["l"], r["n"], r["p_n"], r["expected"], r["bound"], r["phi"], r["status"]]
                      for r in result["rows"]])
    if command == "demo" and result.get("demo") == "number-matrix":
        return table(["level", "eigenvalues", "formula"],
                     [[r["level"], ", ".join(_fmt_complex(z) for z in r["eigenvalues"]),
                       "PASS" if r["matches_formula"] else "FAIL"] for r in result["per_level"]])
    if command == "demo" and result.get("demo") == "quotient-counterexample":
        return table(["n", "p_n(f-g)", "pi_n(f)=pi_n(g)"],
                     [[i + 1, p, q] for i, (p, q) in
                      enumerate(zip(result["p"], result["quotient_equal"]))])
    if command == "demo" and result.get("demo") == "exp-calculus":
        sm = result["spectral_mapping"]
        return table(["sigma(f(T))", "f(sigma(T))"],
                     [[_fmt_complex(a), _fmt_complex(b)]
                      for a, b in zip(sm["spectrum_of_image"], sm["image_of_spectrum"])])
    if isinstance(result, dict):
        return table(["key", "value"], [[k, v] for k, v in result.items()
                                        if not isinstance(v, (list, dict))])
    return ""


# -- dispatch -------------------------------------------------------------

def execute(args):
    """Run a parsed command and return its JSON-ready result."""
    tol = args.tol
    if args.command == "demo":
        fn = DEMOS[args.input]
        kwargs = {}
        if args.levels is not None:
            kwargs["levels"] = args.levels
        if args.input == "noncontinuous-character":
            kwargs["max_l"] = args.max_l
        return fn(**kwargs)

    tower = io.load_tower(_read(args.input), args.coh_tol)
    if args.command in NEEDS_FN:
        if args.fn is None:
            raise UsageError(f"{args.command} requires --fn")
        f = parse_fn(args.fn)
    ntol = NUM_TOL if tol is None else tol

    if args.command == "validate":
        out = {"valid": True, "dims": list(tower.dims),
               "seminorms": list(seminorms(tower).values)}
        cert = is_normal(tower, ntol)
        out["normal"] = cert.normal
        out["normality_deviation"] = cert.deviation
        if args.level is not None:
            out["level"] = args.level
            out["matrix"] = io.matrix_to_json(restrict(tower, args.level))
        return out
    if args.command == "spectrum":
        spec = local_spectrum(tower, args.eig_tol, ntol)
        if args.level is not None:
            restrict(tower, args.level)
            return {"level": args.level,
                    "eigenvalues": [io.complex_to_json(z) for z in spec.per_level[args.level - 1]]}
        return {"merged": [io.complex_to_json(z) for z in spec.merged],
                "per_level": [[io.complex_to_json(z) for z in ev] for ev in spec.per_level],
                "normal": spec.normal}
    if args.command == "apply":
        return io.tower_to_dict(apply_function(tower, f, ntol, args.eig_tol, args.coh_tol))
    if args.command == "classify":
        return classify(tower, ntol, args.eig_tol).to_dict()
    if args.command == "characters":
        return io.characters_to_json(enumerate_characters(tower, args.eig_tol, ntol))
    if args.command == "gelfand":
        return io.gelfand_to_json(gelfand(tower, f, args.eig_tol, ntol))
    if args.command == "isometry":
        return local_isometry_check(tower, f, 1e-8 if tol is None else tol,
                                    args.eig_tol).to_dict()
    if args.command == "specmap":
        return check_spectral_mapping(tower, f, EIG_TOL if tol is None else tol,
                                      NUM_TOL, args.eig_tol).to_dict()
    raise UsageError(f"unknown command {args.command}")  # pragma: no cover


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    out_path = None
    try:
        args = build_parser().parse_args(argv)
        out_path = args.out
        result = execute(args)
        text = io.dumps(result)
        if args.pretty:
            text = _pretty(args.command, result) + "\n\n" + io.dumps(result, indent=2)
        code = 0
    except UsageError as exc:
        print(f"loctower: error: {exc}", file=sys.stderr)
        return 1
    except TowerError as exc:
        text, code = json.dumps(exc.to_dict(), default=str), 2
    if out_path and code == 0:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    else:
        stdout.write(text + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
