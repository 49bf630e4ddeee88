"""Exit criteria. Each test records a PASS/FAIL line that the terminal
summary prints (see conftest)."""

import io as _io
import time

import numpy as np

from conftest import ACCEPTANCE
from loctower import io
from loctower.character import (
    AlgebraElement,
    enumerate_characters,
    factor_level,
    gelfand,
    gelfand_by_diagonalization,
    local_isometry_check,
)
from loctower.cli import run
from loctower.demos import DEMOS, multiplication_tower, number_matrix_level_spectrum
from loctower.funcalc import (
    apply_function,
    check_spectral_mapping,
    classify,
    local_spectrum,
    polynomial_calculus,
)
from loctower.function_algebra import (
    IntervalChain,
    evaluation_character,
    make_function,
    noncontinuity_witness,
    seminorm_p,
)
from loctower.functions import FunctionSpec
from loctower.sampling import KINDS, planted_normal_tower, random_polynomial
from loctower.spectra import hausdorff, multiset_contains
from loctower.tower import (
    COH_TOL,
    add,
    adjoint,
    compose,
    identity_tower,
    number_matrix_tower,
    scale,
    seminorms,
    validate_tower,
)

N_INSTANCES = 500
EIG_TOL = 1e-8
REL = 1e-8


def record(key, ok, detail):
    ACCEPTANCE[key] = (bool(ok), detail)
    assert ok, detail


def level_gap(s, t):
    return max(float(np.max(np.abs(a - b))) for a, b in zip(s.levels, t.levels))


def rel_close(p, q, rtol=REL):
    return abs(p - q) <= max(rtol * max(abs(p), abs(q)), 1e-12)


# -- criterion 1 ----------------------------------------------------------

def test_1_number_matrix_golden():
    start = time.perf_counter()
    tower = number_matrix_tower(6)
    spec = local_spectrum(tower, EIG_TOL)
    elapsed = time.perf_counter() - start

    expected_merged = np.array([1, 1 / 2, 3, 1 / 4, 5, 1 / 6])
    ok = spec.merged.size == 6 and hausdorff(spec.merged, expected_merged) <= EIG_TOL
    for n, ev in enumerate(spec.per_level, start=1):
        formula = np.array(number_matrix_level_spectrum(n))
        ok &= ev.size == formula.size and hausdorff(ev, formula) <= EIG_TOL
        ok &= multiset_contains(formula, ev, EIG_TOL)
    ok &= elapsed < 0.1
    record(1, ok, f"number-matrix spectra match, runtime {elapsed * 1e3:.1f} ms")


# -- criterion 2 ----------------------------------------------------------

def test_2_exp_calculus_golden():
    start = time.perf_counter()
    tower = multiplication_tower(4)
    f = FunctionSpec.named("exp")
    image = apply_function(tower, f)
    report = check_spectral_mapping(tower, f, tol=1e-8)
    elapsed = time.perf_counter() - start

    worst = 0.0
    for level, out in zip(tower.levels, image.levels):
        x = np.diag(level).real
        expected = np.diag(np.exp(x))
        worst = max(worst, float(np.max(np.abs(out - expected) / np.exp(x).max())))
        worst = max(worst, float(np.max(np.abs(np.diag(out) - np.exp(x)) / np.exp(x))))
    ok = worst <= 1e-10 and report.passed and report.distance <= 1e-8 and elapsed < 0.1
    record(2, ok, f"exp relative error {worst:.2e}, Hausdorff {report.distance:.2e}, "
                  f"runtime {elapsed * 1e3:.1f} ms")


# -- criterion 3 ----------------------------------------------------------

def test_3_noncontinuity_witness():
    start = time.perf_counter()
    rows = noncontinuity_witness(10, N=10)
    elapsed = time.perf_counter() - start
    ok = len(rows) == 100 and elapsed < 1.0
    worst = 0.0
    for r in rows:
        oracle = 2 / (4 + r.ell**2)
        worst = max(worst, abs(r.seminorm - oracle))
        ok &= abs(r.seminorm - oracle) <= 1e-6 and r.seminorm < 1 / r.ell and r.phi == 0.5
    record(3, ok, f"100 rows, max |p_n - 2/(4+l^2)| = {worst:.1e}, runtime {elapsed * 1e3:.0f} ms")


# -- criterion 4 ----------------------------------------------------------

def test_4_quotient_counterexample():
    start = time.perf_counter()
    chain = IntervalChain("symmetric", 3)
    f, g = make_function(chain, "identity"), make_function(chain, "clamp1")
    p1 = seminorm_p(f - g, 1)
    at2 = evaluation_character(chain, 2.0)
    diff = abs(at2(f) - at2(g))
    elapsed = time.perf_counter() - start
    ok = p1 <= 1e-9 and diff == 1.0 and at2.min_level == 2 and elapsed < 0.1
    record(4, ok, f"p1(f-g) = {p1:g}, |f(2)-g(2)| = {diff:g}, runtime {elapsed * 1e3:.1f} ms")


# -- criteria 5, 6, 7: randomized instances --------------------------------

def instance(seed):
    rng = np.random.default_rng(seed)
    kind = KINDS[seed % len(KINDS)]
    planted = planted_normal_tower(rng, kind=kind)
    other = planted_normal_tower(rng, dims=planted.tower.dims, kind="general")
    poly_f = FunctionSpec.polynomial(random_polynomial(rng))
    poly_g = FunctionSpec.polynomial(random_polynomial(rng))
    return rng, planted, other, poly_f, poly_g


def property_failures(seed):
    """Criterion 5 checks on one instance; returns failure messages."""
    rng, planted, other, f, g = instance(seed)
    t, s = planted.tower, other.tower
    fails = []

    def check(ok, what):
        if not ok:
            fails.append(f"seed {seed}: {what}")

    spec = local_spectrum(t, EIG_TOL)
    pts = spec.merged
    table = FunctionSpec.table(pts, rng.standard_normal(pts.size) + 1j * rng.standard_normal(pts.size))

    # coherence closure under algebra and calculus
    for name, r in [("adjoint", adjoint(t)), ("add", add(t, s)), ("scale", scale(0.7 - 2j, t)),
                    ("compose", compose(t, s)), ("f(T)", apply_function(t, f)),
                    ("table(T)", apply_function(t, table))]:
        try:
            validate_tower(r.chain, r.levels, COH_TOL)
        except Exception as exc:
            check(False, f"{name} not coherent: {exc}")

    # C*-seminorm laws
    pt, ps = np.array(seminorms(t).values), np.array(seminorms(s).values)
    check(np.allclose(seminorms(identity_tower(t.dims)).values, 1, rtol=0, atol=1e-15), "p(1) = 1")
    check(np.all(np.array(seminorms(compose(s, t)).values) <= ps * pt + 1e-9), "submultiplicative")
    check(np.allclose(seminorms(adjoint(t)).values, pt, rtol=1e-9, atol=0), "p(T*) = p(T)")
    check(np.allclose(seminorms(compose(adjoint(t), t)).values, pt**2, rtol=1e-9, atol=1e-12),
          "p(T*T) = p(T)^2")
    check(seminorms(t).is_upward_filtered(), "upward filtered")

    # spectral inclusion
    check(spec.is_nested(), "sigma(T_a) in sigma(T_b)")

    # calculus: homomorphism, star, unit
    for h in (f, table):
        fh = apply_function(t, h.product(g, pts))
        check(level_gap(fh, compose(apply_function(t, h), apply_function(t, g))) <= 1e-8,
              f"homomorphism ({h.kind})")
        check(level_gap(apply_function(t, h.conjugate(pts)), adjoint(apply_function(t, h))) <= 1e-8,
              f"star ({h.kind})")
    check(level_gap(apply_function(t, FunctionSpec.named("const(1)")), identity_tower(t.dims)) <= 1e-8,
          "unit")

    # calculus local isometry
    for h in (f, table):
        norms = seminorms(apply_function(t, h)).values
        sups = [float(np.max(np.abs(h(ev)))) for ev in spec.per_level]
        check(all(rel_close(a, b) for a, b in zip(norms, sups)), f"calculus isometry ({h.kind})")

    # spectral mapping
    for h in (f, table, FunctionSpec.named("exp")):
        check(check_spectral_mapping(t, h, tol=1e-7).passed, f"spectral mapping ({h.kind})")

    # Gelfand multiplicativity and local isometry
    a, b = AlgebraElement(f), AlgebraElement(table)
    ga, gb = gelfand(t, a, spectrum=spec), gelfand(t, b, spectrum=spec)
    gab = gelfand(t, a.times(b, pts), spectrum=spec)
    gstar = gelfand(t, a.star(pts), spectrum=spec)
    check(all(abs(gab[c] - ga[c] * gb[c]) <= 1e-8 for c in ga), "Gelfand multiplicative")
    check(all(abs(gstar[c] - np.conj(ga[c])) <= 1e-8 for c in ga), "Gelfand star")
    check(local_isometry_check(t, a, rtol=REL).passed, "Gelfand isometry (polynomial)")
    check(local_isometry_check(t, b, rtol=REL).passed, "Gelfand isometry (table)")

    # classification by spectrum and by norms
    c = classify(t)
    vals = planted.values
    check(c.consistent, "classify routes agree")
    check(c.self_adjoint == bool(np.all(np.abs(vals.imag) <= 1e-12)), "self-adjoint iff real spectrum")
    check(c.unitary == bool(np.allclose(np.abs(vals), 1, rtol=0, atol=1e-12)),
          "unitary iff spectrum on circle")
    return fails


def character_failures(seed):
    """Criterion 6 checks on one instance."""
    _, planted, _, _, _ = instance(seed)
    t = planted.tower
    spec = local_spectrum(t, EIG_TOL)
    chars = enumerate_characters(t, spectrum=spec)
    fails = []
    if len(chars) != spec.merged.size or hausdorff([c.value for c in chars], spec.merged) > EIG_TOL:
        fails.append(f"seed {seed}: not a bijection onto the merged spectrum")
    for c in chars:
        if c.min_level != planted.first_level(c.value):
            fails.append(f"seed {seed}: min_level {c.min_level} for {c.value}")
        flags = [factor_level(t, c, a, spectrum=spec) for a in range(1, len(t) + 1)]
        if flags != [a >= c.min_level for a in range(1, len(t) + 1)]:
            fails.append(f"seed {seed}: factor_level not monotone for {c.value}")
    return fails


def oracle_deviation(seed):
    """Criterion 7: worst disagreement of the two calculus routes and of the
    two Gelfand routes on one instance."""
    _, planted, _, f, _ = instance(seed)
    t = planted.tower
    calc = level_gap(apply_function(t, f), polynomial_calculus(t, f))
    transform = gelfand(t, f)
    gel = max(abs(v - gelfand_by_diagonalization(t, f, c)) for c, v in transform.items())
    return calc, gel


def test_5_property_suite():
    start = time.perf_counter()
    fails = []
    for seed in range(N_INSTANCES):
        fails += property_failures(seed)
    elapsed = time.perf_counter() - start
    record(5, not fails and elapsed < 60,
           f"{N_INSTANCES} instances, {len(fails)} failures, {elapsed:.1f} s"
           + (f"; first: {fails[0]}" if fails else ""))


def test_6_character_bijection():
    fails = []
    for seed in range(N_INSTANCES):
        fails += character_failures(seed)
    record(6, not fails, f"{N_INSTANCES} instances, {len(fails)} failures"
           + (f"; first: {fails[0]}" if fails else ""))


def test_7_oracle_agreement():
    worst_calc = worst_gel = 0.0
    for seed in range(N_INSTANCES):
        calc, gel = oracle_deviation(seed)
        worst_calc, worst_gel = max(worst_calc, calc), max(worst_gel, gel)
    record(7, worst_calc <= 1e-8 and worst_gel <= 1e-8,
           f"calculus routes {worst_calc:.1e}, Gelfand routes {worst_gel:.1e} (limit 1e-8)")


# -- criterion 8 ----------------------------------------------------------

def _cli(*argv):
    buf = _io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def test_8_cli_round_trip_and_determinism():
    rng = np.random.default_rng(8)
    ok = True
    for _ in range(20):
        t = planted_normal_tower(rng).tower
        text = io.dump_tower(t)
        ok &= io.dump_tower(io.load_tower(text)) == text
    for spec in (FunctionSpec.polynomial(random_polynomial(rng)), FunctionSpec.named("abs2"),
                 FunctionSpec.table(rng.standard_normal(4) + 1j, rng.standard_normal(4) - 2j)):
        text = io.dump_spec(spec)
        ok &= io.load_spec(text) == spec and io.dump_spec(io.load_spec(text)) == text
    grid = make_function(IntervalChain("halfline", 3, samples_per_unit=10), "gl:2")
    ok &= io.dump_grid(io.load_grid(io.dump_grid(grid))) == io.dump_grid(grid)

    for name in sorted(DEMOS):
        first, second = _cli("demo", name), _cli("demo", name)
        ok &= first[0] == 0 and first == second
    record(8, ok, "serialize/parse identity; four demos byte-identical across reruns")
