import numpy as np
import pytest

from loctower.errors import ChainMismatch, InvalidChain, LevelOutOfRange, OutOfDomain
from loctower.function_algebra import (
    GridFunction,
    IntervalChain,
    evaluation_character,
    make_function,
    noncontinuity_witness,
    quotient_equal,
    seminorm_p,
)


@pytest.fixture(scope="module")
def half():
    return IntervalChain("halfline", 5)


@pytest.fixture(scope="module")
def sym():
    return IntervalChain("symmetric", 3)


class TestChain:
    def test_invalid(self):
        with pytest.raises(InvalidChain):
            IntervalChain("circle", 3)
        with pytest.raises(InvalidChain):
            IntervalChain("symmetric", 0)
        with pytest.raises(InvalidChain):
            IntervalChain("symmetric", 2, samples_per_unit=5)

    def test_grids_nested_with_endpoints(self, sym, half):
        g = sym.grid
        for n in range(1, 4):
            assert n in g and -n in g
        assert 0.5 in half.grid and 5.0 in half.grid
        assert half.grid.min() == 0.5
        for n in range(1, sym.N):
            assert np.all(sym.mask(n) <= sym.mask(n + 1))

    def test_odd_resolution_keeps_endpoints(self):
        c = IntervalChain("halfline", 3, samples_per_unit=13)
        assert 0.5 in c.grid and 3.0 in c.grid


class TestSeminorm:
    @pytest.mark.parametrize("ell", [1, 2, 3, 7])
    def test_g_ell(self, half, ell):
        f = make_function(half, f"gl:{ell}")
        for n in range(1, half.N + 1):
            assert seminorm_p(f, n) == pytest.approx(2 / (4 + ell**2), abs=1e-6)

    def test_zero_and_one(self, sym):
        for n in range(1, 4):
            assert seminorm_p(make_function(sym, "const:0,0"), n) == 0
            assert seminorm_p(make_function(sym, "const:1,0"), n) == 1

    def test_identity_levels(self, sym):
        f = make_function(sym, "identity")
        assert [seminorm_p(f, n) for n in (1, 2, 3)] == [1, 2, 3]

    def test_out_of_range(self, sym):
        with pytest.raises(LevelOutOfRange):
            seminorm_p(make_function(sym, "exp"), 4)

    def test_cstar_and_submultiplicative(self, sym, rng):
        f = GridFunction(sym, rng.standard_normal(sym.grid.size) + 1j * rng.standard_normal(sym.grid.size))
        g = make_function(sym, "exp")
        for n in (1, 2, 3):
            assert seminorm_p(f.conj() * f, n) == pytest.approx(seminorm_p(f, n) ** 2, rel=1e-15)
            assert seminorm_p(f * g, n) <= seminorm_p(f, n) * seminorm_p(g, n) * (1 + 1e-15)


class TestQuotient:
    def test_identity_vs_clamp(self, sym):
        f, g = make_function(sym, "identity"), make_function(sym, "clamp1")
        assert quotient_equal(f, g, 1)
        assert not quotient_equal(f, g, 2)
        at2 = evaluation_character(sym, 2)
        assert at2(f) == 2 and at2(g) == 1

    def test_reflexive_and_shift(self, sym):
        f = make_function(sym, "exp")
        for n in (1, 2, 3):
            assert quotient_equal(f, f, n)
            assert not quotient_equal(f, f + 1, n)

    def test_chain_mismatch(self, sym, half):
        with pytest.raises(ChainMismatch):
            quotient_equal(make_function(sym, "exp"), make_function(half, "exp"), 1)


class TestEvaluation:
    def test_min_levels(self, sym):
        assert evaluation_character(sym, 2).min_level == 2
        assert evaluation_character(sym, 0).min_level == 1
        assert evaluation_character(sym, -2.5).min_level == 3

    def test_halfline_zero_refused(self, half):
        with pytest.raises(OutOfDomain):
            evaluation_character(half, 0)
        assert evaluation_character(half, 0.75).min_level == 1

    def test_outside(self, sym):
        with pytest.raises(OutOfDomain):
            evaluation_character(sym, 3.5)


class TestWitness:
    @pytest.mark.parametrize("ell,expected", [(1, 0.4), (2, 0.25), (3, 2 / 13)])
    def test_rows(self, ell, expected):
        rows = [r for r in noncontinuity_witness(3, N=4) if r.ell == ell]
        assert len(rows) == 4
        for r in rows:
            assert r.seminorm == pytest.approx(expected, abs=1e-6)
            assert r.seminorm < 1 / ell
            assert r.phi == 0.5
            assert r.passed

    def test_point_evaluations_diverge(self):
        # evaluations at x = n of the identity grow without bound
        c = IntervalChain("symmetric", 6)
        f = make_function(c, "identity")
        assert [evaluation_character(c, n)(f) for n in range(1, 7)] == [1, 2, 3, 4, 5, 6]
