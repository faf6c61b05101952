import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import CFG, monics, polys
from ffbc.errors import DegenerateInput, ParseError
from ffbc.ffpoly import ONE, GlobalConfig

F2, F3, F4 = CFG[2], CFG[3], CFG[4]


def P(cfg, s):
    return cfg.parse_poly(s)


# -- examples --------------------------------------------------------------


def test_divmod_examples():
    assert F2.divmod(P(F2, "T^3+T+1"), P(F2, "T^2+1")) == (P(F2, "T"), ONE)
    f = P(F2, "T^2+T+1")
    assert F2.divmod(f, ONE) == (f, ())
    assert F2.divmod(P(F2, "T^2+T"), P(F2, "T")) == (P(F2, "T+1"), ())


def test_gcd_examples():
    assert F2.gcd(P(F2, "T^2+T"), P(F2, "T")) == P(F2, "T")
    assert F3.gcd(P(F3, "2*T^2+1"), ()) == P(F3, "T^2+2")
    assert F2.gcd(P(F2, "T^2+T+1"), P(F2, "T+1")) == ONE


def test_sign_examples():
    assert F3.sgn_leading(P(F3, "2*T^2+1")) == 2
    assert F3.sgn_leading(()) == 0
    assert F3.sgn_leading(P(F3, "T^3+2")) == 1


def test_enumerate_examples():
    assert sorted(F2.enumerate_monic(2)) == sorted(P(F2, s) for s in ["T^2", "T^2+1", "T^2+T", "T^2+T+1"])
    assert F2.enumerate_monic(2, irreducible_only=True) == [P(F2, "T^2+T+1")]
    assert sorted(F2.enumerate_monic(3, irreducible_only=True)) == sorted([P(F2, "T^3+T+1"), P(F2, "T^3+T^2+1")])


def test_factor_examples():
    assert F2.factor_monic(P(F2, "T^2+T")) == [(P(F2, "T"), 1), (P(F2, "T+1"), 1)]
    assert F2.factor_monic(ONE) == []
    assert F2.factor_monic(P(F2, "T^4+T^2")) == [(P(F2, "T"), 2), (P(F2, "T+1"), 2)]


def test_norm_examples():
    assert F2.ideal_norm(P(F2, "T^2+T+1")) == 4
    assert F2.ideal_norm(ONE) == 1
    assert F2.ideal_norm(F2.frac_ideal(P(F2, "T^2"), P(F2, "T+1"))) == Fraction(2)
    with pytest.raises(DegenerateInput):
        F2.ideal_norm(())


def test_config_constants_and_bad_input():
    assert (F4.genus, F4.d_inf, F4.h_sgn) == (0, 1, 1)
    assert F4.q == 4 and F4.modulus == (1, 1, 1)
    with pytest.raises(DegenerateInput):
        GlobalConfig.from_q(6)
    with pytest.raises(DegenerateInput):
        GlobalConfig(2, 2, (1, 0, 1))  # x^2+1 = (x+1)^2 over F_2


def test_parse_errors():
    with pytest.raises(ParseError):
        F2.parse_poly("T^^2")
    with pytest.raises(ParseError):
        F4.parse_poly("[x^2]*T")


# -- field axioms in F_4 and F_9 -------------------------------------------


@pytest.mark.parametrize("q", [4, 9])
def test_field_axioms(q):
    cfg = GlobalConfig.from_q(q)
    els = range(q)
    for a, b, c in itertools.product(els, repeat=3):
        assert cfg.fmul(a, cfg.fadd(b, c)) == cfg.fadd(cfg.fmul(a, b), cfg.fmul(a, c))
    for a in els:
        if a:
            assert cfg.fmul(a, cfg.finv(a)) == 1
        assert cfg.fadd(a, cfg.fneg(a)) == 0
        # Frobenius fixes exactly F_p under x -> x^p, and trace lands in F_p
        assert 0 <= cfg.trace(a) < cfg.p


# -- properties -------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 4])
def test_ring_properties(q):
    cfg = CFG[q]

    @given(polys(cfg), polys(cfg), polys(cfg))
    def check(f, g, h):
        assert cfg.mul(f, cfg.add(g, h)) == cfg.add(cfg.mul(f, g), cfg.mul(f, h))
        assert cfg.mul(f, g) == cfg.mul(g, f)
        assert cfg.sub(cfg.add(f, g), g) == f
        if g:
            qt, r = cfg.divmod(f, g)
            assert cfg.add(cfg.mul(qt, g), r) == f and len(r) < len(g)
        if f or g:
            d, s, t = cfg.xgcd(f, g)
            assert d == cfg.gcd(f, g) and cfg.is_monic(d)
            assert cfg.add(cfg.mul(s, f), cfg.mul(t, g)) == d

    check()


@pytest.mark.parametrize("q", [2, 3, 4])
def test_factorization_reconstructs(q):
    cfg = CFG[q]

    @given(monics(cfg, 5))
    def check(a):
        acc = ONE
        for pi, k in cfg.factor_monic(a):
            assert cfg.is_irreducible(pi)
            acc = cfg.mul(acc, cfg.power(pi, k))
        assert acc == a
        divs = cfg.divisors(a)
        assert all(cfg.divides(d, a) for d in divs)
        assert len(divs) == len(set(divs))

    check()


def _irreducible_by_trial(cfg, f):
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for g in cfg.enumerate_monic(d):
            if cfg.mod(f, g) == ():
                return False
    return n >= 1


@pytest.mark.parametrize("q,n", [(2, 5), (3, 3), (4, 2)])
def test_sieve_against_trial_division(q, n):
    cfg = CFG[q]
    for k in range(1, n + 1):
        sieve = set(cfg.enumerate_monic(k, irreducible_only=True))
        trial = {f for f in cfg.enumerate_monic(k) if _irreducible_by_trial(cfg, f)}
        assert sieve == trial
        # necklace count: sum_{d | k} d * I_d = q^k
        tot = sum(d * len(cfg.enumerate_monic(d, irreducible_only=True)) for d in range(1, k + 1) if k % d == 0)
        assert tot == q**k


@pytest.mark.parametrize("q", [2, 3, 4, 9])
def test_format_parse_roundtrip(q):
    cfg = GlobalConfig.from_q(q)

    @given(polys(cfg, 5))
    def check(f):
        assert cfg.parse_poly(cfg.format_poly(f)) == f
        assert cfg.parse_poly(" " + cfg.format_poly(f).replace("+", " + ")) == f

    check()


@given(monics(F3, 3), monics(F3, 3))
def test_lcm_gcd_product(a, b):
    assert F3.mul(F3.gcd(a, b), F3.lcm(a, b)) == F3.mul(a, b)


def test_units_mod_count():
    for c in F3.enumerate_monic(2):
        units = F3.units_mod(c)
        for r in units:
            assert F3.mul(r, F3.inv_mod(r, c)) and F3.mod(F3.mul(r, F3.inv_mod(r, c)), c) == ONE
    assert F2.units_mod(ONE) == [()]
