import math

import pytest
from hypothesis import given, strategies as st

from conftest import CFG, monics
from ffbc import zeta as zt
from ffbc.errors import DegenerateInput, DivergentSeries, NotCoprime
from ffbc.ffpoly import ONE

F2, F3, F4 = CFG[2], CFG[3], CFG[4]


def test_place_counts():
    assert zt.count_places_norm(F2, 1) == 3
    assert zt.count_places_norm(F2, 2) == 1
    assert zt.count_places_norm(F3, 1) == 4
    assert zt.count_places_norm(F3, 2) == 3
    with pytest.raises(DegenerateInput):
        zt.count_places_norm(F2, 0)


def test_weil_examples():
    r = zt.weil_identity_check(F2, 3)
    assert (r["lhs"], r["rhs"], r["pass"]) == (9, 9, True)
    assert zt.weil_identity_check(F2, 1)["lhs"] == 3
    assert zt.weil_identity_check(F3, 2)["lhs"] == 10


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_weil_identity_all_small(q):
    for n in range(1, 6):
        assert zt.weil_identity_check(CFG[q], n)["pass"]


def test_zeta_closed_and_numeric():
    z = zt.zeta_closed(F2)
    assert z.num == [1] and z.den == [1, -2]
    assert z(0.25) == pytest.approx(2.0)
    rep = zt.zeta_evaluate(F2, 2.0, 10)
    assert rep["closed"] == pytest.approx(2.0)
    assert abs(rep["truncated"] - (2 - 2.0**-10)) < 1e-15
    assert rep["error"] <= 2.0**-9 and rep["pass"]
    rep3 = zt.zeta_evaluate(F3, 2.0, 8)
    assert rep3["closed"] == pytest.approx(1.5)
    assert rep3["error"] <= 3.0**-8 * 1.5 + 1e-15
    with pytest.raises(DivergentSeries):
        zt.zeta_evaluate(F2, 1.0, 5)


def test_zeta_series_counts_monics():
    # degree-wise counting oracle
    for cfg in (F2, F3):
        s = zt.zeta_closed(cfg).series(6)
        assert s == [len(cfg.enumerate_monic(n)) for n in range(7)]


def test_partial_zeta_examples():
    T = (0, 1)
    assert zt.partial_zeta(F2, T, ONE) == zt.ZetaRational([1, -1], [1, -2])
    assert zt.partial_zeta(F3, T, ONE) == zt.ZetaRational([1, -2], [1, -3])
    assert zt.partial_zeta(F2, ONE, ONE) == zt.zeta_closed(F2)
    with pytest.raises(NotCoprime):
        zt.partial_zeta(F2, (0, 0, 1), (0, 1))


@pytest.mark.parametrize("q", [2, 3])
def test_partial_zeta_against_enumeration(q):
    cfg = CFG[q]

    @given(monics(cfg, 2, 1))
    def check(c):
        total = [0] * 6
        for r in cfg.units_mod(c):
            z = zt.partial_zeta(cfg, c, r)
            brute = zt.partial_zeta_bruteforce(cfg, c, r, 5)
            assert [int(x) for x in z.series(5)] == brute
            total = [a + b for a, b in zip(total, brute)]
        # classes coprime to c partition the monics coprime to c
        coprime = [sum(1 for m in cfg.enumerate_monic(n) if cfg.gcd(m, c) == ONE) for n in range(6)]
        assert total == coprime

    check()


def test_zeta_rational_arithmetic():
    a = zt.ZetaRational([1], [1, -2])
    b = zt.ZetaRational([0, 1], [1, -2])
    assert a - b == zt.ZetaRational([1, -1], [1, -2])
    assert (a * zt.ZetaRational([1, -2])) == zt.ZetaRational([1])
    assert str(zt.ZetaRational([1, -1], [1, -2])) == "(-u+1)/(-2u+1)"
    assert a.to_json() == {"num_coeffs": ["1"], "den_coeffs": ["1", "-2"]}


def test_frobenius_counts_examples():
    T = (0, 1)
    rep = zt.frobenius_counts(F3, T, 2)
    rows = {r["class"]: r for r in rep["classes"]}
    assert rows["1"]["count"] == 2 and set(rows["1"]["places"]) == {"T+1", "T^2+1"}
    assert rows["2"]["count"] == 3 and set(rows["2"]["places"]) == {"T+2", "T^2+T+2", "T^2+2*T+2"}
    rep2 = zt.frobenius_counts(F2, T, 3)
    assert [r["count"] for r in rep2["classes"]] == [4]
    one = zt.frobenius_counts(F2, ONE, 3)
    assert len(one["classes"]) == 1 and one["classes"][0]["frequency"] == 1.0
    assert "no density statement" in rep["status"]


@given(st.floats(1.05, 6.0), st.integers(0, 20))
def test_tail_bound_holds(beta, D):
    for cfg in (F2, F3):
        rep = zt.zeta_evaluate(cfg, beta, D)
        assert rep["pass"]
        assert math.isclose(rep["closed"], 1 / (1 - cfg.q ** (1 - beta)))
