import random

import pytest

from conftest import CFG
from ffbc import carlitz as cz
from ffbc import characters as ch
from ffbc import hecke as hk
from ffbc import states as S
from ffbc.carlitz import TORSION_ZERO
from ffbc.errors import AdmissibilityRequired, DivergentSeries, LevelMismatch
from ffbc.exprparse import parse_expr
from ffbc.ffpoly import ONE
from ffbc.scalars import Cyclo, RatU, UScalar

F2, F3 = CFG[2], CFG[3]
T = (0, 1)


def E(cfg, s):
    return parse_expr(cfg, s)


def L(cfg, s):
    return cz.parse_torsion(cfg, s)


def U(p, coeffs, den=None):
    """RatU from rational u-coefficients."""
    num = UScalar(p, {k: Cyclo.rational(p, c) for k, c in enumerate(coeffs) if c})
    return RatU(num, den)


def test_phi_beta_examples():
    assert S.phi_beta(E(F2, "mu(T)*mu*(T)")) == U(2, [0, 1])
    assert S.phi_beta(E(F2, "e(1/T)")) == U(2, [-1, 2])
    assert S.phi_beta(E(F2, "mu(T)*mu*(T+1)")) == U(2, [0])
    assert S.phi_beta(hk.unit(F2)) == U(2, [1])


def test_product_identity_examples():
    for cfg in (F2, F3):
        for lam in hk.torsion_points_up_to(cfg, 1):
            k1, k2 = (ONE, lam, ONE), (ONE, cz.torsion_neg(cfg, lam), ONE)
            r = S.phi_beta_product_identity(cfg, k1, k2)
            assert r["pass"] and S.phi_beta(hk.mul(hk.key_elem(cfg, k1), hk.key_elem(cfg, k2))) == U(cfg.p, [1])
    k1, k2 = (T, L(F2, "1/T"), ONE), (ONE, L(F2, "1/T"), T)
    assert S.phi_beta_product_identity(F2, k1, k2)["pass"]
    assert S.phi_beta(hk.mul(hk.key_elem(F2, k1), hk.key_elem(F2, k2))) == U(2, [0, 1])
    k1, k2 = (T, TORSION_ZERO, ONE), (ONE, TORSION_ZERO, (1, 1))
    assert S.product_closed_form(F2, k1, k2).is_zero()
    assert S.phi_beta(hk.mul(hk.key_elem(F2, k1), hk.key_elem(F2, k2))) == U(2, [0])


@pytest.mark.parametrize("q", [2, 3])
def test_product_identity_exhaustive_small(q):
    cfg = CFG[q]
    keys = hk.basis_keys(cfg, 1, 1)
    for k1 in keys:
        for k2 in keys:
            assert S.phi_beta_product_identity(cfg, k1, k2)["pass"]


def test_kms_examples():
    x = E(F2, "mu(T)*e(1/T)")
    y = E(F2, "e(1/T)*mu*(T)")
    r = S.kms_verify(x, y)
    assert r["pass"]
    assert S.phi_beta(hk.mul(y, x)) == U(2, [1])
    assert S.kms_verify(E(F2, "mu(T)*e(1/T)*mu*(T+1)"), hk.unit(F2))["pass"]


def test_gibbs_examples():
    chi = ch.std_char(F2, T)
    assert S.gibbs_closed(F2, chi, hk.e(F2, TORSION_ZERO)) == U(2, [1])
    g = S.gibbs_closed(F2, chi, E(F2, "e(1/T)"))
    assert g == U(2, [-1, 2])
    assert S.evaluate_state(F2, g, 2.0) == pytest.approx(-0.5, abs=1e-12)
    chi2 = ch.std_char(F2, (0, 0, 1))
    g2 = S.gibbs_closed(F2, chi2, E(F2, "e(1/T^2)"))
    assert g2 == U(2, [1, -4, 4])
    assert S.evaluate_state(F2, g2, 2.0) == pytest.approx(0.25)
    with pytest.raises(AdmissibilityRequired):
        S.gibbs_closed(F2, ch.LevelChar((0, 0, 1), T), hk.unit(F2))
    with pytest.raises(LevelMismatch):
        S.gibbs_closed(F2, chi, E(F2, "e(1/T^2)"))
    lifted = S.gibbs_closed(F2, chi, E(F2, "e(1/T^2)"), auto_lift=True)
    assert lifted == g2


def test_special_value_examples():
    chi = ch.std_char(F2, T)
    v = S.special_value_prime(F2, chi, T, L(F2, "1/T"))
    assert v == U(2, [-1, 2]) == S.gibbs_closed(F2, chi, E(F2, "e(1/T)"))
    assert S.special_value_prime(F2, chi, T, TORSION_ZERO) == U(2, [1])
    chi3 = ch.std_char(F3, T)
    v3 = S.special_value_prime(F3, chi3, T, L(F3, "1/T"))
    assert v3 == S.gibbs_closed(F3, chi3, E(F3, "e(1/T)"))
    z = Cyclo.root(3, 1)
    assert v3 == RatU(UScalar(3, {0: z, 1: z * -3}))


@pytest.mark.parametrize("q", [2, 3])
def test_theta_routes_agree(q):
    cfg = CFG[q]
    for c in cfg.enumerate_monic(1) + cfg.enumerate_monic(2):
        for chi in ch.all_chars(cfg, c):
            for lam in cz.torsion_group(cfg, c):
                x = hk.e(cfg, lam)
                th = S.theta_series(cfg, chi, lam)
                # coefficients against direct enumeration of chi(m lam)
                series = th.series(4)
                for n in range(5):
                    acc = Cyclo.zero(cfg.p)
                    for m in cfg.enumerate_monic(n):
                        acc = acc + Cyclo.root(cfg.p, ch.char_eval(cfg, chi, cz.torsion_act(cfg, m, lam)))
                    assert series[n] == acc
                if ch.admissible(cfg, chi):
                    assert S.gibbs_closed(cfg, chi, x) == S.gibbs_from_theta(cfg, chi, x)


def test_partition_function_examples():
    r = S.partition_function(F2, 10, 2.0)
    assert r["closed"] == pytest.approx(2.0) and r["truncated"] == pytest.approx(2 - 2.0**-10)
    f = S.partition_function(F3, 4)
    assert f["truncated"] == [1, 3, 9, 27, 81] and f["pass"]
    r3 = S.partition_function(F3, 8, 2.0)
    assert r3["closed"] == pytest.approx(1.5) and r3["error"] <= 3.0**-8 * 1.5
    with pytest.raises(DivergentSeries):
        S.partition_function(F2, 5, 1.0)
    with pytest.raises(DivergentSeries):
        S.evaluate_state(F2, U(2, [1]), 0.5)


def _random_elem(cfg, rng, keys, n=4):
    x = hk.zero(cfg)
    for _ in range(n):
        k = rng.choice(keys)
        c = UScalar(cfg.p, {0: Cyclo.root(cfg.p, rng.randrange(cfg.p)) * rng.randint(-3, 3)})
        x = x + hk.key_elem(cfg, k).scale(c)
    return x


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("beta", [1.5, 2.0, 3.0])
def test_state_axioms(q, beta):
    cfg = CFG[q]
    rng = random.Random(q * 100 + int(beta * 10))
    keys = hk.basis_keys(cfg, 1, 1)
    assert S.evaluate_state(cfg, S.phi_beta(hk.unit(cfg)), beta) == pytest.approx(1.0)
    for _ in range(100):
        x = _random_elem(cfg, rng, keys)
        v = S.evaluate_state(cfg, S.phi_beta(hk.mul(x, hk.adjoint(x))), beta)
        assert v.real >= -1e-9 and abs(v.imag) < 1e-9
        a = S.evaluate_state(cfg, S.phi_beta(hk.adjoint(x)), beta)
        b = S.evaluate_state(cfg, S.phi_beta(x), beta)
        assert abs(a - b.conjugate()) < 1e-9


@pytest.mark.parametrize("q", [2, 3])
def test_galois_invariance_and_average(q):
    cfg = CFG[q]
    for c in cfg.enumerate_monic(1) + cfg.enumerate_monic(2):
        lams = cz.torsion_group(cfg, c)
        xs = [hk.basis_elem(cfg, a, lam, b) for a in (ONE, T) for b in (ONE, (1, 1)) for lam in lams]
        for x in xs:
            for s in ch.galois_elements(cfg, cfg.lcm(c, hk.annihilator_lcm(x))):
                assert S.phi_beta(hk.galois_act_alg(s, x)) == S.phi_beta(x)
            assert S.galois_average_gibbs(cfg, ch.std_char(cfg, c), x) == S.phi_beta(x)


@pytest.mark.parametrize("q", [2, 3])
def test_gibbs_equivariance_and_distinctness(q):
    cfg = CFG[q]
    for c in cfg.enumerate_monic(2):
        G = ch.galois_elements(cfg, c)
        chars = [chi for chi in ch.all_chars(cfg, c) if ch.admissible(cfg, chi)]
        for lam in cz.torsion_group(cfg, c):
            for x in (hk.e(cfg, lam), hk.key_elem(cfg, (T, lam, (1, 1))), hk.key_elem(cfg, ((1, 1), lam, ONE))):
                for chi in chars:
                    for s in G:
                        lhs = S.gibbs_closed(cfg, ch.galois_act_char(cfg, s, chi), x)
                        assert lhs == S.gibbs_closed(cfg, chi, hk.galois_act_alg(s, x))
        vecs = {tuple(S.gibbs_closed(cfg, chi, hk.e(cfg, lam)) for lam in cz.torsion_group(cfg, c)) for chi in chars}
        assert len(vecs) == len(chars)


@pytest.mark.parametrize("q", [2, 3])
def test_gibbs_kms_small(q):
    cfg = CFG[q]
    c = (1, 0, 1)
    chi = ch.std_char(cfg, c)
    lams = cz.torsion_group(cfg, c)
    keys = [(a, lam, b) for a in (ONE, T) for b in (ONE, (1, 1)) if cfg.gcd(a, b) == ONE for lam in lams]
    state = lambda z: S.gibbs_closed(cfg, chi, z, auto_lift=True)
    for k1 in keys:
        for k2 in keys:
            assert S.kms_verify(hk.key_elem(cfg, k1), hk.key_elem(cfg, k2), state)["pass"]


def test_value_report_formats():
    rep = S.value_report(F2, U(2, [-1, 2]), 2.0)
    assert rep["exact"] == "2u-1" and rep["numeric"] == pytest.approx(-0.5)
    assert S.state_series(U(2, [1], [1, -2]), 3) == [Cyclo.rational(2, 2**n) for n in range(4)]
