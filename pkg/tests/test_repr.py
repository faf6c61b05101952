import itertools

import pytest

from conftest import CFG
from ffbc import carlitz as cz
from ffbc import characters as ch
from ffbc import hecke as hk
from ffbc import regular_rep as rr
from ffbc.errors import AdmissibilityRequired, DivergentSeries, UnsafeTruncation
from ffbc.exprparse import parse_expr
from ffbc.ffpoly import ONE
from ffbc.scalars import Cyclo, UScalar

F2, F3 = CFG[2], CFG[3]
T = (0, 1)


def E(cfg, s):
    return parse_expr(cfg, s)


def rep(cfg, level, D, t=ONE):
    return rr.build_rep(cfg, ch.make_char(cfg, t, level), D)


def test_sizes():
    assert rep(F2, T, 3).size == 15
    assert rep(F2, T, 0).size == 1
    assert rep(F3, T, 2).size == 13
    with pytest.raises(AdmissibilityRequired):
        rr.build_rep(F2, ch.LevelChar((0, 0, 1), T), 3)


def test_matrix_examples():
    R = rep(F2, T, 3)
    M = rr.rep_apply(R, E(F2, "e(1/T)"))
    one, minus = UScalar.const(2, 1), UScalar.const(2, -1)
    for i, m in enumerate(R.index):
        assert M.diagonal()[i] == (one if F2.divides(T, m) else minus)
    P = rr.rep_apply(R, E(F2, "mu(T)*mu*(T)"))
    assert P.diagonal() == {i: one for i, m in enumerate(R.index) if F2.divides(T, m)}
    assert len(P.entries) == len(P.diagonal())
    Id = rr.rep_apply(R, hk.unit(F2))
    assert Id.entries == {(i, i): one for i in range(R.size)}


@pytest.mark.parametrize("q,level", [(2, (1, 1, 1)), (3, (1, 0, 1)), (2, (0, 1, 1))])
def test_char_vector_against_char_eval(q, level):
    cfg = CFG[q]
    for chi in ch.all_chars(cfg, level):
        if not ch.admissible(cfg, chi):
            continue
        R = rr.build_rep(cfg, chi, 3)
        for lam in cz.torsion_group(cfg, level):
            vec = rr.char_vector(R, lam)
            assert vec == [ch.char_eval(cfg, chi, cz.torsion_act(cfg, m, lam)) for m in R.index]


def test_gibbs_trace_examples():
    R = rep(F2, T, 10)
    assert rr.gibbs_trace_truncated(R, hk.unit(F2), beta=2.0) == pytest.approx(1.0)
    v = rr.gibbs_trace_truncated(R, E(F2, "e(1/T)"), beta=2.0)
    assert abs(v - (-0.5)) <= 2.0**-10
    num, den = rr.gibbs_trace_truncated(R, E(F2, "e(1/T)"))
    assert num.coeff(0) == Cyclo.rational(2, -1) and all(num.coeff(n).is_zero() for n in range(1, 11))
    R3 = rep(F2, T, 3)
    num, den = rr.gibbs_trace_truncated(R3, E(F2, "mu(T)*mu*(T)"))
    assert [num.coeff(n) for n in range(4)] == [Cyclo.rational(2, c) for c in (0, 1, 2, 4)]
    assert [den.coeff(n) for n in range(4)] == [Cyclo.rational(2, c) for c in (1, 2, 4, 8)]
    with pytest.raises(DivergentSeries):
        rr.gibbs_trace_truncated(R3, hk.unit(F2), beta=1.0)


def test_product_oracle_examples():
    R = rep(F2, (0, 0, 1), 6)
    x = E(F2, "mu(T)*mu*(T+1)")
    y = E(F2, "mu(T+1)*e(1/T)*mu*(T)")
    assert rr.mul_oracle_check(R, x, y)["pass"]
    assert rr.mul_oracle_check(R, hk.unit(F2), hk.unit(F2))["pass"]
    with pytest.raises(UnsafeTruncation):
        rr.mul_oracle_check(rep(F2, T, 2), E(F2, "mu(T^2)"), E(F2, "mu(T)"))


@pytest.mark.parametrize("q", [2, 3])
def test_relations_in_matrices(q):
    cfg = CFG[q]
    level = (0, 1) if q == 3 else (0, 0, 1)
    R = rep(cfg, level, 5 if q == 2 else 4)
    A = lambda s: rr.rep_apply(R, E(cfg, s))
    cols = rr.interior_columns(R, E(cfg, "mu(T^2)"))
    # mu_a^* mu_a = 1 on the interior, mu_a mu_b = mu_ab, e(l) e(m) = e(l+m)
    for a in ("T", "T+1"):
        M = A(f"mu*({a})") @ A(f"mu({a})")
        assert all(M.column(j) == {j: UScalar.const(cfg.p, 1)} for j in cols)
    lhs, rhs = A("mu(T)") @ A("mu(T+1)"), A("mu(T^2+T)")
    assert all(lhs.column(j) == rhs.column(j) for j in cols)
    lam = cz.format_torsion(cfg, cz.torsion_group(cfg, level)[1])
    lhs, rhs = A(f"e({lam})") @ A(f"e({lam})"), rr.rep_apply(R, hk.mul(E(cfg, f"e({lam})"), E(cfg, f"e({lam})")))
    assert lhs == rhs
    # adjoint of the matrix is the matrix of the adjoint
    x = E(cfg, f"mu(T)*e({lam})*mu*(T+1)")
    assert rr.rep_apply(R, hk.adjoint(x)) == rr.rep_apply(R, x).adjoint()


@pytest.mark.parametrize("q", [2, 3])
def test_mul_oracle_on_small_pairs(q):
    cfg = CFG[q]
    keys = hk.basis_keys(cfg, 1, 1)
    keys = [k for k in keys if k[1].den in (ONE, (0, 1))]
    reps = {}
    for k1, k2 in itertools.product(keys, repeat=2):
        x, y = hk.key_elem(cfg, k1), hk.key_elem(cfg, k2)
        # the product can carry preimage annihilators, so the level follows it
        level = cfg.lcm((0, 1), hk.annihilator_lcm(hk.mul(x, y)))
        if level not in reps:
            reps[level] = rr.build_rep(cfg, ch.char_lift(cfg, ch.std_char(cfg, (0, 1)), level), 4)
        assert rr.mul_oracle_check(reps[level], x, y)["pass"]


def test_weight_conjugate_is_the_twist():
    R = rep(F2, T, 4)
    x = E(F2, "mu(T)*e(1/T)*mu*(T^2+T+1) + mu*(T)")
    assert rr.weight_conjugate(R, rr.rep_apply(R, x)) == rr.rep_apply(R, hk.kms_twist(x, 1))


def test_exports():
    R = rep(F2, T, 1)
    M = rr.rep_apply(R, E(F2, "mu(T)"))
    js = M.to_json()
    assert len(js) == 3 and len(js[0]) == 3
    assert js[1][0][0]["u_pow"] == 0 and js[1][0][0]["cyclo"][0] == "1" and js[0][0] == []
    dense = M.to_numeric(0.25)
    assert dense.shape == (3, 3) and dense[1, 0] == 1
    rep_ = rr.commutant_dimension(R, [E(F2, "e(1/T)")])
    assert "exploratory" in rep_["status"]
