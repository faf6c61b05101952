import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ffbc.scalars import Cyclo, RatU, UScalar, qpoly_series_inverse

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def cyclos(p):
    return st.lists(fracs, min_size=p, max_size=p).map(
        lambda cs: sum((Cyclo.root(p, k) * Fraction(c) for k, c in enumerate(cs)), Cyclo.zero(p)))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cyclo_matches_complex(p):
    @given(cyclos(p), cyclos(p))
    def check(x, y):
        for got, want in [(x + y, x.to_complex() + y.to_complex()), (x * y, x.to_complex() * y.to_complex()),
                          (x - y, x.to_complex() - y.to_complex()), (x.conj(), x.to_complex().conjugate())]:
            assert abs(got.to_complex() - want) < 1e-9
        assert (x - x).is_zero()

    check()


def test_cyclo_relations():
    z = Cyclo.root(3, 1)
    assert z * z * z == Cyclo.rational(3, 1)
    assert Cyclo.rational(3, 1) + z + z * z == Cyclo.zero(3)
    assert Cyclo.root(2, 1) == Cyclo.rational(2, -1)
    assert abs(z.to_complex() - cmath.exp(2j * cmath.pi / 3)) < 1e-12
    assert str(Cyclo.rational(3, Fraction(1, 2))) == "1/2"


def test_uscalar_and_ratu():
    u = UScalar.mono(2, 1)
    one = UScalar.const(2, 1)
    x = u * 2 - one
    assert str(x) == "2u-1"
    r = RatU(one, [1, -2])
    assert r.series(4) == [Cyclo.rational(2, 2**n) for n in range(5)]
    assert RatU(one.mul_qpoly([1, -2]), [1, -2]) == RatU(one)
    assert abs(RatU(x).evaluate(0.25) + 0.5) < 1e-15
    assert (u.shift(-1)) == one


@given(st.lists(fracs, min_size=1, max_size=4).filter(lambda c: c[0] != 0), st.integers(0, 8))
def test_series_inverse(den, n):
    inv = qpoly_series_inverse(den, n)
    for k in range(n + 1):
        s = sum(den[i] * inv[k - i] for i in range(min(k, len(den) - 1) + 1))
        assert s == (1 if k == 0 else 0)
