"""Exact scalar rings used by the algebra and the states.

* ``qpoly_*``: dense polynomials in u with Fraction coefficients (lists, low first).
* ``Cyclo``: elements of Q(zeta_p) in the power basis 1, z, ..., z^(p-2).
* ``UScalar``: Laurent polynomials in u with Cyclo coefficients.
* ``RatU``: a UScalar numerator over a rational polynomial denominator with
  constant term 1; every state value lives here.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

# -- rational polynomials in u ---------------------------------------------


def qpoly(coeffs) -> list:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def qpoly_add(f, g):
    n = max(len(f), len(g))
    return qpoly([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def qpoly_scale(c, f):
    return qpoly([c * x for x in f])


def qpoly_sub(f, g):
    return qpoly_add(f, qpoly_scale(-1, g))


def qpoly_mul(f, g):
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return qpoly(out)


def qpoly_divmod(f, g):
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f)
    if len(r) < len(g):
        return [], qpoly(r)
    quot = [Fraction(0)] * (len(r) - len(g) + 1)
    for k in range(len(r) - len(g), -1, -1):
        c = r[k + len(g) - 1] / g[-1]
        quot[k] = c
        if c:
            for j, b in enumerate(g):
                r[k + j] -= c * b
    return qpoly(quot), qpoly(r[: len(g) - 1])


def qpoly_gcd(f, g):
    """Monic gcd over Q."""
    f, g = qpoly(f), qpoly(g)
    while g:
        f, g = g, qpoly_divmod(f, g)[1]
    if not f:
        return []
    return qpoly_scale(1 / f[-1], f)


def qpoly_eval(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def qpoly_series_inverse(den, n):
    """First n+1 coefficients of 1/den as a power series (den[0] must be nonzero)."""
    inv0 = 1 / Fraction(den[0])
    out = []
    for k in range(n + 1):
        s = Fraction(1 if k == 0 else 0)
        for j in range(1, min(k, len(den) - 1) + 1):
            s -= den[j] * out[k - j]
        out.append(s * inv0)
    return out


def format_qpoly(f, var="u") -> str:
    if not f:
        return "0"
    parts = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c:
            parts.append(_fmt_mono(c, k, var))
    return _join_signed(parts)


def _fmt_mono(c: Fraction, k: int, var: str) -> str:
    mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
    if not mon:
        return str(c)
    if c == 1:
        return mon
    if c == -1:
        return "-" + mon
    return f"{c}{mon}" if c.denominator == 1 else f"({c}){mon}"


def _join_signed(parts) -> str:
    s = parts[0]
    for t in parts[1:]:
        s += t if t.startswith("-") else "+" + t
    return s


# -- cyclotomic field -------------------------------------------------------


@lru_cache(maxsize=None)
def _root_table(p):
    return [cmath.exp(2j * cmath.pi * k / p) for k in range(p)]


class Cyclo:
    """An element of Q(zeta_p), stored by coordinates in 1, z, ..., z^(p-2)."""

    __slots__ = ("p", "c", "_h")

    def __init__(self, p: int, coords):
        self.p = p
        self.c = tuple(Fraction(x) for x in coords)
        self._h = None
        assert len(self.c) == p - 1

    @classmethod
    def _from_full(cls, p, full):
        # full has p entries w.r.t. 1, z, ..., z^(p-1); use 1+z+...+z^(p-1) = 0
        top = full[p - 1]
        return cls(p, [full[i] - top for i in range(p - 1)])

    @classmethod
    def zero(cls, p):
        return cls(p, [0] * (p - 1))

    @classmethod
    def rational(cls, p, r):
        return cls(p, [r] + [0] * (p - 2))

    @classmethod
    def root(cls, p, k):
        """zeta_p^k."""
        full = [0] * p
        full[k % p] = 1
        return cls._from_full(p, full)

    def _full(self):
        return list(self.c) + [Fraction(0)]

    def is_zero(self):
        return not any(self.c)

    def is_rational(self):
        return not any(self.c[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.p == other.p and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.p, self.c))
        return self._h

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo.rational(self.p, other)
        return Cyclo(self.p, [a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.p, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.p, [a * other for a in self.c])
        p = self.p
        if p == 2:
            return Cyclo(2, [self.c[0] * other.c[0]])
        full = [Fraction(0)] * p
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        full[(i + j) % p] += a * b
        return Cyclo._from_full(p, full)

    __rmul__ = __mul__

    def conj(self):
        p = self.p
        full = self._full()
        out = [Fraction(0)] * p
        for k in range(p):
            out[(-k) % p] = full[k]
        return Cyclo._from_full(p, out)

    def to_complex(self) -> complex:
        roots = _root_table(self.p)
        return sum(float(a) * roots[k] for k, a in enumerate(self.c))

    def coords_str(self):
        return [str(a) for a in self.c]

    def __repr__(self):
        return f"Cyclo({self.p}, {format_cyclo(self)})"

    def __str__(self):
        return format_cyclo(self)


def format_cyclo(x: Cyclo) -> str:
    parts = []
    for k in range(len(x.c) - 1, -1, -1):
        a = x.c[k]
        if a:
            parts.append(_fmt_mono(a, k, "z"))
    return _join_signed(parts) if parts else "0"


# -- Laurent polynomials in u ----------------------------------------------


class UScalar:
    """Finite sum of Cyclo * u^k, k in Z. Treated as immutable."""

    __slots__ = ("p", "d", "_h")

    def __init__(self, p: int, terms=None):
        self.p = p
        self.d = {k: v for k, v in (terms or {}).items() if not v.is_zero()}
        self._h = None

    @classmethod
    def const(cls, p, r, k=0):
        c = r if isinstance(r, Cyclo) else Cyclo.rational(p, r)
        return cls(p, {k: c})

    @classmethod
    def mono(cls, p, k, coeff=1):
        return cls.const(p, coeff, k)

    def is_zero(self):
        return not self.d

    def __bool__(self):
        return bool(self.d)

    def __eq__(self, other):
        if isinstance(other, UScalar):
            return self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self == UScalar.const(self.p, other) if other else not self.d
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self.d.items()))
        return self._h

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UScalar.const(self.p, other)
        out = dict(self.d)
        for k, v in other.d.items():
            out[k] = out[k] + v if k in out else v
        return UScalar(self.p, out)

    __radd__ = __add__

    def __neg__(self):
        return UScalar(self.p, {k: -v for k, v in self.d.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UScalar(self.p, {k: v * other for k, v in self.d.items()}) if other else UScalar(self.p)
        if isinstance(other, Cyclo):
            return UScalar(self.p, {k: v * other for k, v in self.d.items()})
        out: dict = {}
        for i, a in self.d.items():
            for j, b in other.d.items():
                v = a * b
                out[i + j] = out[i + j] + v if i + j in out else v
        return UScalar(self.p, out)

    __rmul__ = __mul__

    def shift(self, n):
        """Multiply by u^n."""
        if not n:
            return self
        return UScalar(self.p, {k + n: v for k, v in self.d.items()})

    def conj(self):
        return UScalar(self.p, {k: v.conj() for k, v in self.d.items()})

    def min_exp(self):
        return min(self.d) if self.d else 0

    def max_exp(self):
        return max(self.d) if self.d else 0

    def coeff(self, k) -> Cyclo:
        return self.d.get(k, Cyclo.zero(self.p))

    def coordinate_polys(self):
        """Split into p-1 rational polynomials (after shifting to exponent >= 0)."""
        lo = self.min_exp()
        n = self.max_exp() - lo + 1 if self.d else 0
        polys = [[Fraction(0)] * n for _ in range(self.p - 1)]
        for k, v in self.d.items():
            for i, a in enumerate(v.c):
                polys[i][k - lo] = a
        return lo, [qpoly(f) for f in polys]

    @classmethod
    def from_coordinate_polys(cls, p, lo, polys):
        terms: dict = {}
        n = max((len(f) for f in polys), default=0)
        for k in range(n):
            coords = [f[k] if k < len(f) else 0 for f in polys]
            if any(coords):
                terms[k + lo] = Cyclo(p, coords)
        return cls(p, terms)

    def mul_qpoly(self, f):
        return self * UScalar(self.p, {k: Cyclo.rational(self.p, c) for k, c in enumerate(f) if c})

    def evaluate(self, u: float) -> complex:
        return sum(v.to_complex() * u**k for k, v in self.d.items())

    def is_real(self):
        return all(v.conj() == v for v in self.d.values())

    def __repr__(self):
        return f"UScalar({format_uscalar(self)})"

    def __str__(self):
        return format_uscalar(self)


def format_uscalar(x: UScalar, var="u") -> str:
    if not x.d:
        return "0"
    parts = []
    for k in sorted(x.d, reverse=True):
        v = x.d[k]
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if v.is_rational():
            parts.append(_fmt_mono(v.c[0], 1, mon) if mon else str(v.c[0]))
        else:
            cs = f"({format_cyclo(v)})"
            parts.append(cs + mon if mon else cs)
    return _join_signed(parts)


# -- rational functions ----------------------------------------------------


class RatU:
    """num/den with num a UScalar and den a rational polynomial, den(0) = 1.

    Normalized by cancelling the largest common factor in Q[u] of den and the
    coordinate polynomials of num.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: UScalar, den=None):
        den = qpoly(den if den is not None else [1])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if den[0] == 0:
            raise ValueError("denominator must not vanish at u = 0")
        if num.is_zero():
            self.num, self.den = num, [Fraction(1)]
            return
        lo, polys = num.coordinate_polys()
        g = den
        for f in polys:
            if f:
                g = qpoly_gcd(g, f)
                if len(g) == 1:
                    break
        if len(g) > 1:
            den = qpoly_divmod(den, g)[0]
            polys = [qpoly_divmod(f, g)[0] if f else f for f in polys]
        c = den[0]
        den = qpoly_scale(1 / c, den)
        polys = [qpoly_scale(1 / c, f) for f in polys]
        self.num = UScalar.from_coordinate_polys(num.p, lo, polys)
        self.den = den

    @property
    def p(self):
        return self.num.p

    @classmethod
    def from_uscalar(cls, x: UScalar):
        return cls(x)

    def is_polynomial(self):
        return len(self.den) == 1

    def __add__(self, other):
        if isinstance(other, UScalar):
            other = RatU(other)
        if self.den == other.den:
            return RatU(self.num + other.num, self.den)
        return RatU(self.num.mul_qpoly(other.den) + other.num.mul_qpoly(self.den),
                    qpoly_mul(self.den, other.den))

    def __neg__(self):
        return RatU(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RatU) else RatU(-other))

    def __mul__(self, other):
        if isinstance(other, RatU):
            return RatU(self.num * other.num, qpoly_mul(self.den, other.den))
        return RatU(self.num * other, self.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, UScalar):
            other = RatU(other)
        if isinstance(other, (int, Fraction)):
            other = RatU(UScalar.const(self.p, other)) if other else RatU(UScalar(self.p))
        if not isinstance(other, RatU):
            return NotImplemented
        return self.num.mul_qpoly(other.den) == other.num.mul_qpoly(self.den)

    def __hash__(self):
        return hash((self.num, tuple(self.den)))

    def series(self, n: int) -> list:
        """Coefficients of u^0..u^n (num must have no negative exponents)."""
        if self.num.d and self.num.min_exp() < 0:
            raise ValueError("series of a Laurent numerator with negative powers")
        inv = qpoly_series_inverse(self.den, n)
        out = [Cyclo.zero(self.p) for _ in range(n + 1)]
        for k, v in self.num.d.items():
            for j in range(0, n + 1 - k):
                if inv[j]:
                    out[k + j] = out[k + j] + v * inv[j]
        return out

    def evaluate(self, u: float) -> complex:
        return self.num.evaluate(u) / float(qpoly_eval(self.den, Fraction(u)))

    def conj(self):
        return RatU(self.num.conj(), self.den)

    def __repr__(self):
        return f"RatU({self})"

    def __str__(self):
        n = format_uscalar(self.num)
        if self.is_polynomial():
            return n
        return f"({n})/({format_qpoly(self.den)})"
