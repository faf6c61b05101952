"""Places of F_q(T), the zeta function without the factor at infinity, and
congruence-class partial zeta functions, all as exact rational functions of
u = q^(-beta)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateInput, DivergentSeries, NotCoprime
from .ffpoly import ONE, GlobalConfig, Poly, sort_key
from .scalars import (format_qpoly, qpoly, qpoly_add, qpoly_divmod, qpoly_eval, qpoly_gcd,
                      qpoly_mul, qpoly_scale, qpoly_series_inverse)

NO_ASSERTION = "exploratory: empirical counts only, no density statement is asserted"


@dataclass(frozen=True)
class PlaceCountTable:
    q: int
    by_norm: dict  # n -> number of places of norm q^n, infinity counted at n = 1
    note: str = "the place at infinity has degree 1 and is counted at n = 1"


class ZetaRational:
    """num/den in Q[u], den(0) = 1, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num, den = qpoly(num), qpoly(den)
        if not den or den[0] == 0:
            raise DegenerateInput("denominator must be nonzero at u = 0")
        if num:
            g = qpoly_gcd(num, den)
            if len(g) > 1:
                num = qpoly_divmod(num, g)[0]
                den = qpoly_divmod(den, g)[0]
        c = den[0]
        self.num = qpoly_scale(1 / c, num)
        self.den = qpoly_scale(1 / c, den)

    def __add__(self, other):
        if not isinstance(other, ZetaRational):
            other = ZetaRational([other])
        return ZetaRational(qpoly_add(qpoly_mul(self.num, other.den), qpoly_mul(other.num, self.den)),
                            qpoly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return ZetaRational(qpoly_scale(-1, self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ZetaRational):
            other = ZetaRational([other])
        return ZetaRational(qpoly_mul(self.num, other.num), qpoly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ZetaRational):
            other = ZetaRational([other])
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def series(self, n):
        inv = qpoly_series_inverse(self.den, n)
        return [sum((self.num[i] * inv[k - i] for i in range(min(k, len(self.num) - 1) + 1)), Fraction(0))
                for k in range(n + 1)]

    def __call__(self, u):
        return qpoly_eval(self.num, u) / qpoly_eval(self.den, u)

    def to_json(self):
        return {"num_coeffs": [str(c) for c in self.num], "den_coeffs": [str(c) for c in self.den]}

    def __str__(self):
        n = format_qpoly(self.num)
        if self.den == [1]:
            return n
        return f"({n})/({format_qpoly(self.den)})"

    __repr__ = __str__


def count_places_norm(cfg: GlobalConfig, n: int) -> int:
    if n < 1:
        raise DegenerateInput("norm exponent must be >= 1")
    return len(cfg.enumerate_monic(n, irreducible_only=True)) + (1 if n == 1 else 0)


def place_count_table(cfg: GlobalConfig, max_n: int) -> PlaceCountTable:
    return PlaceCountTable(cfg.q, {n: count_places_norm(cfg, n) for n in range(1, max_n + 1)})


def weil_identity_check(cfg: GlobalConfig, n: int) -> dict:
    """sum_{m | n} m Q(q^m) against q^n + 1 (genus 0 makes this an equality)."""
    lhs = sum(m * count_places_norm(cfg, m) for m in range(1, n + 1) if n % m == 0)
    rhs = cfg.q**n + 1
    return {"n": n, "lhs": lhs, "rhs": rhs, "pass": lhs == rhs}


def zeta_closed(cfg: GlobalConfig) -> ZetaRational:
    return ZetaRational([1], [1, -cfg.q])


def zeta_evaluate(cfg: GlobalConfig, beta: float, D: int) -> dict:
    """Closed value, degree-truncated sum and the geometric tail bound."""
    if beta <= 1:
        raise DivergentSeries(f"zeta diverges at beta = {beta} <= 1")
    q = cfg.q
    x = q ** (1 - beta)  # q*u
    closed = 1 / (1 - x)
    truncated = math.fsum(x**n for n in range(D + 1))
    bound = x ** (D + 1) / (1 - x)
    return {"beta": beta, "D": D, "closed": closed, "truncated": truncated,
            "tail_bound": bound, "error": abs(closed - truncated),
            "pass": abs(closed - truncated) <= bound * (1 + 1e-12) + 1e-15}


def partial_zeta(cfg: GlobalConfig, c: Poly, r: Poly) -> ZetaRational:
    """Sum of u^deg a over monic a = r mod c.

    Below degree deg c the only candidate in the class is r itself, and it
    counts only when r is monic; from deg c on, each class contains
    q^(n - deg c) monic polynomials of degree n.
    """
    cfg.check_monic(c)
    dc = len(c) - 1
    if c == ONE:
        r = ()
    else:
        if len(r) - 1 >= dc:
            raise DegenerateInput("residue must have degree < deg c")
        if cfg.gcd(r, c) != ONE:
            raise NotCoprime("residue is not a unit modulo c")
    q = cfg.q
    head = [Fraction(0)] * dc
    if r and r[-1] == 1:
        head[len(r) - 1] = Fraction(1)
    # head + u^dc / (1 - q u)
    num = qpoly_add(qpoly_mul(head, [1, -q]), [0] * dc + [1])
    return ZetaRational(num, [1, -q])


def partial_zeta_bruteforce(cfg: GlobalConfig, c: Poly, r: Poly, n: int) -> list:
    """Coefficients u^0..u^n of the same sum by enumerating monic polynomials."""
    out = []
    for k in range(n + 1):
        out.append(sum(1 for a in cfg.enumerate_monic(k) if cfg.mod(cfg.sub(a, r), c) == ()))
    return out


def frobenius_counts(cfg: GlobalConfig, c: Poly, max_degree: int) -> dict:
    """Tally monic irreducibles not dividing c by their class in (O/c)*."""
    if max_degree < 1:
        raise DegenerateInput("max_degree must be >= 1")
    classes = cfg.units_mod(c)
    table = {r: [] for r in classes}
    for n in range(1, max_degree + 1):
        for pi in cfg.enumerate_monic(n, irreducible_only=True):
            if c != ONE and cfg.divides(pi, c):
                continue
            table[cfg.mod(pi, c)].append(pi)
    total = sum(len(v) for v in table.values())
    rows = []
    for r in sorted(table, key=sort_key):
        rows.append({"class": cfg.format_poly(r), "count": len(table[r]),
                     "places": [cfg.format_poly(x) for x in table[r]],
                     "frequency": len(table[r]) / total if total else 0.0})
    return {"q": cfg.q, "c": cfg.format_poly(c), "max_degree": max_degree, "classes": rows,
            "uniform_frequency": 1 / len(classes), "status": NO_ASSERTION}
