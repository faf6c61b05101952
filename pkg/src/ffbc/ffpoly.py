"""Arithmetic in F_q and in the polynomial ring O = F_q[T].

Field elements are ints in ``range(q)``: for q = p^e an element is the base-p
encoding of its coordinate vector in the basis 1, x, ..., x^(e-1) of
F_p[x]/(modulus).  Polynomials are tuples of field elements, lowest degree
first, with no trailing zeros; the zero polynomial is ``()``.

Nonzero ideals of O are handled through their monic generator, so a
``MonicIdeal`` is just a monic ``Poly``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from .errors import DegenerateInput, ParseError

Poly = tuple  # tuple[int, ...], lowest degree first
MonicIdeal = tuple  # monic generator

ZERO: Poly = ()
ONE: Poly = (1,)
T: Poly = (0, 1)
MINUS_INF = float("-inf")


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _trim(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _fp_mulmod(a, b, mod, p):
    """Multiply two F_p[x] coefficient lists and reduce by a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    e = len(mod) - 1
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for j in range(e + 1):
                prod[k - e + j] = (prod[k - e + j] - c * mod[j]) % p
    return prod[:e] + [0] * (e - len(prod[:e]))


def _default_modulus(p: int, e: int) -> tuple:
    prime = GlobalConfig(p)
    for f in prime.enumerate_monic(e, irreducible_only=True):
        return f
    raise DegenerateInput(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class FracIdeal:
    """Fractional ideal num/den in coprime canonical form."""

    num: MonicIdeal
    den: MonicIdeal


@dataclass(frozen=True)
class GlobalConfig:
    """The base field F_q and the polynomial ring F_q[T].

    Genus 0, one place at infinity of degree 1 and a single sign-normalized
    rank-one module (the Carlitz module) are fixed properties of this
    setting; they are exposed as constants and checked at construction.
    """

    p: int
    e: int = 1
    modulus: tuple | None = None

    genus = 0
    d_inf = 1
    h_sgn = 1

    _tables: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise DegenerateInput(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise DegenerateInput("extension degree must be >= 1")
        if self.e == 1:
            if self.modulus is not None:
                object.__setattr__(self, "modulus", None)
        else:
            mod = self.modulus
            if mod is None:
                mod = _default_modulus(self.p, self.e)
            mod = _trim(int(c) % self.p for c in mod)
            prime = GlobalConfig(self.p)
            if len(mod) != self.e + 1 or mod[-1] != 1 or not prime.is_irreducible(mod):
                raise DegenerateInput(
                    f"modulus {mod} is not a monic irreducible of degree {self.e} over F_{self.p}"
                )
            object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "_tables", self._build_tables())
        # the class number of the sign-normalized modules is 1 for F_q[T]
        assert self.h_sgn == 1 and self.d_inf == 1 and self.genus == 0

    @classmethod
    def from_q(cls, q: int, modulus=None) -> "GlobalConfig":
        for p in range(2, q + 1):
            if q % p == 0:
                e, r = 0, q
                while r % p == 0:
                    r //= p
                    e += 1
                if r != 1:
                    break
                return cls(p, e, modulus)
        raise DegenerateInput(f"q = {q} is not a prime power")

    @property
    def q(self) -> int:
        return self.p**self.e

    # -- field tables --------------------------------------------------

    def _build_tables(self):
        p, e, q = self.p, self.e, self.p**self.e
        if e == 1:
            add = [[(a + b) % p for b in range(q)] for a in range(q)]
            mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            digits = [[(a // p**k) % p for k in range(e)] for a in range(q)]

            def enc(v):
                return sum(c * p**k for k, c in enumerate(v))

            add = [[enc([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
                   for a in range(q)]
            mul = [[enc(_fp_mulmod(digits[a], digits[b], list(self.modulus), p)) for b in range(q)]
                   for a in range(q)]
        neg = [next(b for b in range(q) if add[a][b] == 0) for a in range(q)]
        inv = [0] + [next(b for b in range(q) if mul[a][b] == 1) for a in range(1, q)]
        trace = []
        for a in range(q):
            t, x = 0, a
            for _ in range(e):
                t = add[t][x]
                y = 1
                for _ in range(p):
                    y = mul[y][x]
                x = y
            trace.append(t)
        return {"add": add, "mul": mul, "neg": neg, "inv": inv, "trace": trace}

    def fadd(self, a, b):
        return self._tables["add"][a][b]

    def fmul(self, a, b):
        return self._tables["mul"][a][b]

    def fneg(self, a):
        return self._tables["neg"][a]

    def finv(self, a):
        if a == 0:
            raise DegenerateInput("inverse of 0 in F_q")
        return self._tables["inv"][a]

    def trace(self, a) -> int:
        """Absolute trace F_q -> F_p, returned as an int in range(p)."""
        return self._tables["trace"][a]

    @cached_property
    def units(self) -> tuple:
        return tuple(range(1, self.q))

    # -- polynomials ---------------------------------------------------

    def poly(self, coeffs) -> Poly:
        return _trim(int(c) for c in coeffs)

    @staticmethod
    def deg(f: Poly):
        return len(f) - 1 if f else MINUS_INF

    def add(self, f: Poly, g: Poly) -> Poly:
        if len(f) < len(g):
            f, g = g, f
        A = self._tables["add"]
        out = list(f)
        for i, c in enumerate(g):
            out[i] = A[out[i]][c]
        return _trim(out) if len(f) == len(g) else tuple(out)

    def neg(self, f: Poly) -> Poly:
        N = self._tables["neg"]
        return tuple(N[c] for c in f)

    def sub(self, f: Poly, g: Poly) -> Poly:
        return self.add(f, self.neg(g))

    def scale(self, c: int, f: Poly) -> Poly:
        if c == 0:
            return ZERO
        M = self._tables["mul"][c]
        return tuple(M[x] for x in f)

    def mul(self, f: Poly, g: Poly) -> Poly:
        if not f or not g:
            return ZERO
        A, M = self._tables["add"], self._tables["mul"]
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                Ma = M[a]
                for j, b in enumerate(g):
                    if b:
                        out[i + j] = A[out[i + j]][Ma[b]]
        return tuple(out)  # leading term is a product of nonzeros

    def power(self, f: Poly, n: int) -> Poly:
        out, base = ONE, f
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def divmod(self, f: Poly, g: Poly) -> tuple[Poly, Poly]:
        """Euclidean division: f = quot*g + rem with deg rem < deg g."""
        if not g:
            raise DegenerateInput("polynomial division by zero")
        if len(f) < len(g):
            return ZERO, f
        A, M, N = self._tables["add"], self._tables["mul"], self._tables["neg"]
        r = list(f)
        dg = len(g) - 1
        lead_inv = self.finv(g[-1])
        quot = [0] * (len(f) - dg)
        for k in range(len(f) - 1, dg - 1, -1):
            c = r[k]
            if c:
                c = M[c][lead_inv]
                quot[k - dg] = c
                nc = N[c]
                Mc = M[nc]
                for j in range(dg + 1):
                    r[k - dg + j] = A[r[k - dg + j]][Mc[g[j]]]
        return _trim(quot), _trim(r[:dg])

    def mod(self, f: Poly, g: Poly) -> Poly:
        return self.divmod(f, g)[1]

    def exact_div(self, f: Poly, g: Poly) -> Poly:
        qt, r = self.divmod(f, g)
        if r:
            raise DegenerateInput("inexact polynomial division")
        return qt

    def divides(self, g: Poly, f: Poly) -> bool:
        return not self.divmod(f, g)[1]

    def monic(self, f: Poly) -> Poly:
        if not f or f[-1] == 1:
            return f
        return self.scale(self.finv(f[-1]), f)

    def sgn_leading(self, f: Poly) -> int:
        """Leading coefficient; 0 for the zero polynomial."""
        return f[-1] if f else 0

    def gcd(self, f: Poly, g: Poly) -> Poly:
        if not f and not g:
            raise DegenerateInput("gcd(0, 0) is undefined")
        while g:
            f, g = g, self.mod(f, g)
        return self.monic(f)

    def xgcd(self, f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
        """Return (d, s, t) with s*f + t*g = d = gcd(f, g), d monic."""
        if not f and not g:
            raise DegenerateInput("gcd(0, 0) is undefined")
        r0, r1, s0, s1, t0, t1 = f, g, ONE, ZERO, ZERO, ONE
        while r1:
            qt, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(qt, s1))
            t0, t1 = t1, self.sub(t0, self.mul(qt, t1))
        c = self.finv(r0[-1])
        return self.scale(c, r0), self.scale(c, s0), self.scale(c, t0)

    def lcm(self, f: Poly, g: Poly) -> Poly:
        return self.monic(self.exact_div(self.mul(f, g), self.gcd(f, g)))

    def inv_mod(self, a: Poly, c: Poly) -> Poly:
        d, s, _ = self.xgcd(a, c)
        if d != ONE:
            from .errors import NotCoprime

            raise NotCoprime("element is not a unit modulo the ideal")
        return self.mod(s, c)

    def is_monic(self, f: Poly) -> bool:
        return bool(f) and f[-1] == 1

    def check_monic(self, f: Poly) -> Poly:
        if not self.is_monic(f):
            raise DegenerateInput(f"{self.format_poly(f)} is not monic")
        return f

    # -- enumeration and factorization ---------------------------------

    def residues(self, n: int) -> Iterator[Poly]:
        """All polynomials of degree < n, in lexicographic order."""
        for digits in itertools.product(range(self.q), repeat=n):
            yield _trim(reversed(digits))

    def enumerate_monic(self, n: int, irreducible_only: bool = False) -> list[Poly]:
        if n < 0:
            raise DegenerateInput("degree must be >= 0")
        if irreducible_only:
            return list(self._irreducibles(n))
        return [tuple(reversed(d)) + (1,) for d in itertools.product(range(self.q), repeat=n)]

    def _irreducibles(self, n: int) -> tuple:
        cache = self.__dict__.setdefault("_irr_cache", {})
        if n not in cache:
            if n == 0:
                cache[n] = ()
            else:
                # sieve: strike out every product of a lower-degree irreducible
                # with a monic cofactor
                composite = set()
                for d in range(1, n // 2 + 1):
                    for pi in self._irreducibles(d):
                        for g in self.enumerate_monic(n - d):
                            composite.add(self.mul(pi, g))
                cache[n] = tuple(f for f in self.enumerate_monic(n) if f not in composite)
        return cache[n]

    def is_irreducible(self, f: Poly) -> bool:
        if len(f) < 2:
            return False
        f = self.monic(f)
        n = len(f) - 1
        for d in range(1, n // 2 + 1):
            for pi in self._irreducibles(d):
                if self.divides(pi, f):
                    return False
        return True

    def factor_monic(self, a: MonicIdeal) -> list[tuple[Poly, int]]:
        """Prime factorization of a monic polynomial by trial division."""
        a = self.check_monic(a)
        out = []
        d = 1
        while len(a) > 1:
            if 2 * d > len(a) - 1:
                out.append((a, 1))
                break
            for pi in self._irreducibles(d):
                k = 0
                while True:
                    qt, r = self.divmod(a, pi)
                    if r:
                        break
                    a, k = qt, k + 1
                if k:
                    out.append((pi, k))
            d += 1
        merged: dict = {}
        for pi, k in out:
            merged[pi] = merged.get(pi, 0) + k
        return sorted(merged.items(), key=lambda t: (len(t[0]), t[0][::-1]))

    def ideal_norm(self, a) -> Fraction:
        """Absolute norm q^deg of an integral ideal, or N(num)/N(den)."""
        if isinstance(a, FracIdeal):
            return self.ideal_norm(a.num) / self.ideal_norm(a.den)
        if not a:
            raise DegenerateInput("the zero ideal has no norm")
        return Fraction(self.q) ** (len(a) - 1)

    def frac_ideal(self, num: Poly, den: Poly) -> FracIdeal:
        num, den = self.monic(num), self.monic(den)
        if not num or not den:
            raise DegenerateInput("zero is not a fractional ideal")
        g = self.gcd(num, den)
        return FracIdeal(self.exact_div(num, g), self.exact_div(den, g))

    def divisors(self, a: MonicIdeal) -> list[Poly]:
        """Monic divisors of a, sorted by (degree, lexicographic)."""
        out = [ONE]
        for pi, k in self.factor_monic(a):
            pw = [self.power(pi, j) for j in range(k + 1)]
            out = [self.mul(d, x) for d in out for x in pw]
        return sorted(out, key=sort_key)

    def units_mod(self, c: MonicIdeal) -> list[Poly]:
        """Representatives of (O/c)*, degree < deg c, lexicographic."""
        c = self.check_monic(c)
        if c == ONE:
            return [ZERO]
        return [r for r in self.residues(len(c) - 1) if r and self.gcd(r, c) == ONE]

    # -- text format ---------------------------------------------------

    def format_elem(self, a: int) -> str:
        if self.e == 1 or a < self.p:
            return str(a)
        digits = [(a // self.p**k) % self.p for k in range(self.e)]
        terms = []
        for k in range(self.e - 1, -1, -1):
            c = digits[k]
            if not c:
                continue
            mon = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return "[" + "+".join(terms) + "]"

    def format_poly(self, f: Poly, var: str = "T") -> str:
        if not f:
            return "0"
        terms = []
        for k in range(len(f) - 1, -1, -1):
            c = f[k]
            if not c:
                continue
            mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            cs = self.format_elem(c)
            if k == 0:
                terms.append(cs)
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(f"{cs}*{mon}")
        return "+".join(terms)

    def _parse_elem(self, s: str) -> int:
        s = s.strip()
        if s.startswith("["):
            inner = s[1:-1]
            coeffs = _parse_generic(inner, "x", lambda t: int(t) % self.p, lambda a, b: (a + b) % self.p,
                                    lambda a: (-a) % self.p)
            if coeffs and len(coeffs) > self.e:
                raise ParseError(f"field element [{inner}] has degree >= {self.e}")
            return sum(c * self.p**k for k, c in enumerate(coeffs))
        v = int(s)
        if self.e == 1:
            return v % self.p
        return v % self.p

    def parse_poly(self, text: str, var: str = "T") -> Poly:
        coeffs = _parse_generic(text, var, self._parse_elem, self.fadd, self.fneg)
        return _trim(coeffs)


_TERM_RE = None


def _split_terms(s: str):
    """Split on top-level + and - (not inside brackets), keeping signs."""
    out, depth, cur, sign = [], 0, "", 1
    for i, ch in enumerate(s):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur.strip():
                out.append((sign, cur))
            elif ch == "-" and not cur.strip():
                sign = -sign
                cur = ""
                continue
            sign = 1 if ch == "+" else -1
            cur = ""
            continue
        cur += ch
    if cur.strip():
        out.append((sign, cur))
    elif s.strip():
        raise ParseError(f"dangling operator in {s!r}")
    return out


def _parse_generic(text, var, parse_coeff, add, neg):
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty polynomial")
    coeffs: dict[int, int] = {}
    for sign, term in _split_terms(s):
        m = re.fullmatch(r"(\[[^\]]*\]|\d+)?\*?(" + re.escape(var) + r"(?:\^(\d+))?)?", term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ParseError(f"cannot parse term {term!r} in {text!r}", s.find(term))
        c = parse_coeff(m.group(1)) if m.group(1) is not None else 1
        if m.group(2) is None and term.endswith("*"):
            raise ParseError(f"cannot parse term {term!r}")
        k = 0 if m.group(2) is None else (int(m.group(3)) if m.group(3) else 1)
        if sign < 0:
            c = neg(c)
        coeffs[k] = add(coeffs.get(k, 0), c)
    n = max(coeffs) + 1
    return [coeffs.get(k, 0) for k in range(n)]


def sort_key(f: Poly):
    """Degree first, then lexicographic with the top coefficient most significant."""
    return (len(f), f[::-1])
