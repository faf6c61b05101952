"""The Carlitz module phi_T = T + tau and its torsion, modeled as k/O.

A torsion point is a reduced fraction num/den with den monic and
deg num < deg den; den generates its annihilator.  The phi_a action on the
torsion is plain multiplication by a in k/O.
"""
from __future__ import annotations

from typing import NamedTuple

from .errors import DegenerateInput
from .ffpoly import ONE, ZERO, GlobalConfig, Poly, sort_key

TwistedPoly = tuple  # tuple of Poly, index i is the coefficient of tau^i


class TorsionPoint(NamedTuple):
    num: Poly
    den: Poly


TORSION_ZERO = TorsionPoint(ZERO, ONE)


def frobenius(cfg: GlobalConfig, g: Poly, i: int = 1) -> Poly:
    """g(T)^(q^i): coefficients are fixed by Frobenius, exponents scale."""
    if i == 0 or not g:
        return g
    step = cfg.q**i
    out = [0] * ((len(g) - 1) * step + 1)
    for k, c in enumerate(g):
        out[k * step] = c
    return tuple(out)


def _trim_tw(coeffs) -> TwistedPoly:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def twisted_add(cfg, f: TwistedPoly, g: TwistedPoly) -> TwistedPoly:
    n = max(len(f), len(g))
    return _trim_tw(cfg.add(f[i] if i < len(f) else ZERO, g[i] if i < len(g) else ZERO) for i in range(n))


def twisted_mul(cfg: GlobalConfig, f: TwistedPoly, g: TwistedPoly) -> TwistedPoly:
    """Composition with (a tau^i)(b tau^j) = a b^(q^i) tau^(i+j)."""
    if not f or not g:
        return ()
    out = [ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = cfg.add(out[i + j], cfg.mul(a, frobenius(cfg, b, i)))
    return _trim_tw(out)


def carlitz_phi(cfg: GlobalConfig, a: Poly) -> TwistedPoly:
    """phi_a for the Carlitz module, by Horner's rule in phi_T."""
    phi_T = (cfg.poly((0, 1)), ONE)
    acc: TwistedPoly = ()
    for c in reversed(a):
        acc = twisted_mul(cfg, phi_T, acc) if acc else ()
        if c:
            acc = twisted_add(cfg, acc, ((c,),))
    return acc


def ideal_star(cfg: GlobalConfig, a: Poly, phi: str = "carlitz") -> str:
    """a * phi.  With a single sign-normalized module this is the identity."""
    assert cfg.h_sgn == 1 and phi == "carlitz"
    cfg.check_monic(a)
    return phi


# -- torsion ---------------------------------------------------------------


def torsion_reduce(cfg: GlobalConfig, num: Poly, den: Poly) -> TorsionPoint:
    if not den:
        raise DegenerateInput("torsion point with zero denominator")
    num = cfg.mod(num, den)
    if not num:
        return TORSION_ZERO
    g = cfg.gcd(num, den)
    if g != ONE:
        num, den = cfg.exact_div(num, g), cfg.exact_div(den, g)
    lead = den[-1]
    if lead != 1:
        inv = cfg.finv(lead)
        num, den = cfg.scale(inv, num), cfg.scale(inv, den)
    return TorsionPoint(num, den)


def ann(lam: TorsionPoint) -> Poly:
    return lam.den


def torsion_act(cfg: GlobalConfig, a: Poly, lam: TorsionPoint) -> TorsionPoint:
    if not lam.num:
        return TORSION_ZERO
    return torsion_reduce(cfg, cfg.mul(a, lam.num), lam.den)


def torsion_add(cfg: GlobalConfig, x: TorsionPoint, y: TorsionPoint) -> TorsionPoint:
    if not x.num:
        return y
    if not y.num:
        return x
    if x.den == y.den:
        return torsion_reduce(cfg, cfg.add(x.num, y.num), x.den)
    return torsion_reduce(cfg, cfg.add(cfg.mul(x.num, y.den), cfg.mul(y.num, x.den)), cfg.mul(x.den, y.den))


def torsion_neg(cfg: GlobalConfig, x: TorsionPoint) -> TorsionPoint:
    return TorsionPoint(cfg.neg(x.num), x.den)


def torsion_sub(cfg, x, y):
    return torsion_add(cfg, x, torsion_neg(cfg, y))


def torsion_group(cfg: GlobalConfig, a: Poly, generators_only: bool = False) -> list[TorsionPoint]:
    """phi[a] as the points r/a, deg r < deg a, or just its generators."""
    cfg.check_monic(a)
    out = []
    for r in cfg.residues(len(a) - 1):
        if generators_only and cfg.gcd(r, a) != ONE:
            continue
        out.append(torsion_reduce(cfg, r, a))
    return out


def preimages(cfg: GlobalConfig, d: Poly, lam: TorsionPoint) -> list[TorsionPoint]:
    """All gamma with d * gamma = lam; there are exactly N(d) of them."""
    cfg.check_monic(d)
    den = cfg.mul(lam.den, d)
    return [torsion_reduce(cfg, cfg.add(lam.num, cfg.mul(lam.den, o)), den)
            for o in cfg.residues(len(d) - 1)]


def ideal_arith_functions(cfg: GlobalConfig, a: Poly) -> tuple[int, int]:
    """(Phi(a), M(a)): ideal totient and Moebius function."""
    phi, mu = 1, 1
    for pi, k in cfg.factor_monic(a):
        n = cfg.q ** (len(pi) - 1)
        phi *= n**k - n ** (k - 1)
        mu *= -1 if k == 1 else 0
    return phi, mu


def kernel_image(cfg: GlobalConfig, a: Poly, b: Poly):
    """Kernel and image of multiplication by a on phi[b], by brute force."""
    pts = torsion_group(cfg, b)
    kernel = {x for x in pts if torsion_act(cfg, a, x) == TORSION_ZERO}
    image = {torsion_act(cfg, a, x) for x in pts}
    return kernel, image


def crt_split(cfg: GlobalConfig, lam: TorsionPoint) -> dict:
    """Partial fractions: lam = sum of parts with prime-power denominators."""
    if not lam.num:
        return {}
    out = {}
    for pi, k in cfg.factor_monic(lam.den):
        e = cfg.power(pi, k)
        rest = cfg.exact_div(lam.den, e)
        x = cfg.mod(cfg.mul(lam.num, cfg.inv_mod(cfg.mod(rest, e), e)), e)
        out[pi] = torsion_reduce(cfg, x, e)
    return out


def crt_join(cfg: GlobalConfig, parts: dict) -> TorsionPoint:
    seen = set()
    acc = TORSION_ZERO
    for pi, x in parts.items():
        if not x.num:
            continue
        support = [f for f, _ in cfg.factor_monic(x.den)]
        if len(support) != 1 or support[0] != pi or pi in seen:
            raise DegenerateInput("crt_join needs parts supported at distinct primes")
        seen.add(pi)
        acc = torsion_add(cfg, acc, x)
    return acc


def torsion_key(lam: TorsionPoint):
    return (sort_key(lam.den), sort_key(lam.num))


def format_torsion(cfg: GlobalConfig, lam: TorsionPoint) -> str:
    if not lam.num:
        return "0"
    return f"{_paren(cfg.format_poly(lam.num))}/{_paren(cfg.format_poly(lam.den))}"


def _paren(s):
    return f"({s})" if "+" in s else s


def parse_torsion(cfg: GlobalConfig, text: str) -> TorsionPoint:
    from .errors import ParseError

    s = text.replace(" ", "")
    if s == "0":
        return TORSION_ZERO
    depth = 0
    for i, ch in enumerate(s):
        depth += ch in "(["
        depth -= ch in ")]"
        if ch == "/" and depth == 0:
            num = cfg.parse_poly(_strip_parens(s[:i]))
            den = cfg.parse_poly(_strip_parens(s[i + 1:]))
            return torsion_reduce(cfg, num, den)
    raise ParseError(f"torsion point {text!r} must have the form r/s or 0")


def _strip_parens(s):
    while s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    return s
