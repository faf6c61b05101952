"""Finite-level characters of the torsion module and the Galois group (O/c)*.

A level-c character is stored as a twist parameter t mod c and evaluated
through the residue pairing

    chi(lam) = zeta_p ^ Tr_{F_q/F_p}( res_inf(t * lam) ),

where res_inf is the T^-1 coefficient of the Laurent expansion at infinity.
The pairing is perfect on O/c, so every character of phi[c] arises from
exactly one t mod c.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .carlitz import TorsionPoint, torsion_act, torsion_group
from .errors import DegenerateInput, LevelMismatch, NotCoprime, NotInFChi, ParseError
from .ffpoly import ONE, ZERO, GlobalConfig, Poly


def residue_coeff(cfg: GlobalConfig, num: Poly, den: Poly) -> int:
    """Coefficient of T^-1 in num/den expanded at infinity.

    Long division of T*num by den: the constant term of the quotient is the
    T^-1 coefficient of num/den.
    """
    if not den:
        raise DegenerateInput("residue of a fraction with zero denominator")
    quot, _ = cfg.divmod(cfg.mul((0, 1), num), den)
    return quot[0] if quot else 0


def laurent_tail(cfg: GlobalConfig, num: Poly, den: Poly, K: int) -> list:
    """Coefficients c_1..c_K of T^-1..T^-K in num/den expanded at infinity."""
    num = cfg.mod(num, den)
    quot, _ = cfg.divmod(cfg.mul(num, (0,) * K + (1,)), den)
    return [quot[K - j] if K - j < len(quot) else 0 for j in range(1, K + 1)]


@dataclass(frozen=True)
class LevelChar:
    level: Poly
    t: Poly

    def __repr__(self):
        return f"LevelChar(t={self.t}, level={self.level})"


@dataclass(frozen=True)
class GaloisElem:
    level: Poly
    unit: Poly


def make_char(cfg: GlobalConfig, t: Poly, level: Poly) -> LevelChar:
    cfg.check_monic(level)
    return LevelChar(level, cfg.mod(t, level))


def std_char(cfg: GlobalConfig, level: Poly) -> LevelChar:
    return make_char(cfg, ONE, level)


def all_chars(cfg: GlobalConfig, level: Poly) -> list[LevelChar]:
    return [LevelChar(level, t) for t in cfg.residues(len(level) - 1)]


def char_eval(cfg: GlobalConfig, chi: LevelChar, lam: TorsionPoint) -> int:
    """Exponent k in Z/p with chi(lam) = zeta_p^k."""
    if not lam.num:
        return 0
    if not cfg.divides(lam.den, chi.level):
        raise LevelMismatch("torsion point lies outside phi[level]")
    return cfg.trace(residue_coeff(cfg, cfg.mul(chi.t, lam.num), lam.den))


def char_eval_unchecked(cfg: GlobalConfig, t: Poly, lam: TorsionPoint) -> int:
    if not lam.num or not t:
        return 0
    return cfg.trace(residue_coeff(cfg, cfg.mul(t, lam.num), lam.den))


def char_shift(cfg: GlobalConfig, chi: LevelChar, a: Poly, raise_level: bool = False) -> LevelChar:
    """lam -> chi(a lam).

    By default the result is read on phi[level] (t -> t a mod level).  With
    raise_level the result is the character of phi[level * a], the largest
    group on which lam -> chi(a lam) is defined; that map is injective.
    """
    cfg.check_monic(a)
    if raise_level:
        level = cfg.mul(chi.level, a)
        return LevelChar(level, cfg.mod(cfg.mul(chi.t, a), level))
    return LevelChar(chi.level, cfg.mod(cfg.mul(chi.t, a), chi.level))


def char_root(cfg: GlobalConfig, chi: LevelChar, a: Poly) -> LevelChar:
    """The character chi' of phi[level/a] with chi'(a mu) = chi(mu).

    It exists iff chi is trivial on phi[a], i.e. iff a divides t.
    """
    cfg.check_monic(a)
    if not cfg.divides(a, chi.level):
        raise LevelMismatch("root ideal must divide the level")
    qt, r = cfg.divmod(chi.t, a)
    if r:
        raise NotInFChi("character is nontrivial on the kernel of the ideal")
    level = cfg.exact_div(chi.level, a)
    return LevelChar(level, cfg.mod(qt, level))


def char_root_bruteforce(cfg: GlobalConfig, chi: LevelChar, a: Poly):
    """Same as char_root, by averaging over preimages; None when undefined."""
    if any(char_eval(cfg, chi, lam) for lam in torsion_group(cfg, a)):
        return None
    level = cfg.exact_div(chi.level, a)
    # chi'(nu) = chi(mu) for any mu with a mu = nu; pick mu = r/level_full
    target = {}
    for lam in torsion_group(cfg, chi.level):
        target.setdefault(torsion_act(cfg, a, lam), set()).add(char_eval(cfg, chi, lam))
    assert all(len(v) == 1 for v in target.values())
    for t in cfg.residues(len(level) - 1):
        cand = LevelChar(level, t)
        if all(char_eval(cfg, cand, nu) == next(iter(v)) for nu, v in target.items()):
            return cand
    raise AssertionError("no root found although chi is trivial on phi[a]")


def restrict(cfg: GlobalConfig, chi: LevelChar, d: Poly) -> LevelChar:
    """Restriction of chi to phi[d] for d dividing the level."""
    if not cfg.divides(d, chi.level):
        raise LevelMismatch("restriction level must divide the level")
    return LevelChar(d, cfg.mod(chi.t, d))


def same_on_common(cfg: GlobalConfig, x: LevelChar, y: LevelChar) -> bool:
    """Do x and y agree on phi[gcd(levels)]?"""
    g = cfg.gcd(x.level, y.level)
    return restrict(cfg, x, g) == restrict(cfg, y, g)


def char_lift(cfg: GlobalConfig, chi: LevelChar, L: Poly) -> LevelChar:
    """Extend chi to phi[L] (level | L) keeping admissibility.

    On the primes of L that divide the level the parameter is t itself (made
    to the full prime power by CRT); on the other primes of L it is 1.
    """
    c = chi.level
    if not cfg.divides(c, L):
        raise LevelMismatch("lift target must be a multiple of the level")
    # split L = L1 * L2 with L1 supported on primes of c, L2 coprime to c
    L1 = ONE
    for pi, k in cfg.factor_monic(L):
        if c != ONE and cfg.divides(pi, c):
            L1 = cfg.mul(L1, cfg.power(pi, k))
    L2 = cfg.exact_div(L, L1)
    t1 = cfg.mod(chi.t, L1) if L1 != ONE else ZERO
    if L2 == ONE:
        return LevelChar(L, cfg.mod(t1, L))
    if L1 == ONE:
        return LevelChar(L, cfg.mod(ONE, L))
    # x = t1 mod L1, x = 1 mod L2
    _, s, u = cfg.xgcd(L1, L2)  # s L1 + u L2 = 1
    x = cfg.add(cfg.mul(cfg.mul(t1, u), L2), cfg.mul(s, L1))
    return LevelChar(L, cfg.mod(x, L))


def is_admissible(cfg: GlobalConfig, chi: LevelChar) -> dict:
    """Per-prime admissibility: chi nontrivial on phi[p] iff p does not divide t."""
    if chi.level == ONE:
        return {"per_prime": {}, "admissible": True, "vacuous": True}
    per = {pi: not cfg.divides(pi, chi.t) for pi, _ in cfg.factor_monic(chi.level)}
    return {"per_prime": per, "admissible": all(per.values()), "vacuous": False}


def admissible(cfg: GlobalConfig, chi: LevelChar) -> bool:
    return is_admissible(cfg, chi)["admissible"]


def is_admissible_bruteforce(cfg: GlobalConfig, chi: LevelChar) -> dict:
    per = {}
    for pi, _ in cfg.factor_monic(chi.level):
        per[pi] = any(char_eval(cfg, chi, lam) for lam in torsion_group(cfg, pi))
    return {"per_prime": per, "admissible": all(per.values()), "vacuous": chi.level == ONE}


def artin(cfg: GlobalConfig, a: Poly, c: Poly) -> GaloisElem:
    cfg.check_monic(a)
    cfg.check_monic(c)
    if cfg.gcd(a, c) != ONE:
        raise NotCoprime("ideal is not coprime to the conductor")
    return GaloisElem(c, cfg.mod(a, c))


def galois_elements(cfg: GlobalConfig, c: Poly) -> list[GaloisElem]:
    return [GaloisElem(c, r) for r in cfg.units_mod(c)]


def galois_compose(cfg: GlobalConfig, s: GaloisElem, t: GaloisElem) -> GaloisElem:
    if s.level != t.level:
        raise LevelMismatch("Galois elements at different levels")
    return GaloisElem(s.level, cfg.mod(cfg.mul(s.unit, t.unit), s.level))


def galois_apply(cfg: GlobalConfig, sigma: GaloisElem, lam: TorsionPoint) -> TorsionPoint:
    if lam.num and not cfg.divides(lam.den, sigma.level):
        raise LevelMismatch("torsion point outside phi[level]")
    return torsion_act(cfg, sigma.unit, lam)


def galois_act_char(cfg: GlobalConfig, sigma: GaloisElem, chi: LevelChar) -> LevelChar:
    """(sigma chi)(lam) = chi(sigma lam)."""
    if sigma.level != chi.level:
        raise LevelMismatch("Galois element and character at different levels")
    return LevelChar(chi.level, cfg.mod(cfg.mul(chi.t, sigma.unit), chi.level))


# -- text formats ----------------------------------------------------------


def format_char(cfg: GlobalConfig, chi: LevelChar) -> str:
    return f"chi({cfg.format_poly(chi.t)}; {cfg.format_poly(chi.level)})"


def parse_char(cfg: GlobalConfig, text: str) -> LevelChar:
    m = re.fullmatch(r"\s*chi\s*\((.*);(.*)\)\s*", text)
    if not m:
        raise ParseError(f"character must look like chi(t; c), got {text!r}")
    t = cfg.parse_poly(m.group(1)) if m.group(1).strip() != "0" else ZERO
    level = cfg.parse_poly(m.group(2))
    if not cfg.is_monic(level):
        raise ParseError("character level must be monic")
    return make_char(cfg, t, level)


def format_galois(cfg: GlobalConfig, s: GaloisElem) -> str:
    return f"{cfg.format_poly(s.unit)} mod {cfg.format_poly(s.level)}"


def parse_galois(cfg: GlobalConfig, text: str) -> GaloisElem:
    m = re.fullmatch(r"\s*(.*)\s+mod\s+(.*)\s*", text)
    if not m:
        raise ParseError(f"Galois element must look like 'unit mod c', got {text!r}")
    unit, c = cfg.parse_poly(m.group(1)), cfg.parse_poly(m.group(2))
    unit = cfg.mod(unit, c)
    if cfg.gcd(unit, c) != ONE:
        raise NotCoprime("Galois element must be a unit modulo c")
    return GaloisElem(c, unit)
