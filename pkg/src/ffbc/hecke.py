"""The *-algebra spanned by mu_a e(lam) mu_b^*, a and b coprime monic.

An element is a sparse map from basis keys (a, lam, b) to Laurent
polynomials in u over Q(zeta_p).  Non-coprime words are pushed into the
basis with

    mu_d e(lam) mu_d^* = (1/N d) sum_{d gamma = lam} e(gamma),

and products of basis terms use

    (a1, l1, b1)(a2, l2, b2) = mu_{a1 a2'} e(a2' l1 + b1' l2) mu_{b1' b2}^*,
    d = gcd(a2, b1), a2' = a2/d, b1' = b1/d,

followed by the same coprime reduction.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .carlitz import (TORSION_ZERO, TorsionPoint, ann, format_torsion, preimages, torsion_act,
                      torsion_add, torsion_neg, torsion_reduce)
from .characters import GaloisElem, galois_elements
from .errors import LevelMismatch
from .ffpoly import ONE, GlobalConfig, Poly, sort_key
from .scalars import Cyclo, UScalar

Key = tuple  # (a, lam, b)


def key_order(k: Key):
    a, lam, b = k
    return (sort_key(a), sort_key(b), sort_key(lam.den), sort_key(lam.num))


def weight(k: Key) -> int:
    return (len(k[0]) - 1) - (len(k[2]) - 1)


@lru_cache(maxsize=None)
def _expand(cfg: GlobalConfig, a: Poly, lam: TorsionPoint, b: Poly, with_norm: bool = True):
    d = cfg.gcd(a, b)
    if d == ONE:
        return ((Fraction(1), (a, lam, b)),)
    a1, b1 = cfg.exact_div(a, d), cfg.exact_div(b, d)
    w = Fraction(1, cfg.q ** (len(d) - 1)) if with_norm else Fraction(1)
    return tuple((w, (a1, g, b1)) for g in preimages(cfg, d, lam))


@lru_cache(maxsize=None)
def _mul_keys(cfg: GlobalConfig, k1: Key, k2: Key, with_norm: bool = True):
    a1, l1, b1 = k1
    a2, l2, b2 = k2
    if b1 == ONE and a2 == ONE:
        d, a2r, b1r = ONE, ONE, ONE
    else:
        d = cfg.gcd(a2, b1)
        a2r, b1r = cfg.exact_div(a2, d), cfg.exact_div(b1, d)
    lam = torsion_add(cfg, torsion_act(cfg, a2r, l1), torsion_act(cfg, b1r, l2))
    return _expand(cfg, cfg.mul(a1, a2r), lam, cfg.mul(b1r, b2), with_norm)


class AlgebraElem:
    """Sparse combination of canonical basis terms; treat as immutable."""

    __slots__ = ("cfg", "terms")

    def __init__(self, cfg: GlobalConfig, terms=None):
        self.cfg = cfg
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @property
    def p(self):
        return self.cfg.p

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return AlgebraElem(self.cfg, out)

    def __neg__(self):
        return AlgebraElem(self.cfg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply by a scalar (int, Fraction, Cyclo or UScalar)."""
        return AlgebraElem(self.cfg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElem):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: key_order(kv[0]))

    def __repr__(self):
        return f"AlgebraElem({format_elem(self)})"


def from_expansion(cfg: GlobalConfig, expansion, coeff: UScalar | None = None) -> AlgebraElem:
    coeff = coeff if coeff is not None else UScalar.const(cfg.p, 1)
    out: dict = {}
    for w, k in expansion:
        v = coeff * w
        out[k] = out[k] + v if k in out else v
    return AlgebraElem(cfg, out)


def basis_elem(cfg: GlobalConfig, a: Poly, lam: TorsionPoint, b: Poly, coeff=None) -> AlgebraElem:
    """mu_a e(lam) mu_b^* written in the coprime basis."""
    cfg.check_monic(a)
    cfg.check_monic(b)
    lam = torsion_reduce(cfg, lam.num, lam.den)
    if coeff is not None and not isinstance(coeff, UScalar):
        coeff = UScalar.const(cfg.p, coeff)
    return from_expansion(cfg, _expand(cfg, a, lam, b), coeff)


def unit(cfg: GlobalConfig) -> AlgebraElem:
    return AlgebraElem(cfg, {(ONE, TORSION_ZERO, ONE): UScalar.const(cfg.p, 1)})


def zero(cfg: GlobalConfig) -> AlgebraElem:
    return AlgebraElem(cfg)


def mu(cfg, a):
    return basis_elem(cfg, a, TORSION_ZERO, ONE)


def mu_star(cfg, a):
    return basis_elem(cfg, ONE, TORSION_ZERO, a)


def e(cfg, lam):
    return basis_elem(cfg, ONE, lam, ONE)


def mul(x: AlgebraElem, y: AlgebraElem, with_norm: bool = True) -> AlgebraElem:
    """Algebra product.  with_norm=False drops the 1/N d weight of the
    coprime reduction (only used as a negative control)."""
    cfg = x.cfg
    out: dict = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            c = c1 * c2
            for w, k in _mul_keys(cfg, k1, k2, with_norm):
                v = c * w if w != 1 else c
                out[k] = out[k] + v if k in out else v
    return AlgebraElem(cfg, out)


def mul_basis(cfg: GlobalConfig, k1: Key, k2: Key):
    """Structure constants of a product of two basis keys: ((weight, key), ...)."""
    return _mul_keys(cfg, k1, k2)


def adjoint(x: AlgebraElem) -> AlgebraElem:
    cfg = x.cfg
    return AlgebraElem(cfg, {(b, torsion_neg(cfg, lam), a): v.conj() for (a, lam, b), v in x.terms.items()})


def kms_twist(x: AlgebraElem, n: int) -> AlgebraElem:
    """Analytic continuation of the flow: a term of weight w gets u^(n w)."""
    if n == 0:
        return x
    return AlgebraElem(x.cfg, {k: v.shift(n * weight(k)) for k, v in x.terms.items()})


def annihilator_lcm(x: AlgebraElem) -> Poly:
    cfg = x.cfg
    c = ONE
    for (_, lam, _) in x.terms:
        if lam.den != ONE:
            c = cfg.lcm(c, lam.den)
    return c


def galois_act_alg(sigma: GaloisElem, x: AlgebraElem) -> AlgebraElem:
    """mu_a fixed, e(lam) -> e(sigma lam)."""
    cfg = x.cfg
    out = {}
    for (a, lam, b), v in x.terms.items():
        if lam.num and not cfg.divides(lam.den, sigma.level):
            raise LevelMismatch("annihilator does not divide the Galois level")
        k = (a, torsion_act(cfg, sigma.unit, lam), b)
        out[k] = out[k] + v if k in out else v
    return AlgebraElem(cfg, out)


def cond_expectation(x: AlgebraElem) -> AlgebraElem:
    """Average of sigma(x) over (O/c)*, c the lcm of the annihilators in x."""
    cfg = x.cfg
    group = galois_elements(cfg, annihilator_lcm(x))
    acc = zero(cfg)
    for s in group:
        acc = acc + galois_act_alg(s, x)
    return acc.scale(Fraction(1, len(group)))


def expectation_closed_form(x: AlgebraElem) -> AlgebraElem:
    """Termwise mu_a [ (1/Phi(s)) sum_{f | s} M(s/f) N f mu_f mu_f^* ] mu_b^*, s = ann(lam)."""
    from .carlitz import ideal_arith_functions

    cfg = x.cfg
    acc = zero(cfg)
    for (a, lam, b), v in x.terms.items():
        s = ann(lam)
        phi_s, _ = ideal_arith_functions(cfg, s)
        for f in cfg.divisors(s):
            _, m = ideal_arith_functions(cfg, cfg.exact_div(s, f))
            if m:
                w = Fraction(m * cfg.q ** (len(f) - 1), phi_s)
                acc = acc + basis_elem(cfg, cfg.mul(a, f), TORSION_ZERO, cfg.mul(b, f), v * w)
    return acc


# -- enumeration helpers ---------------------------------------------------


def torsion_points_up_to(cfg: GlobalConfig, max_deg: int) -> list[TorsionPoint]:
    """All torsion points whose annihilator has degree <= max_deg."""
    out = [TORSION_ZERO]
    for n in range(1, max_deg + 1):
        for s in cfg.enumerate_monic(n):
            for r in cfg.residues(n):
                if r and cfg.gcd(r, s) == ONE:
                    out.append(TorsionPoint(r, s))
    return out


def basis_keys(cfg: GlobalConfig, max_deg: int, lam_deg: int | None = None) -> list[Key]:
    """Coprime keys with deg a, deg b <= max_deg and deg ann(lam) <= lam_deg."""
    lam_deg = max_deg if lam_deg is None else lam_deg
    monics = [m for n in range(max_deg + 1) for m in cfg.enumerate_monic(n)]
    lams = torsion_points_up_to(cfg, lam_deg)
    keys = [(a, lam, b) for a in monics for b in monics if cfg.gcd(a, b) == ONE for lam in lams]
    return sorted(keys, key=key_order)


def key_elem(cfg: GlobalConfig, k: Key) -> AlgebraElem:
    return AlgebraElem(cfg, {k: UScalar.const(cfg.p, 1)})


# -- text and JSON ---------------------------------------------------------


def _fmt_poly_arg(cfg, f):
    return cfg.format_poly(f)


def format_key(cfg: GlobalConfig, k: Key) -> str:
    a, lam, b = k
    parts = []
    if a != ONE:
        parts.append(f"mu({_fmt_poly_arg(cfg, a)})")
    if lam.num or (a == ONE and b == ONE):
        parts.append(f"e({format_torsion(cfg, lam)})")
    if b != ONE:
        parts.append(f"mu*({_fmt_poly_arg(cfg, b)})")
    return "*".join(parts)


def format_scalar(x: UScalar) -> str:
    """Scalar as a sum of 'r*z^i*u^k' monomials, parseable by the expression grammar."""
    mons = []
    for k in sorted(x.d):
        v = x.d[k]
        for i, r in enumerate(v.c):
            if r:
                s = f"({r})" if r.denominator != 1 or r < 0 else str(r)
                if i:
                    s += f"*z^{i}"
                if k:
                    s += f"*u^{k}"
                mons.append(s)
    return " + ".join(mons)


def format_elem(x: AlgebraElem) -> str:
    if x.is_zero():
        return "0"
    cfg = x.cfg
    out = []
    for k, v in x.sorted_terms():
        body = format_key(cfg, k)
        if v == UScalar.const(cfg.p, 1):
            out.append(body)
        else:
            sc = format_scalar(v)
            if " + " in sc or not sc.startswith("("):
                sc = f"({sc})"
            out.append(f"{sc}*{body}")
    return " + ".join(out)


def elem_to_json(x: AlgebraElem) -> list:
    cfg = x.cfg
    out = []
    for (a, lam, b), v in x.sorted_terms():
        out.append({
            "a": cfg.format_poly(a),
            "b": cfg.format_poly(b),
            "lambda": {"num": cfg.format_poly(lam.num), "den": cfg.format_poly(lam.den)},
            "coeff": [{"u_pow": k, "cyclo": [str(r) for r in v.d[k].c]} for k in sorted(v.d)],
        })
    return out


def elem_from_json(cfg: GlobalConfig, data: list) -> AlgebraElem:
    acc = zero(cfg)
    for item in data:
        coeff = UScalar(cfg.p, {c["u_pow"]: Cyclo(cfg.p, [Fraction(r) for r in c["cyclo"]])
                                for c in item["coeff"]})
        lam = torsion_reduce(cfg, cfg.parse_poly(item["lambda"]["num"]), cfg.parse_poly(item["lambda"]["den"]))
        acc = acc + basis_elem(cfg, cfg.parse_poly(item["a"]), lam, cfg.parse_poly(item["b"]), coeff)
    return acc
