"""Exact equilibrium states on the algebra, as rational functions of u = q^-beta.

phi_beta (the Galois-invariant state) on a basis term:

    phi_beta(mu_a e(lam) mu_b^*) = 1_{a=b} (1/Phi(s)) sum_{f | s} M(s/f) N f u^(deg a + deg f),

with s = ann(lam).  This is the state mu_a mu_b^* -> 1_{a=b} u^deg a composed
with the conditional expectation written in Moebius form.

Gibbs state of an admissible character chi:

    phi_chi(mu_a e(lam) mu_b^*) = 1_{a=b} (1 - q u) u^deg a Theta_chi(lam),
    Theta_chi(lam) = sum_{m monic} chi(m lam) u^deg m.

For m of degree n >= deg s the value chi(m lam) only depends on m mod s and
each residue is hit q^(n - deg s) times, so the tail of Theta is
S u^deg s / (1 - q u) with S the character sum over O/s.  S vanishes when chi
is nontrivial on phi[s], which is the case for admissible chi and lam != 0.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .carlitz import TORSION_ZERO, TorsionPoint, ideal_arith_functions, torsion_act, torsion_add
from .characters import (LevelChar, admissible, char_eval, char_eval_unchecked, char_lift,
                         galois_act_char, galois_elements)
from .errors import AdmissibilityRequired, DivergentSeries, LevelMismatch
from .ffpoly import ONE, GlobalConfig, Poly
from .hecke import AlgebraElem, annihilator_lcm, kms_twist, mul, weight
from .scalars import Cyclo, RatU, UScalar, qpoly_series_inverse
from .zeta import ZetaRational, partial_zeta, zeta_closed, zeta_evaluate


@lru_cache(maxsize=None)
def _phi_profile(cfg: GlobalConfig, s: Poly) -> tuple:
    """((deg f, coefficient), ...) for (1/Phi(s)) sum_{f|s} M(s/f) N f u^deg f."""
    phi_s, _ = ideal_arith_functions(cfg, s)
    acc: dict = {}
    for f in cfg.divisors(s):
        _, m = ideal_arith_functions(cfg, cfg.exact_div(s, f))
        if m:
            d = len(f) - 1
            acc[d] = acc.get(d, 0) + Fraction(m * cfg.q**d, phi_s)
    return tuple(sorted((k, v) for k, v in acc.items() if v))


def phi_beta_key(cfg: GlobalConfig, key) -> UScalar:
    a, lam, b = key
    if a != b:
        return UScalar(cfg.p)
    da = len(a) - 1
    return UScalar(cfg.p, {da + k: Cyclo.rational(cfg.p, v) for k, v in _phi_profile(cfg, lam.den)})


def phi_beta(x: AlgebraElem) -> RatU:
    """The Galois-invariant KMS state, exactly (a Laurent polynomial in u)."""
    cfg = x.cfg
    acc = UScalar(cfg.p)
    for key, v in x.terms.items():
        if key[0] == key[2]:
            acc = acc + v * phi_beta_key(cfg, key)
    return RatU(acc)


def product_closed_form(cfg: GlobalConfig, k1, k2) -> UScalar:
    """The two-term formula for phi_beta(f1 f2), c = ann(lam1 + lam2)."""
    a1, l1, b1 = k1
    a2, l2, b2 = k2
    if a1 != b2 or a2 != b1:
        return UScalar(cfg.p)
    c = torsion_add(cfg, l1, l2).den
    da = len(a1) - 1
    return UScalar(cfg.p, {da + k: Cyclo.rational(cfg.p, v) for k, v in _phi_profile(cfg, c)})


def phi_beta_product_identity(cfg: GlobalConfig, k1, k2) -> dict:
    from .hecke import key_elem

    lhs = phi_beta(mul(key_elem(cfg, k1), key_elem(cfg, k2)))
    rhs = RatU(product_closed_form(cfg, k1, k2))
    return {"pass": lhs == rhs, "lhs": str(lhs), "rhs": str(rhs)}


def kms_verify(x: AlgebraElem, y: AlgebraElem, state=phi_beta) -> dict:
    """state(y x) == state(x sigma_{i beta}(y)) as exact rational functions."""
    lhs = state(mul(y, x))
    rhs = state(mul(x, kms_twist(y, 1)))
    ok = lhs == rhs
    return {"pass": ok, "lhs": str(lhs), "rhs": str(rhs)}


# -- Gibbs states ----------------------------------------------------------


@lru_cache(maxsize=None)
def _char_sums(cfg: GlobalConfig, t: Poly, lam: TorsionPoint) -> tuple:
    """(coefficients of sum_{deg m = n} chi(m lam) for n < deg s, tail sum S)."""
    s = lam.den
    ds = len(s) - 1
    p = cfg.p
    head = []
    for n in range(ds):
        counts = [0] * p
        for m in cfg.enumerate_monic(n):
            counts[char_eval_unchecked(cfg, t, torsion_act(cfg, m, lam))] += 1
        head.append(_counts_to_cyclo(p, counts))
    counts = [0] * p
    for r in cfg.residues(ds):
        counts[char_eval_unchecked(cfg, t, torsion_act(cfg, r, lam))] += 1
    return tuple(head), _counts_to_cyclo(p, counts)


def _counts_to_cyclo(p, counts) -> Cyclo:
    acc = Cyclo.zero(p)
    for k, c in enumerate(counts):
        if c:
            acc = acc + Cyclo.root(p, k) * c
    return acc


def theta_series(cfg: GlobalConfig, chi: LevelChar, lam: TorsionPoint) -> RatU:
    """sum over monic m of chi(m lam) u^deg m, as an exact rational function."""
    q, p = cfg.q, cfg.p
    if not lam.num:
        return RatU(UScalar.const(p, 1), [1, -q])
    if not cfg.divides(lam.den, chi.level):
        raise LevelMismatch("annihilator does not divide the character level")
    head, S = _char_sums(cfg, cfg.mod(chi.t, lam.den), lam)
    ds = len(lam.den) - 1
    poly = UScalar(p, {n: c for n, c in enumerate(head)})
    if S.is_zero():
        return RatU(poly)
    return RatU(poly.mul_qpoly([1, -q]) + UScalar(p, {ds: S}), [1, -q])


def _ensure_level(cfg, chi: LevelChar, x: AlgebraElem, auto_lift: bool) -> LevelChar:
    c = annihilator_lcm(x)
    if cfg.divides(c, chi.level):
        return chi
    if not auto_lift:
        raise LevelMismatch("annihilators in the element do not divide the character level")
    return char_lift(cfg, chi, cfg.lcm(c, chi.level))


def gibbs_closed(cfg: GlobalConfig, chi: LevelChar, x: AlgebraElem, auto_lift: bool = False) -> RatU:
    """Gibbs state of an admissible character, exactly.

    With auto_lift the character is extended (char_lift) to a level that
    covers every annihilator in x, keeping its values on phi[level].
    """
    if not admissible(cfg, chi):
        raise AdmissibilityRequired("Gibbs states are defined for admissible characters")
    chi = _ensure_level(cfg, chi, x, auto_lift)
    q, p = cfg.q, cfg.p
    poly = UScalar(p)
    for key, v in x.terms.items():
        a, lam, b = key
        if a != b:
            continue
        da = len(a) - 1
        if not lam.num:
            poly = poly + v.shift(da)
            continue
        head, S = _char_sums(cfg, cfg.mod(chi.t, lam.den), lam)
        assert S.is_zero(), "tail must vanish for admissible characters"
        th = UScalar(p, {n: c for n, c in enumerate(head)})
        poly = poly + (v * th).mul_qpoly([1, -q]).shift(da)
    return RatU(poly)


def gibbs_from_theta(cfg: GlobalConfig, chi: LevelChar, x: AlgebraElem) -> RatU:
    """Same state through the general theta_series (no admissibility shortcut)."""
    q, p = cfg.q, cfg.p
    acc = RatU(UScalar(p))
    for (a, lam, b), v in x.terms.items():
        if a == b:
            acc = acc + theta_series(cfg, chi, lam) * v.shift(len(a) - 1)
    return acc * RatU(UScalar(p, {0: Cyclo.rational(p, 1), 1: Cyclo.rational(p, -q)}))


def special_value_prime(cfg: GlobalConfig, chi: LevelChar, pi: Poly, lam: TorsionPoint) -> RatU:
    """Gibbs value on e(lam), lam in phi[pi], assembled from partial zeta functions:

        zeta^-1 ( N pi^-beta zeta + sum_{r in (O/pi)*} chi(r lam) zeta_{pi, r} ).
    """
    if not cfg.is_irreducible(pi):
        raise LevelMismatch("expected a prime ideal")
    if not cfg.divides(pi, chi.level):
        raise LevelMismatch("the prime must divide the character level")
    if lam.num and not cfg.divides(lam.den, pi):
        raise LevelMismatch("torsion point must lie in phi[pi]")
    if cfg.divides(pi, chi.t):
        raise AdmissibilityRequired("character must be admissible at the prime")
    p, q = cfg.p, cfg.q
    z = zeta_closed(cfg)
    acc = _zr_to_ratu(p, ZetaRational([0] * (len(pi) - 1) + [1]) * z)
    for r in cfg.units_mod(pi):
        k = char_eval(cfg, chi, torsion_act(cfg, r, lam))
        acc = acc + _zr_to_ratu(p, partial_zeta(cfg, pi, r)) * Cyclo.root(p, k)
    return acc * RatU(UScalar(p, {0: Cyclo.rational(p, 1), 1: Cyclo.rational(p, -q)}))


def _zr_to_ratu(p, z: ZetaRational) -> RatU:
    return RatU(UScalar(p, {k: Cyclo.rational(p, c) for k, c in enumerate(z.num) if c}), z.den)


def galois_average_gibbs(cfg: GlobalConfig, chi0: LevelChar, x: AlgebraElem) -> RatU:
    """Average of the Gibbs states of sigma chi0 over sigma in (O/L)*.

    L is the lcm of the level of chi0 and the annihilators in x; chi0 is
    extended to L with char_lift first.
    """
    chi0 = _ensure_level(cfg, chi0, x, auto_lift=True)
    group = galois_elements(cfg, chi0.level)
    acc = RatU(UScalar(cfg.p))
    for s in group:
        acc = acc + gibbs_closed(cfg, galois_act_char(cfg, s, chi0), x)
    return acc * Fraction(1, len(group))


# -- numeric layer and partition function ----------------------------------


def evaluate_state(cfg: GlobalConfig, value: RatU, beta: float) -> complex:
    if beta <= 1:
        raise DivergentSeries("numeric evaluation needs beta > 1")
    return value.evaluate(float(cfg.q) ** (-beta))


def state_series(value: RatU, n: int) -> list:
    return value.series(n)


def partition_function(cfg: GlobalConfig, D: int, beta: float | None = None) -> dict:
    """Truncated trace of exp(-beta H) against 1/(1 - q u)."""
    q = cfg.q
    truncated = [q**n for n in range(D + 1)]
    if beta is None:
        closed = [int(c) for c in qpoly_series_inverse([1, -q], D)]
        return {"mode": "formal", "D": D, "truncated": truncated, "closed_series": closed,
                "pass": truncated == closed}
    rep = zeta_evaluate(cfg, beta, D)
    rep["mode"] = "numeric"
    return rep


def value_report(cfg: GlobalConfig, value: RatU, beta: float | None = None) -> dict:
    out = {"exact": str(value), "exact_num": str(value.num),
           "exact_den": [str(c) for c in value.den]}
    if beta is not None:
        z = evaluate_state(cfg, value, beta)
        out["numeric"] = z.real if abs(z.imag) < 1e-12 else [z.real, z.imag]
        out["beta"] = beta
    return out


__all__ = [
    "phi_beta", "phi_beta_key", "phi_beta_product_identity", "product_closed_form", "kms_verify",
    "theta_series", "gibbs_closed", "gibbs_from_theta", "special_value_prime", "galois_average_gibbs",
    "evaluate_state", "partition_function", "value_report", "weight",
]
