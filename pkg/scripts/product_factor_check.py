"""Compare the algebra product with and without the 1/N(d) weight in the
coprime reduction, using the truncated regular representation as judge.

Prints, for every pair of small basis keys, whether each rule agrees with
the matrix product.  The weighted rule should agree everywhere.
"""
import itertools
import sys

from ffbc import characters as ch
from ffbc import hecke as hk
from ffbc import regular_rep as rr
from ffbc.ffpoly import GlobalConfig, ONE


def main(q=2, D=6):
    cfg = GlobalConfig.from_q(q)
    T = (0, 1)
    keys = [k for k in hk.basis_keys(cfg, 1, 1) if k[1].den in (ONE, T)]
    unnormed = lambda a, b: hk.mul(a, b, with_norm=False)
    reps = {}
    tally = {"weighted": [0, 0], "unweighted": [0, 0]}
    for k1, k2 in itertools.product(keys, repeat=2):
        x, y = hk.key_elem(cfg, k1), hk.key_elem(cfg, k2)
        level = cfg.lcm(T, hk.annihilator_lcm(hk.mul(x, y)))
        if level not in reps:
            reps[level] = rr.build_rep(cfg, ch.char_lift(cfg, ch.std_char(cfg, T), level), D)
        R = reps[level]
        for name, prod in (("weighted", None), ("unweighted", unnormed)):
            ok = rr.mul_oracle_check(R, x, y, product=prod)["pass"]
            tally[name][0 if ok else 1] += 1
    for name, (good, bad) in tally.items():
        print(f"q={q} {name:<11} agree {good:4d}  disagree {bad:4d}")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:]))
