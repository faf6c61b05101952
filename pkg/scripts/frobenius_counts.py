"""Exploratory: distribution of monic primes over residue classes mod c.
No density claim is made or checked."""
import sys

from ffbc import zeta as zt
from ffbc.ffpoly import GlobalConfig


def main(q=3, level="T^2+1", max_degree=6):
    cfg = GlobalConfig.from_q(int(q))
    out = zt.frobenius_counts(cfg, cfg.parse_poly(level), int(max_degree))
    for k, v in out.items():
        print(k, v)


if __name__ == "__main__":
    main(*sys.argv[1:])
