"""Table of Gibbs values on e(lambda) for every admissible character of a
small level, exact and at a given beta, next to the truncated trace."""
import sys

from ffbc import carlitz as cz
from ffbc import characters as ch
from ffbc import hecke as hk
from ffbc import regular_rep as rr
from ffbc import states as S
from ffbc.ffpoly import GlobalConfig


def main(q=2, level="T^2", beta=2.0, D=10):
    cfg = GlobalConfig.from_q(int(q))
    c = cfg.parse_poly(level)
    beta = float(beta)
    D = int(D)
    for chi in ch.all_chars(cfg, c):
        if not ch.admissible(cfg, chi):
            continue
        R = rr.build_rep(cfg, chi, D)
        print(f"chi(t={cfg.format_poly(chi.t)}; level {cfg.format_poly(chi.level)})")
        for lam in cz.torsion_group(cfg, c):
            x = hk.e(cfg, lam)
            g = S.gibbs_closed(cfg, chi, x)
            v = S.evaluate_state(cfg, g, beta)
            tr = rr.gibbs_trace_truncated(R, x, beta=beta)
            print(f"  e({cz.format_torsion(cfg, lam):>10})  {S.value_report(cfg, g)['exact']:>24}"
                  f"  {v.real:+.10f}{v.imag:+.10f}i   trace {tr.real:+.10f}{tr.imag:+.10f}i")


if __name__ == "__main__":
    main(*sys.argv[1:])
