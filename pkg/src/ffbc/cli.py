"""Command-line front end.

    ffbc places count --q 2 --deg 3
    ffbc zeta eval --q 3 --beta 2 -D 8
    ffbc state eval --state gibbs --chi "chi(1;T)" --expr "e(1/T)" --beta 2
    ffbc verify relations kms --q 2 --maxdeg 2

Everything is written as JSON (default) or CSV to stdout or --out.
Exit codes: 0 success / all suites pass, 1 some suite fails, 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import carlitz as cz
from . import characters as ch
from . import hecke as hk
from . import regular_rep as rr
from . import states as st
from . import suites
from . import zeta as zt
from .errors import FFBCError, ParseError
from .exprparse import parse_expr
from .ffpoly import GlobalConfig


class UsageError(Exception):
    pass


# -- helpers ---------------------------------------------------------------


def _config(args) -> GlobalConfig:
    q = args.q
    modulus = None
    if args.modulus:
        base = GlobalConfig.from_q(q)
        modulus = GlobalConfig(base.p).parse_poly(args.modulus, var="x")
    return GlobalConfig.from_q(q, modulus)


def _need(args, name):
    v = getattr(args, name, None)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for this command")
    return v


def _poly(cfg, text, monic=False):
    f = cfg.parse_poly(text)
    if monic and not cfg.is_monic(f):
        raise ParseError(f"{text!r} must be a monic polynomial")
    return f


def _config_echo(cfg, args):
    return {"q": cfg.q, "modulus": None if cfg.modulus is None else cfg.format_poly(cfg.modulus, "x"),
            "beta": getattr(args, "beta", None), "D": getattr(args, "maxdeg", None),
            "level": getattr(args, "level", None)}


# -- subcommands -----------------------------------------------------------


def cmd_places(cfg, args):
    n = _need(args, "deg")
    if args.action == "count":
        tab = zt.place_count_table(cfg, n)
        return {str(k): v for k, v in sorted(tab.by_norm.items())}
    c = _poly(cfg, _need(args, "level"), monic=True)
    return zt.frobenius_counts(cfg, c, n)


def cmd_zeta(cfg, args):
    if args.action == "eval":
        D = args.maxdeg if args.maxdeg is not None else 12
        if args.formal or args.beta is None:
            z = zt.zeta_closed(cfg)
            return {"q": cfg.q, "rational": z.to_json(), "exact": str(z), "series": [str(c) for c in z.series(D)]}
        rep = zt.zeta_evaluate(cfg, args.beta, D)
        rep["q"] = cfg.q
        return rep
    c = _poly(cfg, _need(args, "level"), monic=True)
    r = _poly(cfg, _need(args, "residue"))
    z = zt.partial_zeta(cfg, c, r)
    return {"q": cfg.q, "c": cfg.format_poly(c), "r": cfg.format_poly(r), "rational": z.to_json(), "exact": str(z)}


def cmd_carlitz(cfg, args):
    if args.action == "phi":
        a = _poly(cfg, _need(args, "poly"))
        tw = cz.carlitz_phi(cfg, a)
        return {"a": cfg.format_poly(a), "coefficients": [cfg.format_poly(c) for c in tw]}
    if args.action == "torsion":
        c = _poly(cfg, _need(args, "level"), monic=True)
        pts = cz.torsion_group(cfg, c, generators_only=args.generators)
        return {"level": cfg.format_poly(c), "count": len(pts), "points": [cz.format_torsion(cfg, x) for x in pts]}
    a = _poly(cfg, _need(args, "poly"))
    lam = cz.parse_torsion(cfg, _need(args, "point"))
    return {"a": cfg.format_poly(a), "point": cz.format_torsion(cfg, lam),
            "image": cz.format_torsion(cfg, cz.torsion_act(cfg, a, lam))}


def cmd_char(cfg, args):
    chi = ch.parse_char(cfg, _need(args, "chi"))
    out = {"chi": ch.format_char(cfg, chi)}
    if args.action == "eval":
        lam = cz.parse_torsion(cfg, _need(args, "point"))
        k = ch.char_eval(cfg, chi, lam)
        out.update({"point": cz.format_torsion(cfg, lam), "exponent": k, "p": cfg.p})
    elif args.action == "admissible":
        rep = ch.is_admissible(cfg, chi)
        out.update({"admissible": rep["admissible"], "vacuous": rep["vacuous"],
                    "per_prime": {cfg.format_poly(k): v for k, v in rep["per_prime"].items()}})
    elif args.action == "shift":
        a = _poly(cfg, _need(args, "poly"), monic=True)
        out["result"] = ch.format_char(cfg, ch.char_shift(cfg, chi, a, raise_level=args.raise_level))
    else:
        a = _poly(cfg, _need(args, "poly"), monic=True)
        out["result"] = ch.format_char(cfg, ch.char_root(cfg, chi, a))
    return out


def cmd_algebra(cfg, args):
    exprs = _need(args, "expr")
    elems = [parse_expr(cfg, t) for t in exprs]
    if args.action == "parse":
        x = elems[0]
        return {"canonical": hk.format_elem(x), "terms": hk.elem_to_json(x)}
    if args.action == "mul":
        x = elems[0]
        for y in elems[1:]:
            x = hk.mul(x, y)
        return {"canonical": hk.format_elem(x), "terms": hk.elem_to_json(x)}
    if args.action == "expect":
        x = elems[0]
        return {"canonical": hk.format_elem(hk.cond_expectation(x)),
                "closed_form": hk.format_elem(hk.expectation_closed_form(x))}
    # rep
    chi = ch.parse_char(cfg, _need(args, "chi"))
    D = args.maxdeg if args.maxdeg is not None else 4
    R = rr.build_rep(cfg, chi, D)
    M = rr.rep_apply(R, elems[0])
    return {"basis": [cfg.format_poly(m) for m in R.index], "matrix": M.to_json(),
            "_csv_rows": _matrix_csv(cfg, M, args.beta)}


def _matrix_csv(cfg, M, beta):
    """Complex entries at u = q^-beta (beta defaults to 2)."""
    u = float(cfg.q) ** -(2.0 if beta is None else beta)
    rows = []
    for (i, j), v in sorted(M.entries.items()):
        z = v.evaluate(u)
        rows.append({"row": i, "col": j, "real": z.real, "imag": z.imag})
    return rows


def cmd_state(cfg, args):
    if args.action == "partition":
        D = args.maxdeg if args.maxdeg is not None else 12
        return st.partition_function(cfg, D, None if args.formal else args.beta)
    exprs = _need(args, "expr")
    if len(exprs) != 1:
        raise UsageError("state eval takes exactly one --expr")
    x = parse_expr(cfg, exprs[0])
    beta = None if args.formal else args.beta
    if beta is None and not args.formal:
        raise UsageError("state eval needs --beta B or --formal")
    D = args.maxdeg if args.maxdeg is not None else 8
    if args.state == "phi_beta":
        value = st.phi_beta(x)
        trunc = {"D": D, "series": [str(c) for c in value.series(D)],
                 "note": "phi_beta is exact on the algebra; no truncation involved"}
    else:
        chi = ch.parse_char(cfg, _need(args, "chi"))
        value = st.gibbs_closed(cfg, chi, x, auto_lift=args.auto_lift)
        trunc = _trace_report(cfg, chi, x, value, D)
    rep = st.value_report(cfg, value, beta)
    out = {"exact": rep["exact"], "exact_parts": {"num": rep["exact_num"], "den": rep["exact_den"]}}
    if beta is not None:
        out["numeric"] = rep["numeric"]
        out["beta"] = beta
    out["truncation_report"] = trunc
    out["config"] = _config_echo(cfg, args)
    return out


def _trace_report(cfg, chi, x, value, D):
    """Series of the closed form against the degree-D truncated trace."""
    from .scalars import RatU

    try:
        R = rr.build_rep(cfg, chi, D)
        num, den = rr.gibbs_trace_truncated(R, x)
    except FFBCError as exc:
        return {"D": D, "available": False, "reason": str(exc)}
    # value * zeta through u^D is the weighted trace numerator
    closed = (value * RatU(rr.UScalar.const(cfg.p, 1), [1, -cfg.q])).series(D)
    traced = [num.coeff(n) for n in range(D + 1)]
    return {"D": D, "available": True, "agree_through_D": closed == traced,
            "closed_series": [str(c) for c in closed], "trace_series": [str(c) for c in traced]}


def cmd_verify(cfg, args):
    names = [n for n, _ in suites.default_plan(cfg)]
    only = args.suites or None
    if only:
        bad = [s for s in only if s not in names]
        if bad:
            raise UsageError(f"unknown suite(s) {bad}; choose from {names}")
    maxdeg = args.maxdeg if args.maxdeg is not None else 2
    return suites.verify_all(cfg, maxdeg, quick=args.quick, perturb=args.perturb, only=only,
                             timings=args.timings, seed=args.seed)


COMMANDS = {
    "places": (cmd_places, ["count", "frobenius"]),
    "zeta": (cmd_zeta, ["eval", "partial"]),
    "carlitz": (cmd_carlitz, ["phi", "torsion", "act"]),
    "char": (cmd_char, ["eval", "admissible", "shift", "root"]),
    "algebra": (cmd_algebra, ["parse", "mul", "expect", "rep"]),
    "state": (cmd_state, ["eval", "partition"]),
}


def _common(p):
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--modulus", help="irreducible over F_p in the variable x, e.g. x^2+x+1")
    p.add_argument("--beta", type=float)
    p.add_argument("--maxdeg", "-D", type=int)
    p.add_argument("--level", help="monic polynomial, e.g. T^2+1")
    p.add_argument("--expr", action="append", help="algebra expression (repeat for products)")
    p.add_argument("--chi", help='character "chi(t; c)"')
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--perturb", choices=["f-relation"])
    p.add_argument("--deg", type=int)
    p.add_argument("--formal", action="store_true")
    p.add_argument("--timings", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffbc", description="exact Bost-Connes workbench for F_q(T)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, actions) in COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("action", choices=actions)
        _common(p)
        if name == "zeta":
            p.add_argument("--residue")
        if name in ("carlitz", "char"):
            p.add_argument("--poly")
            p.add_argument("--point", help='torsion point "r/s"')
        if name == "carlitz":
            p.add_argument("--generators", action="store_true")
        if name == "char":
            p.add_argument("--raise-level", action="store_true")
        if name == "state":
            p.add_argument("--state", choices=["phi_beta", "gibbs"], default="phi_beta")
            p.add_argument("--auto-lift", action="store_true")
    p = sub.add_parser("verify")
    p.add_argument("suites", nargs="*")
    p.add_argument("--quick", action="store_true")
    _common(p)
    return parser


def _to_csv(payload) -> str:
    buf = io.StringIO()
    if isinstance(payload, dict) and "_csv_rows" in payload:
        rows = payload["_csv_rows"]
    elif isinstance(payload, dict) and "suites" in payload:
        rows = [{k: s.get(k) for k in ("name", "status", "cases", "anchor")} for s in payload["suites"]]
    elif isinstance(payload, dict):
        rows = [{"key": k, "value": json.dumps(v) if isinstance(v, (dict, list)) else v}
                for k, v in payload.items()]
    else:
        rows = [{"value": json.dumps(payload)}]
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _emit(payload, args):
    if args.format == "csv":
        text = _to_csv(payload)
    else:
        if isinstance(payload, dict):
            payload = {k: v for k, v in payload.items() if not k.startswith("_")}
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        if args.command == "verify":
            payload = cmd_verify(cfg, args)
        else:
            payload = COMMANDS[args.command][0](cfg, args)
    except UsageError as exc:
        sys.stderr.write(f"ffbc: error: {exc}\n")
        return 2
    except FFBCError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError) and exc.pos is not None:
            err["position"] = exc.pos
        sys.stderr.write(json.dumps(err) + "\n")
        return 2
    _emit(payload, args)
    if isinstance(payload, dict) and payload.get("status") == "fail":
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
