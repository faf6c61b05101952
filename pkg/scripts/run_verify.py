"""Run the full verification plan for a few fields and write JSON reports.

    python3 scripts/run_verify.py --q 2 3 --out reports
"""
import argparse
import json
import pathlib

from ffbc.ffpoly import GlobalConfig
from ffbc.suites import verify_all


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--maxdeg", type=int, default=2)
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--out", default="reports")
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for q in args.q:
        rep = verify_all(GlobalConfig.from_q(q), maxdeg=args.maxdeg, quick=args.quick, timings=True)
        path = out / f"verify_q{q}.json"
        path.write_text(json.dumps(rep, indent=2, sort_keys=True))
        print(f"q={q}: {rep['status']}  ->  {path}")
        for s in rep["suites"]:
            print(f"   {s['status']:4}  {s['name']:<28} {s['cases']:>8} cases  {s.get('seconds', 0):8.2f} s")


if __name__ == "__main__":
    main()
