"""Run the slow census pieces and write one JSON report per q.

    python3 scripts/long_census.py --q 3 4 5 7 --out results/

At q = 3 this adds the brute-force count of all MRD pairs (I, A2, A3), about
two minutes on one core.  q = 7, 8, 9 run the full brute-force S sweep and
take minutes each.
"""

import argparse
import json
import logging
import time
from pathlib import Path

from mrdcensus.census import CensusOptions, census_report
from mrdcensus.cli import report_json


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, nargs="+", default=[3])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    args.out.mkdir(parents=True, exist_ok=True)
    for q in args.q:
        t0 = time.perf_counter()
        rep = census_report(q, CensusOptions(long=True, workers=args.workers, vhat=q <= 3))
        elapsed = time.perf_counter() - t0
        logging.info("q=%d t_hat=%d passed=%s in %.1fs", q, rep.t_hat, rep.passed, elapsed)
        path = args.out / f"census_q{q}.json"
        path.write_text(json.dumps(report_json(rep, timing=True), indent=2) + "\n")


if __name__ == "__main__":
    main()
