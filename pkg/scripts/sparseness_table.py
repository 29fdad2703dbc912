"""Print the exact MRD proportion for prime powers q and its ratio to 1/(3 q^3).

    python3 scripts/sparseness_table.py --max-q 200
"""

import argparse

from mrdcensus.gfield import prime_power
from mrdcensus.rankcode import closed_form_proportion, gaussian_binomial, mrd_count


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-q", type=int, default=64)
    args = ap.parse_args()
    print(f"{'q':>5} {'MRD codes':>34} {'proportion':>12} {'3q^3 * proportion':>18}")
    prev = None
    for q in range(2, args.max_q + 1):
        if prime_power(q) is None:
            continue
        p = closed_form_proportion(q)
        trend = "" if prev is None else ("down" if p < prev else "UP")
        print(f"{q:>5} {mrd_count(q, p):>34} {float(p):>12.4e} {float(3 * q**3 * p):>18.6f} {trend}")
        prev = p
    print(f"(all 3-dim subspaces at q=2: {gaussian_binomial(9, 3, 2)})")


if __name__ == "__main__":
    main()
