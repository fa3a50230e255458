#!/usr/bin/env python3
"""Exhaustive n = 2 table over F_3 or F_5.

Every pair of binary quadratic forms is walked once; for each invariant form
the script prints the pair count, the orbit sizes found by brute force and
the census prediction next to them.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from pencils.forms import BinaryForm
from pencils.orbits import brute_force_census_n2, census_Fq, sl_order


@dataclass
class BruteConfig:
    q: int = 3
    out: str | None = None


def run(cfg: BruteConfig):
    rows = []
    want = sl_order(2, cfg.q)
    for f, row in sorted(brute_force_census_n2(cfg.q).items()):
        r = census_Fq(BinaryForm(f, cfg.q))
        predicted = [want // r.stabilizer_size] * r.orbit_count
        rows.append({
            "form": " ".join(map(str, f)), "pairs": row.pairs,
            "orbit_sizes": " ".join(map(str, sorted(row.orbit_sizes))),
            "predicted": " ".join(map(str, predicted)),
            "agree": row.pairs == want and sorted(row.orbit_sizes) == predicted,
        })
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=3, choices=[3, 5])
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    rows = run(BruteConfig(a.q, a.out))
    fh = open(a.out, "w", newline="") if a.out else sys.stdout
    w = csv.DictWriter(fh, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
    if a.out:
        fh.close()
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
