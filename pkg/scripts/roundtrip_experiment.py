#!/usr/bin/env python3
"""Build integral pencils from random forms and check they invert back.

For each form f with a square last coefficient the one-point triple gives a
pencil (A, B); we record whether the invariant form is f, whether A and B are
integral, and whether the theta action has characteristic polynomial g.
"""

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass

from pencils.descent import one_point_integral_orbit
from pencils.exactnum import charpoly
from pencils.forms import BinaryForm, binary_discriminant
from pencils.orbits import invariant_form, pencil_from_triple, theta_action_from_pencil


@dataclass
class RoundTripConfig:
    n: int = 4
    count: int = 200
    bound: int = 50
    seed: int = 20231016
    negative: bool = False  # use the s = -1 triple


def square_end_form(rng, n, bound):
    roots = [c for c in range(1, bound + 1) if c * c <= bound]
    while True:
        c = rng.choice(roots)
        coeffs = [rng.choice([v for v in range(-bound, bound + 1) if v])]
        coeffs += [rng.randint(-bound, bound) for _ in range(n - 1)] + [c * c]
        f = BinaryForm(coeffs)
        if binary_discriminant(f) != 0:
            return f


def run(cfg: RoundTripConfig):
    rng = random.Random(cfg.seed)
    tally = {"forms": 0, "invariant_ok": 0, "integral": 0, "charpoly_ok": 0}
    failures = []
    start = time.perf_counter()
    for _ in range(cfg.count):
        f = square_end_form(rng, cfg.n, cfg.bound)
        pair = one_point_integral_orbit(f)
        t = pair.minus if cfg.negative else pair.plus
        P = pencil_from_triple(t.parent, t)
        inv = invariant_form(P) == f
        integral = P.is_integral()
        cp = charpoly(theta_action_from_pencil(P)) == t.parent.g
        tally["forms"] += 1
        tally["invariant_ok"] += inv
        tally["integral"] += integral
        tally["charpoly_ok"] += cp
        if not (inv and integral and cp):
            failures.append([str(c) for c in f.coeffs])
    tally["seconds"] = round(time.perf_counter() - start, 2)
    return {"config": asdict(cfg), "tally": tally, "failures": failures}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--bound", type=int, default=50)
    ap.add_argument("--seed", type=int, default=20231016)
    ap.add_argument("--negative", action="store_true")
    a = ap.parse_args(argv)
    res = run(RoundTripConfig(a.n, a.count, a.bound, a.seed, a.negative))
    print(json.dumps(res, indent=2))
    return 1 if res["failures"] else 0


if __name__ == "__main__":
    sys.exit(main())
