"""Compare the two routes to the homogeneity-5 curvature at random order-8 jet points.

The direct route decomposes [H_i^, T^] on the lifted frame; the derived route
applies the lifted fields to the homogeneity-4 coefficients.  Run:

    python3 scripts/homogeneity5_routes.py --points 2 --seed 0
"""

import argparse
import random
import time
from fractions import Fraction

from cartanforge.cartan.connection import ConnectionCoefficients, curvature_h5
from cartanforge.cartan.fiber import FiberRational
from cartanforge.cartan.jetring import SeriesJetRing
from cartanforge.jetcalc.verify import random_jet_point

FIBER_POINT = (Fraction(1, 3), Fraction(-2), Fraction(1), Fraction(1), Fraction(5, 7))


def numeric(value, ring) -> FiberRational:
    return FiberRational(value.num.map_coefficients(ring.value), value.power).reduce()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--bound", type=int, default=9)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    for n in range(args.points):
        start = time.perf_counter()
        point = random_jet_point(rng, order=8, bound=args.bound)
        ring = SeriesJetRing.from_jets(point.values)
        routes = curvature_h5(ConnectionCoefficients.build(ring))
        for key in ("h1t", "h2t"):
            direct = numeric(routes["direct"][key], ring)
            derived = numeric(routes["derived"][key], ring)
            agree = (direct - derived).reduce().is_zero()
            print(f"point {n + 1} kappa^{key}_j: routes agree={agree} "
                  f"value at {tuple(map(str, FIBER_POINT))} = {direct.evaluate(FIBER_POINT)}")
        print(f"point {n + 1}: {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
