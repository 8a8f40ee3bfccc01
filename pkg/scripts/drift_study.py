"""How the float drift of the lambdas depends on the jet order and the time window.

The exact lambda jets are constant; the drift measured here is the truncation
error of evaluating lambda at the order-N coordinate jets.  Prints the worst
drift over random points (values in [-2, 2], denominators <= 8, indices <= 9).

    python scripts/drift_study.py --points 20 --orders 8 12 16 20 --windows 0.1 0.05 0.02
"""

import argparse
import random
from fractions import Fraction

from hyperflow.jets import FlowSpec, flow_sample, time_grid
from hyperflow.poly import Coordinate


def random_points(count, seed):
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        point = {}
        for row in (1, 2, 3):
            for j in range(1, 10, 2):
                den = rng.randint(1, 8)
                point[Coordinate(row, j)] = Fraction(rng.randint(-2 * den, 2 * den), den)
        points.append(point)
    return points


def worst_drift(points, ks, order, window, lambdas):
    grid = time_grid(-window, window, 20)
    worst = 0.0
    for point in points:
        for k in ks:
            table = flow_sample(FlowSpec(k, point, order=order, lambdas=lambdas, times=grid))
            worst = max(worst, max(max(row[-len(lambdas):]) for row in table.rows))
    return worst


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--points", type=int, default=20)
    parser.add_argument("--seed", type=int, default=20240801)
    parser.add_argument("--ks", type=int, nargs="+", default=[1, 3, 5])
    parser.add_argument("--orders", type=int, nargs="+", default=[8, 12, 16, 20])
    parser.add_argument("--windows", type=float, nargs="+", default=[0.1, 0.05, 0.03, 0.02])
    args = parser.parse_args()

    points = random_points(args.points, args.seed)
    lambdas = [1, 2, 3, 4]
    print("order," + ",".join(f"|t|<={w:g}" for w in args.windows))
    for order in args.orders:
        row = [worst_drift(points, args.ks, order, w, lambdas) for w in args.windows]
        print(f"{order}," + ",".join(f"{x:.3e}" for x in row))


if __name__ == "__main__":
    main()
