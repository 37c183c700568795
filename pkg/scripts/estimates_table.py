"""Print the delay-per-area figure of merit for every effect.

    python3 scripts/estimates_table.py --colatitude 45
"""

import argparse
import math

from relhom.scenario import ScenarioConfig, run_estimates


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--colatitude", type=float, default=45.0, help="degrees from the spin axis")
    ap.add_argument("--area", type=float, default=1e6, help="m^2")
    args = ap.parse_args()

    table = run_estimates(ScenarioConfig(colatitude=math.radians(args.colatitude), area=args.area))
    merit = {row[0]: row[1] for row in table.rows}
    for name, value in merit.items():
        print(f"{name:>14}  {value:.3e} s/km^2  ({value / merit['sagnac']:.1e} x Sagnac)")


if __name__ == "__main__":
    main()
