"""Class counts of the Werner-slice scan for several local dimensions.

    python scripts/sweep_dimensions.py --dims 2 3 4 5 6
"""

import argparse

from multired.scan import DetectionClass, ScanConfig, scan


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5])
    parser.add_argument("--a-steps", type=int, default=201)
    parser.add_argument("--b-steps", type=int, default=401)
    args = parser.parse_args()
    print("d," + ",".join(c.value for c in DetectionClass))
    for d in args.dims:
        _, summary = scan(ScanConfig(d=d, a_steps=args.a_steps, b_steps=args.b_steps))
        print(f"{d}," + ",".join(str(summary.counts[c]) for c in DetectionClass))


if __name__ == "__main__":
    main()
