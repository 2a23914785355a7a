"""Render a scan CSV as a grayscale detection-region map.

    multired scan --d 2 --out scan_d2.csv
    python scripts/plot_detection_regions.py scan_d2.csv scan_d2.png

Shades: white = both maps detect, light grey = only the two-party map,
mid grey = only the single-party map, dark grey = neither. Points outside
|b| <= a are left blank; the region boundary is outlined.
"""

import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

SHADES = {"BOTH": 1.0, "ONLY_L2": 0.8, "ONLY_L1": 0.55, "NEITHER": 0.3}


def load(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    a_vals = sorted({float(r["a"]) for r in rows})
    b_vals = sorted({float(r["b"]) for r in rows})
    ai = {a: i for i, a in enumerate(a_vals)}
    bi = {b: j for j, b in enumerate(b_vals)}
    img = np.full((len(b_vals), len(a_vals)), np.nan)
    for r in rows:
        img[bi[float(r["b"])], ai[float(r["a"])]] = SHADES[r["class"]]
    return a_vals, b_vals, img


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv")
    parser.add_argument("png")
    parser.add_argument("--title", default=None)
    args = parser.parse_args()
    a_vals, b_vals, img = load(args.csv)
    fig, ax = plt.subplots(figsize=(5, 5))
    cmap = plt.get_cmap("gray").copy()
    cmap.set_bad("white", alpha=0)
    ax.imshow(
        img,
        origin="lower",
        cmap=cmap,
        vmin=0,
        vmax=1,
        extent=(a_vals[0], a_vals[-1], b_vals[0], b_vals[-1]),
        aspect="auto",
        interpolation="nearest",
    )
    # outline of |b| <= a so the white region stays visible
    ax.plot([0, 1, 1, 0], [0, 1, -1, 0], color="black", lw=0.8)
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    if args.title:
        ax.set_title(args.title)
    fig.savefig(args.png, dpi=150, bbox_inches="tight")


if __name__ == "__main__":
    main()
