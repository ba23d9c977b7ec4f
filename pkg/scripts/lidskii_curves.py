"""Write phi(t) = sum_j d_{i_j}(A + tB) for an equality pair and a generic pair.

The equality pair shares a symplectic eigenbasis with the smallest values
of B on the selected pairs, so phi is exactly linear; for the generic pair phi bends and its
secant slope exceeds the sum of the smallest values of B.
"""

import argparse
import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "tests"))

from constructions import lidskii_equality_pair, random_pair  # noqa: E402
from sympspec.io import atomic_write, format_csv  # noqa: E402
from sympspec.williamson import curve, williamson  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--indices", default="1,3")
    ap.add_argument("--grid", type=int, default=41)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-o", "--output", default="lidskii_curves.csv")
    args = ap.parse_args()

    idx = tuple(int(s) for s in args.indices.split(","))
    grid = np.linspace(0.0, 1.0, args.grid)
    pairs = {"equality": lidskii_equality_pair(args.n, idx, args.seed), "generic": random_pair(args.n, args.seed)}
    rows = []
    for name, (A, B) in pairs.items():
        phi = curve(A, B, idx, grid).sums
        floor = williamson(B).d[: len(idx)].sum()
        lin = np.max(np.abs(phi - phi[0] - grid * (phi[-1] - phi[0])))
        print(f"{name:9s} slope {phi[-1] - phi[0]:.6f}  sum d_j(B) {floor:.6f}  linearity residual {lin:.2e}")
        rows.append(phi)
    text = format_csv(["t", "phi_equality", "phi_generic"], zip(grid, *rows))
    atomic_write(args.output, text)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
