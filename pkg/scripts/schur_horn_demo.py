"""Build a matrix with prescribed diagonal Delta_c and symplectic spectrum, then check it."""

import argparse

import numpy as np

from sympspec.majorization import compare, diagonal_vectors, schur_horn_details


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x", default="4,5,20")
    ap.add_argument("--y", default="1,7,7")
    args = ap.parse_args()
    x = np.array([float(s) for s in args.x.split(",")])
    y = np.array([float(s) for s in args.y.split(",")])

    print("relation:", compare(x, y).relation)
    res = schur_horn_details(x, y)
    dv = diagonal_vectors(res.A)
    np.set_printoptions(precision=6, suppress=True)
    print("water-filled v:", res.v)
    print("alpha:", res.alpha)
    print("Delta_c(A):", dv.dc)
    print("d_s(A):", dv.ds_spec)
    print(f"residuals: dc {res.dc_residual:.2e}, ds {res.ds_residual:.2e}")


if __name__ == "__main__":
    main()
