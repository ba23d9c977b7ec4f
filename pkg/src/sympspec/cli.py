"""Command-line interface.

Exit codes: 0 computed and holds, 1 computed and does not hold,
2 usage or parse error, 3 numerical failure.
"""

import argparse
import os
import sys

import numpy as np

from . import __version__
from .config import ToleranceConfig
from .errors import NotWeaklySupermajorized, NumericalError, SympSpecError, UsageError
from .inequalities import lidskii_report, weyl_check, weyl_equality_witness, weyl_witness_residuals
from .io import atomic_write, dump_report, format_csv, format_matrix, read_matrix, read_vector, write_matrix
from .majorization import (
    NEITHER,
    commutator_norm,
    diagonal_vectors,
    orthosymplectic_williamson,
    schur_horn_details,
    schur_horn_weak_check,
)
from .symplectic import PRNG_NAME, PRNG_VERSION, random_orthosymplectic, random_spd, random_symplectic
from .williamson import curve, williamson

SEED_ENV = "SYMPSPEC_SEED"

OK, DOES_NOT_HOLD, USAGE, NUMERICAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _tol(args):
    try:
        return ToleranceConfig(rel=args.rel_tol, cluster=args.cluster_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _header(args, tol, **extra):
    doc = {"command": args.command, "version": __version__, "tolerances": tol.as_dict()}
    doc.update(extra)
    return doc


def _emit(doc, out=None):
    text = dump_report(doc)
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _indices(text):
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise UsageError(f"indices must be comma-separated integers, got {text!r}") from None


def cmd_williamson(args):
    tol = _tol(args)
    A = read_matrix(args.matrix)
    spectrum = williamson(A, tol)
    doc = _header(
        args,
        tol,
        d=spectrum.d,
        M=spectrum.M,
        residuals={"diagonalization": spectrum.diag_residual, "symplectic": spectrum.symp_residual},
    )
    _emit(doc, args.output)
    return OK


def cmd_weyl(args):
    tol = _tol(args)
    A, B = read_matrix(args.A), read_matrix(args.B)
    rep = weyl_check(A, B, args.i, args.j, tol)
    doc = _header(args, tol, i=rep.i, j=rep.j, lhs=rep.lhs, rhs=rep.rhs, slack=rep.slack, holds=rep.holds)
    if args.witness:
        pair = weyl_equality_witness(A, B, args.i, args.j, tol)
        doc["witness"] = None
        if pair is not None:
            doc["witness"] = {"u": pair.u, "v": pair.v, "d": pair.d, "symplectic_norm": pair.symplectic_norm}
            doc["witness_residuals"] = weyl_witness_residuals(A, B, args.i, args.j, pair, tol)
    _emit(doc, args.output)
    return OK if rep.holds else DOES_NOT_HOLD


def cmd_lidskii(args):
    tol = _tol(args)
    A, B = read_matrix(args.A), read_matrix(args.B)
    rep = lidskii_report(A, B, _indices(args.indices), args.grid, args.trace_at, tol)
    doc = _header(args, tol, **{k: v for k, v in vars(rep).items()})
    _emit(doc, args.output)
    return OK


def cmd_curve(args):
    tol = _tol(args)
    A, B = read_matrix(args.A), read_matrix(args.B)
    if args.grid < 1:
        raise UsageError("grid must have at least one point")
    table = curve(A, B, _indices(args.indices), np.linspace(0.0, 1.0, args.grid), tol)
    text = format_csv(table.header(), table.rows())
    if args.output:
        atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_schur_horn(args):
    tol = _tol(args)
    if args.construct:
        x, y = read_vector(args.construct[0]), read_vector(args.construct[1])
        try:
            res = schur_horn_details(x, y, tol)
        except NotWeaklySupermajorized as exc:
            print(f"error: {exc}", file=sys.stderr)
            return DOES_NOT_HOLD
        residuals = {"dc": res.dc_residual, "ds": res.ds_residual}
        comments = [f"dc residual {res.dc_residual!r}", f"ds residual {res.ds_residual!r}"]
        if args.output:
            write_matrix(args.output, res.A, comments)
            _emit(_header(args, tol, mode="construct", output=args.output, v=res.v, alpha=res.alpha, residuals=residuals))
        else:
            sys.stdout.write(format_matrix(res.A, comments))
        return OK
    if not args.matrix:
        raise UsageError("schur-horn needs a matrix file or --construct X Y")
    A = read_matrix(args.matrix)
    rep = schur_horn_weak_check(A, tol)
    dv = diagonal_vectors(A, tol)
    sat = orthosymplectic_williamson(A, tol)
    doc = _header(
        args,
        tol,
        mode="check",
        relation=rep.relation,
        prefix_slacks=rep.prefix_slacks,
        total_gap=rep.total_gap,
        comparison_tolerance=rep.tolerance,
        diagonal_vectors=dv,
        saturation={
            "orthosymplectic": sat is not None,
            "commutator": commutator_norm(A),
            "N": None if sat is None else sat.N,
            "reconstruction_residual": None if sat is None else sat.reconstruction_residual,
        },
    )
    _emit(doc, args.output)
    return DOES_NOT_HOLD if rep.relation == NEITHER else OK


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def cmd_random(args):
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    seed = args.seed if args.seed is not None else _default_seed()
    if seed < 0:
        raise UsageError("seed must be non-negative")
    if args.kind == "spd":
        M = random_spd(2 * args.n, seed, args.cond)
    elif args.kind == "symplectic":
        M = random_symplectic(args.n, seed, args.spread)
    else:
        M = random_orthosymplectic(args.n, seed)
    comments = [f"{args.kind} n={args.n} seed={seed} prng={PRNG_NAME} v{PRNG_VERSION}"]
    if args.output:
        write_matrix(args.output, M, comments)
    else:
        sys.stdout.write(format_matrix(M, comments))
    return OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rel-tol", type=float, default=ToleranceConfig.rel, help="relative residual tolerance")
    common.add_argument("--cluster-tol", type=float, default=ToleranceConfig.cluster, help="eigenvalue clustering tolerance")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")

    parser = _Parser(prog="sympspec", description="Symplectic spectra and their inequalities.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("williamson", parents=[common], help="Williamson decomposition of a matrix file")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_williamson)

    p = sub.add_parser("weyl", parents=[common], help="symplectic Weyl inequality for one index pair")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--witness", action="store_true", help="search for a common eigenvector pair")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("lidskii", parents=[common], help="Lidskii inequality, equality and trace tests")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--indices", required=True, help="comma-separated 1-based indices")
    p.add_argument("--grid", type=int, default=21)
    p.add_argument("--trace-at", type=float, default=None)
    p.set_defaults(func=cmd_lidskii)

    p = sub.add_parser("curve", parents=[common], help="CSV of d_i(A + tB) on a uniform grid")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--indices", required=True)
    p.add_argument("--grid", type=int, default=21)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("schur-horn", parents=[common], help="diagonal versus symplectic spectrum, or the converse construction")
    p.add_argument("matrix", nargs="?")
    p.add_argument("--construct", nargs=2, metavar=("X", "Y"), help="vector files x and y")
    p.set_defaults(func=cmd_schur_horn)

    p = sub.add_parser("random", parents=[common], help="seeded random matrix")
    p.add_argument("kind", choices=["spd", "symplectic", "orthosymplectic"])
    p.add_argument("--n", type=int, required=True, help="half-dimension; the matrix is 2n x 2n")
    p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV}, else 0")
    p.add_argument("--spread", type=float, default=4.0)
    p.add_argument("--cond", type=float, default=10.0)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (NumericalError, SympSpecError) as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
