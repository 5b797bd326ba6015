"""Command-line surface.

Exit codes: 0 success, 1 numerical precondition failure, 2 parse error,
3 invariant violation (from `verify`).
"""

from __future__ import annotations

import argparse
import sys as _sys

import numpy as np

from .decay import demko_certificate, invert_bound_for_N
from .errors import (FrameBankError, InvariantViolation, SpecFileError)
from .finite_section import convergence_sweep, solve_dual_fs
from .frame_operator import frame_bounds, symbol
from .oracles import counterexample_matrices, tridiagonal_det
from .periodic import compare_periodic_vs_fs, solve_dual_periodic
from .specfile import (format_float, load_system, write_convergence_csv,
                       write_sequences_csv)
from .tight import tight_fs, tight_periodic
from .verification import run_verification

__all__ = ["main", "build_parser"]


def _parse_n_list(text):
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("expected a:b or a:b:step")
    try:
        a, b = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if step < 1 or b < a:
        raise argparse.ArgumentTypeError("need a <= b and step >= 1")
    return list(range(a, b + 1, step))


def build_parser():
    p = argparse.ArgumentParser(
        prog="framebank",
        description="Approximate dual and tight generators of FIR "
                    "shift-invariant systems, with certified error bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("bounds", help="frame bounds and decay constants")
    sp.add_argument("spec")
    sp.add_argument("--grid", type=int, default=None)

    sp = sub.add_parser("dual", help="finite-section duals")
    sp.add_argument("spec")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.add_argument("--plot", default=None, metavar="PNG")

    sp = sub.add_parser("periodic-dual", help="periodic (circulant) duals")
    sp.add_argument("spec")
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("tight", help="tight generators")
    sp.add_argument("spec")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--N", type=int)
    grp.add_argument("--L", type=int)
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("convergence", help="finite-section error sweep")
    sp.add_argument("spec")
    sp.add_argument("--N-list", type=_parse_n_list, required=True)
    sp.add_argument("--N-ref", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--plot", default=None, metavar="PNG")

    sp = sub.add_parser("periodic-convergence",
                        help="periodic model vs reference duals")
    sp.add_argument("spec")
    sp.add_argument("--N-list", type=_parse_n_list, required=True)
    sp.add_argument("--N-ref", type=int, default=None)
    sp.add_argument("--out", required=True)
    sp.add_argument("--plot", default=None, metavar="PNG")

    sp = sub.add_parser("pick-N", help="smallest N meeting an error target")
    sp.add_argument("spec")
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--grid", type=int, default=None)

    sp = sub.add_parser("verify", help="run the invariant suite")
    sp.add_argument("spec")
    sp.add_argument("--N", type=int, required=True)

    sp = sub.add_parser("oracle", help="built-in oracle computations")
    sp.add_argument("what", choices=["counterexample"])
    return p


def _certificate(spec, grid):
    system = load_system(spec)
    fb = frame_bounds(symbol(system), grid)
    return system, demko_certificate(fb.A, fb.B, system.s, grid=fb.grid)


def _cmd_bounds(args):
    _, cert = _certificate(args.spec, args.grid)
    for key, val in [("A", cert.A), ("B", cert.B), ("kappa", cert.kappa),
                     ("q", cert.q), ("lambda", cert.lam), ("D", cert.D),
                     ("C", cert.C)]:
        print("{}={}".format(key, format_float(val)))
    return 0


def _cmd_dual(args):
    system = load_system(args.spec)
    sol = solve_dual_fs(system, args.N)
    if args.out:
        write_sequences_csv(args.out, sol.duals)
        print("wrote {}".format(args.out))
    else:
        for m, d in enumerate(sol.duals):
            print("channel {} residual {}".format(m, format_float(sol.residuals[m])))
            for i, v in enumerate(d.values):
                print("  {} {} {}".format(d.offset + i, format_float(v.real),
                                          format_float(v.imag)))
    if args.plot:
        from .plotting import plot_dual_decay

        plot_dual_decay(sol.duals, args.plot)
        print("wrote {}".format(args.plot))
    return 0


def _cmd_periodic_dual(args):
    system = load_system(args.spec)
    per = solve_dual_periodic(system, args.L)
    print("spectrum_lo={}".format(format_float(per.spectrum_lo)))
    print("spectrum_hi={}".format(format_float(per.spectrum_hi)))
    if args.out:
        rows = []
        for d in per.duals:
            from .sequences import FiniteSeq

            rows.append(FiniteSeq(0, d.values))
        write_sequences_csv(args.out, rows)
        print("wrote {}".format(args.out))
    return 0


def _cmd_tight(args):
    system = load_system(args.spec)
    if args.N is not None:
        sol = tight_fs(system, args.N)
    else:
        sol = tight_periodic(system, args.L)
    print("tightness_defect={}".format(format_float(sol.tightness_defect)))
    if args.out:
        from .sequences import FiniteSeq

        gens = [g if isinstance(g, FiniteSeq) else FiniteSeq(0, g.values)
                for g in sol.generators]
        write_sequences_csv(args.out, gens)
        print("wrote {}".format(args.out))
    return 0


def _cmd_convergence(args):
    system = load_system(args.spec)
    rows = convergence_sweep(system, args.N_list, args.N_ref)
    write_convergence_csv(args.out, rows)
    print("wrote {}".format(args.out))
    if args.plot:
        from .plotting import plot_convergence

        plot_convergence(rows, args.plot)
        print("wrote {}".format(args.plot))
    return 0


def _cmd_periodic_convergence(args):
    system = load_system(args.spec)
    rows = []
    for N in args.N_list:
        rows.extend(compare_periodic_vs_fs(system, N, N_ref=args.N_ref))
    write_convergence_csv(args.out, rows)
    print("wrote {}".format(args.out))
    if args.plot:
        from .plotting import plot_convergence

        plot_convergence(rows, args.plot, title="Periodic-model convergence")
        print("wrote {}".format(args.plot))
    return 0


def _cmd_pick_n(args):
    _, cert = _certificate(args.spec, args.grid)
    print(invert_bound_for_N(cert, args.delta))
    return 0


def _cmd_verify(args):
    system = load_system(args.spec)
    violations = run_verification(system, args.N)
    for v in violations:
        print("VIOLATION: {}".format(v))
    if violations:
        raise InvariantViolation("{} invariant(s) violated".format(len(violations)))
    print("all invariants hold at N={}".format(args.N))
    return 0


def _cmd_oracle(args):
    T, PT = counterexample_matrices()
    print("T =")
    for row in T:
        print("  " + " ".join(format(v, "5.1f") for v in row))
    print("PT =")
    for row in PT:
        print("  " + " ".join(format(v, "5.1f") for v in row))
    print("det(T)={}".format(format_float(tridiagonal_det(2.0, -1.0, 4))))
    sigma_min = float(np.linalg.svd(PT, compute_uv=False)[-1])
    print("sigma_min(PT)={}".format(format_float(sigma_min)))
    return 0


_HANDLERS = {
    "bounds": _cmd_bounds,
    "dual": _cmd_dual,
    "periodic-dual": _cmd_periodic_dual,
    "tight": _cmd_tight,
    "convergence": _cmd_convergence,
    "periodic-convergence": _cmd_periodic_convergence,
    "pick-N": _cmd_pick_n,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except SpecFileError as exc:
        print("error: {}".format(exc), file=_sys.stderr)
        return 2
    except InvariantViolation as exc:
        print("error: {}".format(exc), file=_sys.stderr)
        return 3
    except FrameBankError as exc:
        print("error: {}".format(exc), file=_sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
