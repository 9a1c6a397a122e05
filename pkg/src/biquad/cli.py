"""Command-line interface: ``biquad <subcommand> ...``.

Exit codes: 0 on success (for ``eig``: converged), 2 when ``eig`` hits the
iteration cap, 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bench, collatz, io, kronecker, oracle, structure
from .errors import BiquadError
from .tensor import is_nonnegative

PARSED_TOL = 1e-12


def _seed(args) -> int:
    if args.seed is None:
        args.seed = int(np.random.SeedSequence().generate_state(1)[0])
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _fmt(args) -> str:
    if args.format:
        return args.format
    return "table" if sys.stdout.isatty() else "json"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load(path):
    return io.load_tensor(path)


def cmd_eig(args) -> int:
    T = _load(args.tensor)
    if not is_nonnegative(T):
        if not args.allow_general:
            print("error: tensor has negative entries (use --allow-general to continue)", file=sys.stderr)
            return 1
        print("warning: tensor has negative entries; bounds are not guaranteed", file=sys.stderr)
    cfg = collatz.CollatzConfig(k_max=args.kmax, epsilon=args.eps, record_trace=args.trace)
    res = collatz.collatz_multistart(T, cfg, n_starts=args.starts, seed=_seed(args),
                                     allow_general=args.allow_general)
    best = res.best
    fmt = _fmt(args)
    if fmt == "json":
        out = res.to_dict()
        out["seed"] = args.seed
        if args.trace:
            out["best"]["trace"] = [list(t) for t in best.trace]
        print(_dump(out))
    elif fmt == "csv":
        print("lambda_est,lambda_lower,lambda_upper,iterations,residual,status")
        print(f"{best.lambda_est!r},{best.lambda_lower!r},{best.lambda_upper!r},"
              f"{best.iterations},{best.residual!r},{best.status.value}")
    else:
        print(f"lambda_est   {best.lambda_est:.10g}")
        print(f"bounds       [{best.lambda_lower:.10g}, {best.lambda_upper:.10g}]")
        print(f"iterations   {best.iterations} (mean over starts {res.mean_iterations:.2f})")
        print(f"residual     {best.residual:.3e}")
        print(f"status       {best.status.value}")
        print(f"agreement    lower {100 * res.agreement_ratio_lower:.0f}%  upper {100 * res.agreement_ratio_upper:.0f}%")
        if args.trace:
            for k, (lo, hi) in enumerate(best.trace):
                print(f"  {k:4d}  {lo:.12g}  {hi:.12g}")
    if best.status is collatz.Status.MAX_ITERATIONS:
        return 2
    if best.status is collatz.Status.DEGENERATE_BREAKDOWN:
        return 1
    return 0


def cmd_spectrum(args) -> int:
    T = _load(args.tensor)
    if T.m == 2 and T.n == 2:
        pairs = oracle.enumerate_2x2(T, grid=args.grid)
        exhaustive = True
    else:
        print("warning: m, n > 2: multistart search, the list may be incomplete", file=sys.stderr)
        pairs = oracle.enumerate_small(T, n_starts=args.starts, seed=_seed(args)).pairs
        exhaustive = False
    fmt = _fmt(args)
    if fmt == "json":
        out = {"exhaustive": exhaustive, "pairs": [p.to_dict() for p in pairs]}
        if pairs and is_nonnegative(T):
            out["summary"] = oracle.spectral_summary(pairs, T).to_dict()
        print(_dump(out))
    elif fmt == "csv":
        print("lambda,class,x,y")
        for p in pairs:
            print(f"{p.lam!r},{p.cls.label},{' '.join(map(repr, p.x.tolist()))},{' '.join(map(repr, p.y.tolist()))}")
    else:
        print(oracle.format_pairs_table(pairs))
    return 0


def cmd_irreducible(args) -> int:
    T = _load(args.tensor)
    rep = structure.irreducibility_report(T, tol=args.tol)
    if _fmt(args) == "json":
        print(_dump(rep.to_dict()))
    else:
        d = rep.to_dict()
        for k in ("x_partial", "y_partial", "irreducible", "method_agreement"):
            print(f"{k:<17} {d[k]}")
        if rep.witness is not None:
            w = rep.witness
            print(f"witness           side={w.side} block={list(w.block)} index={w.index}")
    return 0


def cmd_bounds(args) -> int:
    T = _load(args.tensor)
    est = oracle.estimate_rho_bounds(T, n_starts=args.starts, seed=_seed(args))
    if _fmt(args) == "json":
        print(_dump(est.to_dict()))
    else:
        print(f"rho_lower (inf u)  {est.rho_star_lower:.10g}")
        print(f"rho_upper (sup v)  {est.rho_star_upper:.10g}")
    return 0


def cmd_kron(args) -> int:
    B = io.load_matrix(args.B)
    C = io.load_matrix(args.C)
    T = kronecker.kron_build(B, C)
    if args.out:
        io.save_tensor(T, args.out)
    else:
        sys.stdout.write(io.tensor_to_json(T))
    return 0


def cmd_bench(args) -> int:
    cfg = bench.BenchConfig(m=args.m, n=args.n, repeats=args.repeats, seed=_seed(args),
                            mode=args.mode,
                            collatz=collatz.CollatzConfig(k_max=args.kmax, epsilon=args.eps))
    rep = bench.run_experiment(cfg)
    csv_text = bench.reports_to_csv([rep])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    fmt = _fmt(args)
    if fmt == "json":
        print(_dump(rep.to_dict()))
    elif fmt == "csv":
        sys.stdout.write(csv_text)
    else:
        print(bench.format_table([rep]))
    return 0


def cmd_gen(args) -> int:
    T = bench.gen_random_symmetric_nbq(args.m, args.n, _seed(args))
    if args.out:
        io.save_tensor(T, args.out)
    else:
        sys.stdout.write(io.tensor_to_json(T))
    return 0


class _Parser(argparse.ArgumentParser):
    # usage errors exit with 1; code 2 is reserved for the iteration cap
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="biquad", description="Spectral tools for nonnegative biquadratic tensors.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--format", choices=["json", "table", "csv"], default=None)
        if seed:
            sp.add_argument("--seed", type=int, default=None)

    sp = sub.add_parser("eig", help="largest M+-eigenvalue by the Collatz iteration")
    sp.add_argument("tensor")
    sp.add_argument("--starts", type=int, default=1)
    sp.add_argument("--eps", type=float, default=1e-8)
    sp.add_argument("--kmax", type=int, default=1000)
    sp.add_argument("--trace", action="store_true")
    sp.add_argument("--allow-general", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_eig)

    sp = sub.add_parser("spectrum", help="enumerate M-eigenpairs (exhaustive for 2x2x2x2)")
    sp.add_argument("tensor")
    sp.add_argument("--grid", type=int, default=720)
    sp.add_argument("--starts", type=int, default=500)
    common(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("irreducible", help="irreducibility report")
    sp.add_argument("tensor")
    sp.add_argument("--tol", type=float, default=PARSED_TOL)
    common(sp, seed=False)
    sp.set_defaults(func=cmd_irreducible)

    sp = sub.add_parser("bounds", help="estimate inf u and sup v")
    sp.add_argument("tensor")
    sp.add_argument("--starts", type=int, default=200)
    common(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("kron", help="build B (x) C from two matrix files")
    sp.add_argument("B")
    sp.add_argument("C")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_kron)

    sp = sub.add_parser("bench", help="repeated Collatz runs on random tensors")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--repeats", type=int, default=100)
    sp.add_argument("--mode", choices=["fixed-tensor", "fresh-tensor"], default="fixed-tensor")
    sp.add_argument("--eps", type=float, default=1e-8)
    sp.add_argument("--kmax", type=int, default=1000)
    sp.add_argument("--out", help="write the CSV report here")
    common(sp)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("gen", help="random symmetric nonnegative tensor")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")
    common(sp)
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BiquadError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
