"""Command line: ``bench``, ``ops-table`` and ``contract``.

Exit codes: 0 success, 2 usage error, 3 data or format error, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import bench, complexity, fileio
from .errors import NumericalError, TensorError
from .tensor import tcp
from .ttcp import to_dense, ttcp

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4

log = logging.getLogger("ttcontract")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("list must not be empty")
    return values


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must fit in an unsigned 64-bit integer: {v}")
    return v


def _nonneg_float(text: str) -> float:
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"must be a non-negative number: {text}")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ttcontract",
        description="Tensor contraction via tensor trains: benchmarks, operation counts, file contraction.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="time direct vs train contraction on Gaussian tensors")
    b.add_argument("--orders", type=_int_list, default=[3, 4, 5],
                   help="comma-separated subset of 3,4,5 (default: 3,4,5)")
    b.add_argument("--seed", type=_u64, default=0, help="PCG64 seed, unsigned 64-bit (default: 0)")
    b.add_argument("--eps", type=_nonneg_float, default=1e-10,
                   help="TT-SVD relative accuracy (default: 1e-10)")
    b.add_argument("--trials", type=_positive_int, default=5, help="timed repetitions per method (default: 5)")
    b.add_argument("--svd", choices=["lapack", "jacobi"], default="lapack", help="SVD backend (default: lapack)")
    b.add_argument("--out", required=True, help="output CSV path")

    o = sub.add_parser("ops-table", help="exact operation counts over an (I, N, R) grid")
    o.add_argument("--i-values", type=_int_list, required=True, help="mode dimensions I, comma-separated")
    o.add_argument("--n-values", type=_int_list, required=True, help="tensor orders N, comma-separated")
    o.add_argument("--r-values", type=_int_list, required=True, help="TT ranks R, comma-separated")
    o.add_argument("--out", required=True, help="output CSV path")

    c = sub.add_parser("contract", help="contract two TT1 tensor files")
    c.add_argument("x", help="TT1 file holding x")
    c.add_argument("y", help="TT1 file holding y")
    c.add_argument("--n", type=int, required=True, help="contracted mode of x (1-based)")
    c.add_argument("--m", type=int, required=True, help="contracted mode of y (1-based)")
    c.add_argument("--method", choices=["tcp", "ttcp"], default="ttcp",
                   help="direct summation or tensor-train route (default: ttcp)")
    c.add_argument("--eps", type=_nonneg_float, default=0.0, help="TT-SVD relative accuracy (default: 0)")
    c.add_argument("--svd", choices=["lapack", "jacobi"], default="lapack", help="SVD backend (default: lapack)")
    c.add_argument("--out", required=True,
                   help="output TT1 path; with --method ttcp the merged train goes to the same path with suffix .ttd1")
    return p


def cmd_bench(args) -> int:
    bad = sorted(set(args.orders) - set(bench.CASES))
    if bad:
        print(f"error: --orders accepts only {sorted(bench.CASES)}, got {bad}", file=sys.stderr)
        return EXIT_USAGE
    # fail on an unwritable path before spending minutes on timing
    open(args.out, "w").close()
    records = bench.run_bench(args.orders, args.seed, args.eps, args.trials, args.svd)
    bench.write_records(args.out, records)
    for r in records:
        if r.trial is None:
            log.info("%s %s median %.4gs rel_err %.3g", r.case_label, r.method,
                     r.wall_time_seconds, r.max_rel_error_vs_oracle)
    return EXIT_OK


def cmd_ops_table(args) -> int:
    try:
        rows = [complexity.ops_row(i, n, r)
                for i in args.i_values for n in args.n_values for r in args.r_values]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    with open(args.out, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=["I", "N", "R", "tcp_ops", "ttcp_ops", "ttd_ops", "speedup"])
        w.writeheader()
        w.writerows(rows)
    return EXIT_OK


def cmd_contract(args) -> int:
    x = fileio.read_tensor(args.x)
    y = fileio.read_tensor(args.y)
    if args.method == "tcp":
        z = tcp(x, y, args.n, args.m)
    else:
        res = ttcp(x, y, (args.n, args.m), args.eps, method=args.svd)
        z = to_dense(res)
        if res.merged is not None:
            fileio.write_tt(Path(args.out).with_suffix(".ttd1"), res.merged)
    fileio.write_tensor(args.out, z)
    return EXIT_OK


COMMANDS = {"bench": cmd_bench, "ops-table": cmd_ops_table, "contract": cmd_contract}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except TensorError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
