"""Timing experiment: direct contraction vs the train route on Gaussian tensors.

Case shapes follow the order-3/4/5 sizes used for the timing comparison:
20x20x20, 20x20x20x5 and 20x20x20x5x4, contracted along mode 1 of each.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from threadpoolctl import threadpool_limits

from .tensor import DenseTensor, Shape, permute, random_gaussian, tcp
from .ttcp import lead_permutation, to_dense, ttcp_from_tt
from .tt import tt_svd

CASES: dict[int, Shape] = {
    3: (20, 20, 20),
    4: (20, 20, 20, 5),
    5: (20, 20, 20, 5, 4),
}

HEADER = ["case", "order", "method", "epsilon", "trial", "wall_time_s", "ttd_time_s", "rel_err"]
SUMMARY_TRIAL = "median"


@dataclass
class BenchmarkRecord:
    case_label: str
    x_shape: Shape
    y_shape: Shape
    method: str
    epsilon: float
    trial: Optional[int]  # None marks the per-case summary row
    wall_time_seconds: float
    ttcp_decomposition_seconds: float
    max_rel_error_vs_oracle: float

    def __post_init__(self):
        if self.method not in ("tcp", "ttcp"):
            raise ValueError(f"unknown method {self.method!r}")
        if not self.wall_time_seconds >= self.ttcp_decomposition_seconds >= 0:
            raise ValueError("need wall_time_seconds >= ttcp_decomposition_seconds >= 0")
        if self.method == "tcp" and self.max_rel_error_vs_oracle != 0:
            raise ValueError("the direct contraction is the oracle; its error is 0")

    def to_row(self) -> list[str]:
        return [
            self.case_label,
            str(len(self.x_shape)),
            self.method,
            repr(self.epsilon),
            SUMMARY_TRIAL if self.trial is None else str(self.trial),
            repr(self.wall_time_seconds),
            repr(self.ttcp_decomposition_seconds),
            repr(self.max_rel_error_vs_oracle),
        ]

    @classmethod
    def from_row(cls, row: dict) -> "BenchmarkRecord":
        shape = tuple(int(d) for d in row["case"].split("x"))
        if len(shape) != int(row["order"]):
            raise ValueError(f"case {row['case']!r} disagrees with order {row['order']}")
        trial = None if row["trial"] == SUMMARY_TRIAL else int(row["trial"])
        return cls(
            row["case"], shape, shape, row["method"], float(row["epsilon"]), trial,
            float(row["wall_time_s"]), float(row["ttd_time_s"]), float(row["rel_err"]),
        )


def case_label(shape: Sequence[int]) -> str:
    return "x".join(str(d) for d in shape)


def relative_error(approx: DenseTensor, ref: DenseTensor) -> float:
    ref_norm = float(np.linalg.norm(ref.data))
    diff = float(np.linalg.norm(approx.data - ref.data))
    return diff / ref_norm if ref_norm else diff


def time_ttcp(x: DenseTensor, y: DenseTensor, epsilon: float, method: str = "lapack"):
    """Run the mode-(1,1) train contraction; return (result, wall, decomposition time)."""
    t0 = time.perf_counter()
    tx = tt_svd(permute(x, lead_permutation(x.order, 1)), epsilon, method=method)
    ty = tt_svd(permute(y, lead_permutation(y.order, 1)), epsilon, method=method)
    t1 = time.perf_counter()
    res = ttcp_from_tt(tx, ty, (1, 1))
    t2 = time.perf_counter()
    return res, t2 - t0, t1 - t0


def warm_up() -> None:
    """Trigger JIT compilation so it is not charged to the first trial."""
    x = random_gaussian((2, 3), 0)
    tcp(x, x, 1, 1)
    res, _, _ = time_ttcp(x, x, 0.0)
    to_dense(res)


def run_case(
    shape: Shape, seed: int, epsilon: float, trials: int, svd_method: str = "lapack"
) -> list[BenchmarkRecord]:
    x = random_gaussian(shape, [seed, 0])
    y = random_gaussian(shape, [seed, 1])
    label = case_label(shape)
    records = []
    oracle = None
    for trial in range(1, trials + 1):
        t0 = time.perf_counter()
        z = tcp(x, y, 1, 1)
        wall = time.perf_counter() - t0
        oracle = z
        records.append(BenchmarkRecord(label, shape, shape, "tcp", epsilon, trial, wall, 0.0, 0.0))
    for trial in range(1, trials + 1):
        res, wall, ttd = time_ttcp(x, y, epsilon, svd_method)
        err = relative_error(to_dense(res), oracle)
        records.append(BenchmarkRecord(label, shape, shape, "ttcp", epsilon, trial, wall, ttd, err))
    for method in ("tcp", "ttcp"):
        rows = [r for r in records if r.method == method]
        records.append(BenchmarkRecord(
            label, shape, shape, method, epsilon, None,
            statistics.median(r.wall_time_seconds for r in rows),
            statistics.median(r.ttcp_decomposition_seconds for r in rows),
            max(r.max_rel_error_vs_oracle for r in rows),
        ))
    return records


def run_bench(
    orders: Iterable[int], seed: int, epsilon: float, trials: int, svd_method: str = "lapack"
) -> list[BenchmarkRecord]:
    orders = list(orders)
    bad = [o for o in orders if o not in CASES]
    if bad or not orders:
        raise ValueError(f"orders must be a non-empty subset of {sorted(CASES)}, got {orders}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    records = []
    with threadpool_limits(limits=1):
        warm_up()
        for order in orders:
            records.extend(run_case(CASES[order], seed, epsilon, trials, svd_method))
    return records


def write_records(path, records: Sequence[BenchmarkRecord]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(HEADER)
        for r in records:
            w.writerow(r.to_row())


def read_records(path) -> list[BenchmarkRecord]:
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != HEADER:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [BenchmarkRecord.from_row(row) for row in reader]


def medians(records: Sequence[BenchmarkRecord]) -> dict[tuple[str, str], float]:
    """(case, method) -> median wall time, read from the summary rows."""
    return {(r.case_label, r.method): r.wall_time_seconds for r in records if r.trial is None}
