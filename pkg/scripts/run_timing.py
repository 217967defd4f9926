"""Time direct vs train contraction for the order-3/4/5 Gaussian cases.

    python scripts/run_timing.py --out results/timing.csv
"""

import argparse
import os
from dataclasses import dataclass, field

from ttcontract.bench import medians, run_bench, write_records


@dataclass
class TimingConfig:
    orders: list = field(default_factory=lambda: [3, 4, 5])
    seed: int = 0
    epsilon: float = 1e-10
    trials: int = 5
    svd_method: str = "lapack"
    out: str = "results/timing.csv"


def main():
    cfg = TimingConfig()
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=cfg.trials)
    p.add_argument("--seed", type=int, default=cfg.seed)
    p.add_argument("--svd", default=cfg.svd_method, choices=["lapack", "jacobi"])
    p.add_argument("--out", default=cfg.out)
    a = p.parse_args()
    cfg.trials, cfg.seed, cfg.svd_method, cfg.out = a.trials, a.seed, a.svd, a.out

    records = run_bench(cfg.orders, cfg.seed, cfg.epsilon, cfg.trials, cfg.svd_method)
    os.makedirs(os.path.dirname(cfg.out) or ".", exist_ok=True)
    write_records(cfg.out, records)
    med = medians(records)
    for case in dict.fromkeys(label for label, _ in med):
        t_direct, t_tt = med[(case, "tcp")], med[(case, "ttcp")]
        print(f"{case:>14}  tcp {t_direct:9.4f}s  ttcp {t_tt:9.4f}s  speedup {t_direct / t_tt:7.1f}x")


if __name__ == "__main__":
    main()
