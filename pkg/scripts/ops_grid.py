"""Exact operation counts over an (I, N, R) grid, printed as log10 values.

    python scripts/ops_grid.py --out results/ops.csv
"""

import argparse
import csv
import math
import os
from dataclasses import dataclass, field

from ttcontract.complexity import ops_row


@dataclass
class GridConfig:
    i_values: list = field(default_factory=lambda: [10, 100, 1000])
    n_values: list = field(default_factory=lambda: [3, 4, 5, 6])
    r_values: list = field(default_factory=lambda: [2, 5, 10])
    out: str = "results/ops.csv"


def main():
    cfg = GridConfig()
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", default=cfg.out)
    cfg.out = p.parse_args().out

    rows = [ops_row(i, n, r) for i in cfg.i_values for n in cfg.n_values for r in cfg.r_values]
    os.makedirs(os.path.dirname(cfg.out) or ".", exist_ok=True)
    with open(cfg.out, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    print(f"{'I':>5} {'N':>2} {'R':>3}  log10(tcp) log10(ttcp) log10(ttd)")
    for r in rows:
        print(f"{r['I']:>5} {r['N']:>2} {r['R']:>3}  {math.log10(r['tcp_ops']):10.2f} "
              f"{math.log10(r['ttcp_ops']):11.2f} {math.log10(r['ttd_ops']):10.2f}")


if __name__ == "__main__":
    main()
