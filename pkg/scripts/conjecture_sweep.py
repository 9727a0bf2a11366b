"""Sweep all trees on k edges against several cube hosts and list open cases.

For each (k, n) the sweep reports whether the bounds already force every
tree's ex* to equal the star's, and which trees no embedding case covers.
"""

import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from rbx.cli import RunConfig, cmd_sweep


@dataclass
class SweepGrid:
    ks: tuple[int, ...] = (2, 3, 4, 5, 6, 7, 8)
    dims: tuple[int, ...] = (2, 3, 4, 6, 8)
    exact: bool = True
    out: str = "results/sweep.json"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ks", type=int, nargs="+", default=list(SweepGrid.ks))
    ap.add_argument("--dims", type=int, nargs="+", default=list(SweepGrid.dims))
    ap.add_argument("--no-exact", action="store_true")
    ap.add_argument("--out", default=SweepGrid.out)
    args = ap.parse_args()
    grid = SweepGrid(tuple(args.ks), tuple(args.dims), not args.no_exact, args.out)
    reports = []
    for k in grid.ks:
        for n in grid.dims:
            # exact oracles only where they finish quickly
            exact = grid.exact and n <= 2
            rep = cmd_sweep(RunConfig("sweep", host=f"qn:{n}", k=k, exact=exact))
            reports.append(rep)
            settled = sum(t["exstar"]["lower"] == t["exstar"]["upper"] for t in rep["trees"])
            print(f"k={k} Q{n}: {len(rep['trees'])} trees, ex* settled for {settled}, "
                  f"open {rep['open_cases'] or '-'}, contradictions {len(rep['contradictions'])}")
    Path(grid.out).parent.mkdir(parents=True, exist_ok=True)
    Path(grid.out).write_text(json.dumps(reports, indent=2) + "\n")


if __name__ == "__main__":
    main()
