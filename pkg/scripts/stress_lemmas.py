"""Run the randomized embedding suites at scale and write a JSON summary.

    python scripts/stress_lemmas.py --trials 2000 --seed 7 --out results/stress.json

Set RBX_THREADS to spread trials over worker processes.
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from rbx.errors import save_dump
from rbx.harness import FAMILIES, SUITES, run_trials


@dataclass
class StressConfig:
    trials: int = 500
    seed: int = 0
    suites: list[str] = field(default_factory=lambda: sorted(SUITES))
    dims: tuple[int, ...] = (6, 7, 8)
    out: str = "results/stress.json"


def run(cfg: StressConfig) -> dict:
    rows = []
    for name in cfg.suites:
        variants = [{"family": f, "dims": cfg.dims} for f in FAMILIES] if name == "coordinate-lemma" else [{}]
        for params in variants:
            t0 = time.perf_counter()
            rep = run_trials(name, SUITES[name], cfg.trials, cfg.seed, params)
            saved = [str(save_dump(o.counterexample, Path(cfg.out).parent / "counterexamples"))
                     for o in rep.failures if o.counterexample]
            rows.append({"suite": name, "family": params.get("family"), "trials": cfg.trials,
                         "failures": len(rep.failures), "seconds": round(time.perf_counter() - t0, 2),
                         "counterexamples": saved})
            print(f"{name:18s} {params.get('family') or '':14s} failures={len(rep.failures)} "
                  f"({rows[-1]['seconds']}s)")
    return {"config": asdict(cfg), "runs": rows}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite", action="append", choices=sorted(SUITES))
    ap.add_argument("--out", default="results/stress.json")
    args = ap.parse_args()
    cfg = StressConfig(trials=args.trials, seed=args.seed, out=args.out)
    if args.suite:
        cfg.suites = args.suite
    summary = run(cfg)
    Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    Path(cfg.out).write_text(json.dumps(summary, indent=2) + "\n")
    bad = sum(r["failures"] for r in summary["runs"])
    print(f"total failures: {bad}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
