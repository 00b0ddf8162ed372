"""Randomized sweep of the pointwise inequality and the other verification suites.

    python scripts/pointwise_sweep.py --seeds 0 1 2 --scale 0.5
"""

import argparse
from dataclasses import dataclass, field

from qsing.verify import SUITES, VerifyConfig, run_suites


@dataclass
class SweepConfig:
    seeds: list = field(default_factory=lambda: [0, 1, 2])
    scale: float = 0.5
    suites: list = field(default_factory=lambda: ["pointwise", "inclusions"])


def main(cfg: SweepConfig) -> int:
    failed = 0
    for seed in cfg.seeds:
        print(f"seed {seed}")
        for res in run_suites(VerifyConfig(seed=seed, scale=cfg.scale), cfg.suites):
            print("  " + res.line())
            failed += not res.ok
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--scale", type=float, default=0.5)
    ap.add_argument("--suite", action="append", choices=sorted(SUITES))
    args = ap.parse_args()
    raise SystemExit(main(SweepConfig(args.seeds, args.scale, args.suite or SweepConfig().suites)))
