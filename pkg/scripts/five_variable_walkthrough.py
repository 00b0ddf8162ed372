"""Replay the five-variable F_3 resolution and print each stage.

Also shows, next to each step, how eta of the bare module behaves under the
same blowup: it may jump even while eta of the logarithmic collection drops.

    python scripts/five_variable_walkthrough.py [--verbosity full]
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from qsing.jobs import load_job
from qsing.qdiff import run_sequence
from qsing.report import LEVELS, render_text

JOB = Path(__file__).resolve().parent.parent / "jobs" / "five_var.job"


@dataclass
class WalkthroughConfig:
    job: Path = JOB
    verbosity: str = "normal"


def main(cfg: WalkthroughConfig):
    report = run_sequence(load_job(cfg.job))
    print(render_text(report, cfg.verbosity), end="")
    print()
    print("stage  max eta(G)  max eta(M)")
    for st in report.stages:
        print(f"{st.index:>5}  {st.max_G:>10}  {st.max_M:>10}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--job", type=Path, default=JOB)
    ap.add_argument("--verbosity", choices=LEVELS, default="normal")
    args = ap.parse_args()
    main(WalkthroughConfig(args.job, args.verbosity))
