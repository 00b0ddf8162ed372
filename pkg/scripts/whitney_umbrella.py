"""Whitney umbrella M = <X^q Y>: the q-order is not upper semicontinuous.

At every closed point (0, c) of the line X = 0 the q-order is q + 1, while at
the generic point of that line it drops to q. eta stays at q + 1 on the whole
line, which is the point of working with eta.
"""

import argparse
from dataclasses import dataclass

from qsing.ffpoly import Ring
from qsing.ideals import PointSpec
from qsing.qmod import eta_at, normal_form, q_order_at


@dataclass
class UmbrellaConfig:
    fields: tuple = ((2, 1), (3, 1), (2, 2), (5, 1), (3, 2))


def main(cfg: UmbrellaConfig):
    print(f"{'p':>3} {'e':>2} {'q':>3}  {'point':<12} {'nu^(q)':>7} {'eta':>5}")
    for p, e in cfg.fields:
        q = p ** e
        R = Ring(p, ("X", "Y"))
        M = normal_form([R.var(0) ** q * R.var(1)], e, ring=R)
        pts = [PointSpec.rational(R, (0, c)) for c in range(p)] + [PointSpec.generic(R, [0])]
        for pt in pts:
            print(f"{p:>3} {e:>2} {q:>3}  {pt.to_str(R.names):<12} "
                  f"{q_order_at(M, pt):>7} {eta_at(M, pt):>5}")


if __name__ == "__main__":
    argparse.ArgumentParser(description=__doc__.splitlines()[0]).parse_args()
    main(UmbrellaConfig())
