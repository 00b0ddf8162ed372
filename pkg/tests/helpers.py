"""Small constructors shared by the test modules."""

from qsing.ffpoly import Ring
from qsing.parse import parse_poly


def ring(p, names):
    if isinstance(names, str):
        names = tuple(s.strip() for s in names.split(","))
    return Ring(p, tuple(names))


def poly(src, R):
    return parse_poly(src, R)
