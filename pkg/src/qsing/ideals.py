"""Ideals by generators, points, and orders.

Membership, inclusion and colon are exact only on monomial ideals (plus a
few divisible cases); anything else raises UnsupportedFragmentError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, RingMismatchError, UnsupportedFragmentError
from .ffpoly import ExpVec, Polynomial, Ring, exp_divides, substitute, translate

INF = math.inf


def _minimal_monomials(exps: Iterable[ExpVec]) -> list:
    exps = sorted(set(exps), key=lambda e: (sum(e), e))
    kept = []
    for e in exps:
        if not any(exp_divides(k, e) for k in kept):
            kept.append(e)
    return kept


class Ideal:
    """An ideal of ``ring`` held by a canonical generator list."""

    __slots__ = ("ring", "generators", "is_monomial")

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError("generator outside the ideal's ring")
            if g.is_zero():
                continue
            if g.is_constant():
                gens = [ring.one()]
                break
            gens.append(g.monic())
        if all(g.is_monomial() for g in gens):
            canon = [ring.monomial(e) for e in _minimal_monomials(next(iter(g.terms)) for g in gens)]
        else:
            canon = list(set(gens))
        canon.sort(key=lambda g: g.sort_key())
        self.ring = ring
        self.generators = tuple(canon)
        self.is_monomial = all(g.is_monomial() for g in canon)

    @classmethod
    def monomial_ideal(cls, ring: Ring, exps: Iterable[Sequence[int]]) -> "Ideal":
        return cls(ring, [ring.monomial(e) for e in exps])

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: Ring) -> "Ideal":
        return cls(ring, [])

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def monomial_exps(self) -> list:
        if not self.is_monomial:
            raise UnsupportedFragmentError("ideal is not monomial")
        return [next(iter(g.terms)) for g in self.generators]

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.generators == other.generators

    def __hash__(self):
        return hash((self.ring, self.generators))

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingMismatchError("ideal sum across rings")
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [g * other for g in self.generators])
        if isinstance(other, Ideal):
            if self.ring != other.ring:
                raise RingMismatchError("ideal product across rings")
            return Ideal(self.ring, [a * b for a in self.generators for b in other.generators])
        return NotImplemented

    def mul_monomial(self, exps: ExpVec) -> "Ideal":
        return Ideal(self.ring, [g.mul_monomial(exps) for g in self.generators])

    def substitute(self, mapping, target: Ring) -> "Ideal":
        return Ideal(target, [substitute(g, mapping, target=target) for g in self.generators])

    def to_str(self, names=None) -> str:
        if not self.generators:
            return "<0>"
        return "<" + ", ".join(g.to_str(names) for g in self.generators) + ">"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Ideal({self.to_str()})"


@dataclass(frozen=True)
class PointSpec:
    """Either an F_p-rational point or the generic point of V(x_i : i in subset)."""

    kind: str
    coords: tuple = ()
    subset: frozenset = frozenset()

    @classmethod
    def origin(cls, ring: Ring) -> "PointSpec":
        return cls("rational", (0,) * ring.nvars)

    @classmethod
    def rational(cls, ring: Ring, coords: Sequence) -> "PointSpec":
        if len(coords) != ring.nvars:
            raise DomainError(f"point needs {ring.nvars} coordinates, got {len(coords)}")
        return cls("rational", tuple(int(c) % ring.p for c in coords))

    @classmethod
    def generic(cls, ring: Ring, subset: Iterable) -> "PointSpec":
        s = frozenset(ring.index(i) for i in subset)
        if not s:
            raise DomainError("generic point needs a nonempty variable subset")
        if len(s) == ring.nvars:
            return cls.origin(ring)
        return cls("generic", subset=s)

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def validate(self, ring: Ring):
        if self.is_rational:
            if len(self.coords) != ring.nvars or any(not 0 <= c < ring.p for c in self.coords):
                raise DomainError(f"invalid rational point {self.coords} for {ring}")
        elif self.kind == "generic":
            if not self.subset or any(not 0 <= i < ring.nvars for i in self.subset):
                raise DomainError(f"invalid generic point {sorted(self.subset)}")
        else:
            raise DomainError(f"unknown point kind {self.kind!r}")

    def vanishing_set(self) -> frozenset:
        """Coordinates forced to vanish at the point."""
        if self.is_rational:
            return frozenset(i for i, c in enumerate(self.coords) if c == 0)
        return self.subset

    def to_str(self, names: Sequence[str]) -> str:
        if self.is_rational:
            if not any(self.coords):
                return "origin"
            return "point:" + ",".join(str(c) for c in self.coords)
        return "generic:" + ",".join(names[i] for i in sorted(self.subset))

    def sort_key(self):
        if self.is_rational:
            return (0, sum(1 for c in self.coords if c), self.coords)
        return (1, len(self.subset), tuple(sorted(self.subset)))


def order_at(f: Polynomial, pt: PointSpec):
    pt.validate(f.ring)
    if f.is_zero():
        return INF
    if pt.is_rational:
        g = translate(f, pt.coords)
        return min(sum(e) for e in g.terms)
    s = pt.subset
    return min(sum(e[i] for i in s) for e in f.terms)


def ideal_order_at(I: Ideal, pt: PointSpec):
    return min((order_at(g, pt) for g in I.generators), default=INF)


def _monomial_exp(m) -> ExpVec:
    if isinstance(m, Polynomial):
        if not m.is_monomial():
            raise DomainError(f"{m} is not a single term")
        return next(iter(m.terms))
    return tuple(m)


def monomial_contains(I: Ideal, f: Polynomial) -> bool:
    if not I.is_monomial:
        raise UnsupportedFragmentError(f"membership in non-monomial ideal {I}")
    if f.ring != I.ring:
        raise RingMismatchError("membership across rings")
    gens = I.monomial_exps()
    return all(any(exp_divides(g, e) for g in gens) for e in f.terms)


def ideal_included(I: Ideal, J: Ideal) -> bool:
    """I subset of J, decided termwise; J must be monomial."""
    if not J.is_monomial:
        raise UnsupportedFragmentError(f"inclusion into non-monomial ideal {J}")
    return all(monomial_contains(J, g) for g in I.generators)


def colon_by_monomial(I: Ideal, m) -> Ideal:
    """(I : m) for a single term m."""
    mexp = _monomial_exp(m)
    ring = I.ring
    if len(mexp) != ring.nvars:
        raise RingMismatchError("monomial has the wrong number of variables")
    if not any(mexp):
        return I
    if I.is_monomial:
        return Ideal.monomial_ideal(
            ring, [tuple(max(a - b, 0) for a, b in zip(e, mexp)) for e in I.monomial_exps()])
    contents = [g.content_exp() for g in I.generators]
    if all(exp_divides(mexp, c) for c in contents):
        return Ideal(ring, [g.div_monomial(mexp) for g in I.generators])
    if len(I.generators) == 1:
        # (g) : m = (g / gcd(g, m)) in a UFD
        g, c = I.generators[0], contents[0]
        return Ideal(ring, [g.div_monomial(tuple(min(a, b) for a, b in zip(c, mexp)))])
    raise UnsupportedFragmentError(
        f"colon of non-monomial ideal {I} by {ring.monomial(mexp)}: a generator is not divisible")
