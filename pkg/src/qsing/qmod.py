"""O^q-submodules of k[x_1..x_n] up to equivalence, and their invariants.

A module is stored by generators with the q-th power part of each removed,
made monic and sorted; two generator lists that differ by q-th powers or by
nonzero scalars give the same QModule.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .diffops import diff_plus_ideal
from .errors import DomainError, InternalConsistencyError, RingMismatchError
from .ffpoly import Polynomial, Ring, q_of, strip_q_power, translate
from .ideals import INF, Ideal, PointSpec, ideal_order_at, order_at


class QModule:
    def __init__(self, ring: Ring, e: int, generators: Sequence[Polynomial]):
        self.ring = ring
        self.e = e
        self.q = q_of(ring.p, e)
        self.generators = tuple(generators)

    def __eq__(self, other):
        if not isinstance(other, QModule):
            return NotImplemented
        return (self.ring, self.q, self.generators) == (other.ring, other.q, other.generators)

    def __hash__(self):
        return hash((self.ring, self.q, self.generators))

    def is_trivial(self) -> bool:
        return not self.generators

    @cached_property
    def diff_plus_ideals(self) -> tuple:
        """(Diff^1_+(M), ..., Diff^{q-1}_+(M))."""
        return tuple(diff_plus_ideal(self, i) for i in range(1, self.q))

    def to_str(self, names=None) -> str:
        if not self.generators:
            return "<>"
        return "<" + ", ".join(g.to_str(names) for g in self.generators) + ">"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"QModule(q={self.q}, {self.to_str()})"


def normal_form(gens: Iterable[Polynomial], e: int, ring: Ring | None = None) -> QModule:
    gens = list(gens)
    if ring is None:
        if not gens:
            raise DomainError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    kept = set()
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("module generators in different rings")
        plus, trivial = strip_q_power(g, e)
        if not trivial:
            kept.add(plus.monic())
    return QModule(ring, e, sorted(kept, key=lambda g: g.sort_key()))


def _stripped_order(g: Polynomial, e: int, pt: PointSpec):
    if pt.is_rational:
        g = translate(g, pt.coords)
        pt = PointSpec.origin(g.ring)
    plus, _ = strip_q_power(g, e)
    return order_at(plus, pt)


def q_order_at(M: QModule, pt: PointSpec):
    """nu^(q): the order of the non-q-power part, after moving the point to the origin."""
    pt.validate(M.ring)
    return min((_stripped_order(g, M.e, pt) for g in M.generators), default=INF)


def eta_at(M: QModule, pt: PointSpec):
    pt.validate(M.ring)
    if M.is_trivial():
        return INF
    return min(ideal_order_at(I, pt) + i for i, I in enumerate(M.diff_plus_ideals, start=1))


def sing_test(M: QModule, a: int, pt: PointSpec) -> bool:
    """Is pt in Sing(M, a)?"""
    if a < 1:
        raise DomainError(f"a must be >= 1, got {a}")
    q = M.q
    if M.is_trivial():
        return True
    nu = ideal_order_at(M.diff_plus_ideals[-1], pt)
    by_diff = nu >= q * (a - 1) + 1
    by_eta = eta_at(M, pt) >= q * a
    if by_diff != by_eta:
        raise InternalConsistencyError(
            f"Sing(M,{a}) at {pt}: Diff^(q-1) order {nu} disagrees with eta {eta_at(M, pt)}")
    return by_diff


def center_point(ring: Ring, Z: Iterable) -> PointSpec:
    return PointSpec.generic(ring, Z)


def is_permissible_center(M: QModule, a: int, Z: Iterable) -> bool:
    """Is V(x_i : i in Z) permissible for (M, a)?"""
    if a < 1:
        raise DomainError(f"a must be >= 1, got {a}")
    if M.is_trivial():
        return True
    xi = center_point(M.ring, Z)
    return ideal_order_at(M.diff_plus_ideals[-1], xi) >= M.q * (a - 1) + 1


def max_a_for_center(M: QModule, Z: Iterable) -> int:
    if M.is_trivial():
        raise DomainError("trivial module: every center is permissible for every a")
    Z = frozenset(M.ring.index(i) for i in Z)
    q = M.q
    xi = center_point(M.ring, Z)
    a = eta_at(M, xi) // q
    if a >= 1 and not is_permissible_center(M, a, Z):
        raise InternalConsistencyError(f"eta predicts a={a} but the center is not permissible")
    if is_permissible_center(M, a + 1, Z):
        raise InternalConsistencyError(f"center permissible beyond a={a}")
    if len(Z) == 1:
        n = ideal_order_at(M.diff_plus_ideals[-1], xi)
        if n != q * a:
            raise InternalConsistencyError(
                f"hypersurface center: Diff^(q-1)_+ order {n} is not q*a = {q * a}")
    return a


# -- candidate points ---------------------------------------------------------

def candidate_points(ring: Ring, box: int = 2, codim: int | None = None) -> list:
    """Origin, rational points with coordinates in [0, box), and generic points of
    coordinate subvarieties of codimension <= codim."""
    n = ring.nvars
    box = max(1, min(box, ring.p))
    codim = n if codim is None else min(codim, n)
    pts = [PointSpec.origin(ring)]
    for coords in product(range(box), repeat=n):
        if any(coords):
            pts.append(PointSpec.rational(ring, coords))
    for k in range(1, codim + 1):
        if k == n:
            continue
        for S in combinations(range(n), k):
            pts.append(PointSpec.generic(ring, S))
    return pts


def max_over(values: dict):
    """(maximum, sorted argmax points) for a point -> value map."""
    if not values:
        return INF, []
    best = max(values.values())
    return best, sorted((pt for pt, v in values.items() if v == best), key=PointSpec.sort_key)


def most_generic(points: Sequence[PointSpec]) -> list:
    """Generic points of minimal codimension among ``points`` (the origin if none)."""
    gen = [pt for pt in points if not pt.is_rational]
    if not gen:
        return [pt for pt in points if pt.is_rational and not any(pt.coords)]
    k = min(len(pt.subset) for pt in gen)
    return [pt for pt in gen if len(pt.subset) == k]
