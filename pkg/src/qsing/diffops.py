"""Hasse-Taylor operators D_gamma and the ideals they generate.

D_gamma(x^alpha) = C(alpha, gamma) x^(alpha - gamma), with the binomial taken
mod p through Lucas' theorem. Operators of order < q are O^q-linear, so the
Diff ideals of a module only depend on its generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import DomainError, RingMismatchError
from .ffpoly import ExpVec, Polynomial, Ring, exp_sub
from .ideals import Ideal


def base_p_digits(n: int, p: int) -> list:
    digits = []
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    return digits


def lucas_binom_scalar(a: int, g: int, p: int) -> int:
    """C(a, g) mod p, digit by digit."""
    if g < 0 or g > a:
        return 0
    result = 1
    while g:
        a, ad = divmod(a, p)
        g, gd = divmod(g, p)
        if gd > ad:
            return 0
        result = result * _small_binom(ad, gd, p) % p
    return result


def _small_binom(a: int, g: int, p: int) -> int:
    num = den = 1
    for k in range(g):
        num = num * (a - k) % p
        den = den * (k + 1) % p
    return num * pow(den, -1, p) % p


def lucas_binom(alpha: Sequence[int], gamma: Sequence[int], p: int) -> int:
    """prod_k C(alpha_k, gamma_k) mod p."""
    if len(alpha) != len(gamma):
        raise DomainError("multi-indices of different length")
    result = 1
    for a, g in zip(alpha, gamma):
        result = result * lucas_binom_scalar(a, g, p) % p
        if not result:
            return 0
    return result


@dataclass(frozen=True)
class TaylorIndex:
    gamma: tuple

    @property
    def order(self) -> int:
        return sum(self.gamma)


def _as_gamma(gamma) -> tuple:
    return tuple(gamma.gamma) if isinstance(gamma, TaylorIndex) else tuple(gamma)


def hasse(gamma, f: Polynomial) -> Polynomial:
    gamma = _as_gamma(gamma)
    ring = f.ring
    if len(gamma) != ring.nvars:
        raise RingMismatchError(f"operator index {gamma} does not match {ring.nvars} variables")
    p = ring.p
    out = {}
    for alpha, c in f.terms.items():
        if any(g > a for g, a in zip(gamma, alpha)):
            continue
        b = lucas_binom(alpha, gamma, p)
        if b:
            e = exp_sub(alpha, gamma)
            v = (out.get(e, 0) + b * c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return Polynomial._raw(ring, out)


def _admissible(a: int, p: int, bound: int) -> list:
    """(g, C(a, g) mod p) for all g <= bound with C(a, g) nonzero mod p."""
    return [(g, b) for g in range(min(a, bound) + 1) if (b := lucas_binom_scalar(a, g, p))]


def hasse_family(f: Polynomial, max_order: int, min_order: int = 0) -> dict:
    """All nonzero D_gamma(f) with min_order <= |gamma| <= max_order, keyed by gamma.

    Only gammas that are digitwise below some exponent of f are visited.
    """
    ring = f.ring
    p = ring.p
    acc = {}
    for alpha, c in f.terms.items():
        choices = [_admissible(a, p, max_order) for a in alpha]
        for combo in product(*choices):
            gamma = tuple(g for g, _ in combo)
            order = sum(gamma)
            if order > max_order or order < min_order:
                continue
            b = c
            for _, bk in combo:
                b = b * bk % p
            e = tuple(a - g for a, g in zip(alpha, gamma))
            bucket = acc.setdefault(gamma, {})
            v = (bucket.get(e, 0) + b) % p
            if v:
                bucket[e] = v
            else:
                bucket.pop(e, None)
    return {g: Polynomial._raw(ring, t) for g, t in acc.items() if t}


def _generators(M) -> tuple:
    if hasattr(M, "generators"):
        return M.ring, M.q, tuple(M.generators)
    raise TypeError("expected a QModule")


def _check_plus_order(q: int, i: int):
    if not 1 <= i <= q - 1:
        raise DomainError(f"order i must satisfy 1 <= i <= q-1 = {q - 1}, got {i}")


def diff_plus_ideal(M, i: int) -> Ideal:
    """Ideal generated by D_gamma(g), 0 < |gamma| <= i, g a generator of M."""
    ring, q, gens = _generators(M)
    _check_plus_order(q, i)
    out = []
    for g in gens:
        out.extend(hasse_family(g, i, min_order=1).values())
    return Ideal(ring, out)


def diff_ideal(J: Ideal, i: int) -> Ideal:
    """Ideal generated by D_gamma(g), |gamma| <= i, g a generator of J (J itself included)."""
    if i < 0:
        raise DomainError(f"order must be >= 0, got {i}")
    if i == 0:
        return J
    out = []
    for g in J.generators:
        out.extend(hasse_family(g, i).values())
    return Ideal(J.ring, out)


@dataclass(frozen=True)
class LogContext:
    """Coordinate normal-crossings family (variable indices) and a monomial L in each of their ideals."""

    ring: Ring
    lam: frozenset
    L: tuple

    def __post_init__(self):
        lam = frozenset(self.ring.index(j) for j in self.lam)
        L = tuple(self.L)
        if len(L) != self.ring.nvars or any(x < 0 for x in L):
            raise DomainError(f"L exponent vector {L} invalid for {self.ring.nvars} variables")
        for j in lam:
            if L[j] < 1:
                raise DomainError(
                    f"L = {self.L_poly()} is not contained in the ideal of {self.ring.names[j]}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "L", L)

    @classmethod
    def trivial(cls, ring: Ring) -> "LogContext":
        return cls(ring, frozenset(), ring.zero_exp())

    def L_poly(self) -> Polynomial:
        return Polynomial._raw(self.ring, {tuple(self.L): 1})

    def L_power(self, k: int) -> ExpVec:
        return tuple(k * x for x in self.L)

    def weight(self, gamma: Iterable[int]) -> ExpVec:
        """Exponent of prod_{j in lambda} x_j^gamma_j."""
        return tuple(g if j in self.lam else 0 for j, g in enumerate(gamma))


def log_operator(ctx: LogContext, gamma, f: Polynomial) -> Polynomial:
    """(prod_{j in lambda} x_j^gamma_j) D_gamma applied to f."""
    gamma = _as_gamma(gamma)
    return hasse(gamma, f).mul_monomial(ctx.weight(gamma))


def log_diff_plus_ideal(M, ctx: LogContext, i: int) -> Ideal:
    ring, q, gens = _generators(M)
    if ctx.ring != ring:
        raise RingMismatchError("log context and module live in different rings")
    _check_plus_order(q, i)
    out = []
    for g in gens:
        for gamma, d in hasse_family(g, i, min_order=1).items():
            out.append(d.mul_monomial(ctx.weight(gamma)))
    return Ideal(ring, out)
