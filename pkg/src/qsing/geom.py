"""Affine charts of blowups along coordinate centers, and transforms on them.

Chart rings keep the parent's variable indices and base names; the primes
in x2', x3'' are display metadata tracked per variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .diffops import LogContext
from .errors import DomainError, NotPermissibleError, RingMismatchError
from .ffpoly import Polynomial, Ring, q_expand, strip_q_power, substitute
from .ideals import Ideal, PointSpec, colon_by_monomial
from .qmod import QModule, is_permissible_center, normal_form


@dataclass(frozen=True)
class Chart:
    ring: Ring
    center: frozenset
    t: int
    primes_in: tuple

    @property
    def exceptional(self) -> int:
        return self.t

    @property
    def primes_out(self) -> tuple:
        return tuple(k + 1 if i in self.center and i != self.t else k
                     for i, k in enumerate(self.primes_in))

    @property
    def names_in(self) -> tuple:
        return display_names(self.ring, self.primes_in)

    @property
    def names_out(self) -> tuple:
        return display_names(self.ring, self.primes_out)

    def is_identity(self) -> bool:
        return len(self.center) == 1

    def mapping(self) -> dict:
        ring = self.ring
        xt = ring.var(self.t)
        return {i: (xt * ring.var(i) if i in self.center and i != self.t else ring.var(i))
                for i in range(ring.nvars)}

    def pullback(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError("polynomial is not on the chart's parent ring")
        return substitute(f, self.mapping(), target=self.ring)

    def pullback_exp(self, exps) -> tuple:
        """Exponent of the pullback of the monomial x^exps."""
        out = list(exps)
        out[self.t] = sum(exps[i] for i in self.center)
        return tuple(out)

    def exceptional_power(self, k: int) -> tuple:
        e = [0] * self.ring.nvars
        e[self.t] = k
        return tuple(e)

    def image_point(self, pt: PointSpec) -> PointSpec:
        """The image in the parent of a chart point (generic points map to generic points)."""
        ring = self.ring
        pt.validate(ring)
        if pt.is_rational:
            y = pt.coords
            yt = y[self.t]
            x = [yt * y[i] if i in self.center and i != self.t else y[i] for i in range(ring.nvars)]
            return PointSpec.rational(ring, x)
        if self.t in pt.subset:
            return PointSpec.generic(ring, pt.subset | self.center)
        return pt

    def __str__(self):
        names = self.names_in
        S = ",".join(names[i] for i in sorted(self.center))
        return f"blowup along V({S}), {names[self.t]}-chart"


def display_names(ring: Ring, primes: Iterable[int]) -> tuple:
    return tuple(n + "'" * k for n, k in zip(ring.names, primes))


def blowup_chart(ring: Ring, S: Iterable, t, primes: Iterable[int] | None = None) -> Chart:
    S = frozenset(ring.index(i) for i in S)
    if not S:
        raise DomainError("blowup center must be a nonempty set of variables")
    t = ring.index(t)
    if t not in S:
        raise DomainError(f"chart variable {ring.names[t]} is not in the center")
    primes = tuple(primes) if primes is not None else (0,) * ring.nvars
    if len(primes) != ring.nvars:
        raise DomainError("prime counts do not match the variable count")
    return Chart(ring, S, t, primes)


def total_transform_module(M: QModule, c: Chart) -> QModule:
    if M.ring != c.ring:
        raise RingMismatchError("module is not on the chart's parent ring")
    return normal_form((c.pullback(g) for g in M.generators), M.e, ring=c.ring)


def a_transform_module(M: QModule, c: Chart, a: int) -> QModule:
    """(M O^q_{V1} + O^q : x_t^{qa}) on the chart: strip, then divide by x_t^{qa}."""
    if a < 1:
        raise DomainError(f"a must be >= 1, got {a}")
    if M.ring != c.ring:
        raise RingMismatchError("module is not on the chart's parent ring")
    if not is_permissible_center(M, a, c.center):
        names = c.names_in
        raise NotPermissibleError(
            f"center V({','.join(names[i] for i in sorted(c.center))}) is not permissible "
            f"for (M, a={a})")
    qa = M.q * a
    out = []
    for g in M.generators:
        plus, _ = strip_q_power(c.pullback(g), M.e)
        for e in plus.terms:
            if e[c.t] < qa:
                alpha = tuple(x % M.q for x in e)
                raise NotPermissibleError(
                    f"generator {g.to_str(c.names_in)}: bucket {alpha} of its transform is not "
                    f"divisible by {c.names_out[c.t]}^{qa}")
        out.append(plus.div_monomial(c.exceptional_power(qa)))
    return normal_form(out, M.e, ring=c.ring)


def transform_ideal(I: Ideal, c: Chart, qa: int) -> Ideal:
    """(I O_{V1} : x_t^qa)."""
    if qa < 0:
        raise DomainError(f"exponent must be >= 0, got {qa}")
    if I.ring != c.ring:
        raise RingMismatchError("ideal is not on the chart's parent ring")
    total = Ideal(c.ring, [c.pullback(g) for g in I.generators])
    return colon_by_monomial(total, c.exceptional_power(qa))


def transform_log_context(ctx: LogContext, c: Chart) -> LogContext:
    """Strict transforms of the hypersurfaces plus the exceptional one; L1 = (L O_{V1}) x_t."""
    if ctx.ring != c.ring:
        raise RingMismatchError("log context is not on the chart's parent ring")
    L1 = list(c.pullback_exp(ctx.L))
    L1[c.t] += 1
    return LogContext(c.ring, ctx.lam | {c.t}, tuple(L1))


def bucket_orders(M: QModule, c: Chart) -> dict:
    """x_t-exponent of every nontrivial q-expansion bucket of each pulled-back generator."""
    out = {}
    for g in M.generators:
        exp = q_expand(c.pullback(g), M.e)
        out[g] = {alpha: min(e[c.t] for e in coeff.terms) * M.q + alpha[c.t]
                  for alpha, coeff in exp.nontrivial().items()}
    return out
