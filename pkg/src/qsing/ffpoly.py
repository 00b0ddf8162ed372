"""Sparse multivariate polynomials over a prime field F_p.

Polynomials are immutable maps from exponent tuples to nonzero residues.
Terms print in graded-lexicographic order, highest first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, RingMismatchError

MAX_EXPONENT = 2**63 - 1
MAX_PRIME = 2**31

ExpVec = tuple  # tuple[int, ...]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not 2 <= p <= MAX_PRIME or not is_prime(p):
        raise DomainError(f"characteristic must be a prime in [2, 2^31], got {p!r}")
    return p


def q_of(p: int, e: int) -> int:
    if e < 1:
        raise DomainError(f"exponent e must be >= 1, got {e}")
    q = p**e
    if q > MAX_EXPONENT:
        raise OverflowError(f"q = {p}^{e} exceeds the exponent range")
    return q


def exp_add(a: ExpVec, b: ExpVec) -> ExpVec:
    out = tuple(x + y for x, y in zip(a, b))
    if any(x > MAX_EXPONENT for x in out):
        raise OverflowError("exponent overflow")
    return out


def exp_sub(a: ExpVec, b: ExpVec) -> ExpVec:
    out = tuple(x - y for x, y in zip(a, b))
    if any(x < 0 for x in out):
        raise DomainError(f"exponent subtraction {a} - {b} is negative")
    return out


def exp_divides(a: ExpVec, b: ExpVec) -> bool:
    """True iff x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class FieldScalar:
    value: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            if other.p != self.p:
                raise RingMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldScalar(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldScalar(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldScalar(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldScalar(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldScalar(-self.value, self.p)

    def inverse(self) -> "FieldScalar":
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return FieldScalar(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FieldScalar(v, self.p).inverse()

    def root(self, e: int = 1) -> "FieldScalar":
        # Frobenius is the identity on the prime field
        return self

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


@dataclass(frozen=True)
class Ring:
    """k[x_1..x_n] with k = F_p. Names are the stable base names of the variables."""

    p: int
    names: tuple

    def __post_init__(self):
        check_prime(self.p)
        names = tuple(self.names)
        if not names:
            raise DomainError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.nvars:
                raise DomainError(f"variable index {name} out of range")
            return name
        base = name.rstrip("'")
        try:
            return self.names.index(base)
        except ValueError:
            raise DomainError(f"undeclared variable {name!r}") from None

    def zero_exp(self) -> ExpVec:
        return (0,) * self.nvars

    def unit_exp(self, i: int) -> ExpVec:
        e = [0] * self.nvars
        e[i] = 1
        return tuple(e)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {self.zero_exp(): int(c)})

    def var(self, name) -> "Polynomial":
        return Polynomial(self, {self.unit_exp(self.index(name)): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(x < 0 for x in exps):
            raise DomainError(f"bad exponent vector {exps} for {self.nvars} variables")
        return Polynomial(self, {exps: int(coeff)})

    def scalar(self, c) -> FieldScalar:
        return FieldScalar(int(c), self.p)


def grlex_key(exps: ExpVec):
    return (sum(exps), exps)


class Polynomial:
    """An element of ``ring``; ``terms`` maps exponent tuples to residues in [1, p)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[ExpVec, int] | Iterable = ()):
        p = ring.p
        n = ring.nvars
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != n:
                raise DomainError(f"exponent vector {exps} has wrong length for {n} variables")
            c = int(c) % p
            if c:
                clean[exps] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # terms already reduced, nonzero, with valid exponents
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> int:
        return self.terms.get(self.ring.zero_exp(), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_exp(self) -> ExpVec:
        return max(self.terms, key=grlex_key)

    def content_exp(self) -> ExpVec:
        """Exponent of the gcd of all term monomials."""
        if not self.terms:
            raise DomainError("content of the zero polynomial")
        it = iter(self.terms)
        g = list(next(it))
        for e in it:
            g = [min(a, b) for a, b in zip(g, e)]
        return tuple(g)

    def variables(self) -> set:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldScalar)):
            if isinstance(other, FieldScalar) and other.p != self.ring.p:
                raise RingMismatchError(f"F_{other.p} scalar in F_{self.ring.p} ring")
            return self.ring.const(int(other))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        p = self.ring.p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError(f"exponent must be a natural number, got {k!r}")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        p = self.ring.p
        c = int(c) % p
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def mul_monomial(self, exps: ExpVec) -> "Polynomial":
        return Polynomial._raw(self.ring, {exp_add(e, exps): c for e, c in self.terms.items()})

    def div_monomial(self, exps: ExpVec) -> "Polynomial":
        """Exact division by x^exps; raises DomainError if some term is not divisible."""
        return Polynomial._raw(self.ring, {exp_sub(e, exps): c for e, c in self.terms.items()})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lead = self.terms[self.leading_exp()]
        return self.scale(pow(lead, -1, self.ring.p))

    def evaluate(self, point: Sequence) -> int:
        p = self.ring.p
        vals = [int(v) % p for v in point]
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * pow(v, k, p) % p
            total += t
        return total % p

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def sort_key(self):
        """Canonical ordering key: leading terms first (grlex), then coefficients."""
        return tuple((grlex_key(e), c) for e, c in self.sorted_terms())

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = names or self.ring.names
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r}, p={self.ring.p})"


# -- homomorphisms ----------------------------------------------------------

def substitute(f: Polynomial, mapping: Mapping, target: Ring | None = None) -> Polynomial:
    """Ring homomorphism image of ``f`` under x_i -> mapping[x_i].

    ``mapping`` is keyed by variable index or name. Variables of ``f`` that
    actually occur must be mapped; images must share one ring.
    """
    ring = f.ring
    images = {}
    for k, v in mapping.items():
        images[ring.index(k)] = v
    needed = f.variables()
    missing = needed - images.keys()
    if missing:
        raise DomainError(f"unmapped variable(s): {sorted(ring.names[i] for i in missing)}")
    rings = {img.ring for img in images.values()}
    if target is None:
        if len(rings) > 1:
            raise RingMismatchError("substitution images live in different rings")
        target = rings.pop() if rings else ring
    elif rings - {target}:
        raise RingMismatchError("substitution images not in the target ring")

    cache = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = images[i] ** k
        return cache[key]

    out = target.zero()
    for e, c in f.terms.items():
        term = target.const(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


def translate(f: Polynomial, point: Sequence) -> Polynomial:
    """Return f(x + point)."""
    ring = f.ring
    if len(point) != ring.nvars:
        raise DomainError(f"point has {len(point)} coordinates, ring has {ring.nvars} variables")
    vals = [int(v) % ring.p for v in point]
    if not any(vals):
        return f
    mapping = {i: ring.var(i) + v if v else ring.var(i) for i, v in enumerate(vals)}
    return substitute(f, mapping, target=ring)


def frobenius(c: Polynomial, q: int) -> Polynomial:
    """c^q computed as exponent scaling (coefficients are fixed by Frobenius on F_p)."""
    return Polynomial._raw(c.ring, {tuple(q * x for x in e): v for e, v in c.terms.items()})


# -- q-expansions -----------------------------------------------------------

@dataclass(frozen=True)
class QExpansion:
    """f = sum over alpha in [0, q)^n of c_alpha^q x^alpha."""

    ring: Ring
    q: int
    buckets: dict = field(default_factory=dict)

    @property
    def trivial_part(self) -> Polynomial:
        return self.buckets.get(self.ring.zero_exp(), self.ring.zero())

    def nontrivial(self) -> dict:
        zero = self.ring.zero_exp()
        return {a: c for a, c in self.buckets.items() if a != zero}

    def reassemble(self) -> Polynomial:
        out = self.ring.zero()
        for alpha, c in self.buckets.items():
            out = out + frobenius(c, self.q).mul_monomial(alpha)
        return out


def q_expand(f: Polynomial, e: int) -> QExpansion:
    q = q_of(f.ring.p, e)
    raw = {}
    for exps, c in f.terms.items():
        alpha = tuple(x % q for x in exps)
        mu = tuple(x // q for x in exps)
        raw.setdefault(alpha, {})[mu] = c
    buckets = {a: Polynomial._raw(f.ring, t) for a, t in raw.items()}
    return QExpansion(f.ring, q, buckets)


def is_q_power(f: Polynomial, e: int) -> bool:
    q = q_of(f.ring.p, e)
    return all(x % q == 0 for exps in f.terms for x in exps)


def strip_q_power(f: Polynomial, e: int) -> tuple:
    """Drop the trivial bucket of the q-expansion. Returns (f_plus, f_is_a_q_power)."""
    q = q_of(f.ring.p, e)
    plus = {exps: c for exps, c in f.terms.items() if any(x % q for x in exps)}
    fplus = Polynomial._raw(f.ring, plus)
    return fplus, not plus
