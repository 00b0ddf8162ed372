"""Randomized verification suites.

Each suite draws its instances from a seeded ``random.Random`` and returns a
``SuiteResult``; the CLI ``verify`` command and the test suite share them.
The log-operator oracle solves its linear system with sympy over GF(p) and
computes binomials with ``math.comb``, so it does not reuse the Lucas code.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations, product

from .diffops import LogContext, diff_ideal, diff_plus_ideal, log_diff_plus_ideal
from .errors import InternalConsistencyError, QsingError
from .ffpoly import Polynomial, Ring, q_of, strip_q_power, translate
from .geom import (a_transform_module, blowup_chart, total_transform_module, transform_ideal,
                   transform_log_context)
from .ideals import INF, Ideal, PointSpec, ideal_included, ideal_order_at, order_at
from .qdiff import (LogTriple, check_pointwise, collection_included, collection_transform,
                    eta_G_at, make_G, make_G_log, triple_transform)
from .qmod import QModule, candidate_points, eta_at, max_a_for_center, normal_form, q_order_at

FIELDS = ((2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (5, 1), (7, 1))


@dataclass
class VerifyConfig:
    seed: int = 0
    scale: float = 1.0          # multiplies every suite's default case count
    max_vars: int = 4
    max_q_monomial: int = 5
    max_q_poly: int = 9

    def count(self, default: int) -> int:
        return max(1, round(default * self.scale))


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        if len(self.failures) < 20:
            self.failures.append(msg)
        else:
            self.info["suppressed"] = self.info.get("suppressed", 0) + 1

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "".join(f", {k}={v}" for k, v in sorted(self.info.items()))
        return f"{status} {self.name}: {self.cases} cases, {len(self.failures)} failures{extra}"


# -- random data ----------------------------------------------------------------

def random_field(rng: random.Random, max_q: int) -> tuple:
    return rng.choice([pe for pe in FIELDS if q_of(*pe) <= max_q])


def random_ring(rng: random.Random, p: int, lo: int = 2, hi: int = 4) -> Ring:
    n = rng.randint(lo, hi)
    return Ring(p, tuple(f"x{i + 1}" for i in range(n)))


def random_monomial(rng: random.Random, ring: Ring, max_exp: int) -> Polynomial:
    return ring.monomial([rng.randint(0, max_exp) for _ in range(ring.nvars)])


def random_monomial_module(rng: random.Random, ring: Ring, e: int, max_gens: int = 2) -> QModule:
    q = q_of(ring.p, e)
    while True:
        gens = [random_monomial(rng, ring, 2 * q + 1) for _ in range(rng.randint(1, max_gens))]
        M = normal_form(gens, e, ring=ring)
        if not M.is_trivial():
            return M


def random_poly(rng: random.Random, ring: Ring, max_terms: int = 4, max_deg: int = 10,
                min_deg: int = 0) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(min_deg, max_deg)
        exps = [0] * ring.nvars
        for _ in range(d):
            exps[rng.randrange(ring.nvars)] += 1
        terms[tuple(exps)] = rng.randrange(1, ring.p)
    return Polynomial(ring, terms)


def random_log_context(rng: random.Random, ring: Ring) -> LogContext:
    lam = frozenset(j for j in range(ring.nvars) if rng.random() < 0.4)
    L = tuple(rng.randint(1, 2) if j in lam else 0 for j in range(ring.nvars))
    return LogContext(ring, lam, L)


def random_rational_point(rng: random.Random, ring: Ring) -> PointSpec:
    return PointSpec.rational(ring, [rng.randrange(ring.p) for _ in range(ring.nvars)])


def random_generic_point(rng: random.Random, ring: Ring, containing=()) -> PointSpec:
    s = set(containing)
    for j in range(ring.nvars):
        if rng.random() < 0.5:
            s.add(j)
    if not s:
        s.add(rng.randrange(ring.nvars))
    return PointSpec.generic(ring, s)


def proper_subsets(n: int) -> list:
    return [S for k in range(1, n + 1) for S in combinations(range(n), k)]


# -- suites ---------------------------------------------------------------------

def suite_multiple_of_q(cfg: VerifyConfig, count: int = 200) -> SuiteResult:
    """nu of Diff^{q-1}_+ at the generic point of a hypersurface equals q * (largest a)."""
    rng = random.Random(cfg.seed * 1000 + 5)
    res = SuiteResult("multiple-of-q")
    for case in range(cfg.count(count)):
        p, e = random_field(rng, cfg.max_q_poly)
        ring = random_ring(rng, p, 2, min(3, cfg.max_vars))
        if case % 2 == 0:
            M = random_monomial_module(rng, ring, e)
        else:
            M = normal_form([random_poly(rng, ring, 3, 2 * q_of(p, e) + 2)], e, ring=ring)
            if M.is_trivial():
                M = random_monomial_module(rng, ring, e)
        j = rng.randrange(ring.nvars)
        xi = PointSpec.generic(ring, [j])
        n = ideal_order_at(M.diff_plus_ideals[-1], xi)
        try:
            a = max_a_for_center(M, [j])
        except InternalConsistencyError as exc:
            res.fail(f"{M} at V({ring.names[j]}): {exc}")
            continue
        res.cases += 1
        if n != M.q * a:
            res.fail(f"{M} q={M.q} at V({ring.names[j]}): n={n}, a={a}")
    return res


def suite_sandwich(cfg: VerifyConfig, count: int = 500) -> SuiteResult:
    """q*a + b = nu^(q) <= eta < q(a+1); equality when q does not divide nu^(q) and at rational points."""
    rng = random.Random(cfg.seed * 1000 + 6)
    res = SuiteResult("sandwich")
    strict = 0
    while res.cases < cfg.count(count):
        p, e = random_field(rng, cfg.max_q_poly)
        q = q_of(p, e)
        ring = random_ring(rng, p, 1, min(3, cfg.max_vars))
        f, _ = strip_q_power(random_poly(rng, ring, 4, 2 * q + 3), e)
        if f.is_zero():
            continue
        M = normal_form([f], e, ring=ring)
        roll = rng.random()
        if roll < 0.3:
            pt = PointSpec.origin(ring)
        elif roll < 0.6 or ring.nvars == 1:
            pt = random_rational_point(rng, ring)
        else:
            pt = random_generic_point(rng, ring)
        nu = q_order_at(M, pt)
        eta = eta_at(M, pt)
        res.cases += 1
        a, b = divmod(nu, q)
        where = f"f={f.to_str()} q={q} at {pt.to_str(ring.names)}"
        if not nu <= eta < q * (a + 1):
            res.fail(f"{where}: nu={nu}, eta={eta} outside [nu, q(a+1))")
        elif b and eta != nu:
            res.fail(f"{where}: q does not divide nu={nu} but eta={eta}")
        elif pt.is_rational and eta != nu:
            res.fail(f"{where}: rational point with nu={nu}, eta={eta}")
        if eta > nu:
            strict += 1
    res.info["strict"] = strict
    return res


def _max_locus_center(rng, G, ring):
    """A coordinate center inside the locus where eta(G) is maximal, or None."""
    pts = candidate_points(ring, box=1)
    vals = {pt: eta_G_at(G, pt) for pt in pts}
    best = max(vals.values())
    if best == INF or best < G.q:
        return None, best
    centers = []
    for pt, v in vals.items():
        if v == best:
            centers.append(tuple(range(ring.nvars)) if pt.is_rational else tuple(sorted(pt.subset)))
    return rng.choice(centers), best


def suite_pointwise(cfg: VerifyConfig, count: int = 100) -> SuiteResult:
    """eta at the image point bounds eta of the transformed collection, for plain and log collections."""
    rng = random.Random(cfg.seed * 1000 + 7)
    res = SuiteResult("pointwise")
    checks = 0
    while res.cases < cfg.count(count):
        p, e = random_field(rng, cfg.max_q_monomial)
        ring = random_ring(rng, p, 2, cfg.max_vars)
        M = random_monomial_module(rng, ring, e)
        use_log = res.cases % 2 == 1
        triple = LogTriple(M, random_log_context(rng, ring)) if use_log else LogTriple.plain(M)
        G = make_G_log(triple) if use_log else make_G(M)
        S, best = _max_locus_center(rng, G, ring)
        if S is None:
            continue
        a = int(best) // G.q
        res.cases += 1
        for t in S:
            c = blowup_chart(ring, S, t)
            pts = [PointSpec.origin(ring), PointSpec.generic(ring, [t]),
                   random_generic_point(rng, ring, [t])]
            pts += [random_rational_point(rng, ring) for _ in range(3)]
            tag = f"{'log ' if use_log else ''}{M} q={G.q} center {S} chart {t} a={a}"
            if not use_log:
                rep = check_pointwise(G, c, a, pts, box=2)
                checks += len(rep.rows)
                if not rep.precondition_ok:
                    res.fail(f"{tag}: precondition: {rep.note}")
                for r in rep.violations:
                    res.fail(f"{tag}: at {r.point.to_str(ring.names)} "
                             f"{r.eta_after} > {r.eta_before}")
                continue
            G1 = make_G_log(triple_transform(triple, c, a))
            for pt in pts:
                checks += 1
                before, after = eta_G_at(G, c.image_point(pt)), eta_G_at(G1, pt)
                if after > before:
                    res.fail(f"{tag}: at {pt.to_str(ring.names)} {after} > {before}")
    res.info["checks"] = checks
    return res


def _permissible_instance(rng, cfg):
    """(M, center, chart, a) with the center permissible for (M, a), a >= 1."""
    while True:
        p, e = random_field(rng, cfg.max_q_monomial)
        ring = random_ring(rng, p, 2, cfg.max_vars)
        M = random_monomial_module(rng, ring, e)
        options = []
        for S in proper_subsets(ring.nvars):
            amax = int(eta_at(M, PointSpec.generic(ring, S))) // M.q
            if amax >= 1:
                options.append((S, amax))
        if options:
            S, amax = rng.choice(options)
            c = blowup_chart(ring, S, rng.choice(S))
            return M, c, rng.randint(1, amax)


def suite_inclusions(cfg: VerifyConfig, count: int = 100) -> list:
    """Componentwise inclusions between Diff collections and their transforms."""
    rng = random.Random(cfg.seed * 1000 + 8)
    n = cfg.count(count)
    names = ("G(M) in G(M,Lambda,L)", "G(M1) in G(M)1", "G_log transform", "Giraud",
             "Giraud log", "Giraud ideal", "reverse comparison", "reverse comparison ideal")
    out = {k: SuiteResult(f"inclusion: {k}") for k in names}

    for _ in range(n):
        p, e = random_field(rng, cfg.max_q_monomial)
        ring = random_ring(rng, p, 2, cfg.max_vars)
        M = random_monomial_module(rng, ring, e)
        ctx = random_log_context(rng, ring)
        r = out["G(M) in G(M,Lambda,L)"]
        r.cases += 1
        if not collection_included(make_G(M), make_G_log(LogTriple(M, ctx))):
            r.fail(f"{M} Lambda={sorted(ctx.lam)} L={ctx.L}")

    for _ in range(n):
        M, c, a = _permissible_instance(rng, cfg)
        tag = f"{M} q={M.q} center {sorted(c.center)} chart {c.t} a={a}"
        r = out["G(M1) in G(M)1"]
        r.cases += 1
        if not collection_included(make_G(a_transform_module(M, c, a)),
                                   collection_transform(make_G(M), c, a)):
            r.fail(tag)
        Mt = total_transform_module(M, c)
        for i in range(1, M.q):
            Di = M.diff_plus_ideals[i - 1]
            xti = c.exceptional_power(i)
            giraud = transform_ideal(Di, c, 0).mul_monomial(xti)
            if not ideal_included(giraud, diff_plus_ideal(Mt, i)):
                out["Giraud"].fail(f"{tag} i={i}")
            if not ideal_included(diff_plus_ideal(Mt, i), transform_ideal(Di, c, 0)):
                out["reverse comparison"].fail(f"{tag} i={i}")
        out["Giraud"].cases += 1
        out["reverse comparison"].cases += 1

        J = Ideal(M.ring, [random_monomial(rng, M.ring, 2 * M.q) for _ in range(rng.randint(1, 3))])
        Jt = transform_ideal(J, c, 0)
        for i in range(0, M.q + 1):
            DJ = transform_ideal(diff_ideal(J, i), c, 0)
            if not ideal_included(DJ.mul_monomial(c.exceptional_power(i)), diff_ideal(Jt, i)):
                out["Giraud ideal"].fail(f"J={J} center {sorted(c.center)} chart {c.t} i={i}")
            if not ideal_included(diff_ideal(Jt, i), DJ):
                out["reverse comparison ideal"].fail(
                    f"J={J} center {sorted(c.center)} chart {c.t} i={i}")
        out["Giraud ideal"].cases += 1
        out["reverse comparison ideal"].cases += 1

    done = 0
    while done < n:
        p, e = random_field(rng, cfg.max_q_monomial)
        ring = random_ring(rng, p, 2, cfg.max_vars)
        M = random_monomial_module(rng, ring, e)
        ctx = random_log_context(rng, ring)
        triple = LogTriple(M, ctx)
        G = make_G_log(triple)
        options = []
        for S in proper_subsets(ring.nvars):
            v = eta_G_at(G, PointSpec.generic(ring, S))
            if v != INF and v >= M.q:
                options.append((S, int(v) // M.q))
        if not options:
            continue
        S, amax = rng.choice(options)
        c = blowup_chart(ring, S, rng.choice(S))
        a = rng.randint(1, amax)
        tag = f"{M} q={M.q} Lambda={sorted(ctx.lam)} L={ctx.L} center {S} chart {c.t} a={a}"
        done += 1
        r = out["G_log transform"]
        r.cases += 1
        if not collection_included(collection_transform(G, c, a),
                                   make_G_log(triple_transform(triple, c, a))):
            r.fail(tag)
        ctx1 = transform_log_context(ctx, c)
        Mt = total_transform_module(M, c)
        r = out["Giraud log"]
        r.cases += 1
        for i in range(1, M.q):
            lhs = transform_ideal(log_diff_plus_ideal(M, ctx, i), c, 0).mul_monomial(
                c.exceptional_power(i))
            if not ideal_included(lhs, log_diff_plus_ideal(Mt, ctx1, i)):
                r.fail(f"{tag} i={i}")
    return list(out.values())


def suite_jacobian(cfg: VerifyConfig, count: int = 300) -> SuiteResult:
    """ord_x(f) >= n iff Diff^{n-1}(f) vanishes at x."""
    rng = random.Random(cfg.seed * 1000 + 10)
    res = SuiteResult("jacobian")
    hits = 0
    for _ in range(cfg.count(count)):
        p = rng.choice((2, 3, 5, 7))
        ring = random_ring(rng, p, 1, min(3, cfg.max_vars))
        n = rng.randint(1, 6)
        g = random_poly(rng, ring, 4, n + 3, min_deg=max(0, n - 2))
        if g.is_zero():
            g = ring.one()
        pt = PointSpec.origin(ring) if rng.random() < 0.5 else random_rational_point(rng, ring)
        f = translate(g, [-c for c in pt.coords])   # f(x + pt) = g(x)
        lhs = order_at(f, pt) >= n
        rhs = ideal_order_at(diff_ideal(Ideal(ring, [f]), n - 1), pt) >= 1
        res.cases += 1
        hits += lhs
        if lhs != rhs:
            res.fail(f"f={f} n={n} at {pt.to_str(ring.names)}: order test {lhs}, Diff test {rhs}")
    res.info["order>=n"] = hits
    return res


# -- log-operator oracle -----------------------------------------------------------

@dataclass
class OracleResult:
    p: int
    lam: tuple
    order: int
    coeff_deg: int
    family_dim: int
    log_dim: int
    family_is_log: bool

    @property
    def equal(self) -> bool:
        return self.family_is_log and self.family_dim == self.log_dim


def _monomials(nvars: int, max_deg: int) -> list:
    return [d for d in product(range(max_deg + 1), repeat=nvars) if sum(d) <= max_deg]


def log_operator_oracle(p: int, lam, order: int, coeff_deg: int = 3, nvars: int = 2) -> OracleResult:
    """Compare span{x^delta D_gamma : delta >= gamma on lam} with all lam-logarithmic operators.

    Operators are sum c_{delta,gamma} x^delta D_gamma with |gamma| <= order and
    |delta| <= coeff_deg. An operator is lam-logarithmic when it maps x_j^k * x^beta
    into (x_j^k) for every j in lam, 1 <= k <= order + 3 and beta in [0, order + 3]^n.
    """
    from sympy import GF
    from sympy.polys.matrices import DomainMatrix

    lam = tuple(sorted(lam))
    basis = [(d, g) for g in _monomials(nvars, order) for d in _monomials(nvars, coeff_deg)]
    col = {b: k for k, b in enumerate(basis)}
    bound = order + 3
    rows = set()
    for j in lam:
        for k in range(1, bound + 1):
            for beta in product(range(bound + 1), repeat=nvars):
                alpha = list(beta)
                alpha[j] += k
                image = {}
                for (d, g), idx in col.items():
                    if any(a < b for a, b in zip(alpha, g)):
                        continue
                    c = math.prod(math.comb(a, b) for a, b in zip(alpha, g)) % p
                    if not c:
                        continue
                    mono = tuple(dd + a - b for dd, a, b in zip(d, alpha, g))
                    if mono[j] < k:
                        image.setdefault(mono, {})[idx] = c
                for coeffs in image.values():
                    rows.add(tuple(sorted(coeffs.items())))
    K = GF(p)
    ncols = len(basis)
    dense = [[K(0)] * ncols for _ in rows]
    for r, row in enumerate(sorted(rows)):
        for idx, c in row:
            dense[r][idx] = K(c)
    log_dim = ncols - DomainMatrix(dense, (len(dense), ncols), K).rank() if dense else ncols
    family = [col[(d, g)] for (d, g) in basis if all(d[j] >= g[j] for j in lam)]
    family_is_log = _family_in_kernel(rows, family)
    return OracleResult(p, lam, order, coeff_deg, len(family), log_dim, family_is_log)


def _family_in_kernel(rows, family) -> bool:
    """Each family member is a unit vector, so it is in the kernel iff no row touches it."""
    fam = set(family)
    return not any(i in fam for row in rows for i, _ in row)


def suite_log_oracle(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("log-operator oracle")
    for p in (2, 3):
        for lam in ((0,), (0, 1)):
            for order in (1, 2, 3):
                r = log_operator_oracle(p, lam, order)
                res.cases += 1
                if not r.equal:
                    res.fail(f"p={p} lambda={lam} order={order}: family dim {r.family_dim}, "
                             f"log dim {r.log_dim}, family logarithmic: {r.family_is_log}")
    return res


SUITES = {
    "multiple-of-q": suite_multiple_of_q,
    "sandwich": suite_sandwich,
    "pointwise": suite_pointwise,
    "inclusions": suite_inclusions,
    "jacobian": suite_jacobian,
    "log-oracle": suite_log_oracle,
}


def run_suites(cfg: VerifyConfig, names=None) -> list:
    out = []
    for name in names or SUITES:
        r = SUITES[name](cfg)
        out.extend(r if isinstance(r, list) else [r])
    return out
