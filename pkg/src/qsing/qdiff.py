"""q-differential collections, logarithmic triples, and the sequence runner."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .diffops import LogContext, diff_ideal, log_diff_plus_ideal
from .errors import DomainError, InternalConsistencyError, UnsupportedFragmentError
from .ffpoly import Polynomial, Ring
from .geom import (Chart, a_transform_module, blowup_chart, display_names, transform_ideal,
                   transform_log_context)
from .ideals import INF, Ideal, PointSpec, colon_by_monomial, ideal_included, ideal_order_at
from .qmod import (QModule, candidate_points, eta_at, max_over, most_generic, normal_form,
                   q_order_at)


@dataclass(frozen=True)
class QDiffCollection:
    q: int
    ideals: tuple

    def __post_init__(self):
        ideals = tuple(self.ideals)
        if len(ideals) != self.q - 1:
            raise DomainError(f"a q-differential collection has q-1 = {self.q - 1} ideals")
        object.__setattr__(self, "ideals", ideals)

    @property
    def ring(self) -> Ring:
        return self.ideals[0].ring

    def is_zero(self) -> bool:
        return self.ideals[-1].is_zero()

    def is_monomial(self) -> bool:
        return all(I.is_monomial for I in self.ideals)

    def __getitem__(self, i: int) -> Ideal:
        """1-based access: G[i] is I_i."""
        return self.ideals[i - 1]

    def to_lines(self, names=None) -> list:
        return [f"I{i} = {I.to_str(names)}" for i, I in enumerate(self.ideals, start=1)]


def collection_included(G: QDiffCollection, H: QDiffCollection) -> bool:
    """Componentwise G subset of H."""
    return all(ideal_included(a, b) for a, b in zip(G.ideals, H.ideals))


@dataclass(frozen=True)
class LogTriple:
    module: QModule
    ctx: LogContext

    def __post_init__(self):
        if self.module.ring != self.ctx.ring:
            raise DomainError("module and log context live in different rings")

    @classmethod
    def plain(cls, M: QModule) -> "LogTriple":
        return cls(M, LogContext.trivial(M.ring))


def make_G(M: QModule) -> QDiffCollection:
    return QDiffCollection(M.q, M.diff_plus_ideals)


def make_G_log(t: LogTriple) -> QDiffCollection:
    M, ctx = t.module, t.ctx
    ideals = [colon_by_monomial(log_diff_plus_ideal(M, ctx, i), ctx.L_power(i))
              for i in range(1, M.q)]
    return QDiffCollection(M.q, ideals)


def validate_qdiff(G: QDiffCollection) -> bool:
    if not G.is_monomial():
        raise UnsupportedFragmentError("q-differential check needs monomial components")
    q = G.q
    for i in range(1, q - 1):
        if not ideal_included(G[i], G[i + 1]):
            return False
    for i in range(1, q):
        for j in range(1, q - i):
            if not ideal_included(diff_ideal(G[i], j), G[i + j]):
                return False
    return True


def eta_G_at(G: QDiffCollection, pt: PointSpec):
    return min(ideal_order_at(I, pt) + i for i, I in enumerate(G.ideals, start=1))


def collection_transform(G: QDiffCollection, c: Chart, a: int) -> QDiffCollection:
    if a < 1:
        raise DomainError(f"a must be >= 1, got {a}")
    return QDiffCollection(G.q, [transform_ideal(I, c, G.q * a) for I in G.ideals])


def triple_transform(t: LogTriple, c: Chart, a: int) -> LogTriple:
    return LogTriple(a_transform_module(t.module, c, a), transform_log_context(t.ctx, c))


def points_in_center(points: Sequence[PointSpec], center) -> list:
    center = frozenset(center)
    return [pt for pt in points if center <= pt.vanishing_set()]


# -- pointwise inequality -----------------------------------------------------

@dataclass
class PointwiseRow:
    point: PointSpec
    image: PointSpec
    eta_before: float
    eta_after: float

    @property
    def ok(self) -> bool:
        return self.eta_before >= self.eta_after


@dataclass
class PointwiseReport:
    precondition_ok: bool
    note: str
    rows: list = field(default_factory=list)

    @property
    def violations(self) -> list:
        return [r for r in self.rows if not r.ok]

    @property
    def ok(self) -> bool:
        return self.precondition_ok and not self.violations


def check_pointwise(G: QDiffCollection, c: Chart, a: int, pts: Sequence[PointSpec],
                    box: int = 2) -> PointwiseReport:
    """eta_{image(x1)}(G) >= eta_{x1}(G_1^(a)) at every supplied chart point x1."""
    ring = c.ring
    q = G.q
    along = points_in_center(candidate_points(ring, box=box), c.center)
    values = {eta_G_at(G, z) for z in along}
    notes = []
    if len(values) != 1:
        notes.append(f"eta(G) is not constant along the center: {sorted(values)}")
    elif a != next(iter(values)) // q:
        notes.append(f"a = {a} but eta(G) along the center is {next(iter(values))}")
    report = PointwiseReport(not notes, "; ".join(notes) or "eta constant along the center")
    G1 = collection_transform(G, c, a)
    for pt in pts:
        img = c.image_point(pt)
        report.rows.append(PointwiseRow(pt, img, eta_G_at(G, img), eta_G_at(G1, pt)))
    return report


# -- sequences ----------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    center: tuple          # variable indices
    chart: int             # chart variable index
    a: int | None = None   # None means "auto"


@dataclass
class SequenceJob:
    p: int
    e: int
    names: tuple
    generators: tuple      # Polynomials over Ring(p, names)
    lam: frozenset = frozenset()
    L: tuple | None = None
    steps: tuple = ()
    queries: tuple = ()
    box: int = 2
    codim: int | None = None

    @property
    def ring(self) -> Ring:
        return Ring(self.p, tuple(self.names))


@dataclass
class StageReport:
    index: int
    names: tuple                       # display names on this chart
    module: QModule
    ctx: LogContext
    collection: QDiffCollection | None
    collection_note: str
    validated: bool | None             # None: outside the monomial fragment
    eta_G: dict                        # PointSpec -> value, over candidates
    eta_M: dict
    max_G: float
    locus_G: list
    max_M: float
    locus_M: list
    queries: list                      # (point, eta_G, eta_M, q_order)
    a: int | None = None               # a_i = max_G // q
    b: int | None = None
    step: Step | None = None           # step leaving this stage
    step_a: int | None = None
    step_auto: bool = False
    center_in_max_locus: bool | None = None


@dataclass
class SequenceReport:
    p: int
    e: int
    q: int
    base_names: tuple
    box: int
    codim: int | None
    stages: list = field(default_factory=list)
    stop_reason: str = ""
    consistency_failures: list = field(default_factory=list)


def _stage(index, triple: LogTriple, primes, job: SequenceJob) -> StageReport:
    M, ctx = triple.module, triple.ctx
    ring = M.ring
    q = M.q
    names = display_names(ring, primes)
    cands = candidate_points(ring, box=job.box, codim=job.codim)
    try:
        G = make_G_log(triple)
        note = ""
    except UnsupportedFragmentError as exc:
        G, note = None, f"unsupported-fragment: {exc}"
    validated = None
    if G is not None and G.is_monomial():
        validated = validate_qdiff(G)
    eta_G = {pt: eta_G_at(G, pt) for pt in cands} if G is not None else {}
    eta_M = {pt: eta_at(M, pt) for pt in cands}
    max_G, locus_G = max_over(eta_G)
    max_M, locus_M = max_over(eta_M)
    queries = []
    for pt in job.queries:
        try:
            pt.validate(ring)
        except DomainError:
            continue
        queries.append((pt, eta_G_at(G, pt) if G is not None else None, eta_at(M, pt),
                        q_order_at(M, pt)))
    st = StageReport(index, names, M, ctx, G, note, validated, eta_G, eta_M, max_G, locus_G,
                     max_M, locus_M, queries)
    if G is not None and max_G != INF:
        st.a, st.b = divmod(int(max_G), q)
    return st


def _resolve_a(stage: StageReport, step: Step, q: int) -> tuple:
    if step.a is not None:
        return step.a, False
    if stage.collection is None:
        raise DomainError(f"stage {stage.index}: 'auto' a needs the logarithmic collection "
                          f"({stage.collection_note})")
    along = [v for pt, v in stage.eta_G.items() if frozenset(step.center) <= pt.vanishing_set()]
    if not along:
        raise DomainError(f"stage {stage.index}: no candidate point lies on the center")
    return int(max(along)) // q, True


def run_sequence(job: SequenceJob) -> SequenceReport:
    ring = job.ring
    q = ring.p ** job.e
    M = normal_form(job.generators, job.e, ring=ring)
    L = job.L if job.L is not None else ring.zero_exp()
    triple = LogTriple(M, LogContext(ring, frozenset(job.lam), L))
    primes = (0,) * ring.nvars
    report = SequenceReport(job.p, job.e, q, ring.names, job.box, job.codim)
    previous = None
    for k in range(len(job.steps) + 1):
        stage = _stage(k, triple, primes, job)
        report.stages.append(stage)
        if previous is not None and previous.center_in_max_locus and stage.collection is not None:
            if stage.max_G > previous.max_G:
                report.consistency_failures.append(
                    f"stage {k}: max eta(G) rose from {previous.max_G} to {stage.max_G} "
                    f"after a center inside the maximum locus")
        if stage.collection is not None and stage.max_G < q:
            report.stop_reason = f"max η(G) = {stage.max_G} < q: stop"
            break
        if k == len(job.steps):
            report.stop_reason = "steps exhausted"
            break
        step = job.steps[k]
        a, auto = _resolve_a(stage, step, q)
        stage.step, stage.step_a, stage.step_auto = step, a, auto
        if stage.collection is not None:
            xi = PointSpec.generic(ring, step.center)
            stage.center_in_max_locus = (eta_G_at(stage.collection, xi) == stage.max_G
                                         and a == stage.a)
        chart = blowup_chart(ring, step.center, step.chart, primes)
        triple = triple_transform(triple, chart, a)
        primes = chart.primes_out
        previous = stage
    return report


def point_names(pt: PointSpec, names) -> str:
    return pt.to_str(names)
