"""Rendering of sequence reports: plain text for people, JSON for tools.

Text output uses primed chart names (x2', x3''). JSON output writes every
polynomial with the stable base names and carries the primed names only as
a per-stage rename table.
"""

from __future__ import annotations

import dataclasses
import json
import os

from .diffops import LogContext
from .errors import UsageError
from .ffpoly import Polynomial
from .ideals import INF, Ideal, PointSpec
from .qdiff import QDiffCollection, SequenceReport, StageReport, Step
from .qmod import QModule

VERBOSITY_ENV = "QSING_VERBOSITY"
LEVELS = ("brief", "normal", "full")


def default_verbosity() -> str:
    level = os.environ.get(VERBOSITY_ENV, "normal").strip().lower() or "normal"
    if level not in LEVELS:
        raise UsageError(f"{VERBOSITY_ENV}={level!r}: expected one of {', '.join(LEVELS)}")
    return level


def fmt_value(v) -> str:
    if v is None:
        return "-"
    if v == INF:
        return "inf"
    return str(int(v))


def _ctx_str(ctx: LogContext, names) -> tuple:
    lam = "{" + ", ".join(names[i] for i in sorted(ctx.lam)) + "}"
    return lam, ctx.L_poly().to_str(names)


def _points(pts, names) -> str:
    return "; ".join(pt.to_str(names) for pt in pts) if pts else "(none)"


def _stage_lines(st: StageReport, q: int, level: str) -> list:
    names = st.names
    out = [f"stage {st.index}  variables: {', '.join(names)}"]
    out.append(f"  M = {st.module.to_str(names)}")
    lam, L = _ctx_str(st.ctx, names)
    out.append(f"  Lambda = {lam}  L = {L}")
    if st.collection is None:
        out.append(f"  G: {st.collection_note}")
    else:
        if level != "brief":
            out.extend("  " + line for line in st.collection.to_lines(names))
        status = {True: "q-differential (validated)", False: "NOT q-differential",
                  None: "unvalidated (outside the monomial fragment)"}[st.validated]
        out.append(f"  collection: {status}")
        decomposition = ""
        if st.a is not None:
            decomposition = f" = {q}*{st.a} + {st.b}"
        out.append(f"  max η(G) over candidates = {fmt_value(st.max_G)}{decomposition}, "
                   f"attained along: {_points(st.locus_G, names)}")
    out.append(f"  max η(M) over candidates = {fmt_value(st.max_M)}, "
               f"attained along: {_points(st.locus_M, names)}")
    if level != "brief":
        for pt, eg, em, nq in st.queries:
            out.append(f"  at {pt.to_str(names)}: η(G) = {fmt_value(eg)}, η(M) = {fmt_value(em)}, "
                       f"ν^(q) = {fmt_value(nq)}")
    if level == "full":
        for pt in sorted(st.eta_M, key=PointSpec.sort_key):
            eg = st.eta_G.get(pt)
            out.append(f"    {pt.to_str(names)}: η(G) = {fmt_value(eg)}, "
                       f"η(M) = {fmt_value(st.eta_M[pt])}")
    if st.step is not None:
        center = ",".join(names[i] for i in st.step.center)
        how = "auto" if st.step_auto else "given"
        out.append(f"  step: blow up V({center}), {names[st.step.chart]}-chart, "
                   f"a = {st.step_a} ({how})")
    return out


def render_text(report: SequenceReport, level: str | None = None) -> str:
    level = level or default_verbosity()
    if level not in LEVELS:
        raise UsageError(f"unknown verbosity {level!r}")
    out = [f"p = {report.p}, e = {report.e}, q = {report.q}; "
           f"candidates: box {report.box}, codim {report.codim if report.codim is not None else 'all'}"]
    for st in report.stages:
        out.extend(_stage_lines(st, report.q, level))
    for msg in report.consistency_failures:
        out.append(f"internal-consistency: {msg}")
    out.append(f"stop: {report.stop_reason}")
    return "\n".join(out) + "\n"


# -- JSON ---------------------------------------------------------------------

def _point_json(pt: PointSpec) -> dict:
    if pt.is_rational:
        return {"kind": "rational", "coords": list(pt.coords)}
    return {"kind": "generic", "subset": sorted(pt.subset)}


def _to_json(obj, base_names):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, float) and obj == INF:
        return "inf"
    if isinstance(obj, (int, float)):
        return int(obj)
    if isinstance(obj, Polynomial):
        return obj.to_str(base_names)
    if isinstance(obj, Ideal):
        return [g.to_str(base_names) for g in obj.generators]
    if isinstance(obj, QModule):
        return [g.to_str(base_names) for g in obj.generators]
    if isinstance(obj, QDiffCollection):
        return [_to_json(I, base_names) for I in obj.ideals]
    if isinstance(obj, LogContext):
        return {"lambda": sorted(obj.lam), "L": list(obj.L)}
    if isinstance(obj, PointSpec):
        return _point_json(obj)
    if isinstance(obj, Step):
        return {"center": list(obj.center), "chart": obj.chart, "a": obj.a}
    if isinstance(obj, dict):
        # point -> value tables become ordered lists
        items = sorted(obj.items(), key=lambda kv: kv[0].sort_key())
        return [{"point": _to_json(k, base_names), "value": _to_json(v, base_names)}
                for k, v in items]
    if isinstance(obj, (list, tuple, frozenset, set)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_to_json(x, base_names) for x in seq]
    if dataclasses.is_dataclass(obj):
        return {f.name: _to_json(getattr(obj, f.name), base_names)
                for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_to_json(report: SequenceReport) -> dict:
    base = report.base_names
    out = _to_json(report, base)
    for st_json in out["stages"]:
        # queries are (point, eta_G, eta_M, q_order) tuples
        st_json["queries"] = [dict(zip(("point", "eta_G", "eta_M", "q_order"), row))
                              for row in st_json["queries"]]
    return out


def render_json(report: SequenceReport) -> str:
    return json.dumps(report_to_json(report), indent=2, ensure_ascii=False, sort_keys=False) + "\n"
