"""Sequence job files.

A job is an INI-style file read with configparser::

    [job]
    schema = 1
    p = 3
    e = 1
    vars = x1..x5

    [module]
    gens = x1*x2*x3*x4*x5          # one generator per line, or ';'-separated

    [log]                           # optional
    lambda =
    L = 1

    [step 1]
    center = x1, x2, x3, x4, x5
    chart = x1
    a = auto                        # or a positive integer

    [query]                         # optional
    points = origin
             generic:x2,x3,x4,x5

    [options]                       # optional
    box = 2                         # rational candidates use coordinates in [0, box)
    codim = 5                       # generic candidates up to this codimension

Steps run in the numeric order of their section suffix. Variables are named
by base name; primes (x3'') are accepted and ignored.
"""

from __future__ import annotations

import configparser
from pathlib import Path

from .errors import DomainError, UsageError
from .ffpoly import Ring, check_prime
from .parse import parse_monomial_exp, parse_name_list, parse_point, parse_poly, parse_vars
from .qdiff import SequenceJob, Step

SCHEMA_VERSION = 1


def _split_items(text: str) -> list:
    out = []
    for line in text.replace(";", "\n").splitlines():
        line = line.strip()
        if line:
            out.append(line)
    return out


def _int(section, key, default=None):
    raw = section.get(key)
    if raw is None or raw.strip() == "":
        if default is None:
            raise DomainError(f"[{section.name}] is missing {key!r}")
        return default
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"[{section.name}] {key} = {raw!r} is not an integer") from None


def parse_job(text: str, source: str = "<job>") -> SequenceJob:
    cp = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",), interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise UsageError(f"{source}: {exc}") from None
    if "job" not in cp:
        raise DomainError(f"{source}: missing [job] section")
    head = cp["job"]
    schema = _int(head, "schema")
    if schema != SCHEMA_VERSION:
        raise DomainError(f"{source}: unsupported schema {schema}, expected {SCHEMA_VERSION}")
    p = check_prime(_int(head, "p"))
    e = _int(head, "e", 1)
    if e < 1:
        raise DomainError("e must be >= 1")
    names = parse_vars(head.get("vars", ""))
    ring = Ring(p, names)

    if "module" not in cp:
        raise DomainError(f"{source}: missing [module] section")
    gens = tuple(parse_poly(src, ring) for src in _split_items(cp["module"].get("gens", "")))

    lam, L = frozenset(), None
    if "log" in cp:
        lam = frozenset(parse_name_list(cp["log"].get("lambda", ""), ring))
        L_src = cp["log"].get("L", "").strip()
        L = parse_monomial_exp(L_src, ring) if L_src else None

    step_sections = []
    for name in cp.sections():
        if name.split()[0] == "step":
            parts = name.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise DomainError(f"{source}: step sections are named [step N], got [{name}]")
            step_sections.append((int(parts[1]), cp[name]))
    step_sections.sort(key=lambda t: t[0])
    steps = []
    for _, sec in step_sections:
        center = tuple(sorted(parse_name_list(sec.get("center", ""), ring)))
        if not center:
            raise DomainError(f"[{sec.name}] needs a nonempty center")
        chart = ring.index(sec.get("chart", "").strip())
        a_raw = sec.get("a", "auto").strip()
        if a_raw == "auto":
            a = None
        else:
            a = _int(sec, "a")
            if a < 1:
                raise DomainError(f"[{sec.name}] a must be >= 1 or 'auto'")
        if chart not in center:
            raise DomainError(f"[{sec.name}] chart variable must lie in the center")
        steps.append(Step(center, chart, a))

    queries = ()
    if "query" in cp:
        queries = tuple(parse_point(s, ring) for s in _split_items(cp["query"].get("points", "")))

    box, codim = 2, None
    if "options" in cp:
        box = _int(cp["options"], "box", 2)
        codim = _int(cp["options"], "codim", ring.nvars)
    return SequenceJob(p, e, names, gens, lam, L, tuple(steps), queries, box, codim)


def load_job(path) -> SequenceJob:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read job file {path}: {exc.strerror}") from None
    return parse_job(text, source=str(path))
