"""Batch front end: run a JSON job against one algebra and print one JSON report.

Job file layout::

    {"gwa": {"field": "Q", "sigma": {"classical": {"shift": "1"}},
             "a": {"unit": "1", "factors": [{"poly": ["1", "1"], "mult": 2}, ...]}},
     "seed": 0,
     "tasks": [{"task": "analyze_vp", "p": {"factors": [...]}}, ...]}

Exit status is 0 on success, 1 when some task raised a math error (the other
tasks still run) and 2 when the job itself is malformed.
"""
from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .errors import MathError, ParseError
from .factored import FactoredElement
from .gwa import GwaSpec, all_orbits_infinite, center_report, is_simple_ring
from .oracle import relation_suite
from .rank1 import (
    Rank1Module,
    analyze,
    color_switch,
    composition_series,
    hom_basis,
    is_simple,
    make_vp,
    orbit_positions,
    socle,
)
from .rankn import PolyMatrix, construct_simple_vn, construct_sl2_family, make_matrix_module

TASK_FIELDS = {
    "analyze_vp": ("p",),
    "classify_all_divisors": (),
    "rankn": ("P",),
    "construct_vn": ("a0", "n"),
    "sl2": ("b", "n"),
    "hom": ("p", "p'", "max_deg"),
    "diagram": ("p",),
}
OPTIONAL = {"hom": {"max_deg"}}


class DivisorBoundExceeded(MathError):
    pass


@dataclass
class Task:
    kind: str
    args: dict


@dataclass
class JobSpec:
    gwa: GwaSpec
    tasks: list
    seed: int = 0


# parsing


def _factored(spec: GwaSpec, obj, what: str) -> FactoredElement:
    if isinstance(obj, list):
        obj = {"factors": [{"poly": f} for f in obj]}
    elem, _ = FactoredElement.from_json(spec.field, obj)
    known = set(spec.a.irr())
    for f in elem.irr():
        if f not in known:
            raise ParseError(f"{what}: factor {f} is not an irreducible factor of a")
    return elem


def _parse_task(spec: GwaSpec, raw) -> Task:
    if not isinstance(raw, dict) or "task" not in raw:
        raise ParseError(f"task record needs a 'task' key: {raw!r}")
    kind = raw["task"]
    if kind not in TASK_FIELDS:
        raise ParseError(f"unknown task kind {kind!r}")
    if kind == "hom" and "p_prime" in raw and "p'" not in raw:
        raw = {**raw, "p'": raw["p_prime"]}
    missing = [k for k in TASK_FIELDS[kind] if k not in raw and k not in OPTIONAL.get(kind, ())]
    if missing:
        raise ParseError(f"{kind}: missing {', '.join(missing)}")
    args: dict = {}
    try:
        if kind in ("analyze_vp", "diagram"):
            args["p"] = _factored(spec, raw["p"], kind)
        elif kind == "hom":
            args["p"] = _factored(spec, raw["p"], kind)
            args["p'"] = _factored(spec, raw["p'"], kind)
            md = raw.get("max_deg")
            if md is not None and (not isinstance(md, int) or md < 0):
                raise ParseError("hom: max_deg must be a nonnegative integer")
            args["max_deg"] = md
        elif kind == "rankn":
            args["P"] = PolyMatrix.from_json(spec.field, raw["P"])
        elif kind == "construct_vn":
            args["a0"] = _factored(spec, raw["a0"], kind)
            args["n"] = _positive(raw["n"], kind)
        elif kind == "sl2":
            args["b"] = Fraction(str(raw["b"]))
            args["n"] = _positive(raw["n"], kind)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{kind}: {exc}") from exc
    return Task(kind, args)


def _positive(n, kind: str) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"{kind}: n must be a positive integer")
    return n


def parse_job(obj, seed: Optional[int] = None) -> JobSpec:
    if not isinstance(obj, dict) or "gwa" not in obj:
        raise ParseError("job needs a 'gwa' section")
    try:
        spec = GwaSpec.from_json(obj["gwa"])
    except MathError as exc:
        raise ParseError(f"gwa: {exc}") from exc
    tasks = obj.get("tasks", [])
    if not isinstance(tasks, list):
        raise ParseError("'tasks' must be a list")
    if seed is None:
        seed = obj.get("seed", 0)
    if not isinstance(seed, int) or seed < 0 or seed >= 2**64:
        raise ParseError("seed must be an unsigned 64-bit integer")
    return JobSpec(spec, [_parse_task(spec, t) for t in tasks], seed)


# diagrams


def _panel(title: str, p_pos, q_pos, ansi: bool) -> list[str]:
    cols: dict[int, list[str]] = {}
    for k in p_pos:
        cols.setdefault(k, []).append("P")
    for k in q_pos:
        cols.setdefault(k, []).append("Q")
    lo, hi = min(cols), max(cols)
    width = max(3, len(str(lo)) + 1, len(str(hi)) + 1)
    height = max(len(v) for v in cols.values())
    lines = [title]
    for level in range(height - 1, -1, -1):
        row = ""
        for k in range(lo, hi + 1):
            stack = cols.get(k, [])
            mark = stack[level] if level < len(stack) else ""
            cell = mark.rjust(width)
            if ansi and mark:
                cell = cell.replace(mark, ("\x1b[31m" if mark == "P" else "\x1b[34m") + mark + "\x1b[0m")
            row += cell
        lines.append("    " + row.rstrip())
    lines.append("  k " + "".join(str(k).rjust(width) for k in range(lo, hi + 1)))
    return lines


def render_diagram(m: Rank1Module, ansi: bool = False, socle_panel: bool = True) -> str:
    """Factor stacks per orbit: ``P`` for factors of p, ``Q`` for factors of q.

    Column ``k`` holds ``sigma^k(rep)``.  The socle panel shows the positions
    after the color switch and is omitted when some orbit is finite.
    """
    blocks = []
    switched = {}
    if socle_panel and all_orbits_infinite(m.spec):
        switched = {sw.rep: sw for sw in color_switch(m)}
    for rep, pp, qp in orbit_positions(m):
        lines = [f"orbit of {rep} (column k holds sigma^k({rep}))"]
        lines += _panel("initial", pp, qp, ansi)
        sw = switched.get(rep)
        if sw is not None:
            lines += _panel("socle", sw.p_after, sw.q_after, ansi)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


# running


def _divisors(a: FactoredElement):
    irr = [(f, m) for f, m in a.factors]
    for mults in itertools.product(*(range(m + 1) for _, m in irr)):
        yield FactoredElement(a.field, 1, [(f, k) for (f, _), k in zip(irr, mults) if k])


def _classify(spec: GwaSpec, bound: int) -> dict:
    if spec.a.degree > bound:
        raise DivisorBoundExceeded(f"deg a = {spec.a.degree} exceeds the divisor bound {bound}")
    finite = all_orbits_infinite(spec)
    rows = []
    for p in _divisors(spec.a):
        m = make_vp(spec, p)
        row = {"p": str(m.p), "q": str(m.q), "simple": is_simple(m).simple}
        if finite:
            row["length"] = len(composition_series(m))
            row["socle"] = str(socle(m))
        else:
            # a finite orbit always yields an infinite descending chain
            row["length"] = "infinite"
            row["socle"] = None
        rows.append(row)
    ring = is_simple_ring(spec)
    return {"ring_simple": ring.to_json(), "center": center_report(spec), "divisors": rows}


def run_task(job: JobSpec, task: Task, ctx: dict) -> dict:
    spec = job.gwa
    rng = random.Random(job.seed)
    args = task.args
    if task.kind == "analyze_vp":
        m = make_vp(spec, args["p"])
        out = analyze(m)
        out["oracle"] = relation_suite(m, rng, seed=job.seed).to_json()
        return out
    if task.kind == "classify_all_divisors":
        return _classify(spec, ctx["max_divisor_degree"])
    if task.kind == "rankn":
        m = make_matrix_module(spec, args["P"])
        return {
            "P": m.P.to_json(),
            "Q": m.Q.to_json(),
            "invariant_factors": [d.to_json() for d in m.invariant_factors],
            "simplicity": "not decided for general P",
            "oracle": relation_suite(m, rng, seed=job.seed).to_json(),
        }
    if task.kind == "construct_vn":
        cert = construct_simple_vn(spec, args["a0"], args["n"])
        out = cert.to_json()
        out["oracle"] = relation_suite(cert.module, rng, seed=job.seed).to_json()
        return out
    if task.kind == "sl2":
        fam = construct_sl2_family(args["b"], args["n"])
        out = fam.to_json()
        out["oracle"] = relation_suite(fam.module, rng, seed=job.seed).to_json()
        return out
    if task.kind == "hom":
        src, dst = make_vp(spec, args["p"]), make_vp(spec, args["p'"])
        return hom_basis(src, dst, args["max_deg"]).to_json()
    if task.kind == "diagram":
        m = make_vp(spec, args["p"])
        text = render_diagram(m, ansi=ctx.get("ansi", False))
        if ctx.get("diagrams_dir"):
            path = Path(ctx["diagrams_dir"]) / f"diagram_{ctx['index']}.txt"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text + "\n")
        return {"p": str(m.p), "diagram": text}
    raise ParseError(f"unknown task kind {task.kind!r}")


def run(job: JobSpec, max_divisor_degree: int = 16, diagrams_dir: Optional[str] = None, ansi: bool = False) -> tuple[dict, int]:
    """Run every task; returns the report and the exit status."""
    sections = []
    failed = False
    for i, task in enumerate(job.tasks):
        ctx = {"max_divisor_degree": max_divisor_degree, "diagrams_dir": diagrams_dir, "ansi": ansi, "index": i}
        try:
            sections.append({"task": task.kind, "ok": True, "result": run_task(job, task, ctx)})
        except MathError as exc:
            failed = True
            sections.append({"task": task.kind, "ok": False, "error": {"type": type(exc).__name__, "message": str(exc)}})
    report = {"gwa": job.gwa.to_json(), "seed": job.seed, "tasks": sections}
    return report, 1 if failed else 0


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=str)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="gwafree", description="Analyze free modules over a generalized Weyl algebra.")
    ap.add_argument("--job", required=True, help="job file (JSON); '-' reads standard input")
    ap.add_argument("--seed", type=int, default=None, help="seed for oracle sampling (overrides the job)")
    ap.add_argument("--diagrams-dir", default=None, help="also write each diagram to this directory")
    ap.add_argument("--max-divisor-degree", type=int, default=16)
    ap.add_argument("--ansi", action="store_true", help="color P and Q marks")
    ns = ap.parse_args(argv)
    try:
        text = sys.stdin.read() if ns.job == "-" else Path(ns.job).read_text()
        job = parse_job(json.loads(text), ns.seed)
    except (OSError, json.JSONDecodeError, ParseError) as exc:
        print(dumps({"error": {"type": "ParseError", "message": str(exc)}}))
        print(f"gwafree: {exc}", file=sys.stderr)
        return 2
    report, status = run(job, ns.max_divisor_degree, ns.diagrams_dir, ns.ansi)
    print(dumps(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
