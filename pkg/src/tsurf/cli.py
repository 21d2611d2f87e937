"""``tsurf`` command line: check, qmatrix, verify, enumerate, edges, build, plan.

Every report is JSON with ``schema_version`` "1", sorted keys and no
floating point.  Exit status is 0 on success, 1 when an input fails
validation and 2 on usage errors (including out-of-range choice indices).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .compression import ledger_check, plan_for
from .edgecombinatorics import corner_words, enumerate_strip_matchings, region_labels
from .enumeration import enumerate_admissible_vertices
from .qmatching import (
    QMatchingError, build_q_matrix, double_solution, is_admissible, parse_quad_vector,
    quad_vector_to_json, verify_q_matching,
)
from .surface import (
    BuiltSurface, SurfaceError, build_surface, double_choice, essential_cycle, euler_characteristic,
    strip_options,
)
from .triangulation import TriangulationError, builtin, builtin_names, parse_triangulation

SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    triangulation: str
    solution: str | None = None
    choice: dict = field(default_factory=dict)
    all_choices: bool = False
    double: bool = False
    output: str | None = None
    svg: str | None = None


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_tri(source: str):
    path = Path(source)
    if not path.exists() and source in builtin_names():
        return builtin(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise TriangulationError(f"cannot read {source}: {exc.strerror}") from None
    return parse_triangulation(text)


def load_solution(source: str, tri):
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise QMatchingError(f"cannot read {source}: {exc.strerror}") from None
    return parse_quad_vector(text, tri.tet_count)


def parse_choice(text: str | None) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        try:
            edge, index = item.split(":")
            out[int(edge.strip().lstrip("e"))] = int(index)
        except ValueError:
            raise UsageError(f"malformed choice entry {item!r} (expected edge:index)") from None
    return out


def _threads() -> int | None:
    value = os.environ.get("TSURF_THREADS")
    if not value:
        return None
    try:
        return max(1, int(value))
    except ValueError:
        raise UsageError("TSURF_THREADS must be an integer") from None


# --- reports ---------------------------------------------------------------


def check_report(tri) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "valid": True,
        "tets": tri.tet_count,
        "edges": [{"id": e.id, "degree": e.degree} for e in tri.edge_classes],
        "cusps": [{"id": c.id, "triangles": len(c.triangles),
                   "euler_characteristic": c.euler_characteristic} for c in tri.cusp_links],
    }


def verify_report(tri, x) -> dict:
    adm = is_admissible(x, tri.tet_count)
    match = verify_q_matching(build_q_matrix(tri), x)
    return {
        "schema_version": SCHEMA_VERSION,
        "admissible": adm.admissible,
        "matching": match.satisfied,
        "residuals": quad_vector_to_json(match.residuals),
        "negative_tets": list(adm.negative),
        "multiple_type_tets": list(adm.multiple_types),
    }


def edges_report(tri, x) -> dict:
    edges = []
    for e in tri.edge_classes:
        w0, w1 = corner_words(tri, x, e.id)
        l0, l1 = region_labels(w0), region_labels(w1)
        matchings = enumerate_strip_matchings(w0)
        edges.append({
            "edge": e.id,
            "word": w0.to_text(),
            "word_end1": w1.to_text(),
            "labels": list(l0.labels),
            "labels_end1": list(l1.labels),
            "n": l0.n,
            "matching_count": len(matchings),
            "matchings": [[list(p) for p in m.pairs] for m in matchings],
        })
    return {"schema_version": SCHEMA_VERSION, "edges": edges}


def _integral(x):
    if any(getattr(v, "denominator", 1) != 1 for v in x):
        raise QMatchingError("surface construction needs an integer quad vector")
    return tuple(int(v) for v in x)


def choice_tuples(tri, x, config: RunConfig):
    options = strip_options(tri, x)
    known = {e.id for e in tri.edge_classes}
    for e, k in config.choice.items():
        if e not in known:
            raise UsageError(f"choice refers to unknown edge {e}")
        count = len(options.get(e, [None]))
        if not 0 <= k < count:
            raise UsageError(f"choice index out of range for edge {e}: {k} (has {count})")
    edges = sorted(options)
    if config.all_choices:
        import itertools
        combos = itertools.product(*(range(len(options[e])) for e in edges))
    else:
        combos = [tuple(config.choice.get(e, 0) for e in edges)]
    return [(dict(zip(edges, c)), {e: options[e][k] for e, k in zip(edges, c)}) for c in combos]


def surface_report(built: BuiltSurface, indices: dict) -> dict:
    capped = built.capped
    v, e, f = capped.cell_counts()
    cusps = sorted({c.cusp for c in built.curves})
    return {
        "choice": {str(k): indices[k] for k in sorted(indices)},
        "pieces": {"squares": len(capped.squares), "strips": len(capped.strips),
                   "caps": len(capped.caps)},
        "cells": {"V": v, "E": e, "F": f},
        "chi": v - e + f,
        "chi_uncapped": euler_characteristic(built.uncapped),
        "components": capped.components(),
        "two_sided": capped.orientability(),
        "curves": [c.to_document() for c in built.curves],
        "essential_order": {str(c): essential_cycle(built.curves, c) for c in cusps},
    }


def _build_all(tri, x, config):
    x = _integral(x)
    combos = choice_tuples(tri, x, config)
    if config.double:
        x = double_solution(x)
        combos = [(idx, double_choice(ch)) for idx, ch in combos]

    def one(item):
        idx, ch = item
        return idx, build_surface(tri, x, ch)

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return x, list(pool.map(one, combos))


def build_report(tri, x, config: RunConfig) -> dict:
    x, results = _build_all(tri, x, config)
    if config.svg:
        from .svg import cusp_svg
        out = Path(config.svg)
        out.mkdir(parents=True, exist_ok=True)
        for idx, built in results:
            tag = "_".join(f"{k}-{idx[k]}" for k in sorted(idx)) or "none"
            for link in tri.cusp_links:
                (out / f"choice_{tag}_cusp{link.id}.svg").write_text(
                    cusp_svg(built.uncapped, link.id, built.curves))
    return {
        "schema_version": SCHEMA_VERSION,
        "solution": list(x),
        "doubled": config.double,
        "reports": [surface_report(b, idx) for idx, b in results],
    }


def plan_report(tri, x, config: RunConfig) -> dict:
    x, results = _build_all(tri, x, config)
    plans = []
    for idx, built in results:
        plan = plan_for(built)
        ledger = ledger_check(plan)
        doc = plan.to_document()
        doc["choice"] = {str(k): idx[k] for k in sorted(idx)}
        doc["balanced"] = ledger.balanced
        if not ledger.balanced:
            doc["ledger"] = ledger.to_document()
        plans.append(doc)
    return {"schema_version": SCHEMA_VERSION, "solution": list(x), "plans": plans}


def run(config: RunConfig) -> tuple[int, str]:
    tri = load_tri(config.triangulation)
    if config.command == "check":
        return 0, dumps(check_report(tri))
    if config.command == "qmatrix":
        return 0, dumps(build_q_matrix(tri).to_document())
    if config.command == "enumerate":
        vertices = [v.to_document() for v in enumerate_admissible_vertices(tri)]
        return 0, dumps({"schema_version": SCHEMA_VERSION, "vertices": vertices})
    x = load_solution(config.solution, tri)
    if config.command == "verify":
        report = verify_report(tri, x)
        status = 0 if report["admissible"] and report["matching"] else 1
        return status, dumps(report)
    for check, msg in ((is_admissible(x, tri.tet_count), "quad vector is not admissible"),
                       (verify_q_matching(build_q_matrix(tri), x), "quad vector fails the Q-matching equations")):
        if not check:
            raise QMatchingError(msg)
    if config.command == "edges":
        return 0, dumps(edges_report(tri, x))
    if config.command == "build":
        return 0, dumps(build_report(tri, x, config))
    if config.command == "plan":
        doc = plan_report(tri, x, config)
        balanced = all(p["balanced"] for p in doc["plans"])
        return (0 if balanced else 1), dumps(doc)
    raise UsageError(f"unknown command {config.command}")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tsurf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check", "qmatrix", "enumerate"):
        p = sub.add_parser(name)
        p.add_argument("triangulation", help="triangulation JSON file or built-in census name")
        p.add_argument("-o", "--output")
    for name in ("verify", "edges", "build", "plan"):
        p = sub.add_parser(name)
        p.add_argument("triangulation", help="triangulation JSON file or built-in census name")
        p.add_argument("solution", help="JSON array quad vector")
        p.add_argument("-o", "--output")
        if name in ("build", "plan"):
            p.add_argument("--choice", help="per-edge matching indices, e.g. e0:1,e2:0")
            p.add_argument("--all-choices", action="store_true")
            p.add_argument("--double", action="store_true",
                           help="use twice the solution with parallel-doubled strip choices")
        if name == "build":
            p.add_argument("--svg", metavar="DIR")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = RunConfig(
            command=args.command,
            triangulation=args.triangulation,
            solution=getattr(args, "solution", None),
            choice=parse_choice(getattr(args, "choice", None)),
            all_choices=getattr(args, "all_choices", False),
            double=getattr(args, "double", False),
            output=args.output,
            svg=getattr(args, "svg", None),
        )
        status, text = run(config)
    except UsageError as exc:
        print(f"tsurf: error: {exc}", file=sys.stderr)
        return 2
    except (TriangulationError, QMatchingError, SurfaceError) as exc:
        print(f"tsurf: {exc}", file=sys.stderr)
        return 1
    if config.output:
        Path(config.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
