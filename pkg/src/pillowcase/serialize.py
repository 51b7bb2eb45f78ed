"""Stable text encodings for the value types.

All floats go through repr(), the shortest string that round-trips to the
same double, and JSON objects are emitted with sorted keys and fixed
indentation, so equal values always produce byte-equal output. Structure
problems in incoming documents raise plain ValueError (a parse failure);
value problems surface as the domain errors raised by the constructors.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .flips import FlipTrace
from .geom import Vec2
from .inverse import SolutionFamily
from .surface import MarkedTriple


def to_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def marked_triple_to_dict(t: MarkedTriple) -> dict:
    return {
        "v1": t.v1.as_list(),
        "v2": t.v2.as_list(),
        "v3": t.v3.as_list(),
        "lambda": list(t.lambdas),
    }


def _vec(value: Any, key: str) -> Vec2:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise ValueError(f'"{key}" must be a two-element array of numbers')
    return Vec2(float(value[0]), float(value[1]))


def marked_triple_from_dict(d: Any) -> MarkedTriple:
    if not isinstance(d, dict):
        raise ValueError("surface document must be a JSON object")
    missing = {"v1", "v2", "v3", "lambda"} - set(d)
    if missing:
        raise ValueError(f"surface document lacks keys: {sorted(missing)}")
    lams = d["lambda"]
    if not isinstance(lams, (list, tuple)) or len(lams) != 3:
        raise ValueError('"lambda" must be a three-element array')
    return MarkedTriple(
        _vec(d["v1"], "v1"),
        _vec(d["v2"], "v2"),
        _vec(d["v3"], "v3"),
        *(float(l) for l in lams),
    )


def marked_triple_json(t: MarkedTriple) -> str:
    return to_json(marked_triple_to_dict(t))


def trace_to_dict(trace: FlipTrace) -> dict:
    return {
        "initial": None
        if trace.initial is None
        else marked_triple_to_dict(trace.initial),
        "steps": [
            {"edge": s.edge, "hrm_before": s.hrm_before, "hrm_after": s.hrm_after}
            for s in trace.steps
        ],
        "phi_pairs": list(trace.phi_pairs),
        "final": None
        if trace.final_triple is None
        else marked_triple_to_dict(trace.final_triple),
    }


def trace_from_dict(d: Any) -> tuple[MarkedTriple, list[int]]:
    """Initial coordinates and edge sequence of a serialized trace; enough to
    replay it deterministically."""
    if not isinstance(d, dict) or "steps" not in d:
        raise ValueError('trace document must be an object with a "steps" array')
    if d.get("initial") is None:
        raise ValueError('trace document lacks replayable "initial" coordinates')
    edges = []
    for step in d["steps"]:
        if not isinstance(step, dict) or not isinstance(step.get("edge"), int):
            raise ValueError('each step needs an integer "edge"')
        edges.append(step["edge"])
    return marked_triple_from_dict(d["initial"]), edges


def solution_family_to_dict(f: SolutionFamily) -> dict:
    return {
        "target": list(f.target.values),
        "solutions": [list(s) for s in f.solutions],
        "classes": [list(c) for c in f.classes],
        "lambda4": list(f.lambda4),
    }


def _csv_text(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def marked_triple_csv(t: MarkedTriple) -> str:
    header = ["v1x", "v1y", "v2x", "v2y", "v3x", "v3y", "lambda1", "lambda2", "lambda3"]
    row = [*t.v1.as_list(), *t.v2.as_list(), *t.v3.as_list(), *t.lambdas]
    return _csv_text(header, [row])


def trace_csv(trace: FlipTrace) -> str:
    return _csv_text(
        ["edge", "hrm_before", "hrm_after"],
        [[s.edge, s.hrm_before, s.hrm_after] for s in trace.steps],
    )


def audit_csv(audit: dict) -> str:
    header = [
        "pair",
        "composition_trace_sq",
        "reference_trace_sq",
        "closed_form",
        "delta_composition_reference",
        "delta_composition_closed_form",
        "delta_reference_closed_form",
        "entrywise_equal",
        "equal_up_to_transpose",
        "flagged",
    ]
    rows = []
    for entry in audit["pairs"]:
        rows.append(
            ["-".join(str(x) for x in entry["pair"])]
            + [entry[k] for k in header[1:]]
        )
    return _csv_text(header, rows)


def solutions_csv(f: SolutionFamily) -> str:
    by_index: dict[int, tuple[int, float]] = {}
    for ci, members in enumerate(f.classes):
        for m in members:
            by_index[m] = (ci, f.lambda4[ci])
    rows = []
    for i, sol in enumerate(f.solutions):
        ci, l4 = by_index.get(i, (-1, float("nan")))
        rows.append([*sol, ci, l4])
    return _csv_text(
        ["lambda1", "lambda2", "lambda3", "class", "lambda4"], rows
    )
