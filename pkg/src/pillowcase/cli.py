"""Command-line front end.

Subcommands: surface build|validate, delaunay, veech, inverse, export svg.
Every command reads JSON from --in or stdin, writes to --out or stdout, and
is deterministic for a fixed (input, seed, tolerances): floats serialize via
the shortest round-trip decimal and dict keys are sorted, so golden files
compare byte for byte.

Exit codes: 0 success, 2 parse/usage error, 3 domain invariant violation,
4 algorithm limit or oracle failure, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import AlgorithmError, DomainError, OracleDisagreement
from .flips import FlipTrace, flipping_algorithm, phi_normalize
from .geom import Vec2
from .glued import glue
from .inverse import TargetTriple, group_solutions, solve_ratios
from .serialize import (
    audit_csv,
    marked_triple_csv,
    marked_triple_from_dict,
    marked_triple_to_dict,
    solution_family_to_dict,
    solutions_csv,
    to_json,
    trace_csv,
    trace_from_dict,
    trace_to_dict,
)
from .surface import (
    MarkedTriple,
    canonical_equal,
    random_marked_triple,
    to_marked_triangle,
    triple_status,
)
from .veech import (
    classify,
    delaunay_normalize,
    delaunay_representatives,
    reference_trace_formulas,
    trace_audit,
    trace_to_length,
    veech_generators,
)


def _parse_floats(text: str, n: int, flag: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",") if p.strip() != ""]
    if len(parts) != n:
        raise ValueError(f"{flag} expects {n} comma-separated numbers, got {text!r}")
    return tuple(float(p) for p in parts)


def _parse_vec(text: str, flag: str) -> Vec2:
    x, y = _parse_floats(text, 2, flag)
    return Vec2(x, y)


def _parse_tol_overrides(items: list[str]) -> dict[str, float]:
    out: dict[str, float] = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"--tol expects KEY=VAL, got {item!r}")
        out[key.strip()] = float(val)
    return out


def _read_text(args) -> str:
    if args.in_path:
        with open(args.in_path, "r", encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _load_json(args):
    return json.loads(_read_text(args))


def _write_text(args, text: str) -> None:
    if args.out_path:
        with open(args.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_surface_build(args, tol: Tolerances) -> int:
    t = MarkedTriple.from_pair(
        _parse_vec(args.v1, "--v1"),
        _parse_vec(args.v2, "--v2"),
        _parse_floats(args.lambdas, 3, "--lambda"),
    )
    if args.format == "csv":
        _write_text(args, marked_triple_csv(t))
    else:
        _write_text(args, to_json(marked_triple_to_dict(t)))
    return 0


def cmd_surface_validate(args, tol: Tolerances) -> int:
    t = marked_triple_from_dict(_load_json(args))
    status = triple_status(t, tol)
    g = glue(to_marked_triangle(t), tol)
    g.validate(tol)
    report = {
        "cone_angles": {str(k): v for k, v in sorted(g.cone_angles(tol).items())},
        "harmonic_index": g.harmonic_index(tol),
        "locally_delaunay": g.is_locally_delaunay(tol=tol),
        "partition": list(g.partition()),
        "status": status.kind.value,
        "status_pair": status.pair,
    }
    _write_text(args, to_json(report))
    return 0


def _cross_check(trace: FlipTrace, tol: Tolerances, max_steps: int) -> None:
    """Replay the descent in marked-triple coordinates and insist the two
    engines tell the same story."""
    if trace.initial is None:
        raise OracleDisagreement("chart-level input has no triple coordinates")
    endpoint, word = phi_normalize(trace.initial, max_steps, tol)
    if 2 * len(word) != len(trace.steps):
        raise OracleDisagreement(
            f"engines disagree on flip count: {2 * len(word)} vs {len(trace.steps)}"
        )
    if trace.final_triple is None:
        raise OracleDisagreement("chart-level endpoint is not tetrahedral")
    reps = delaunay_representatives(endpoint, max_steps, tol)
    if not any(canonical_equal(trace.final_triple, r, tol.cross_oracle) for r in reps):
        raise OracleDisagreement("engines disagree on the Delaunay endpoint")


def _run_delaunay_once(
    t: MarkedTriple, engine: str, max_steps: int, tol: Tolerances
) -> tuple[dict, int]:
    """One normalization run; returns (trace payload, chart-level flip count)."""
    if engine == "phi":
        endpoint, word = phi_normalize(t, max_steps, tol)
        payload = {
            "initial": marked_triple_to_dict(t),
            "steps": [],
            "phi_pairs": list(word),
            "final": marked_triple_to_dict(endpoint),
        }
        return payload, 2 * len(word)
    trace = flipping_algorithm(glue(to_marked_triangle(t), tol), max_steps, tol)
    if engine == "both":
        _cross_check(trace, tol, max_steps)
    return trace_to_dict(trace), len(trace.steps)


def cmd_delaunay(args, tol: Tolerances) -> int:
    if args.random is not None:
        if args.format == "csv":
            raise ValueError("--format csv is not available with --random")
        if args.random < 1:
            raise ValueError(f"--random expects a positive count, got {args.random}")
        rng = np.random.default_rng(args.seed)
        total = 0
        worst = 0
        for _ in range(args.random):
            _, flips = _run_delaunay_once(
                random_marked_triple(rng), args.engine, args.max_steps, tol
            )
            total += flips
            worst = max(worst, flips)
        summary = {
            "count": args.random,
            "engine": args.engine,
            "max_flips": worst,
            "seed": args.seed,
            "total_flips": total,
        }
        _write_text(args, to_json(summary))
        return 0
    t = marked_triple_from_dict(_load_json(args))
    payload, _ = _run_delaunay_once(t, args.engine, args.max_steps, tol)
    if args.format == "csv":
        rows = "".join(
            "{},{},{}\n".format(s["edge"], repr(s["hrm_before"]), repr(s["hrm_after"]))
            for s in payload["steps"]
        )
        _write_text(args, "edge,hrm_before,hrm_after\n" + rows)
    else:
        _write_text(args, to_json(payload))
    return 0


def cmd_veech(args, tol: Tolerances) -> int:
    t = marked_triple_from_dict(_load_json(args))
    normalized, word = delaunay_normalize(t, args.max_steps, tol)
    gens = veech_generators(normalized, tol)
    audit = trace_audit(normalized, tol)
    records = []
    for pair, mat in zip(gens.pairs, gens.generators):
        element = classify(mat, tol)
        records.append(
            {
                "pair": list(pair),
                "matrix": [list(row) for row in mat.rows],
                "class": element.kind.value,
                "trace_sq": element.normalized_trace_sq,
                "length": element.length if args.lengths else None,
            }
        )
    payload = {
        "audit": audit["pairs"],
        "generators": records,
        "length_source": audit["length_source"],
        "normalized": marked_triple_to_dict(normalized),
        "word": list(word),
    }
    if args.lengths:
        payload["lengths"] = [
            {
                "pair": list(pair),
                "trace_sq": closed,
                "length": trace_to_length(math.sqrt(closed), tol),
            }
            for pair, closed in zip(
                gens.pairs, reference_trace_formulas(normalized.lambdas)
            )
        ]
    if args.format == "csv":
        _write_text(args, audit_csv(audit))
    else:
        _write_text(args, to_json(payload))
    return 0


def cmd_inverse(args, tol: Tolerances) -> int:
    if args.target is not None:
        values = _parse_floats(args.target, 3, "--target")
    else:
        doc = _load_json(args)
        if not isinstance(doc, dict) or "target" not in doc:
            raise ValueError('inverse input must be an object with a "target" array')
        raw = doc["target"]
        if not isinstance(raw, list) or len(raw) != 3:
            raise ValueError('"target" must be an array of 3 numbers')
        values = tuple(float(x) for x in raw)
    family = group_solutions(solve_ratios(TargetTriple(*values), tol), tol)
    if args.format == "csv":
        _write_text(args, solutions_csv(family))
    else:
        _write_text(args, to_json(solution_family_to_dict(family)))
    return 0


def cmd_export_svg(args, tol: Tolerances) -> int:
    from . import figures  # matplotlib import deferred to the one command using it

    doc = _load_json(args)
    out = args.out_path if args.out_path else sys.stdout
    if isinstance(doc, dict) and "steps" in doc:
        initial, edges = trace_from_dict(doc)
        figures.render_trace(initial, edges, out, tol)
    else:
        figures.render_surface(marked_triple_from_dict(doc), out)
    return 0


def _add_common(parser: argparse.ArgumentParser, fmt: bool = False) -> None:
    parser.add_argument("--in", dest="in_path", default=None, metavar="PATH")
    parser.add_argument("--out", dest="out_path", default=None, metavar="PATH")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-steps", type=int, default=1000)
    parser.add_argument(
        "--tol", action="append", default=[], metavar="KEY=VAL", dest="tol_overrides"
    )
    if fmt:
        parser.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pillowcase",
        description="Half-dilation pillowcase toolkit: build, normalize, audit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    surface = sub.add_parser("surface", help="construct and check surfaces")
    surface_sub = surface.add_subparsers(dest="surface_command", required=True)
    build = surface_sub.add_parser("build", help="marked triple from flags")
    build.add_argument("--v1", default="1,0", metavar="X,Y")
    build.add_argument("--v2", default="0,1", metavar="X,Y")
    build.add_argument("--lambda", dest="lambdas", default="1,1,1", metavar="L1,L2,L3")
    _add_common(build, fmt=True)
    build.set_defaults(func=cmd_surface_build)
    validate = surface_sub.add_parser("validate", help="glue and report invariants")
    _add_common(validate)
    validate.set_defaults(func=cmd_surface_validate)

    delaunay = sub.add_parser("delaunay", help="normalize by edge flips")
    delaunay.add_argument("--engine", choices=("phi", "glued", "both"), default="both")
    delaunay.add_argument("--random", type=int, default=None, metavar="N")
    _add_common(delaunay, fmt=True)
    delaunay.set_defaults(func=cmd_delaunay)

    veech = sub.add_parser("veech", help="symmetry generators and trace audit")
    veech.add_argument("--lengths", action="store_true")
    _add_common(veech, fmt=True)
    veech.set_defaults(func=cmd_veech)

    inverse = sub.add_parser("inverse", help="solve for lambdas from trace targets")
    inverse.add_argument("--target", default=None, metavar="A,B,C")
    _add_common(inverse, fmt=True)
    inverse.set_defaults(func=cmd_inverse)

    export = sub.add_parser("export", help="render figures")
    export_sub = export.add_subparsers(dest="export_command", required=True)
    svg = export_sub.add_parser("svg", help="surface or trace panels as SVG")
    _add_common(svg)
    svg.set_defaults(func=cmd_export_svg)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = DEFAULT_TOL.override(_parse_tol_overrides(args.tol_overrides))
        return args.func(args, tol)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except AlgorithmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
