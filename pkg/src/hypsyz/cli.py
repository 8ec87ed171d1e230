"""Command-line front end: dimension tables, Betti tables, spanning
certificates and full grid sweeps, in text or JSON.

Exit codes: 0 all checks and verdicts pass, 1 a verification verdict is
false (the certificate is still emitted), 2 invalid parameters or malformed
input.  The environment variable SYZ_FORMAT overrides the default output
format.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from . import __version__
from .curve import (CurveParams, InvalidParameters, dimension_report,
                    valid_x_values, validate, wedge_h1, wedge_model,
                    wedge_model_dim)
from .scroll import BettiTable, betti_table, h1_bridge_failures, hilbert_first_failure
from .spanning import SpanningCertificate, certify_spanning, default_points


@dataclass
class RunManifest:
    """Self-describing record of one CLI invocation."""

    subcommand: str
    arguments: dict
    output_format: str
    timestamp: str
    version: str
    results: dict
    exit_code: int = 0

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "arguments": self.arguments,
            "format": self.output_format,
            "timestamp": self.timestamp,
            "version": self.version,
            "results": self.results,
            "exit_code": self.exit_code,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunManifest":
        return cls(data["subcommand"], data["arguments"], data["format"],
                   data["timestamp"], data["version"], data["results"],
                   data["exit_code"])


def render_json(payload: dict) -> str:
    return json.dumps(payload, separators=(",", ":"))


def render_betti_text(table: BettiTable) -> str:
    """Triangle layout: columns p, rows q = j - p, '.' for zero entries."""
    pmax = table.max_p
    qmax = table.max_q
    width = max(len(str(v)) for v in table.entries.values())
    width = max(width, *(len(str(table.column_total(p))) for p in range(pmax + 1)))
    lines = []
    for q in range(0, qmax + 1):
        cells = []
        for p in range(0, pmax + 1):
            v = table.entry(p, p + q)
            cells.append(str(v).rjust(width) if v else ".".rjust(width))
        lines.append(f"{q}: " + " ".join(cells))
    totals = " ".join(str(table.column_total(p)).rjust(width)
                      for p in range(pmax + 1))
    lines.append("total: " + totals)
    return "\n".join(lines)


def betti_payload(params: CurveParams, table: BettiTable) -> dict:
    return {
        "g": params.g, "d": params.d, "x": params.x,
        "betti": [{"p": p, "j": j, "beta": v} for p, j, v in table.items()],
    }


def dims_payload(params: CurveParams, imax: int) -> dict:
    rows = []
    for i in range(0, imax + 1):
        rep = dimension_report(params, i)
        rows.append({
            "i": i,
            "dimLPrime": rep.model_dim,
            "dimWedgeE": rep.sections_dim,
            "h1WedgeE": wedge_h1(params, i),
            "inRange": rep.in_range,
        })
    return {"g": params.g, "d": params.d, "x": params.x, "dims": rows}


def certificate_payload(cert: SpanningCertificate) -> dict:
    params = cert.params
    return {
        "g": params.g, "d": params.d, "x": params.x,
        "certificate": {
            "i": cert.i,
            "points": [[_coord(a) for a in pt] for pt in cert.points],
            "rank": cert.achieved_rank,
            "target": cert.target,
            "verdict": cert.verdict,
        },
    }


def _coord(value):
    from fractions import Fraction
    frac = Fraction(value)
    return int(frac) if frac.denominator == 1 else str(frac)


def render_dims_text(payload: dict) -> str:
    lines = [f"g={payload['g']} d={payload['d']} x={payload['x']}",
             "  i  dimLPrime  dimWedgeE  h1WedgeE  inRange  agree"]
    for row in payload["dims"]:
        agree = row["dimLPrime"] == row["dimWedgeE"]
        lines.append(f"{row['i']:>3}  {row['dimLPrime']:>9}  {row['dimWedgeE']:>9}"
                     f"  {row['h1WedgeE']:>8}  {str(row['inRange']):>7}"
                     f"  {str(agree):>5}")
    return "\n".join(lines)


def render_certificate_text(payload: dict) -> str:
    cert = payload["certificate"]
    pts = "; ".join(",".join(str(c) for c in pt) for pt in cert["points"])
    verdict = "true" if cert["verdict"] else "false"
    return (f"g={payload['g']} d={payload['d']} x={payload['x']} i={cert['i']}\n"
            f"points: {pts if pts else '(none)'}\n"
            f"rank {cert['rank']}/{cert['target']}  verdict {verdict}")


def render(obj, output_format: str) -> str:
    """Render a BettiTable or SpanningCertificate in the requested format."""
    if isinstance(obj, BettiTable):
        payload = betti_payload(obj.params, obj)
        return render_json(payload) if output_format == "json" \
            else render_betti_text(obj)
    if isinstance(obj, SpanningCertificate):
        payload = certificate_payload(obj)
        return render_json(payload) if output_format == "json" \
            else render_certificate_text(payload)
    raise TypeError(f"cannot render {type(obj)!r}")


# -- grid sweeps ----------------------------------------------------------------


def run_cell(g: int, d: int, x: int) -> dict:
    """All per-cell checks used by the grid sweep; pure and deterministic."""
    params = validate(g, d, x)
    failures = []
    for i in range(2, g + 1):
        count = wedge_model(params, i).section_count()
        closed = wedge_model_dim(params, i)
        if count != closed:
            failures.append({"g": g, "d": d, "x": x, "i": i,
                             "check": "dimension", "got": count, "want": closed})
    table = betti_table(params)
    bad_n = hilbert_first_failure(params, table)
    if bad_n is not None:
        failures.append({"g": g, "d": d, "x": x, "i": None,
                         "check": "hilbert", "got": bad_n, "want": None})
    for i in h1_bridge_failures(params, table):
        failures.append({"g": g, "d": d, "x": x, "i": i,
                         "check": "bridge", "got": table.entry(d - g - i - 1, d - g - i + 1),
                         "want": None})
    certs = []
    for i in range(2, g + 1):
        cert = certify_spanning(params, i)
        certs.append({"i": i, "rank": cert.achieved_rank, "target": cert.target,
                      "verdict": cert.verdict})
        if not cert.verdict:
            failures.append({"g": g, "d": d, "x": x, "i": i,
                             "check": "spanning", "got": cert.achieved_rank,
                             "want": cert.target})
    return {"g": g, "d": d, "x": x, "certificates": certs, "failures": failures}


def _grid_cells(gmin: int, gmax: int, dspan: int):
    for g in range(gmin, gmax + 1):
        for d in range(2 * g + 1, 2 * g + 1 + dspan):
            for x in valid_x_values(g, d):
                yield (g, d, x)


def _run_cell_star(cell):
    return run_cell(*cell)


def run_grid(gmin: int, gmax: int, dspan: int, jobs: int = 1) -> dict:
    cells = list(_grid_cells(gmin, gmax, dspan))
    if jobs > 1:
        import multiprocessing
        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_run_cell_star, cells)
    else:
        results = [run_cell(*cell) for cell in cells]
    failures = [f for res in results for f in res["failures"]]
    return {
        "grid": {"gmin": gmin, "gmax": gmax, "dspan": dspan},
        "cells": results,
        "failures": failures,
    }


def render_grid_text(payload: dict) -> str:
    lines = []
    for cell in payload["cells"]:
        verdicts = " ".join(
            f"i={c['i']}:{c['rank']}/{c['target']}" for c in cell["certificates"])
        status = "ok" if not cell["failures"] else "FAIL"
        lines.append(f"g={cell['g']} d={cell['d']} x={cell['x']}  {verdicts}  [{status}]")
    lines.append(f"failures: {len(payload['failures'])}")
    for f in payload["failures"]:
        lines.append(f"  {f}")
    return "\n".join(lines)


# -- argument parsing -------------------------------------------------------------


def _parse_points(text: str) -> list[tuple[int, int]]:
    points = []
    if not text.strip():
        return points
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad point {chunk!r}; expected 'a0,a1'")
        points.append((int(parts[0]), int(parts[1])))
    return points


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypsyz",
        description="Exact section-space dimensions, Betti tables and "
                    "spanning certificates for the (g, d, x) curve model.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"),
                       default=os.environ.get("SYZ_FORMAT", "text"))

    p_dims = sub.add_parser("dims", help="dimension tables and reconciliation")
    p_dims.add_argument("--g", type=int, required=True)
    p_dims.add_argument("--d", type=int, required=True)
    p_dims.add_argument("--x", type=int, required=True)
    p_dims.add_argument("--imax", type=int, default=None)
    add_format(p_dims)

    p_betti = sub.add_parser("betti", help="graded Betti table with audits")
    p_betti.add_argument("--g", type=int, required=True)
    p_betti.add_argument("--d", type=int, required=True)
    p_betti.add_argument("--x", type=int, default=None)
    add_format(p_betti)

    p_verify = sub.add_parser("verify", help="spanning certificate")
    p_verify.add_argument("--g", type=int, required=True)
    p_verify.add_argument("--d", type=int, required=True)
    p_verify.add_argument("--x", type=int, required=True)
    p_verify.add_argument("--i", type=int, default=2)
    p_verify.add_argument("--points", type=str, default=None,
                          help="semicolon-separated 'a0,a1' pairs")
    add_format(p_verify)

    p_grid = sub.add_parser("grid", help="full acceptance sweep")
    p_grid.add_argument("--gmin", type=int, default=2)
    p_grid.add_argument("--gmax", type=int, default=5)
    p_grid.add_argument("--dspan", type=int, default=6)
    p_grid.add_argument("--jobs", type=int, default=1)
    add_format(p_grid)
    return parser


def dispatch(argv: Optional[list[str]] = None) -> tuple[RunManifest, int]:
    """Run one CLI invocation; returns the manifest and the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    timestamp = datetime.now(timezone.utc).isoformat()
    fmt = args.format
    meta = {k: v for k, v in vars(args).items() if k not in ("subcommand", "format")}

    try:
        if args.subcommand == "dims":
            params = validate(args.g, args.d, args.x)
            imax = args.imax if args.imax is not None else params.r
            if not 0 <= imax <= params.r:
                raise InvalidParameters(f"imax={imax} outside 0..{params.r}")
            payload = dims_payload(params, imax)
            text = render_dims_text(payload)
            code = 0 if all(row["dimLPrime"] == row["dimWedgeE"]
                            for row in payload["dims"] if row["inRange"]) else 1
        elif args.subcommand == "betti":
            if args.x is not None:
                x = args.x
            else:
                choices = valid_x_values(args.g, args.d) \
                    if args.g >= 2 and args.d >= 2 * args.g + 1 else []
                if not choices:
                    raise InvalidParameters(f"no valid x for g={args.g}, d={args.d}")
                x = choices[0]
            params = validate(args.g, args.d, x)
            table = betti_table(params)
            payload = betti_payload(params, table)
            hilbert_ok = hilbert_first_failure(params, table) is None
            bridge_ok = not h1_bridge_failures(params, table)
            payload["hilbert"] = "pass" if hilbert_ok else "fail"
            payload["bridge"] = "pass" if bridge_ok else "fail"
            text = (render_betti_text(table)
                    + f"\nhilbert={payload['hilbert']} bridge={payload['bridge']}")
            code = 0 if hilbert_ok and bridge_ok else 1
        elif args.subcommand == "verify":
            params = validate(args.g, args.d, args.x)
            points = _parse_points(args.points) if args.points is not None else None
            cert = certify_spanning(params, args.i, points)
            payload = certificate_payload(cert)
            text = render_certificate_text(payload)
            code = 0 if cert.verdict else 1
        elif args.subcommand == "grid":
            payload = run_grid(args.gmin, args.gmax, args.dspan, args.jobs)
            text = render_grid_text(payload)
            code = 0 if not payload["failures"] else 1
        else:  # pragma: no cover - argparse enforces choices
            raise InvalidParameters(f"unknown subcommand {args.subcommand!r}")
    except (InvalidParameters, ValueError) as exc:
        manifest = RunManifest(args.subcommand, meta, fmt, timestamp,
                               __version__, {"error": str(exc)}, 2)
        return manifest, 2

    manifest = RunManifest(args.subcommand, meta, fmt, timestamp, __version__,
                           payload, code)
    manifest.rendered = render_json(payload) if fmt == "json" else text
    return manifest, code


def main(argv: Optional[list[str]] = None) -> int:
    try:
        manifest, code = dispatch(argv)
    except SystemExit as exc:  # argparse error: usage already printed
        return 2 if exc.code not in (0,) else 0
    if code == 2:
        print(f"error: {manifest.results['error']}", file=sys.stderr)
        return 2
    print(manifest.rendered)
    return code


if __name__ == "__main__":
    sys.exit(main())
