"""Rendering of reports as aligned text, CSV, or schema-stable JSON.

Each subcommand builds one document (a plain dict of JSON types) and the
format switch only changes how that document is written out, so the JSON
schema is the reference: keys are always present, with null for blank
cells. Geometries render as extents joined by 'x' (e.g. 4x2x1x1) in every
format.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Optional

FORMATS = ("text", "csv", "json")


def geometry_str(geometry) -> str:
    return "" if geometry is None else str(geometry)


def dims_str(dims) -> str:
    return "x".join(str(d) for d in dims)


def _frac_str(f: Optional[Fraction]) -> Optional[str]:
    return None if f is None else str(f)


def _num(x):
    # fractions are not JSON types; everything else passes through
    return float(x) if isinstance(x, Fraction) else x


def _table_text(headers, rows) -> str:
    cells = [[("" if c is None else str(c)) for c in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _table_csv(headers, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(["" if c is None else c for c in row])
    return buf.getvalue()


def render_json(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------- bound

def bound_document(shape, t: int, result) -> dict:
    from .core import cuboid_cut_size

    att = result.attaining_cuboid
    return {
        "dims": list(shape.dims),
        "t": t,
        "multiplicity": shape.length2_multiplicity,
        "value": _num(result.value),
        "value_is_exact": isinstance(result.value, int),
        "argmin_r": result.argmin_r,
        "covered_product": result.covered_product,
        "attaining_cuboid": None if att is None else list(att.sides),
        "attaining_cut": None if att is None else cuboid_cut_size(att),
    }


def render_bound(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc)
    att = doc["attaining_cuboid"]
    row = [
        dims_str(doc["dims"]),
        doc["t"],
        doc["multiplicity"],
        doc["value"],
        doc["argmin_r"],
        doc["covered_product"],
        "" if att is None else dims_str(att),
        doc["attaining_cut"],
    ]
    headers = [
        "dims", "t", "multiplicity", "value", "argmin_r",
        "covered_product", "attaining_cuboid", "attaining_cut",
    ]
    if fmt == "csv":
        return _table_csv(headers, [row])
    lines = [
        f"shape: {dims_str(doc['dims'])} (length-2 multiplicity {doc['multiplicity']})",
        f"t: {doc['t']}",
        f"cut lower bound: {doc['value']}"
        + ("" if doc["value_is_exact"] else " (irrational candidate, float)"),
        f"argmin r: {doc['argmin_r']} (covered product {doc['covered_product']})",
    ]
    if att is None:
        lines.append("attaining cuboid: none at this t")
    else:
        lines.append(f"attaining cuboid: {dims_str(att)} with cut {doc['attaining_cut']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- audit

def audit_document(report, gbps: bool = False) -> dict:
    machine = report.machine
    scale = machine.link_gbps if gbps else 1

    def bw(x):
        return None if x is None else x * scale

    rows = []
    for r in report.rows:
        rows.append(
            {
                "nodes": r.nodes,
                "midplanes": r.midplanes,
                "baseline_geometry": geometry_str(r.baseline_geometry) or None,
                "baseline_bw": bw(r.baseline_bw),
                "worst_geometry": geometry_str(r.worst_geometry) or None,
                "worst_bw": bw(r.worst_bw),
                "best_geometry": geometry_str(r.best_geometry) or None,
                "best_bw": bw(r.best_bw),
                "improvement_factor": _num(r.improvement_factor),
                "improvement_factor_exact": _frac_str(r.improvement_factor),
            }
        )
    return {
        "machine": machine.name,
        "grid": list(machine.grid),
        "policy": report.policy.name,
        "policy_mode": report.policy.mode,
        "bw_unit": "GBps" if gbps else "links",
        "rows": rows,
    }


def render_audit(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc)
    from .bgq import MODE_EXPLICIT

    explicit = doc["policy_mode"] == MODE_EXPLICIT
    base_kind = "baseline" if explicit else "worst"
    headers = [
        "nodes", "midplanes", f"{base_kind}_geometry", f"{base_kind}_bw",
        "best_geometry", "best_bw", "improvement_factor",
    ]
    rows = []
    for r in doc["rows"]:
        rows.append(
            [
                r["nodes"],
                r["midplanes"],
                r[f"{base_kind}_geometry"],
                r[f"{base_kind}_bw"],
                r["best_geometry"],
                r["best_bw"],
                r["improvement_factor_exact"],
            ]
        )
    table = _table_csv(headers, rows) if fmt == "csv" else _table_text(headers, rows)
    if fmt == "csv":
        return table
    head = (
        f"machine {doc['machine']} (grid {dims_str(doc['grid'])}), "
        f"policy {doc['policy']}, bandwidth in {doc['bw_unit']}\n"
    )
    return head + table


# ---------------------------------------------------------------- compare

def comparison_document(comparison, gbps: bool = False) -> dict:
    machines = [
        {"name": m.name, "grid": list(m.grid), "link_gbps": m.link_gbps}
        for m in comparison.machines
    ]
    rows = []
    for row in comparison.rows:
        cells = []
        for machine, cell in zip(comparison.machines, row.cells):
            if cell is None:
                cells.append(None)
            else:
                geom, bw = cell
                cells.append(
                    {
                        "geometry": str(geom),
                        "bw": bw * machine.link_gbps if gbps else bw,
                    }
                )
        rows.append({"nodes": row.nodes, "midplanes": row.midplanes, "cells": cells})
    return {
        "machines": machines,
        "bw_unit": "GBps" if gbps else "links",
        "rows": rows,
    }


def render_comparison(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc)
    names = [m["name"] for m in doc["machines"]]
    headers = ["nodes", "midplanes"]
    for name in names:
        headers += [f"{name}_geometry", f"{name}_bw"]
    rows = []
    for row in doc["rows"]:
        out = [row["nodes"], row["midplanes"]]
        for cell in row["cells"]:
            if cell is None:
                out += [None, None]
            else:
                out += [cell["geometry"], cell["bw"]]
        rows.append(out)
    if fmt == "csv":
        return _table_csv(headers, rows)
    head = f"best fitting geometry per machine, bandwidth in {doc['bw_unit']}\n"
    return head + _table_text(headers, rows)


# ---------------------------------------------------------------- simulate

def flow_document(entries, ratio: Optional[dict], notes: list[str]) -> dict:
    """entries: list of (label, geometry, FlowResult)."""
    out_entries = []
    for label, geometry, res in entries:
        per_dim = [
            {"extent": extent, "max_load_gb": load}
            for extent, load in zip(res.shape.dims, res.per_dim_max_load())
        ]
        out_entries.append(
            {
                "label": label,
                "geometry": str(geometry),
                "node_shape": list(res.shape.dims),
                "per_dim_max_load_gb": per_dim,
                "bottleneck_load_gb": res.bottleneck_load_gb,
                "predicted_round_time_s": res.predicted_round_time_s,
                "predicted_total_time_s": res.predicted_total_time_s,
            }
        )
    traffic = entries[0][2].traffic
    return {
        "traffic": {
            "rounds_total": traffic.rounds_total,
            "warmup_rounds": traffic.warmup_rounds,
            "counted_rounds": traffic.counted_rounds,
            "message_gb": traffic.message_gb,
            "link_gbps": traffic.link_gbps,
        },
        "entries": out_entries,
        "ratio": ratio,
        "notes": notes,
    }


def render_flow(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc)
    headers = [
        "label", "geometry", "node_shape", "bottleneck_load_gb",
        "round_time_s", "total_time_s", "relative_time",
    ]
    first_total = doc["entries"][0]["predicted_total_time_s"]
    rows = []
    for e in doc["entries"]:
        rel = e["predicted_total_time_s"] / first_total if first_total else 1.0
        rows.append(
            [
                e["label"],
                e["geometry"],
                dims_str(e["node_shape"]),
                f"{e['bottleneck_load_gb']:.6g}",
                f"{e['predicted_round_time_s']:.6g}",
                f"{e['predicted_total_time_s']:.6g}",
                f"{rel:.6g}",
            ]
        )
    if fmt == "csv":
        return _table_csv(headers, rows)
    t = doc["traffic"]
    lines = [
        f"pairing benchmark: {t['counted_rounds']} counted rounds "
        f"({t['rounds_total']} total, {t['warmup_rounds']} warm-up), "
        f"{t['message_gb']} GB messages, {t['link_gbps']} GB/s links",
        _table_text(headers, rows).rstrip(),
    ]
    for e in doc["entries"]:
        per_dim = ", ".join(
            f"{d['extent']}:{d['max_load_gb']:.6g}" for d in e["per_dim_max_load_gb"]
        )
        lines.append(f"per-dimension max load [{e['label']}]: {per_dim} GB")
    if doc["ratio"] is not None:
        r = doc["ratio"]
        lines.append(
            f"predicted time ratio ({r['numerator']} / {r['denominator']}): {r['value']:.4f}"
        )
    lines.extend(doc["notes"])
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- oracle

def oracle_document(shape, t: int, result, bound_result, verdict: str) -> dict:
    return {
        "dims": list(shape.dims),
        "t": t,
        "multiplicity": shape.length2_multiplicity,
        "min_perimeter": result.min_perimeter,
        "witness": [list(v) for v in result.witness],
        "subsets_examined": result.subsets_examined,
        "bound_value": _num(bound_result.value),
        "bound_argmin_r": bound_result.argmin_r,
        "verdict": verdict,
    }


def render_oracle(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc)
    headers = [
        "dims", "t", "multiplicity", "min_perimeter",
        "subsets_examined", "bound_value", "verdict",
    ]
    row = [
        dims_str(doc["dims"]), doc["t"], doc["multiplicity"], doc["min_perimeter"],
        doc["subsets_examined"], doc["bound_value"], doc["verdict"],
    ]
    if fmt == "csv":
        return _table_csv(headers, [row])
    witness = " ".join("(" + ",".join(map(str, v)) + ")" for v in doc["witness"])
    lines = [
        f"shape: {dims_str(doc['dims'])} (length-2 multiplicity {doc['multiplicity']})",
        f"t: {doc['t']}",
        f"minimum perimeter: {doc['min_perimeter']} over {doc['subsets_examined']} subsets",
        f"witness: {witness}",
        f"cuboid lower bound: {doc['bound_value']} (argmin r {doc['bound_argmin_r']})",
        f"verdict: {doc['verdict']}",
    ]
    return "\n".join(lines) + "\n"
