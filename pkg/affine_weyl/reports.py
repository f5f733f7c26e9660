"""
Report rendering for affine-weyl.
Turns command results into JSON, CSV, DOT or plain text. Output depends only
on the arguments and the seed: no timestamps, fixed key order.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import networkx as nx
from networkx.drawing.nx_pydot import to_pydot

from .conjugacy import ClassDescriptor
from .errors import UnsupportedCaseError
from .graph import CensusRow, ConnectivityVerdict, DistanceResult, PathWitness, WindowGraph
from .models import OutputFormat, RunConfig
from .notation import format_descriptor, format_element

logger = logging.getLogger(__name__)

GENERATOR = "PCG64"


@dataclass
class Report:
    command: str
    header: Dict[str, Any]
    records: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    graph: Optional[WindowGraph] = None


def make_header(command: str, config: RunConfig, **extra: Any) -> Dict[str, Any]:
    """Header shared by every report: command, group, window and the generator seed."""
    header = {
        "command": command,
        "group": config.group.value,
        "n": config.n,
        "window": config.window,
        "seed": config.seed,
        "generator": GENERATOR,
    }
    header.update(extra)
    return header


# =============================================================================
# RECORDS
# =============================================================================


def verdict_record(v: Optional[ConnectivityVerdict]) -> Dict[str, Any]:
    if v is None:
        return {"status": None, "clause": None, "certificate": None, "bound": None}
    return {
        "status": v.status.value,
        "clause": v.clause,
        "certificate": v.certificate,
        "bound": v.bound,
        "exact": v.exact,
        "justification": v.justification,
    }


def witness_record(w: PathWitness) -> List[str]:
    return [format_element(x) for x in w.vertices]


def distance_record(d: ClassDescriptor, result: Optional[DistanceResult]) -> Dict[str, Any]:
    if result is None:
        return {"descriptor": format_descriptor(d), "found": False}
    return {
        "descriptor": format_descriptor(d),
        "found": True,
        "length": result.length,
        "lower_bound": result.lower_bound,
        "certified_exact": result.certified_exact,
        "window": result.window,
        "witness": witness_record(result.witness),
    }


def census_records(rows: List[CensusRow]) -> List[Dict[str, Any]]:
    out = []
    for row in rows:
        verdict = verdict_record(row.verdict)
        out.append(
            {
                "descriptor": format_descriptor(row.descriptor),
                "status": verdict["status"],
                "clause": verdict["clause"],
                "bound": verdict["bound"],
                "window": row.window,
                "vertices": row.vertices,
                "components": row.components,
            }
        )
    return out


def graph_records(graph: WindowGraph) -> List[Dict[str, Any]]:
    """One record per vertex with its component index."""
    component_of = {}
    for c, members in enumerate(graph.components):
        for i in members:
            component_of[i] = c
    return [
        {"vertex": i, "element": format_element(x), "component": component_of[i]}
        for i, x in enumerate(graph.vertices)
    ]


# =============================================================================
# RENDERING
# =============================================================================


def _flat(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return " | ".join(_flat(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def to_dot(graph: WindowGraph, header: Dict[str, Any]) -> str:
    """Undirected DOT through pydot: one node per vertex labelled with its cycle form."""
    export = nx.Graph(name="G")
    export.add_nodes_from(
        (i, {"label": format_element(x)}) for i, x in enumerate(graph.vertices)
    )
    export.add_edges_from(graph.edges)
    lines = [f"// {key}={_flat(value)}" for key, value in header.items()]
    lines.append(to_pydot(export).to_string().rstrip("\n"))
    return "\n".join(lines) + "\n"


def to_csv(report: Report) -> str:
    buffer = io.StringIO()
    for key, value in report.header.items():
        buffer.write(f"# {key}={_flat(value)}\n")
    for key, value in report.summary.items():
        buffer.write(f"# {key}={_flat(value)}\n")
    if report.records:
        fields: List[str] = []
        for record in report.records:
            fields += [k for k in record if k not in fields]
        writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for record in report.records:
            writer.writerow({k: _flat(record.get(k)) for k in fields})
    return buffer.getvalue()


def to_text(report: Report) -> str:
    lines = [f"{key}: {_flat(value)}" for key, value in report.header.items()]
    lines += [f"{key}: {_flat(value)}" for key, value in report.summary.items()]
    for record in report.records:
        lines.append("- " + ", ".join(f"{k}={_flat(v)}" for k, v in record.items()))
    return "\n".join(lines) + "\n"


def to_json(report: Report) -> str:
    body = {"header": report.header}
    body.update(report.summary)
    body["records"] = report.records
    return json.dumps(body, indent=2) + "\n"


def render(report: Report, fmt: OutputFormat) -> str:
    """
    Render a report.

    Raises:
        UnsupportedCaseError: For DOT output of a report without a graph
    """
    if fmt is OutputFormat.DOT:
        if report.graph is None:
            raise UnsupportedCaseError(f"'{report.command}' has no graph to emit as DOT")
        return to_dot(report.graph, report.header)
    if fmt is OutputFormat.CSV:
        return to_csv(report)
    if fmt is OutputFormat.TEXT:
        return to_text(report)
    return to_json(report)


def write_report(text: str, out: Optional[str], stream) -> None:
    if out is None:
        stream.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info("report written to %s", out)
