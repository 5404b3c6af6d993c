"""Text formats: graph documents, verdict reports, DOT export.

Graph documents are line-oriented:

    gsgraph v1
    vertex <id> <type> <nature>
    edge <src|OPEN> <dst|OPEN> <weight>

Blank lines and '#' comments are skipped.  Enum names are matched case
insensitively; everything else is rejected with a line/column diagnostic.
Serialization emits vertices sorted by id and edges sorted by endpoints, so
serialize(parse(d)) is the canonical form of d and a fixed point of the
round trip.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .branched import Branched1Manifold, parse_manifold
from .model import (
    OPEN,
    Edge,
    LyapunovGraph,
    VertexLabel,
    euler_conley,
    euler_gs,
    fold_balance,
    parse_nature,
    parse_type,
)
from .realize import RealizationVerdict

REPORT_VERSION = 1
HEADER = "gsgraph v1"


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str) -> None:
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


def _tokens(text_line: str) -> list[tuple[str, int]]:
    out = []
    col = 0
    for raw in text_line.split(" "):
        if raw:
            out.append((raw, col + 1))
        col += len(raw) + 1
    return out


def parse_graph(text: str) -> LyapunovGraph:
    """Parse a graph document, raising ParseError with positions."""
    g = LyapunovGraph()
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, 1, "empty document")
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        toks = _tokens(line)
        word, col = toks[0]
        if not header_seen:
            if line.strip() != HEADER:
                raise ParseError(lineno, col, f"expected header {HEADER!r}")
            header_seen = True
            continue
        if word == "vertex":
            if len(toks) != 4:
                raise ParseError(lineno, col, "vertex takes: id type nature")
            vid = toks[1][0]
            if vid in g.vertices:
                raise ParseError(lineno, toks[1][1], f"duplicate vertex id {vid!r}")
            try:
                kind = parse_type(toks[2][0])
            except ValueError as err:
                raise ParseError(lineno, toks[2][1], str(err)) from None
            try:
                nature = parse_nature(toks[3][0])
            except ValueError as err:
                raise ParseError(lineno, toks[3][1], str(err)) from None
            try:
                g.vertices[vid] = VertexLabel(kind, nature)
            except ValueError as err:
                raise ParseError(lineno, toks[3][1], str(err)) from None
        elif word == "edge":
            if len(toks) != 4:
                raise ParseError(lineno, col, "edge takes: src dst weight")
            ends = []
            for tok, tcol in toks[1:3]:
                ends.append(OPEN if tok.upper() == "OPEN" else tok)
            try:
                w = int(toks[3][0])
            except ValueError:
                raise ParseError(lineno, toks[3][1], f"weight must be an integer, got {toks[3][0]!r}") from None
            if w < 1:
                raise ParseError(lineno, toks[3][1], "weight must be >= 1")
            g.edges.append(Edge(ends[0], ends[1], w))
        else:
            raise ParseError(lineno, col, f"unknown directive {word!r}")
    if not header_seen:
        raise ParseError(1, 1, f"expected header {HEADER!r}")
    for i, e in enumerate(g.edges):
        for end in (e.src, e.dst):
            if end is not None and end not in g.vertices:
                raise ParseError(len(lines), 1, f"edge {i} references unknown vertex {end!r}")
    return g


def serialize_graph(g: LyapunovGraph) -> str:
    lines = [HEADER]
    for vid, label in sorted(g.vertices.items()):
        lines.append(f"vertex {vid} {label.kind} {label.nature}")
    key = lambda e: (e.src or "", e.dst or "", e.weight)
    for e in sorted(g.edges, key=key):
        src = "OPEN" if e.src is None else e.src
        dst = "OPEN" if e.dst is None else e.dst
        lines.append(f"edge {src} {dst} {e.weight}")
    return "\n".join(lines) + "\n"


def export_dot(g: LyapunovGraph) -> str:
    """Graphviz digraph: one node per vertex, one arc per edge."""
    lines = ["digraph lyapunov {"]
    for vid, label in sorted(g.vertices.items()):
        lines.append(f'  "{vid}" [label="{vid}\\n({label.kind},{label.nature})"];')
    opens = 0
    for e in sorted(g.edges, key=lambda e: (e.src or "", e.dst or "", e.weight)):
        ends = []
        for end in (e.src, e.dst):
            if end is None:
                name = f"__open{opens}"
                opens += 1
                lines.append(f'  "{name}" [shape=point, label=""];')
                ends.append(name)
            else:
                ends.append(end)
        lines.append(f'  "{ends[0]}" -> "{ends[1]}" [label="{e.weight}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def report_document(g: LyapunovGraph, verdict: RealizationVerdict) -> dict:
    """Machine-readable verdict report for a closed graph."""
    cert = None
    if verdict.certificate is not None:
        cert = {str(i): m.encode() for i, m in sorted(verdict.certificate.items())}
    chi = euler_gs(g)
    return {
        "version": REPORT_VERSION,
        "status": verdict.status,
        "theorem": verdict.theorem,
        "reason": verdict.reason,
        "witness": list(verdict.witness),
        "searched_bound": verdict.searched_bound,
        "certificate": cert,
        "euler": {
            "conley": euler_conley(g),
            "nature_formula": _fraction_str(chi),
            "integer": chi.denominator == 1,
        },
        "fold_balance": fold_balance(g),
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def report_certificate(report: dict) -> dict[int, Branched1Manifold]:
    """Recover manifold values from a report's certificate strings."""
    cert = report.get("certificate") or {}
    return {int(k): parse_manifold(v) for k, v in cert.items()}


CATALOG_VERSION = 1


def catalog_document() -> dict:
    """Versioned machine-readable dump of the minimal block catalog.

    Boundary forms use the same canonical text encoding as everywhere else;
    routing lists the (entering, exiting) component pairs joined by a flow
    band.
    """
    from .blocks import minimal_block_catalog

    entries = []
    for e in minimal_block_catalog():
        entries.append(
            {
                "name": e.name,
                "type": str(e.label.kind),
                "nature": str(e.label.nature),
                "e_plus": e.e_plus,
                "e_minus": e.e_minus,
                "n_plus": e.n_plus.encode() if e.n_plus else "",
                "n_minus": e.n_minus.encode() if e.n_minus else "",
                "beta_in": e.beta_in,
                "beta_out": e.beta_out,
                "routing": sorted(list(pair) for pair in e.routing),
                "orientable": e.orientable,
                "provisional": e.provisional,
            }
        )
    return {"version": CATALOG_VERSION, "entries": entries}
