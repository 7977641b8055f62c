"""Text formats: edge lists, certificates, embeddings, DOT, trace CSV."""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

from .planar import PlaneMultigraph
from .trigraph import ContractionSequence, Trigraph, WidthTrace

CERT_FORMAT = "tww-cert/1"


class FormatError(ValueError):
    pass


def _read(src) -> str:
    if isinstance(src, (str, Path)) and Path(src).exists():
        return Path(src).read_text()
    if hasattr(src, "read"):
        return src.read()
    raise FileNotFoundError(f"no such file: {src}")


# edge list ----------------------------------------------------------------


def format_edge_list(n: int, edges) -> str:
    edges = list(edges)
    lines = [f"{n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> tuple[int, list[tuple[int, int]]]:
    tokens = text.split("\n")
    rows = [line.split() for line in tokens if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise FormatError("edge list must start with a line 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise FormatError(f"malformed edge list: {exc}") from None
    if any(len(r) != 2 for r in rows[1:]):
        raise FormatError("every edge line must hold exactly two ids")
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    return n, edges


def read_edge_list(src) -> Trigraph:
    n, edges = parse_edge_list(_read(src))
    return Trigraph.from_black_edges(n, edges)


def write_edge_list(path, n: int, edges) -> None:
    Path(path).write_text(format_edge_list(n, edges))


# certificates -------------------------------------------------------------


def format_certificate(n: int, width: int, seq: ContractionSequence) -> str:
    doc = {"format": CERT_FORMAT, "n": int(n), "width": int(width), "steps": seq.pairs()}
    return json.dumps(doc, separators=(",", ":")) + "\n"


def parse_certificate(text: str) -> tuple[int, int, ContractionSequence]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"certificate is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != CERT_FORMAT:
        raise FormatError(f"certificate format must be {CERT_FORMAT!r}")
    try:
        n, width, steps = int(doc["n"]), int(doc["width"]), doc["steps"]
        seq = ContractionSequence.of((int(a), int(b)) for a, b in steps)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed certificate: {exc}") from None
    return n, width, seq


def read_certificate(src) -> tuple[int, int, ContractionSequence]:
    return parse_certificate(_read(src))


def write_certificate(path, n: int, width: int, seq: ContractionSequence) -> None:
    Path(path).write_text(format_certificate(n, width, seq))


def format_trace_csv(seq: ContractionSequence, trace: WidthTrace) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "keep", "remove", "max_red_degree"])
    for i, (s, r) in enumerate(zip(seq, trace.per_step_max_red_degree)):
        w.writerow([i, s.keep, s.remove, r])
    return buf.getvalue()


# embeddings ---------------------------------------------------------------


def format_embedding(g: PlaneMultigraph) -> str:
    lines = []
    for v in g.vertices:
        ds = " ".join(str(d) for d in g.rotation[v])
        lines.append(f"{v}: {ds}".rstrip())
    return "\n".join(lines) + "\n"


def parse_embedding(text: str) -> PlaneMultigraph:
    rotation = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'v: d1 d2 ...'")
        try:
            v = int(head)
            rotation[v] = [int(x) for x in rest.split()]
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer id") from None
    try:
        g = PlaneMultigraph.from_rotation(rotation)
        g.faces()
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return g


def to_dot(g: Trigraph | PlaneMultigraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    if isinstance(g, PlaneMultigraph):
        lines += [f"  {v};" for v in g.vertices]
        lines += [f"  {e.u} -- {e.v};" for e in g.edges()]
    else:
        lines += [f"  {v};" for v in g.vertices()]
        lines += [f"  {u} -- {v};" for u, v in g.black_edges()]
        lines += [f"  {u} -- {v} [color=red];" for u, v in g.red_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
