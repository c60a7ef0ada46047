"""Graph file formats: graph6, the ``order M`` edge-list text format, and
JSON adjacency matrices.

Edge lists and JSON are 1-based on disk (``i j [w]``); graphs are 0-based
in memory.
"""
from __future__ import annotations

import json
from pathlib import Path

from .algebra import to_rational
from .errors import GraphFormatError
from .graphs import Graph, from_edge_list

_G6_MIN, _G6_MAX = 63, 126


# -- graph6 ---------------------------------------------------------------------

def _g6_bytes(text):
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
        base = len(">>graph6<<")
    else:
        base = 0
    for pos, ch in enumerate(text):
        if not _G6_MIN <= ord(ch) <= _G6_MAX:
            raise GraphFormatError(f"byte {ch!r} is outside the graph6 range 63..126", base + pos)
    return [ord(ch) - 63 for ch in text], base


def parse_graph6(text):
    """Decode a graph6 string into an unweighted :class:`Graph`.

    Raises
    ------
    GraphFormatError
        On a malformed size header, a wrong body length or nonzero padding
        bits; the message names the byte offset.
    """
    data, base = _g6_bytes(text)
    if not data:
        raise GraphFormatError("empty graph6 string", base)
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 4 and data[1] != 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
        if n < 63:
            raise GraphFormatError("non-canonical 4-byte size header", base)
    elif len(data) >= 8 and data[1] == 63:
        n = 0
        for v in data[2:8]:
            n = (n << 6) | v
        pos = 8
        if n < 258048:
            raise GraphFormatError("non-canonical 8-byte size header", base)
    else:
        raise GraphFormatError("truncated size header", base)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        off = base + pos + min(len(body), need)
        raise GraphFormatError(f"expected {need} body bytes for {n} vertices, found {len(body)}", off)
    edges = []
    bit = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[bit // 6]
            if (byte >> (5 - bit % 6)) & 1:
                edges.append((i, j))
            bit += 1
    if need:
        pad = 6 * need - nbits
        if body[-1] & ((1 << pad) - 1):
            raise GraphFormatError("nonzero padding bits", base + pos + need - 1)
    return from_edge_list(n, edges)


def to_graph6(g):
    """Encode a simple graph (0/1 weights, no loops) as graph6."""
    if not g.is_simple():
        raise ValueError("graph6 only encodes simple unweighted graphs")
    n = g.order
    if n < 63:
        head = [n]
    elif n < 258048:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        head = [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [1 if g.weights[i][j] else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return "".join(chr(v + 63) for v in head + body)


# -- edge lists -----------------------------------------------------------------

def parse_edge_list(text):
    """Parse the ``order M`` / ``i j [w]`` text format (1-based, ``#`` comments)."""
    order = None
    edges = []
    offset = 0
    for lineno, raw in enumerate(text.splitlines(keepends=True), start=1):
        line = raw.split("#", 1)[0].strip()
        here = offset
        offset += len(raw.encode("utf-8"))
        if not line:
            continue
        parts = line.split()
        if parts[0].lower() == "order":
            if order is not None or len(parts) != 2:
                raise GraphFormatError(f"line {lineno}: bad or repeated 'order' header", here)
            try:
                order = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: order must be an integer", here) from None
            if order < 0:
                raise GraphFormatError(f"line {lineno}: negative order", here)
            continue
        if order is None:
            raise GraphFormatError(f"line {lineno}: edge before the 'order M' header", here)
        if len(parts) not in (2, 3):
            raise GraphFormatError(f"line {lineno}: expected 'i j [w]'", here)
        try:
            i, j = int(parts[0]), int(parts[1])
            w = to_rational(parts[2]) if len(parts) == 3 else 1
        except (ValueError, ZeroDivisionError):
            raise GraphFormatError(f"line {lineno}: cannot parse {line!r}", here) from None
        if not (1 <= i <= order and 1 <= j <= order):
            raise GraphFormatError(f"line {lineno}: vertex out of range 1..{order}", here)
        edges.append((i - 1, j - 1, w, lineno, here))
    if order is None:
        raise GraphFormatError("missing 'order M' header", 0)
    seen = set()
    for i, j, _, lineno, here in edges:
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {key[0] + 1} {key[1] + 1}", here)
        seen.add(key)
    return from_edge_list(order, [(i, j, w) for i, j, w, _, _ in edges])


def to_edge_list(g):
    lines = [f"order {g.order}"]
    for i in range(g.order):
        if g.weights[i][i]:
            lines.append(f"{i + 1} {i + 1} {g.weights[i][i]}")
    for i, j, w in g.edges():
        lines.append(f"{i + 1} {j + 1}" + ("" if w == 1 else f" {w}"))
    return "\n".join(lines) + "\n"


# -- JSON -----------------------------------------------------------------------

def parse_json_graph(text):
    """``{"order": M, "weights": [[...]]}``; entries are ints or ``"p/q"`` strings."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(payload, dict) or "weights" not in payload:
        raise GraphFormatError("JSON graph needs a 'weights' matrix", 0)
    try:
        rows = [[to_rational(v) for v in r] for r in payload["weights"]]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise GraphFormatError(f"bad weight entry: {exc}", 0) from None
    if "order" in payload and payload["order"] != len(rows):
        raise GraphFormatError(f"'order' is {payload['order']} but the matrix has {len(rows)} rows", 0)
    try:
        return Graph.from_matrix(rows)
    except ValueError as exc:
        raise GraphFormatError(str(exc), 0) from None


def to_json_graph(g):
    return json.dumps({"order": g.order, "weights": [[str(v) for v in r] for r in g.weights]})


# -- dispatch -------------------------------------------------------------------

FORMATS = ("edges", "graph6", "json")


def detect_format(path):
    suffix = Path(path).suffix.lower()
    if suffix in (".g6", ".graph6"):
        return "graph6"
    if suffix == ".json":
        return "json"
    return "edges"


def parse_graph(text, fmt):
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt == "json":
        return parse_json_graph(text)
    if fmt == "edges":
        return parse_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


FIXTURE_DIR = Path(__file__).with_name("fixtures")


def resolve_path(path):
    """Return ``path`` if it exists, else the bundled fixture of the same name."""
    p = Path(path)
    if p.exists():
        return p
    fallback = FIXTURE_DIR / p.name
    if fallback.exists():
        return fallback
    raise FileNotFoundError(f"no such graph file: {path}")


def load_graph(path, fmt=None):
    p = resolve_path(path)
    fmt = fmt or detect_format(p)
    return parse_graph(p.read_text(encoding="utf-8"), fmt)


def load_fixture(name):
    return load_graph(FIXTURE_DIR / name)
