"""Text formats: OGR v1 graphs, blockade JSON lines, and tagged outcome lines."""

from __future__ import annotations

import json
from typing import Iterable, TextIO

from .blockade import Blockade
from .core import InputError, OrderedGraph, bits, build, to_mask
from .patterns import Embedding
from .purepair import Exhausted, HighDegreeVertex, PurePairWitness


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_ogr(text: str) -> OrderedGraph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    lines = _content_lines(text)
    if not lines:
        raise InputError("empty graph file")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise InputError("first line must be 'n m'") from None
    if n < 0 or m < 0:
        raise InputError("n and m must be nonnegative")
    if len(lines) - 1 != m:
        raise InputError(f"header announces {m} edges, found {len(lines) - 1}")
    edges = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise InputError(f"bad edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"bad edge line {ln!r}") from None
        e = (min(u, v), max(u, v))
        if e in edges:
            raise InputError(f"duplicate edge {e}")
        edges.add(e)
    return build(n, sorted(edges))


def format_ogr(G: OrderedGraph, comments: Iterable[str] = ()) -> str:
    """Canonical text: comments, header, then edges in lexicographic order."""
    out = [f"# {c}" for c in comments]
    edges = G.edges()
    out.append(f"{G.n} {len(edges)}")
    out += [f"{u} {v}" for u, v in edges]
    return "\n".join(out) + "\n"


def read_ogr(path: str) -> OrderedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_ogr(fh.read())


def write_ogr(G: OrderedGraph, path: str, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_ogr(G, comments))


def parse_blockade(text: str, G: OrderedGraph | None = None) -> Blockade:
    """One JSON array of vertices per line; blocks are labelled 1, 2, ... in file order."""
    blocks = []
    for ln in _content_lines(text):
        try:
            verts = json.loads(ln)
        except json.JSONDecodeError:
            raise InputError(f"bad blockade line {ln!r}") from None
        if not isinstance(verts, list) or not all(isinstance(v, int) and v >= 0 for v in verts):
            raise InputError(f"blockade line must be a list of vertices: {ln!r}")
        if len(set(verts)) != len(verts):
            raise InputError(f"repeated vertex in block {ln!r}")
        blocks.append(to_mask(verts))
    B = Blockade.of(blocks)
    if G is not None:
        B.check_host(G)
    return B


def format_blockade(B: Blockade) -> str:
    return "".join(json.dumps(list(bits(m))) + "\n" for m in B.blocks)


def read_blockade(path: str, G: OrderedGraph | None = None) -> Blockade:
    with open(path, encoding="utf-8") as fh:
        return parse_blockade(fh.read(), G)


def format_outcome(o) -> str:
    """Tagged outcome line: ``degree``, ``pair``, ``copy`` or ``exhausted``."""
    if isinstance(o, HighDegreeVertex):
        return f"degree {o.vertex} {o.degree}"
    if isinstance(o, PurePairWitness):
        return f"pair {o}"
    if isinstance(o, Embedding):
        return f"copy {o}"
    if isinstance(o, Exhausted):
        return f"exhausted {o.reason}"
    raise InputError(f"not an outcome: {o!r}")


def parse_outcome(line: str):
    tag, _, rest = line.strip().partition(" ")
    if tag == "degree":
        v, d = rest.split()
        return HighDegreeVertex(int(v), int(d))
    if tag == "pair":
        pol, z1, z2 = (x.strip() for x in rest.split(";"))
        return PurePairWitness(tuple(map(int, z1.split())), tuple(map(int, z2.split())), pol)
    if tag == "copy":
        return Embedding(tuple(map(int, rest.split())))
    if tag == "exhausted":
        return Exhausted(rest)
    raise InputError(f"unknown outcome tag {tag!r}")


def dump_json(obj, fh: TextIO) -> None:
    fh.write(json.dumps(obj, sort_keys=True) + "\n")
