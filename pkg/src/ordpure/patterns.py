"""Ordered induced containment, rainbow containment and the named gadgets."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .core import InputError, OrderedGraph, bits, build


@dataclass(frozen=True)
class Embedding:
    """Pattern vertex ``i`` maps to host vertex ``map[i]``."""

    map: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.map)

    def __str__(self) -> str:
        return " ".join(map(str, self.map))


def is_valid_embedding(G: OrderedGraph, H: OrderedGraph, emb: Sequence[int],
                       blocks: Optional[Sequence[int]] = None) -> bool:
    """Validate order, inducedness and (optionally) rainbow-ness pair by pair.

    Deliberately written without the search's mask bookkeeping so it can
    serve as an independent check. ``blocks`` are block masks in order.
    """
    emb = tuple(emb.map) if isinstance(emb, Embedding) else tuple(emb)
    if len(emb) != H.n:
        return False
    for i, x in enumerate(emb):
        if not 0 <= x < G.n:
            return False
        if i and emb[i - 1] >= x:
            return False
    for i in range(H.n):
        for j in range(i + 1, H.n):
            if H.adjacent(i, j) != G.adjacent(emb[i], emb[j]):
                return False
    if blocks is not None:
        used = []
        for x in emb:
            hit = [b for b, m in enumerate(blocks) if m >> x & 1]
            if len(hit) != 1:
                return False
            used.append(hit[0])
        if len(set(used)) != len(used):
            return False
    return True


def _search(G: OrderedGraph, H: OrderedGraph, start: int, region: int,
            block_of: Optional[dict[int, int]] = None,
            after_block: Optional[list[int]] = None) -> Iterator[tuple[int, ...]]:
    """Depth-first over pattern vertices in label order, host labels ascending.

    ``start`` restricts the first image; ``region`` is the allowed host set.
    Rainbow mode passes ``block_of`` (vertex -> block position) and
    ``after_block[b]`` (union of blocks strictly after position ``b``).
    """
    h = H.n
    if h == 0:
        yield ()
        return
    rows = G.rows
    hadj = [[H.adjacent(i, t) for t in range(h)] for i in range(h)]
    img = [0] * h

    def rec(i: int, cands: list[int]) -> Iterator[tuple[int, ...]]:
        pool = cands[i]
        for x in bits(pool):
            above = -1 << (x + 1)
            if block_of is not None:
                above &= after_block[block_of[x]]
            nxt = cands[:]
            ok = True
            row = rows[x]
            for t in range(i + 1, h):
                m = nxt[t] & above
                m &= row if hadj[i][t] else ~row
                if not m:
                    ok = False
                    break
                nxt[t] = m
            if not ok:
                continue
            img[i] = x
            if i + 1 == h:
                yield tuple(img)
            else:
                yield from rec(i + 1, nxt)

    cands = [region] * h
    cands[0] &= start
    yield from rec(0, cands)


def iter_embeddings(G: OrderedGraph, H: OrderedGraph) -> Iterator[tuple[int, ...]]:
    """All embeddings of ``H`` in ``G`` in lexicographic order."""
    return _search(G, H, G.all_mask, G.all_mask)


def contains_ordered(G: OrderedGraph, H: OrderedGraph, threads: int = 1) -> Optional[Embedding]:
    """Lexicographically least order-preserving induced copy of ``H``, or None.

    With ``threads > 1`` the first pattern vertex's candidates are searched in
    parallel and the per-branch results reduced by minimum.
    """
    if H.n > G.n:
        return None
    if threads <= 1 or H.n == 0:
        return next((Embedding(e) for e in iter_embeddings(G, H)), None)

    def branch(x: int) -> Optional[tuple[int, ...]]:
        return next(_search(G, H, 1 << x, G.all_mask), None)

    with ThreadPoolExecutor(max_workers=threads) as ex:
        found = [r for r in ex.map(branch, range(G.n)) if r is not None]
    return Embedding(min(found)) if found else None


def _rainbow_setup(blocks: Sequence[int]) -> tuple[int, dict[int, int], list[int]]:
    block_of: dict[int, int] = {}
    for b, m in enumerate(blocks):
        for v in bits(m):
            block_of[v] = b
    after = [0] * len(blocks)
    acc = 0
    for b in range(len(blocks) - 1, -1, -1):
        after[b] = acc
        acc |= blocks[b]
    return acc, block_of, after


def iter_rainbow(G: OrderedGraph, blocks: Sequence[int], H: OrderedGraph) -> Iterator[tuple[int, ...]]:
    region, block_of, after = _rainbow_setup(blocks)
    return _search(G, H, region, region, block_of, after)


def find_rainbow_copy(G: OrderedGraph, B, H: OrderedGraph) -> Optional[Embedding]:
    """Least copy of ``H`` using at most one vertex from each block of ``B``.

    ``B`` is a :class:`~ordpure.blockade.Blockade` or a sequence of block masks
    listed in order.
    """
    blocks = list(B.blocks) if hasattr(B, "blocks") else list(B)
    return next((Embedding(e) for e in iter_rainbow(G, blocks, H)), None)


# -- named patterns ---------------------------------------------------------

def _monotone_path(k: int) -> OrderedGraph:
    if k < 1:
        raise InputError("monotone_path needs k >= 1")
    return build(k, [(i, i + 1) for i in range(k - 1)])


PATTERN_NAMES = ("monotone_path", "fox_path", "double_leaf_forest", "h1", "h2")


def pattern(name: str, k: Optional[int] = None) -> OrderedGraph:
    """Named gadget graphs, relabelled to 0-based vertices."""
    if name == "monotone_path":
        return _monotone_path(3 if k is None else k)
    if name == "fox_path":
        return build(3, [(0, 1), (1, 2)])
    if name == "double_leaf_forest":
        return build(4, [(0, 1), (1, 3)])
    if name == "h1":
        return build(4, [(0, 1), (0, 2), (0, 3)])
    if name == "h2":
        return build(4, [(1, 2), (0, 2), (0, 3)])
    raise InputError(f"unknown pattern {name!r}; expected one of {', '.join(PATTERN_NAMES)}")


def _components(H: OrderedGraph) -> tuple[list[int], int]:
    parent = list(range(H.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cycles = 0
    for u, v in H.edges():
        ru, rv = find(u), find(v)
        if ru == rv:
            cycles += 1
        else:
            parent[max(ru, rv)] = min(ru, rv)
    return [find(x) for x in range(H.n)], cycles


def is_ordered_forest(H: OrderedGraph) -> bool:
    return _components(H)[1] == 0


def is_ordered_tree(H: OrderedGraph) -> bool:
    roots, cycles = _components(H)
    return H.n >= 1 and cycles == 0 and len(set(roots)) == 1


def components(H: OrderedGraph) -> list[list[int]]:
    """Connected components, each sorted, listed by least vertex."""
    roots = _components(H)[0]
    out: dict[int, list[int]] = {}
    for v, r in enumerate(roots):
        out.setdefault(r, []).append(v)
    return [out[r] for r in sorted(out)]
