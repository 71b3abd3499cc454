"""Brute-force reference implementations used only by the tests.

Each oracle deliberately avoids the library's search code: adjacency is read
through ``G.adjacent`` and sets are tuples or local bitmasks.
"""

from __future__ import annotations

import math
import random
from itertools import combinations

from ordpure.core import OrderedGraph, build


def subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def brute_embeddings(G: OrderedGraph, H: OrderedGraph):
    """All strictly increasing tuples that induce ``H``, in lexicographic order."""
    for tup in combinations(range(G.n), H.n):
        if all(G.adjacent(tup[i], tup[j]) == H.adjacent(i, j)
               for i in range(H.n) for j in range(i + 1, H.n)):
            yield tup


def brute_contains(G, H):
    return next(brute_embeddings(G, H), None)


def brute_rainbow(G, blocks, H):
    """Rainbow embeddings; ``blocks`` is a list of vertex lists in order."""
    where = {v: b for b, blk in enumerate(blocks) for v in blk}
    out = []
    for tup in brute_embeddings(G, H):
        if all(v in where for v in tup) and len({where[v] for v in tup}) == len(tup):
            out.append(tup)
    return out


def brute_best_anticomplete(G: OrderedGraph) -> int:
    """Max of min(|Z1|, |Z2|) over all ordered pairs of disjoint anticomplete subsets."""
    n = G.n
    best = 0
    for mask1 in range(1, 1 << n):
        z1 = [v for v in range(n) if mask1 >> v & 1]
        if len(z1) <= best:
            continue
        rest = [v for v in range(n) if not mask1 >> v & 1]
        for mask2 in range(1, 1 << len(rest)):
            z2 = [rest[i] for i in range(len(rest)) if mask2 >> i & 1]
            m = min(len(z1), len(z2))
            if m <= best:
                continue
            if all(not G.adjacent(a, b) for a in z1 for b in z2):
                best = m
    return best


def brute_best_anticomplete_fast(G: OrderedGraph) -> int:
    """Same quantity, enumerating Z1 and taking every common non-neighbour for Z2."""
    n = G.n
    best = 0
    for z1 in subsets(range(n)):
        if not z1:
            continue
        z2 = [v for v in range(n) if v not in z1 and all(not G.adjacent(v, a) for a in z1)]
        best = max(best, min(len(z1), len(z2)))
    return best


def maxdeg(G, X, Y):
    return max((sum(1 for y in Y if G.adjacent(x, y)) for x in X), default=0)


def _local_rows(G, src, dst):
    """Neighbourhood of each vertex of ``src`` inside ``dst`` as a local bitmask."""
    return [sum(1 << i for i, y in enumerate(dst) if G.adjacent(x, y)) for x in src]


def _subpair_maxdegs(G, bh, bj, mh, mj):
    """Yield (X, Y, maxdeg) over all X, Y with |X| >= mh and |Y| >= mj (local masks)."""
    rows = _local_rows(G, bh, bj)
    for ym in range(1 << len(bj)):
        if bin(ym).count("1") < mj:
            continue
        degs = [bin(r & ym).count("1") for r in rows]
        for xm in range(1, 1 << len(bh)):
            if bin(xm).count("1") < mh:
                continue
            yield xm, ym, max(degs[i] for i in range(len(bh)) if xm >> i & 1)


def brute_resistance_counterexample(G, blocks, phi, mu):
    """Some (h, j, X, Y) violating shrink-resistance, by full double enumeration."""
    n = G.n
    for h, bh in enumerate(blocks):
        for j, bj in enumerate(blocks):
            if h == j:
                continue
            thr = maxdeg(G, bh, bj) * n ** (-phi)
            mh = math.ceil(mu * len(bh) - 1e-12)
            mj = math.ceil(mu * len(bj) - 1e-12)
            for xm, ym, d in _subpair_maxdegs(G, bh, bj, mh, mj):
                if d <= thr * (1 + 1e-12):
                    return h, j, xm, ym
    return None


def brute_is_band(G, blocks, tau, phi, mu):
    n = G.n
    for h, bh in enumerate(blocks):
        for j, bj in enumerate(blocks):
            if h == j:
                continue
            if maxdeg(G, bh, bj) > tau * len(bj) * (1 + 1e-12):
                return False
            mh = math.ceil(mu * len(bh) - 1e-12)
            mj = math.ceil(mu * len(bj) - 1e-12)
            thr = tau * n ** (-phi) * len(bj)
            for _, _, d in _subpair_maxdegs(G, bh, bj, mh, mj):
                if d <= thr * (1 + 1e-12):
                    return False
    return True


def three_horns(G: OrderedGraph, T: OrderedGraph, eps: float, c: float) -> dict:
    """Exhaustive check of each horn independently."""
    n = G.n
    thr = math.ceil(eps * n - 1e-12)
    degree = any(sum(G.adjacent(v, u) for u in range(n) if u != v) >= thr for v in range(n))
    copy = brute_contains(G, T) is not None
    floor = math.ceil(n ** (1 - c) - 1e-12) if n else 0
    pair = n >= 2 and brute_best_anticomplete_fast(G) >= max(floor, 1)
    return {"degree": degree, "copy": copy, "pair": pair}


def all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield build(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def random_graph(n: int, p: float, rng: random.Random) -> OrderedGraph:
    return build(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def ordered_forests(k: int):
    """Every ordered graph on ``k`` vertices with no cycle."""
    import networkx as nx
    for G in all_graphs(k):
        g = nx.Graph()
        g.add_nodes_from(range(k))
        g.add_edges_from(G.edges())
        if nx.is_forest(g):
            yield G


def regular_bipartite(left, right, d, rng: random.Random):
    """Edges of a d-regular bipartite graph between equal-size vertex lists."""
    m = len(left)
    assert len(right) == m and 0 <= d <= m
    pl = left[:]
    pr = right[:]
    rng.shuffle(pl)
    rng.shuffle(pr)
    return [(pl[i], pr[(i + t) % m]) for i in range(m) for t in range(d)]


def regular_block_graph(k: int, size: int, degrees, rng: random.Random) -> OrderedGraph:
    """``k`` consecutive blocks; block pair ``(a, b)`` joined by a ``degrees[a, b]``-regular graph."""
    blocks = [list(range(i * size, (i + 1) * size)) for i in range(k)]
    edges = []
    for a in range(k):
        for b in range(a + 1, k):
            edges += regular_bipartite(blocks[a], blocks[b], degrees[a, b], rng)
    return build(k * size, edges)


def nx_girth(G: OrderedGraph) -> float:
    import networkx as nx
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    return nx.girth(g)


def brute_best_complete(G: OrderedGraph) -> int:
    """Max of min(|Z1|, |Z2|) over disjoint complete pairs, by enumerating Z1."""
    n = G.n
    best = 0
    for z1 in subsets(range(n)):
        if not z1:
            continue
        z2 = [v for v in range(n) if v not in z1 and all(G.adjacent(v, a) for a in z1)]
        best = max(best, min(len(z1), len(z2)))
    return best


def planted_type_graph(blocks: int, size: int, k: int, rng: random.Random):
    """Equal blocks; each block pair is complete or a perfect matching.

    A random ``k``-set of blocks gets one kind on all its pairs; other pairs
    get a random kind.  Returns the graph, the planted labels (1-based) and
    the kind of every pair.
    """
    planted = tuple(sorted(rng.sample(range(blocks), k)))
    main = rng.choice(("complete", "matching"))
    kind = {}
    edges = []
    for a in range(blocks):
        for b in range(a + 1, blocks):
            if a in planted and b in planted:
                kd = main
            else:
                kd = rng.choice(("complete", "matching"))
            kind[a + 1, b + 1] = kd
            A = list(range(a * size, (a + 1) * size))
            B = list(range(b * size, (b + 1) * size))
            if kd == "complete":
                edges += [(u, v) for u in A for v in B]
            else:
                perm = B[:]
                rng.shuffle(perm)
                edges += list(zip(A, perm))
    return build(blocks * size, edges), tuple(p + 1 for p in planted), kind
