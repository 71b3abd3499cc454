"""Seeded random ordered graphs, the high-girth construction and the scaling experiment.

Randomness comes from numpy's counter-based Philox generator keyed by the
seed.  Unordered pairs ``u < v`` are numbered in lexicographic order and cut
into fixed chunks of ``CHUNK`` pairs; chunk ``c`` reads its uniforms from
counter ``(0, 0, 0, c)``.  The result therefore does not depend on how many
threads generate the chunks.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import stats

from .core import InputError, OrderedGraph, complete_graph, empty_graph, from_rows
from .purepair import COMPLETE, anticomplete_search

CHUNK = 1 << 16


def _chunk_uniforms(seed: int, chunk: int, count: int) -> np.ndarray:
    bitgen = np.random.Philox(key=seed, counter=[0, 0, 0, chunk])
    return np.random.Generator(bitgen).random(count)


def pair_uniforms(n: int, seed: int, threads: int = 1) -> np.ndarray:
    """One uniform in ``[0, 1)`` per unordered pair, lexicographic pair order."""
    if seed < 0:
        raise InputError("seed must be nonnegative")
    total = n * (n - 1) // 2
    starts = list(range(0, total, CHUNK))
    sizes = [min(CHUNK, total - s) for s in starts]
    jobs = [(seed, c, m) for c, m in enumerate(sizes)]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda a: _chunk_uniforms(*a), jobs))
    else:
        parts = [_chunk_uniforms(*a) for a in jobs]
    return np.concatenate(parts) if parts else np.zeros(0)


def _rows_from_matrix(adj: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(adj, axis=1, bitorder="little")
    return tuple(int.from_bytes(r.tobytes(), "little") for r in packed)


def random_ordered(n: int, p: float, seed: int, threads: int = 1) -> OrderedGraph:
    """G(n, p) on ``0..n-1``: pair ``(u, v)`` is an edge iff its uniform is below ``p``."""
    if not 0 <= p <= 1:
        raise InputError("p must lie in [0, 1]")
    if n < 0:
        raise InputError("n must be nonnegative")
    if n < 2:
        return empty_graph(n)
    u = pair_uniforms(n, seed, threads)
    iu = np.triu_indices(n, 1)
    adj = np.zeros((n, n), dtype=bool)
    adj[iu] = u < p
    adj |= adj.T
    return OrderedGraph(n, _rows_from_matrix(adj))


# -- short cycles ----------------------------------------------------------

def short_cycle_through(G: OrderedGraph, s: int, alive: int, g: int) -> Optional[list[int]]:
    """A cycle of length at most ``g`` through ``s`` using vertices of ``alive``.

    Breadth-first search to depth ``g // 2``, remembering which neighbour of
    ``s`` each vertex hangs from; an edge joining two different branches
    closes a cycle through ``s``, and the shortest such cycle is always seen
    this way.
    """
    rows = G.rows
    depth = {s: 0}
    parent = {s: -1}
    branch = {s: -1}
    q = deque([s])
    best = None
    while q:
        x = q.popleft()
        if depth[x] >= g // 2:
            continue
        nb = rows[x] & alive
        while nb:
            low = nb & -nb
            y = low.bit_length() - 1
            nb ^= low
            if y == parent[x]:
                continue
            if y not in depth:
                depth[y] = depth[x] + 1
                parent[y] = x
                branch[y] = y if x == s else branch[x]
                q.append(y)
    for x in depth:
        if x == s:
            continue
        nb = rows[x] & alive
        while nb:
            low = nb & -nb
            y = low.bit_length() - 1
            nb ^= low
            if y == s or y not in depth or branch[y] == branch[x] or x > y:
                continue
            length = depth[x] + depth[y] + 1
            if length <= g and (best is None or length < best[0] or (length == best[0] and (x, y) < best[1])):
                best = (length, (x, y))
    if best is None:
        return None
    x, y = best[1]

    def path(v: int) -> list[int]:
        out = []
        while v != -1:
            out.append(v)
            v = parent[v]
        return out

    return list(reversed(path(x))) + path(y)[:-1]


def girth_at_most(G: OrderedGraph, g: int) -> Optional[list[int]]:
    """Some cycle of length at most ``g`` in ``G``, or None."""
    for s in range(G.n):
        alive = G.all_mask & (-1 << s)
        cyc = short_cycle_through(G, s, alive, g)
        if cyc is not None:
            return cyc
    return None


@dataclass(frozen=True)
class GirthReport:
    n: int
    g: int
    p: float
    edges: int
    kept: int
    deletions: int
    half_kept: bool
    labels: tuple[int, ...]


def girth_construction(n: int, g: int, seed: int, threads: int = 1) -> tuple[OrderedGraph, GirthReport]:
    """Sparse random graph with every cycle of length at most ``g`` broken.

    ``p = n^(-1 + 1/g) / 2``.  Vertices are scanned in increasing order; if a
    short cycle has least vertex ``s`` it is found while scanning ``s`` and
    ``s`` is deleted.
    """
    if g < 3 or n < 4:
        raise InputError("need g >= 3 and n >= 4")
    p = 0.5 * n ** (-1 + 1 / g)
    G = random_ordered(n, p, seed, threads)
    alive = G.all_mask
    deletions = 0
    for s in range(n):
        region = alive & (-1 << s)
        if short_cycle_through(G, s, region, g) is not None:
            alive &= ~(1 << s)
            deletions += 1
    H, labels = G.induced(alive)
    rep = GirthReport(n, g, p, G.edge_count(), H.n, deletions, 2 * H.n >= n, tuple(labels))
    return H, rep


# -- scaling experiment ----------------------------------------------------

CONSTRUCTIONS = ("girth", "empty", "complete", "random")
CSV_HEADER = "construction,n,seed,polarity,z1,z2,min_size,mode,seconds"


@dataclass
class ExperimentRow:
    construction: str
    n: int
    seed: int
    polarity: str
    z1: tuple[int, ...]
    z2: tuple[int, ...]
    min_size: int
    mode: str
    seconds: Optional[float] = None

    def csv(self) -> str:
        sec = "" if self.seconds is None else f"{self.seconds:.3f}"
        return ",".join([self.construction, str(self.n), str(self.seed), self.polarity,
                         " ".join(map(str, self.z1)), " ".join(map(str, self.z2)),
                         str(self.min_size), self.mode, sec])


@dataclass(frozen=True)
class SlopeFit:
    seed: Optional[int]
    slope: float
    low: float
    high: float
    points: int


@dataclass
class ExperimentResult:
    config_hash: str
    rows: list[ExperimentRow]
    fits: list[SlopeFit]
    overall: Optional[SlopeFit]
    c_hits: dict = field(default_factory=dict)

    def csv_lines(self) -> list[str]:
        out = [f"# config={self.config_hash}", CSV_HEADER]
        out += [r.csv() for r in self.rows]
        for f in self.fits + ([self.overall] if self.overall else []):
            tag = "all" if f.seed is None else str(f.seed)
            out.append(f"# fit seed={tag} slope={f.slope:.6f} ci95=[{f.low:.6f},{f.high:.6f}] points={f.points}")
        for c, (hit, tot) in sorted(self.c_hits.items()):
            out.append(f"# c={c:g} rows_with_min_size_at_least_n^(1-c)={hit}/{tot}")
        return out


def fit_slope(xs: Sequence[float], ys: Sequence[float], seed: Optional[int] = None) -> Optional[SlopeFit]:
    """Least-squares slope of ``log ys`` on ``log xs`` with a 95% t-interval."""
    pts = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len(pts) < 2 or len({p[0] for p in pts}) < 2:
        return None
    lx, ly = zip(*pts)
    r = stats.linregress(lx, ly)
    if len(pts) > 2:
        half = stats.t.ppf(0.975, len(pts) - 2) * r.stderr
    else:
        half = math.inf
    return SlopeFit(seed, float(r.slope), float(r.slope - half), float(r.slope + half), len(pts))


def _instance(construction: str, n: int, seed: int, g: int, p: float, threads: int) -> OrderedGraph:
    if construction == "girth":
        return girth_construction(n, g, seed, threads)[0]
    if construction == "empty":
        return empty_graph(n)
    if construction == "complete":
        return complete_graph(n)
    if construction == "random":
        return random_ordered(n, p, seed, threads)
    raise InputError(f"unknown construction {construction!r}")


def best_pair_budgeted(G: OrderedGraph, node_limit: int, max_starts: int = 32):
    """Better of the anticomplete and complete searches, greedy plus bounded search."""
    best = None
    for polarity, H in (("anticomplete", G), (COMPLETE, G.complement())):
        mode = "exact" if H.n <= 22 else "branch_bound"
        res = anticomplete_search(H, mode, node_limit=node_limit, max_starts=max_starts)
        if res.witness is None:
            continue
        size = res.size
        if best is None or size > best[0]:
            best = (size, polarity, res)
    return best


def scaling_experiment(n_list: Sequence[int], construction: str = "girth", seeds: Sequence[int] = (0,),
                       g: int = 3, p: float = 0.5, c_grid: Sequence[float] = (),
                       node_limit: int = 20_000, timing: bool = False,
                       threads: int = 1) -> ExperimentResult:
    """Best pure pair found per ``(n, seed)`` and the fitted log-log slope per seed."""
    cfg = {"n_list": list(n_list), "construction": construction, "seeds": list(seeds), "g": g,
           "p": p, "c_grid": list(c_grid), "node_limit": node_limit}
    chash = hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:16]

    def cell(args):
        n, seed = args
        t0 = time.perf_counter()
        G = _instance(construction, n, seed, g, p, 1)
        found = best_pair_budgeted(G, node_limit)
        secs = time.perf_counter() - t0 if timing else None
        if found is None:
            return ExperimentRow(construction, G.n, seed, "none", (), (), 0, "none", secs)
        size, pol, res = found
        return ExperimentRow(construction, G.n, seed, pol, res.witness.z1, res.witness.z2, size,
                             res.mode + ("" if res.proven_optimal else "+capped"), secs)

    cells = [(n, s) for s in seeds for n in n_list]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(cell, cells))
    else:
        rows = [cell(x) for x in cells]
    fits = []
    for s in seeds:
        mine = [r for r in rows if r.seed == s]
        f = fit_slope([r.n for r in mine], [r.min_size for r in mine], s)
        if f:
            fits.append(f)
    overall = fit_slope([r.n for r in rows], [r.min_size for r in rows]) if len(seeds) > 1 else None
    hits = {}
    for c in c_grid:
        hits[c] = (sum(1 for r in rows if r.n and r.min_size >= r.n ** (1 - c)), len(rows))
    return ExperimentResult(chash, rows, fits, overall, hits)
