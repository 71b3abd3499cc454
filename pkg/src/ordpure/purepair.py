"""Pure-pair search and verification.

``best_anticomplete_pair`` maximizes ``min(|Z1|, |Z2|)`` over disjoint
anticomplete pairs.  The canonical answer among maxima is the
lexicographically least ``(Z1, Z2)`` as sorted vertex lists; such a pair
always has ``|Z1| = |Z2|``, because dropping the largest element of a longer
side gives a smaller list that is still a valid pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import (
    CapabilityError, InputError, OrderedGraph, bits, ceil_exp2, first_k, log2, to_mask,
)
from .patterns import Embedding, contains_ordered, is_ordered_forest

EXACT_CAP = 22
ALPHA_OMEGA_CAP = 40

COMPLETE = "complete"
ANTICOMPLETE = "anticomplete"


@dataclass(frozen=True)
class PurePairWitness:
    z1: tuple[int, ...]
    z2: tuple[int, ...]
    polarity: str = ANTICOMPLETE

    @property
    def size(self) -> int:
        return min(len(self.z1), len(self.z2))

    def masks(self) -> tuple[int, int]:
        return to_mask(self.z1), to_mask(self.z2)

    def __str__(self) -> str:
        return f"{self.polarity}; {' '.join(map(str, self.z1))}; {' '.join(map(str, self.z2))}"


@dataclass(frozen=True)
class HighDegreeVertex:
    vertex: int
    degree: int


@dataclass(frozen=True)
class Exhausted:
    """No horn was found; ``reason`` says which searches ran and their caps."""

    reason: str


Outcome = Union[HighDegreeVertex, PurePairWitness, Embedding, Exhausted]


def verify_pure_pair(G: OrderedGraph, w: PurePairWitness) -> bool:
    z1, z2 = set(w.z1), set(w.z2)
    if not z1 or not z2 or z1 & z2:
        return False
    if any(not 0 <= v < G.n for v in z1 | z2):
        return False
    if w.polarity == ANTICOMPLETE:
        return all(not G.adjacent(a, b) for a in z1 for b in z2)
    if w.polarity == COMPLETE:
        return all(G.adjacent(a, b) for a in z1 for b in z2)
    return False


# -- exact lexicographic search ---------------------------------------------

class _Budget(Exception):
    pass


def _lex_pair_of_size(G: OrderedGraph, s: int, node_limit: Optional[int] = None):
    """Least ``(Z1, Z2)`` with ``|Z1| = |Z2| = s`` anticomplete, or None.

    Z1 is enumerated in combination order; Z2 is then the first ``s`` common
    non-neighbours. Raises ``_Budget`` if ``node_limit`` is exhausted.
    """
    n, rows = G.n, G.rows
    if s <= 0 or 2 * s > n:
        return None
    nodes = 0

    def rec(start: int, z1: int, cand: int, size: int):
        nonlocal nodes
        if size == s:
            return z1, first_k(cand, s)
        for v in range(start, n - (s - size) + 1):
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise _Budget
            nc = cand & ~rows[v] & ~(1 << v)
            if nc.bit_count() < s:
                continue
            r = rec(v + 1, z1 | 1 << v, nc, size + 1)
            if r is not None:
                return r
        return None

    return rec(0, 0, G.all_mask, 0)


# -- branch and bound ------------------------------------------------------

def _branch_bound(G: OrderedGraph, lower: int, floor: Optional[int], node_limit: int):
    """Three-way branching (Z1 / Z2 / discard) with a min-side bound.

    Returns (best size, z1 mask, z2 mask, proven).
    """
    rows = G.rows
    best = [lower, 0, 0]
    nodes = 0
    target = floor

    def rec(z1: int, z2: int, p1: int, p2: int, s1: int, s2: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise _Budget
        cur = min(s1, s2)
        if cur > best[0]:
            best[:] = [cur, z1, z2]
            if target is not None and cur >= target:
                return True
        live = p1 | p2
        bound = min(s1 + p1.bit_count(), s2 + p2.bit_count(), (s1 + s2 + live.bit_count()) // 2)
        if bound <= best[0] or not live:
            return False
        low = live & -live
        v = low.bit_length() - 1
        rest1, rest2 = p1 & ~low, p2 & ~low
        if p1 & low:
            if rec(z1 | low, z2, rest1, rest2 & ~rows[v], s1 + 1, s2):
                return True
        if p2 & low and z1:
            if rec(z1, z2 | low, rest1 & ~rows[v], rest2, s1, s2 + 1):
                return True
        return rec(z1, z2, rest1, rest2, s1, s2)

    try:
        rec(0, 0, G.all_mask, G.all_mask, 0, 0)
        proven = True
    except _Budget:
        proven = False
    return best[0], best[1], best[2], proven


# -- greedy ----------------------------------------------------------------

def _greedy(G: OrderedGraph, max_starts: int = 32) -> tuple[int, int, int]:
    """Grow Z1 by the vertex losing fewest common non-neighbours.

    Returns (size, z1 mask, z2 mask) with both sides trimmed to ``size``.
    """
    n, rows = G.n, G.rows
    if n < 2:
        return 0, 0, 0
    order = sorted(range(n), key=lambda v: (rows[v].bit_count(), v))
    starts = order if n <= 2 * max_starts else order[:max_starts]
    best = (0, 0, 0)
    for s0 in starts:
        z1 = 1 << s0
        cand = G.all_mask & ~rows[s0] & ~z1
        size1 = 1
        if min(size1, cand.bit_count()) > best[0]:
            best = (min(size1, cand.bit_count()), z1, cand)
        while cand.bit_count() > size1:
            pick, pick_cost = -1, None
            for u in range(n):
                if z1 >> u & 1:
                    continue
                cost = (rows[u] & cand).bit_count() + (cand >> u & 1)
                if pick_cost is None or cost < pick_cost:
                    pick, pick_cost = u, cost
                    if cost == 0:
                        break
            if pick < 0:
                break
            z1 |= 1 << pick
            cand &= ~rows[pick] & ~(1 << pick)
            size1 += 1
            val = min(size1, cand.bit_count())
            if val > best[0]:
                best = (val, z1, cand)
    s, z1, z2 = best
    return s, first_k(z1, s), first_k(z2, s)


@dataclass
class PairSearch:
    witness: Optional[PurePairWitness]
    proven_optimal: bool
    mode: str
    notes: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return self.witness.size if self.witness else 0


def _witness(z1: int, z2: int, polarity: str = ANTICOMPLETE) -> Optional[PurePairWitness]:
    if not z1 or not z2:
        return None
    return PurePairWitness(tuple(bits(z1)), tuple(bits(z2)), polarity)


def anticomplete_search(G: OrderedGraph, mode: str = "exact", floor: Optional[int] = None,
                        cap: int = EXACT_CAP, node_limit: int = 200_000,
                        max_starts: int = 32) -> PairSearch:
    """Anticomplete-pair search with provenance (optimality flag and notes)."""
    if mode not in ("exact", "branch_bound", "greedy"):
        raise InputError(f"unknown mode {mode!r}")
    if mode == "exact" and G.n > cap:
        raise CapabilityError(f"exact mode is capped at n <= {cap} (got n = {G.n})")
    gs, gz1, gz2 = _greedy(G, max_starts)
    if mode == "greedy":
        return PairSearch(_witness(gz1, gz2), False, mode)

    if mode == "exact":
        top = G.n // 2
        if floor is not None:
            r = _lex_pair_of_size(G, max(floor, 1))
            if r is not None:
                return PairSearch(_witness(*r), False, mode, [f"early exit at floor {floor}"])
            top = min(top, floor - 1)
        s, best = 0, None
        if gs > 0 and gs <= top:
            s, best = gs, (gz1, gz2)
        while s + 1 <= top:
            r = _lex_pair_of_size(G, s + 1)
            if r is None:
                break
            s, best = s + 1, r
        if s > 0:
            best = _lex_pair_of_size(G, s)
        return PairSearch(_witness(*best) if best else None, True, mode)

    # branch_bound
    if floor is not None and gs >= floor:
        return PairSearch(_witness(gz1, gz2), False, mode, [f"greedy reached floor {floor}"])
    s, z1, z2, proven = _branch_bound(G, gs, floor, node_limit)
    notes = [] if proven else [f"node limit {node_limit} reached"]
    if s <= gs:
        z1, z2 = gz1, gz2
    elif floor is not None and s >= floor:
        proven = False
    if s > 0:
        try:
            r = _lex_pair_of_size(G, s, node_limit)
            if r is not None:
                z1, z2 = r
        except _Budget:
            notes.append("canonical witness not computed (node limit)")
    return PairSearch(_witness(first_k(z1, s), first_k(z2, s)), proven, mode, notes)


def best_anticomplete_pair(G: OrderedGraph, mode: str = "exact", floor: Optional[int] = None,
                           cap: int = EXACT_CAP, node_limit: int = 200_000) -> Optional[PurePairWitness]:
    return anticomplete_search(G, mode, floor, cap, node_limit).witness


def best_pure_pair(G: OrderedGraph, mode: str = "exact", cap: int = EXACT_CAP,
                   node_limit: int = 200_000, max_starts: int = 32) -> PairSearch:
    """Better of the anticomplete pair in G and in its complement (ties: anticomplete)."""
    a = anticomplete_search(G, mode, cap=cap, node_limit=node_limit, max_starts=max_starts)
    c = anticomplete_search(G.complement(), mode, cap=cap, node_limit=node_limit,
                            max_starts=max_starts)
    if c.size > a.size:
        w = c.witness
        return PairSearch(PurePairWitness(w.z1, w.z2, COMPLETE), c.proven_optimal and a.proven_optimal,
                          mode, c.notes)
    return PairSearch(a.witness, a.proven_optimal and c.proven_optimal, mode, a.notes)


# -- alpha and omega -------------------------------------------------------

def _max_clique(G: OrderedGraph) -> int:
    rows = G.rows
    best = 0

    def colour_bound(P: int) -> list[tuple[int, int]]:
        # greedy colouring; returns (vertex, colour) in nondecreasing colour
        out = []
        colour = 0
        Q = P
        while Q:
            colour += 1
            avail = Q
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~rows[v] & ~low
                Q &= ~low
                out.append((v, colour))
        return out

    def expand(size: int, P: int) -> None:
        nonlocal best
        for v, col in reversed(colour_bound(P)):
            if size + col <= best:
                return
            expand(size + 1, P & rows[v])
            P &= ~(1 << v)
        if size > best:
            best = size

    expand(0, G.all_mask)
    return best


def alpha_omega(G: OrderedGraph, cap: int = ALPHA_OMEGA_CAP) -> tuple[int, int]:
    """Exact (independence number, clique number)."""
    if G.n > cap:
        raise CapabilityError(f"alpha_omega is capped at n <= {cap} (got n = {G.n})")
    return _max_clique(G.complement()), _max_clique(G)


# -- trichotomy ------------------------------------------------------------

def degree_threshold(n: int, eps: float) -> int:
    """Least integer degree that is at least ``eps * n``."""
    return ceil_exp2(log2(eps) + log2(n)) if n else 0


def pair_floor(n: int, c: float) -> int:
    """``ceil(n ** (1 - c))`` computed in log space."""
    return ceil_exp2((1 - c) * log2(n)) if n else 0


def high_degree_vertex(G: OrderedGraph, eps: float) -> Optional[HighDegreeVertex]:
    if not G.n:
        return None
    degs = G.degrees()
    d = max(degs)
    if d >= degree_threshold(G.n, eps):
        return HighDegreeVertex(degs.index(d), d)
    return None


def pair_horn(G: OrderedGraph, c: float, cap: int = EXACT_CAP,
              node_limit: int = 200_000) -> tuple[Optional[PurePairWitness], str]:
    """Anticomplete pair with both sides at least ``ceil(n^(1-c))``."""
    floor = pair_floor(G.n, c)
    if 2 * floor > G.n:
        return None, f"pair floor {floor} exceeds n/2"
    mode = "exact" if G.n <= cap else "branch_bound"
    res = anticomplete_search(G, mode, floor=floor, cap=cap, node_limit=node_limit)
    if res.witness is not None and res.size >= floor:
        return res.witness, ""
    status = "proven" if res.proven_optimal else "capped"
    return None, f"pair search {mode} best={res.size} floor={floor} ({status})"


def trichotomy_witness(G: OrderedGraph, T: OrderedGraph, eps: float, c: float,
                       theorem_mode: bool = True, cap: int = EXACT_CAP,
                       node_limit: int = 200_000) -> Outcome:
    """First horn found in the order: high degree, copy of ``T``, big anticomplete pair."""
    if not 0 < c <= 1 or not 0 < eps <= 1:
        raise InputError("need 0 < c <= 1 and 0 < eps <= 1")
    if theorem_mode and not is_ordered_forest(T):
        raise InputError("T must be an ordered forest in theorem mode")
    hd = high_degree_vertex(G, eps)
    if hd is not None:
        return hd
    emb = contains_ordered(G, T)
    if emb is not None:
        return emb
    w, why = pair_horn(G, c, cap, node_limit)
    if w is not None:
        return w
    return Exhausted(f"degree < {degree_threshold(G.n, eps)}; no copy of T; {why}")
