"""Rainbow tree embedding, the sparse trichotomy, and the dense/sparse reduction.

The recursive embedding needs blockades whose length grows like a tower in
the tree size, so at desk scale it usually gives up; every driver therefore
falls back through ``theoretical -> practical -> direct`` and records which
stage produced the answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .blockade import Blockade, equal_blockade, measures, theoretical_params
from .core import (
    AnalysisError, CapabilityError, InputError, OrderedGraph, PreconditionError, bits, build,
    lowest, log2, log_le, to_mask,
)
from .leafcover import full_leaf_cover
from .patterns import (
    Embedding, components, contains_ordered, find_rainbow_copy, is_ordered_forest,
    is_ordered_tree, is_valid_embedding,
)
from .purepair import (
    ANTICOMPLETE, COMPLETE, EXACT_CAP, Exhausted, HighDegreeVertex, Outcome, PurePairWitness,
    high_degree_vertex, pair_horn, verify_pure_pair,
)

STAGES = ("theoretical", "practical", "direct")

# practical-mode parameters for the leaf-cover machinery (the derived ones are far too small)
PRACTICAL_PHI = 0.5
PRACTICAL_MU = 0.4
PRACTICAL_LAMBDA = 1.0


class _GiveUp(Exception):
    pass


@dataclass
class EmbedResult:
    embedding: Optional[Embedding]
    stage: Optional[str]
    trace: list[str] = field(default_factory=list)


def practical_length(s: int) -> int:
    """Blocks used for a tree on ``s`` vertices: ``L(1) = 1``, ``L(s) = 2 L(s-1) + 1``."""
    return (1 << s) - 1 if s >= 1 else 0


def choose_leaf(T: OrderedGraph) -> tuple[int, int]:
    """The leaf with the largest position, with its unique neighbour."""
    for v in range(T.n - 1, -1, -1):
        if T.degree(v) == 1:
            return v, lowest(T.rows[v])
    raise InputError("tree has no leaf")


def _recurse(G: OrderedGraph, A: Blockade, T: OrderedGraph, c: float, sigma: float,
             trace: list[str], depth: int, seed: int) -> tuple[int, ...]:
    pad = "  " * depth
    if T.n == 0:
        return ()
    if T.n == 1:
        return (lowest(A.blocks[0]),)
    v, u = choose_leaf(T)
    keep = [x for x in range(T.n) if x != v]
    Tp, _ = T.induced(keep)
    Kp = practical_length(Tp.n)
    k = 2 * Kp + 1
    trace.append(f"{pad}|T|={T.n} leaf={v} neighbour={u} need k={k} blocks (have {len(A)})")
    if len(A) < k:
        raise _GiveUp(f"blockade too short: {len(A)} < {k}")
    sigma_p = (sigma + c) / 2
    flc = full_leaf_cover(G, A, k, c, sigma, sigma_p, 1.0, "practical", phi=PRACTICAL_PHI,
                          mu=PRACTICAL_MU, Lambda=PRACTICAL_LAMBDA, seed=seed)
    if flc.outcome != "selection":
        raise _GiveUp("an anticomplete pair appeared during selection")
    sel = flc.selection
    H = sel[1::2]
    J = sel[0::2]
    run = flc.partition(H)
    L = run.structure
    trace.append(f"{pad}selection={list(sel)} H={list(H)} J={list(J)}")
    sub = L.blockade.sub(H)
    emb_p = _recurse(G, sub, Tp, c, sigma_p, trace, depth + 1, seed)
    img = {x: emb_p[i] for i, x in enumerate(keep)}
    block_of = {}
    for h, m in zip(sub.index, sub.blocks):
        for y in bits(m):
            block_of[y] = h
    before = [block_of[img[x]] for x in keep if x < v]
    after = [block_of[img[x]] for x in keep if x > v]
    lo = max(before) if before else -math.inf
    hi = min(after) if after else math.inf
    cands = [j for j in J if lo < j < hi]
    if not cands:
        raise _GiveUp("no J block between the neighbouring images")
    j = cands[0]
    hu = block_of[img[u]]
    X = L.covers[hu, j]
    choice = X & G.rows[img[u]]
    if not choice:
        raise _GiveUp(f"cover X_{hu},{j} has no neighbour of the image of {u}")
    vp = lowest(choice)
    img[v] = vp
    trace.append(f"{pad}leaf {v} -> {vp} in block {j}")
    return tuple(img[x] for x in range(T.n))


def embed_rainbow_tree(G: OrderedGraph, A: Blockade, T: OrderedGraph, c: float, sigma: float,
                       mode: str = "practical", fallback: bool = True, seed: int = 0) -> EmbedResult:
    """Rainbow copy of the ordered tree ``T`` in the blockade ``A``."""
    if not is_ordered_tree(T):
        raise InputError("T must be an ordered tree")
    if not 0 < sigma < c <= 1:
        raise InputError("need 0 < sigma < c <= 1")
    if mode not in STAGES:
        raise InputError(f"unknown mode {mode!r}")
    A.check_host(G)
    trace: list[str] = []
    for stage in STAGES[STAGES.index(mode):]:
        try:
            if stage == "theoretical":
                rep = theoretical_params(0.5, 0.5, tree_size=T.n)
                need = rep.rainbow_log2_lengths[-1] if rep.rainbow_log2_lengths else 0.0
                if T.n > 1 and not log_le(need, log2(len(A))):
                    raise PreconditionError([f"blockade length >= 2^{need:.4g} required (have {len(A)})"])
                emb = _recurse(G, A, T, c, sigma, trace, 0, seed)
            elif stage == "practical":
                emb = _recurse(G, A, T, c, sigma, trace, 0, seed)
            else:
                e = find_rainbow_copy(G, A, T)
                emb = e.map if e is not None else None
                if emb is None:
                    trace.append("direct: no rainbow copy")
                    return EmbedResult(None, "direct", trace)
            if not is_valid_embedding(G, T, emb, A.blocks):
                raise _GiveUp("recursion produced an invalid embedding")
            trace.append(f"{stage}: success")
            return EmbedResult(Embedding(tuple(emb)), stage, trace)
        except (_GiveUp, PreconditionError, CapabilityError, AnalysisError) as exc:
            trace.append(f"{stage}: gave up ({exc})")
            if not fallback:
                if isinstance(exc, _GiveUp):
                    return EmbedResult(None, None, trace)
                raise
    return EmbedResult(None, None, trace)


# -- forests ---------------------------------------------------------------

def augment_to_tree(T: OrderedGraph) -> OrderedGraph:
    """A tree containing ``T`` as its first ``|T|`` vertices.

    If ``T`` has several components, one new last vertex is joined to the
    least vertex of each component.
    """
    if not is_ordered_forest(T):
        raise InputError("T must be an ordered forest")
    comps = components(T)
    if len(comps) <= 1 and T.n >= 1:
        return T
    n = T.n
    return build(n + 1, T.edges() + [(comp[0], n) for comp in comps])


@dataclass
class TrichotomyResult:
    outcome: Outcome
    stage: str
    params: dict
    trace: list[str] = field(default_factory=list)

    @property
    def exhausted(self) -> bool:
        return isinstance(self.outcome, Exhausted)


def verysparse_witness(G: OrderedGraph, T: OrderedGraph, c: float, eps: float = 0.5,
                       mode: str = "practical", cap: int = EXACT_CAP, node_limit: int = 200_000,
                       blocks: Optional[int] = None, seed: int = 0) -> TrichotomyResult:
    """High-degree vertex, copy of ``T``, or large anticomplete pair, in that order.

    The copy of ``T`` is first sought as a rainbow copy of the augmented tree
    in an equal blockade, then by a plain ordered search.
    """
    if not 0 < c <= 1 or not 0 < eps <= 1:
        raise InputError("need 0 < c <= 1 and 0 < eps <= 1")
    Ts = augment_to_tree(T)
    sigma = c / 2
    n = G.n
    K = blocks if blocks is not None else practical_length(Ts.n)
    K = max(1, min(K, n)) if n else 0
    params = {"sigma": sigma, "eps": eps, "K": K, "tree_size": Ts.n,
              "degree_threshold": None, "pair_floor": None}
    trace: list[str] = []
    from .purepair import degree_threshold, pair_floor
    params["degree_threshold"] = degree_threshold(n, eps)
    params["pair_floor"] = pair_floor(n, c)
    hd = high_degree_vertex(G, eps)
    if hd is not None:
        return TrichotomyResult(hd, "degree", params, trace)
    if n and K:
        B = equal_blockade(G, K)
        m = measures(G, B)
        params["width"], params["shrinkage"], params["linkage"] = m.width, m.shrinkage, m.linkage
        if T.n:
            res = embed_rainbow_tree(G, B, Ts, c, sigma, mode, seed=seed)
            trace += res.trace
            if res.embedding is not None:
                emb = Embedding(res.embedding.map[:T.n])
                return TrichotomyResult(emb, f"rainbow/{res.stage}", params, trace)
    emb = contains_ordered(G, T)
    if emb is not None:
        return TrichotomyResult(emb, "copy", params, trace)
    w, why = pair_horn(G, c, cap, node_limit)
    if w is not None:
        return TrichotomyResult(w, "pair", params, trace)
    return TrichotomyResult(
        Exhausted(f"degree < {params['degree_threshold']}; no copy of T; {why}"), "exhausted",
        params, trace)


# -- dense/sparse reduction ------------------------------------------------

@dataclass(frozen=True)
class Extraction:
    X: tuple[int, ...]
    side: str                # "sparse" or "dense"
    delta: float


def _peel(G: OrderedGraph, eps: float) -> int:
    alive = G.all_mask
    while alive:
        size = alive.bit_count()
        bound = log2(eps) + log2(size)
        worst, wdeg = -1, -1
        for v in bits(alive):
            d = (G.rows[v] & alive).bit_count()
            if d > wdeg:
                worst, wdeg = v, d
        if not log_le(bound, log2(wdeg)):
            return alive           # every degree is below eps * |X|
        alive &= ~(1 << worst)
    return alive


def satisfies_degree_condition(G: OrderedGraph, X: int, eps: float) -> bool:
    size = X.bit_count()
    bound = log2(eps) + log2(size)
    return all(not log_le(bound, log2((G.rows[v] & X).bit_count())) for v in bits(X))


def rodl_extract(G: OrderedGraph, eps: float) -> Extraction:
    """Greedy stand-in for the dense/sparse extraction: peel max-degree vertices.

    Both ``G`` and its complement are peeled; the larger survivor wins, the
    sparse side on ties.  No size guarantee is claimed.
    """
    if not 0 < eps <= 1:
        raise InputError("need 0 < eps <= 1")
    if G.n == 0:
        return Extraction((), "sparse", 0.0)
    xs = _peel(G, eps)
    xd = _peel(G.complement(), eps)
    if xd.bit_count() > xs.bit_count():
        X, side = xd, "dense"
    else:
        X, side = xs, "sparse"
    return Extraction(tuple(bits(X)), side, X.bit_count() / G.n)


@dataclass
class MainPairResult:
    witness: Optional[PurePairWitness]
    diagnostic: Optional[tuple[str, Embedding]]
    extraction: Optional[Extraction]
    inner: Optional[TrichotomyResult]
    target: float

    @property
    def found(self) -> bool:
        return self.witness is not None


def main_pure_pair(G: OrderedGraph, T: OrderedGraph, c: float, eps: float = 0.5,
                   theorem_mode: bool = True, mode: str = "practical", cap: int = EXACT_CAP,
                   node_limit: int = 200_000, seed: int = 0) -> MainPairResult:
    """Pure pair in a graph that excludes ``T`` and its complement.

    If ``G`` contains ``T`` or its complement, the copy is returned as a
    diagnostic; in theorem mode the search then stops, otherwise it goes on.
    """
    if theorem_mode and not is_ordered_forest(T):
        raise InputError("T must be an ordered forest in theorem mode")
    if not 0 < c <= 1 or not 0 < eps <= 1:
        raise InputError("need 0 < c <= 1 and 0 < eps <= 1")
    target = G.n ** (1 - c) if G.n else 0.0
    diag = None
    for tag, P in (("T", T), ("complement of T", T.complement())):
        e = contains_ordered(G, P)
        if e is not None:
            diag = (tag, e)
            break
    if diag is not None and theorem_mode:
        return MainPairResult(None, diag, None, None, target)
    if G.n < 2:
        return MainPairResult(None, diag, None, None, target)
    ex = rodl_extract(G, eps)
    if len(ex.X) == 1:
        pol = COMPLETE if G.adjacent(0, 1) else ANTICOMPLETE
        return MainPairResult(PurePairWitness((0,), (1,), pol), diag, ex, None, target)
    host = G if ex.side == "sparse" else G.complement()
    H, labels = host.induced(ex.X)
    if theorem_mode or is_ordered_forest(T):
        inner = verysparse_witness(H, T, c, eps, mode, cap, node_limit, seed=seed)
        out = inner.outcome
    else:
        inner = None
        w, why = pair_horn(H, c, cap, node_limit)
        out = w if w is not None else Exhausted(why)
    witness = None
    if isinstance(out, PurePairWitness):
        pol = ANTICOMPLETE if ex.side == "sparse" else COMPLETE
        witness = PurePairWitness(tuple(labels[x] for x in out.z1), tuple(labels[x] for x in out.z2), pol)
        if not verify_pure_pair(G, witness):
            raise AnalysisError("lifted pair failed verification")
    return MainPairResult(witness, diag, ex, inner, target)
