"""Leaf-covered blockades: the covering step, promotion of one block, and iteration.

Parameters ``(w, W, lambda, phi, mu, tau)`` are carried as base-2 logs so
that repeated halving and doubling is exact up to float rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .blockade import (
    Blockade, HomogResult, frac_ceil, homog2, is_band, maxdeg_matrix, measures,
)
from .core import (
    AnalysisError, InputError, OrderedGraph, PreconditionError, bits, ceil_exp2, covers_mask,
    floor_exp2, log2, log_le, max_degree_mask,
)


@dataclass(frozen=True)
class Params:
    """Base-2 logs of ``(w, W, lambda, phi, mu, tau)``."""

    w: float
    W: float
    lam: float
    phi: float
    mu: float
    tau: float

    @classmethod
    def of(cls, w: float, W: float, lam: float, phi: float, mu: float, tau: float) -> "Params":
        return cls(*(log2(x) for x in (w, W, lam, phi, mu, tau)))

    def values(self) -> tuple[float, ...]:
        return tuple(2.0 ** x for x in self.astuple())

    def astuple(self) -> tuple[float, ...]:
        return (self.w, self.W, self.lam, self.phi, self.mu, self.tau)

    def promoted(self) -> "Params":
        return Params(self.w - 2, self.W - 1, self.lam + 2, self.phi + 1, self.mu + 1, self.tau + 1)


@dataclass(frozen=True)
class LeafCovered:
    blockade: Blockade
    H: tuple[int, ...]
    I: tuple[int, ...]
    J: tuple[int, ...]
    params: Params
    covers: dict = field(default_factory=dict)   # (h, j) -> mask inside B_j

    def __post_init__(self) -> None:
        parts = set(self.H) | set(self.I) | set(self.J)
        if len(parts) != len(self.H) + len(self.I) + len(self.J) or parts != set(self.blockade.index):
            raise InputError("H, I, J must partition the blockade's index set")


@dataclass(frozen=True)
class Verdict:
    ok: bool
    bullet: int = 0
    message: str = ""


def _width_ok(sizes: Iterable[int], log_w: float) -> bool:
    return all(log_le(log_w, log2(s)) for s in sizes)


def verify_leaf_covered(G: OrderedGraph, L: LeafCovered, band_mode: str = "auto",
                        trials: int = 2000, seed: int = 0) -> Verdict:
    """Check the five defining bullets; report the first that fails."""
    B = L.blockade
    d = B.as_dict()
    p = L.params
    if L.H:
        subH = B.sub(L.H)
        if not _width_ok(subH.sizes(), p.w):
            return Verdict(False, 1, "width of the H blocks is below w")
        if not log_le(log2(measures(G, subH).linkage), p.lam):
            return Verdict(False, 1, "linkage of the H blocks exceeds lambda")
    if L.I and not _width_ok((d[i].bit_count() for i in L.I), p.W):
        return Verdict(False, 2, "width of the I blocks is below W")
    for h in L.H:
        for j in L.J:
            X = L.covers.get((h, j))
            if X is None or X & ~d[j]:
                return Verdict(False, 3, f"cover X_{h},{j} missing or not inside B_{j}")
            if not covers_mask(G, X, d[h]):
                return Verdict(False, 3, f"X_{h},{j} does not cover B_{h}")
            for i in L.H + L.I:
                if i != h and max_degree_mask(G, X, d[i]):
                    return Verdict(False, 3, f"X_{h},{j} is not anticomplete to B_{i}")
    IJ = tuple(sorted(L.I + L.J))
    if len(IJ) >= 2:
        chk = is_band(G, B.sub(IJ), 2.0 ** p.tau, 2.0 ** p.phi, 2.0 ** p.mu, band_mode, trials,
                      seed, log_tau=p.tau, strict=False)
        if not chk.ok:
            return Verdict(False, 4, f"band on I and J fails: {chk.violation}")
    for h in L.H:
        for i in IJ:
            if not log_le(log2(max_degree_mask(G, d[h], d[i])), p.tau + log2(d[i].bit_count())):
                return Verdict(False, 5, f"max-degree from B_{h} to B_{i} exceeds tau*|B_{i}|")
    return Verdict(True)


# -- the covering step -----------------------------------------------------

@dataclass
class MatchResult:
    blocks: dict[int, int]              # label -> B_i (B_0 may be empty when infeasible)
    covers: dict[int, int]              # j -> C_j
    zero: int
    H: tuple[int, ...]
    I: tuple[int, ...]
    J: tuple[int, ...]
    feasible: bool
    size_claim_ok: bool
    trace: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def blockade(self) -> Blockade:
        if not self.feasible:
            raise AnalysisError("covering step produced an empty block")
        labels = sorted(self.blocks)
        return Blockade(tuple(self.blocks[i] for i in labels), tuple(labels))


def _parts(A: Blockade, zero: int, H: Sequence[int], I: Sequence[int], J: Sequence[int]):
    H, I, J = tuple(sorted(H)), tuple(sorted(I)), tuple(sorted(J))
    allp = (zero,) + H + I + J
    if len(set(allp)) != len(allp) or set(allp) != set(A.index):
        raise InputError("{0}, H, I, J must partition the blockade's index set")
    return H, I, J


def _count_at_least(G: OrderedGraph, src: int, dst: int, log_x: float) -> int:
    """Vertices of ``src`` with at least ``2**log_x`` neighbours in ``dst``."""
    thr = ceil_exp2(log_x)
    out = 0
    for v in bits(src):
        if (G.rows[v] & dst).bit_count() >= thr:
            out |= 1 << v
    return out


def match_hypotheses(G: OrderedGraph, A: Blockade, zero: int, H, I, J, tau: float, phi: float,
                     mu: float, band_mode: str = "auto", log_tau: Optional[float] = None) -> list[str]:
    """Every failed hypothesis of the covering step, as readable inequalities."""
    k = len(A)
    lt = math.log2(tau) if log_tau is None else log_tau
    logn = log2(G.n)
    out = []
    if not 2 * k * mu <= 1:
        out.append(f"2k mu <= 1 (k={k}, mu={mu:.4g})")
    if not phi <= 0.5:
        out.append(f"phi <= 1/2 (phi={phi:.4g})")
    if not log_le(log2(4 * k * k) + lt, 0.0):
        out.append(f"4k^2 tau <= 1 (tau=2^{lt:.4g})")
    if not log_le(1 + k * log2(16 * k * k), phi * logn):
        out.append(f"|G|^phi >= 2(16k^2)^k (|G|^phi=2^{phi * logn:.4g})")
    core = (zero,) + tuple(I) + tuple(J)
    if len(core) >= 2:
        chk = is_band(G, A.sub(core), tau, phi, mu, band_mode, log_tau=lt, strict=False)
        if not chk.ok:
            out.append(f"tau is a (phi, mu)-band for blocks 0, I, J ({chk.violation})")
    d = A.as_dict()
    for h in H:
        for i in core:
            if not log_le(log2(max_degree_mask(G, d[h], d[i])), lt + log2(d[i].bit_count())):
                out.append(f"max-degree from A_{h} to A_{i} <= tau |A_{i}|")
    return out


def match_step(G: OrderedGraph, A: Blockade, zero: int, H: Sequence[int], I: Sequence[int],
               J: Sequence[int], tau: float, phi: float, mu: float, mode: str = "theoretical",
               band_mode: str = "auto", log_tau: Optional[float] = None) -> MatchResult:
    """Shrink block ``zero`` to a core that every ``J`` block can cover cleanly.

    Each cover ``C_j`` is grown greedily (most newly covered vertices, least
    label on ties).  A vertex may join only while every ``A_h`` with ``h`` in
    ``H`` or ``I`` keeps its damage within budget: ``|A_h|/(2k)`` vertices
    with a neighbour in the cover in theoretical mode, ``|A_h|/(2|J|)`` in
    practical mode.  Theoretical mode also caps ``|C_j|`` at ``1/(4k^2 tau)``.
    """
    if mode not in ("theoretical", "practical"):
        raise InputError(f"unknown mode {mode!r}")
    H, I, J = _parts(A, zero, H, I, J)
    k = len(A)
    n = G.n
    logn = log2(n)
    lt = math.log2(tau) if log_tau is None else log_tau
    warnings = match_hypotheses(G, A, zero, H, I, J, tau, phi, mu, band_mode, lt)
    if warnings and mode == "theoretical":
        raise PreconditionError(warnings)
    d = A.as_dict()
    size = {i: m.bit_count() for i, m in d.items()}

    # step (1): drop vertices heavy into some A_h, and from A_0 the ones light into some D_j
    D = {}
    for j in J + (zero,):
        heavy = 0
        for h in H:
            heavy |= _count_at_least(G, d[j], d[h], log2(2 * k) + lt + log2(size[h]))
        D[j] = d[j] & ~heavy
    light = 0
    for j in J:
        x_log = lt - phi * logn + log2(size[j])
        for v in bits(D[zero]):
            if log_le(log2((G.rows[v] & D[j]).bit_count()), x_log):
                light |= 1 << v
    D[zero] &= ~light
    trace: list[dict] = [{"step": "prune", "D0": D[zero].bit_count(),
                          **{f"D{j}": D[j].bit_count() for j in J}}]

    # step (2), once per j: greedy cover of the current target Y
    damage_div = 2 * k if mode == "theoretical" else 2 * max(len(J), 1)
    budget = {h: floor_exp2(log2(size[h]) - log2(damage_div)) for h in H + I}
    count_cap = floor_exp2(-(log2(4 * k * k) + lt)) if mode == "theoretical" else None
    hit = {h: 0 for h in H + I}
    covers: dict[int, int] = {}
    Y = D[zero]
    for j in J:
        X = 0
        covered = 0
        ysize = Y.bit_count()
        target = ceil_exp2(log2(ysize) - phi * logn - 1) if ysize else 0
        need_gain = ceil_exp2(lt + log2(ysize) - 1 - phi * logn) if ysize else 0
        min_gain = None
        branch = "maximal"
        while True:
            if ysize and 2 * covered.bit_count() >= ysize:
                branch = "half"
                break
            if ysize and covered.bit_count() >= target:
                branch = "target"
                break
            if count_cap is not None and X.bit_count() >= count_cap:
                break
            free = Y & ~covered
            best_v, best_gain = -1, 0
            for v in bits(D[j] & ~X):
                gain = (G.rows[v] & free).bit_count()
                if gain <= best_gain:
                    continue
                if any(((hit[h] | (G.rows[v] & d[h])).bit_count() > budget[h]) for h in hit):
                    continue
                best_v, best_gain = v, gain
            if best_v < 0:
                break
            X |= 1 << best_v
            covered |= G.rows[best_v] & Y
            for h in hit:
                hit[h] |= G.rows[best_v] & d[h]
            min_gain = best_gain if min_gain is None else min(min_gain, best_gain)
        covers[j] = X
        trace.append({"step": "cover", "j": j, "branch": branch, "cover_size": X.bit_count(),
                      "Y": ysize, "Y_covered": covered.bit_count(), "target": target,
                      "min_gain": min_gain, "claim_gain": need_gain,
                      "claim_ok": covered.bit_count() >= ceil_exp2(
                          log2(ysize) - phi * logn - log2(16 * k * k)) if ysize else True})
        Y = covered

    blocks = dict(d)
    blocks[zero] = Y
    for h in H + I:
        blocks[h] = d[h] & ~hit[h]
    feasible = all(m for m in blocks.values())
    size_ok = log_le(log2(size[zero]) - k * phi * logn, log2(Y.bit_count())) and all(
        2 * blocks[h].bit_count() >= size[h] for h in H + I)
    return MatchResult(blocks, covers, zero, H, I, J, feasible, size_ok, trace, warnings)


@dataclass(frozen=True)
class BulletReport:
    sizes: bool
    covers: bool
    band: bool
    maxdeg_into_IJ: bool
    maxdeg_zero_to_H: bool
    detail: str = ""

    @property
    def all(self) -> bool:
        return self.sizes and self.covers and self.band and self.maxdeg_into_IJ and self.maxdeg_zero_to_H


def match_bullets(G: OrderedGraph, A: Blockade, res: MatchResult, tau: float, phi: float,
                  mu: float, band_mode: str = "auto", log_tau: Optional[float] = None) -> BulletReport:
    """Check the five conclusions of the covering step independently."""
    k = len(A)
    logn = log2(G.n)
    lt = math.log2(tau) if log_tau is None else log_tau
    a = A.as_dict()
    b = res.blocks
    z = res.zero
    notes = []
    sizes = log_le(log2(a[z].bit_count()) - k * phi * logn, log2(b[z].bit_count()))
    sizes &= all(2 * b[i].bit_count() >= a[i].bit_count() and b[i] & ~a[i] == 0 for i in res.H + res.I)
    sizes &= all(b[j] == a[j] for j in res.J)
    if not sizes:
        notes.append("size bullet")
    cov = bool(b[z]) or not res.J
    for j in res.J:
        C = res.covers[j]
        cov &= C & ~a[j] == 0 and covers_mask(G, C, b[z])
        cov &= all(max_degree_mask(G, C, b[i]) == 0 for i in res.H + res.I if b[i])
    if not cov:
        notes.append("cover bullet")
    band = True
    IJ = tuple(sorted(res.I + res.J))
    if len(IJ) >= 2 and all(b[i] for i in IJ):
        sub = Blockade(tuple(b[i] for i in IJ), IJ)
        chk = is_band(G, sub, 2 * 2.0 ** lt, 2 * phi, 2 * mu, band_mode, log_tau=lt + 1)
        band = chk.ok
        if not band:
            notes.append(f"band bullet ({chk.violation})")
    md = True
    for h in res.H + (z,):
        for i in IJ:
            if b[h] and b[i]:
                md &= log_le(log2(max_degree_mask(G, b[h], b[i])), lt + 1 + log2(b[i].bit_count()))
    if not md:
        notes.append("max-degree into I and J")
    mz = True
    for h in res.H:
        if b[z] and b[h]:
            mz &= log_le(log2(max_degree_mask(G, b[z], b[h])), log2(4 * k) + lt + log2(b[h].bit_count()))
    if not mz:
        notes.append("max-degree from block 0 to H")
    return BulletReport(sizes, cov, band, md, mz, "; ".join(notes))


# -- promotion and iteration -----------------------------------------------

def more_leaves(G: OrderedGraph, L: LeafCovered, g: int, mode: str = "theoretical",
                band_mode: str = "auto") -> tuple[LeafCovered, MatchResult]:
    """Move ``g`` from ``I`` to ``H``; parameters become ``(w/4, W/2, 4l, 2phi, 2mu, 2tau)``."""
    if g not in L.I:
        raise InputError(f"block {g} is not in I")
    p = L.params
    k = len(L.blockade)
    logn = log2(G.n)
    extra = []
    if not log_le(log2(2 * k) + p.tau, p.lam):
        extra.append("lambda >= 2k tau")
    if not log_le(p.w - 2, p.W - k * 2.0 ** p.phi * logn):
        extra.append("|G|^(-k phi) W >= w/4")
    if extra and mode == "theoretical":
        raise PreconditionError(extra)
    I_rest = tuple(i for i in L.I if i != g)
    res = match_step(G, L.blockade, g, L.H, I_rest, L.J, 2.0 ** p.tau, 2.0 ** p.phi, 2.0 ** p.mu,
                     mode, band_mode, log_tau=p.tau)
    res.warnings.extend(extra)
    if not res.feasible:
        raise AnalysisError(f"promoting block {g} emptied a block: {res.trace[-1]}")
    blocks = dict(res.blocks)
    B0 = blocks[g]
    thr = floor_exp2(log2(8 * k) + p.tau + log2(B0.bit_count()))
    for h in L.H:
        keep = 0
        for v in bits(blocks[h]):
            if (G.rows[v] & B0).bit_count() <= thr:
                keep |= 1 << v
        if not keep:
            raise AnalysisError(f"degree filter emptied block {h}")
        blocks[h] = keep
    labels = sorted(blocks)
    newB = Blockade(tuple(blocks[i] for i in labels), tuple(labels))
    covers = {hj: X for hj, X in L.covers.items()}
    for j in L.J:
        covers[g, j] = res.covers[j]
    newH = tuple(sorted(L.H + (g,)))
    return LeafCovered(newB, newH, I_rest, L.J, p.promoted(), covers), res


def closed_form(G: OrderedGraph, W: float, k: int, tau: float, phi: float, mu: float,
                steps: int) -> Params:
    """Parameters after ``steps`` promotions, from the closed form."""
    logn = log2(G.n)
    s = steps
    return Params(-2 * s - k * 2 ** (k - 1) * phi * logn + log2(W), log2(W) - s,
                  2 * s + log2(2 * k * tau), s + log2(phi), s + log2(mu), s + log2(tau))


@dataclass
class LeafCoverRun:
    structure: LeafCovered
    trace: list[Params]
    steps: list[MatchResult]
    warnings: list[str]


def leaf_cover_all(G: OrderedGraph, A: Blockade, H: Sequence[int], I: Sequence[int],
                   J: Sequence[int], tau: float, phi: float, mu: float, mode: str = "theoretical",
                   band_mode: str = "auto") -> LeafCoverRun:
    """Promote every block of ``H`` (a subset of ``I``) in increasing order."""
    H, I, J = tuple(sorted(H)), tuple(sorted(I)), tuple(sorted(J))
    if not set(H) <= set(I):
        raise InputError("H must be a subset of I")
    k = len(A)
    logn = log2(G.n)
    warnings = []
    checks = [
        (k * 2 ** k * mu <= 1, "k 2^k mu <= 1"),
        (phi * 2 ** k <= 1, "phi 2^k <= 1"),
        (k * k * 2 ** (k + 1) * tau <= 1, "k^2 2^(k+1) tau <= 1"),
        (log_le(1 + k * log2(16 * k * k), phi * logn), "|G|^phi >= 2(16k^2)^k"),
    ]
    if len(A) >= 2:
        chk = is_band(G, A, tau, phi, mu, band_mode, strict=False)
        checks.append((chk.ok, f"tau is a (phi, mu)-band for A ({chk.violation})"))
    warnings = [m for ok, m in checks if not ok]
    if warnings and mode == "theoretical":
        raise PreconditionError(warnings)
    sizes = A.as_dict()
    W = min((sizes[i].bit_count() for i in I), default=G.n)
    p = Params(log2(W) - k * 2 ** (k - 1) * phi * logn, log2(W), log2(2 * k * tau),
               log2(phi), log2(mu), log2(tau))
    L = LeafCovered(A, (), I, J, p, {})
    trace, steps = [p], []
    for g in H:
        L, res = more_leaves(G, L, g, mode, band_mode)
        warnings.extend(w for w in res.warnings if w not in warnings)
        trace.append(L.params)
        steps.append(res)
    return LeafCoverRun(L, trace, steps, warnings)


# -- composed: selection plus covers for every partition -------------------

@dataclass
class FullLeafCover:
    outcome: str                       # "selection" or "anticomplete"
    homog: HomogResult
    selection: tuple[int, ...]
    phi: float
    mu: float
    Lambda: float
    Sigma: float
    mode: str
    band_mode: str = "auto"
    graph: Optional[OrderedGraph] = None

    def partition(self, H: Iterable[int]) -> LeafCoverRun:
        """Certified ``(B_h : h in H)`` plus covers from the rest of the selection."""
        if self.outcome != "selection":
            raise AnalysisError("no selection: an anticomplete pair was found instead")
        H = tuple(sorted(H))
        if not set(H) <= set(self.selection):
            raise InputError("H must be a subset of the selection")
        J = tuple(i for i in self.selection if i not in H)
        cert = self.homog.certificate
        return leaf_cover_all(self.graph, self.homog.blockade, H, H, J, cert.tau, self.phi,
                              self.mu, self.mode, self.band_mode)


def derived_params(k: int, sigma: float, sigma_prime: float, lambda_prime: float) -> tuple[float, float, float, float]:
    """``(Sigma, phi, mu, Lambda)`` as fixed for the composed construction."""
    Sigma = (sigma + sigma_prime) / 2
    phi = (sigma_prime - Sigma) / (k * 2 ** (k - 1) + 1) if k else sigma_prime - Sigma
    mu = 2.0 ** -k / k if k else 1.0
    Lam = lambda_prime * 4.0 ** -k / (2 * k) if k else lambda_prime
    return Sigma, phi, mu, Lam


def full_leaf_cover(G: OrderedGraph, A: Blockade, k: int, c: float, sigma: float,
                    sigma_prime: float, lambda_prime: float, mode: str = "theoretical",
                    phi: Optional[float] = None, mu: Optional[float] = None,
                    Lambda: Optional[float] = None, band_mode: str = "auto",
                    seed: int = 0) -> FullLeafCover:
    """Select ``k`` blocks with a band, ready to be split into leaves and covers.

    ``phi``, ``mu`` and ``Lambda`` default to the derived values; practical
    runs may override them since the derived ones are far too small.
    """
    if not sigma < sigma_prime < c:
        raise InputError("need sigma < sigma' < c")
    Sigma, dphi, dmu, dLam = derived_params(k, sigma, sigma_prime, lambda_prime)
    phi = dphi if phi is None else phi
    mu = dmu if mu is None else mu
    Lambda = dLam if Lambda is None else Lambda
    if k == 0:
        empty = HomogResult("band", Blockade((), ()))
        return FullLeafCover("selection", empty, (), phi, mu, Lambda, Sigma, mode, band_mode, G)
    res = homog2(G, A, k, c, phi, mu, sigma, Sigma, Lambda, mode, band_mode, seed=seed)
    if res.anticomplete:
        return FullLeafCover("anticomplete", res, (), phi, mu, Lambda, Sigma, mode, band_mode, G)
    return FullLeafCover("selection", res, tuple(res.blockade.index), phi, mu, Lambda, Sigma,
                         mode, band_mode, G)
