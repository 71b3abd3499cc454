"""Blockades, their measures, shrink-resistance and bands.

Every comparison against a power of ``|G|`` is made in base-2 log space
(see :data:`ordpure.core.LOG_TOL`).  Fractional size thresholds such as
``mu * |B|`` are rounded up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import (
    AnalysisError, CapabilityError, InputError, OrderedGraph, PreconditionError, bits,
    ceil_exp2, log2, log_le, log_lt, max_degree_mask, to_mask,
)

EXACT_BLOCK_CAP = 14
RAMSEY_EXACT_CAP = 20
DEFAULT_TRIALS = 2000


@dataclass(frozen=True)
class Blockade:
    """Blocks as vertex masks, listed in order, labelled by ``index``."""

    blocks: tuple[int, ...]
    index: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != len(self.index):
            raise InputError("one label per block required")
        if any(b >= a for a, b in zip(self.index[1:], self.index)):
            raise InputError("block labels must be strictly increasing")
        prev_max = -1
        for m in self.blocks:
            if m <= 0:
                raise InputError("blocks must be nonempty")
            lo = (m & -m).bit_length() - 1
            if lo <= prev_max:
                raise InputError("blocks must be disjoint and order-separated")
            prev_max = m.bit_length() - 1

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int] | int], index: Optional[Iterable[int]] = None) -> "Blockade":
        masks = tuple(b if isinstance(b, int) else to_mask(b) for b in blocks)
        idx = tuple(index) if index is not None else tuple(range(1, len(masks) + 1))
        return cls(masks, idx)

    def __len__(self) -> int:
        return len(self.blocks)

    def block(self, label: int) -> int:
        return self.blocks[self.index.index(label)]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.index, self.blocks))

    def sizes(self) -> list[int]:
        return [m.bit_count() for m in self.blocks]

    def sub(self, labels: Iterable[int]) -> "Blockade":
        wanted = sorted(set(labels))
        d = self.as_dict()
        return Blockade(tuple(d[i] for i in wanted), tuple(wanted))

    def contract(self, replace: dict[int, int]) -> "Blockade":
        """Replace some blocks by nonempty subsets of themselves."""
        d = self.as_dict()
        for i, m in replace.items():
            if m & ~d[i]:
                raise InputError(f"contraction of block {i} is not a subset")
            d[i] = m
        return Blockade(tuple(d[i] for i in self.index), self.index)

    def check_host(self, G: OrderedGraph) -> None:
        if any(m >> G.n for m in self.blocks):
            raise InputError("blockade refers to vertices outside the graph")

    def lists(self) -> list[list[int]]:
        return [list(bits(m)) for m in self.blocks]


def equal_blockade(G: OrderedGraph, K: int) -> Blockade:
    """``K`` consecutive intervals whose sizes differ by at most one."""
    if K < 1 or G.n < K:
        raise InputError(f"need 1 <= K <= |G| (K = {K}, |G| = {G.n})")
    q, r = divmod(G.n, K)
    blocks, start = [], 0
    for i in range(K):
        size = q + (1 if i < r else 0)
        blocks.append(((1 << size) - 1) << start)
        start += size
    return Blockade(tuple(blocks), tuple(range(1, K + 1)))


# -- measures --------------------------------------------------------------

@dataclass(frozen=True)
class BlockadeMeasures:
    width: int
    shrinkage: float
    linkage: float
    maxdeg: dict[tuple[int, int], int]
    log_maxdeg_product: float


def maxdeg_matrix(G: OrderedGraph, B: Blockade) -> dict[tuple[int, int], int]:
    d = {}
    for i, bi in zip(B.index, B.blocks):
        for j, bj in zip(B.index, B.blocks):
            d[i, j] = 0 if i == j else max_degree_mask(G, bi, bj)
    return d


def shrinkage_of(n: int, width: int) -> float:
    if n < 2:
        return 0.0
    return 1.0 - math.log2(width) / math.log2(n)


def measures(G: OrderedGraph, B: Blockade) -> BlockadeMeasures:
    B.check_host(G)
    if not B.blocks:
        return BlockadeMeasures(G.n, 0.0, 0.0, {}, 0.0)
    sizes = dict(zip(B.index, B.sizes()))
    w = min(sizes.values())
    d = maxdeg_matrix(G, B)
    lam = 0.0
    logprod = 0.0
    for (i, j), v in d.items():
        if i == j:
            continue
        lam = max(lam, v / sizes[j])
        logprod += log2(v)
    return BlockadeMeasures(w, shrinkage_of(G.n, w), lam, d, logprod)


def linkage(G: OrderedGraph, B: Blockade) -> float:
    return measures(G, B).linkage


def width(B: Blockade, n: int) -> int:
    return min(B.sizes()) if B.blocks else n


# -- sub-pair search shared by resistance and band checks -------------------

def frac_ceil(mu: float, size: int) -> int:
    """``ceil(mu * size)`` in log space."""
    return min(size, ceil_exp2(log2(mu) + log2(size)))


@dataclass(frozen=True)
class Counterexample:
    h: int
    j: int
    X: int
    Y: int
    maxdeg: int


def _worst_x(G: OrderedGraph, bh: int, ym: int, mh: int) -> tuple[int, int]:
    """The ``mh`` vertices of ``bh`` with fewest neighbours in ``ym`` (ties: least)."""
    degs = sorted(((G.rows[v] & ym).bit_count(), v) for v in bits(bh))[:mh]
    return to_mask(v for _, v in degs), degs[-1][0]


def _search_low_pair(G: OrderedGraph, bh: int, bj: int, mh: int, mj: int, log_thr: float,
                     mode: str, rng: Optional[np.random.Generator], trials: int):
    """First (X, Y) with |X| = mh, |Y| = mj and max-degree <= 2**log_thr.

    For fixed Y the worst X is the ``mh`` lowest-degree vertices into Y, and
    max-degree only grows with X and Y, so exact mode enumerates Y of size
    exactly ``mj`` in combination order.
    """
    verts = list(bits(bj))
    if mode == "exact":
        ys: Iterable = combinations(verts, mj)
    else:
        ys = (sorted(rng.choice(verts, size=mj, replace=False).tolist()) for _ in range(trials))
    for Y in ys:
        ym = to_mask(Y)
        xm, val = _worst_x(G, bh, ym, mh)
        if log_le(log2(val), log_thr):
            return xm, ym, val
    return None


def _check_mode(B: Blockade, mode: str, cap: int) -> str:
    if mode == "auto":
        return "exact" if max(B.sizes(), default=0) <= cap else "sampled"
    if mode == "exact" and max(B.sizes(), default=0) > cap:
        raise CapabilityError(f"exact checking is capped at block size {cap}")
    if mode not in ("exact", "sampled"):
        raise InputError(f"unknown check mode {mode!r}")
    return mode


@dataclass(frozen=True)
class ResistanceCheck:
    ok: bool
    mode: str
    counterexample: Optional[Counterexample] = None


def find_counterexample(G: OrderedGraph, B: Blockade, phi: float, mu: float, mode: str = "exact",
                        trials: int = DEFAULT_TRIALS, seed: int = 0,
                        cap: int = EXACT_BLOCK_CAP) -> ResistanceCheck:
    """Least ``(h, j)`` then least ``Y`` violating ``(phi, mu)``-shrink-resistance."""
    mode = _check_mode(B, mode, cap)
    rng = np.random.Generator(np.random.Philox(seed)) if mode == "sampled" else None
    d = maxdeg_matrix(G, B)
    logn = log2(G.n)
    for h, bh in zip(B.index, B.blocks):
        for j, bj in zip(B.index, B.blocks):
            if h == j:
                continue
            thr = log2(d[h, j]) - phi * logn
            mh, mj = frac_ceil(mu, bh.bit_count()), frac_ceil(mu, bj.bit_count())
            hit = _search_low_pair(G, bh, bj, mh, mj, thr, mode, rng, trials)
            if hit:
                return ResistanceCheck(False, mode, Counterexample(h, j, hit[0], hit[1], hit[2]))
    return ResistanceCheck(True, mode)


def is_shrink_resistant(G: OrderedGraph, B: Blockade, phi: float, mu: float, mode: str = "exact",
                        trials: int = DEFAULT_TRIALS, seed: int = 0,
                        cap: int = EXACT_BLOCK_CAP) -> ResistanceCheck:
    return find_counterexample(G, B, phi, mu, mode, trials, seed, cap)


# -- shrink_resist (falsification loop) -------------------------------------

@dataclass
class ShrinkResult:
    outcome: str                      # "resistant" or "anticomplete"
    blockade: Blockade
    pair: Optional[tuple[int, int]] = None
    iterations: int = 0
    trace: list[dict] = field(default_factory=list)
    check_mode: str = "exact"
    log_beta: float = 0.0
    iteration_bound: int = 0

    @property
    def anticomplete(self) -> bool:
        return self.outcome == "anticomplete"


def _first_zero(d: dict[tuple[int, int], int]) -> Optional[tuple[int, int]]:
    for (h, j), v in sorted(d.items()):
        if h != j and v == 0:
            return h, j
    return None


def shrink_resist(G: OrderedGraph, B: Blockade, phi: float, mu: float, mode: str = "auto",
                  trials: int = DEFAULT_TRIALS, seed: int = 0,
                  cap: int = EXACT_BLOCK_CAP) -> ShrinkResult:
    """Contract on counterexamples until resistant or an anticomplete pair appears.

    Each contraction cuts one max-degree entry by a factor ``|G|^phi`` and no
    entry grows, so at most ``floor(|I|^2 / phi)`` contractions happen.
    """
    if not (0 < phi <= 1 and 0 < mu <= 1):
        raise InputError("need 0 < phi, mu <= 1")
    B.check_host(G)
    L = len(B)
    bound = math.floor(L * L / phi)
    log_beta = (1 + L * L / phi) * math.log2(mu)
    cur = B
    res = ShrinkResult("resistant", B, iteration_bound=bound, log_beta=log_beta)
    for it in range(bound + 2):
        d = maxdeg_matrix(G, cur)
        zero = _first_zero(d)
        if zero is not None:
            res.outcome, res.blockade, res.pair, res.iterations = "anticomplete", cur, zero, it
            return res
        chk = find_counterexample(G, cur, phi, mu, mode, trials, seed + it, cap)
        res.check_mode = chk.mode
        if chk.ok:
            res.blockade, res.iterations = cur, it
            return res
        cx = chk.counterexample
        if it + 1 > bound:
            raise AnalysisError(f"contraction count exceeded floor(|I|^2/phi) = {bound}")
        res.trace.append({
            "h": cx.h, "j": cx.j, "old_d": d[cx.h, cx.j], "new_d": cx.maxdeg,
            "X": sorted(bits(cx.X)), "Y": sorted(bits(cx.Y)),
        })
        cur = cur.contract({cx.h: cx.X, cx.j: cx.Y})
    raise AnalysisError("shrink_resist did not terminate")  # unreachable for |G| >= 2


# -- bands -----------------------------------------------------------------

@dataclass(frozen=True)
class BandCheck:
    ok: bool
    mode: str
    violation: str = ""


def is_band(G: OrderedGraph, B: Blockade, tau: float, phi: float, mu: float, mode: str = "auto",
            trials: int = DEFAULT_TRIALS, seed: int = 0, cap: int = EXACT_BLOCK_CAP,
            log_tau: Optional[float] = None, strict: bool = True) -> BandCheck:
    """Check both band bullets for ``tau`` with parameters ``(phi, mu)``.

    ``strict`` also demands ``tau, phi, mu`` in ``(0, 1]``; without it only
    the two bullets are tested (used when doubled parameters leave the range).
    """
    mode = _check_mode(B, mode, cap)
    lt = math.log2(tau) if log_tau is None else log_tau
    if strict and not (0 < phi <= 1 and 0 < mu <= 1 and log_le(lt, 0.0)):
        return BandCheck(False, mode, "parameters outside (0, 1]")
    rng = np.random.Generator(np.random.Philox(seed)) if mode == "sampled" else None
    logn = log2(G.n)
    d = maxdeg_matrix(G, B)
    for h, bh in zip(B.index, B.blocks):
        for j, bj in zip(B.index, B.blocks):
            if h == j:
                continue
            sj = bj.bit_count()
            if not log_le(log2(d[h, j]), lt + log2(sj)):
                return BandCheck(False, mode, f"upper: max-degree {h}->{j} = {d[h, j]} > tau*|B_{j}|")
            thr = lt - phi * logn + log2(sj)
            mh, mj = frac_ceil(mu, bh.bit_count()), frac_ceil(mu, sj)
            hit = _search_low_pair(G, bh, bj, mh, mj, thr, mode, rng, trials)
            if hit:
                return BandCheck(False, mode, f"lower: sub-pair of ({h},{j}) has max-degree {hit[2]}")
    return BandCheck(True, mode)


def pair_type_from_ratios(log_r1: float, log_r2: float, logn: float, phi: float) -> int:
    """Smallest ``t >= 0`` with ``n^(-2t phi) < r1, r2 <= n^(-2(t-2) phi)``."""
    tmax = math.floor(1 / (2 * phi) + 2)
    lo_fail = hi_fail = None
    for t in range(0, tmax + 2):
        low = -2 * t * phi * logn
        high = -2 * (t - 2) * phi * logn
        ok_low = log_lt(low, log_r1) and log_lt(low, log_r2)
        ok_high = log_le(log_r1, high) and log_le(log_r2, high)
        if ok_low and ok_high:
            if not (0 < t <= 1 / (2 * phi) + 2):
                raise AnalysisError(f"type {t} outside (0, 1/(2 phi) + 2]")
            return t
        if not ok_low:
            lo_fail = t
        if not ok_high:
            hi_fail = t
    raise AnalysisError(
        "no type t satisfies n^(-2t phi) < ratios <= n^(-2(t-2) phi): "
        f"ratios 2^{log_r1:.4g}, 2^{log_r2:.4g} are more than n^(-2 phi) apart "
        f"(last failing lower t={lo_fail}, upper t={hi_fail})")


def pair_type(G: OrderedGraph, B: Blockade, h: int, j: int, phi: float) -> int:
    bh, bj = B.block(h), B.block(j)
    dhj = max_degree_mask(G, bh, bj)
    djh = max_degree_mask(G, bj, bh)
    if dhj < 1 or djh < 1:
        raise AnalysisError(f"pair ({h},{j}) has a zero max-degree; type undefined")
    return pair_type_from_ratios(log2(dhj) - log2(bj.bit_count()),
                                 log2(djh) - log2(bh.bit_count()), log2(G.n), phi)


@dataclass(frozen=True)
class BandCertificate:
    tau: float
    log_tau: float
    phi: float
    mu: float
    selection: tuple[int, ...]
    pair_type: Optional[int]
    check_mode: str
    validated: bool
    linkage: float
    note: str = ""


def _mono_subset(labels: Sequence[int], colour: dict[tuple[int, int], Optional[int]], k: int,
                 exact: bool) -> tuple[Optional[tuple[int, ...]], int]:
    """Least k-subset whose pairs all share one colour; also the largest size seen."""
    best_seen = min(1, len(labels))
    if k <= 1:
        return tuple(labels[:k]) if len(labels) >= k else None, best_seen

    if exact:
        found: list = [None]
        largest = [best_seen]

        def rec(chosen: list[int], start: int, col: Optional[int]) -> bool:
            largest[0] = max(largest[0], len(chosen))
            if len(chosen) == k:
                found[0] = tuple(chosen)
                return True
            for p in range(start, len(labels)):
                if len(chosen) + len(labels) - p < k:
                    break
                x = labels[p]
                c = col
                ok = True
                for y in chosen:
                    cy = colour[min(x, y), max(x, y)]
                    if cy is None or (c is not None and cy != c):
                        ok = False
                        break
                    c = cy
                if ok and rec(chosen + [x], p + 1, c):
                    return True
            return False

        rec([], 0, None)
        if found[0] is None:
            # largest monochromatic subset for the report
            size = best_seen
            for s in range(2, k):
                if _mono_subset(labels, colour, s, True)[0] is None:
                    break
                size = s
            return None, size
        return found[0], k

    counts: dict[int, int] = {}
    for c in colour.values():
        if c is not None:
            counts[c] = counts.get(c, 0) + 1
    largest = best_seen
    for c, _ in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])):
        chosen: list[int] = []
        for x in labels:
            if all(colour[min(x, y), max(x, y)] == c for y in chosen):
                chosen.append(x)
                if len(chosen) == k:
                    return tuple(chosen), k
        largest = max(largest, len(chosen))
    return None, largest


def _preconditions(checks: Sequence[tuple[bool, str]], mode: str, warnings: list[str]) -> None:
    failed = [msg for ok, msg in checks if not ok]
    if failed and mode == "theoretical":
        raise PreconditionError(failed)
    warnings.extend(failed)


def find_band(G: OrderedGraph, B: Blockade, phi: float, mu: float, k: int,
              mode: str = "theoretical", check: str = "auto", trials: int = DEFAULT_TRIALS,
              seed: int = 0, exact_limit: int = RAMSEY_EXACT_CAP,
              warnings: Optional[list[str]] = None) -> tuple[Blockade, BandCertificate]:
    """Pick ``k`` blocks whose pairs share one type and certify a ``(5 phi, mu)``-band."""
    warnings = [] if warnings is None else warnings
    logn = log2(G.n)
    _preconditions([
        (phi <= 0.2, "phi <= 1/5"),
        (log_le(-phi * logn, log2(1 - mu)) if mu < 1 else False, "1 - mu >= |G|^(-phi)"),
        (len(B) >= k, f"length {len(B)} >= k = {k}"),
    ], mode, warnings)
    if len(B) < k:
        raise CapabilityError(f"blockade has only {len(B)} blocks, need {k}")
    labels = list(B.index)
    colour: dict[tuple[int, int], Optional[int]] = {}
    for a, x in enumerate(labels):
        for y in labels[a + 1:]:
            try:
                colour[x, y] = pair_type(G, B, x, y, phi)
            except AnalysisError:
                if mode == "theoretical":
                    raise
                colour[x, y] = None
    sel, largest = _mono_subset(labels, colour, k, len(labels) <= exact_limit)
    if sel is None:
        raise CapabilityError(f"no monochromatic {k}-subset found; largest found has size {largest}")
    t = colour[sel[0], sel[1]] if k >= 2 else None
    log_tau = 0.0 if t is None else min(0.0, -2 * (t - 2) * phi * logn)
    sub = B.sub(sel)
    return sub, _certify(G, sub, log_tau, 5 * phi, mu, sel, t, check, trials, seed)


def _certify(G: OrderedGraph, sub: Blockade, log_tau: float, phi: float, mu: float,
             sel: tuple[int, ...], t: Optional[int], check: str, trials: int, seed: int,
             note: str = "") -> BandCertificate:
    chk = is_band(G, sub, 2.0 ** log_tau, min(phi, 1.0), mu, check, trials, seed, log_tau=log_tau)
    lam = measures(G, sub).linkage
    ok = chk.ok and log_le(log2(lam), log_tau) and phi <= 1
    return BandCertificate(2.0 ** log_tau, log_tau, phi, mu, sel, t, chk.mode, ok, lam,
                           note or chk.violation)


# -- composed pipelines ----------------------------------------------------

@dataclass
class HomogResult:
    outcome: str                          # "band" or "anticomplete"
    blockade: Blockade                    # contraction (restricted to the selection for "band")
    certificate: Optional[BandCertificate] = None
    pair: Optional[tuple[int, int]] = None
    shrink: Optional[ShrinkResult] = None
    log_beta: float = 0.0
    warnings: list[str] = field(default_factory=list)
    shrinkage: float = 0.0
    shrinkage_ok: Optional[bool] = None
    tau_ok: Optional[bool] = None

    @property
    def anticomplete(self) -> bool:
        return self.outcome == "anticomplete"

    def anticomplete_sets(self) -> tuple[int, int]:
        h, j = self.pair
        return self.blockade.block(h), self.blockade.block(j)


def homog(G: OrderedGraph, B: Blockade, k: int, phi: float, mu: float, mode: str = "theoretical",
          check: str = "auto", trials: int = DEFAULT_TRIALS, seed: int = 0,
          warnings: Optional[list[str]] = None) -> HomogResult:
    """Shrink-resist with ``phi/5``, then pick a ``(phi, mu)``-band on ``k`` blocks."""
    warnings = [] if warnings is None else warnings
    logn = log2(G.n)
    _preconditions([
        (mu < 1 and log_le(-log2(1 - mu), phi / 5 * logn), "|G|^(phi/5) >= 1/(1-mu)"),
    ], mode, warnings)
    L = len(B)
    log_beta = (1 + 5 * L * L / phi) * math.log2(mu)
    sr = shrink_resist(G, B, phi / 5, mu, check, trials, seed)
    if sr.anticomplete:
        return HomogResult("anticomplete", sr.blockade, pair=sr.pair, shrink=sr,
                           log_beta=log_beta, warnings=warnings)
    sub, cert = find_band(G, sr.blockade, phi / 5, mu, k, mode, check, trials, seed,
                          warnings=warnings)
    cert = BandCertificate(cert.tau, cert.log_tau, phi, mu, cert.selection, cert.pair_type,
                           cert.check_mode, cert.validated, cert.linkage, cert.note)
    return HomogResult("band", sub, cert, shrink=sr, log_beta=log_beta, warnings=warnings,
                       shrinkage=measures(G, sub).shrinkage if len(sub) else 0.0)


def homog2(G: OrderedGraph, B: Blockade, k: int, c: float, phi: float, mu: float,
           sigma: float, Sigma: float, Lambda: float, mode: str = "theoretical",
           check: str = "auto", trials: int = DEFAULT_TRIALS, seed: int = 0) -> HomogResult:
    """Band of ``k`` blocks with shrinkage at most ``Sigma`` and ``tau <= Lambda``.

    In practical mode the parameter hypotheses become warnings; the returned
    flags ``shrinkage_ok`` and ``tau_ok`` report what actually holds.
    """
    warnings: list[str] = []
    if k == 0 or len(B) <= 1 and k <= len(B):
        sel = tuple(B.index[:k])
        sub = B.sub(sel)
        cert = BandCertificate(1.0, 0.0, phi, mu, sel, None, "exact", True, 0.0, "vacuous")
        return HomogResult("band", sub, cert, shrinkage=measures(G, sub).shrinkage if k else 0.0,
                           shrinkage_ok=True, tau_ok=True)
    m = measures(G, B)
    L = len(B)
    logn = log2(G.n)
    log_beta = (1 + 5 * L * L / phi) * math.log2(mu)
    log_lambda = log_beta + math.log2(Lambda)
    _preconditions([
        (sigma < Sigma < c, "sigma < Sigma < c"),
        (m.shrinkage <= sigma + 1e-12, f"shrinkage {m.shrinkage:.4g} <= sigma = {sigma}"),
        (log_le(log2(m.linkage), log_lambda), f"linkage {m.linkage:.4g} <= lambda = beta*Lambda = 2^{log_lambda:.4g}"),
        (log_le(-log_beta, (Sigma - sigma) * logn), "|G|^(Sigma - sigma) >= 1/beta"),
        (mu < 1 and log_le(-log2(1 - mu), phi / 5 * logn), "|G|^(phi/5) >= 1/(1-mu)"),
    ], mode, warnings)
    res = homog(G, B, k, phi, mu, mode, check, trials, seed, warnings)
    res.log_beta = log_beta
    if res.anticomplete:
        return res
    cert = res.certificate
    sub = res.blockade
    lam = cert.linkage
    if log_lt(math.log2(Lambda), cert.log_tau) and log_le(log2(lam), math.log2(Lambda)):
        # any tau' in [linkage, tau] is still a band
        lowered = _certify(G, sub, math.log2(Lambda), phi, mu, cert.selection, cert.pair_type,
                           check, trials, seed, note="tau lowered to Lambda")
        if lowered.validated:
            cert = lowered
    res.certificate = cert
    res.shrinkage = measures(G, sub).shrinkage
    res.shrinkage_ok = res.shrinkage <= Sigma + 1e-12
    res.tau_ok = log_le(cert.log_tau, math.log2(Lambda))
    return res


# -- theoretical constants -------------------------------------------------

@dataclass(frozen=True)
class ParamReport:
    colours: int
    log2_beta_shrink: float
    log2_beta_homog: float
    log2_ramsey_K: float
    log2_lambda: float
    log2_N: float
    leaf_phi: Optional[float] = None
    leaf_mu: Optional[float] = None
    leaf_Lambda: Optional[float] = None
    log2_N_leaf: Optional[float] = None
    rainbow_log2_lengths: tuple[float, ...] = ()

    def lines(self) -> list[str]:
        out = [f"colours {self.colours}",
               f"log2_beta_shrink {self.log2_beta_shrink:.6g}",
               f"log2_beta_homog {self.log2_beta_homog:.6g}",
               f"log2_ramsey_K {self.log2_ramsey_K:.6g}",
               f"log2_lambda {self.log2_lambda:.6g}",
               f"log2_N {self.log2_N:.6g}"]
        if self.leaf_phi is not None:
            out += [f"leaf_phi {self.leaf_phi:.6g}", f"leaf_mu {self.leaf_mu:.6g}",
                    f"leaf_Lambda {self.leaf_Lambda:.6g}", f"log2_N_leaf {self.log2_N_leaf:.6g}"]
        if self.rainbow_log2_lengths:
            out.append("rainbow_log2_lengths " + " ".join(f"{x:.6g}" for x in self.rainbow_log2_lengths))
        return out


def ramsey_colours(phi: float) -> int:
    return math.floor(1 / (2 * phi) + 2)


def log2_ramsey(k: int, r: int) -> float:
    """log2 of the bound ``R_r(k) <= r^(r k)``; exact for ``k <= 2``."""
    if k <= 2:
        return math.log2(max(k, 1))
    return r * k * math.log2(r)


def theoretical_params(phi: float, mu: float, k: int = 1, blocks: Optional[int] = None,
                       sigma: Optional[float] = None, Sigma: Optional[float] = None,
                       Lambda: float = 1.0, c: Optional[float] = None,
                       sigma_prime: Optional[float] = None, lambda_prime: Optional[float] = None,
                       tree_size: Optional[int] = None) -> ParamReport:
    """Base-2 logs of the constants the proofs need (they are astronomically large)."""
    r = ramsey_colours(phi / 5)
    log_K = log2_ramsey(k, ramsey_colours(phi)) if blocks is None else math.log2(blocks)
    K = 2.0 ** log_K if log_K < 1000 else math.inf
    L = blocks if blocks is not None else K
    log_beta_shrink = (1 + L * L / phi) * math.log2(mu) if L != math.inf else -math.inf
    log_K_h = log2_ramsey(k, r)
    Kh = 2.0 ** log_K_h if log_K_h < 1000 else math.inf
    log_beta_h = (1 + 5 * Kh * Kh / phi) * math.log2(mu) if Kh != math.inf else -math.inf
    log_lambda = log_beta_h + math.log2(Lambda)
    nbits = []
    if sigma is not None and Sigma is not None and Sigma > sigma:
        nbits.append(-log_beta_h / (Sigma - sigma))
    if mu < 1:
        nbits.append(-math.log2(1 - mu) * 5 / phi)
    log_N = max(nbits) if nbits else 0.0
    leaf = {}
    if sigma is not None and sigma_prime is not None and lambda_prime is not None and k >= 1:
        Sig = Sigma if Sigma is not None else (sigma + sigma_prime) / 2
        lphi = (sigma_prime - Sig) / (k * 2 ** (k - 1) + 1)
        leaf = dict(leaf_phi=lphi, leaf_mu=2.0 ** -k / k,
                    leaf_Lambda=lambda_prime * 4.0 ** -k / (2 * k),
                    log2_N_leaf=(1 + k * math.log2(16 * k * k)) / lphi)
    chain: list[float] = []
    if tree_size is not None:
        # blockade length for a tree on s vertices: K(s) = R(2 K(s-1) + 1)
        log_len = 0.0
        chain.append(log_len)
        for _ in range(2, tree_size + 1):
            kk = 2.0 ** log_len * 2 + 1 if log_len < 1000 else math.inf
            log_len = (r * kk * math.log2(r)) if kk != math.inf else math.inf
            chain.append(log_len)
    return ParamReport(ramsey_colours(phi), log_beta_shrink, log_beta_h, log_K, log_lambda,
                       log_N, rainbow_log2_lengths=tuple(chain), **leaf)
