"""Ordered graphs stored as packed adjacency rows.

Vertex ``i`` precedes vertex ``j`` iff ``i < j``; there is no separate
permutation.  Each adjacency row is a Python ``int`` used as a bitset, so
``|N(v) & Y|`` is one AND plus a popcount.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union


class InputError(ValueError):
    """Malformed or out-of-range input."""


class CapabilityError(RuntimeError):
    """The requested computation exceeds a documented desk-scale cap."""


class AnalysisError(ArithmeticError):
    """A quantity required by a construction does not exist on this input."""


class PreconditionError(ValueError):
    """One or more theorem hypotheses fail; ``failures`` lists each one."""

    def __init__(self, failures: Sequence[str]):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


# -- bitset helpers ---------------------------------------------------------

def bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def first_k(mask: int, k: int) -> int:
    """The ``k`` smallest members of ``mask`` (all of it if smaller)."""
    out = 0
    for _ in range(k):
        if not mask:
            break
        low = mask & -mask
        out |= low
        mask ^= low
    return out


# -- log-space comparisons --------------------------------------------------

LOG_TOL = 2.0 ** -40
"""Tolerance for equality comparisons in base-2 log domain."""


def log2(x: float) -> float:
    return math.log2(x) if x > 0 else -math.inf


def log_le(a: float, b: float) -> bool:
    """``a <= b`` for base-2 logs, treating differences below LOG_TOL as equal."""
    if a == -math.inf:
        return True
    if b == -math.inf:
        return False
    return a <= b + LOG_TOL


def log_lt(a: float, b: float) -> bool:
    return not log_le(b, a)


def ceil_exp2(log_value: float) -> int:
    """Smallest integer ``m >= 2**log_value``, robust to float noise."""
    if log_value == -math.inf:
        return 0
    m = max(math.ceil(2.0 ** log_value), 1)
    while m > 1 and log_le(log_value, math.log2(m - 1)):
        m -= 1
    while not log_le(log_value, math.log2(m)):
        m += 1
    return m


def floor_exp2(log_value: float) -> int:
    """Largest integer ``m <= 2**log_value`` with the same tolerance."""
    if log_value == -math.inf:
        return 0
    m = math.floor(2.0 ** log_value)
    while log_le(math.log2(m + 1), log_value):
        m += 1
    while m >= 1 and not log_le(math.log2(m), log_value):
        m -= 1
    return m


# -- graphs -----------------------------------------------------------------

@dataclass(frozen=True)
class OrderedGraph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.rows) != self.n:
            raise InputError("row count must equal n")

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"OrderedGraph(n={self.n}, m={self.edge_count()})"

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbours(self, v: int) -> int:
        return self.rows[v]

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v``, sorted lexicographically."""
        out = []
        for u, r in enumerate(self.rows):
            for v in bits(r >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def vset(self, vertices: Iterable[int] | int = ()) -> "VertexSet":
        if isinstance(vertices, int):
            return VertexSet(vertices, self)
        return VertexSet(to_mask(vertices), self)

    def complement(self) -> "OrderedGraph":
        full = self.all_mask
        return OrderedGraph(self.n, tuple((full ^ r) & ~(1 << v) for v, r in enumerate(self.rows)))

    def induced(self, vertices: Iterable[int] | int) -> tuple["OrderedGraph", list[int]]:
        """Induced ordered subgraph; also returns the new-to-old label map."""
        mask = vertices if isinstance(vertices, int) else to_mask(vertices)
        labels = list(bits(mask))
        index = {v: i for i, v in enumerate(labels)}
        rows = []
        for v in labels:
            r = 0
            for u in bits(self.rows[v] & mask):
                r |= 1 << index[u]
            rows.append(r)
        return OrderedGraph(len(labels), tuple(rows)), labels

    def reverse(self) -> "OrderedGraph":
        """Relabel ``i -> n-1-i``."""
        n = self.n
        return build(n, [(n - 1 - u, n - 1 - v) for u, v in self.edges()])


@dataclass(frozen=True)
class VertexSet:
    mask: int
    host: OrderedGraph

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.host.n:
            raise InputError("vertex set has members outside [0, n)")

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)})"

    def sorted(self) -> list[int]:
        return list(bits(self.mask))


SetLike = Union[VertexSet, Iterable[int]]


def as_mask(G: OrderedGraph, X: SetLike) -> int:
    """Coerce a VertexSet or vertex iterable to a mask over ``G``."""
    if isinstance(X, VertexSet):
        if X.host is not G and X.host != G:
            raise InputError("vertex set belongs to a different graph")
        return X.mask
    mask = 0
    for v in X:
        if not 0 <= v < G.n:
            raise InputError(f"vertex {v} out of range [0, {G.n})")
        mask |= 1 << v
    return mask


def build(n: int, edges: Iterable[tuple[int, int]]) -> OrderedGraph:
    """Ordered graph on ``0..n-1`` with the given (symmetrized) edges."""
    if n < 0:
        raise InputError("n must be nonnegative")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise InputError(f"self-loop at {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return OrderedGraph(n, tuple(rows))


def from_rows(rows: Sequence[int]) -> OrderedGraph:
    """Graph from raw bit rows, checking symmetry and the zero diagonal."""
    n = len(rows)
    for u, r in enumerate(rows):
        if r >> n or r >> u & 1:
            raise InputError(f"row {u} is out of range or has a loop")
        for v in bits(r):
            if not rows[v] >> u & 1:
                raise InputError(f"adjacency is not symmetric at ({u}, {v})")
    return OrderedGraph(n, tuple(rows))


def empty_graph(n: int) -> OrderedGraph:
    return OrderedGraph(n, (0,) * n)


def complete_graph(n: int) -> OrderedGraph:
    return empty_graph(n).complement()


def complement(G: OrderedGraph) -> OrderedGraph:
    return G.complement()


def _check_pair(G: OrderedGraph, X: SetLike, Y: SetLike, need_y: bool = True) -> tuple[int, int]:
    xm, ym = as_mask(G, X), as_mask(G, Y)
    if not xm:
        raise InputError("first set is empty")
    if need_y and not ym:
        raise InputError("second set is empty")
    if xm & ym:
        raise InputError("sets overlap")
    return xm, ym


def max_degree_mask(G: OrderedGraph, xm: int, ym: int) -> int:
    """Unchecked max-degree from mask ``xm`` into mask ``ym``."""
    rows = G.rows
    best = 0
    for v in bits(xm):
        c = (rows[v] & ym).bit_count()
        if c > best:
            best = c
    return best


def max_degree_from(G: OrderedGraph, X: SetLike, Y: SetLike) -> int:
    """Max over ``v in X`` of ``|N(v) & Y|``."""
    xm, ym = _check_pair(G, X, Y, need_y=False)
    return max_degree_mask(G, xm, ym)


def edges_between_mask(G: OrderedGraph, xm: int, ym: int) -> int:
    return sum((G.rows[v] & ym).bit_count() for v in bits(xm))


def is_anticomplete(G: OrderedGraph, A: SetLike, B: SetLike) -> bool:
    am, bm = _check_pair(G, A, B)
    return all(not (G.rows[v] & bm) for v in bits(am))


def is_complete(G: OrderedGraph, A: SetLike, B: SetLike) -> bool:
    am, bm = _check_pair(G, A, B)
    return all(G.rows[v] & bm == bm for v in bits(am))


def covers_mask(G: OrderedGraph, am: int, bm: int) -> bool:
    """True iff every vertex of ``bm`` has a neighbour in ``am``."""
    return all(G.rows[v] & am for v in bits(bm))
