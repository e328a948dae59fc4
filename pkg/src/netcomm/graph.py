"""Undirected simple graphs with rank-two edge modifications.

Graphs are immutable after construction: downdating (removing) or updating
(adding) an edge returns a new ``Graph`` sharing nothing mutable with the
original.  Node indices are 0-based and contiguous.  Self-loops are rejected
by default; when explicitly allowed (some collection matrices keep ones on
the diagonal) they are stored apart from the edge list and contribute a unit
diagonal entry to the adjacency matrix but never count toward degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components


class GraphError(ValueError):
    """Raised for malformed graph input or illegal modifications."""


class EdgeRef(NamedTuple):
    """Canonical undirected edge: ``i < j`` always."""

    i: int
    j: int


def edge(i: int, j: int) -> EdgeRef:
    """Return the canonical ``EdgeRef`` for an unordered node pair."""
    i, j = int(i), int(j)
    if i == j:
        raise GraphError(f"self-loop ({i},{i}) is not an edge")
    return EdgeRef(i, j) if i < j else EdgeRef(j, i)


@dataclass(frozen=True)
class ModificationRecord:
    """One applied edge modification inside a plan.

    ``kind`` is ``"downdate"`` (edge removal) or ``"update"`` (edge
    addition); ``step`` counts from 1; ``selection_ms`` is the wall-clock
    time spent selecting this edge, in milliseconds.
    """

    step: int
    kind: str
    edge: EdgeRef
    selection_ms: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("downdate", "update"):
            raise GraphError(f"unknown modification kind {self.kind!r}")


class Graph:
    """Simple undirected graph stored as a sorted canonical edge array.

    Parameters
    ----------
    n : int
        Number of nodes (>= 0).  Nodes are ``0 .. n-1``.
    edges : sequence of (i, j)
        Undirected edges; pairs are canonicalized, deduplicated and sorted.
    loops : iterable of int, optional
        Nodes carrying a retained self-loop (unit diagonal entry).

    Notes
    -----
    Instances are treated as immutable; all modification helpers return new
    graphs.  The adjacency matrix is built lazily and cached.
    """

    __slots__ = ("n", "edges", "loops", "_edge_set", "_csr", "_degrees")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]], loops: Iterable[int] = ()):
        n = int(n)
        if n < 0:
            raise GraphError("node count must be nonnegative")
        canon = sorted({edge(i, j) for i, j in edges})
        for e in canon:
            if not (0 <= e.i and e.j < n):
                raise GraphError(f"edge {e} out of range for n={n}")
        loop_set = frozenset(int(v) for v in loops)
        for v in loop_set:
            if not 0 <= v < n:
                raise GraphError(f"loop node {v} out of range for n={n}")
        self.n = n
        self.edges: tuple[EdgeRef, ...] = tuple(canon)
        self.loops: frozenset[int] = loop_set
        self._edge_set = frozenset(canon)
        self._csr = None
        self._degrees = None

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        """Number of (non-loop) edges."""
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return i in self.loops
        return edge(i, j) in self._edge_set

    def __contains__(self, e: tuple[int, int]) -> bool:
        return self.has_edge(e[0], e[1])

    def __iter__(self) -> Iterator[EdgeRef]:
        return iter(self.edges)

    def __repr__(self) -> str:
        extra = f", loops={len(self.loops)}" if self.loops else ""
        return f"Graph(n={self.n}, m={self.m}{extra})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges and self.loops == other.loops

    def __hash__(self) -> int:
        return hash((self.n, self.edges, self.loops))

    @property
    def degrees(self) -> np.ndarray:
        """Degree vector (self-loops excluded)."""
        if self._degrees is None:
            d = np.zeros(self.n, dtype=np.int64)
            for i, j in self.edges:
                d[i] += 1
                d[j] += 1
            d.setflags(write=False)
            self._degrees = d
        return self._degrees

    @property
    def row_sums(self) -> np.ndarray:
        """Adjacency row sums: degrees plus one for each retained loop."""
        r = self.degrees.astype(np.float64).copy()
        if self.loops:
            r[sorted(self.loops)] += 1.0
        return r

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor indices of ``v`` (loops excluded)."""
        A = self.adjacency()
        nbrs = A.indices[A.indptr[v]:A.indptr[v + 1]]
        return nbrs[nbrs != v]

    def adjacency(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency matrix in CSR form (cached)."""
        if self._csr is None:
            if self.m == 0 and not self.loops:
                self._csr = sp.csr_matrix((self.n, self.n), dtype=np.float64)
            else:
                ii = np.fromiter((e.i for e in self.edges), dtype=np.int64, count=self.m)
                jj = np.fromiter((e.j for e in self.edges), dtype=np.int64, count=self.m)
                rows = np.concatenate([ii, jj])
                cols = np.concatenate([jj, ii])
                if self.loops:
                    lp = np.array(sorted(self.loops), dtype=np.int64)
                    rows = np.concatenate([rows, lp])
                    cols = np.concatenate([cols, lp])
                data = np.ones(rows.shape[0], dtype=np.float64)
                self._csr = sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return self._csr

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.adjacency() @ x

    def virtual_edges(self) -> list[EdgeRef]:
        """All node pairs that are not edges, in lexicographic order."""
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                e = EdgeRef(i, j)
                if e not in self._edge_set:
                    out.append(e)
        return out

    # -- modifications ---------------------------------------------------

    def _replace(self, edges: Sequence[EdgeRef]) -> "Graph":
        g = Graph.__new__(Graph)
        g.n = self.n
        g.edges = tuple(edges)
        g.loops = self.loops
        g._edge_set = frozenset(edges)
        g._csr = None
        g._degrees = None
        return g


def from_edge_list(
    n: int,
    pairs: Iterable[tuple[int, int]],
    *,
    allow_self_loops: bool = False,
    strict: bool = False,
) -> Graph:
    """Build a :class:`Graph` from raw (possibly messy) node pairs.

    Duplicate pairs and both orientations of the same edge collapse to one
    undirected edge.  Self-loops are dropped (lenient, default), retained
    (``allow_self_loops=True``), or rejected (``strict=True`` without
    ``allow_self_loops``).  In strict mode duplicates are also rejected.
    """
    seen: set[EdgeRef] = set()
    loops: set[int] = set()
    for i, j in pairs:
        i, j = int(i), int(j)
        if i == j:
            if allow_self_loops:
                if strict and i in loops:
                    raise GraphError(f"duplicate self-loop at node {i}")
                loops.add(i)
            elif strict:
                raise GraphError(f"self-loop at node {i} not allowed in strict mode")
            continue
        e = edge(i, j)
        if e in seen:
            if strict:
                raise GraphError(f"duplicate edge {e}")
            continue
        seen.add(e)
    return Graph(n, sorted(seen), loops)


def downdate_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Return ``g`` with edge ``e`` removed (a rank-two downdate of A)."""
    e = edge(*e)
    if e not in g._edge_set:
        raise GraphError(f"cannot downdate missing edge {e}")
    return g._replace([x for x in g.edges if x != e])


def update_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Return ``g`` with virtual edge ``e`` added (a rank-two update of A)."""
    e = edge(*e)
    if e in g._edge_set:
        raise GraphError(f"cannot update existing edge {e}")
    if not (0 <= e.i and e.j < g.n):
        raise GraphError(f"edge {e} out of range for n={g.n}")
    out = list(g.edges)
    out.append(e)
    out.sort()
    return g._replace(out)


def apply_modification(g: Graph, rec: ModificationRecord) -> Graph:
    return downdate_edge(g, rec.edge) if rec.kind == "downdate" else update_edge(g, rec.edge)


# -- connectivity ---------------------------------------------------------


def is_connected(g: Graph) -> bool:
    """True iff the graph is connected (n <= 1 counts as connected)."""
    if g.n <= 1:
        return True
    if g.m < g.n - 1:
        return False
    ncomp, _ = connected_components(g.adjacency(), directed=False)
    return int(ncomp) == 1


def remains_connected_without(g: Graph, e: tuple[int, int]) -> bool:
    """True iff removing edge ``e`` from the connected graph ``g`` keeps it
    connected, i.e. ``e`` is not a bridge."""
    e = edge(*e)
    if e not in g._edge_set:
        raise GraphError(f"{e} is not an edge")
    A = g.adjacency().copy()
    for r, c in ((e.i, e.j), (e.j, e.i)):
        lo, hi = A.indptr[r], A.indptr[r + 1]
        pos = lo + np.searchsorted(A.indices[lo:hi], c)
        A.data[pos] = 0.0
    A.eliminate_zeros()
    ncomp, _ = connected_components(A, directed=False)
    return int(ncomp) == 1


def bridges(g: Graph) -> frozenset[EdgeRef]:
    """All bridges of ``g`` via one iterative lowpoint DFS, O(n+m)."""
    n = g.n
    A = g.adjacency()
    indptr, indices = A.indptr, A.indices
    disc = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    out: set[EdgeRef] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        # stack holds (node, parent, index into neighbor list)
        stack = [(root, -1, indptr[root])]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, ptr = stack[-1]
            if ptr < indptr[v + 1]:
                stack[-1] = (v, parent, ptr + 1)
                w = int(indices[ptr])
                if w == v:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, indptr[w]))
                elif w != parent:
                    # back edge; the single tree edge to the parent is the
                    # only (v, parent) edge in a simple graph, so skipping
                    # every w == parent occurrence is safe
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        out.add(edge(p, v))
    return frozenset(out)


def components(g: Graph) -> list[np.ndarray]:
    """Connected components as sorted index arrays, largest first (ties by
    smallest member)."""
    if g.n == 0:
        return []
    ncomp, labels = connected_components(g.adjacency(), directed=False)
    comps = [np.flatnonzero(labels == k) for k in range(int(ncomp))]
    comps.sort(key=lambda c: (-c.size, int(c[0])))
    return comps


def largest_component(g: Graph) -> tuple[Graph, np.ndarray]:
    """Restrict ``g`` to its largest connected component.

    Returns the induced subgraph (nodes relabeled to ``0..k-1`` preserving
    original order) and the array mapping new indices to original ones.
    """
    comps = components(g)
    if not comps:
        return g, np.arange(0)
    keep = comps[0]
    pos = {int(v): k for k, v in enumerate(keep)}
    sub_edges = [(pos[i], pos[j]) for i, j in g.edges if i in pos and j in pos]
    sub_loops = [pos[v] for v in g.loops if v in pos]
    return Graph(keep.size, sub_edges, sub_loops), keep
