"""Immutable simple graphs and the degree parameters built on them."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from kpartial.ids import Plain, StructuredId


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` is the sorted tuple of pairs ``(u, v)`` with ``u < v`` and
    ``adj[v]`` the ascending tuple of neighbours of ``v``.  Use
    :func:`build_graph` rather than the constructor.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: Optional[tuple[StructuredId, ...]] = None
    adj: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        # adjacency lists are short in every family we build
        return v in a

    def label(self, v: int) -> Optional[StructuredId]:
        return None if self.labels is None else self.labels[v]

    def index_of(self) -> dict:
        """Map label -> vertex handle."""
        if self.labels is None:
            raise GraphError("graph carries no labels")
        return {lab: v for v, lab in enumerate(self.labels)}


def build_graph(
    n: int,
    edge_list: Iterable[Sequence[int]],
    labels: Optional[Sequence[StructuredId]] = None,
) -> Graph:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    seen: set[tuple[int, int]] = set()
    for pair in edge_list:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        seen.add((u, v) if u < v else (v, u))
    edges = tuple(sorted(seen))
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    adj = tuple(tuple(sorted(a)) for a in nbrs)
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != n:
            raise GraphError(f"{len(labels)} labels for {n} vertices")
        if len(set(labels)) != n:
            raise GraphError("labels are not injective")
    return Graph(n, edges, labels, adj)


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def degree(G: Graph, v: int) -> int:
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} outside 0..{G.n - 1}")
    return len(G.adj[v])


def delta_max(G: Graph) -> int:
    return max((len(a) for a in G.adj), default=0)


def delta_edge(G: Graph) -> int:
    """Largest min-endpoint degree over all edges; 0 when there are none."""
    deg = [len(a) for a in G.adj]
    return max((min(deg[u], deg[v]) for u, v in G.edges), default=0)


def degeneracy(G: Graph) -> tuple[int, list[int]]:
    """Min-degree peeling. Returns ``(degeneracy, removal order)``.

    Ties go to the smallest handle; stale heap entries are skipped lazily.
    """
    deg = [len(a) for a in G.adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * G.n
    order: list[int] = []
    best = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        best = max(best, d)
        for u in G.adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return best, order


def bfs_distances(G: Graph, v: int, limit: Optional[int] = None) -> dict[int, int]:
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if limit is not None and dx >= limit:
            continue
        for y in G.adj[x]:
            if y not in dist:
                dist[y] = dx + 1
                queue.append(y)
    return dist


def ball(G: Graph, v: int, t: int) -> list[int]:
    """Sorted vertices within distance ``t`` of ``v``."""
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} outside 0..{G.n - 1}")
    if t < 0:
        raise GraphError("radius must be non-negative")
    return sorted(bfs_distances(G, v, t))


def induced_subgraph(G: Graph, vertices: Sequence[int]) -> Graph:
    """Induced subgraph, relabelled densely in the given order.

    Labels are kept; an unlabelled parent yields ``Plain(original handle)``
    labels so the embedding stays recoverable.
    """
    pos = {v: i for i, v in enumerate(vertices)}
    edges = [
        (pos[u], pos[w]) for u in vertices for w in G.adj[u] if w in pos and u < w
    ]
    if G.labels is None:
        labels = [Plain(v) for v in vertices]
    else:
        labels = [G.labels[v] for v in vertices]
    return build_graph(len(vertices), edges, labels)


def radius_neighborhood(G: Graph, v: int, t: int) -> Graph:
    return induced_subgraph(G, ball(G, v, t))


def components(G: Graph) -> list[list[int]]:
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        comp = sorted(bfs_distances(G, s))
        for x in comp:
            seen[x] = True
        out.append(comp)
    return out


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(bfs_distances(G, 0)) == G.n


def diameter(G: Graph) -> int:
    """Largest finite eccentricity (per-component diameter maximum)."""
    return max((max(bfs_distances(G, v).values()) for v in G.vertices()), default=0)


def has_clique(G: Graph, size: int) -> bool:
    if size <= 1:
        return G.n >= size
    nbr = [set(a) for a in G.adj]

    def extend(clique_size: int, candidates: set[int]) -> bool:
        if clique_size == size:
            return True
        for v in sorted(candidates):
            if extend(clique_size + 1, candidates & {u for u in nbr[v] if u > v}):
                return True
        return False

    return any(extend(1, {u for u in nbr[v] if u > v}) for v in G.vertices())
