"""Partial colorings: verification, the sequential greedy, and exact search.

A coloring is ``k``-partial when every vertex ``v`` has at least
``min(k, deg(v))`` neighbours of a different colour.  Equivalently, at most
``deg(v) - min(k, deg(v))`` neighbours may share the colour of ``v``; the
exact search below works with that "slack" form because the number of
same-coloured neighbours can only grow as an assignment is extended.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from kpartial.graph import Graph, delta_edge

DEFAULT_BUDGET = 2_000_000
DEFAULT_ENUM_CAP = 10**7


@dataclass(frozen=True)
class Coloring:
    c: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.c < 1:
            raise ValueError(f"palette size must be positive, got {self.c}")
        for v, x in enumerate(self.colors):
            if not 1 <= x <= self.c:
                raise ValueError(f"vertex {v} has color {x} outside 1..{self.c}")

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)


@dataclass(frozen=True)
class PartialSpec:
    k: int
    c: int

    def __post_init__(self):
        if self.k < 0 or self.c < 1:
            raise ValueError(f"need k >= 0 and c >= 1, got k={self.k}, c={self.c}")


@dataclass(frozen=True)
class Violation:
    vertex: int
    required: int
    achieved: int

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "required": self.required, "achieved": self.achieved}


class PaletteError(ValueError):
    """A coloring uses a colour larger than the palette it is checked against."""


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search exceeded its budget of {nodes} nodes")
        self.nodes = nodes


class EnumerationCapExceeded(ValueError):
    def __init__(self, required: int, cap: int):
        super().__init__(f"enumeration needs a cap of at least {required} (configured {cap})")
        self.required = required
        self.cap = cap


def _check_cover(G: Graph, col: Coloring) -> None:
    if len(col.colors) != G.n:
        raise ValueError(f"coloring covers {len(col.colors)} vertices, graph has {G.n}")


def verify_partial(G: Graph, col: Coloring, spec: PartialSpec) -> list[Violation]:
    """Vertices with fewer than ``min(k, deg)`` differently coloured neighbours."""
    _check_cover(G, col)
    over = [v for v, x in enumerate(col.colors) if x > spec.c]
    if over:
        v = over[0]
        raise PaletteError(f"vertex {v} has color {col.colors[v]} > c={spec.c}")
    colors = col.colors
    out = []
    for v in G.vertices():
        nbrs = G.adj[v]
        required = min(spec.k, len(nbrs))
        x = colors[v]
        achieved = sum(1 for u in nbrs if colors[u] != x)
        if achieved < required:
            out.append(Violation(v, required, achieved))
    return out


def verify_proper(G: Graph, col: Coloring) -> list[tuple[int, int]]:
    _check_cover(G, col)
    return [(u, v) for u, v in G.edges if col.colors[u] == col.colors[v]]


def greedy_partial(
    G: Graph,
    k: int,
    order: Optional[Sequence[int]] = None,
    initial: Optional[Coloring] = None,
) -> Coloring:
    """Sequential ``k``-partial ``(k+1)``-coloring.

    Every vertex starts at colour 1 (or at ``initial``).  Each vertex in
    ``order`` keeps its colour if its neighbourhood already shows all ``k+1``
    colours and otherwise takes the smallest colour absent from it.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    c = k + 1
    if initial is None:
        colors = [1] * G.n
    else:
        _check_cover(G, initial)
        if max(initial.colors, default=1) > c:
            raise PaletteError(f"initial coloring exceeds palette 1..{c}")
        colors = list(initial.colors)
    for v in (G.vertices() if order is None else order):
        seen = {colors[u] for u in G.adj[v]}
        if len(seen) == c:
            continue
        x = 1
        while x in seen:
            x += 1
        colors[v] = x
    return Coloring(c, tuple(colors))


def _slack(G: Graph, spec: PartialSpec, proper: bool) -> list[int]:
    if proper:
        return [0] * G.n
    return [len(a) - min(spec.k, len(a)) for a in G.adj]


def _search(
    G: Graph,
    c: int,
    slack: list[int],
    order: Sequence[int],
    break_symmetry: bool,
    budget: Optional[int],
) -> Iterator[tuple[int, ...]]:
    """Depth-first assignment along ``order`` yielding every complete solution.

    ``same[w][x]`` counts assigned neighbours of ``w`` holding colour ``x``.
    An assignment ``v := x`` is admissible iff it keeps ``same[v][x]`` and
    ``same[w][x]`` (for assigned neighbours ``w`` of colour ``x``) within
    their slack.  After assigning, an unassigned neighbour with no admissible
    colour left (counting only its own slack) triggers backtracking.
    """
    n = G.n
    adj = G.adj
    color = [0] * n
    same = [[0] * (c + 1) for _ in range(n)]
    choice = [0] * (n + 1)
    top = [0] * (n + 1)  # max colour used by order[:pos]
    nodes = 0
    pos = 0

    def unassign(v: int) -> None:
        x = color[v]
        color[v] = 0
        for w in adj[v]:
            same[w][x] -= 1

    def admissible(v: int, x: int) -> bool:
        if same[v][x] > slack[v]:
            return False
        for w in adj[v]:
            if color[w] == x and same[w][x] >= slack[w]:
                return False
        return True

    def wiped(v: int, x: int) -> bool:
        for w in adj[v]:
            if color[w] == 0 and same[w][x] == slack[w] + 1:
                sw = same[w]
                lim = slack[w]
                if all(sw[y] > lim for y in range(1, c + 1)):
                    return True
        return False

    if n == 0:
        yield ()
        return
    while pos >= 0:
        if pos == n:
            yield tuple(color)
            pos -= 1
            continue
        v = order[pos]
        if color[v]:
            unassign(v)
        hi = min(c, top[pos] + 1) if break_symmetry else c
        x = choice[pos] + 1
        while x <= hi and not admissible(v, x):
            x += 1
        if x > hi:
            choice[pos] = 0
            pos -= 1
            continue
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(budget)
        choice[pos] = x
        color[v] = x
        for w in adj[v]:
            same[w][x] += 1
        if wiped(v, x):
            continue
        top[pos + 1] = max(top[pos], x)
        pos += 1


def _search_dynamic(
    G: Graph, c: int, slack: list[int], budget: Optional[int]
) -> Optional[tuple[int, ...]]:
    """First solution, branching on the vertex with the fewest admissible colours.

    ``avail[w]`` counts colours ``x`` with ``same[w][x] <= slack[w]``; a
    vertex at zero is a dead end.  Ties go to higher degree, then the
    smaller handle.  Colours beyond ``max used + 1`` are skipped since unused
    colours are interchangeable.

    Dead ends backjump: every rejected colour records the assigned vertices
    responsible, and an exhausted vertex returns to the most recently
    assigned of them instead of its immediate predecessor.
    """
    n = G.n
    adj = G.adj
    deg = [len(a) for a in adj]
    color = [0] * n
    same = [[0] * (c + 1) for _ in range(n)]
    avail = [c] * n
    depth = [-1] * n
    heap = [(c, -deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    stack: list[list] = []  # [vertex, last colour tried, max colour before it, conflict set]
    nodes = 0
    top = 0

    def push(w: int) -> None:
        if depth[w] < 0:
            heapq.heappush(heap, (avail[w], -deg[w], w))

    def assign(v: int, x: int) -> None:
        color[v] = x
        depth[v] = len(stack) - 1
        for w in adj[v]:
            same[w][x] += 1
            if same[w][x] == slack[w] + 1:
                avail[w] -= 1
                push(w)

    def unassign(v: int) -> None:
        x = color[v]
        color[v] = 0
        depth[v] = -1
        for w in adj[v]:
            if same[w][x] == slack[w] + 1:
                avail[w] += 1
                push(w)
            same[w][x] -= 1
        push(v)

    def rejection(v: int, x: int) -> Optional[set]:
        """Assigned vertices that rule out ``v := x``, or None if admissible."""
        if same[v][x] > slack[v]:
            return {u for u in adj[v] if color[u] == x}
        for w in adj[v]:
            if color[w] == x and same[w][x] >= slack[w]:
                return {w} | {u for u in adj[w] if color[u] == x}
        return None

    def dead(w: int, skip: int = -1) -> set:
        return {u for u in adj[w] if color[u] and u != skip}

    def pick() -> Optional[int]:
        if len(heap) > 16 * n + 1024:
            heap[:] = [(avail[v], -deg[v], v) for v in range(n) if depth[v] < 0]
            heapq.heapify(heap)
        while heap:
            a, _, v = heap[0]
            if depth[v] < 0 and avail[v] == a:
                return v
            heapq.heappop(heap)
        return None

    def backjump(conflict: set) -> bool:
        """Unwind to the deepest vertex in ``conflict``; False if there is none."""
        nonlocal top
        if not conflict:
            return False
        h = max(depth[u] for u in conflict)
        while len(stack) - 1 > h:
            u = stack.pop()[0]
            if color[u]:
                unassign(u)
        frame = stack[-1]
        frame[3] |= conflict
        frame[3].discard(frame[0])
        top = frame[2]
        return True

    descend = True
    while True:
        if descend:
            v = pick()
            if v is None:
                return tuple(color)
            if avail[v] == 0:
                if not backjump(dead(v)):
                    return None
                descend = False
                continue
            stack.append([v, 0, top, set()])
        frame = stack[-1]
        v, last, before, conflict = frame
        if last:
            unassign(v)
        hi = min(c, before + 1)
        x = last + 1
        placed = False
        while x <= hi:
            why = rejection(v, x)
            if why is None:
                nodes += 1
                if budget is not None and nodes > budget:
                    raise BudgetExceeded(budget)
                assign(v, x)
                wiped = next((w for w in adj[v] if depth[w] < 0 and avail[w] == 0), None)
                if wiped is None:
                    placed = True
                    break
                conflict |= dead(wiped, v)
                unassign(v)
            else:
                conflict |= why
            x += 1
        frame[1] = x
        if placed:
            top = max(before, x)
            descend = True
            continue
        stack.pop()
        conflict.discard(v)
        if not backjump(conflict):
            return None
        descend = False


def search_order(G: Graph) -> list[int]:
    """Maximum-cardinality order: repeatedly take the vertex with the most
    already-ordered neighbours (ties: higher degree, then smaller handle).

    Each component starts at its highest-degree vertex.  Keeping the order
    connected lets forward checking see conflicts close to their cause.
    """
    n = G.n
    deg = [len(a) for a in G.adj]
    placed = [False] * n
    links = [0] * n
    heap: list[tuple[int, int, int]] = []
    order: list[int] = []
    seeds = iter(sorted(range(n), key=lambda v: (-deg[v], v)))
    while len(order) < n:
        while heap and placed[heap[0][2]]:
            heapq.heappop(heap)
        if heap:
            v = heapq.heappop(heap)[2]
        else:
            v = next(s for s in seeds if not placed[s])
        placed[v] = True
        order.append(v)
        for w in G.adj[v]:
            if not placed[w]:
                links[w] += 1
                heapq.heappush(heap, (-links[w], -deg[w], w))
    return order


def decide_exact(
    G: Graph,
    spec: PartialSpec,
    budget: Optional[int] = DEFAULT_BUDGET,
    order: Optional[Sequence[int]] = None,
    fast_path: bool = True,
) -> Optional[Coloring]:
    """Exact k-partial c-colorability.

    Returns a valid coloring, or ``None`` when none exists.  Raises
    :class:`BudgetExceeded` if the search tree grows past ``budget`` nodes.

    With ``fast_path`` and ``k >= delta_edge(G)`` the instance is solved as
    proper c-coloring, which has the same solution set in that regime.
    Without ``order`` the search branches on the most constrained vertex;
    an explicit ``order`` fixes a static branching sequence instead.
    """
    proper = fast_path and spec.k >= delta_edge(G)
    slack = _slack(G, spec, proper)
    if order is None:
        sol = _search_dynamic(G, spec.c, slack, budget)
    else:
        order = list(order)
        if sorted(order) != list(G.vertices()):
            raise ValueError("order must be a permutation of the vertices")
        sol = next(_search(G, spec.c, slack, order, True, budget), None)
    if sol is None:
        return None
    col = Coloring(spec.c, sol)
    if verify_partial(G, col, spec):
        raise AssertionError("search produced an invalid coloring")
    return col


def decide_proper(
    G: Graph, c: int, budget: Optional[int] = DEFAULT_BUDGET, order: Optional[Sequence[int]] = None
) -> Optional[Coloring]:
    """Proper c-colorability (k-partial with ``k`` at the maximum degree)."""
    k = max((len(a) for a in G.adj), default=0)
    return decide_exact(G, PartialSpec(k, c), budget, order, fast_path=False)


def enumerate_valid(
    G: Graph, spec: PartialSpec, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[Coloring]:
    """Every valid k-partial c-coloring, in lexicographic order of the colour vector."""
    required = spec.c**G.n
    if required > cap:
        raise EnumerationCapExceeded(required, cap)
    return _enumerate(G, spec)


def _enumerate(G: Graph, spec: PartialSpec) -> Iterator[Coloring]:
    slack = _slack(G, spec, proper=False)
    for sol in _search(G, spec.c, slack, list(G.vertices()), False, None):
        yield Coloring(spec.c, sol)
