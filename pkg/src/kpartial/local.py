"""LOCAL-model simulation by radius views and the indistinguishability harness.

An ``r``-round deterministic algorithm is modelled as a function of the
``(r-1)``-radius view of each node: the induced ball around it, every id in
the ball, and every node's input.  Views are stored in canonical form
(sorted by id), so two views are the same exactly when they compare equal.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Sequence

from kpartial.coloring import (
    BudgetExceeded,
    Coloring,
    PartialSpec,
    decide_exact,
    greedy_partial,
    verify_partial,
)
from kpartial.gadgets import IndistPair, Permutation, assign_ids, endpoint_colors, indist_pair
from kpartial.graph import Graph, bfs_distances, build_graph
from kpartial.ids import infer_scheme

INPUT_LAYOUT = ">III"  # k, n, id-space exponent d


class SimulationError(RuntimeError):
    pass


class RoundBudgetError(ValueError):
    """The algorithm runs long enough to tell the two graphs apart."""


def encode_inputs(k: int, n: int, d: int) -> bytes:
    return struct.pack(INPUT_LAYOUT, k, n, d)


def decode_inputs(blob: bytes) -> tuple[int, int, int]:
    return struct.unpack(INPUT_LAYOUT, blob)


def id_exponent(n: int, universe: int) -> int:
    """Smallest ``d >= 1`` with ``n**d >= universe``."""
    if n <= 1:
        return 1
    d = max(1, math.ceil(math.log(universe) / math.log(n)))
    while n**d < universe:
        d += 1
    return d


@dataclass(frozen=True)
class NetworkInstance:
    graph: Graph
    ids: tuple[int, ...]
    inputs: tuple[bytes, ...]

    def __post_init__(self):
        if len(self.ids) != self.graph.n or len(self.inputs) != self.graph.n:
            raise ValueError("ids and inputs must cover every vertex")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("ids are not unique")

    def vertex_of(self, ident: int) -> int:
        return self._index[ident]

    @cached_property
    def _index(self) -> dict:
        return {x: v for v, x in enumerate(self.ids)}


def make_network(G: Graph, k: int, ids: Optional[Sequence[int]] = None) -> NetworkInstance:
    """Network whose nodes all receive ``(k, n, d)`` as input.

    Structured labels are encoded with :func:`assign_ids`; unlabelled graphs
    use ``id(v) = v + 1``.
    """
    if ids is None:
        if G.labels is not None:
            ids = assign_ids(G)
            universe = infer_scheme(G.labels).universe
        else:
            ids = [v + 1 for v in G.vertices()]
            universe = G.n
    else:
        universe = max(ids, default=1)
    blob = encode_inputs(k, G.n, id_exponent(G.n, universe))
    return NetworkInstance(G, tuple(ids), tuple(blob for _ in G.vertices()))


@dataclass(frozen=True)
class RadiusView:
    root: int
    radius: int
    ids: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    inputs: tuple[bytes, ...]

    def to_graph(self) -> tuple[Graph, int]:
        """Graph on positions ``0..len(ids)-1`` (ascending id) and the root position."""
        pos = {x: i for i, x in enumerate(self.ids)}
        G = build_graph(len(self.ids), [(pos[a], pos[b]) for a, b in self.edges])
        return G, pos[self.root]

    def input_of(self, ident: int) -> bytes:
        lo, hi = 0, len(self.ids)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.ids[mid] < ident:
                lo = mid + 1
            else:
                hi = mid
        return self.inputs[lo]


def extract_view(net: NetworkInstance, v: int, t: int) -> RadiusView:
    if t < 0:
        raise ValueError("radius must be non-negative")
    G, ids = net.graph, net.ids
    inside = bfs_distances(G, v, t)
    by_id = sorted(inside, key=ids.__getitem__)
    edges = []
    for x in inside:
        ix = ids[x]
        for y in G.adj[x]:
            if y in inside and ix < ids[y]:
                edges.append((ix, ids[y]))
    edges.sort()
    return RadiusView(
        root=ids[v],
        radius=t,
        ids=tuple(ids[x] for x in by_id),
        edges=tuple(edges),
        inputs=tuple(net.inputs[x] for x in by_id),
    )


def views_equal(a: RadiusView, b: RadiusView) -> bool:
    return a == b


@dataclass(frozen=True)
class NodeAlgorithm:
    name: str
    rounds: int
    c: int
    decide: Callable[[RadiusView], int] = field(compare=False)

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError("an algorithm needs at least one round")


def run_algorithm(net: NetworkInstance, algo: NodeAlgorithm) -> Coloring:
    t = algo.rounds - 1
    out = []
    for v in net.graph.vertices():
        x = algo.decide(extract_view(net, v, t))
        if not (isinstance(x, int) and 1 <= x <= algo.c):
            raise SimulationError(
                f"{algo.name} output {x!r} at vertex {v} (id {net.ids[v]}), outside 1..{algo.c}"
            )
        out.append(x)
    return Coloring(algo.c, tuple(out))


def indistinguishability_report(
    net_a: NetworkInstance, net_b: NetworkInstance, ids: Sequence[int], t: int
) -> dict:
    pairs = []
    for ident in ids:
        va = extract_view(net_a, net_a.vertex_of(ident), t)
        vb = extract_view(net_b, net_b.vertex_of(ident), t)
        pairs.append({"id": ident, "radius": t, "equal": views_equal(va, vb)})
    same = all(p["equal"] for p in pairs)
    return {"pairs": pairs, "verdict": "indistinguishable" if same else "distinguishable"}


# -- algorithm corpus ----------------------------------------------------------


def constant(k: int, rounds: int) -> NodeAlgorithm:
    return NodeAlgorithm("constant", rounds, k, lambda view: 1)


def id_parity(k: int, rounds: int) -> NodeAlgorithm:
    return NodeAlgorithm("id-parity", rounds, k, lambda view: 1 + view.root % 2)


def id_hash(k: int, rounds: int) -> NodeAlgorithm:
    return NodeAlgorithm(
        "id-hash", rounds, k, lambda view: 1 + (view.root * 2654435761 % 2**32) % k
    )


def greedy_view(k: int, rounds: int, c: Optional[int] = None) -> NodeAlgorithm:
    """Run the sequential greedy on the view (ascending id) and keep the root's colour.

    The default palette is ``k``, i.e. the greedy runs with deficiency ``k-1``.
    """
    c = k if c is None else c

    def decide(view: RadiusView) -> int:
        G, root = view.to_graph()
        return greedy_partial(G, c - 1)[root]

    return NodeAlgorithm("greedy-view", rounds, c, decide)


def min_id_view(k: int, rounds: int) -> NodeAlgorithm:
    """Rank of the root id among the ids around it, reduced mod ``k``."""

    def decide(view: RadiusView) -> int:
        G, root = view.to_graph()
        close = sorted([view.root] + [view.ids[u] for u in G.adj[root]])
        return 1 + close.index(view.root) % k

    return NodeAlgorithm("local-rank", rounds, k, decide)


def exact_view(k: int, rounds: int, budget: int = 200_000) -> NodeAlgorithm:
    """Solve k-partial k-coloring exactly on the view; colour 1 if that fails."""

    def decide(view: RadiusView) -> int:
        G, root = view.to_graph()
        try:
            col = decide_exact(G, PartialSpec(k, k), budget=budget)
        except BudgetExceeded:
            return 1
        return 1 if col is None else col[root]

    return NodeAlgorithm("exact-view", rounds, k, decide)


CORPUS: dict[str, Callable[[int, int], NodeAlgorithm]] = {
    "constant": constant,
    "id-parity": id_parity,
    "id-hash": id_hash,
    "local-rank": min_id_view,
    "greedy-view": greedy_view,
    "exact-view": exact_view,
}


def make_algorithm(name: str, k: int, rounds: int) -> NodeAlgorithm:
    try:
        factory = CORPUS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {sorted(CORPUS)}") from None
    return factory(k, rounds)


# -- lower bound harness -------------------------------------------------------


def max_rounds(l: int) -> int:
    """Round budget whose views stay inside the indistinguishable radius."""
    return 3 * (l // 2 - 1) + 1


@dataclass
class LowerBoundVerdict:
    k: int
    l: int
    algorithm: str
    rounds: int
    endpoint_agreement: bool
    g1_endpoints: tuple[list[int], list[int]]
    g2_endpoints: tuple[list[int], list[int]]
    g1_violations: int
    g2_violations: int
    g1_rows_preserved: bool  # every (i,1), (i,l) pair equal in G1
    g2_some_row_moved: bool  # some (j,1), (j,l) pair differs in G2

    @property
    def failed(self) -> list[str]:
        return [name for name, bad in (("G1", self.g1_violations), ("G2", self.g2_violations)) if bad]

    @property
    def passed(self) -> bool:
        """The harness succeeded: outputs agree and at least one graph is miscoloured."""
        return self.endpoint_agreement and bool(self.failed)

    def trace(self) -> str:
        lines = [
            f"endpoint outputs agree across G1/G2: {self.endpoint_agreement}",
            f"G1 needs colour(i,1) == colour(i,l) for all i: {self.g1_rows_preserved}",
            f"G2 needs colour(j,1) != colour(j,l) for some j: {self.g2_some_row_moved}",
        ]
        if self.endpoint_agreement:
            lines.append("both requirements read the same endpoint colours, so at most one holds")
        lines.append(f"invalid on: {', '.join(self.failed) or 'none'}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "algorithm": self.algorithm,
            "rounds": self.rounds,
            "endpoint_agreement": self.endpoint_agreement,
            "g1_endpoints": {"first": self.g1_endpoints[0], "last": self.g1_endpoints[1]},
            "g2_endpoints": {"first": self.g2_endpoints[0], "last": self.g2_endpoints[1]},
            "g1_violations": self.g1_violations,
            "g2_violations": self.g2_violations,
            "g1_rows_preserved": self.g1_rows_preserved,
            "g2_some_row_moved": self.g2_some_row_moved,
            "failed": self.failed,
            "passed": self.passed,
            "trace": self.trace().splitlines(),
        }


def pair_networks(pair: IndistPair) -> tuple[NetworkInstance, NetworkInstance]:
    return make_network(pair.g1, pair.k), make_network(pair.g2, pair.k)


def lower_bound_demo(
    k: int,
    l: int,
    algo: NodeAlgorithm,
    middle_perm: Optional[Permutation] = None,
    pair: Optional[IndistPair] = None,
) -> LowerBoundVerdict:
    budget = max_rounds(l)
    if algo.rounds > budget:
        raise RoundBudgetError(
            f"{algo.name} uses {algo.rounds} rounds; views stay identical only up to {budget}"
        )
    if algo.c != k:
        raise ValueError(f"algorithm palette {algo.c} differs from k={k}")
    if pair is None:
        pair = indist_pair(k, l, middle_perm)
    net1, net2 = pair_networks(pair)
    col1, col2 = run_algorithm(net1, algo), run_algorithm(net2, algo)
    e1, e2 = endpoint_colors(pair, col1.colors), endpoint_colors(pair, col2.colors)
    spec = PartialSpec(k, k)
    return LowerBoundVerdict(
        k=k,
        l=l,
        algorithm=algo.name,
        rounds=algo.rounds,
        endpoint_agreement=e1 == e2,
        g1_endpoints=e1,
        g2_endpoints=e2,
        g1_violations=len(verify_partial(pair.g1, col1, spec)),
        g2_violations=len(verify_partial(pair.g2, col2, spec)),
        g1_rows_preserved=e1[0] == e1[1],
        g2_some_row_moved=e2[0] != e2[1],
    )
