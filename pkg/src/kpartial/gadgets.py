"""Graph constructions: edge gadgets, paths of cliques, indistinguishable pairs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from kpartial.graph import Graph, build_graph
from kpartial.ids import CliqueCoord, GadgetCoord, Plain, StructuredId, infer_scheme

Orientation = Callable[[Graph, int, int], tuple[int, int]]


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``1..k`` stored as its 1-based image array."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def cyclic_shift(cls, k: int) -> "Permutation":
        return cls(tuple(i % k + 1 for i in range(1, k + 1)))

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.k
        for a, b in enumerate(self.images, start=1):
            inv[b - 1] = a
        return Permutation(tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        return Permutation(tuple(other(self(a)) for a in range(1, self.k + 1)))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.k + 1))


@dataclass(frozen=True)
class PathOfCliquesSpec:
    k: int
    l: int
    perms: tuple[Permutation, ...]

    def __post_init__(self):
        if self.k < 3:
            raise ValueError(f"path of cliques needs k >= 3, got {self.k}")
        if self.l < 2:
            raise ValueError(f"path of cliques needs l >= 2, got {self.l}")
        if len(self.perms) != self.l - 1:
            raise ValueError(f"need {self.l - 1} permutations, got {len(self.perms)}")
        for p in self.perms:
            if p.k != self.k:
                raise ValueError(f"permutation on {p.k} points, expected {self.k}")

    @classmethod
    def identity(cls, k: int, l: int) -> "PathOfCliquesSpec":
        return cls(k, l, tuple(Permutation.identity(k) for _ in range(l - 1)))

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "perms": [list(p.images) for p in self.perms]}

    @classmethod
    def from_json(cls, obj: dict) -> "PathOfCliquesSpec":
        return cls(int(obj["k"]), int(obj["l"]), tuple(Permutation(tuple(p)) for p in obj["perms"]))


@dataclass(frozen=True)
class GadgetRecord:
    u: int  # endpoint adjacent to the first k-1 gadget vertices
    v: int  # endpoint adjacent to the last one
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class ReductionMap:
    original: tuple[int, ...]  # original handle -> handle in the transformed graph
    gadgets: dict  # sorted original edge -> GadgetRecord


def lower_first(G: Graph, u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def edge_gadget_transform(
    G: Graph, k: int, orientation: Orientation = lower_first
) -> tuple[Graph, ReductionMap]:
    """Replace every edge ``{u, v}`` by a ``k``-clique gadget.

    ``u`` is joined to gadget vertices ``1..k-1`` and ``v`` to vertex ``k``;
    the original edge disappears.  Original vertices keep their handles and
    gadget vertices follow in edge order.  Every vertex of the result carries
    a structured label (``Plain`` for unlabelled inputs).
    """
    if k < 3:
        raise ValueError(f"edge gadget needs k >= 3, got {k}")
    base_labels: list[StructuredId] = (
        list(G.labels) if G.labels is not None else [Plain(v) for v in G.vertices()]
    )
    labels = list(base_labels)
    edges: list[tuple[int, int]] = []
    gadgets = {}
    nxt = G.n
    for e in G.edges:
        u, v = orientation(G, *e)
        if {u, v} != set(e):
            raise ValueError(f"orientation returned {(u, v)} for edge {e}")
        block = tuple(range(nxt, nxt + k))
        nxt += k
        for j, g in enumerate(block, start=1):
            labels.append(GadgetCoord(base_labels[u], base_labels[v], j))
        edges.extend((block[x], block[y]) for x in range(k) for y in range(x + 1, k))
        edges.extend((u, g) for g in block[:-1])
        edges.append((v, block[-1]))
        gadgets[e] = GadgetRecord(u, v, block)
    Gp = build_graph(nxt, edges, labels)
    return Gp, ReductionMap(tuple(G.vertices()), gadgets)


def clique_handle(k: int, a: int, i: int) -> int:
    return (i - 1) * k + (a - 1)


def path_of_cliques(spec: PathOfCliquesSpec) -> Graph:
    """Columns of ``k``-cliques; columns ``i`` and ``i+1`` are joined by all
    pairs ``((a, i), (b, i+1))`` with ``b != perms[i-1](a)``."""
    k, l = spec.k, spec.l
    edges = []
    for i in range(1, l + 1):
        for a in range(1, k + 1):
            for b in range(a + 1, k + 1):
                edges.append((clique_handle(k, a, i), clique_handle(k, b, i)))
    for i, tau in enumerate(spec.perms, start=1):
        for a in range(1, k + 1):
            for b in range(1, k + 1):
                if b != tau(a):
                    edges.append((clique_handle(k, a, i), clique_handle(k, b, i + 1)))
    labels = [CliqueCoord(a, i) for i in range(1, l + 1) for a in range(1, k + 1)]
    return build_graph(k * l, edges, labels)


def path_edge_count(k: int, l: int) -> int:
    return l * k * (k - 1) // 2 + (l - 1) * k * (k - 1)


def pair_vertex_count(k: int, l: int) -> int:
    return k * l + k * path_edge_count(k, l)


def propagation_composite(spec: PathOfCliquesSpec) -> Permutation:
    """Where row ``i`` of column 1 reappears in column ``l``.

    Every proper ``k``-coloring gives ``(i, 1)`` the colour of
    ``(p(i), l)`` for the returned ``p``: ``perms[0]`` is applied first.
    """
    p = Permutation.identity(spec.k)
    for tau in spec.perms:
        p = p.then(tau)
    return p


@dataclass(frozen=True)
class IndistPair:
    k: int
    l: int
    base1: Graph
    base2: Graph
    g1: Graph
    g2: Graph
    endpoints: tuple[int, ...]  # handles of (i, 1) then (i, l), equal in both graphs

    @property
    def radius(self) -> int:
        """Largest radius at which the endpoint views provably coincide."""
        return 3 * (self.l // 2 - 1)


def indist_pair(k: int, l: int, middle_perm: Optional[Permutation] = None) -> IndistPair:
    if l % 2 or l < 4:
        raise ValueError(f"l must be even and at least 4, got {l}")
    if middle_perm is None:
        middle_perm = Permutation.cyclic_shift(k)
    if middle_perm.k != k:
        raise ValueError(f"middle permutation acts on {middle_perm.k} points, expected {k}")
    if middle_perm.is_identity():
        raise ValueError("middle permutation must differ from the identity")
    spec1 = PathOfCliquesSpec.identity(k, l)
    perms = list(spec1.perms)
    perms[l // 2 - 1] = middle_perm
    spec2 = PathOfCliquesSpec(k, l, tuple(perms))
    b1, b2 = path_of_cliques(spec1), path_of_cliques(spec2)
    g1, _ = edge_gadget_transform(b1, k)
    g2, _ = edge_gadget_transform(b2, k)
    ends = tuple(clique_handle(k, a, 1) for a in range(1, k + 1)) + tuple(
        clique_handle(k, a, l) for a in range(1, k + 1)
    )
    return IndistPair(k, l, b1, b2, g1, g2, ends)


def assign_ids(G: Graph) -> list[int]:
    """Integer id for every vertex, a function of its structured label only."""
    if G.labels is None:
        raise ValueError("assign_ids needs a labelled graph")
    scheme = infer_scheme(G.labels)
    ids = [scheme.encode(lab) for lab in G.labels]
    if len(set(ids)) != len(ids):
        raise ValueError("structured labels collide under the id encoding")
    return ids


def label_column(label: StructuredId) -> tuple[int, int]:
    """Column span ``(lo, hi)`` of a clique-coordinate or gadget label."""
    if isinstance(label, CliqueCoord):
        return label.i, label.i
    if isinstance(label, GadgetCoord):
        cu, cv = label_column(label.u), label_column(label.v)
        return min(cu[0], cv[0]), max(cu[1], cv[1])
    raise ValueError(f"{label} has no column")


def labeled_block(G: Graph, lo: int, hi: int) -> tuple[frozenset, frozenset]:
    """Labels and labelled edges of the subgraph induced by columns ``lo..hi``."""
    keep = {v for v in G.vertices() if lo <= label_column(G.labels[v])[0]
            and label_column(G.labels[v])[1] <= hi}
    labs = frozenset(G.labels[v] for v in keep)
    edges = frozenset(
        frozenset((G.labels[u], G.labels[v])) for u, v in G.edges if u in keep and v in keep
    )
    return labs, edges


def endpoint_colors(pair: IndistPair, colors: Sequence[int]) -> tuple[list[int], list[int]]:
    """Colours of ``(i, 1)`` and ``(i, l)`` for ``i = 1..k``."""
    k = pair.k
    return list(colors[h] for h in pair.endpoints[:k]), list(colors[h] for h in pair.endpoints[k:])
