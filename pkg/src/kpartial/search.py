"""Exhaustive search for small graphs that are not k-partially k-colorable.

Candidates are all labelled graphs (edge subsets of ``K_n``) in order of
``(n, edge count, edge mask)``.  Degree-derived filters are evaluated for
whole blocks of masks at once with numpy; connectivity, the clique filter
and finally the exact oracle run only on the survivors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from kpartial.coloring import BudgetExceeded, PartialSpec, decide_exact
from kpartial.graph import Graph, build_graph, delta_edge, delta_max, has_clique, is_connected

BLOCK = 1 << 18


def pair_list(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def graph_from_mask(n: int, mask: int, pairs: Optional[list] = None) -> Graph:
    pairs = pair_list(n) if pairs is None else pairs
    return build_graph(n, [p for b, p in enumerate(pairs) if mask >> b & 1])


def labeled_graphs(n: int) -> Iterator[Graph]:
    """Every simple graph on vertex set ``0..n-1``."""
    pairs = pair_list(n)
    for mask in range(1 << len(pairs)):
        yield graph_from_mask(n, mask, pairs)


def atlas_graphs(max_n: int) -> Iterator[Graph]:
    """One graph per isomorphism class on at most ``max_n <= 7`` vertices."""
    from networkx.generators.atlas import graph_atlas_g

    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for H in graph_atlas_g():
        if H.number_of_nodes() <= max_n:
            yield build_graph(H.number_of_nodes(), list(H.edges()))


def _has_k_core(bits: np.ndarray, pairs: list, n: int, k: int) -> np.ndarray:
    """Row-wise test that peeling vertices of degree < k leaves something.

    When delta_edge == k a k-partial k-coloring is a proper k-coloring, and a
    graph of degeneracy below k is properly k-colorable, so rows failing this
    test cannot be obstructions.
    """
    alive = np.ones((len(bits), n), dtype=bool)
    for _ in range(n):
        deg = np.zeros((len(bits), n), dtype=np.int16)
        for b, (u, v) in enumerate(pairs):
            e = bits[:, b].astype(bool) & alive[:, u] & alive[:, v]
            deg[:, u] += e
            deg[:, v] += e
        nxt = alive & (deg >= k)
        if np.array_equal(nxt, alive):
            break
        alive = nxt
    return alive.any(axis=1)


def _prefilter(n: int, k: int, max_degree: Optional[int]) -> np.ndarray:
    """Masks whose graph has delta_edge == k, no isolated vertex and,
    optionally, the requested maximum degree; sorted by (popcount, mask)."""
    pairs = pair_list(n)
    m = len(pairs)
    keep = []
    for start in range(0, 1 << m, BLOCK):
        masks = np.arange(start, min(start + BLOCK, 1 << m), dtype=np.int64)
        bits = ((masks[:, None] >> np.arange(m)) & 1).astype(np.int16)
        deg = np.zeros((len(masks), n), dtype=np.int16)
        for b, (u, v) in enumerate(pairs):
            deg[:, u] += bits[:, b]
            deg[:, v] += bits[:, b]
        de = np.zeros(len(masks), dtype=np.int16)
        for b, (u, v) in enumerate(pairs):
            de = np.maximum(de, bits[:, b] * np.minimum(deg[:, u], deg[:, v]))
        ok = (de == k) & (deg.min(axis=1) >= 1)
        if max_degree is not None:
            ok &= deg.max(axis=1) == max_degree
        ok[ok] = _has_k_core(bits[ok], pairs, n, k)
        keep.append(masks[ok])
    out = np.concatenate(keep) if keep else np.zeros(0, dtype=np.int64)
    pop = np.array([int(x).bit_count() for x in out], dtype=np.int64)
    return out[np.lexsort((out, pop))]


@dataclass
class SearchResult:
    k: int
    max_n: int
    require_no_clique: bool
    max_degree: Optional[int]
    iso_reduced: bool
    found: list[Graph] = field(default_factory=list)
    examined: int = 0
    prefiltered: int = 0
    budget_failures: list[Graph] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        """Whether an empty result proves no obstruction exists up to ``max_n``."""
        return not self.iso_reduced and not self.budget_failures

    @property
    def smallest(self) -> Optional[Graph]:
        return self.found[0] if self.found else None


def _accept(G: Graph, k: int, no_clique: bool, max_degree: Optional[int]) -> bool:
    if delta_edge(G) != k or not is_connected(G):
        return False
    if max_degree is not None and delta_max(G) != max_degree:
        return False
    return not (no_clique and has_clique(G, k + 1))


def search_obstructions(
    k: int,
    max_n: int,
    require_no_clique: bool = True,
    max_degree: Optional[int] = None,
    budget: int = 100_000,
    iso_reduce: bool = False,
    first_only: bool = True,
    min_n: int = 1,
) -> SearchResult:
    """Connected graphs with ``delta_edge == k`` and no k-partial k-coloring.

    With ``first_only`` the search stops at the first hit, which is then the
    smallest by ``(n, edge count)``.
    """
    if k < 3:
        raise ValueError("obstruction search needs k >= 3")
    res = SearchResult(k, max_n, require_no_clique, max_degree, iso_reduce)
    spec = PartialSpec(k, k)

    def consider(G: Graph) -> bool:
        res.examined += 1
        try:
            col = decide_exact(G, spec, budget=budget)
        except BudgetExceeded:
            res.budget_failures.append(G)
            return False
        if col is None:
            res.found.append(G)
            return True
        return False

    if iso_reduce:
        cands = [G for G in atlas_graphs(max_n) if G.n >= min_n]
        cands.sort(key=lambda G: (G.n, G.m))
        for G in cands:
            if _accept(G, k, require_no_clique, max_degree):
                res.prefiltered += 1
                if consider(G) and first_only:
                    return res
        return res

    for n in range(max(min_n, 2), max_n + 1):
        pairs = pair_list(n)
        masks = _prefilter(n, k, max_degree)
        res.prefiltered += len(masks)
        for mask in masks:
            G = graph_from_mask(n, int(mask), pairs)
            if not _accept(G, k, require_no_clique, max_degree):
                continue
            if consider(G) and first_only:
                return res
    return res
