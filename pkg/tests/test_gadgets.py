import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from kpartial.coloring import PartialSpec, decide_exact, decide_proper, enumerate_valid
from kpartial.gadgets import (
    Permutation,
    PathOfCliquesSpec,
    assign_ids,
    clique_handle,
    edge_gadget_transform,
    endpoint_colors,
    indist_pair,
    labeled_block,
    pair_vertex_count,
    path_edge_count,
    path_of_cliques,
    propagation_composite,
)
from kpartial.graph import bfs_distances, build_graph, complete_graph, degree, delta_edge, delta_max
from kpartial.ids import CliqueCoord, GadgetCoord, infer_scheme

perms3 = st.permutations([1, 2, 3]).map(lambda p: Permutation(tuple(p)))


def spec_of(k, perms):
    return PathOfCliquesSpec(k, len(perms) + 1, tuple(perms))


class TestPermutation:
    def test_bijection(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 2))
        with pytest.raises(ValueError):
            Permutation((0, 1, 2))

    def test_shift(self):
        s = Permutation.cyclic_shift(4)
        assert [s(a) for a in range(1, 5)] == [2, 3, 4, 1]
        assert s.then(s.inverse()).is_identity()

    def test_then_applies_self_first(self):
        p, q = Permutation((2, 1, 3)), Permutation((1, 3, 2))
        assert [p.then(q)(a) for a in (1, 2, 3)] == [q(p(a)) for a in (1, 2, 3)]

    def test_spec_length(self):
        with pytest.raises(ValueError):
            PathOfCliquesSpec(3, 4, (Permutation.identity(3),))
        with pytest.raises(ValueError):
            PathOfCliquesSpec(3, 2, (Permutation.identity(4),))

    def test_spec_json(self):
        s = PathOfCliquesSpec(3, 3, (Permutation((2, 3, 1)), Permutation((1, 2, 3))))
        assert s.to_json() == {"k": 3, "l": 3, "perms": [[2, 3, 1], [1, 2, 3]]}
        assert PathOfCliquesSpec.from_json(s.to_json()) == s


class TestEdgeGadget:
    def test_single_edge_k5(self):
        G, rmap = edge_gadget_transform(build_graph(2, [(0, 1)]), 5)
        assert G.n == 7
        assert degree(G, 0) == 4 and degree(G, 1) == 1
        assert all(degree(G, g) == 5 for g in range(2, 7))
        assert rmap.gadgets[(0, 1)].vertices == (2, 3, 4, 5, 6)

    def test_single_edge_k3_distance(self):
        G, _ = edge_gadget_transform(build_graph(2, [(0, 1)]), 3)
        assert G.n == 5
        assert bfs_distances(G, 0)[1] == 3
        assert not G.has_edge(0, 1)

    def test_triangle(self):
        G, _ = edge_gadget_transform(complete_graph(3), 3)
        assert G.n == 12 and delta_edge(G) == 3

    def test_rejects_small_k(self):
        with pytest.raises(ValueError):
            edge_gadget_transform(complete_graph(3), 2)

    def test_orientation(self):
        G, rmap = edge_gadget_transform(build_graph(2, [(0, 1)]), 3, lambda H, u, v: (v, u))
        assert degree(G, 1) == 2 and degree(G, 0) == 1
        assert rmap.gadgets[(0, 1)].u == 1

    def test_bad_orientation(self):
        with pytest.raises(ValueError):
            edge_gadget_transform(build_graph(3, [(0, 1)]), 3, lambda H, u, v: (u, 2))

    def test_labels(self):
        G, _ = edge_gadget_transform(build_graph(2, [(0, 1)]), 3)
        assert isinstance(G.labels[4], GadgetCoord) and G.labels[4].j == 3

    @given(graphs(max_n=7), st.integers(3, 5))
    def test_shape(self, G, k):
        H, rmap = edge_gadget_transform(G, k)
        assert H.n == G.n + k * G.m
        seen = set()
        for (a, b), rec in rmap.gadgets.items():
            assert not H.has_edge(a, b)
            assert all(degree(H, g) == k for g in rec.vertices)
            assert all(H.has_edge(rec.u, g) for g in rec.vertices[:-1])
            assert not H.has_edge(rec.u, rec.vertices[-1])
            assert H.has_edge(rec.v, rec.vertices[-1])
            assert seen.isdisjoint(rec.vertices)
            seen.update(rec.vertices)
        if G.m:
            assert delta_edge(H) == k

    def test_single_edge_forces_distinct_ends(self):
        G, _ = edge_gadget_transform(build_graph(2, [(0, 1)]), 3)
        sols = list(enumerate_valid(G, PartialSpec(3, 3)))
        assert sols and all(c[0] != c[1] for c in sols)

    @given(graphs(max_n=5, min_n=1))
    def test_reduction_equivalence(self, G):
        H, _ = edge_gadget_transform(G, 3)
        assert (decide_proper(G, 3) is None) == (decide_exact(H, PartialSpec(3, 3)) is None)


class TestPathOfCliques:
    def test_counts(self):
        G = path_of_cliques(PathOfCliquesSpec.identity(3, 4))
        assert (G.n, G.m) == (12, 30) == (12, path_edge_count(3, 4))

    def test_identity_anti_matching(self):
        G = path_of_cliques(PathOfCliquesSpec.identity(3, 2))
        for a in range(1, 4):
            missing = [b for b in range(1, 4) if not G.has_edge(clique_handle(3, a, 1), clique_handle(3, b, 2))]
            assert missing == [a]

    @given(st.integers(3, 5), st.integers(2, 6), st.randoms(use_true_random=False))
    def test_degrees(self, k, l, r):
        perms = []
        for _ in range(l - 1):
            img = list(range(1, k + 1))
            r.shuffle(img)
            perms.append(Permutation(tuple(img)))
        G = path_of_cliques(spec_of(k, perms))
        assert G.m == path_edge_count(k, l)
        for i in range(2, l):
            for a in range(1, k + 1):
                assert degree(G, clique_handle(k, a, i)) == 3 * (k - 1)
        assert all(G.labels[clique_handle(k, a, i)] == CliqueCoord(a, i)
                   for a in range(1, k + 1) for i in range(1, l + 1))

    def test_base_case_colorings(self):
        G = path_of_cliques(PathOfCliquesSpec.identity(3, 2))
        sols = list(enumerate_valid(G, PartialSpec(delta_max(G), 3)))
        assert len(sols) == 6
        for c in sols:
            assert all(c[clique_handle(3, a, 1)] == c[clique_handle(3, a, 2)] for a in (1, 2, 3))

    @given(st.lists(perms3, min_size=1, max_size=3))
    def test_propagation_law(self, perms):
        spec = spec_of(3, perms)
        G = path_of_cliques(spec)
        p = propagation_composite(spec)
        sols = list(enumerate_valid(G, PartialSpec(delta_max(G), 3)))
        assert len(sols) == 6
        for c in sols:
            for a in (1, 2, 3):
                assert c[clique_handle(3, a, 1)] == c[clique_handle(3, p(a), spec.l)]

    def test_composite_examples(self):
        assert propagation_composite(PathOfCliquesSpec.identity(4, 5)).is_identity()
        perms = [Permutation.identity(4)] * 5
        perms[2] = Permutation.cyclic_shift(4)
        assert propagation_composite(spec_of(4, perms)) == Permutation.cyclic_shift(4)

    def test_composite_order_matters(self):
        p, q = Permutation((2, 1, 3)), Permutation((1, 3, 2))
        spec = spec_of(3, [p, q])
        assert propagation_composite(spec) == p.then(q) != q.then(p)


class TestIndistPair:
    def test_rejections(self):
        with pytest.raises(ValueError):
            indist_pair(3, 5)
        with pytest.raises(ValueError):
            indist_pair(3, 2)
        with pytest.raises(ValueError):
            indist_pair(3, 6, Permutation.identity(3))

    @pytest.mark.parametrize("k,l", [(3, 4), (3, 6), (4, 4), (4, 6)])
    def test_vertex_count(self, k, l):
        pair = indist_pair(k, l)
        expect = k * l + k * (l * k * (k - 1) // 2 + (l - 1) * k * (k - 1))
        assert pair.g1.n == pair.g2.n == expect == pair_vertex_count(k, l)

    def test_k3_l4_size(self):
        pair = indist_pair(3, 4)
        assert pair.base1.m == pair.base2.m == 30
        assert pair.g1.n == 102

    def test_halves_agree(self):
        pair = indist_pair(3, 6)
        assert labeled_block(pair.g1, 1, 3) == labeled_block(pair.g2, 1, 3)
        assert labeled_block(pair.g1, 4, 6) == labeled_block(pair.g2, 4, 6)
        assert labeled_block(pair.g1, 1, 6) != labeled_block(pair.g2, 1, 6)

    @pytest.mark.parametrize("k,l", [(3, 4), (3, 6), (4, 6)])
    def test_colorable(self, k, l):
        pair = indist_pair(k, l)
        for G in (pair.g1, pair.g2):
            assert delta_edge(G) == k
            assert decide_exact(G, PartialSpec(k, k)) is not None

    def test_endpoint_rows(self):
        # G1 keeps every row, G2 moves some row (checked on base proper colorings)
        pair = indist_pair(3, 4)
        for base, keep in ((pair.base1, True), (pair.base2, False)):
            sols = list(enumerate_valid(base, PartialSpec(delta_max(base), 3)))
            assert sols
            for c in sols:
                first, last = endpoint_colors(pair, c.colors)
                assert (first == last) == keep

    def test_endpoints(self):
        pair = indist_pair(3, 4)
        labs = [pair.g1.labels[h] for h in pair.endpoints]
        assert labs == [CliqueCoord(a, 1) for a in (1, 2, 3)] + [CliqueCoord(a, 4) for a in (1, 2, 3)]


class TestIds:
    def test_clique_encoding(self):
        pair = indist_pair(3, 6)
        ids = assign_ids(pair.g1)
        assert ids[clique_handle(3, 1, 1)] == 1
        assert ids[clique_handle(3, 3, 6)] == 18

    def test_unique(self):
        pair = indist_pair(3, 6)
        for G in (pair.g1, pair.g2):
            ids = assign_ids(G)
            assert len(set(ids)) == G.n

    def test_shared_labels_share_ids(self):
        pair = indist_pair(3, 6)
        a = dict(zip(pair.g1.labels, assign_ids(pair.g1)))
        b = dict(zip(pair.g2.labels, assign_ids(pair.g2)))
        shared = a.keys() & b.keys()
        assert all(a[x] == b[x] for x in shared)
        # only gadgets across the middle anti-matching may differ
        assert {x for x in a.keys() ^ b.keys()} <= {x for x in a.keys() | b.keys() if crosses_middle(x)}

    def test_polynomial_range(self):
        pair = indist_pair(4, 8)
        scheme = infer_scheme(pair.g1.labels)
        assert max(assign_ids(pair.g1)) <= scheme.universe <= pair.g1.n**3

    def test_middle_gadgets_differ(self):
        pair = indist_pair(3, 6)
        a, b = set(assign_ids(pair.g1)), set(assign_ids(pair.g2))
        assert len(a) == len(b)
        assert len(a ^ b) > 0
        assert {i for i in a if i <= 18} == {i for i in b if i <= 18} == set(range(1, 19))

    def test_unlabelled(self):
        with pytest.raises(ValueError):
            assign_ids(complete_graph(3))


def crosses_middle(x):
    return isinstance(x, GadgetCoord) and {x.u.i, x.v.i} == {3, 4}
