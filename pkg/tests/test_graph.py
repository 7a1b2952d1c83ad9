import json
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, random_weighted_graph
from exclgraph.graph import (
    CapExceeded,
    GraphError,
    circulant,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    encode_graph6,
    enumerate_maximal_cliques,
    from_adjacency_matrix,
    from_edge_list,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    is_isomorphic,
    parse_graph6,
    path_graph,
)
from oracles import brute_maximal_cliques, decode_graph6, to_nx


class TestConstruction:
    def test_isolated_vertices(self):
        g = from_edge_list(2, [])
        assert g.n == 2 and g.num_edges == 0
        assert g.weights == (1, 1)

    def test_pentagon(self):
        g = from_edge_list(5, [(i, (i + 1) % 5) for i in range(5)])
        assert g == cycle_graph(5)
        assert all(g.degree(v) == 2 for v in range(5))

    def test_triangle_single_clique(self):
        g = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
        assert enumerate_maximal_cliques(g) == [(0, 1, 2)]

    def test_weights_exact(self):
        g = from_edge_list(3, [(0, 1)], ["1/3", 2, 0.5])
        assert g.weights == (Fraction(1, 3), Fraction(2), Fraction(1, 2))

    @pytest.mark.parametrize(
        "n, edges, weights",
        [
            (3, [(0, 3)], None),
            (3, [(1, 1)], None),
            (2, [], [1, 0]),
            (2, [], [1, -2]),
            (2, [], [1]),
            (-1, [], None),
        ],
    )
    def test_rejects(self, n, edges, weights):
        with pytest.raises(GraphError):
            from_edge_list(n, edges, weights)

    def test_duplicate_edges_collapse(self):
        assert from_edge_list(3, [(0, 1), (1, 0)]).num_edges == 1

    def test_adjacency_round_trip(self):
        g = circulant(8, [1, 4])
        assert from_adjacency_matrix(g.adjacency_matrix()) == g
        with pytest.raises(GraphError):
            from_adjacency_matrix(np.array([[0, 1], [0, 0]]))


class TestGenerators:
    def test_chsh_circulant(self):
        g = circulant(8, [1, 4])
        assert g.n == 8 and g.num_edges == 12
        assert sum(1 for i, j in g.edges() if (j - i) % 8 in (1, 7)) == 8
        assert sum(1 for i, j in g.edges() if (j - i) % 8 == 4) == 4

    def test_cycle_is_circulant(self):
        assert cycle_graph(5) == circulant(5, [1])
        assert cycle_graph(5).num_edges == 5

    def test_circulant_complete(self):
        assert circulant(4, [1, 2]) == complete_graph(4)

    @pytest.mark.parametrize("n, jumps", [(2, [1]), (8, []), (8, [5]), (8, [0])])
    def test_circulant_rejects(self, n, jumps):
        with pytest.raises(GraphError):
            circulant(n, jumps)

    @pytest.mark.parametrize(
        "n, jumps", [(3, [1]), (5, [1, 2]), (8, [1, 4]), (8, [2, 3]), (11, [1, 2]), (11, [2, 3])]
    )
    def test_circulant_matches_networkx(self, n, jumps):
        G = nx.circulant_graph(n, jumps)
        assert {tuple(sorted(e)) for e in G.edges()} == set(circulant(n, jumps).edges())


class TestComplement:
    def test_complete_to_empty(self):
        assert complement(complete_graph(4)) == empty_graph(4)

    def test_pentagon_self_complementary(self):
        ok, mapping = is_isomorphic(complement(cycle_graph(5)), cycle_graph(5))
        assert ok
        assert nx.is_isomorphic(to_nx(complement(cycle_graph(5))), to_nx(cycle_graph(5)))

    def test_involution_random(self, rng):
        for _ in range(50):
            g = random_weighted_graph(rng, int(rng.integers(0, 15)))
            assert complement(complement(g)) == g

    @given(graphs(max_n=12, weighted=True))
    def test_complement_edges(self, g):
        h = complement(g)
        assert h.weights == g.weights
        for i in range(g.n):
            for j in range(g.n):
                if i != j:
                    assert h.has_edge(i, j) != g.has_edge(i, j)


class TestCliques:
    def test_pentagon_edges(self):
        assert enumerate_maximal_cliques(cycle_graph(5)) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]

    def test_empty_graph_singletons(self):
        assert enumerate_maximal_cliques(empty_graph(3)) == [(0,), (1,), (2,)]
        assert enumerate_maximal_cliques(empty_graph(0)) == []

    @given(graphs(max_n=10))
    def test_matches_brute_force(self, g):
        assert enumerate_maximal_cliques(g) == brute_maximal_cliques(g.n, g.edges())

    @given(graphs(min_n=1, max_n=12))
    def test_maximal_and_pairwise_adjacent(self, g):
        for C in enumerate_maximal_cliques(g):
            assert g.is_clique(C)
            assert not any(g.is_clique(C + (v,)) for v in range(g.n) if v not in C)

    def test_matches_networkx_larger(self, rng):
        for _ in range(10):
            g = random_weighted_graph(rng, 25, 0.4)
            ref = sorted(tuple(sorted(c)) for c in nx.find_cliques(to_nx(g)))
            assert enumerate_maximal_cliques(g) == ref


class TestInducedSubgraph:
    def test_identity(self):
        g = circulant(8, [1, 4])
        assert induced_subgraph(g, range(8)) == g

    def test_reindexing(self):
        g = from_edge_list(5, [(0, 4), (2, 4)], [1, 2, 3, 4, 5])
        h = induced_subgraph(g, [4, 2])
        assert h.n == 2 and h.edges() == [(0, 1)]
        assert h.weights == (Fraction(3), Fraction(5))

    def test_out_of_range(self):
        with pytest.raises(GraphError):
            induced_subgraph(cycle_graph(5), [0, 5])

    @given(graphs(max_n=10), st.data())
    def test_preserves_adjacency(self, g, data):
        keep = data.draw(st.lists(st.integers(0, max(g.n - 1, 0)), unique=True)) if g.n else []
        keep = sorted(keep)
        h = induced_subgraph(g, keep)
        for a, u in enumerate(keep):
            for b, v in enumerate(keep):
                if a != b:
                    assert h.has_edge(a, b) == g.has_edge(u, v)


class TestIsomorphism:
    def test_relabeled_pentagon(self):
        g = from_edge_list(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])
        ok, m = is_isomorphic(cycle_graph(5), g)
        assert ok
        assert all(g.has_edge(m[i], m[j]) for i, j in cycle_graph(5).edges())

    def test_pentagon_vs_path(self):
        assert is_isomorphic(cycle_graph(5), path_graph(5)) == (False, None)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            is_isomorphic(cycle_graph(17), cycle_graph(17))

    def test_regular_non_isomorphic(self):
        # two 3-regular graphs on 6 vertices: prism and K_{3,3}
        prism = from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
        k33 = from_edge_list(6, [(i, j) for i in range(3) for j in range(3, 6)])
        assert not is_isomorphic(prism, k33)[0]

    def test_agrees_with_networkx(self, rng):
        for _ in range(60):
            n = int(rng.integers(1, 10))
            g = random_weighted_graph(rng, n, 0.5, weighted=False)
            if rng.random() < 0.5:
                perm = rng.permutation(n)
                h = from_edge_list(n, [(int(perm[i]), int(perm[j])) for i, j in g.edges()])
            else:
                h = random_weighted_graph(rng, n, 0.5, weighted=False)
            ok, m = is_isomorphic(g, h)
            assert ok == nx.is_isomorphic(to_nx(g), to_nx(h))
            if ok:
                assert sorted(m.values()) == list(range(n))
                assert all(h.has_edge(m[i], m[j]) for i, j in g.edges())
                assert g.num_edges == h.num_edges


class TestGraph6:
    @pytest.mark.parametrize("text", ["D?{", "DQc", "E`~o"])
    def test_against_hand_decoder(self, text):
        n, edges = decode_graph6(text)
        g = parse_graph6(text)
        assert g.n == n and set(g.edges()) == edges

    def test_frozen_decoding(self):
        # decoded independently: vertex 4 joined to all others
        assert parse_graph6("D?{").edges() == [(0, 4), (1, 4), (2, 4), (3, 4)]

    def test_empty(self):
        assert parse_graph6("D??") == empty_graph(5)

    def test_pentagon_round_trip(self):
        assert is_isomorphic(parse_graph6(encode_graph6(cycle_graph(5))), cycle_graph(5))[0]
        assert encode_graph6(cycle_graph(5)) == "Dhc"
        assert encode_graph6(circulant(8, [1, 4])) == "GhdHKc"

    def test_header_and_newline(self):
        assert parse_graph6(">>graph6<<Dhc\n") == cycle_graph(5)
        assert encode_graph6(cycle_graph(5), header=True) == ">>graph6<<Dhc"

    @given(graphs(max_n=12))
    def test_round_trip(self, g):
        assert parse_graph6(encode_graph6(g)) == g

    @given(graphs(max_n=12))
    def test_matches_networkx_encoder(self, g):
        ref = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert encode_graph6(g) == ref

    def test_long_length_field(self):
        g = cycle_graph(70)
        text = encode_graph6(g)
        assert text.startswith("~")
        assert parse_graph6(text) == g
        assert nx.from_graph6_bytes(text.encode()).number_of_edges() == 70

    @pytest.mark.parametrize("bad", ["", "D?", "D?{?", "D ?{", "~", "~?", "D?|", "D\x7f{"])
    def test_malformed(self, bad):
        with pytest.raises(GraphError):
            parse_graph6(bad)


class TestJson:
    def test_round_trip_weights(self):
        g = from_edge_list(3, [(0, 1)], ["1/2", 3, "5/4"])
        obj = graph_to_json(g)
        assert obj == {"n": 3, "edges": [[0, 1]], "weights": ["1/2", "3", "5/4"]}
        assert graph_from_json(json.dumps(obj)) == g

    def test_unit_weights_omitted(self):
        assert "weights" not in graph_to_json(cycle_graph(5))

    @pytest.mark.parametrize(
        "obj",
        [{"edges": []}, {"n": "3", "edges": []}, {"n": 3, "edges": [[0]]}, {"n": 3, "edges": [[0, 1.5]]}, []],
    )
    def test_schema(self, obj):
        with pytest.raises(GraphError):
            graph_from_json(obj)
