import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import hypergraphs
from turanlab.errors import (
    InvalidArgumentError,
    InvalidHypergraphError,
    UnsupportedSizeError,
)
from turanlab.hypercore import (
    EdgeTypeSet,
    Hypergraph,
    Pattern,
    SimplexPoint,
    blow_up,
    canonical_form,
    canonical_graph,
    chain_graph,
    complete,
    contains_induced,
    contains_subgraph,
    count_embeddings,
    count_injections,
    empty_graph,
    find_embedding,
    find_induced_embedding,
    induced_subgraph,
    is_isomorphic,
    lubell,
    marked_clique,
    realize,
)

F = Fraction
PATH3 = Hypergraph(3, ((0, 1), (1, 2)))
C4 = Hypergraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))


class TestHypergraph:
    def test_normalizes_edge_order_and_duplicates(self):
        g = Hypergraph(3, ((2, 0), (0, 2), (1,)))
        assert g.edges == ((1,), (0, 2))

    def test_rejects_bad_edges(self):
        with pytest.raises(InvalidHypergraphError):
            Hypergraph(2, ((),))
        with pytest.raises(InvalidHypergraphError):
            Hypergraph(2, ((0, 0),))
        with pytest.raises(InvalidHypergraphError):
            Hypergraph(2, ((0, 2),))
        with pytest.raises(InvalidHypergraphError):
            Hypergraph(2, ((-1,),))

    def test_rejects_oversized_edges(self):
        with pytest.raises(UnsupportedSizeError):
            Hypergraph(17, (tuple(range(17)),))

    def test_degree_and_size_queries(self):
        g = complete(2, (1, 2))
        assert g.edge_sizes() == (1, 2)
        assert g.edges_of_size(2) == ((0, 1),)
        assert g.degree(0) == 2
        assert g.degree(0, r=1) == 1
        assert tuple(g.edge_types()) == (1, 2)

    def test_edge_types_needs_edges(self):
        with pytest.raises(InvalidArgumentError):
            empty_graph(2).edge_types()

    def test_with_edges(self):
        g = empty_graph(3).with_edges((0, 1), (2,))
        assert g.edges == ((2,), (0, 1))


class TestLubell:
    # frozen: independently recomputed from the definition
    @pytest.mark.parametrize(
        "graph,value",
        [
            (chain_graph(), F(3, 2)),
            (complete(2, (1, 2)), F(2)),
            (Hypergraph(3, ((0,), (0, 1), (1, 2))), F(1)),
            (empty_graph(4), F(0)),
            (complete(4, (2,)), F(1)),
            (complete(3, (1, 2, 3)), F(3)),
        ],
    )
    def test_frozen_values(self, graph, value):
        assert lubell(graph) == value

    @given(hypergraphs())
    def test_matches_bruteforce(self, g):
        assert lubell(g) == oracles.brute_lubell(g)

    @given(hypergraphs())
    def test_bounded_by_type_count(self, g):
        assert 0 <= lubell(g) <= len(set(g.edge_sizes()))


class TestBlowUpAndRealize:
    def test_chain_blow_up_counts(self):
        g = blow_up(chain_graph(), (2, 3))
        assert g.n == 5
        assert len(g.edges_of_size(1)) == 2
        assert len(g.edges_of_size(2)) == 6

    def test_zero_class_deletes_vertex(self):
        g = blow_up(chain_graph(), (1, 0))
        assert g.n == 1 and g.edges == ((0,),)

    @given(hypergraphs(max_n=4))
    def test_unit_blow_up_is_identity(self, g):
        assert blow_up(g, (1,) * g.n) == g

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_balanced_pair_blow_up_value(self, m):
        g = blow_up(complete(2, (2,)), (m, m))
        assert lubell(g) == F(m * m, math.comb(2 * m, 2))

    def test_realize_single_row(self):
        g = realize(Pattern(1, ((2,),)), (4,))
        assert g.n == 4 and len(g.edges) == math.comb(4, 2)

    def test_realize_skips_undersized_classes(self):
        g = realize(Pattern(1, ((2,),)), (1,))
        assert g.n == 1 and g.edges == ()

    def test_blow_up_class_count_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            blow_up(chain_graph(), (1, 1, 1))


class TestPattern:
    def test_round_trip_simple(self):
        p = Pattern.from_hypergraph(chain_graph())
        assert p.is_simple()
        assert p.to_hypergraph() == chain_graph()

    def test_multiplicity_rows(self):
        p = Pattern(2, ((2, 0), (1, 1)))
        assert not p.is_simple()
        with pytest.raises(InvalidArgumentError):
            p.to_hypergraph()

    def test_rejects_duplicate_rows(self):
        with pytest.raises(InvalidHypergraphError):
            Pattern(2, ((1, 0), (1, 0)))

    def test_rejects_empty_and_oversized_rows(self):
        with pytest.raises(InvalidHypergraphError):
            Pattern(2, ((0, 0),))
        with pytest.raises(UnsupportedSizeError):
            Pattern(1, ((17,),))


class TestSimplexPoint:
    def test_exact_rational_sum_enforced(self):
        SimplexPoint((F(1, 3), F(2, 3)))
        with pytest.raises(InvalidArgumentError):
            SimplexPoint((F(1, 3), F(1, 3)))

    def test_float_tolerance(self):
        SimplexPoint((0.3, 0.7))
        with pytest.raises(InvalidArgumentError):
            SimplexPoint((0.3, 0.8))

    def test_uniform_and_support(self):
        p = SimplexPoint.uniform(4)
        assert p.is_rational and sum(p.weights) == 1
        q = SimplexPoint((F(1, 2), F(0), F(1, 2)))
        assert q.support == (0, 2)
        assert q.dimension == 3


class TestEmbeddings:
    # frozen: counted by the brute-force permutation oracle
    @pytest.mark.parametrize(
        "big,small,injections,copies",
        [
            (complete(2, (1, 2)), chain_graph(), 2, 2),
            (complete(4, (2,)), complete(2, (2,)), 12, 6),
            (complete(4, (2,)), complete(3, (2,)), 24, 4),
            (complete(3, (2,)), PATH3, 6, 3),
        ],
    )
    def test_frozen_counts(self, big, small, injections, copies):
        assert count_injections(big, small) == injections
        assert count_embeddings(big, small) == copies

    # frozen: permutation-oracle automorphism counts
    @pytest.mark.parametrize(
        "graph,count",
        [
            (chain_graph(), 1),
            (complete(4, (2,)), 24),
            (PATH3, 2),
            (C4, 8),
            (marked_clique(3), 2),
        ],
    )
    def test_automorphism_counts(self, graph, count):
        from turanlab.hypercore import automorphism_count

        assert automorphism_count(graph) == count

    @given(hypergraphs(max_n=5), hypergraphs(max_n=3))
    def test_injections_match_bruteforce(self, big, small):
        assert count_injections(big, small) == oracles.brute_count_injections(
            big, small
        )

    @given(hypergraphs(max_n=5))
    def test_automorphisms_match_bruteforce(self, g):
        from turanlab.hypercore import automorphism_count

        assert automorphism_count(g) == oracles.brute_automorphisms(g)

    @given(hypergraphs(max_n=5), hypergraphs(max_n=3))
    def test_containment_matches_bruteforce(self, big, small):
        assert contains_subgraph(big, small) == oracles.brute_contains(
            big, small
        )
        assert contains_induced(big, small) == oracles.brute_contains(
            big, small, induced=True
        )

    def test_induced_versus_subgraph(self):
        assert contains_subgraph(complete(3, (2,)), PATH3)
        assert not contains_induced(complete(3, (2,)), PATH3)
        assert contains_induced(C4, PATH3)

    def test_find_embedding_returns_valid_map(self):
        image = find_embedding(complete(2, (1, 2)), chain_graph())
        assert image is not None
        big_edges = set(complete(2, (1, 2)).edges)
        for e in chain_graph().edges:
            assert tuple(sorted(image[v] for v in e)) in big_edges
        assert find_embedding(empty_graph(3), chain_graph()) is None

    def test_find_induced_embedding(self):
        assert find_induced_embedding(C4, PATH3) is not None
        assert find_induced_embedding(complete(3, (2,)), PATH3) is None


class TestCanonical:
    @given(hypergraphs(max_n=6), st.randoms(use_true_random=False))
    def test_invariant_under_relabeling(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        relabeled = Hypergraph(
            g.n, tuple(tuple(perm[v] for v in e) for e in g.edges)
        )
        assert canonical_form(relabeled) == canonical_form(g)

    @given(hypergraphs(max_n=4), hypergraphs(max_n=4))
    def test_isomorphism_matches_bruteforce(self, a, b):
        assert is_isomorphic(a, b) == oracles.brute_is_isomorphic(a, b)

    @given(hypergraphs(max_n=5))
    def test_canonical_graph_is_isomorphic(self, g):
        rep = canonical_graph(g)
        assert is_isomorphic(rep, g)
        assert canonical_form(rep) == canonical_form(g)

    def test_size_cap(self):
        with pytest.raises(UnsupportedSizeError):
            canonical_form(empty_graph(17))


class TestInducedSubgraph:
    def test_relabels_to_range(self):
        g = induced_subgraph(complete(4, (2,)), (1, 3))
        assert g == complete(2, (2,))

    @given(hypergraphs(max_n=5))
    def test_full_vertex_set_is_identity(self, g):
        assert induced_subgraph(g, range(g.n)) == g

    def test_drops_crossing_edges(self):
        g = induced_subgraph(chain_graph(), (0,))
        assert g.edges == ((0,),)


class TestEdgeTypeSet:
    def test_sorted_and_deduped(self):
        assert EdgeTypeSet((2, 1, 2)).sizes == (1, 2)

    def test_membership(self):
        types = EdgeTypeSet((1, 3))
        assert 1 in types and 2 not in types
        assert len(types) == 2

    def test_rejects_bad_sizes(self):
        with pytest.raises(InvalidArgumentError):
            EdgeTypeSet(())
        with pytest.raises(InvalidArgumentError):
            EdgeTypeSet((0,))
        with pytest.raises(UnsupportedSizeError):
            EdgeTypeSet((17,))


class TestNamedGraphs:
    def test_chain_shape(self):
        assert chain_graph().edges == ((0,), (0, 1))

    def test_marked_clique_shape(self):
        g = marked_clique(3)
        assert g.edges_of_size(1) == ((0,),)
        assert len(g.edges_of_size(2)) == 3
        with pytest.raises(InvalidArgumentError):
            marked_clique(1)

    def test_complete_layers(self):
        g = complete(3, (1, 2))
        assert len(g.edges) == 3 + 3
