"""Tests for tree words, the truncated tree and the periodic torus."""

from itertools import product

import networkx as nx
import numpy as np
import pytest

from spectral_lab.core.graph import (
    ROOT,
    LatticeTorus,
    TruncatedTree,
    all_words,
    children,
    common_prefix_len,
    format_word,
    parent,
    parse_word,
    tree_path_length,
    validate_word,
)


class TestWords:
    """Tests for word helpers."""

    def test_children_in_letter_order(self) -> None:
        assert children((1,), 3) == [(1, 1), (1, 2), (1, 3)]

    def test_root_is_its_own_parent(self) -> None:
        assert parent(ROOT) == ROOT
        assert parent((2, 1)) == (2,)

    def test_common_prefix_and_path_length(self) -> None:
        assert common_prefix_len((1, 2, 1), (1, 2, 2)) == 2
        assert common_prefix_len((2,), (1, 2)) == 0
        assert tree_path_length((1, 2), (1, 1)) == 2
        assert tree_path_length((1, 2), (2,)) == 3
        assert tree_path_length(ROOT, (1, 1, 1)) == 3

    def test_validate_rejects_out_of_range_letter(self) -> None:
        with pytest.raises(ValueError, match="out of range"):
            validate_word((1, 3), 2)

    def test_validate_rejects_bad_branching(self) -> None:
        with pytest.raises(ValueError, match="branching"):
            validate_word((1,), 0)

    def test_format_word(self) -> None:
        assert format_word(ROOT) == "∅"
        assert format_word((1, 2)) == "12"
        assert format_word((1, 10)) == "1.10"

    @pytest.mark.parametrize(
        ("text", "branching", "expected"),
        [
            ("12", 2, (1, 2)),
            ("1.2", 2, (1, 2)),
            ("1.10", 12, (1, 10)),
            ("", 2, ()),
            ("root", 3, ()),
            ("∅", 3, ()),
        ],
    )
    def test_parse_word(self, text: str, branching: int, expected: tuple[int, ...]) -> None:
        assert parse_word(text, branching) == expected

    @pytest.mark.parametrize(("text", "branching"), [("13", 2), ("12", 12), ("1a", 2)])
    def test_parse_word_rejects(self, text: str, branching: int) -> None:
        with pytest.raises(ValueError):
            parse_word(text, branching)

    def test_all_words_shortest_first(self) -> None:
        words = list(all_words(2, 2))
        assert words == [(), (1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]


class TestTruncatedTree:
    """Tests for the level-order indexing of the truncated tree."""

    def test_vertex_count(self) -> None:
        assert TruncatedTree(2, 3).vertex_count == 15
        assert TruncatedTree(1, 5).vertex_count == 6
        assert TruncatedTree(3, 2).vertex_count == 13

    def test_index_layout(self) -> None:
        tree = TruncatedTree(2, 3)
        assert tree.index(ROOT) == 0
        assert tree.index((1,)) == 1
        assert tree.index((2,)) == 2
        assert tree.index((1, 1)) == 3
        assert tree.index((2, 2)) == 6
        assert tree.word(6) == (2, 2)

    @pytest.mark.parametrize(("branching", "depth"), [(1, 6), (2, 5), (3, 4), (5, 3)])
    def test_index_word_roundtrip(self, branching: int, depth: int) -> None:
        tree = TruncatedTree(branching, depth)
        for idx in range(tree.vertex_count):
            assert tree.index(tree.word(idx)) == idx
        assert tree.words() == list(all_words(branching, depth))

    def test_index_rejects_deep_word(self) -> None:
        with pytest.raises(ValueError, match="deeper"):
            TruncatedTree(2, 2).index((1, 1, 1))

    def test_word_rejects_bad_index(self) -> None:
        with pytest.raises(ValueError):
            TruncatedTree(2, 2).word(7)

    def test_parents_and_depths(self) -> None:
        tree = TruncatedTree(3, 3)
        for idx in range(1, tree.vertex_count):
            w = tree.word(idx)
            assert tree.word(int(tree.parents[idx])) == parent(w)
            assert tree.depths[idx] == len(w)
            assert tree.last_letters[idx] == w[-1]

    def test_neighbors_parent_first(self) -> None:
        tree = TruncatedTree(2, 2)
        assert tree.neighbors(0) == [1, 2]
        assert tree.neighbors(1) == [0, 3, 4]
        assert tree.neighbors(3) == [1]

    def test_child_indices_boundary(self) -> None:
        tree = TruncatedTree(2, 2)
        kids = tree.child_indices(2)
        assert kids[0] == tree.index((2,))
        assert kids[1] == tree.index((1, 2))
        assert np.all(kids[list(tree.level(2))] == -1)

    def test_level_ranges(self) -> None:
        tree = TruncatedTree(3, 2)
        assert tree.level(0) == range(0, 1)
        assert tree.level(1) == range(1, 4)
        assert tree.level(2) == range(4, 13)
        with pytest.raises(ValueError):
            tree.level(3)

    def test_prefix_and_distance_matrices(self) -> None:
        tree = TruncatedTree(2, 3)
        words = tree.words()
        cpl = tree.common_prefix_matrix()
        dist = tree.path_length_matrix()
        for a, b in product(range(tree.vertex_count), repeat=2):
            assert cpl[a, b] == common_prefix_len(words[a], words[b])
            assert dist[a, b] == tree_path_length(words[a], words[b])

    def test_common_prefix_with(self) -> None:
        tree = TruncatedTree(2, 3)
        target = tree.index((1, 2))
        expected = [common_prefix_len(w, (1, 2)) for w in tree.words()]
        assert tree.common_prefix_with(target).tolist() == expected

    def test_ancestor_table(self) -> None:
        tree = TruncatedTree(2, 2)
        table = tree.ancestor_table()
        idx = tree.index((2, 1))
        assert table[:, idx].tolist() == [0, tree.index((2,)), idx]
        assert table[2, tree.index((1,))] == -1

    def test_unit_conductance_by_default(self) -> None:
        tree = TruncatedTree(2, 2)
        assert tree.unit_conductance
        assert tree.conductance[0] == 0.0

    def test_with_conductance(self) -> None:
        tree = TruncatedTree.with_conductance(2, 2, lambda x, y: float(len(y)))
        assert tree.conductance[tree.index((1,))] == 1.0
        assert tree.conductance[tree.index((2, 1))] == 2.0
        assert not tree.unit_conductance

    def test_rejects_non_positive_conductance(self) -> None:
        values = np.ones(7)
        values[3] = 0.0
        with pytest.raises(ValueError, match="positive"):
            TruncatedTree(2, 2, values)

    def test_rejects_bad_shape(self) -> None:
        with pytest.raises(ValueError, match="shape"):
            TruncatedTree(2, 2, np.ones(5))

    def test_arrays_are_read_only(self) -> None:
        tree = TruncatedTree(2, 2)
        with pytest.raises(ValueError):
            tree.parents[1] = 5

    @pytest.mark.parametrize(("branching", "depth"), [(0, 2), (2, 0)])
    def test_rejects_bad_shape_parameters(self, branching: int, depth: int) -> None:
        with pytest.raises(ValueError):
            TruncatedTree(branching, depth)

    def test_to_networkx(self) -> None:
        tree = TruncatedTree(2, 3)
        graph = tree.to_networkx()
        assert graph.number_of_nodes() == tree.vertex_count
        assert graph.number_of_edges() == tree.vertex_count - 1
        assert nx.is_tree(graph)
        assert graph.edges[0, 1]["conductance"] == 1.0

    def test_to_networkx_root_loop(self) -> None:
        graph = TruncatedTree(2, 2).to_networkx(root_loop=True)
        assert graph.has_edge(0, 0)
        assert nx.number_of_selfloops(graph) == 1

    def test_bfs_distances_match_path_length(self) -> None:
        tree = TruncatedTree(3, 3)
        lengths = dict(nx.shortest_path_length(tree.to_networkx(), source=tree.index((1, 2))))
        for idx, d in lengths.items():
            assert d == tree_path_length(tree.word(idx), (1, 2))


class TestLatticeTorus:
    """Tests for the periodic lattice."""

    def test_shape_and_count(self) -> None:
        t = LatticeTorus(3, 4)
        assert t.shape == (4, 4, 4)
        assert t.vertex_count == 64

    def test_neighbors_wrap(self) -> None:
        t = LatticeTorus(2, 4)
        assert t.neighbors(0) == [4, 12, 1, 3]

    def test_neighbors_repeat_on_side_two(self) -> None:
        t = LatticeTorus(1, 2)
        assert t.neighbors(0) == [1, 1]

    def test_flat_index_roundtrip(self) -> None:
        t = LatticeTorus(2, 5)
        for idx in range(t.vertex_count):
            assert t.flat_index(t.coordinates(idx)) == idx
        assert t.flat_index((-1, 5)) == t.flat_index((4, 0))

    @pytest.mark.parametrize(("dimension", "side"), [(0, 4), (2, 1)])
    def test_rejects_bad_parameters(self, dimension: int, side: int) -> None:
        with pytest.raises(ValueError):
            LatticeTorus(dimension, side)
