import random

import networkx as nx
import pytest

from connsets import Graph, NearTreeClass, biconnected_blocks, block_cut_tree, classify_near_tree, is_biconnected
from connsets.blocks import near_tree_class
from connsets.errors import Disconnected
from connsets.families import block_graph_random, complete, connected_gnm, cycle, path, star
from streams import connected_upto


def bowtie() -> Graph:
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def _to_nx(g):
    ng = nx.Graph(g.edges())
    ng.add_nodes_from(range(g.n))
    return ng


def _check_against_networkx(g):
    blocks, cuts = biconnected_blocks(g)
    ng = _to_nx(g)
    ref = sorted((tuple(sorted(c)) for c in nx.biconnected_components(ng)))
    if g.n == 1:
        assert blocks == [frozenset({0})]
    else:
        assert [tuple(sorted(b)) for b in blocks] == ref
    assert cuts == frozenset(nx.articulation_points(ng))


def test_blocks_match_networkx_exhaustive():
    for g in connected_upto(7):
        _check_against_networkx(g)


def test_blocks_match_networkx_random_large():
    rng = random.Random(7)
    for seed in range(60):
        n = rng.randint(10, 60)
        _check_against_networkx(connected_gnm(n, n - 1 + rng.randint(0, n // 2), seed))
        _check_against_networkx(block_graph_random(rng.randint(1, 12), 5, seed))


def test_deep_path_does_not_recurse():
    blocks, cuts = biconnected_blocks(path(5000))
    assert len(blocks) == 4999 and len(cuts) == 4998


def test_block_cut_tree_of_bowtie():
    bct = block_cut_tree(bowtie())
    assert bct.blocks == (frozenset({0, 1, 2}), frozenset({2, 3, 4}))
    assert bct.cut_vertices == {2}
    assert bct.cut_blocks == {2: (0, 1)}
    assert bct.red_blocks == (0, 1)
    assert bct.leaf_blocks == (0, 1) and bct.interior_blocks == ()
    assert not bct.is_blue(2)
    assert bct.blocks_of(2) == (0, 1)
    assert sorted(bct.tree_edges()) == [(2, 0), (2, 1)]


def test_blue_vertex_and_leaves():
    bct = block_cut_tree(star(3))
    assert bct.blue_vertices == {0}
    assert bct.red_blocks == ()
    assert len(bct.leaf_blocks) == 3


def test_block_cut_tree_is_a_tree():
    for g in connected_upto(6):
        bct = block_cut_tree(g)
        t = nx.Graph()
        t.add_nodes_from(("b", i) for i in range(len(bct.blocks)))
        t.add_edges_from((("c", x), ("b", i)) for x, i in bct.tree_edges())
        assert nx.is_tree(t)


def test_requires_connected():
    with pytest.raises(Disconnected):
        block_cut_tree(Graph(3, [(0, 1)]))


def test_is_biconnected():
    assert is_biconnected(cycle(5)) and is_biconnected(complete(3))
    assert not is_biconnected(complete(2)) and not is_biconnected(bowtie())


@pytest.mark.parametrize(
    "g, cls",
    [
        (path(6), NearTreeClass.TREE),
        (star(4), NearTreeClass.TREE),
        (Graph(1), NearTreeClass.TREE),
        (Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), NearTreeClass.ONE_RED_K3),
        (complete(3), NearTreeClass.ONE_RED_K3),
        (bowtie(), NearTreeClass.LEAF_BLOCKS_34),
        (complete(4), NearTreeClass.LEAF_BLOCKS_34),
        (cycle(4), NearTreeClass.LEAF_BLOCKS_34),
        (complete(5), NearTreeClass.NOT_NEAR_TREE),
        # a lone triangle qualifies anywhere, even mid-path
        (Graph(5, [(0, 1), (1, 2), (2, 3), (1, 3), (3, 4)]), NearTreeClass.ONE_RED_K3),
        # a K_4 between two pendant edges is an interior red block
        (Graph(6, [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (4, 5)]), NearTreeClass.NOT_NEAR_TREE),
    ],
)
def test_near_tree_classes(g, cls):
    assert classify_near_tree(g) is cls
    assert cls.is_near_tree == (cls is not NearTreeClass.NOT_NEAR_TREE)


def test_strict_leaf_order():
    bct = block_cut_tree(complete(4))
    assert near_tree_class(bct, max_leaf_order=3) is NearTreeClass.NOT_NEAR_TREE
    assert near_tree_class(block_cut_tree(bowtie()), max_leaf_order=3) is NearTreeClass.LEAF_BLOCKS_34


def test_near_tree_definition_by_brute_force():
    # independent reading: no red block is interior, every red block is a leaf of order <= 4,
    # or exactly one red block which is a triangle
    for g in connected_upto(7):
        bct = block_cut_tree(g)
        red = [b for b in bct.blocks if len(b) >= 3]
        leaf = [b for i, b in enumerate(bct.blocks) if len(b & bct.cut_vertices) <= 1]
        expect = (
            not red
            or (len(red) == 1 and len(red[0]) == 3)
            or (all(b in leaf for b in red) and all(len(b) <= 4 for b in leaf))
        )
        assert classify_near_tree(g).is_near_tree == expect
