"""Biconnected blocks, the block-cut tree with its red/blue colouring, near trees."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .graph import Graph, require_connected


def biconnected_blocks(g: Graph) -> tuple[list[frozenset[int]], frozenset[int]]:
    """Blocks and cut vertices of a connected graph (Hopcroft-Tarjan lowpoints).

    Blocks are returned sorted by their sorted member tuple. ``K_1`` yields
    the single block ``{0}``.
    """
    n = g.n
    if n == 1:
        return [frozenset({0})], frozenset()
    disc = [-1] * n
    low = [0] * n
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    timer = 0
    for start in range(n):
        if disc[start] != -1:
            continue
        disc[start] = low[start] = timer
        timer += 1
        root_children = 0
        stack = [(start, -1, iter(g.neighbors(start)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == start:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != start:
                    cuts.add(parent)
                members: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    members.add(a)
                    members.add(b)
                    if (a, b) == (parent, v):
                        break
                blocks.append(frozenset(members))
        if root_children >= 2:
            cuts.add(start)
    blocks.sort(key=lambda b: tuple(sorted(b)))
    return blocks, frozenset(cuts)


@dataclass(frozen=True)
class BlockCutTree:
    """Bipartite tree on blocks and cut vertices.

    ``block_cuts[i]`` lists the cut vertices lying in block ``i``;
    ``cut_blocks[x]`` the indices of blocks containing cut vertex ``x``.
    """

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    block_cuts: tuple[tuple[int, ...], ...]
    cut_blocks: dict[int, tuple[int, ...]]

    def block_order(self, i: int) -> int:
        return len(self.blocks[i])

    def is_red(self, i: int) -> bool:
        return len(self.blocks[i]) >= 3

    def is_blue(self, x: int) -> bool:
        return len(self.cut_blocks.get(x, ())) >= 3

    def is_leaf(self, i: int) -> bool:
        # a one-node tree counts its only block as a leaf
        return len(self.block_cuts[i]) <= 1

    @cached_property
    def red_blocks(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.blocks)) if self.is_red(i))

    @cached_property
    def blue_vertices(self) -> frozenset[int]:
        return frozenset(x for x in self.cut_vertices if self.is_blue(x))

    @cached_property
    def leaf_blocks(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.blocks)) if self.is_leaf(i))

    @cached_property
    def interior_blocks(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.blocks)) if not self.is_leaf(i))

    def tree_edges(self) -> list[tuple[int, int]]:
        """Edges as (cut vertex, block index) pairs."""
        return [(x, i) for i, cs in enumerate(self.block_cuts) for x in cs]

    @cached_property
    def _vertex_blocks(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, b in enumerate(self.blocks):
            for v in b:
                out.setdefault(v, []).append(i)
        return {v: tuple(bs) for v, bs in out.items()}

    def blocks_of(self, v: int) -> tuple[int, ...]:
        return self._vertex_blocks[v]


def block_cut_tree(g: Graph) -> BlockCutTree:
    require_connected(g)
    blocks, cuts = biconnected_blocks(g)
    block_cuts = tuple(tuple(sorted(b & cuts)) for b in blocks)
    cut_blocks: dict[int, list[int]] = {x: [] for x in sorted(cuts)}
    for i, cs in enumerate(block_cuts):
        for x in cs:
            cut_blocks[x].append(i)
    return BlockCutTree(
        tuple(blocks), cuts, block_cuts, {x: tuple(bs) for x, bs in cut_blocks.items()}
    )


def is_biconnected(g: Graph) -> bool:
    """2-connected in the usual sense: connected, n >= 3, no cut vertex."""
    if g.n < 3 or not g.is_connected():
        return False
    return not biconnected_blocks(g)[1]


class NearTreeClass(enum.Enum):
    TREE = "Tree"
    ONE_RED_K3 = "OneRedK3"
    LEAF_BLOCKS_34 = "LeafBlocks34"
    NOT_NEAR_TREE = "NotNearTree"

    @property
    def is_near_tree(self) -> bool:
        return self is not NearTreeClass.NOT_NEAR_TREE


def near_tree_class(bct: BlockCutTree, *, max_leaf_order: int = 4) -> NearTreeClass:
    """Classify from the block-cut tree alone.

    ``max_leaf_order=3`` gives the stricter reading in which order-4 leaf
    blocks never qualify.
    """
    red = bct.red_blocks
    if not red:
        return NearTreeClass.TREE
    if len(red) == 1 and bct.block_order(red[0]) == 3:
        return NearTreeClass.ONE_RED_K3
    if not any(not bct.is_leaf(i) for i in red) and all(
        bct.block_order(i) <= max_leaf_order for i in bct.leaf_blocks
    ):
        return NearTreeClass.LEAF_BLOCKS_34
    return NearTreeClass.NOT_NEAR_TREE


def classify_near_tree(g: Graph) -> NearTreeClass:
    return near_tree_class(block_cut_tree(g))
