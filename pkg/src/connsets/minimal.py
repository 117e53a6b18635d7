"""Closures of connected sets along a shortest-distance tree, and av(G, x).

For a root ``x`` every connected set ``U`` of ``G - x`` gets an anchor
``v_U`` (a vertex of ``U`` nearest to ``x``; ties go to the smallest id)
and the tree path ``p_U`` from the anchor up to ``x``. Sets with the same
closure ``U | p_U`` are compared by their paths; the one with the longest
path is the representative ("minimal") of that closure class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

from .counting import Budget, _as_budget, iter_connected_masks, rooted_stats
from .graph import Graph, SpanningTree, bfs_spanning_tree, bits, require_connected, to_mask


@dataclass(frozen=True)
class Entry:
    members: frozenset[int]
    anchor: int
    path: tuple[int, ...]
    closure: frozenset[int]

    @property
    def path_len(self) -> int:
        return len(self.path) - 1


@dataclass(frozen=True)
class MinimalFamily:
    """All connected sets of ``G - x`` with their anchors, and the minimals.

    Sets are held as ``(mask, anchor)`` records; :attr:`entries` and
    :attr:`minimals` expand them on first use.
    """

    root: int
    tree: SpanningTree
    records: tuple[tuple[int, int], ...]
    minimal_records: tuple[tuple[int, int], ...]

    def _entry(self, mask: int, anchor: int) -> Entry:
        members = frozenset(bits(mask))
        path = self.tree.path_to_root(anchor)
        return Entry(members, anchor, path, members | frozenset(path))

    @cached_property
    def entries(self) -> tuple[Entry, ...]:
        return tuple(self._entry(m, a) for m, a in self.records)

    @cached_property
    def minimals(self) -> tuple[Entry, ...]:
        return tuple(self._entry(m, a) for m, a in sorted(self.minimal_records, key=_order_key))

    @property
    def num_minimals(self) -> int:
        return len(self.minimal_records)

    @property
    def num_entries(self) -> int:
        return len(self.records)

    @cached_property
    def path_len_sum(self) -> int:
        depth = self.tree.depth
        return sum(depth[a] for _, a in self.minimal_records)

    @property
    def av(self) -> Fraction | None:
        """Average path length over the minimals; ``None`` for ``K_1``."""
        if not self.minimal_records:
            return None
        return Fraction(self.path_len_sum, len(self.minimal_records))

    def y_family(self, entry: Entry) -> list[frozenset[int]]:
        """``Y(U)``: ``U`` extended by successive prefixes of its path, ``x`` excluded."""
        out = []
        grown = set(entry.members)
        for v in entry.path[:-1]:
            grown.add(v)
            out.append(frozenset(grown))
        return out


def _order_key(record: tuple[int, int]) -> tuple[int, list[int]]:
    return record[0].bit_count(), list(bits(record[0]))


def minimal_family(g: Graph, x: int, budget: Budget | int | None = None) -> MinimalFamily:
    """Materialise ``C(G - x)`` and pick the representative of each closure class."""
    require_connected(g)
    budget = _as_budget(budget)
    tree = bfs_spanning_tree(g, x)
    depth = tree.depth
    levels = [0] * (max(depth) + 1)
    for v, d in enumerate(depth):
        levels[d] |= 1 << v
    path_mask = [to_mask(tree.path_to_root(v)) for v in range(g.n)]
    allowed = ((1 << g.n) - 1) & ~(1 << x)
    records = []
    best: dict[int, tuple[int, int]] = {}  # closure -> (mask, anchor)
    for mask in iter_connected_masks(g, allowed, budget):
        for level in levels:
            hit = mask & level
            if hit:
                break
        anchor = (hit & -hit).bit_length() - 1
        records.append((mask, anchor))
        closure = mask | path_mask[anchor]
        held = best.get(closure)
        if held is None:
            best[closure] = (mask, anchor)
            continue
        mine, theirs = path_mask[anchor], path_mask[held[1]]
        if mine & theirs not in (mine, theirs):
            raise AssertionError(f"paths in closure class {list(bits(closure))} not nested")
        if depth[anchor] > depth[held[1]]:
            best[closure] = (mask, anchor)
    return MinimalFamily(x, tree, tuple(records), tuple(best.values()))


def av(g: Graph, x: int, budget: Budget | int | None = None) -> Fraction | None:
    return minimal_family(g, x, budget).av


@dataclass(frozen=True)
class AvCheck:
    """Outcome of the av inequality and the two counting identities behind it."""

    av: Fraction
    rooted_count: int  # N(G, x)
    outside_count: int  # N(G - x)
    num_minimals: int
    path_len_sum: int

    @property
    def inequality_holds(self) -> bool:
        return self.av * (self.rooted_count - 1) >= self.outside_count

    @property
    def sum_identity_holds(self) -> bool:
        return self.path_len_sum == self.outside_count

    @property
    def count_bound_holds(self) -> bool:
        return self.rooted_count >= self.num_minimals + 1

    @property
    def ok(self) -> bool:
        return self.inequality_holds and self.sum_identity_holds and self.count_bound_holds

    @property
    def equality(self) -> bool:
        return self.av * (self.rooted_count - 1) == self.outside_count


def av_inequality(g: Graph, x: int, budget: Budget | int | None = None) -> AvCheck:
    """Evaluate ``av(G,x) * (N(G,x) - 1) >= N(G - x)`` exactly (needs ``n >= 2``)."""
    budget = _as_budget(budget)
    fam = minimal_family(g, x, budget)
    if fam.av is None:
        raise ValueError("av is undefined on a single vertex")
    rooted = rooted_stats(g, x, budget).count
    return AvCheck(fam.av, rooted, fam.num_entries, fam.num_minimals, fam.path_len_sum)


def partition_ok(fam: MinimalFamily) -> bool:
    """The ``Y(U)`` families are pairwise disjoint and cover ``C(G - x)``."""
    seen: set[frozenset[int]] = set()
    for e in fam.minimals:
        ys = fam.y_family(e)
        if len(ys) != e.path_len:
            return False
        for y in ys:
            if y in seen:
                return False
            seen.add(y)
    return seen == {e.members for e in fam.entries}


def neighbourhood_is_clique_in_block(g: Graph, x: int, block: frozenset[int]) -> bool:
    nbrs = g.neighbors(x)
    if not set(nbrs) <= block:
        return False
    nmask = to_mask(nbrs)
    return all((g.neighbor_mask(v) | (1 << v)) & nmask == nmask for v in nbrs)
