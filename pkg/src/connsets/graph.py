"""Simple undirected graphs on dense vertex ids, plus traversal helpers.

Vertex sets are plain ``frozenset[int]`` values; internally most routines
work on integer bitmasks, bit ``v`` standing for vertex ``v``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .errors import Disconnected, DuplicateEdge, SelfLoop, VertexOutOfRange

MAX_ORDER = 16384

VertexSet = frozenset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Immutable simple graph with vertices ``0..n-1``.

    >>> g = Graph(3, [(0, 1), (1, 2)])
    >>> g.neighbors(1)
    (0, 2)
    """

    __slots__ = ("n", "_adj", "_masks", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), *, strict: bool = True):
        if not 1 <= n <= MAX_ORDER:
            raise ValueError(f"vertex count must be in 1..{MAX_ORDER}, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if v in adj[u]:
                if strict:
                    raise DuplicateEdge(f"duplicate edge ({u}, {v})")
                continue
            adj[u].add(v)
            adj[v].add(u)
            m += 1
        self.n = n
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._masks = tuple(to_mask(a) for a in adj)
        self._m = m

    # -- basic queries -------------------------------------------------

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    @property
    def num_edges(self) -> int:
        return self._m

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    def vertices(self) -> range:
        return range(self.n)

    def min_degree(self) -> int:
        return min(len(a) for a in self._adj)

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Subgraph induced by ``vertices``, relabelled in ascending id order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(vertices))
        if not old:
            raise ValueError("cannot induce on an empty vertex set")
        new = {v: i for i, v in enumerate(old)}
        edges = [(new[u], new[v]) for u in old for v in self._adj[u] if u < v and v in new]
        return Graph(len(old), edges), old

    def is_connected_set(self, vertices: Iterable[int]) -> bool:
        return mask_is_connected(self._masks, to_mask(vertices))

    def is_connected(self) -> bool:
        return mask_is_connected(self._masks, (1 << self.n) - 1)

    def is_path(self) -> bool:
        if not self.is_connected() or self._m != self.n - 1:
            return False
        return all(len(a) <= 2 for a in self._adj)

    def is_tree(self) -> bool:
        return self._m == self.n - 1 and self.is_connected()

    # -- value semantics -----------------------------------------------

    def _key(self) -> tuple[int, tuple[int, ...]]:
        return self.n, self._masks

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def mask_is_connected(masks: tuple[int, ...] | list[int], mask: int) -> bool:
    """True iff the vertices in ``mask`` induce a connected subgraph (empty: False)."""
    if not mask:
        return False
    reach = mask & -mask
    frontier = reach
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= masks[v]
        frontier = grow & mask & ~reach
        reach |= frontier
    return reach == mask


def component_mask(masks: tuple[int, ...], start: int, allowed: int) -> int:
    """Bitmask of the component of ``start`` within the vertices of ``allowed``."""
    reach = 1 << start
    frontier = reach
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= masks[v]
        frontier = grow & allowed & ~reach
        reach |= frontier
    return reach


def connected_components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Components of ``g`` minus ``removed``, ordered by their smallest member."""
    remaining = ((1 << g.n) - 1) & ~to_mask(removed)
    out = []
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = component_mask(g.masks, start, remaining)
        out.append(frozenset(bits(comp)))
        remaining &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise Disconnected("graph is not connected")


def bfs_distances(g: Graph, root: int) -> list[int | None]:
    """Plain BFS distances from ``root``; unreachable vertices get ``None``."""
    dist: list[int | None] = [None] * g.n
    dist[root] = 0
    queue = [root]
    for v in queue:
        for w in g.neighbors(v):
            if dist[w] is None:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


@dataclass(frozen=True)
class SpanningTree:
    """Rooted shortest-distance spanning tree."""

    root: int
    parent: tuple[int | None, ...]
    depth: tuple[int, ...]

    def path_to_root(self, v: int) -> tuple[int, ...]:
        """Vertices of the tree path from ``v`` up to the root, inclusive."""
        path = [v]
        while path[-1] != self.root:
            path.append(self.parent[path[-1]])
        return tuple(path)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(
            (min(v, p), max(v, p)) for v, p in enumerate(self.parent) if p is not None
        )

    @property
    def height(self) -> int:
        return max(self.depth)


def bfs_spanning_tree(g: Graph, root: int) -> SpanningTree:
    """Shortest-distance spanning tree rooted at ``root``.

    Levels are processed in ascending id order and every non-root vertex
    takes the smallest-id neighbour one level up as its parent.
    """
    dist = bfs_distances(g, root)
    if any(d is None for d in dist):
        raise Disconnected("graph is not connected")
    parent: list[int | None] = [None] * g.n
    for v in range(g.n):
        if v != root:
            parent[v] = min(w for w in g.neighbors(v) if dist[w] == dist[v] - 1)
    return SpanningTree(root, tuple(parent), tuple(dist))
