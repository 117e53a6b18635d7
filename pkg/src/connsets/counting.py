"""Exact counts and size sums of connected vertex sets.

Counts travel as pairs ``(N, S)``: the number of sets and the sum of their
sizes. Gluing families of sets that share nothing but one vertex multiplies
pairs like dual numbers, ``(a, b) * (c, d) = (a*c, a*d + b*c)``, and the
shared vertex is un-counted by multiplying with ``(1, -1)``. With ``M``
branches at a cut vertex ``x`` this is exactly

    N(G, x) = prod N_i(x)
    S(G, x) = sum S_i(x) prod_{j != i} N_j(x) - (M - 1) prod N_i(x)

which :func:`stats` applies at every cut vertex of the block-cut tree, so
the exponential enumeration is confined to single blocks.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from .blocks import BlockCutTree, block_cut_tree
from .errors import BudgetExceeded, EmptyRoot, NotACutVertex, RootNotConnected
from .graph import (
    Graph,
    bits,
    connected_components,
    mask_is_connected,
    to_mask,
)

DEFAULT_BUDGET = 10**9
# recursion nodes counted locally before charging the shared budget
_CHUNK = 4096

Pair = tuple[int, int]
ONE: Pair = (1, 0)
VERTEX: Pair = (1, 1)


def _mul(p: Pair, q: Pair) -> Pair:
    return p[0] * q[0], p[0] * q[1] + p[1] * q[0]


def _add(p: Pair, q: Pair) -> Pair:
    return p[0] + q[0], p[1] + q[1]


def _sub(p: Pair, q: Pair) -> Pair:
    return p[0] - q[0], p[1] - q[1]


def glue(pairs: Iterable[Pair]) -> Pair:
    """Combine rooted ``(N, S)`` pairs of branches sharing only their root."""
    n, s, k = 1, 0, 0
    for p in pairs:
        n, s = n * p[0], n * p[1] + s * p[0]
        k += 1
    if k == 0:
        return VERTEX
    return n, s - (k - 1) * n


@dataclass
class Budget:
    """Counter of recursion nodes shared across one computation."""

    limit: int = DEFAULT_BUDGET
    used: int = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceeded(self.limit)

    @property
    def remaining(self) -> int:
        return self.limit - self.used


def _as_budget(budget: Budget | int | None) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    if budget <= 0:
        raise ValueError("budget must be positive")
    return Budget(budget)


@dataclass(frozen=True)
class ConnStats:
    n: int
    count: int
    total: int

    @property
    def average(self) -> Fraction:
        return Fraction(self.total, self.count)

    @property
    def density(self) -> Fraction:
        return Fraction(self.total, self.count * self.n)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "N": str(self.count),
            "S": str(self.total),
            "A": _frac(self.average),
            "D": _frac(self.density),
        }


@dataclass(frozen=True)
class RootedStats:
    root: frozenset[int]
    count: int
    total: int

    @property
    def average(self) -> Fraction:
        return Fraction(self.total, self.count)


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# -- enumeration inside a vertex subset -------------------------------------


def iter_connected_masks(
    g: Graph, allowed: int | None = None, budget: Budget | int | None = None
) -> Iterator[int]:
    """Yield every connected vertex set inside ``allowed`` as a bitmask.

    Each set is produced once, grown from its smallest vertex by branching
    on frontier vertices (include / forbid).
    """
    budget = _as_budget(budget)
    masks = g.masks
    if allowed is None:
        allowed = (1 << g.n) - 1
    nodes = 0
    for s in bits(allowed):
        below = allowed & ((1 << s) - 1)
        stack = [(1 << s, masks[s] & allowed & ~below & ~(1 << s), below)]
        while stack:
            cur, frontier, forbidden = stack.pop()
            nodes += 1
            if nodes == _CHUNK:
                budget.spend(nodes)
                nodes = 0
            if not frontier:
                yield cur
                continue
            c = frontier & -frontier
            v = c.bit_length() - 1
            stack.append((cur, frontier ^ c, forbidden | c))
            grown = cur | c
            stack.append((grown, (frontier | masks[v]) & allowed & ~grown & ~forbidden, forbidden))
    budget.spend(nodes)


def _weighted_sum(
    masks: tuple[int, ...],
    weights: dict[int, Pair],
    seed: int,
    allowed: int,
    forbidden: int,
    budget: Budget,
) -> Pair:
    """Sum over connected sets ``U`` with ``seed <= U <= allowed``, ``U`` avoiding
    ``forbidden``, of the product of vertex weights. ``seed`` must be connected."""
    start_w = ONE
    frontier = 0
    for v in bits(seed):
        start_w = _mul(start_w, weights[v])
        frontier |= masks[v]
    frontier &= allowed & ~seed & ~forbidden
    acc_n = acc_s = 0
    nodes = 0
    stack = [(seed, start_w, frontier, forbidden)]
    while stack:
        cur, w, frontier, forb = stack.pop()
        nodes += 1
        if nodes == _CHUNK:
            budget.spend(nodes)
            nodes = 0
        if not frontier:
            acc_n += w[0]
            acc_s += w[1]
            continue
        c = frontier & -frontier
        v = c.bit_length() - 1
        stack.append((cur, w, frontier ^ c, forb | c))
        grown = cur | c
        wv = weights[v]
        stack.append(
            (
                grown,
                (w[0] * wv[0], w[0] * wv[1] + w[1] * wv[0]),
                (frontier | masks[v]) & allowed & ~grown & ~forb,
                forb,
            )
        )
    budget.spend(nodes)
    return acc_n, acc_s


def _block_sums(
    g: Graph,
    block: frozenset[int],
    top: int,
    weights: dict[int, Pair],
    required: int,
    want_outside: bool,
    budget: Budget,
) -> tuple[Pair, Pair]:
    """Weighted sums over connected sets of one block.

    Returns (sets containing ``top`` and ``required``, sets avoiding ``top``).
    """
    allowed = to_mask(block)
    top_bit = 1 << top
    w = dict(weights)
    w[top] = VERTEX
    inside = _weighted_sum(g.masks, w, top_bit | (required & allowed), allowed, 0, budget)
    outside = (0, 0)
    if want_outside:
        rest = allowed & ~top_bit
        for s in bits(rest):
            below = (1 << s) - 1
            part = _weighted_sum(g.masks, w, 1 << s, rest, below & rest, budget)
            outside = _add(outside, part)
    return inside, outside


# -- block-cut tree dynamic programme ----------------------------------------


@dataclass
class _Rooted:
    """Per-vertex results of the block-cut tree DP rooted at ``root``."""

    root: int
    rooted: dict[int, Pair] = field(default_factory=dict)
    total: dict[int, Pair] = field(default_factory=dict)
    branch: dict[int, list[tuple[int, Pair, Pair]]] = field(default_factory=dict)


def _tree_dp(
    g: Graph,
    bct: BlockCutTree,
    root: int,
    required: int,
    want_total: bool,
    budget: Budget,
) -> _Rooted:
    """Rooted and total pairs for every vertex's hanging subgraph.

    ``rooted[v]`` counts connected sets of the part hanging below ``v`` that
    contain ``v`` (and every required vertex down there); ``total[v]`` counts
    all its connected sets. ``branch[v]`` keeps, per child block, the pair
    of that branch rooted at ``v`` and the pair of its sets avoiding ``v``.
    """
    # orient the block-cut tree from root: order blocks parent-first
    order: list[tuple[int, int]] = []  # (block index, parent vertex)
    seen_blocks: set[int] = set()
    stack = [root]
    children: dict[int, list[int]] = {}
    while stack:
        v = stack.pop()
        kids = [b for b in bct.blocks_of(v) if b not in seen_blocks]
        children[v] = kids
        for b in kids:
            seen_blocks.add(b)
            order.append((b, v))
            for u in sorted(bct.blocks[b] - {v}, reverse=True):
                stack.append(u)
    res = _Rooted(root)
    for v in children:
        res.branch[v] = []
    for b, top in reversed(order):
        block = bct.blocks[b]
        weights = {}
        for u in block:
            if u == top:
                continue
            if u not in res.rooted:
                _finish_vertex(res, u, want_total)
            weights[u] = res.rooted[u]
        inside, outside = _block_sums(g, block, top, weights, required, want_total, budget)
        if want_total:
            for u in block - {top}:
                outside = _add(outside, _sub(res.total[u], res.rooted[u]))
        res.branch[top].append((b, inside, outside))
    for v in children:
        if v not in res.rooted:
            _finish_vertex(res, v, want_total)
    return res


def _finish_vertex(res: _Rooted, v: int, want_total: bool) -> None:
    branches = res.branch.get(v, [])
    rooted = glue(inside for _, inside, _ in branches)
    res.rooted[v] = rooted
    if want_total:
        tot = rooted
        for _, _, outside in branches:
            tot = _add(tot, outside)
        res.total[v] = tot


def _dp_root(bct: BlockCutTree) -> int:
    return min(bct.cut_vertices) if bct.cut_vertices else 0


def stats(
    g: Graph, budget: Budget | int | None = None, *, bct: BlockCutTree | None = None
) -> ConnStats:
    """``N(G)`` and ``S(G)`` of a connected graph via cut-vertex decomposition.

    The DP is rooted at the smallest-id cut vertex; blocks are enumerated by
    frontier recursion, everything else is glued with the product formulas.
    """
    if bct is None:
        bct = block_cut_tree(g)
    budget = _as_budget(budget)
    res = _tree_dp(g, bct, _dp_root(bct), 0, True, budget)
    n, s = res.total[res.root]
    return ConnStats(g.n, n, s)


def stats_bruteforce(g: Graph, budget: Budget | int | None = None) -> ConnStats:
    """Reference count: test every nonempty vertex subset for connectivity.

    Works on disconnected graphs too.
    """
    budget = _as_budget(budget)
    total_subsets = (1 << g.n) - 1
    if total_subsets > budget.limit - budget.used:
        raise BudgetExceeded(budget.limit, "brute-force subset scan")
    budget.spend(total_subsets)
    masks = g.masks
    count = size = 0
    for mask in range(1, total_subsets + 1):
        if mask_is_connected(masks, mask):
            count += 1
            size += mask.bit_count()
    return ConnStats(g.n, count, size)


def rooted_stats(
    g: Graph,
    root: Iterable[int] | int,
    budget: Budget | int | None = None,
    *,
    bct: BlockCutTree | None = None,
) -> RootedStats:
    """``N(G,H)`` and ``S(G,H)``: connected sets containing the connected set ``H``."""
    if bct is None:
        bct = block_cut_tree(g)
    h = frozenset([root]) if isinstance(root, int) else frozenset(root)
    if not h:
        raise EmptyRoot("root set is empty")
    if any(not 0 <= v < g.n for v in h):
        raise ValueError(f"root set {sorted(h)} not inside 0..{g.n - 1}")
    if not g.is_connected_set(h):
        raise RootNotConnected(f"root set {sorted(h)} does not induce a connected subgraph")
    budget = _as_budget(budget)
    start = min(h)
    res = _tree_dp(g, bct, start, to_mask(h), False, budget)
    n, s = res.rooted[start]
    return RootedStats(h, n, s)


def vertex_profile(
    g: Graph, budget: Budget | int | None = None, *, bct: BlockCutTree | None = None
) -> list[int]:
    """``N(G, x)`` for every vertex ``x``; the entries sum to ``S(G)``."""
    if bct is None:
        bct = block_cut_tree(g)
    budget = _as_budget(budget)
    return [_tree_dp(g, bct, x, 0, False, budget).rooted[x][0] for x in range(g.n)]


@dataclass(frozen=True)
class CutDecomposition:
    """Statistics of the branches of ``G`` at a cut vertex.

    ``components[i]`` is the vertex set of ``G_i`` (a component of ``G - x``);
    ``G'_i`` is ``G_i`` plus ``x``. ``count[i] = N(G_i)``,
    ``rooted_count[i] = N(G'_i, x)`` and so on.
    """

    graph: Graph
    cut_vertex: int
    components: tuple[frozenset[int], ...]
    count: tuple[int, ...]
    total: tuple[int, ...]
    rooted_count: tuple[int, ...]
    rooted_total: tuple[int, ...]

    @property
    def M(self) -> int:
        return len(self.components)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    def branch(self, i: int) -> tuple[Graph, int]:
        """``G'_i`` relabelled, with the new id of the cut vertex."""
        sub, old = self.graph.induced(self.components[i] | {self.cut_vertex})
        return sub, old.index(self.cut_vertex)

    def glued(self) -> Pair:
        """``(N(G,x), S(G,x))`` from the product formulas."""
        return glue(zip(self.rooted_count, self.rooted_total))

    def average_path_ratio(self, i: int, budget: Budget | int | None = None) -> Fraction:
        """``a_i = av(G'_i, x) / n_i``."""
        from .minimal import minimal_family

        sub, x = self.branch(i)
        return minimal_family(sub, x, budget).av / len(self.components[i])


def cut_decomposition(
    g: Graph, x: int, budget: Budget | int | None = None, *, bct: BlockCutTree | None = None
) -> CutDecomposition:
    if bct is None:
        bct = block_cut_tree(g)
    comps = connected_components(g, [x])
    if len(comps) < 2:
        raise NotACutVertex(f"vertex {x} is not a cut vertex")
    budget = _as_budget(budget)
    res = _tree_dp(g, bct, x, 0, True, budget)
    by_vertex: dict[int, tuple[Pair, Pair]] = {}
    for b, inside, outside in res.branch[x]:
        by_vertex[min(bct.blocks[b] - {x})] = (inside, outside)
    rooted, everything = [], []
    for comp in comps:
        (inside, outside) = next(v for k, v in by_vertex.items() if k in comp)
        rooted.append(inside)
        everything.append(outside)
    return CutDecomposition(
        g,
        x,
        tuple(comps),
        tuple(p[0] for p in everything),
        tuple(p[1] for p in everything),
        tuple(p[0] for p in rooted),
        tuple(p[1] for p in rooted),
    )


def path_closed_form(n: int) -> tuple[int, int]:
    """``(N, S)`` of the path on ``n`` vertices: its connected sets are intervals."""
    return n * (n + 1) // 2, n * (n + 1) * (n + 2) // 6
