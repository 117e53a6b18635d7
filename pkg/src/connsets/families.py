"""Named graph families and seeded random constructions.

Random families draw from :class:`Pcg32`, the PCG32 generator (XSH-RR
output, 64-bit LCG state, multiplier 6364136223846793005) seeded with
``pcg32_srandom(seed, 54)``; bounded draws use PCG's unbiased rejection
rule. Any implementation of those two routines reproduces the graphs here
bit for bit.

Family strings look like ``"baton:L=6,k=4"`` or ``"cograph_random:n=12,seed=7"``;
a value ``lo..hi`` (optionally ``lo..hi:step``) makes a stream, and a value
naming another parameter ties the two (``"baton:L=2..8,k=L"``).
"""

from __future__ import annotations

import heapq
import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from .errors import InvalidParams
from .graph import Graph

_MASK64 = (1 << 64) - 1
_MULT = 6364136223846793005
DEFAULT_STREAM = 54


class Pcg32:
    """Minimal PCG32 (pcg32_random_r / pcg32_boundedrand_r)."""

    def __init__(self, seed: int, stream: int = DEFAULT_STREAM):
        self.state = 0
        self.inc = ((stream << 1) | 1) & _MASK64
        self.next_u32()
        self.state = (self.state + (seed & _MASK64)) & _MASK64
        self.next_u32()

    def next_u32(self) -> int:
        old = self.state
        self.state = (old * _MULT + self.inc) & _MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & 0xFFFFFFFF
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & 0xFFFFFFFF

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``; ``bound`` at most 2**32."""
        if not 0 < bound <= 1 << 32:
            raise ValueError(f"bound {bound} outside 1..2**32")
        threshold = (1 << 32) % bound
        while True:
            r = self.next_u32()
            if r >= threshold:
                return r % bound

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


# -- deterministic families -------------------------------------------------


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    _need(n >= 1, "complete needs n >= 1")
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    _need(a >= 1 and b >= 1, "complete_bipartite needs a, b >= 1")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(m: int) -> Graph:
    """``K_{1,m}`` with centre 0."""
    _need(m >= 1, "star needs m >= 1")
    return Graph(m + 1, [(0, i) for i in range(1, m + 1)])


def spider(legs: int, length: int) -> Graph:
    """Centre 0 with ``legs`` pendant paths of ``length`` vertices each."""
    _need(legs >= 1 and length >= 1, "spider needs legs, length >= 1")
    edges = []
    for leg in range(legs):
        first = 1 + leg * length
        edges.append((0, first))
        edges.extend((first + i, first + i + 1) for i in range(length - 1))
    return Graph(1 + legs * length, edges)


def caterpillar(s: int, k: int) -> Graph:
    """Spine path ``0..s-1``, each spine vertex carrying ``k`` leaves."""
    _need(s >= 1 and k >= 0, "caterpillar needs s >= 1, k >= 0")
    edges = [(i, i + 1) for i in range(s - 1)]
    nxt = s
    for i in range(s):
        for _ in range(k):
            edges.append((i, nxt))
            nxt += 1
    return Graph(nxt, edges)


def baton(L: int, k: int) -> Graph:
    """Path ``0..L-1`` with ``k`` pendant leaves at each end."""
    _need(L >= 2 and k >= 0, "baton needs L >= 2, k >= 0")
    edges = [(i, i + 1) for i in range(L - 1)]
    nxt = L
    for end in (0, L - 1):
        for _ in range(k):
            edges.append((end, nxt))
            nxt += 1
    return Graph(nxt, edges)


# -- seeded families ---------------------------------------------------------


def random_tree_edges(n: int, rng: Pcg32) -> list[tuple[int, int]]:
    """Uniform labelled spanning tree of ``K_n`` via a random Pruefer code."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    code = [rng.below(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in code:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in code:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, w))
    return edges


def connected_gnm(n: int, m: int, seed: int) -> Graph:
    """Random connected graph: uniform spanning tree plus ``m - n + 1`` extra edges."""
    _need(n >= 1 and n - 1 <= m <= n * (n - 1) // 2, f"connected_gnm needs n-1 <= m <= n(n-1)/2, got n={n}, m={m}")
    rng = Pcg32(seed)
    tree = random_tree_edges(n, rng)
    used = set(tree)
    rest = [e for e in itertools.combinations(range(n), 2) if e not in used]
    rng.shuffle(rest)
    return Graph(n, tree + rest[: m - (n - 1)])


def cubic_random(n: int, seed: int, max_tries: int = 100_000) -> Graph:
    """Connected 3-regular graph from the pairing model, rejecting until simple and connected."""
    _need(n >= 4 and n % 2 == 0, "cubic_random needs even n >= 4")
    rng = Pcg32(seed)
    points = [v for v in range(n) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            e = (min(u, v), max(u, v))
            if u == v or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            g = Graph(n, sorted(edges))
            if g.is_connected():
                return g
    raise InvalidParams(f"no simple connected cubic graph found in {max_tries} tries")


def cograph_random(n: int, seed: int) -> Graph:
    """Random connected cograph built by recursive disjoint union / join.

    The top operation is always a join so the result is connected; inner
    operations are chosen by a coin flip.
    """
    _need(n >= 1, "cograph_random needs n >= 1")
    rng = Pcg32(seed)
    edges: list[tuple[int, int]] = []

    def build(lo: int, hi: int, top: bool) -> None:
        if hi - lo == 1:
            return
        cut = lo + 1 + rng.below(hi - lo - 1)
        join = top or rng.below(2) == 1
        build(lo, cut, False)
        build(cut, hi, False)
        if join:
            edges.extend((u, v) for u in range(lo, cut) for v in range(cut, hi))

    build(0, n, True)
    return Graph(n, edges)


def block_graph_random(blocks: int, max_order: int, seed: int) -> Graph:
    """Complete blocks glued at random existing vertices (a connected block graph)."""
    _need(blocks >= 1 and max_order >= 2, "block_graph_random needs blocks >= 1, max_order >= 2")
    rng = Pcg32(seed)
    first = 2 + rng.below(max_order - 1)
    edges = list(itertools.combinations(range(first), 2))
    n = first
    for _ in range(blocks - 1):
        attach = rng.below(n)
        order = 2 + rng.below(max_order - 1)
        members = [attach] + list(range(n, n + order - 1))
        edges.extend(itertools.combinations(members, 2))
        n += order - 1
    return Graph(n, edges)


# -- family specs ------------------------------------------------------------

FAMILIES = {
    "path": (path, ("n",)),
    "cycle": (cycle, ("n",)),
    "complete": (complete, ("n",)),
    "complete_bipartite": (complete_bipartite, ("a", "b")),
    "star": (star, ("m",)),
    "spider": (spider, ("legs", "length")),
    "caterpillar": (caterpillar, ("s", "k")),
    "baton": (baton, ("L", "k")),
    "cograph_random": (cograph_random, ("n", "seed")),
    "block_graph_random": (block_graph_random, ("blocks", "max_order", "seed")),
    "connected_gnm": (connected_gnm, ("n", "m", "seed")),
    "cubic_random": (cubic_random, ("n", "seed")),
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidParams(f"unknown family {self.family!r}")
        names = FAMILIES[self.family][1]
        missing = [p for p in names if p not in self.params]
        extra = [p for p in self.params if p not in names]
        if missing or extra:
            raise InvalidParams(
                f"{self.family} takes parameters {', '.join(names)}"
                + (f"; missing {missing}" if missing else "")
                + (f"; unexpected {extra}" if extra else "")
            )

    def __str__(self) -> str:
        args = ",".join(f"{k}={self.params[k]}" for k in FAMILIES[self.family][1])
        return f"{self.family}:{args}"


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    fn, names = FAMILIES[spec.family]
    return fn(*(spec.params[p] for p in names))


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidParams(message)


def _parse_values(text: str) -> list[int] | str:
    if ".." in text:
        lo, _, rest = text.partition("..")
        hi, _, step = rest.partition(":")
        try:
            lo_i, hi_i, step_i = int(lo), int(hi), int(step or 1)
        except ValueError:
            raise InvalidParams(f"bad range {text!r}") from None
        if step_i <= 0:
            raise InvalidParams(f"bad range step in {text!r}")
        return list(range(lo_i, hi_i + 1, step_i))
    try:
        return [int(text)]
    except ValueError:
        return text  # alias of another parameter


def parse_family_template(text: str) -> tuple[str, dict[str, list[int] | str]]:
    name, _, rest = text.strip().partition(":")
    if name not in FAMILIES:
        raise InvalidParams(f"unknown family {name!r}")
    params: dict[str, list[int] | str] = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            raise InvalidParams(f"expected key=value, got {item!r}")
        params[key.strip()] = _parse_values(value.strip())
    for key, value in params.items():
        if isinstance(value, str) and (value not in params or isinstance(params[value], str)):
            raise InvalidParams(f"parameter {key} refers to unknown parameter {value!r}")
    return name, params


def expand_family(text: str) -> Iterator[FamilySpec]:
    """All specs described by a template, varying the last-listed range fastest."""
    name, params = parse_family_template(text)
    free = [k for k, v in params.items() if not isinstance(v, str)]
    for combo in itertools.product(*(params[k] for k in free)):
        values = dict(zip(free, combo))
        for k, v in params.items():
            if isinstance(v, str):
                values[k] = values[v]
        yield FamilySpec(name, values)


def parse_family(text: str) -> FamilySpec:
    specs = list(itertools.islice(expand_family(text), 2))
    if len(specs) != 1:
        raise InvalidParams(f"{text!r} describes more than one graph")
    return specs[0]


def family_stream(template: str | Iterable[FamilySpec]) -> Iterator[Graph]:
    """Lazily generate every graph of a family template, in order."""
    specs = expand_family(template) if isinstance(template, str) else template
    for spec in specs:
        yield generate(spec)
