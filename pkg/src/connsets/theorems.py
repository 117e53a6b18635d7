"""Executable statements about connected-set statistics, and a runner for them.

Every statement has an applicability predicate and a checker yielding one
``(param, status, witness)`` triple per instance. Theorem-class statements
pass or fail; conjecture- and interpretation-class statements can only
produce findings, never failures.
"""

from __future__ import annotations

import itertools
import json
import time
from collections import Counter
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any

from .blocks import BlockCutTree, NearTreeClass, block_cut_tree, is_biconnected, near_tree_class
from .counting import (
    DEFAULT_BUDGET,
    Budget,
    ConnStats,
    CutDecomposition,
    cut_decomposition,
    iter_connected_masks,
    rooted_stats,
    stats,
    vertex_profile,
)
from .errors import BudgetExceeded, Disconnected, UnknownStatement
from .formats import parse_graph6, to_graph6
from .graph import Graph, bits
from .minimal import AvCheck, MinimalFamily, av_inequality, minimal_family, neighbourhood_is_clique_in_block

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"
FINDING = "finding"

# Connected H of every size are checked only up to this order.
ALL_ROOTS_MAX_ORDER = 6
# Cap on materialised connected sets for the minimal-family statements.
MATERIALIZE_BUDGET = 2_000_000


def _js(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {k: _js(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, frozenset, set)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_js(v) for v in items]
    return str(value)


def _relation(lhs, rhs) -> str:
    return "equality" if lhs == rhs else ("strict" if lhs > rhs else "violated")


@dataclass
class CheckResult:
    statement: str
    graph_index: int | None
    status: str
    param: Any = None
    witness: dict | None = None
    graph6: str | None = None

    def to_json(self) -> dict:
        return {
            "statement": self.statement,
            "graph_index": self.graph_index,
            "graph6": self.graph6,
            "status": self.status,
            "param": self.param,
            "witness": _js(self.witness) if self.witness is not None else None,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


# -- per-graph cache ------------------------------------------------------------


class GraphContext:
    """Lazily computed facts about one graph, shared by all checkers."""

    def __init__(self, g: Graph, budget: int = DEFAULT_BUDGET):
        self.g = g
        self.limit = budget
        self._rooted: dict[frozenset[int], Any] = {}
        self._decomp: dict[int, CutDecomposition] = {}
        self._families: dict[int, MinimalFamily] = {}

    def budget(self, cap: int | None = None) -> Budget:
        return Budget(min(self.limit, cap) if cap else self.limit)

    @property
    def n(self) -> int:
        return self.g.n

    @cached_property
    def connected(self) -> bool:
        return self.g.is_connected()

    @cached_property
    def stats(self) -> ConnStats:
        return stats(self.g, self.budget(), bct=self.bct)

    @cached_property
    def bct(self) -> BlockCutTree:
        return block_cut_tree(self.g)

    @cached_property
    def near_class(self) -> NearTreeClass:
        return near_tree_class(self.bct)

    @cached_property
    def near_class_strict(self) -> NearTreeClass:
        return near_tree_class(self.bct, max_leaf_order=3)

    @cached_property
    def profile(self) -> list[int]:
        return vertex_profile(self.g, self.budget(), bct=self.bct)

    @cached_property
    def is_path(self) -> bool:
        return self.g.is_path()

    def rooted(self, h: Iterable[int]):
        key = frozenset(h)
        if key not in self._rooted:
            self._rooted[key] = rooted_stats(self.g, key, self.budget(), bct=self.bct)
        return self._rooted[key]

    def decomposition(self, x: int) -> CutDecomposition:
        if x not in self._decomp:
            self._decomp[x] = cut_decomposition(self.g, x, self.budget(), bct=self.bct)
        return self._decomp[x]

    def family(self, x: int) -> MinimalFamily:
        if x not in self._families:
            self._families[x] = minimal_family(self.g, x, self.budget(MATERIALIZE_BUDGET))
        return self._families[x]

    def branch_ratio(self, x: int, i: int) -> Fraction:
        return self.decomposition(x).average_path_ratio(i, self.budget(MATERIALIZE_BUDGET))

    @cached_property
    def cut_vertices(self) -> list[int]:
        return sorted(self.bct.cut_vertices)


# -- reusable predicates ------------------------------------------------------------


def root_inequality(d: CutDecomposition) -> tuple[int, int]:
    """Both sides of ``(n-1) prod N_i(x) > 2 sum (n - n_i) N_i``."""
    n = d.graph.n
    lhs = n - 1
    for c in d.rooted_count:
        lhs *= c
    rhs = 2 * sum((n - ni) * ci for ni, ci in zip(d.orders, d.count))
    return lhs, rhs


@dataclass(frozen=True)
class RootSearch:
    vertex: int | None
    reason: str | None
    evaluations: dict[int, tuple[int, int]] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.vertex is not None


def find_root_vertex(g: Graph, budget: int = DEFAULT_BUDGET) -> RootSearch:
    """Smallest-id cut vertex satisfying the root inequality, if any."""
    if not g.is_connected():
        raise Disconnected("graph is not connected")
    cuts = sorted(block_cut_tree(g).cut_vertices)
    if not cuts:
        return RootSearch(None, "NoCutVertex")
    evaluations = {}
    for x in cuts:
        lhs, rhs = root_inequality(cut_decomposition(g, x, Budget(budget)))
        evaluations[x] = (lhs, rhs)
        if lhs > rhs:
            return RootSearch(x, None, evaluations)
    return RootSearch(None, "NoSatisfyingCut", evaluations)


def has_induced_p4(g: Graph) -> bool:
    """Direct search over 4-subsets for an induced path (reference for is_cograph)."""
    for quad in itertools.combinations(range(g.n), 4):
        degs = sorted(sum(g.has_edge(u, v) for v in quad if v != u) for u in quad)
        edges = sum(degs) // 2
        if edges == 3 and degs == [1, 1, 2, 2]:
            return True
    return False


def is_cograph(g: Graph) -> bool:
    """Recursive test: every induced piece of order >= 2 is disconnected or co-disconnected."""
    full = (1 << g.n) - 1
    comp_masks = tuple(full & ~m & ~(1 << v) for v, m in enumerate(g.masks))

    def split(masks: tuple[int, ...], allowed: int) -> list[int]:
        parts = []
        remaining = allowed
        while remaining:
            low = remaining & -remaining
            reach, frontier = low, low
            while frontier:
                grow = 0
                for v in bits(frontier):
                    grow |= masks[v]
                frontier = grow & allowed & ~reach
                reach |= frontier
            parts.append(reach)
            remaining &= ~reach
        return parts

    todo = [full]
    while todo:
        mask = todo.pop()
        if mask & (mask - 1) == 0:
            continue
        parts = split(g.masks, mask)
        if len(parts) == 1:
            parts = split(comp_masks, mask)
            if len(parts) == 1:
                return False
        todo.extend(parts)
    return True


def is_series_reduced_tree(g: Graph) -> bool:
    return g.is_tree() and all(g.degree(v) != 2 for v in range(g.n))


# -- statements -------------------------------------------------------------------

Outcome = tuple[Any, str, dict | None]
Checker = Callable[[GraphContext], Iterable[Outcome]]
Applies = Callable[[GraphContext], str | None]


@dataclass(frozen=True)
class Statement:
    id: str
    kind: str  # "theorem" | "conjecture" | "interpretation"
    summary: str
    applies: Applies
    check: Checker

    @property
    def report_only(self) -> bool:
        return self.kind != "theorem"


def _connected(ctx: GraphContext) -> str | None:
    return None if ctx.connected else "disconnected"


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _check_main(ctx: GraphContext) -> Iterator[Outcome]:
    s = ctx.stats
    lhs, rhs = 3 * s.total, (ctx.n + 2) * s.count
    ok = lhs >= rhs and (lhs == rhs) == ctx.is_path
    yield None, _verdict(ok), {
        "n": ctx.n, "N": s.count, "S": s.total, "lhs": lhs, "rhs": rhs,
        "relation": _relation(lhs, rhs), "is_path": ctx.is_path,
    }


def _rooted_sets(ctx: GraphContext) -> list[tuple[int, ...]]:
    if ctx.n <= ALL_ROOTS_MAX_ORDER:
        masks = sorted(iter_connected_masks(ctx.g), key=lambda m: (m.bit_count(), list(bits(m))))
        return [tuple(bits(m)) for m in masks]
    return [(v,) for v in range(ctx.n)]


def _check_rooted(ctx: GraphContext) -> Iterator[Outcome]:
    for h in _rooted_sets(ctx):
        r = ctx.rooted(h)
        lhs, rhs = 2 * r.total, (ctx.n + len(h)) * r.count
        yield list(h), _verdict(lhs >= rhs), {
            "N": r.count, "S": r.total, "h": len(h), "lhs": lhs, "rhs": rhs,
            "relation": _relation(lhs, rhs),
        }


def _check_cor_v(ctx: GraphContext) -> Iterator[Outcome]:
    for x in range(ctx.n):
        r = ctx.rooted([x])
        lhs, rhs = 2 * r.total, (ctx.n + 1) * r.count
        yield x, _verdict(lhs >= rhs), {"N": r.count, "S": r.total, "relation": _relation(lhs, rhs)}


def _near_tree(ctx: GraphContext) -> str | None:
    if not ctx.connected:
        return "disconnected"
    return None if ctx.near_class.is_near_tree else "not a near tree"


def _check_cor_nt(ctx: GraphContext) -> Iterator[Outcome]:
    for _, status, witness in _check_main(ctx):
        witness["class"] = ctx.near_class.value
        yield None, status, witness


def _at_least_two(ctx: GraphContext) -> str | None:
    if not ctx.connected:
        return "disconnected"
    return None if ctx.n >= 2 else "single vertex"


def _check_av(ctx: GraphContext) -> Iterator[Outcome]:
    for x in range(ctx.n):
        fam = ctx.family(x)
        r = ctx.rooted([x])
        chk = AvCheck(fam.av, r.count, fam.num_entries, fam.num_minimals, fam.path_len_sum)
        yield x, _verdict(chk.ok), {
            "av": chk.av, "N_x": chk.rooted_count, "N_minus_x": chk.outside_count,
            "minimals": chk.num_minimals, "path_len_sum": chk.path_len_sum,
            "relation": _relation(chk.av * (chk.rooted_count - 1), chk.outside_count),
            "sum_identity": chk.sum_identity_holds, "count_bound": chk.count_bound_holds,
        }


def _is_k3(g: Graph) -> bool:
    return g.n == 3 and g.num_edges == 3


def _biconnected(ctx: GraphContext) -> str | None:
    return None if is_biconnected(ctx.g) else "not 2-connected"


def _av_half_bound(ctx: GraphContext, x: int) -> Outcome:
    a = ctx.family(x).av
    bound = Fraction(ctx.n - 1, 2)
    ok = a <= bound and (a == bound) == _is_k3(ctx.g)
    return x, _verdict(ok), {"av": a, "bound": bound, "relation": _relation(bound, a)}


def _check_2av(ctx: GraphContext) -> Iterator[Outcome]:
    for x in range(ctx.n):
        yield _av_half_bound(ctx, x)


def _av1_roots(ctx: GraphContext) -> list[int]:
    out = []
    for x in range(ctx.n):
        for b in ctx.bct.blocks_of(x):
            block = ctx.bct.blocks[b]
            if len(block) >= 3 and neighbourhood_is_clique_in_block(ctx.g, x, block):
                out.append(x)
                break
    return out


def _applies_av1(ctx: GraphContext) -> str | None:
    if not ctx.connected:
        return "disconnected"
    return None if _av1_roots(ctx) else "no vertex with clique neighbourhood inside a red block"


def _check_av1(ctx: GraphContext) -> Iterator[Outcome]:
    for x in _av1_roots(ctx):
        yield _av_half_bound(ctx, x)


def _applies_inequal(ctx: GraphContext, strict: bool = False) -> str | None:
    if not ctx.connected:
        return "disconnected"
    if not ctx.cut_vertices:
        return "no cut vertex"
    cls = ctx.near_class_strict if strict else ctx.near_class
    return None if cls is NearTreeClass.NOT_NEAR_TREE else "near tree"


def _check_inequal(ctx: GraphContext) -> Iterator[Outcome]:
    evals = {}
    for x in ctx.cut_vertices:
        lhs, rhs = root_inequality(ctx.decomposition(x))
        evals[str(x)] = [lhs, rhs]
        if lhs > rhs:
            yield None, PASS, {"root": x, "lhs": lhs, "rhs": rhs, "class": ctx.near_class.value}
            return
    yield None, FAIL, {"reason": "NoSatisfyingCut", "evaluations": evals, "class": ctx.near_class.value}


def _cut_params(ctx: GraphContext) -> str | None:
    if not ctx.connected:
        return "disconnected"
    return None if ctx.cut_vertices else "no cut vertex"


def _check_d2(ctx: GraphContext) -> Iterator[Outcome]:
    any_two = False
    for x in ctx.cut_vertices:
        d = ctx.decomposition(x)
        if d.M != 2:
            continue
        any_two = True
        hyp = None
        for i in range(2):
            if d.rooted_count[i] >= 2 * (d.orders[i] + 1):
                a_i = ctx.branch_ratio(x, i)
                if a_i <= Fraction(1, 2):
                    hyp = (i, a_i)
                    break
        if hyp is None:
            yield x, NOT_APPLICABLE, {"reason": "hypothesis false"}
            continue
        lhs, rhs = root_inequality(d)
        yield x, _verdict(lhs > rhs), {"branch": hyp[0], "a_i": hyp[1], "lhs": lhs, "rhs": rhs}
    if not any_two:
        yield None, NOT_APPLICABLE, {"reason": "no cut vertex with two branches"}


def _cut1_hypothesis(d: CutDecomposition) -> bool:
    if d.M >= 4:
        return True
    if d.M == 3:
        orders = d.orders
        return min(orders) >= 2 and sum(o >= 3 for o in orders) >= 2
    return False


def _check_cut1(ctx: GraphContext) -> Iterator[Outcome]:
    for x in ctx.cut_vertices:
        d = ctx.decomposition(x)
        if not _cut1_hypothesis(d):
            yield x, NOT_APPLICABLE, {"reason": "hypothesis false", "M": d.M, "orders": list(d.orders)}
            continue
        lhs, rhs = root_inequality(d)
        yield x, _verdict(lhs > rhs), {"M": d.M, "orders": list(d.orders), "lhs": lhs, "rhs": rhs}


def _check_cut2(ctx: GraphContext) -> Iterator[Outcome]:
    any_three = False
    for x in ctx.cut_vertices:
        d = ctx.decomposition(x)
        if d.M < 3:
            continue
        any_three = True
        drop = min(range(d.M), key=lambda i: (d.count[i], i))
        keep = set().union(*(c for i, c in enumerate(d.components) if i != drop)) | {x}
        sub, old = ctx.g.induced(keep)
        sub_lhs, sub_rhs = root_inequality(cut_decomposition(sub, old.index(x), ctx.budget()))
        if not sub_lhs > sub_rhs:
            yield x, NOT_APPLICABLE, {"reason": "hypothesis false", "dropped": sorted(d.components[drop])}
            continue
        lhs, rhs = root_inequality(d)
        yield x, _verdict(lhs > rhs), {
            "dropped": sorted(d.components[drop]), "sub_lhs": sub_lhs, "sub_rhs": sub_rhs,
            "lhs": lhs, "rhs": rhs,
        }
    if not any_three:
        yield None, NOT_APPLICABLE, {"reason": "no cut vertex with three or more branches"}


def _check_prop_nx(ctx: GraphContext) -> Iterator[Outcome]:
    total = sum(ctx.profile)
    yield None, _verdict(total == ctx.stats.total), {"profile_sum": total, "S": ctx.stats.total}


def _applies_cograph(ctx: GraphContext) -> str | None:
    if not ctx.connected:
        return "disconnected"
    return None if is_cograph(ctx.g) else "not a cograph"


def _check_cograph(ctx: GraphContext) -> Iterator[Outcome]:
    a, n = ctx.stats.average, ctx.n
    upper = Fraction(n + 1, 2)
    ok = Fraction(n, 2) < a <= upper and (a == upper) == (n == 1)
    yield None, _verdict(ok), {"A": a, "lower": Fraction(n, 2), "upper": upper}


def _applies_tree_density(ctx: GraphContext) -> str | None:
    if ctx.n < 2:
        return "single vertex"
    return None if is_series_reduced_tree(ctx.g) else "not a tree without degree-2 vertices"


def _check_tree_density(ctx: GraphContext) -> Iterator[Outcome]:
    d = ctx.stats.density
    yield None, _verdict(Fraction(1, 2) <= d < Fraction(3, 4)), {"D": d}


def _applies_min_deg3(ctx: GraphContext) -> str | None:
    if not ctx.connected:
        return "disconnected"
    return None if ctx.g.min_degree() >= 3 else "minimum degree below 3"


def _check_min_deg3(ctx: GraphContext) -> Iterator[Outcome]:
    d = ctx.stats.density
    yield None, _verdict(d > Fraction(1, 2)), {"D": d}


def _check_inequal_strict(ctx: GraphContext) -> Iterator[Outcome]:
    for param, status, witness in _check_inequal(ctx):
        witness["strict_class"] = ctx.near_class_strict.value
        yield param, status, witness


REGISTRY: dict[str, Statement] = {
    s.id: s
    for s in [
        Statement("thm_main", "theorem", "3 S(G) >= (n+2) N(G), equality iff G is a path", _connected, _check_main),
        Statement("thm_rooted", "theorem", "2 S(G,H) >= (n+h) N(G,H) for connected H", _connected, _check_rooted),
        Statement("cor_v", "theorem", "A(G,x) >= (n+1)/2 for every vertex", _connected, _check_cor_v),
        Statement("cor_nt", "theorem", "near trees satisfy the main bound with path equality", _near_tree, _check_cor_nt),
        Statement("thm_av", "theorem", "av(G,x) (N(G,x) - 1) >= N(G-x), with its counting identities", _at_least_two, _check_av),
        Statement("thm_2av", "theorem", "2-connected: av(G,x) <= (n-1)/2, equality iff K_3", _biconnected, _check_2av),
        Statement("cor_av1", "theorem", "x with clique neighbourhood inside a red block: av(G,x) <= (n-1)/2", _applies_av1, _check_av1),
        Statement("thm_inequal", "theorem", "non-near-tree with a cut vertex has a root vertex", _applies_inequal, _check_inequal),
        Statement(
            "thm_inequal_strict", "interpretation",
            "root vertex exists when order-4 leaf blocks do not count as near-tree leaves",
            lambda ctx: _applies_inequal(ctx, strict=True), _check_inequal_strict,
        ),
        Statement("lemma_d2", "theorem", "two-branch cut vertex with a dense branch satisfies the root inequality", _cut_params, _check_d2),
        Statement("lemma_cut1", "theorem", "cut vertex with M >= 4 (or balanced M = 3) satisfies the root inequality", _cut_params, _check_cut1),
        Statement("lemma_cut2", "theorem", "dropping the sparsest branch preserves the root inequality", _cut_params, _check_cut2),
        Statement("prop_nx", "theorem", "sum over x of N(G,x) equals S(G)", _connected, _check_prop_nx),
        Statement("cograph_bounds", "theorem", "connected cograph: n/2 < A(G) <= (n+1)/2, equality iff n = 1", _applies_cograph, _check_cograph),
        Statement("tree_density_bounds", "theorem", "tree without degree-2 vertices: 1/2 <= D < 3/4", _applies_tree_density, _check_tree_density),
        Statement("min_degree3_density", "conjecture", "minimum degree >= 3: D(G) > 1/2", _applies_min_deg3, _check_min_deg3),
    ]
}


def list_statements(registry: dict[str, Statement] | None = None) -> list[Statement]:
    return [s for _, s in sorted((registry or REGISTRY).items())]


def resolve_statements(ids: Iterable[str] | str | None, registry: dict[str, Statement] | None = None) -> list[Statement]:
    registry = registry or REGISTRY
    if ids is None or ids == "all":
        return list_statements(registry)
    if isinstance(ids, str):
        ids = [s.strip() for s in ids.split(",") if s.strip()]
    out = []
    for sid in ids:
        if sid not in registry:
            raise UnknownStatement(sid)
        out.append(registry[sid])
    return sorted(out, key=lambda s: s.id)


def check_graph(
    g: Graph,
    statements: list[Statement],
    index: int | None = None,
    budget: int = DEFAULT_BUDGET,
    graph6: str | None = None,
) -> list[CheckResult]:
    """All results for one graph, in statement-id order."""
    if graph6 is None:
        graph6 = to_graph6(g)
    ctx = GraphContext(g, budget)
    out = []
    for st in statements:
        def emit(param, status, witness):
            if st.report_only and status == FAIL:
                status = FINDING
            out.append(CheckResult(st.id, index, status, param, witness, graph6))

        try:
            reason = st.applies(ctx)
            if reason is not None:
                emit(None, NOT_APPLICABLE, {"reason": reason})
                continue
            produced = list(st.check(ctx))
        except BudgetExceeded as exc:
            emit(None, NOT_APPLICABLE, {"reason": f"budget: {exc}"})
            continue
        for param, status, witness in produced:
            emit(param, status, witness)
    return out


def _check_task(task):
    index, g6, ids, budget = task
    statements = [REGISTRY[i] for i in ids]
    t0 = time.perf_counter()
    results = check_graph(parse_graph6(g6), statements, index, budget, g6)
    return results, time.perf_counter() - t0


def run_statement_suite(
    graphs: Iterable[Graph],
    statement_ids: Iterable[str] | str | None = None,
    budget: int = DEFAULT_BUDGET,
    *,
    registry: dict[str, Statement] | None = None,
    workers: int = 1,
    timings: dict[int, float] | None = None,
) -> Iterator[CheckResult]:
    """Check every selected statement on every graph, in input order.

    With ``workers > 1`` graphs are farmed out to a process pool in bounded
    batches; results are re-sequenced so output never depends on the pool.
    Custom registries only run in-process.
    """
    statements = resolve_statements(statement_ids, registry)
    if workers <= 1 or registry is not None:
        for index, g in enumerate(graphs):
            t0 = time.perf_counter()
            yield from check_graph(g, statements, index, budget)
            if timings is not None:
                timings[index] = time.perf_counter() - t0
        return

    from multiprocessing import Pool

    ids = [s.id for s in statements]
    batch = workers * 16
    with Pool(workers) as pool:
        it = enumerate(graphs)
        while True:
            chunk = [(i, to_graph6(g), ids, budget) for i, g in itertools.islice(it, batch)]
            if not chunk:
                break
            for (index, *_), (results, secs) in zip(chunk, pool.map(_check_task, chunk, chunksize=4)):
                if timings is not None:
                    timings[index] = secs
                yield from results


def summarize(results: Iterable[CheckResult]) -> dict:
    by_statement: dict[str, Counter] = {}
    graphs = set()
    for r in results:
        by_statement.setdefault(r.statement, Counter())[r.status] += 1
        graphs.add(r.graph_index)
    totals = Counter()
    for c in by_statement.values():
        totals.update(c)
    return {
        "graphs": len(graphs),
        "totals": {k: totals.get(k, 0) for k in (PASS, FAIL, NOT_APPLICABLE, FINDING)},
        "statements": {
            sid: {k: c.get(k, 0) for k in (PASS, FAIL, NOT_APPLICABLE, FINDING)}
            for sid, c in sorted(by_statement.items())
        },
    }


def recheck(result: CheckResult, registry: dict[str, Statement] | None = None) -> str:
    """Re-run the statement on the witness graph; returns the reproduced status."""
    registry = registry or REGISTRY
    g = parse_graph6(result.graph6)
    for r in check_graph(g, [registry[result.statement]], result.graph_index):
        if r.param == result.param:
            return r.status
    raise LookupError(f"parameter {result.param!r} not produced on re-check")


# -- standalone checks ----------------------------------------------------------


def check_main_bound(g: Graph, index: int | None = None) -> CheckResult:
    return check_graph(g, [REGISTRY["thm_main"]], index)[0]


def check_rooted_bound(g: Graph, h: Iterable[int], index: int | None = None) -> CheckResult:
    h = sorted(set(h))
    ctx = GraphContext(g)
    if not ctx.connected:
        raise Disconnected("graph is not connected")
    r = ctx.rooted(h)
    lhs, rhs = 2 * r.total, (g.n + len(h)) * r.count
    return CheckResult(
        "thm_rooted", index, _verdict(lhs >= rhs), h,
        {"N": r.count, "S": r.total, "h": len(h), "lhs": lhs, "rhs": rhs, "relation": _relation(lhs, rhs)},
        to_graph6(g),
    )


def check_av_inequality(g: Graph, x: int, index: int | None = None) -> CheckResult:
    if g.n < 2:
        return CheckResult("thm_av", index, NOT_APPLICABLE, x, {"reason": "single vertex"}, to_graph6(g))
    try:
        chk = av_inequality(g, x, Budget(MATERIALIZE_BUDGET))
    except BudgetExceeded as exc:
        return CheckResult("thm_av", index, NOT_APPLICABLE, x, {"reason": f"budget: {exc}"}, to_graph6(g))
    return CheckResult(
        "thm_av", index, _verdict(chk.ok), x,
        {
            "av": chk.av, "N_x": chk.rooted_count, "N_minus_x": chk.outside_count,
            "relation": _relation(chk.av * (chk.rooted_count - 1), chk.outside_count),
            "sum_identity": chk.sum_identity_holds, "count_bound": chk.count_bound_holds,
        },
        to_graph6(g),
    )


# -- exception mining -----------------------------------------------------------


@dataclass
class ExceptionReport:
    mode: str
    graphs: int = 0
    pairs_checked: int = 0
    exceptions: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "graphs": self.graphs,
            "pairs_checked": self.pairs_checked,
            "exceptions": self.exceptions,
        }


def mine_exceptions_twice(graphs: Iterable[Graph], mode: str = "tree") -> ExceptionReport:
    """List every (graph, x) with ``N(G,x) < 2n`` among the eligible pairs.

    ``mode="tree"``: trees, vertices of degree >= 2. ``mode="graph"``:
    connected graphs, vertices lying in a block of order >= 3.
    """
    if mode not in ("tree", "graph"):
        raise ValueError(f"mode must be 'tree' or 'graph', got {mode!r}")
    report = ExceptionReport(mode)
    for g in graphs:
        if mode == "tree" and not g.is_tree():
            continue
        if not g.is_connected():
            continue
        report.graphs += 1
        if mode == "tree":
            eligible = [x for x in range(g.n) if g.degree(x) >= 2]
        else:
            bct = block_cut_tree(g)
            eligible = [x for x in range(g.n) if any(bct.is_red(b) for b in bct.blocks_of(x))]
        if not eligible:
            continue
        profile = vertex_profile(g)
        g6 = None
        for x in eligible:
            report.pairs_checked += 1
            if profile[x] < 2 * g.n:
                g6 = g6 or to_graph6(g)
                report.exceptions.append(
                    {"graph6": g6, "vertex": x, "n": g.n, "N": str(profile[x]), "degree": g.degree(x)}
                )
    return report
