"""Acceptance gate: thirteen criteria, one PASS/FAIL line each in the summary.

Run alone with ``pytest tests/test_acceptance.py -v``; the per-criterion
lines appear under "acceptance criteria" at the end of the run.
"""

import itertools
import time
from fractions import Fraction

import networkx as nx
import pytest

from connsets import (
    Graph,
    NearTreeClass,
    block_cut_tree,
    classify_near_tree,
    cut_decomposition,
    iter_connected_masks,
    minimal_family,
    partition_ok,
    rooted_stats,
    stats,
    stats_bruteforce,
    to_graph6,
    vertex_profile,
)
from connsets.families import Pcg32, complete, connected_gnm, cubic_random, cycle, generate, path, star
from connsets.graph import bits
from connsets.minimal import av_inequality
from connsets.theorems import (
    PASS,
    find_root_vertex,
    is_cograph,
    mine_exceptions_twice,
    root_inequality,
    run_statement_suite,
)
from streams import CONNECTED_COUNTS, connected_graphs


def criterion(cid, title):
    return pytest.mark.criterion(cid, title)


def looks_like_path(g: Graph) -> bool:
    # independent of Graph.is_path: degree sequence of a path
    degs = sorted(g.degree(v) for v in range(g.n))
    if g.n == 1:
        return True
    return g.is_connected() and g.num_edges == g.n - 1 and degs[-1] <= 2


def seeded_random_connected(count: int, lo: int, hi: int, seed: int) -> list[Graph]:
    rng = Pcg32(seed)
    out = []
    for i in range(count):
        n = lo + rng.below(hi - lo + 1)
        m = n - 1 + rng.below(n * (n - 1) // 2 - (n - 1) + 1)
        out.append(connected_gnm(n, m, seed * 1000 + i))
    return out


RANDOM_8_16 = seeded_random_connected(200, 8, 16, seed=2)


@criterion("C1", "main bound on all connected graphs 3 <= n <= 8, equality exactly for paths, < 120 s")
def test_c1_main_bound_exhaustive(report):
    t0 = time.perf_counter()
    checked = 0
    for n in range(3, 9):
        graphs = connected_graphs(n)
        assert len(graphs) == CONNECTED_COUNTS[n]
        results = list(run_statement_suite(graphs, "thm_main"))
        assert len(results) == len(graphs)
        for g, r in zip(graphs, results):
            assert r.status == PASS, r.to_json()
            s = stats(g)
            lhs, rhs = 3 * s.total, (n + 2) * s.count
            assert lhs >= rhs
            assert (lhs == rhs) == looks_like_path(g)
            checked += 1
    elapsed = time.perf_counter() - t0
    report(f"{checked} graphs, {elapsed:.1f} s")
    assert checked == 2 + 6 + 21 + 112 + 853 + 11117
    assert elapsed < 120


@criterion("C2", "engine equals brute force on all connected n <= 7 and 200 random graphs 8 <= n <= 16")
def test_c2_oracle_equivalence(report):
    exhaustive = [g for n in range(1, 8) for g in connected_graphs(n)]
    for g in exhaustive:
        assert stats(g) == stats_bruteforce(g)
    for g in RANDOM_8_16:
        assert 8 <= g.n <= 16 and g.is_connected()
        assert stats(g) == stats_bruteforce(g)
    report(f"{len(exhaustive)} exhaustive + {len(RANDOM_8_16)} random")


@criterion("C3", "sum over x of N(G,x) equals S(G) on every graph of C1 and C2")
def test_c3_profile_identity(report):
    graphs = [g for n in range(1, 9) for g in connected_graphs(n)] + RANDOM_8_16
    for g in graphs:
        assert sum(vertex_profile(g)) == stats(g).total
    report(f"{len(graphs)} graphs")


@criterion("C4", "av inequality at every vertex for n <= 7; partition of C(G-x) on 50 random graphs n <= 10")
def test_c4_av_inequality(report):
    pairs = 0
    for n in range(2, 8):
        for g in connected_graphs(n):
            for x in range(n):
                chk = av_inequality(g, x)
                assert chk.inequality_holds and chk.sum_identity_holds and chk.count_bound_holds
                pairs += 1
    families = 0
    for g in seeded_random_connected(50, 2, 10, seed=4):
        for x in range(g.n):
            fam = minimal_family(g, x)
            assert partition_ok(fam)
            # the partition covers exactly N(G - x) sets
            allowed = ((1 << g.n) - 1) & ~(1 << x)
            assert sum(e.path_len for e in fam.minimals) == sum(1 for _ in iter_connected_masks(g, allowed))
            families += 1
    report(f"{pairs} (graph, x) pairs, {families} partitions")


@criterion("C5", "2-connected 3 <= n <= 8, all roots: av <= (n-1)/2, equality only for K_3")
def test_c5_two_connected_half_bound(report):
    graphs = pairs = equalities = 0
    for n in range(3, 9):
        for g in connected_graphs(n):
            if not nx.is_biconnected(nx.Graph(g.edges())):
                continue
            graphs += 1
            for x in range(n):
                value = minimal_family(g, x).av
                bound = Fraction(n - 1, 2)
                assert value <= bound
                if value == bound:
                    equalities += 1
                    assert g == complete(3)
                pairs += 1
    report(f"{graphs} graphs, {pairs} roots, {equalities} equalities (all K_3)")
    assert equalities == 3


@criterion("C6", "rooted bound for every connected H when n <= 6, and every singleton H for 3 <= n <= 8")
def test_c6_rooted_bound(report):
    all_h = singles = 0
    for n in range(1, 7):
        for g in connected_graphs(n):
            for mask in iter_connected_masks(g):
                h = list(bits(mask))
                r = rooted_stats(g, h)
                assert 2 * r.total >= (n + len(h)) * r.count
                all_h += 1
    for n in range(3, 9):
        for g in connected_graphs(n):
            for x in range(n):
                r = rooted_stats(g, x)
                assert 2 * r.total >= (n + 1) * r.count
                singles += 1
    report(f"{all_h} (G, H) pairs, {singles} singleton roots")


@criterion("C7", "cut vertex + not a near tree => a root vertex exists (n <= 8); P_3 is the 8 = 8 borderline")
def test_c7_root_vertex(report):
    p3 = find_root_vertex(path(3))
    assert p3.reason == "NoSatisfyingCut" and p3.evaluations == {1: (8, 8)}
    applicable = 0
    for n in range(3, 9):
        for g in connected_graphs(n):
            bct = block_cut_tree(g)
            if not bct.cut_vertices or classify_near_tree(g) is not NearTreeClass.NOT_NEAR_TREE:
                continue
            applicable += 1
            found = find_root_vertex(g)
            assert found.found, g
            lhs, rhs = root_inequality(cut_decomposition(g, found.vertex))
            assert lhs > rhs
    report(f"{applicable} applicable graphs, all rooted")
    assert applicable > 0


@criterion("C8", "path closed forms for n = 3..1000, n = 1000 in < 5 s")
def test_c8_paths(report):
    for n in range(3, 1000):
        s = stats(path(n))
        assert s.count == n * (n + 1) // 2
        assert s.total == n * (n + 1) * (n + 2) // 6
        assert s.average == Fraction(n + 2, 3)
    t0 = time.perf_counter()
    s = stats(path(1000))
    elapsed = time.perf_counter() - t0
    assert (s.count, s.total, s.average) == (500500, 167167000, Fraction(334))
    report(f"n = 1000 in {elapsed * 1000:.0f} ms")
    assert elapsed < 5


def clique_chain(blocks: int, order: int) -> Graph:
    """``blocks`` copies of K_order, consecutive copies sharing one vertex."""
    edges = []
    for b in range(blocks):
        members = range(b * (order - 1), b * (order - 1) + order)
        edges.extend(itertools.combinations(members, 2))
    return Graph(blocks * (order - 1) + 1, edges)


@criterion("C9", "chain of 12 K_7 (n = 73) in < 1 s; chain of 3 K_4 matches brute force")
def test_c9_clique_chain(report):
    g = clique_chain(12, 7)
    assert g.n == 73 and len(block_cut_tree(g).blocks) == 12
    t0 = time.perf_counter()
    s = stats(g)
    elapsed = time.perf_counter() - t0
    small = clique_chain(3, 4)
    assert small.n == 10
    assert stats(small) == stats_bruteforce(small)
    assert (s.count, s.total) == _clique_chain_stats(12, 7)
    for blocks, order in [(1, 5), (2, 3), (3, 4), (4, 3)]:
        b = stats_bruteforce(clique_chain(blocks, order))
        assert (b.count, b.total) == _clique_chain_stats(blocks, order)
    report(f"n = 73 in {elapsed * 1000:.0f} ms, N has {len(str(s.count))} digits")
    assert elapsed < 1


def _clique_chain_stats(blocks: int, order: int) -> tuple[int, int]:
    """(N, S) of a clique chain, classified by the shared vertices a set contains.

    Shared vertices s_1..s_{k-1} are cut vertices, so a connected set holds a
    contiguous run s_a..s_b of them (or none). With none it lies among the
    private vertices of one block. With s_a..s_b it may add any private
    vertices of blocks a..b+1 and nothing else.
    """
    k = blocks
    private = [order - 1 if t in (0, k - 1) else order - 2 for t in range(k)]
    if k == 1:
        private = [order]
    count = sum(2**p - 1 for p in private)
    total = sum(p * 2 ** (p - 1) for p in private)
    for a in range(k - 1):
        for b in range(a, k - 1):
            free = sum(private[a : b + 2])
            c = 2**free
            count += c
            total += c * (b - a + 1) + free * c // 2
    return count, total


@criterion("C10", "500 seeded connected cographs 2 <= n <= 14: n/2 < A <= (n+1)/2")
def test_c10_cographs(report):
    right_equal = 0
    for seed in range(500):
        n = 2 + seed % 13
        g = generate(f"cograph_random:n={n},seed={seed}")
        assert g.is_connected() and is_cograph(g)
        a = stats(g).average
        assert Fraction(n, 2) < a <= Fraction(n + 1, 2)
        right_equal += a == Fraction(n + 1, 2)
    report(f"500 cographs, right-hand equality {right_equal} times")


def _bowtie() -> Graph:
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


@criterion("C11", "hand-value regressions")
def test_c11_hand_values(report):
    # K_3: every nonempty subset is connected: 3 + 3 + 1 = 7 sets, sizes 3 + 6 + 3 = 12
    assert (stats(complete(3)).count, stats(complete(3)).total) == (7, 12)
    # K_{1,3}: 2^3 sets through the centre (sizes 8 + 3 * 4 = 20) and 3 leaves: (11, 23)
    assert (stats(star(3)).count, stats(star(3)).total) == (11, 23)
    # bowtie: through x 4 * 4 = 16 sets of total size 8*4 + 8*4 - 16 = 48, plus (3, 4) per side
    assert (stats(_bowtie()).count, stats(_bowtie()).total) == (22, 56)
    # C_4: 4 singletons, 4 edges, 4 three-vertex paths, the whole cycle: (13, 4 + 8 + 12 + 4)
    assert (stats(cycle(4)).count, stats(cycle(4)).total) == (13, 28)
    # P_3 through the centre: {c}, {a,c}, {c,b}, {a,c,b}: (4, 1 + 2 + 2 + 3)
    r = rooted_stats(path(3), 1)
    assert (r.count, r.total) == (4, 8)
    # K_3 at x: minimals {a}, {b}, {a,b}, each one edge from x
    assert minimal_family(complete(3), 0).av == 1
    report("6 values")


@criterion("C12", "density report for seeded cubic graphs n <= 14 and all min-degree-3 graphs n <= 8")
def test_c12_density_report(report):
    rows = []
    for n in range(4, 15, 2):
        for seed in range(1, 21):
            g = cubic_random(n, seed)
            rows.append(("cubic", n, seed, stats(g).density))
    for n in range(4, 9):
        for i, g in enumerate(connected_graphs(n)):
            if g.min_degree() >= 3:
                rows.append(("min_degree3", n, i, stats(g).density))
    findings = [r for r in rows if r[3] <= Fraction(1, 2)]
    low = min(rows, key=lambda r: r[3])
    high = max(rows, key=lambda r: r[3])
    for kind, n, tag, d in findings:
        print(f"FINDING {kind} n={n} id={tag} D={d}")
    report(
        f"{len(rows)} graphs, D in [{low[3]} ({low[0]} n={low[1]}), {high[3]} ({high[0]} n={high[1]})], "
        f"{len(findings)} findings"
    )
    assert rows and all(d > 0 for *_, d in rows)


def _rooted_count_tree(t: Graph, x: int) -> int:
    # subtrees through x: product over children of (1 + subtrees hanging from the child)
    def down(v, parent):
        out = 1
        for w in t.neighbors(v):
            if w != parent:
                out *= 1 + down(w, v)
        return out

    return down(x, -1)


TREE_COUNTS = {2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106}
# number of (tree, x) pairs with deg(x) >= 2 and N(T, x) < 2n, over all trees with n <= 10,
# frozen from the independent product count in _rooted_count_tree
EXPECTED_EXCEPTIONS = 16


@criterion("C13", "exception mining: complete list of (tree, x), deg >= 2, N(T,x) < 2n, trees n <= 10")
def test_c13_exception_mining(report):
    trees = []
    for n, count in TREE_COUNTS.items():
        level = [Graph(n, t.edges()) for t in nx.nonisomorphic_trees(n)]
        assert len(level) == count
        trees.extend(level)
    rep = mine_exceptions_twice(trees, mode="tree")
    listed = {(e["graph6"], e["vertex"]) for e in rep.exceptions}
    expected = set()
    pairs = 0
    for t in trees:
        for x in range(t.n):
            if t.degree(x) < 2:
                continue
            pairs += 1
            if _rooted_count_tree(t, x) < 2 * t.n:
                expected.add((to_graph6(t), x))
    assert listed == expected
    assert rep.pairs_checked == pairs
    assert len(rep.exceptions) == len(listed)
    assert len(listed) == EXPECTED_EXCEPTIONS
    by_n = {}
    for e in rep.exceptions:
        by_n[e["n"]] = by_n.get(e["n"], 0) + 1
    report(f"{pairs} pairs, {len(listed)} exceptions by n {dict(sorted(by_n.items()))}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
