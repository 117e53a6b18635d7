"""Write graph6 streams of all connected graphs up to isomorphism, n = 1..8.

Dev-only helper for the test fixtures (needs pynauty and networkx). Every
connected graph on n+1 vertices has a non-cut vertex, so extending each
connected n-vertex graph by one vertex with every nonempty neighbourhood
and deduplicating by nauty certificate yields the complete catalogue.
"""

import sys
from pathlib import Path

import networkx as nx
import pynauty

EXPECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def certificate(g: nx.Graph) -> bytes:
    adj = {v: list(g[v]) for v in g}
    return pynauty.certificate(pynauty.Graph(g.number_of_nodes(), adjacency_dict=adj))


def canonical(g: nx.Graph) -> nx.Graph:
    adj = {v: list(g[v]) for v in g}
    lab = pynauty.canon_label(pynauty.Graph(g.number_of_nodes(), adjacency_dict=adj))
    pos = {v: i for i, v in enumerate(lab)}
    return nx.relabel_nodes(g, pos)


def main(out_dir: Path, max_n: int = 8) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    level = [nx.empty_graph(1)]
    for n in range(1, max_n + 1):
        if n > 1:
            seen: dict[bytes, nx.Graph] = {}
            for g in level:
                for mask in range(1, 1 << (n - 1)):
                    h = g.copy()
                    h.add_node(n - 1)
                    h.add_edges_from((n - 1, v) for v in range(n - 1) if mask >> v & 1)
                    c = certificate(h)
                    if c not in seen:
                        seen[c] = canonical(h)
            level = [seen[c] for c in sorted(seen)]
        assert len(level) == EXPECTED[n], (n, len(level))
        path = out_dir / f"connected_n{n}.g6"
        with open(path, "wb") as fh:
            for g in level:
                fh.write(nx.to_graph6_bytes(g, header=False))
        print(f"n={n}: {len(level)} graphs -> {path}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("tests/data"))
