"""Regenerate tests/fixtures from networkx's graph atlas and tree generator.

    python3 scripts/make_fixtures.py [outdir]

Writes graphs_n{4..7}.g6 (all graphs of that order up to isomorphism,
disconnected ones included) and trees_n5_10.g6 (all trees of orders 5-10).
"""

import sys
from pathlib import Path

import networkx as nx

from zfip.graph import Graph, write_graph6_file


def to_graph(h) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph(len(index), [(index[a], index[b]) for a, b in h.edges()])


def main(outdir):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    atlas = nx.graph_atlas_g()
    for n in range(4, 8):
        graphs = [to_graph(h) for h in atlas if h.number_of_nodes() == n]
        write_graph6_file(out / f"graphs_n{n}.g6", graphs)
        print(f"graphs_n{n}.g6: {len(graphs)}")
    trees = []
    for n in range(5, 11):
        batch = [to_graph(t) for t in nx.nonisomorphic_trees(n)]
        print(f"trees of order {n}: {len(batch)}")
        trees.extend(batch)
    write_graph6_file(out / "trees_n5_10.g6", trees)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests" / "fixtures")
