#!/usr/bin/env python3
"""Network metrics for the frozen event dumps in oracle/, computed with networkx.

Usage: metrics_oracle.py oracle/*.txt > oracle/metrics.json
Each dump is the whole file read by music21_oracle.py.
"""
import itertools
import json
import sys
from pathlib import Path

import networkx as nx

out = {}
for path in sys.argv[1:]:
    events = [tuple(line.split()) for line in Path(path).read_text().splitlines() if line]
    g = nx.DiGraph()
    for e in events:
        g.add_node(e)
    for a, b in zip(events, events[1:]):
        w = g.edges[a, b]["weight"] + 1 if g.has_edge(a, b) else 1
        g.add_edge(a, b, weight=w)
    n = g.number_of_nodes()
    u = nx.Graph()
    u.add_nodes_from(g.nodes)
    u.add_edges_from((a, b) for a, b in g.edges if a != b)
    total = reach = 0
    for x, y in itertools.combinations(u.nodes, 2):
        if nx.has_path(u, x, y):
            total += nx.shortest_path_length(u, x, y)
            reach += 1
    comps = list(nx.connected_components(u))
    wdeg = sum(d["weight"] for _, _, d in g.edges(data=True)) * 2
    out[Path(path).stem] = {
        "solo_length": len(events),
        "node_count": n,
        "edge_count": g.number_of_edges(),
        "undirected_edge_count": u.number_of_edges(),
        "mean_degree": 2 * g.number_of_edges() / n,
        "mean_weighted_degree": wdeg / n,
        "distance_sum": total,
        "reachable_pairs": reach,
        "clustering_coefficient": nx.transitivity(u),
        "component_count": len(comps),
        "largest_component_size": max(len(c) for c in comps),
    }
json.dump(out, sys.stdout, indent=2, sort_keys=True)
print()
