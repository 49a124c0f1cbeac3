#!/usr/bin/env python3
"""Writes the corpus sample in the 16-bit little-endian benchmark layout and
a manifest of facts computed here, independently of the Rust code.

Word 0 is n. Labelled files then hold n vertex labels. Each vertex follows
with its record count and the records: target, plus an edge label in
labelled files. Undirected files list each edge under both endpoints,
except the `onesided` file, which lists it once.
"""

import csv
import random
import struct
from pathlib import Path

HERE = Path(__file__).resolve().parent


def write(name, n, arcs, labels=None, edge_labels=None):
    words = [n]
    if labels is not None:
        words += labels
    for u in range(n):
        out = sorted(v for (a, v) in arcs if a == u)
        words.append(len(out))
        for v in out:
            words.append(v)
            if labels is not None:
                words.append(edge_labels[(u, v)])
    (HERE / name).write_bytes(struct.pack("<%dH" % len(words), *words))


def random_edges(rng, n, p, directed):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (directed or u < v)]
    return [e for e in pairs if rng.random() < p]


def facts(n, edges, directed, labels, edge_labels):
    """Stats of the graph as a reader should see it."""
    adj = set()
    for u, v in edges:
        adj.add((u, v))
        if not directed:
            adj.add((v, u))
    degree = [0] * n
    for u, v in adj:
        degree[u] += 1
        if directed:
            degree[v] += 1
    edge_label_sum = sum(edge_labels[e] for e in edges) if edge_labels else 0
    return {
        "n": n,
        "edges": len(edges),
        "degree_sum": sum(degree),
        "leaves": sum(1 for d in degree if d == 1),
        "label_sum": sum(labels) if labels else 0,
        "edge_label_sum": edge_label_sum,
    }


def main():
    rng = random.Random(20240611)
    rows = []

    def add(name, n, p, directed, labelled, read_labelled, onesided=False):
        edges = random_edges(rng, n, p, directed)
        labels = [rng.randrange(16) for _ in range(n)] if labelled else None
        edge_labels = None
        if labelled:
            edge_labels = {}
            for u, v in edges:
                l = rng.randrange(4)
                edge_labels[(u, v)] = l
                if not directed:
                    edge_labels[(v, u)] = l
        arcs = list(edges)
        if not directed and not onesided:
            arcs += [(v, u) for u, v in edges]
        write(name, n, arcs, labels, edge_labels)
        row = {"file": name, "directed": int(directed), "labels_on_disk": int(labelled), "labelled": int(read_labelled)}
        row.update(facts(n, edges, directed, labels if read_labelled else None, edge_labels if read_labelled else None))
        rows.append(row)

    add("u_plain_40.A00", 40, 0.15, False, False, False)
    add("u_onesided_30.A00", 30, 0.2, False, False, False, onesided=True)
    add("d_plain_30.A00", 30, 0.12, True, False, False)
    add("u_lab_35.A00", 35, 0.15, False, True, True)
    add("d_lab_25.A00", 25, 0.15, True, True, True)
    add("u_lab_as_plain_35.A00", 35, 0.15, False, True, False)
    add("u_sparse_60.A00", 60, 0.03, False, False, False)
    add("single_1.A00", 1, 0.0, False, False, False)

    with open(HERE / "manifest.csv", "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=list(rows[0].keys()))
        w.writeheader()
        w.writerows(rows)


if __name__ == "__main__":
    main()
