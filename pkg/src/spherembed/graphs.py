"""Undirected graph container and edge-list / ground-truth loaders.

Graphs are simple (no self-loops, no duplicate edges), unweighted and
undirected, held as a symmetric CSR adjacency with sorted neighbor lists.
Loaders reduce the input to its largest connected component and keep a
stable map back to the original node labels.
"""

import hashlib
import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

log = logging.getLogger(__name__)


class EdgeListError(ValueError):
    """Raised for malformed edge-list or ground-truth input."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    adjacency: n x n symmetric CSR matrix with 0/1 entries, zero diagonal,
        sorted column indices.
    degrees: integer degree vector, d_i = |N(i)|.
    node_labels: original node label for each index 0..n-1.
    """

    adjacency: sparse.csr_matrix
    degrees: np.ndarray
    node_labels: tuple

    @property
    def n(self):
        return self.adjacency.shape[0]

    @property
    def m(self):
        """Total edge count; degrees always sum to 2m exactly."""
        return int(self.degrees.sum()) // 2

    @cached_property
    def label_index(self):
        return {lab: i for i, lab in enumerate(self.node_labels)}

    def neighbors(self, i):
        start, stop = self.adjacency.indptr[i], self.adjacency.indptr[i + 1]
        return self.adjacency.indices[start:stop]

    def edges(self):
        """Yield each edge once as an (i, j) index pair with i < j."""
        indptr, indices = self.adjacency.indptr, self.adjacency.indices
        for i in range(self.n):
            for j in indices[indptr[i]:indptr[i + 1]]:
                if i < j:
                    yield i, int(j)

    def content_hash(self):
        """Stable hex digest of the node count and edge set."""
        h = hashlib.sha256()
        h.update(str(self.n).encode())
        pairs = np.array(list(self.edges()), dtype=np.int64).reshape(-1, 2)
        h.update(pairs.tobytes())
        return h.hexdigest()[:16]


def _as_lines(source):
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return data.splitlines()
    return Path(source).read_text(encoding="utf-8").splitlines()


def _normalize_labels(raw_labels):
    # All-integer label sets sort numerically, otherwise lexically as strings.
    try:
        return [int(t) for t in raw_labels]
    except ValueError:
        return [str(t) for t in raw_labels]


def _build(labels_sorted, edge_pairs_by_label):
    index = {lab: i for i, lab in enumerate(labels_sorted)}
    n = len(labels_sorted)
    rows = np.fromiter((index[a] for a, _ in edge_pairs_by_label), dtype=np.int64,
                       count=len(edge_pairs_by_label))
    cols = np.fromiter((index[b] for _, b in edge_pairs_by_label), dtype=np.int64,
                       count=len(edge_pairs_by_label))
    data = np.ones(len(rows))
    adj = sparse.coo_matrix((np.concatenate([data, data]),
                             (np.concatenate([rows, cols]),
                              np.concatenate([cols, rows]))), shape=(n, n)).tocsr()
    adj.data[:] = 1.0
    adj.sort_indices()
    degrees = np.diff(adj.indptr).astype(np.int64)
    return Graph(adjacency=adj, degrees=degrees, node_labels=tuple(labels_sorted))


def load_edge_list(source):
    """Parse an edge-list text stream into the largest connected component.

    One edge per line as two whitespace- or comma-separated tokens; lines
    starting with '#' and blank lines are skipped; LF and CRLF both accepted.
    Self-loops and duplicate edges are dropped (counts logged). Rows with
    more than two tokens are rejected: weighted input is not supported.
    """
    raw_edges = []
    for lineno, line in enumerate(_as_lines(source), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        tokens = text.replace(",", " ").split()
        if len(tokens) != 2:
            if len(tokens) > 2:
                raise EdgeListError(
                    f"line {lineno}: expected 2 tokens, got {len(tokens)} "
                    "(weighted edges are not supported)")
            raise EdgeListError(f"line {lineno}: expected 2 tokens, got {len(tokens)}")
        raw_edges.append((tokens[0], tokens[1]))
    if not raw_edges:
        raise EdgeListError("no edges found in input")

    flat = _normalize_labels([t for pair in raw_edges for t in pair])
    pairs = [(flat[2 * i], flat[2 * i + 1]) for i in range(len(raw_edges))]

    self_loops = sum(1 for a, b in pairs if a == b)
    kept = {}
    for a, b in pairs:
        if a == b:
            continue
        kept[(min(a, b), max(a, b))] = None
    duplicates = len(pairs) - self_loops - len(kept)
    if self_loops or duplicates:
        log.info("dropped %d self-loops and %d duplicate edges", self_loops, duplicates)
    if not kept:
        raise EdgeListError("graph is empty after dropping self-loops")

    labels_sorted = sorted({lab for pair in kept for lab in pair})
    g = _build(labels_sorted, list(kept))
    return largest_connected_component(g)


def largest_connected_component(g):
    """Induced subgraph on the largest component, reindexed 0..n-1.

    Ties between equal-size components go to the one containing the
    smallest original label. Idempotent on connected graphs.
    """
    ncomp, comp = csgraph.connected_components(g.adjacency, directed=False)
    if ncomp == 1:
        return g
    sizes = np.bincount(comp)
    best_size = sizes.max()
    # node indices follow sorted label order, so the smallest index in a
    # component carries its smallest original label
    winner = min((c for c in range(ncomp) if sizes[c] == best_size),
                 key=lambda c: np.argmax(comp == c))
    keep = np.flatnonzero(comp == winner)
    sub = g.adjacency[np.ix_(keep, keep)].tocsr()
    sub.sort_indices()
    degrees = np.diff(sub.indptr).astype(np.int64)
    labels = tuple(g.node_labels[i] for i in keep)
    return Graph(adjacency=sub, degrees=degrees, node_labels=labels)


def load_ground_truth(source, graph, ignore_extra=False):
    """Read "node community" lines into a label vector aligned with graph.

    Community ids are canonicalized to 0..k-1 by first appearance in the
    file. Every graph node must be covered; node labels absent from the
    graph raise unless ignore_extra is set (useful when the graph loader
    dropped nodes outside the largest connected component).
    """
    assignments = {}
    order = {}
    for lineno, line in enumerate(_as_lines(source), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        tokens = text.replace(",", " ").split()
        if len(tokens) != 2:
            raise EdgeListError(f"line {lineno}: expected 'node community', got {len(tokens)} tokens")
        node = _normalize_labels([tokens[0]])[0]
        if node not in graph.label_index:
            if ignore_extra:
                continue
            raise EdgeListError(f"line {lineno}: unknown node label {node!r}")
        if tokens[1] not in order:
            order[tokens[1]] = len(order)
        assignments[node] = order[tokens[1]]
    missing = [lab for lab in graph.node_labels if lab not in assignments]
    if missing:
        raise EdgeListError(f"missing community labels for {len(missing)} nodes "
                            f"(first: {missing[0]!r})")
    return np.array([assignments[lab] for lab in graph.node_labels], dtype=np.int64)


def write_edge_list(g, dest):
    """Serialize the graph as one "a b" line per edge, using original labels."""
    lines = [f"# nodes={g.n} edges={g.m}"]
    for i, j in g.edges():
        lines.append(f"{g.node_labels[i]} {g.node_labels[j]}")
    text = "\n".join(lines) + "\n"
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")
