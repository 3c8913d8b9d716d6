"""Routing multigraphs of permutations and their proper q-edge-colorings.

For a permutation f of A^n and a register r, every state s is an edge from
its column (s with register r deleted) to the column of f(s). Each column
holds q states on either side, so the multigraph is q-regular and, by
Koenig's theorem, splits into q perfect matchings.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .core import Permutation
from .errors import DegenerateInputError, InvalidGraphError


@dataclass(frozen=True)
class BipartiteMultigraph:
    left_count: int
    right_count: int
    left: np.ndarray  # per edge
    right: np.ndarray
    labels: np.ndarray

    @property
    def edges(self) -> list:
        return list(zip(self.left.tolist(), self.right.tolist(), self.labels.tolist()))

    def degrees(self):
        return (np.bincount(self.left, minlength=self.left_count),
                np.bincount(self.right, minlength=self.right_count))


@dataclass(frozen=True)
class EdgeColoring:
    labels: np.ndarray
    colors: np.ndarray  # colors[i] belongs to edge labels[i]

    @property
    def color(self) -> dict:
        return dict(zip(self.labels.tolist(), self.colors.tolist()))


def column_index(alphabet, register: int) -> np.ndarray:
    """Index of each state's column: the state with ``register`` deleted."""
    coords = alphabet.coords
    col = np.zeros(alphabet.size, dtype=np.int64)
    for k in range(alphabet.n):
        if k != register - 1:
            col = col * alphabet.q + coords[:, k]
    return col


def perm_to_routing_graph(f: Permutation, register: int = 1) -> BipartiteMultigraph:
    a = f.alphabet
    if a.n < 2:
        raise DegenerateInputError("routing needs n >= 2 (a single register has no columns)")
    col = column_index(a, register)
    count = a.size // a.q
    return BipartiteMultigraph(count, count, col.copy(), col[f.images], np.arange(a.size, dtype=np.int64))


def _matching(left, right, nl, nr):
    # one entry per distinct (left, right) pair is enough for a matching
    mat = csr_matrix((np.ones(len(left), dtype=np.int8), (left, right)), shape=(nl, nr))
    mat.sum_duplicates()
    return maximum_bipartite_matching(mat, perm_type="column")


def edge_color(g: BipartiteMultigraph, q: int) -> EdgeColoring:
    """Proper q-edge-coloring by peeling q perfect matchings.

    Within a matched vertex pair the lowest-numbered remaining edge takes the
    color, so the result depends only on the edge order.
    """
    dl, dr = g.degrees()
    if g.left_count != g.right_count or np.any(dl != q) or np.any(dr != q):
        raise InvalidGraphError(f"routing graph is not {q}-regular on both sides")
    m = len(g.labels)
    colors = np.full(m, -1, dtype=np.int64)
    order = np.lexsort((np.arange(m), g.right, g.left))  # edges sorted by (left, right, index)
    for c in range(q):
        live = order[colors[order] < 0]
        match = _matching(g.left[live], g.right[live], g.left_count, g.right_count)
        if np.any(match < 0):
            raise InvalidGraphError("no perfect matching in a regular bipartite graph")
        hit = match[g.left[live]] == g.right[live]
        cand = live[hit]
        # first candidate per left vertex (cand is sorted by left, then index)
        _, first = np.unique(g.left[cand], return_index=True)
        colors[cand[first]] = c
    return EdgeColoring(g.labels.copy(), colors)


def is_proper(g: BipartiteMultigraph, coloring: EdgeColoring, q: int) -> bool:
    lookup = coloring.color
    cols = np.array([lookup.get(int(lab), -1) for lab in g.labels])
    if np.any(cols < 0) or np.any(cols >= q):
        return False
    for side, count in ((g.left, g.left_count), (g.right, g.right_count)):
        keys = side * q + cols
        if len(np.unique(keys)) != len(keys):
            return False
    return True
