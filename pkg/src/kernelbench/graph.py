"""Undirected weighted graphs and their derived matrices.

A :class:`Graph` stores a validated symmetric nonnegative adjacency matrix
with zero diagonal, plus optional ground-truth class labels.  Unweighted
graphs use 0/1 entries.  Everything here is immutable after construction
and safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import cost_path_matrix, hop_matrix
from .errors import (
    AsymmetricInput,
    Disconnected,
    LabelOutOfRange,
    NegativeWeight,
    NonzeroDiagonal,
)
from .families import DistanceMatrix, distance_matrix

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Graph:
    adjacency: np.ndarray
    labels: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def num_classes(self) -> int:
        if self.labels is None:
            raise LabelOutOfRange("graph carries no class labels")
        return int(self.labels.max()) + 1

    @property
    def is_unweighted(self) -> bool:
        a = self.adjacency
        return bool(np.all((a == 0.0) | (a == 1.0)))


@dataclass(frozen=True)
class DegreeData:
    """Degree vector d = A e, diagonal degree matrix, and volume = e^T d."""

    degrees: np.ndarray
    degree_matrix: np.ndarray
    volume: float


def build_graph(adjacency: np.ndarray, labels=None) -> Graph:
    """Validate and construct a graph.

    The matrix must be square, symmetric within 1e-12, nonnegative, and have
    an exactly zero diagonal (simple graphs only).  It is symmetrized as
    (A + A^T)/2 after validation to remove float asymmetry.  Labels, when
    given, must cover exactly the classes 0..m-1.
    """
    a = np.asarray(adjacency, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise AsymmetricInput(f"adjacency must be square, got shape {a.shape}")
    if a.size and np.abs(a - a.T).max() > SYMMETRY_TOL:
        raise AsymmetricInput(f"adjacency asymmetric beyond {SYMMETRY_TOL:g}")
    if a.size and a.min() < 0.0:
        i, j = np.unravel_index(int(np.argmin(a)), a.shape)
        raise NegativeWeight(f"negative weight {a[i, j]:g} at ({i},{j})")
    if np.any(np.diagonal(a) != 0.0):
        raise NonzeroDiagonal("self-loops are not allowed")
    a = (a + a.T) / 2.0
    a.setflags(write=False)

    lab = None
    if labels is not None:
        lab = np.asarray(labels)
        if lab.ndim != 1 or lab.shape[0] != a.shape[0]:
            raise LabelOutOfRange(f"expected {a.shape[0]} labels, got shape {lab.shape}")
        if not np.issubdtype(lab.dtype, np.integer):
            if not np.all(lab == np.floor(lab)):
                raise LabelOutOfRange("labels must be integers")
        lab = lab.astype(np.int64)
        present = np.unique(lab)
        m = int(present.max()) + 1 if present.size else 0
        if present.size == 0 or present[0] < 0 or not np.array_equal(present, np.arange(m)):
            raise LabelOutOfRange(f"labels must cover exactly 0..m-1, got {present}")
        lab.setflags(write=False)
    return Graph(a, lab)


def degree_data(g: Graph) -> DegreeData:
    d = g.adjacency.sum(axis=1)
    return DegreeData(d, np.diag(d), float(d.sum()))


def laplacian(g: Graph) -> np.ndarray:
    """L = D - A; symmetric positive semidefinite with zero row sums."""
    d = g.adjacency.sum(axis=1)
    lap = np.diag(d) - g.adjacency
    return lap


def is_connected(g: Graph) -> bool:
    """True iff the graph has a single connected component."""
    n = g.n
    if n <= 1:
        return True
    a = g.adjacency > 0
    reached = np.zeros(n, dtype=bool)
    reached[0] = True
    frontier = reached.copy()
    while frontier.any():
        grown = a[frontier].any(axis=0) & ~reached
        reached |= grown
        frontier = grown
    return bool(reached.all())


def edge_cost_matrix(g: Graph) -> np.ndarray:
    """Per-edge traversal costs: 1 for unit weights, 1/w for similarity weights.

    Non-edges (and the diagonal) hold np.inf.
    """
    a = g.adjacency
    costs = np.full_like(a, np.inf)
    edges = a > 0
    costs[edges] = 1.0 / a[edges]
    return costs


def shortest_path_matrix(g: Graph) -> DistanceMatrix:
    """All-pairs shortest path distances.

    Hop counts (BFS) for unweighted graphs; weighted graphs use Dijkstra on
    reciprocal-weight edge costs, treating weights as similarities.
    """
    if not is_connected(g):
        raise Disconnected("shortest paths need a connected graph")
    if g.is_unweighted:
        hops = hop_matrix(g.adjacency)
        dist = hops.astype(np.float64)
    else:
        dist = cost_path_matrix(edge_cost_matrix(g))
    return distance_matrix(dist, "SP")
