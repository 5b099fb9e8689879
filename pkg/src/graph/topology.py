# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Topology Module
License: MIT License

This module defines the directed network topology and the support basis of
the shift operators defined on it.

Conventions: an edge (src, dst) means "src sends to dst", so it permits the
matrix entry S[dst, src]. Inside Python objects node indices are 0-based; the
constructor and the graph file use 1-based labels.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Tuple

import networkx as nx
import numpy as np

from src.errors import DimensionError, InputError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Topology:
    """
    Immutable directed graph. `edges` holds deduplicated 0-based (src, dst)
    pairs in first-seen order. When `allow_self_loops` is set, every (n, n) is
    part of the support whether or not it is listed.
    """
    n_nodes: int
    edges: Tuple[Edge, ...]
    allow_self_loops: bool = True
    directed: bool = True

    @cached_property
    def in_neighborhoods(self) -> Tuple[Tuple[int, ...], ...]:
        """In-neighbors of every node (ascending, self excluded)."""
        neighbors = [set() for _ in range(self.n_nodes)]
        for src, dst in self.edges:
            if src != dst:
                neighbors[dst].add(src)
        return tuple(tuple(sorted(group)) for group in neighbors)

    def in_neighbors(self, node: int) -> Tuple[int, ...]:
        """Returns the in-neighborhood of a 0-based node."""
        return self.in_neighborhoods[node]

    @property
    def cross_edge_count(self) -> int:
        """Number of edges between distinct nodes."""
        return sum(len(group) for group in self.in_neighborhoods)

    def cross_links(self) -> np.ndarray:
        """Boolean matrix with C[dst, src] = True for every edge between distinct nodes."""
        links = self.adjacency().astype(bool)
        np.fill_diagonal(links, False)
        return links

    def adjacency(self) -> np.ndarray:
        """
        Dense 0/1 matrix in shift indexing: A[dst, src] = 1 for every edge,
        plus the diagonal when self-loops are allowed.
        """
        matrix = np.zeros((self.n_nodes, self.n_nodes))
        for src, dst in self.edges:
            matrix[dst, src] = 1.0
        if self.allow_self_loops:
            np.fill_diagonal(matrix, 1.0)
        return matrix

    def to_networkx(self) -> nx.DiGraph:
        """Directed networkx view (self-loops omitted)."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n_nodes))
        graph.add_edges_from((src, dst) for src, dst in self.edges if src != dst)
        return graph


@dataclass(frozen=True)
class SupportBasis:
    """
    Sparse representation of the support basis: the permitted (row, col)
    entries of a shift matrix, sorted lexicographically. Column k of the basis
    is e_{col_k} kron e_{row_k}; it is never materialized.
    """
    n_nodes: int
    pairs: Tuple[Edge, ...]

    @property
    def e_count(self) -> int:
        return len(self.pairs)

    @cached_property
    def rows(self) -> np.ndarray:
        return np.array([row for row, _ in self.pairs], dtype=int)

    @cached_property
    def cols(self) -> np.ndarray:
        return np.array([col for _, col in self.pairs], dtype=int)

    @cached_property
    def mask(self) -> np.ndarray:
        """Boolean N x N matrix of permitted entries."""
        mask = np.zeros((self.n_nodes, self.n_nodes), dtype=bool)
        mask[self.rows, self.cols] = True
        return mask

    def to_matrix(self, coefficients: np.ndarray) -> np.ndarray:
        """Scatters a coefficient vector s of length E into an N x N matrix."""
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (self.e_count,):
            raise DimensionError(f"Expected {self.e_count} coefficients, got shape {coefficients.shape}")
        matrix = np.zeros((self.n_nodes, self.n_nodes))
        matrix[self.rows, self.cols] = coefficients
        return matrix

    def from_matrix(self, matrix: np.ndarray) -> np.ndarray:
        """Gathers the permitted entries of `matrix` into a vector of length E."""
        matrix = np.asarray(matrix, dtype=float)
        if matrix.shape != (self.n_nodes, self.n_nodes):
            raise DimensionError(f"Expected a {self.n_nodes}x{self.n_nodes} matrix, got {matrix.shape}")
        return matrix[self.rows, self.cols].copy()


def build_topology(n_nodes: int, edge_list: Iterable[Edge], allow_self_loops: bool = True,
                   directed: bool = True, one_based: bool = True) -> Topology:
    """
    Builds a Topology from an edge list, dropping duplicate edges.

    Args:
        n_nodes (int): Number of nodes N (>= 1).
        edge_list (Iterable[Edge]): (src, dst) pairs meaning "src sends to dst".
        allow_self_loops (bool): Whether the diagonal belongs to the support.
        directed (bool): If False, every pair is added in both directions.
        one_based (bool): Whether the labels run 1..N (default) or 0..N-1.

    Returns:
        Topology: The deduplicated topology.
    """
    if int(n_nodes) < 1:
        raise InputError(f"A topology needs at least one node, got {n_nodes}")
    n_nodes = int(n_nodes)
    offset = 1 if one_based else 0
    seen = {}
    for raw in edge_list:
        if len(raw) != 2:
            raise InputError(f"Edge {raw!r} is not a (src, dst) pair")
        src, dst = int(raw[0]) - offset, int(raw[1]) - offset
        if not (0 <= src < n_nodes and 0 <= dst < n_nodes):
            raise InputError(f"Edge {tuple(raw)} has an index out of range for {n_nodes} nodes")
        seen.setdefault((src, dst), None)
        if not directed:
            seen.setdefault((dst, src), None)
    topology = Topology(n_nodes=n_nodes, edges=tuple(seen), allow_self_loops=bool(allow_self_loops),
                        directed=bool(directed))
    logger.debug(f"Built topology with {n_nodes} nodes and {len(topology.edges)} edges.")
    return topology


def build_support_basis(topology: Topology) -> SupportBasis:
    """
    Enumerates the permitted shift entries: (n, n') for every edge n' -> n,
    plus the diagonal when self-loops are allowed, in lexicographic order.
    """
    pairs = {(dst, src) for src, dst in topology.edges}
    if topology.allow_self_loops:
        pairs.update((node, node) for node in range(topology.n_nodes))
    return SupportBasis(n_nodes=topology.n_nodes, pairs=tuple(sorted(pairs)))


def respects_support(matrix: np.ndarray, basis: SupportBasis) -> bool:
    """True iff `matrix` is exactly zero outside the support."""
    matrix = np.asarray(matrix)
    if matrix.shape != (basis.n_nodes, basis.n_nodes):
        return False
    return not np.any(matrix[~basis.mask] != 0.0)
