"""Graphs on groups, super graphs and H-join decompositions into cliques."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .groups import EquivalencePartition, FiniteGroup, conjugacy_classes, element_orders
from .isomorphism import find_isomorphism

RELATIONS = ("equality", "conjugacy", "order")


class NotAnHJoinError(ValueError):
    pass


class Graph:
    """Simple undirected graph stored as a read-only boolean adjacency matrix."""

    __slots__ = ("adjacency", "labels")

    def __init__(self, adjacency, labels: Sequence[str] | None = None):
        A = np.array(adjacency, dtype=bool)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(A, A.T):
            raise ValueError("adjacency must be symmetric")
        if A.diagonal().any():
            raise ValueError("graph has a loop")
        A.setflags(write=False)
        self.adjacency = A
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != A.shape[0]:
                raise ValueError("one label per vertex required")
        self.labels = labels

    @property
    def n_vertices(self) -> int:
        return self.adjacency.shape[0]

    def __len__(self) -> int:
        return self.n_vertices

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.adjacency.tobytes())

    def __repr__(self) -> str:
        return f"Graph(n={self.n_vertices}, m={self.edge_count()})"

    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def degrees(self) -> list[int]:
        return self.adjacency.sum(axis=1).tolist()

    def int_matrix(self) -> list[list[int]]:
        return self.adjacency.astype(int).tolist()

    def vertex_labels(self) -> tuple[str, ...]:
        return self.labels if self.labels is not None else tuple(str(i) for i in range(self.n_vertices))

    def induced(self, vertices: Sequence[int]) -> Graph:
        idx = list(vertices)
        labels = [self.vertex_labels()[i] for i in idx] if self.labels is not None else None
        return Graph(self.adjacency[np.ix_(idx, idx)], labels)

    def permuted(self, order: Sequence[int]) -> Graph:
        """Relabel so that new vertex ``k`` is old vertex ``order[k]``."""
        return self.induced(order)

    def to_dot(self, name: str = "G", annotations: Sequence[str] | None = None) -> str:
        labels = self.vertex_labels()
        out = [f"graph {name} {{"]
        for i, lab in enumerate(labels):
            extra = f"\\n{annotations[i]}" if annotations is not None else ""
            out.append(f'  {i} [label="{lab}{extra}"];')
        for i, j in zip(*np.nonzero(np.triu(self.adjacency))):
            out.append(f"  {i} -- {j};")
        out.append("}")
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        labels = self.vertex_labels()
        w.writerow(["", *labels])
        for lab, row in zip(labels, self.adjacency.astype(int).tolist()):
            w.writerow([lab, *row])
        return buf.getvalue()


# --- small building blocks ----------------------------------------------------

def complete_graph(k: int) -> Graph:
    return Graph(~np.eye(k, dtype=bool))


def empty_graph(k: int) -> Graph:
    return Graph(np.zeros((k, k), dtype=bool))


def disjoint_union(*graphs: Graph) -> Graph:
    n = sum(g.n_vertices for g in graphs)
    A = np.zeros((n, n), dtype=bool)
    k = 0
    for g in graphs:
        m = g.n_vertices
        A[k:k + m, k:k + m] = g.adjacency
        k += m
    return Graph(A)


def join(*graphs: Graph) -> Graph:
    """Disjoint union with every edge between different summands added."""
    n = sum(g.n_vertices for g in graphs)
    A = np.ones((n, n), dtype=bool)
    k = 0
    for g in graphs:
        m = g.n_vertices
        A[k:k + m, k:k + m] = g.adjacency
        k += m
    np.fill_diagonal(A, False)
    return Graph(A)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    return find_isomorphism(g1.adjacency, g2.adjacency) is not None


# --- graphs on groups -------------------------------------------------------

def commuting_graph(G: FiniteGroup) -> Graph:
    t = G.table
    A = t == t.T
    np.fill_diagonal(A, False)
    return Graph(A, G.names)


def equivalence_partition(G: FiniteGroup, relation: str) -> EquivalencePartition:
    if relation == "equality":
        return EquivalencePartition.from_blocks([[g] for g in range(G.order)], G.order)
    if relation == "conjugacy":
        return conjugacy_classes(G)
    if relation == "order":
        return EquivalencePartition.from_labels(element_orders(G))
    raise ValueError(f"unknown relation {relation!r}; expected one of {RELATIONS}")


def _indicator(partition: EquivalencePartition) -> np.ndarray:
    P = np.zeros((partition.size, len(partition)), dtype=np.int64)
    P[np.arange(partition.size), partition.block_of] = 1
    return P


def super_graph(a_graph: Graph, partition: EquivalencePartition) -> Graph:
    """Join two vertices when their blocks coincide or some members are adjacent."""
    if a_graph.n_vertices != partition.size:
        raise ValueError(
            f"graph has {a_graph.n_vertices} vertices but partition covers {partition.size}"
        )
    P = _indicator(partition)
    block_adj = (P.T @ a_graph.adjacency.astype(np.int64) @ P) > 0
    np.fill_diagonal(block_adj, True)
    A = (P @ block_adj.astype(np.int64) @ P.T) > 0
    np.fill_diagonal(A, False)
    return Graph(A, a_graph.labels)


def supercommuting_graph(G: FiniteGroup, relation: str) -> Graph:
    return super_graph(commuting_graph(G), equivalence_partition(G, relation))


def twin_partition(graph: Graph) -> EquivalencePartition:
    """Classes of vertices with equal closed neighbourhoods.

    This is the coarsest partition over which ``graph`` is an H-join of
    complete graphs.
    """
    closed = graph.adjacency | np.eye(graph.n_vertices, dtype=bool)
    return EquivalencePartition.from_labels([row.tobytes() for row in closed])


# --- H-joins of complete graphs ---------------------------------------------

@dataclass(frozen=True)
class HJoinDecomposition:
    skeleton: Graph
    part_sizes: tuple[int, ...]
    part_members: tuple[tuple[int, ...], ...]

    @property
    def n_parts(self) -> int:
        return len(self.part_sizes)

    @property
    def n_vertices(self) -> int:
        return sum(self.part_sizes)

    def size_multiset(self) -> list[int]:
        return sorted(self.part_sizes)


def hjoin_decompose(graph: Graph, partition: EquivalencePartition) -> HJoinDecomposition:
    if graph.n_vertices != partition.size:
        raise ValueError("graph and partition sizes differ")
    A = graph.adjacency
    P = _indicator(partition)
    counts = P.T @ A.astype(np.int64) @ P
    sizes = np.array(partition.sizes())
    for k, s in enumerate(sizes):
        if counts[k, k] != s * (s - 1):
            raise NotAnHJoinError(f"not an H-join over this partition: block {k} is not a clique")
    full = np.outer(sizes, sizes)
    off = ~np.eye(len(sizes), dtype=bool)
    partial = off & (counts != 0) & (counts != full)
    if partial.any():
        i, j = map(int, np.argwhere(partial)[0])
        raise NotAnHJoinError(
            f"not an H-join over this partition: blocks {i} and {j} are partially adjacent"
        )
    reps = [b[0] for b in partition.blocks]
    skeleton = graph.induced(reps)
    decomp = HJoinDecomposition(skeleton, tuple(int(s) for s in sizes), partition.blocks)
    _check_decomposition(graph, decomp)
    return decomp


def _check_decomposition(graph: Graph, d: HJoinDecomposition) -> None:
    members = [x for part in d.part_members for x in part]
    if sorted(members) != list(range(graph.n_vertices)):
        raise NotAnHJoinError("parts do not partition the vertex set")
    if any(len(m) != s for m, s in zip(d.part_members, d.part_sizes)):
        raise NotAnHJoinError("part sizes disagree with members")
    owner = np.empty(graph.n_vertices, dtype=np.int64)
    for k, part in enumerate(d.part_members):
        owner[list(part)] = k
    S = d.skeleton.adjacency | np.eye(d.n_parts, dtype=bool)
    expected = S[np.ix_(owner, owner)]
    np.fill_diagonal(expected, False)
    if not np.array_equal(expected, graph.adjacency):
        raise NotAnHJoinError("graph differs from the composed H-join")


def hjoin_compose(skeleton: Graph, part_sizes: Sequence[int]) -> Graph:
    """Replace skeleton vertex ``i`` by ``K_{n_i}``; vertices are numbered part by part."""
    sizes = [int(s) for s in part_sizes]
    if len(sizes) != skeleton.n_vertices:
        raise ValueError(f"need {skeleton.n_vertices} part sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    owner = np.repeat(np.arange(len(sizes)), sizes)
    S = skeleton.adjacency | np.eye(len(sizes), dtype=bool)
    A = S[np.ix_(owner, owner)]
    np.fill_diagonal(A, False)
    return Graph(A)


def matches_shape(decomp: HJoinDecomposition, skeleton: Graph, part_sizes: Sequence[int]) -> bool:
    """Skeleton isomorphism that maps each part onto a part of the same size."""
    if sorted(decomp.part_sizes) != sorted(part_sizes):
        return False
    return find_isomorphism(decomp.skeleton.adjacency, skeleton.adjacency,
                            decomp.part_sizes, list(part_sizes)) is not None
