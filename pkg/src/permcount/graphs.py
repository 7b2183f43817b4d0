"""Directed/undirected graph values, bipartite double covers, brute-force oracles.

Nodes are 0-based ints.  Gadget definitions keep the 1-based figure labels in
their metadata, not here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import networkx as nx

from .errors import DimensionTooLarge, DuplicateEdge, IndexOutOfRange, NonZeroOneWeights
from .linalg import IntMatrix

COVER_LIMIT = 10
MATCHING_LIMIT = 20


class DirectedGraph:
    """Weighted digraph; self-loops allowed, at most one edge per ordered pair."""

    __slots__ = ("node_count", "edges", "_succ")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int, int]] = ()):
        if node_count < 0:
            raise ValueError("node_count must be >= 0")
        seen: dict[tuple[int, int], int] = {}
        for e in edges:
            u, v, w = (tuple(e) + (1,))[:3] if len(e) == 2 else e
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise IndexOutOfRange(f"edge ({u},{v}) outside [0,{node_count})")
            if (u, v) in seen:
                raise DuplicateEdge(f"second edge {u}->{v}")
            seen[(u, v)] = int(w)
        self.node_count = node_count
        self.edges = tuple((u, v, w) for (u, v), w in seen.items())
        succ: list[dict[int, int]] = [dict() for _ in range(node_count)]
        for u, v, w in self.edges:
            succ[u][v] = w
        self._succ = succ

    @classmethod
    def from_matrix(cls, m) -> "DirectedGraph":
        rows = m.rows if isinstance(m, IntMatrix) else m
        n = len(rows)
        return cls(n, [(u, v, rows[u][v]) for u in range(n) for v in range(n) if rows[u][v] != 0])

    def weight(self, u: int, v: int) -> int:
        return self._succ[u].get(v, 0)

    def successors(self, u: int) -> dict[int, int]:
        return self._succ[u]

    def is_zero_one(self) -> bool:
        return all(w in (0, 1) for _, _, w in self.edges)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DirectedGraph)
            and self.node_count == other.node_count
            and sorted(self.edges) == sorted(other.edges)
        )

    def __repr__(self) -> str:
        return f"DirectedGraph({self.node_count}, {len(self.edges)} edges)"


class UndirectedGraph:
    """Simple undirected graph: no loops, no multi-edges."""

    __slots__ = ("node_count", "edges", "_adj")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if node_count < 0:
            raise ValueError("node_count must be >= 0")
        es: list[tuple[int, int]] = []
        seen = set()
        adj: list[list[int]] = [[] for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise IndexOutOfRange(f"edge ({u},{v}) outside [0,{node_count})")
            if u == v:
                raise ValueError(f"self-pair ({u},{u}) not allowed")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"duplicate edge {key}")
            seen.add(key)
            es.append(key)
            adj[u].append(v)
            adj[v].append(u)
        self.node_count = node_count
        self.edges = tuple(es)
        self._adj = adj

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "UndirectedGraph":
        nodes = sorted(g.nodes)
        index = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), [(index[u], index[v]) for u, v in g.edges])

    def neighbors(self, v: int) -> list[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.node_count))
        g.add_edges_from(self.edges)
        return g

    def subgraph(self, nodes: Iterable[int]) -> tuple["UndirectedGraph", list[int]]:
        """Induced subgraph relabelled 0..k-1; also returns the old labels."""
        old = sorted(nodes)
        index = {v: i for i, v in enumerate(old)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return UndirectedGraph(len(old), es), old

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, UndirectedGraph)
            and self.node_count == other.node_count
            and set(self.edges) == set(other.edges)
        )

    def __repr__(self) -> str:
        return f"UndirectedGraph({self.node_count}, {len(self.edges)} edges)"


@dataclass(frozen=True)
class BdcResult:
    """Bipartite double cover: left copy 0..n-1 (rows), right copy n..2n-1 (columns)."""

    graph: UndirectedGraph
    n: int

    def left_of(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexOutOfRange(f"{v} is not a left node")
        return v

    def right_of(self, v: int) -> int:
        if not self.n <= v < 2 * self.n:
            raise IndexOutOfRange(f"{v} is not a right node")
        return v - self.n


def adjacency_matrix(g: DirectedGraph) -> IntMatrix:
    n = g.node_count
    rows = [[0] * n for _ in range(n)]
    for u, v, w in g.edges:
        rows[u][v] = w
    return IntMatrix(rows)


def bipartite_double_cover(g) -> BdcResult:
    """Undirected graph of the block matrix [[0, A], [A^T, 0]]; needs 0/1 weights."""
    if isinstance(g, IntMatrix):
        g = DirectedGraph.from_matrix(g)
    if not g.is_zero_one():
        raise NonZeroOneWeights("bipartite double cover needs a (0/1) graph")
    n = g.node_count
    edges = [(u, n + v) for u, v, w in g.edges if w]
    return BdcResult(UndirectedGraph(2 * n, edges), n)


def sum_cyclic_covers(g: DirectedGraph) -> int:
    """Sum of W(R) over all cycle covers R, by explicit cycle enumeration."""
    n = g.node_count
    if n > COVER_LIMIT:
        raise DimensionTooLarge(f"cycle cover enumeration limited to {COVER_LIMIT} nodes")
    succ = [g.successors(u) for u in range(n)]

    def covers(remaining: frozenset) -> int:
        if not remaining:
            return 1
        start = min(remaining)
        total = 0
        # grow a cycle through `start` inside `remaining`
        stack = [(start, frozenset([start]), 1)]
        while stack:
            u, used, w = stack.pop()
            for v, wt in succ[u].items():
                if wt == 0:
                    continue
                if v == start:
                    total += w * wt * covers(remaining - used)
                elif v in remaining and v not in used and v > start:
                    stack.append((v, used | {v}, w * wt))
        return total

    return covers(frozenset(range(n)))


def count_pm_brute(g: UndirectedGraph) -> int:
    """Perfect matchings by recursion on the lowest unmatched node (bitmask memo)."""
    n = g.node_count
    if n > MATCHING_LIMIT:
        raise DimensionTooLarge(f"brute-force matching count limited to {MATCHING_LIMIT} nodes")
    if n % 2:
        return 0
    nbr = [sum(1 << v for v in g.neighbors(u)) for u in range(n)]
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def rec(matched: int) -> int:
        if matched == full:
            return 1
        free = ~matched & full
        u = (free & -free).bit_length() - 1
        cand = nbr[u] & free
        total = 0
        while cand:
            low = cand & -cand
            total += rec(matched | (1 << u) | low)
            cand ^= low
        return total

    return rec(0)


def connected_components(g: UndirectedGraph) -> list[set[int]]:
    comps = [set(c) for c in nx.connected_components(g.to_networkx())]
    comps.sort(key=min)
    return comps


def write_edge_list(g) -> str:
    """``n m`` header, then one ``u v w`` line per edge (w = 1 for undirected)."""
    if isinstance(g, DirectedGraph):
        lines = [f"{u} {v} {w}" for u, v, w in g.edges]
    else:
        lines = [f"{u} {v} 1" for u, v in g.edges]
    return "\n".join([f"{g.node_count} {len(lines)}", *lines]) + "\n"


def read_edge_list(text: str, directed: bool = True):
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list needs an 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    if directed:
        return DirectedGraph(n, [(int(u), int(v), int(w)) for u, v, w in body])
    return UndirectedGraph(n, [(int(r[0]), int(r[1])) for r in body])
