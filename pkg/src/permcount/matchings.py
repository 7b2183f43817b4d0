"""FKT perfect-matching counting on planar graphs.

``count_pm_fkt`` is the exact route: Pfaffian orientation, exact determinant of
the skew adjacency, integer square root, product over components.

``count_pm_fkt_mod`` avoids big integers: it evaluates the Pfaffian itself
over GF(p) by skew elimination and fixes its sign from a single perfect
matching (under a Pfaffian orientation every matching contributes the same
sign to the Pfaffian, so ``PM = eps * Pf`` with ``eps`` the sign of any one
term).  Squaring would lose exactly this sign, which is why a determinant
mod p is not enough.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import networkx as nx
import numpy as np

from .errors import BadModulus, InternalNotPerfectSquare, MalformedEmbedding, NonPlanarInput, NotPerfectSquare
from .graphs import UndirectedGraph, connected_components
from .linalg import IntMatrix, determinant, integer_sqrt, mod_reduce
from .planarity import PlanarEmbedding, faces, planarity_test


@dataclass(frozen=True)
class PfaffianOrientation:
    """``direction[(u, v)]`` (u < v) is the oriented edge as (tail, head)."""

    direction: dict

    def oriented(self, u: int, v: int) -> bool:
        """True if the edge {u, v} points from u to v."""
        key = (u, v) if u < v else (v, u)
        return self.direction[key] == (u, v)

    def sign(self, u: int, v: int) -> int:
        return 1 if self.oriented(u, v) else -1


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _walk_half_edges(walk):
    k = len(walk)
    return [(walk[j], walk[(j + 1) % k]) for j in range(k)] if k > 1 else []


def pfaffian_orientation(g: UndirectedGraph, e: PlanarEmbedding) -> PfaffianOrientation:
    """Spanning tree edges oriented low -> high, the rest fixed face by face.

    Non-tree edges form a spanning tree of the dual; peeling its leaves (never
    the outer face) lets each bounded face fix its last free edge so that an
    odd number of its edges agree with the walk direction.
    """
    if e.node_count != g.node_count or set(e.edges()) != set(g.edges):
        raise MalformedEmbedding("embedding does not match the graph")
    fs = faces(e)
    direction: dict = {}
    seen = [False] * g.node_count
    for s in range(g.node_count):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in e.rotation[u]:
                if not seen[v]:
                    seen[v] = True
                    direction[_key(u, v)] = _key(u, v)
                    queue.append(v)

    bounded = [f[0] for f in fs[1:]]
    face_edges = [_walk_half_edges(w) for w in bounded]
    where: dict = {}
    free_count = []
    for fi, hes in enumerate(face_edges):
        free = {_key(a, b) for a, b in hes if _key(a, b) not in direction}
        free_count.append(len(free))
        for k in free:
            where.setdefault(k, []).append(fi)

    queue = deque(fi for fi, c in enumerate(free_count) if c == 1)
    while queue:
        fi = queue.popleft()
        if free_count[fi] != 1:
            continue
        agree = 0
        last = None
        for a, b in face_edges[fi]:
            k = _key(a, b)
            if k in direction:
                agree += direction[k] == (a, b)
            else:
                last = (a, b)
        a, b = last
        direction[_key(a, b)] = (a, b) if agree % 2 == 0 else (b, a)
        for fj in where[_key(a, b)]:
            free_count[fj] -= 1
            if fj != fi and free_count[fj] == 1:
                queue.append(fj)
    # edges only on the outer face (never reached by peeling) are unconstrained
    for k in g.edges:
        direction.setdefault(k, k)
    return PfaffianOrientation(direction)


def orientation_is_pfaffian(e: PlanarEmbedding, o: PfaffianOrientation) -> bool:
    """Face-walk verifier: every bounded face has an odd number of agreeing edges."""
    for f in faces(e)[1:]:
        agree = sum(o.oriented(a, b) for a, b in _walk_half_edges(f[0]))
        if agree % 2 == 0:
            return False
    return True


def _component_embedding(e: PlanarEmbedding, nodes: list[int]) -> tuple[PlanarEmbedding, list[int]]:
    index = {v: k for k, v in enumerate(nodes)}
    rot = tuple(tuple(index[w] for w in e.rotation[v]) for v in nodes)
    return PlanarEmbedding(len(nodes), rot), nodes


def _skew_rows(sub: UndirectedGraph, o: PfaffianOrientation) -> list[list[int]]:
    n = sub.node_count
    rows = [[0] * n for _ in range(n)]
    for u, v in sub.edges:
        s = o.sign(u, v)
        rows[u][v] = s
        rows[v][u] = -s
    return rows


def _components(g: UndirectedGraph, e: PlanarEmbedding):
    for comp in connected_components(g):
        nodes = sorted(comp)
        sub, _ = g.subgraph(nodes)
        se, _ = _component_embedding(e, nodes)
        yield sub, se


def _embed_or_raise(g: UndirectedGraph) -> PlanarEmbedding:
    e = planarity_test(g)
    if e is None:
        raise NonPlanarInput("FKT needs a planar graph")
    return e


def count_pm_fkt(g: UndirectedGraph) -> int:
    """Exact number of perfect matchings of a planar graph."""
    e = _embed_or_raise(g)
    comps = [sorted(c) for c in connected_components(g)]
    if any(len(c) % 2 for c in comps):
        return 0
    total = 1
    for sub, se in _components(g, e):
        if sub.node_count == 0:
            continue
        o = pfaffian_orientation(sub, se)
        d = determinant(IntMatrix(_skew_rows(sub, o)))
        try:
            r = integer_sqrt(d)
        except NotPerfectSquare as exc:
            raise InternalNotPerfectSquare(f"skew determinant {d} is not a square") from exc
        if r == 0:
            return 0
        total *= r
    return total


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def pfaffian_mod(rows: list[list[int]], p: int) -> int:
    """Pfaffian of a skew-symmetric integer matrix over GF(p), p prime."""
    a = np.array(rows, dtype=np.int64) % p
    n = a.shape[0]
    if n % 2:
        return 0
    pf = 1
    while a.shape[0]:
        nz = np.flatnonzero(a[0, 1:])
        if nz.size == 0:
            return 0
        j = int(nz[0]) + 1
        if j != 1:
            a[[1, j]] = a[[j, 1]]
            a[:, [1, j]] = a[:, [j, 1]]
            pf = -pf
        piv = int(a[0, 1])
        pf = pf * piv % p
        inv = pow(piv, -1, p)
        c0 = a[0, 2:]
        c1 = a[1, 2:]
        a = (a[2:, 2:] + (np.outer(c1, c0) - np.outer(c0, c1)) % p * inv) % p
    return pf % p


def det_mod(rows, p: int) -> int:
    """Determinant over GF(p), p prime (in-place Gaussian elimination)."""
    a = np.array(rows, dtype=np.int64) % p
    n = a.shape[0]
    det = 1
    for k in range(n):
        nz = np.flatnonzero(a[k:, k])
        if nz.size == 0:
            return 0
        j = k + int(nz[0])
        if j != k:
            a[[k, j]] = a[[j, k]]
            det = -det
        piv = int(a[k, k])
        det = det * piv % p
        inv = pow(piv, -1, p)
        f = a[k + 1:, k] * inv % p
        a[k + 1:, k:] = (a[k + 1:, k:] - np.outer(f, a[k, k:])) % p
    return det % p


def _one_perfect_matching(sub: UndirectedGraph) -> Optional[list[tuple[int, int]]]:
    h = sub.to_networkx()
    n = sub.node_count
    if nx.is_bipartite(h):
        left, _ = nx.bipartite.sets(h) if n else (set(), set())
        m = nx.bipartite.hopcroft_karp_matching(h, top_nodes=left)
        pairs = {_key(u, v) for u, v in m.items()}
    else:
        pairs = {_key(u, v) for u, v in nx.max_weight_matching(h, maxcardinality=True)}
    if 2 * len(pairs) != n:
        return None
    return sorted(pairs)


def _bipartite_sides(sub: UndirectedGraph) -> Optional[tuple[list[int], list[int]]]:
    colour = [-1] * sub.node_count
    adj = [[] for _ in range(sub.node_count)]
    for u, v in sub.edges:
        adj[u].append(v)
        adj[v].append(u)
    for s in range(sub.node_count):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    stack.append(v)
                elif colour[v] == colour[u]:
                    return None
    return [v for v in range(sub.node_count) if colour[v] == 0], [v for v in range(sub.node_count) if colour[v] == 1]


def _perm_sign(seq: list[int]) -> int:
    seen = [False] * len(seq)
    sign = 1
    for s in range(len(seq)):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = seq[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def count_pm_fkt_mod(g: UndirectedGraph, p: int, embedding: Optional[PlanarEmbedding] = None) -> int:
    """Number of perfect matchings mod p for a planar graph.

    ``embedding`` may be passed when the caller already ran the planarity test.
    """
    if p < 2:
        raise BadModulus(f"modulus must be >= 2, got {p}")
    if not _is_prime(p):
        return mod_reduce(count_pm_fkt(g), p)
    e = embedding if embedding is not None else _embed_or_raise(g)
    if any(len(c) % 2 for c in connected_components(g)):
        return 0
    total = 1
    for sub, se in _components(g, e):
        if sub.node_count == 0:
            continue
        m = _one_perfect_matching(sub)
        if m is None:
            return 0
        o = pfaffian_orientation(sub, se)
        sides = _bipartite_sides(sub)
        if sides is not None:
            # bipartite: every matching enters det(B) with the same sign, so
            # PM = eps * det(B) with eps read off the matching in hand
            left, right = sides
            col = {v: k for k, v in enumerate(right)}
            b = [[0] * len(right) for _ in left]
            for r, u in enumerate(left):
                for v in sub.neighbors(u):
                    b[r][col[v]] = o.sign(u, v)
            val = det_mod(b, p)
            row = {u: r for r, u in enumerate(left)}
            perm = [0] * len(left)
            eps = 1
            for u, v in m:
                if u not in row:
                    u, v = v, u
                perm[row[u]] = col[v]
                eps *= o.sign(u, v)
            eps *= _perm_sign(perm)
        else:
            val = pfaffian_mod(_skew_rows(sub, o), p)
            seq = [x for pair in m for x in pair]
            eps = _perm_sign(seq)
            for u, v in m:
                eps *= o.sign(u, v)
        if val == 0:
            return 0
        total = total * (eps * val) % p
    return total % p
