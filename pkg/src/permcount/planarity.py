"""Planarity, face structure, circular planarity and BDC boundary classification.

The planarity test itself is networkx's left-right implementation; this module
turns its output into plain rotation systems and walks faces on its own.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import networkx as nx

from .errors import MalformedEmbedding, NonZeroOneWeights, TooFewBoundaryNodes, WrongPairCount
from .gadgets import Gadget
from .graphs import UndirectedGraph, bipartite_double_cover


@dataclass(frozen=True)
class PlanarEmbedding:
    """Rotation system: ``rotation[v]`` lists v's neighbours in clockwise order."""

    node_count: int
    rotation: tuple[tuple[int, ...], ...]
    outer_face: int = 0

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.node_count) for v in self.rotation[u] if u < v]


# A face is a tuple of closed walks; a walk (v0, ..., vk-1) uses the half-edges
# v_i -> v_{i+1 mod k}.  A single-node walk (v,) stands for an isolated node.
# Face 0 is the outer face and holds one walk per connected component, so
# V - E + F = 1 + C holds for the whole list.
Face = tuple[tuple[int, ...], ...]


def planarity_test(g: UndirectedGraph) -> Optional[PlanarEmbedding]:
    ok, emb = nx.check_planarity(g.to_networkx())
    if not ok:
        return None
    rot = tuple(tuple(emb.neighbors_cw_order(v)) if g.degree(v) else () for v in range(g.node_count))
    return PlanarEmbedding(g.node_count, rot)


def is_planar(g: UndirectedGraph) -> bool:
    return planarity_test(g) is not None


def _validate(e: PlanarEmbedding) -> None:
    if len(e.rotation) != e.node_count:
        raise MalformedEmbedding("rotation list count differs from node count")
    for u, nbrs in enumerate(e.rotation):
        if len(set(nbrs)) != len(nbrs):
            raise MalformedEmbedding(f"node {u} lists a neighbour twice")
        for v in nbrs:
            if not 0 <= v < e.node_count or v == u or u not in e.rotation[v]:
                raise MalformedEmbedding(f"half-edge {u}->{v} has no twin")


def face_walks(e: PlanarEmbedding) -> list[tuple[int, ...]]:
    """All face boundary walks of the rotation system (isolated nodes excluded)."""
    _validate(e)
    pos = [{v: k for k, v in enumerate(nbrs)} for nbrs in e.rotation]
    seen = set()
    walks = []
    for u in range(e.node_count):
        for v in e.rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                rot = e.rotation[b]
                # next half-edge leaves b towards the neighbour preceding a clockwise
                c = rot[(pos[b][a] - 1) % len(rot)]
                a, b = b, c
            walks.append(tuple(walk))
    return walks


def _component_of(e: PlanarEmbedding) -> list[int]:
    comp = [-1] * e.node_count
    c = 0
    for s in range(e.node_count):
        if comp[s] >= 0:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            u = stack.pop()
            for v in e.rotation[u]:
                if comp[v] < 0:
                    comp[v] = c
                    stack.append(v)
        c += 1
    return comp


def faces(e: PlanarEmbedding) -> list[Face]:
    """Faces of the embedding with the outer face first (see ``Face``)."""
    walks = face_walks(e)
    comp = _component_of(e)
    ncomp = max(comp, default=-1) + 1
    per_comp: list[list[tuple[int, ...]]] = [[] for _ in range(ncomp)]
    for w in walks:
        per_comp[comp[w[0]]].append(w)
    outer: list[tuple[int, ...]] = []
    inner: list[Face] = []
    for c in range(ncomp):
        ws = per_comp[c]
        if not ws:
            node = comp.index(c)
            outer.append((node,))
            continue
        # any face may serve as the outer one; take the longest walk
        k = max(range(len(ws)), key=lambda j: (len(ws[j]), -j))
        outer.append(ws[k])
        inner.extend((w,) for j, w in enumerate(ws) if j != k)
    result: list[Face] = [tuple(outer)] if ncomp else []
    result.extend(inner)
    # Euler sanity check; a bad rotation system (non-planar) shows up here
    E = sum(len(r) for r in e.rotation) // 2
    if ncomp and e.node_count - E + len(result) != 1 + ncomp:
        raise MalformedEmbedding("rotation system is not planar (Euler check failed)")
    return result


def euler_holds(e: PlanarEmbedding) -> bool:
    fs = faces(e)
    comps = len(set(_component_of(e)))
    E = sum(len(r) for r in e.rotation) // 2
    return e.node_count - E + len(fs) == 1 + comps


def dump_embedding(e: PlanarEmbedding) -> str:
    return "".join(f"{v}: {' '.join(map(str, r))}\n" for v, r in enumerate(e.rotation))


def load_embedding(text: str) -> PlanarEmbedding:
    rot = []
    for k, ln in enumerate(text.strip().splitlines()):
        head, _, rest = ln.partition(":")
        if int(head) != k:
            raise MalformedEmbedding(f"expected node {k}, got {head}")
        rot.append(tuple(int(x) for x in rest.split()))
    e = PlanarEmbedding(len(rot), tuple(rot))
    _validate(e)
    return e


# --------------------------------------------------------------------------
# circular planarity


@dataclass(frozen=True)
class BoundarySpec:
    nodes: tuple[int, ...]
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("boundary nodes must be distinct")


def _augment(g: nx.Graph, order: Sequence[int]) -> nx.Graph:
    """g plus a cycle through ``order`` (subdividing duplicated edges) and an apex."""
    h = g.copy()
    fresh = max(h.nodes, default=-1) + 1
    k = len(order)
    for j in range(k):
        u, v = order[j], order[(j + 1) % k]
        if h.has_edge(u, v):
            h.add_edge(u, fresh)
            h.add_edge(fresh, v)
            fresh += 1
        else:
            h.add_edge(u, v)
    h.add_edges_from((fresh, b) for b in order)
    return h


def circular_planar(g: UndirectedGraph, b: BoundarySpec) -> bool:
    """Does g embed in a disc with ``b.nodes`` on the circle in this cyclic order?

    The order is taken up to rotation.  Reflection never changes the answer
    (mirror the whole drawing), so ``strict`` is carried for the record only.
    """
    if len(b.nodes) < 3:
        raise TooFewBoundaryNodes(f"need >= 3 boundary nodes, got {len(b.nodes)}")
    for v in b.nodes:
        if not 0 <= v < g.node_count:
            raise ValueError(f"boundary node {v} outside graph")
    return nx.check_planarity(_augment(g.to_networkx(), b.nodes))[0]


class BdcClass(str, enum.Enum):
    CONNECTABLE = "Connectable"
    EXTENDABLE = "Extendable"
    BOTH = "Both"
    NEITHER = "Neither"

    def __str__(self) -> str:
        return self.value


def _check_bdc_gadget(g: Gadget) -> None:
    if len(g.io_pairs) != 2:
        raise WrongPairCount("classification needs a 2-pair gadget")
    if not g.zero_one:
        raise NonZeroOneWeights(f"{g.name} is weighted; its BDC is undefined")


def bdc_boundary_orders(g: Gadget) -> dict[str, tuple[int, int, int, int]]:
    n = g.dim
    (i1, o1), (i2, o2) = g.io_pairs
    a, b = i1 + n, i2 + n
    return {"connectable": (a, o1, b, o2), "extendable": (a, b, o2, o1)}


def classify_bdc(g: Gadget, strict: bool = False) -> BdcClass:
    """Boundary order of the io nodes (inputs shifted to i' = i + dim) on the BDC."""
    _check_bdc_gadget(g)
    bdc = bipartite_double_cover(g.matrix).graph
    orders = bdc_boundary_orders(g)
    conn = circular_planar(bdc, BoundarySpec(orders["connectable"], strict))
    ext = circular_planar(bdc, BoundarySpec(orders["extendable"], strict))
    if conn and ext:
        return BdcClass.BOTH
    if conn:
        return BdcClass.CONNECTABLE
    if ext:
        return BdcClass.EXTENDABLE
    return BdcClass.NEITHER


def pairs_attachable(g: Gadget) -> bool:
    """Can every io pair of g's BDC host its own outside subgraph, planarly?

    Adds one fresh node per pair adjacent to that pair's o and i' and tests
    planarity.  This is what tree-shaped (nested) composition needs: each
    neighbour gadget hangs off exactly one pair.
    """
    if not g.zero_one:
        raise NonZeroOneWeights(f"{g.name} is weighted; its BDC is undefined")
    n = g.dim
    h = bipartite_double_cover(g.matrix).graph.to_networkx()
    fresh = 2 * n
    for i, o in g.io_pairs:
        h.add_edge(fresh, o)
        h.add_edge(fresh, i + n)
        fresh += 1
    return nx.check_planarity(h)[0]
