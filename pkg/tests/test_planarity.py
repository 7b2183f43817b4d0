import random

import networkx as nx
import pytest

from oracles import circular_planar_by_rotations, planar_by_rotations, rotation_count
from permcount.errors import MalformedEmbedding, NonZeroOneWeights, TooFewBoundaryNodes, WrongPairCount
from permcount.gadgets import Gadget, builtin_gadget, variable_gadget
from permcount.graphs import UndirectedGraph
from permcount.planarity import (
    BdcClass,
    BoundarySpec,
    PlanarEmbedding,
    bdc_boundary_orders,
    circular_planar,
    classify_bdc,
    dump_embedding,
    euler_holds,
    faces,
    load_embedding,
    pairs_attachable,
    planarity_test,
)


def _atlas_small():
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() <= 6:
            yield h


def test_planarity_matches_rotation_oracle():
    count = 0
    for h in _atlas_small():
        g = UndirectedGraph.from_networkx(h)
        if len(g.edges) <= 3 * g.node_count - 6 and rotation_count(g.node_count, g.edges) > 3000:
            continue  # too many rotation systems for the brute-force oracle
        assert (planarity_test(g) is not None) == planar_by_rotations(g.node_count, g.edges)
        count += 1
    assert count > 150


def test_k5_and_k33_rejected():
    assert planarity_test(UndirectedGraph.from_networkx(nx.complete_graph(5))) is None
    assert planarity_test(UndirectedGraph.from_networkx(nx.complete_bipartite_graph(3, 3))) is None


def test_faces_and_euler():
    rng = random.Random(31)
    for _ in range(50):
        n = rng.randint(1, 12)
        h = nx.gnp_random_graph(n, 0.3, seed=rng.randrange(10**6))
        g = UndirectedGraph.from_networkx(h)
        e = planarity_test(g)
        if e is None:
            continue
        fs = faces(e)
        assert euler_holds(e)
        c = nx.number_connected_components(h)
        assert len(fs[0]) == c  # one outer walk per component
        # every half-edge appears in exactly one walk
        halves = [(w[k], w[(k + 1) % len(w)]) for f in fs for w in f if len(w) > 1 for k in range(len(w))]
        assert sorted(halves) == sorted({(u, v) for u, v in g.edges} | {(v, u) for u, v in g.edges})


def test_grid_face_count():
    g = UndirectedGraph.from_networkx(nx.convert_node_labels_to_integers(nx.grid_2d_graph(2, 3)))
    fs = faces(planarity_test(g))
    assert len(fs) == 3  # outer + two squares
    assert sorted(len(f[0]) for f in fs[1:]) == [4, 4]


def test_embedding_io_and_validation():
    g = UndirectedGraph.from_networkx(nx.cycle_graph(4))
    e = planarity_test(g)
    assert load_embedding(dump_embedding(e)) == e
    with pytest.raises(MalformedEmbedding):
        load_embedding("0: 1\n1:\n")
    bad = PlanarEmbedding(3, ((1,), (0, 2), (1, 1)))
    with pytest.raises(MalformedEmbedding):
        faces(bad)
    # a K4 rotation system of genus 1 fails the Euler check
    k4 = PlanarEmbedding(4, ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)))
    with pytest.raises(MalformedEmbedding):
        faces(k4)


def test_circular_planar_c4_and_k4():
    c4 = UndirectedGraph.from_networkx(nx.cycle_graph(4))
    assert circular_planar(c4, BoundarySpec((0, 1, 2, 3)))
    assert circular_planar(c4, BoundarySpec((3, 2, 1, 0)))
    assert circular_planar(c4, BoundarySpec((1, 2, 3, 0)))
    assert not circular_planar(c4, BoundarySpec((0, 2, 1, 3)))
    k4 = UndirectedGraph.from_networkx(nx.complete_graph(4))
    assert not circular_planar(k4, BoundarySpec((0, 1, 2, 3)))
    assert circular_planar(k4, BoundarySpec((0, 1, 2)))
    with pytest.raises(TooFewBoundaryNodes):
        circular_planar(c4, BoundarySpec((0, 1)))
    with pytest.raises(ValueError):
        BoundarySpec((0, 0, 1))


def test_circular_planar_matches_oracle():
    rng = random.Random(32)
    checked = 0
    while checked < 60:
        n = rng.randint(4, 6)
        h = nx.gnp_random_graph(n, 0.45, seed=rng.randrange(10**6))
        g = UndirectedGraph.from_networkx(h)
        k = rng.randint(3, min(4, n))
        order = rng.sample(range(n), k)
        apexed = list(g.edges) + [(n, b) for b in order]
        if rotation_count(n + 1, apexed) > 5000:
            continue
        want = circular_planar_by_rotations(n, g.edges, order)
        assert circular_planar(g, BoundarySpec(order)) == want, (list(g.edges), order)
        checked += 1


def test_classification_of_library_xors():
    for name in ("g3_xor", "rl_xor", "lr_xor", "gstar_xor"):
        assert classify_bdc(builtin_gadget(name)) == BdcClass.NEITHER
    # read with input and output exchanged in each pair, LR's double cover
    # does admit the extendable order
    lr = builtin_gadget("lr_xor")
    swapped = Gadget(lr.matrix, tuple((o, i) for i, o in lr.io_pairs), "lr_flipped")
    assert classify_bdc(swapped) == BdcClass.EXTENDABLE
    # strict is recorded only: reflection never changes the answer
    assert classify_bdc(swapped, strict=True) == BdcClass.EXTENDABLE


def test_classification_small_cases():
    # two disjoint 2-cycles routed through the pairs: BDC is two 4-cycles
    g = Gadget(_m([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]), ((0, 1), (2, 3)))
    assert classify_bdc(g) == BdcClass.BOTH
    orders = bdc_boundary_orders(g)
    assert orders == {"connectable": (4, 1, 6, 3), "extendable": (4, 6, 3, 1)}


def test_classification_errors():
    with pytest.raises(WrongPairCount):
        classify_bdc(builtin_gadget("valiant_clause"))
    with pytest.raises(NonZeroOneWeights):
        classify_bdc(builtin_gadget("valiant_xor"))


@pytest.mark.parametrize(
    "name", ["gstar_xor", "unit_clause", "parity_clause2", "parity_clause3", "const_clause2", "valiant_clause"]
)
def test_forest_gadgets_attachable(name):
    assert pairs_attachable(builtin_gadget(name))


def test_variable_gadgets_attachable():
    for t in range(4):
        for f in range(4):
            assert pairs_attachable(variable_gadget(t, f))


def _m(rows):
    from permcount.linalg import IntMatrix

    return IntMatrix(rows)
