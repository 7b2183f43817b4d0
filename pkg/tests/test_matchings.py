import random

import networkx as nx
import pytest

from permcount.errors import BadModulus, MalformedEmbedding, NonPlanarInput
from permcount.graphs import UndirectedGraph, count_pm_brute
from permcount.linalg import determinant
from permcount.matchings import (
    PfaffianOrientation,
    count_pm_fkt,
    count_pm_fkt_mod,
    det_mod,
    orientation_is_pfaffian,
    pfaffian_mod,
    pfaffian_orientation,
)
from permcount.planarity import planarity_test


def _grid(r, c):
    return UndirectedGraph.from_networkx(nx.convert_node_labels_to_integers(nx.grid_2d_graph(r, c)))


def _random_planar(rng, n):
    while True:
        if rng.random() < 0.5:
            a = n // 2
            es = [(u, a + v) for u in range(a) for v in range(n - a) if rng.random() < 0.4]
        else:
            es = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3]
        g = UndirectedGraph(n, es)
        if planarity_test(g) is not None:
            return g


def test_small_known_counts():
    assert count_pm_fkt(UndirectedGraph.from_networkx(nx.cycle_graph(4))) == 2
    assert count_pm_fkt(_grid(2, 3)) == 3
    assert count_pm_fkt(_grid(4, 4)) == 36
    assert count_pm_fkt(_grid(6, 6)) == 6728
    assert count_pm_fkt(UndirectedGraph(3, [(0, 1), (1, 2)])) == 0
    assert count_pm_fkt(UndirectedGraph(4, [(0, 1), (2, 3)])) == 1


def test_fkt_matches_brute_force():
    rng = random.Random(41)
    for _ in range(120):
        g = _random_planar(rng, rng.randint(1, 16))
        want = count_pm_brute(g)
        assert count_pm_fkt(g) == want
        for p in (2, 3, 5, 4):
            assert count_pm_fkt_mod(g, p) == want % p


def test_orientation_face_parity():
    rng = random.Random(42)
    for _ in range(60):
        g = _random_planar(rng, rng.randint(3, 16))
        e = planarity_test(g)
        o = pfaffian_orientation(g, e)
        assert orientation_is_pfaffian(e, o)


def test_orientation_rejects_foreign_embedding():
    g = UndirectedGraph.from_networkx(nx.cycle_graph(4))
    e = planarity_test(UndirectedGraph.from_networkx(nx.path_graph(4)))
    with pytest.raises(MalformedEmbedding):
        pfaffian_orientation(g, e)


def test_bad_orientation_detected():
    g = UndirectedGraph.from_networkx(nx.cycle_graph(4))
    e = planarity_test(g)
    # all edges pointing "forward" around a 4-cycle: 4 agreeing edges on one face
    o = PfaffianOrientation({(0, 1): (0, 1), (1, 2): (1, 2), (2, 3): (2, 3), (0, 3): (3, 0)})
    assert not orientation_is_pfaffian(e, o)


def test_nonplanar_and_modulus_errors():
    with pytest.raises(NonPlanarInput):
        count_pm_fkt(UndirectedGraph.from_networkx(nx.complete_bipartite_graph(3, 3)))
    with pytest.raises(BadModulus):
        count_pm_fkt_mod(_grid(2, 2), 1)


def test_modular_kernels():
    rng = random.Random(43)
    for _ in range(60):
        n = rng.randint(1, 8)
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        for p in (2, 3, 7):
            assert det_mod(m, p) == determinant(m) % p
        k = 2 * rng.randint(1, 4)
        a = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                a[i][j] = rng.randint(-2, 2)
                a[j][i] = -a[i][j]
        for p in (3, 5):
            pf = pfaffian_mod(a, p)
            assert pf * pf % p == determinant(a) % p
    # Pf of the standard 2x2 block is its upper entry
    assert pfaffian_mod([[0, 1], [-1, 0]], 3) == 1
    assert pfaffian_mod([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], 3) == 0
