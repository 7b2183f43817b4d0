"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
import math

import networkx as nx
import numpy as np


def perm_mod_p_numpy(rows, p: int, chunk_bits: int = 16) -> int:
    """Ryser's formula mod p, vectorised over column subsets (fine up to dim ~24)."""
    a = np.array(rows, dtype=np.int64) % p
    n = a.shape[0]
    total = 0
    lo_bits = min(chunk_bits, n)
    lo = np.arange(1 << lo_bits, dtype=np.int64)
    lo_sel = ((lo[:, None] >> np.arange(lo_bits)) & 1).astype(np.int64)  # subsets x lo cols
    lo_sums = lo_sel @ a[:, :lo_bits].T % p  # subsets x rows
    lo_size = lo_sel.sum(axis=1)
    for hi in range(1 << (n - lo_bits)):
        hi_cols = [lo_bits + j for j in range(n - lo_bits) if hi >> j & 1]
        hi_sum = a[:, hi_cols].sum(axis=1) % p if hi_cols else np.zeros(n, dtype=np.int64)
        sums = (lo_sums + hi_sum) % p
        prod = np.ones(len(lo), dtype=np.int64)
        for r in range(n):
            prod = prod * sums[:, r] % p
        size = lo_size + len(hi_cols)
        sign = np.where((n - size) % 2 == 0, 1, -1)
        total = (total + int((sign * prod).sum())) % p
    return total % p


def cofactor_det(rows) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            sub = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(sub)
    return total


def rotation_count(n: int, edges) -> int:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return math.prod(math.factorial(max(d - 1, 0)) for d in deg)


def planar_by_rotations(n: int, edges) -> bool:
    """Brute-force: some rotation system has V - E + F = 2C (genus 0)."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    E = g.number_of_edges()
    C = nx.number_connected_components(g)
    if E > 3 * n - 6 and n >= 3:
        return False
    nbrs = [sorted(g[v]) for v in range(n)]
    choices = []
    for v in range(n):
        if len(nbrs[v]) <= 2:
            choices.append([tuple(nbrs[v])])
        else:
            first, rest = nbrs[v][0], nbrs[v][1:]
            choices.append([(first,) + p for p in itertools.permutations(rest)])
    target = 2 * C - n + E
    for rot in itertools.product(*choices):
        pos = [{w: k for k, w in enumerate(r)} for r in rot]
        seen = set()
        F = sum(1 for v in range(n) if not rot[v])  # isolated nodes
        for u in range(n):
            for v in rot[u]:
                if (u, v) in seen:
                    continue
                F += 1
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    r = rot[b]
                    a, b = b, r[(pos[b][a] + 1) % len(r)]
        if F == target:
            return True
    return False


def circular_planar_by_rotations(n: int, edges, order) -> bool:
    """Brute force: G plus an apex whose rotation is ``order`` (either direction) has genus 0.

    The apex sits in the outer face, so its neighbours appear on the outer
    boundary in exactly the order of its rotation.
    """
    g = nx.Graph()
    g.add_nodes_from(range(n + 1))
    g.add_edges_from(edges)
    apex = n
    g.add_edges_from((apex, b) for b in order)
    m = n + 1
    E = g.number_of_edges()
    C = nx.number_connected_components(g)
    nbrs = [sorted(g[v]) for v in range(m)]
    choices = []
    for v in range(m):
        if v == apex:
            choices.append([tuple(order), tuple(reversed(order))])
        elif len(nbrs[v]) <= 2:
            choices.append([tuple(nbrs[v])])
        else:
            first, rest = nbrs[v][0], nbrs[v][1:]
            choices.append([(first,) + p for p in itertools.permutations(rest)])
    target = 2 * C - m + E
    for rot in itertools.product(*choices):
        pos = [{w: k for k, w in enumerate(r)} for r in rot]
        seen = set()
        F = sum(1 for v in range(m) if not rot[v])
        for u in range(m):
            for v in rot[u]:
                if (u, v) in seen:
                    continue
                F += 1
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    r = rot[b]
                    a, b = b, r[(pos[b][a] + 1) % len(r)]
        if F == target:
            return True
    return False
