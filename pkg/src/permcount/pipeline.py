"""Valiant-graph builders and the counting / deciding algorithms on top of them.

Every builder assembles one CLAUSE gadget per clause, one VARIABLE gadget per
free variable and one XOR gadget per literal occurrence:

    clause output o_c -> XOR i_1 ... XOR o_1 -> clause input i_c
    var slot output o_v -> XOR i_2 ... XOR o_2 -> var slot input i_v

A cover uses the clause side of an XOR exactly when the literal is false, so a
clause gadget sees the set S of its false literals.  Mod 3 an XOR contributes
``a = r3`` through its clause side and ``b = r4`` through its variable side:

* ``a == b``: clause gadgets must weigh every non-full S the same
  ("constant" family, e.g. the Valiant CLAUSE gadget);
* ``a == -b``: clause gadgets must weigh S by (-1)^|S| ("parity" family).

Either way each satisfying assignment picks up the same per-clause factor, and
the builder normalises the global constant to 1: parity-family clauses get one
XOR turned around (clause on pair 2), which multiplies the clause by -1, and a
constant family falls back to a detached 2-cycle component (perm 2 = -1 mod 3).
The result is perm(A) = #models (mod 3) for every builder.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

from .errors import (
    DeciderFailure,
    NotPnPlanarInput,
    NonPlanarBDC,
    NotForest,
    NotThreeCnf,
    PermcountError,
    WeightedGadget,
)
from .formulas import (
    Assignment,
    CnfFormula,
    check_pn_faces,
    is_forest_formula,
    pn_incidence_graph,
    substitute,
)
from .gadgets import Gadget, builtin_gadget, clause_weights, signature, variable_gadget
from .graphs import DirectedGraph, bipartite_double_cover, connected_components
from .matchings import count_pm_fkt_mod
from .planarity import is_planar, planarity_test

MODULUS = 3

CLAUSE_FAMILIES = {
    "constant": {1: "unit_clause", 2: "const_clause2", 3: "valiant_clause"},
    "parity": {1: "unit_clause", 2: "parity_clause2", 3: "parity_clause3"},
}


@dataclass
class ValiantGraph:
    graph: DirectedGraph
    placement: dict
    gadget_set: tuple[str, ...]
    builder: str = "g3"
    flipped: tuple[tuple[int, int], ...] = ()
    correction: bool = False

    @property
    def node_count(self) -> int:
        return self.graph.node_count


@dataclass
class BuildReport:
    builder: str
    nodes: int
    edges: int
    bdc_nodes: int
    graph_planar: Optional[bool]
    bdc_planar: bool
    residue: Optional[int]


@dataclass
class Verdict:
    satisfiable: bool
    residue_trace: list = field(default_factory=list)
    trials_used: int = 0


# --------------------------------------------------------------------------
# XOR analysis


@dataclass(frozen=True)
class XorProfile:
    clause_weight: int
    variable_weight: int

    @property
    def family(self) -> str:
        return "constant" if self.clause_weight == self.variable_weight else "parity"


def xor_profile(g: Gadget) -> XorProfile:
    if not g.zero_one:
        raise WeightedGadget(f"{g.name} has weights outside {{0,1}}")
    s = signature(g, MODULUS).values
    if s[0] or s[1] or s[4] or s[5] or not s[2] or not s[3]:
        raise ValueError(f"{g.name} does not have the XOR pattern mod {MODULUS}: {s}")
    return XorProfile(s[2], s[3])


# --------------------------------------------------------------------------
# assembly


class _Builder:
    def __init__(self):
        self.n = 0
        self.edges: dict[tuple[int, int], int] = {}
        self.placement: dict = {}
        self.names: list[str] = []

    def add(self, key, g: Gadget) -> int:
        base = self.n
        rows = g.matrix.rows
        for u in range(g.dim):
            for v in range(g.dim):
                if rows[u][v]:
                    self.edges[(base + u, base + v)] = rows[u][v]
        self.n += g.dim
        self.placement[key] = range(base, self.n)
        if g.name not in self.names:
            self.names.append(g.name)
        return base

    def link(self, u: int, v: int) -> None:
        if (u, v) in self.edges:
            raise AssertionError(f"duplicate link {u}->{v}")
        self.edges[(u, v)] = 1

    def graph(self) -> DirectedGraph:
        return DirectedGraph(self.n, [(u, v, w) for (u, v), w in self.edges.items()])


def _clause_gadget(family: str, arity: int) -> Gadget:
    return builtin_gadget(CLAUSE_FAMILIES[family][arity])


def _assemble(f: CnfFormula, xor_for_clause: Callable[[int], str], builder: str) -> ValiantGraph:
    if not f.is_3cnf():
        raise NotThreeCnf("every clause needs at most 3 literals")
    xors = {}
    for j in range(f.m):
        name = xor_for_clause(j)
        if name not in xors:
            xors[name] = (builtin_gadget(name), xor_profile(builtin_gadget(name)))
    families = {prof.family for _, prof in xors.values()}
    if len(families) > 1:
        raise ValueError("all XOR gadgets of one build must belong to the same clause family")
    family = families.pop() if families else "constant"

    b = _Builder()
    flipped = []
    const = 1  # product of per-clause factors (mod 3) before correction

    # clause gadgets
    clause_base = {}
    for j, c in enumerate(f.clauses):
        if not c:
            # an empty clause can never be satisfied: a lone node without loop
            b.placement[("clause", j)] = range(b.n, b.n + 1)
            b.n += 1
            continue
        cg = _clause_gadget(family, len(c))
        clause_base[j] = (b.add(("clause", j), cg), cg)

    # variable gadgets: TRUE chain hosts positive occurrences, FALSE chain negative
    occ = f.occurrences()
    var_slot: dict[tuple[int, int], tuple[int, int]] = {}
    for v in f.free_vars():
        pos = [(j, l) for j, l in occ[v] if l > 0]
        neg = [(j, l) for j, l in occ[v] if l < 0]
        vg = variable_gadget(len(pos), len(neg))
        base = b.add(("variable", v), vg)
        for k, (j, l) in enumerate(pos + neg):
            i, o = vg.io_pairs[k]
            var_slot[(j, l)] = (base + i, base + o)

    # xor gadgets + wiring
    for j, c in enumerate(f.clauses):
        if not c:
            continue
        cbase, cg = clause_base[j]
        xg, prof = xors[xor_for_clause(j)]
        w = clause_weights(cg, MODULUS)
        sigma = w[()]
        factor = sigma * pow(prof.variable_weight, len(c), MODULUS) % MODULUS
        flip_first = family == "parity" and factor != 1
        if flip_first:
            factor = factor * (MODULUS - 1) % MODULUS
        const = const * factor % MODULUS
        for k, lit in enumerate(c):
            xbase = b.add(("xor", j, k), xg)
            (xi1, xo1), (xi2, xo2) = [(xbase + i, xbase + o) for i, o in xg.io_pairs]
            ci, co = cg.io_pairs[k]
            ci, co = cbase + ci, cbase + co
            vi, vo = var_slot[(j, lit)]
            if flip_first and k == 0:
                flipped.append((j, k))
                (xi1, xo1), (xi2, xo2) = (xi2, xo2), (xi1, xo1)
            b.link(co, xi1)
            b.link(xo1, ci)
            b.link(vo, xi2)
            b.link(xo2, vi)

    correction = False
    if const != 1:
        # only reachable for the constant family: scale by perm(2-cycle+loops) = 2
        base = b.n
        b.edges.update({(base, base): 1, (base, base + 1): 1, (base + 1, base): 1, (base + 1, base + 1): 1})
        b.n += 2
        b.placement[("correction",)] = range(base, base + 2)
        correction = True

    return ValiantGraph(b.graph(), b.placement, tuple(b.names), builder, tuple(flipped), correction)


def build_valiant_graph(f: CnfFormula, xor: str = "g3_xor") -> ValiantGraph:
    """Standard construction with one XOR gadget type everywhere."""
    xg = builtin_gadget(xor)
    if not xg.zero_one:
        raise WeightedGadget(f"{xor} has weights outside {{0,1}}; the BDC needs a (0/1) graph")
    return _assemble(f, lambda j: xor, "g3" if xor == "g3_xor" else xor)


def build_forest_graph(f: CnfFormula) -> ValiantGraph:
    """FOREST-3SAT construction with G* XOR gadgets.

    On a forest every XOR is the only link between its clause side and its
    variable side, so the double cover decomposes into 2-sums of the gadget
    covers glued at one (o, i') pair each; every gadget used here keeps each
    pair on a common face (``planarity.pairs_attachable``), so the cover is
    planar by construction.
    """
    if not f.is_3cnf():
        raise NotThreeCnf("every clause needs at most 3 literals")
    if not is_forest_formula(f):
        raise NotForest("incidence graph has a cycle")
    return _assemble(f, lambda j: "gstar_xor", "forest")


def build_pn_planar_graph(
    f: CnfFormula, var_order: Sequence[int], face_of_clause: Mapping[int, int]
) -> tuple[ValiantGraph, BuildReport]:
    """pn-planar construction: RL gadgets for face-1 clauses, LR for face-2."""
    check_pn_faces(f, face_of_clause)
    if not is_planar(pn_incidence_graph(f, var_order)):
        raise NotPnPlanarInput("incidence graph plus variable cycle is not planar")
    vg = _assemble(f, lambda j: "rl_xor" if face_of_clause[j] == 1 else "lr_xor", "pn")
    return vg, report(vg, with_graph_planarity=True)


# --------------------------------------------------------------------------
# evaluation


def _underlying(g: DirectedGraph):
    from .graphs import UndirectedGraph

    es = {(min(u, v), max(u, v)) for u, v, _ in g.edges if u != v}
    return UndirectedGraph(g.node_count, sorted(es))


def report(vg: ValiantGraph, with_graph_planarity: bool = False) -> BuildReport:
    bdc = bipartite_double_cover(vg.graph).graph
    e = planarity_test(bdc)
    residue = count_pm_fkt_mod(bdc, MODULUS, e) if e is not None else None
    gp = is_planar(_underlying(vg.graph)) if with_graph_planarity else None
    return BuildReport(vg.builder, vg.node_count, len(vg.graph.edges), bdc.node_count, gp, e is not None, residue)


def perm_mod3_via_bdc(vg: ValiantGraph) -> int:
    """PerfMatch(BDC) mod 3; raises NonPlanarBDC when FKT does not apply."""
    bdc = bipartite_double_cover(vg.graph).graph
    e = planarity_test(bdc)
    if e is None:
        raise NonPlanarBDC(f"double cover of the {vg.builder} graph is not planar")
    return count_pm_fkt_mod(bdc, MODULUS, e)


BuilderSpec = dict


def _build(f: CnfFormula, builder: str = "forest", var_order=None, face_of_clause=None, xor: Optional[str] = None):
    if builder == "forest":
        return build_forest_graph(f)
    if builder == "g3":
        return build_valiant_graph(f, xor or "g3_xor")
    if builder == "pn":
        if var_order is None or face_of_clause is None:
            raise ValueError("pn builder needs var_order and face_of_clause")
        return build_pn_planar_graph(f, var_order, face_of_clause)[0]
    raise ValueError(f"unknown builder {builder!r}")


def algorithm_a(f: CnfFormula, builder: str = "forest", **kw) -> int:
    """1 if PerfMatch(BDC) is nonzero mod 3, else 0."""
    vg = _build(f, builder, **kw)
    return int(perm_mod3_via_bdc(vg) != 0)


def count_mod3_forest(f: CnfFormula) -> int:
    """#models mod 3 of a FOREST formula via FKT on the double cover."""
    vg = build_forest_graph(f)
    try:
        return perm_mod3_via_bdc(vg)
    except NonPlanarBDC as exc:
        raise AssertionError("forest builder produced a non-planar double cover") from exc


def _restrict(f: CnfFormula, values: Mapping[int, bool], face_of_clause=None):
    """Substitute ``values``; also carry a clause -> face map through."""
    if face_of_clause is None:
        g = f
        for v, b in values.items():
            g = substitute(g, v, b)
        return g, None
    idx = list(range(f.m))
    g = f
    for v, b in values.items():
        sat = v if b else -v
        idx = [k for k, c in zip(idx, g.clauses) if sat not in c]
        g = substitute(g, v, b)
    return g, {new: face_of_clause[old] for new, old in enumerate(idx)}


def algorithm_b(f: CnfFormula, k: int = 20, seed: Optional[int] = None, builder: str = "forest", **kw) -> Verdict:
    """Randomised one-sided satisfiability test from up to ``k`` calls to algorithm A.

    Round 0 evaluates the formula itself.  Round r >= 1 takes pivot variable
    number r (round-robin over the free variables) with a fresh random value and
    fixes each other free variable with probability 1/2 to a fresh random value.
    Any nonzero residue proves satisfiability.
    """
    rng = random.Random(seed)
    free = f.free_vars()
    face = kw.pop("face_of_clause", None)
    trace = []
    for r in range(k):
        if r == 0 or not free:
            values: dict[int, bool] = {}
        else:
            pivot = free[(r - 1) % len(free)]
            values = {pivot: rng.random() < 0.5}
            for v in free:
                if v != pivot and rng.random() < 0.5:
                    values[v] = rng.random() < 0.5
        g, fmap = _restrict(f, values, face)
        extra = dict(kw)
        if fmap is not None:
            extra["face_of_clause"] = fmap
        try:
            s = algorithm_a(g, builder, **extra)
        except NonPlanarBDC as exc:
            raise NonPlanarBDC(str(exc), substitution=values) from exc
        trace.append((values, s))
        if s:
            return Verdict(True, trace, r + 1)
        if not free and r == 0:
            break
    return Verdict(False, trace, len(trace))


def make_decider(
    kind: str = "b",
    builder: str = "forest",
    k: int = 20,
    seed: Optional[int] = None,
    base: Optional[CnfFormula] = None,
    **kw,
):
    """A callable formula -> bool around algorithm A or B (seeds advance per call).

    For the pn builder pass ``base`` (the formula ``face_of_clause`` refers to);
    the face map of a restricted formula is then rebuilt from its ``fixed`` record.
    """
    calls = [0]
    face = kw.pop("face_of_clause", None)

    def decide(g: CnfFormula) -> bool:
        calls[0] += 1
        extra = dict(kw)
        if face is not None:
            if base is None or not g.fixed:
                extra["face_of_clause"] = face
            else:
                known = base.fixed_map
                vals = {v: b for v, b in g.fixed if v not in known}
                extra["face_of_clause"] = _restrict(base, vals, face)[1]
        if kind == "a":
            return bool(algorithm_a(g, builder, **extra))
        sub_seed = None if seed is None else seed * 1_000_003 + calls[0]
        return algorithm_b(g, k, sub_seed, builder, **extra).satisfiable

    decide.calls = calls  # type: ignore[attr-defined]
    return decide


def extract_solution(f: CnfFormula, decider: Callable[[CnfFormula], bool]) -> tuple[Optional[Assignment], int]:
    """Fix x_1..x_n one by one, keeping x_i = 1 whenever the decider accepts.

    Returns the assignment (or None) and the number of decider calls made:
    var_count + 1 on satisfiable input, 1 when the first call rejects.
    """
    calls = 0

    def ask(g):
        nonlocal calls
        calls += 1
        try:
            return decider(g)
        except PermcountError as exc:
            raise DeciderFailure(str(exc)) from exc

    if not ask(f):
        return None, calls
    cur = f
    for v in range(1, f.var_count + 1):
        trial = substitute(cur, v, True)
        cur = trial if ask(trial) else substitute(cur, v, False)
    values = [False] * f.var_count
    for v, b in cur.fixed:
        values[v - 1] = b
    if not f.satisfied_by(values):
        return None, calls
    return Assignment(tuple(values)), calls


def node_bound(builder: str, m: int) -> int:
    return {"forest": 40 * m, "g3": 34 * m}.get(builder, 40 * m)
