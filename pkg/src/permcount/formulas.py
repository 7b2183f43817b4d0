"""CNF formulas: data model, DIMACS I/O, incidence graphs, substitution, #SAT oracle."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import networkx as nx
import numpy as np

from .errors import (
    BadPermutation,
    DimacsSyntaxError,
    HeaderMismatch,
    NotPnPlanarInput,
    TautologicalClause,
    TooManyVariables,
    VarOutOfRange,
)
from .graphs import UndirectedGraph

BRUTE_LIMIT = 24


@dataclass(frozen=True)
class CnfFormula:
    """Clauses over variables 1..var_count.

    ``fixed`` holds variables already substituted away (var -> value); they no
    longer count towards the model count.  An empty clause marks a formula
    made unsatisfiable by substitution.
    """

    var_count: int
    clauses: tuple[tuple[int, ...], ...]
    fixed: tuple[tuple[int, bool], ...] = ()

    def __post_init__(self):
        if self.var_count < 0:
            raise ValueError("var_count must be >= 0")
        cl = []
        for c in self.clauses:
            c = tuple(int(x) for x in c)
            seen = set()
            for lit in c:
                if lit == 0 or abs(lit) > self.var_count:
                    raise VarOutOfRange(f"literal {lit} outside 1..{self.var_count}")
                if -lit in seen:
                    raise TautologicalClause(f"clause {list(c)} contains both {abs(lit)} and {-abs(lit)}")
                if lit in seen:
                    raise ValueError(f"duplicate literal {lit} in clause {list(c)}")
                seen.add(lit)
            cl.append(c)
        object.__setattr__(self, "clauses", tuple(cl))
        object.__setattr__(self, "fixed", tuple(sorted((int(v), bool(b)) for v, b in dict(self.fixed).items())))
        fixed_vars = dict(self.fixed)
        for c in cl:
            for lit in c:
                if abs(lit) in fixed_vars:
                    raise ValueError(f"variable {abs(lit)} is fixed but still occurs")

    @classmethod
    def of(cls, var_count: int, clauses: Iterable[Iterable[int]]) -> "CnfFormula":
        return cls(var_count, tuple(tuple(c) for c in clauses))

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def fixed_map(self) -> dict[int, bool]:
        return dict(self.fixed)

    def free_vars(self) -> list[int]:
        fx = self.fixed_map
        return [v for v in range(1, self.var_count + 1) if v not in fx]

    def occurring_vars(self) -> list[int]:
        return sorted({abs(l) for c in self.clauses for l in c})

    def is_3cnf(self) -> bool:
        return all(len(c) <= 3 for c in self.clauses)

    def has_empty_clause(self) -> bool:
        return any(len(c) == 0 for c in self.clauses)

    def occurrences(self) -> dict[int, list[tuple[int, int]]]:
        """var -> [(clause index, literal)] in clause order."""
        occ: dict[int, list[tuple[int, int]]] = {v: [] for v in self.free_vars()}
        for j, c in enumerate(self.clauses):
            for lit in c:
                occ[abs(lit)].append((j, lit))
        return occ

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[v-1]`` is the value of variable v (fixed vars must agree)."""
        if len(assignment) != self.var_count:
            raise ValueError("assignment length differs from var_count")
        for v, b in self.fixed:
            if bool(assignment[v - 1]) != b:
                return False
        return all(any(bool(assignment[abs(l) - 1]) == (l > 0) for l in c) for c in self.clauses)


@dataclass(frozen=True)
class Assignment:
    values: tuple[bool, ...]

    def as_literals(self) -> list[int]:
        return [(k + 1) if b else -(k + 1) for k, b in enumerate(self.values)]

    def v_line(self) -> str:
        return "v " + " ".join(str(x) for x in self.as_literals()) + " 0"


# --------------------------------------------------------------------------
# DIMACS


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    clauses: list[list[int]] = []
    cur: list[int] = []
    for ln_no, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("c"):
            continue
        if s.startswith("%"):
            break
        if s.startswith("p"):
            if header is not None:
                raise DimacsSyntaxError("second header line", ln_no)
            parts = s.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsSyntaxError("header must read 'p cnf <vars> <clauses>'", ln_no)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsSyntaxError("header counts must be integers", ln_no) from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsSyntaxError("header counts must be nonnegative", ln_no)
            continue
        if header is None:
            raise DimacsSyntaxError("clause before header", ln_no)
        for mt in re.finditer(r"\S+", line):
            tok, col = mt.group(), mt.start() + 1
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsSyntaxError(f"bad literal {tok!r}", ln_no, col) from None
            if lit == 0:
                clauses.append(cur)
                cur = []
                continue
            if abs(lit) > header[0]:
                raise HeaderMismatch(f"literal {lit} exceeds the {header[0]} declared variables (line {ln_no})")
            cur.append(lit)
    if header is None:
        raise DimacsSyntaxError("missing 'p cnf' header", 1)
    if cur:
        clauses.append(cur)
    if len(clauses) != header[1]:
        raise HeaderMismatch(f"header announces {header[1]} clauses, found {len(clauses)}")
    out = []
    for c in clauses:
        dedup = list(dict.fromkeys(c))
        if any(-l in dedup for l in dedup):
            raise TautologicalClause(f"clause {c} is tautological")
        out.append(tuple(dedup))
    return CnfFormula(header[0], tuple(out))


def write_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.var_count} {len(f.clauses)}"]
    lines += [" ".join(str(l) for l in c) + (" 0" if c else "0") for c in f.clauses]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# incidence graphs


def incidence_graph(f: CnfFormula) -> UndirectedGraph:
    """Variable i is node i-1, clause j is node var_count + j."""
    n = f.var_count
    edges = []
    for j, c in enumerate(f.clauses):
        for v in sorted({abs(l) for l in c}):
            edges.append((v - 1, n + j))
    return UndirectedGraph(n + len(f.clauses), edges)


def is_forest_formula(f: CnfFormula) -> bool:
    g = incidence_graph(f)
    h = g.to_networkx()
    return len(g.edges) == g.node_count - nx.number_connected_components(h) if g.node_count else True


def pn_incidence_graph(f: CnfFormula, var_order: Sequence[int]) -> UndirectedGraph:
    """Incidence graph plus the variable cycle in ``var_order``."""
    if sorted(var_order) != list(range(1, f.var_count + 1)):
        raise BadPermutation(f"{list(var_order)} is not a permutation of 1..{f.var_count}")
    g = incidence_graph(f)
    edges = list(g.edges)
    k = len(var_order)
    cyc = set()
    for j in range(k if k > 2 else k - 1):
        a, b = var_order[j] - 1, var_order[(j + 1) % k] - 1
        cyc.add((min(a, b), max(a, b)))
    return UndirectedGraph(g.node_count, edges + sorted(cyc))


def check_pn_faces(f: CnfFormula, face_of_clause: Mapping[int, int]) -> None:
    """Opposite-polarity occurrences of a variable must sit on different faces."""
    for j in range(len(f.clauses)):
        if face_of_clause.get(j) not in (1, 2):
            raise NotPnPlanarInput(f"clause {j} needs a face in {{1, 2}}")
    pos: dict[int, set] = {}
    neg: dict[int, set] = {}
    for j, c in enumerate(f.clauses):
        for l in c:
            (pos if l > 0 else neg).setdefault(abs(l), set()).add(face_of_clause[j])
    for v in pos:
        if pos[v] & neg.get(v, set()):
            raise NotPnPlanarInput(f"variable {v} occurs with both polarities on one face")


# --------------------------------------------------------------------------
# substitution and counting


def substitute(f: CnfFormula, var: int, value: bool) -> CnfFormula:
    if not 1 <= var <= f.var_count:
        raise VarOutOfRange(f"variable {var} outside 1..{f.var_count}")
    if var in f.fixed_map:
        if f.fixed_map[var] != bool(value):
            return CnfFormula(f.var_count, f.clauses + ((),), f.fixed)
        return f
    sat = var if value else -var
    out = []
    for c in f.clauses:
        if sat in c:
            continue
        out.append(tuple(l for l in c if l != -sat))
    return CnfFormula(f.var_count, tuple(out), f.fixed + ((var, bool(value)),))


def substitute_many(f: CnfFormula, values: Mapping[int, bool]) -> CnfFormula:
    for v, b in values.items():
        f = substitute(f, v, b)
    return f


def count_sat_brute(f: CnfFormula) -> int:
    """#models over the free variables, by vectorised truth table."""
    free = f.free_vars()
    k = len(free)
    if k > BRUTE_LIMIT:
        raise TooManyVariables(f"{k} free variables exceed the brute-force limit {BRUTE_LIMIT}")
    if f.has_empty_clause():
        return 0
    col = {v: j for j, v in enumerate(free)}
    idx = np.arange(1 << k, dtype=np.int64)
    bits = [(idx >> j) & 1 for j in range(k)]
    ok = np.ones(1 << k, dtype=bool)
    for c in f.clauses:
        sat = np.zeros(1 << k, dtype=bool)
        for l in c:
            b = bits[col[abs(l)]].astype(bool)
            sat |= b if l > 0 else ~b
        ok &= sat
    return int(ok.sum())


def find_model_brute(f: CnfFormula) -> Optional[Assignment]:
    free = f.free_vars()
    if len(free) > BRUTE_LIMIT:
        raise TooManyVariables(f"{len(free)} free variables exceed the brute-force limit")
    base = [False] * f.var_count
    for v, b in f.fixed:
        base[v - 1] = b
    for mask in range(1 << len(free)):
        a = list(base)
        for j, v in enumerate(free):
            a[v - 1] = bool(mask >> j & 1)
        if f.satisfied_by(a):
            return Assignment(tuple(a))
    return None


# --------------------------------------------------------------------------
# random corpora


def random_forest_formula(rng: random.Random, n_vars: int, arity_weights=(1, 2, 6)) -> CnfFormula:
    """Random FOREST formula in which every variable occurs.

    Each clause joins variables from distinct components of the incidence
    forest built so far, so the incidence graph stays acyclic.
    """
    parent = list(range(n_vars + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    unused = set(range(1, n_vars + 1))
    clauses = []
    while unused:
        k = rng.choices((1, 2, 3), weights=arity_weights)[0]
        first = rng.choice(sorted(unused))
        chosen = [first]
        roots = {find(first)}
        pool = list(range(1, n_vars + 1))
        rng.shuffle(pool)
        for v in pool:
            if len(chosen) == k:
                break
            if find(v) not in roots:
                chosen.append(v)
                roots.add(find(v))
        for v in chosen[1:]:
            parent[find(v)] = find(first)
        unused -= set(chosen)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    # a few extra clauses still respecting acyclicity
    for _ in range(rng.randrange(0, max(1, n_vars // 3))):
        k = rng.choices((1, 2, 3), weights=arity_weights)[0]
        pool = list(range(1, n_vars + 1))
        rng.shuffle(pool)
        chosen, roots = [], set()
        for v in pool:
            if len(chosen) == k:
                break
            if find(v) not in roots:
                chosen.append(v)
                roots.add(find(v))
        for v in chosen[1:]:
            parent[find(v)] = find(chosen[0])
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    return CnfFormula.of(n_vars, clauses)


def random_unsat_forest_formula(rng: random.Random, n_vars: int) -> CnfFormula:
    """Forest formula plus unit clauses negating every literal of one clause."""
    f = random_forest_formula(rng, n_vars)
    victim = rng.choice(f.clauses)
    return CnfFormula.of(n_vars, list(f.clauses) + [(-l,) for l in victim])


def random_3cnf(rng: random.Random, n_vars: int, m: int) -> CnfFormula:
    clauses = []
    for _ in range(m):
        k = min(n_vars, rng.choice((1, 2, 3, 3)))
        vs = rng.sample(range(1, n_vars + 1), k)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula.of(n_vars, clauses)


FIGURE7_FORMULA = CnfFormula.of(6, [(1, 2, 3), (1, -4, 6), (-1, -3, 5), (-4, -5, 6)])
