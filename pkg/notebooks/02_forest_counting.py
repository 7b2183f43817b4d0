"""Counting FOREST-3SAT models mod 3 with one FKT call, and deciding SAT.

Run with ``python notebooks/02_forest_counting.py``.
"""

import random

from permcount.formulas import count_sat_brute, random_forest_formula
from permcount.pipeline import (
    algorithm_b,
    build_forest_graph,
    count_mod3_forest,
    extract_solution,
    make_decider,
    report,
)

rng = random.Random(7)
f = random_forest_formula(rng, 9)
print(f"{f.var_count} variables, {len(f.clauses)} clauses")

# %% Build the Valiant graph; its double cover is planar by construction.
vg = build_forest_graph(f)
r = report(vg)
print(f"nodes={r.nodes} edges={r.edges} bdc_nodes={r.bdc_nodes} bdc_planar={r.bdc_planar}")

# %% perm(A) mod 3 equals #models mod 3, read off one Pfaffian.
print("fkt residue:", count_mod3_forest(f), " brute force:", count_sat_brute(f) % 3)

# %% A residue of 0 is ambiguous.  Algorithm B reweights with random unit
# clauses so that some trial lands on a nonzero residue when f is satisfiable.
v = algorithm_b(f, 20, seed=1)
print("satisfiable:", v.satisfiable, "after", v.trials_used, "trials")

# %% Self-reduction: fix variables one by one, n+1 decider calls in total.
a, calls = extract_solution(f, make_decider("b", k=20, seed=1))
print("model:", a.values if a else None, "calls:", calls, "ok:", a is not None and f.satisfied_by(a.values))
