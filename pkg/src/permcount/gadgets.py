"""Gadget signature calculus and the builtin gadget library.

A gadget is a square adjacency matrix plus ordered (input, output) node
pairs.  An external path that leaves the gadget at output ``o`` and comes
back at input ``i`` removes row ``o`` and column ``i``; the *signature* of a
two-pair gadget collects the six minor permanents

    r1 = perm(A)                r2 = perm(A^{i1,i2}_{o1,o2})
    r3 = perm(A^{i1}_{o1})      r4 = perm(A^{i2}_{o2})
    r5 = perm(A^{i1}_{o2})      r6 = perm(A^{i2}_{o1})

in that fixed order (the order of the XOR rules (A)-(F)).

Indices are 0-based; ``Gadget.labels`` keeps the 1-based pairs used in the
figures the matrices were transcribed from.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    BadModulus,
    DimensionTooLarge,
    IndexOutOfRange,
    ModulusMismatch,
    NoModulus,
    UnknownGadget,
    WrongPairCount,
)
from .linalg import (
    RYSER_LIMIT,
    IntMatrix,
    MinorSpec,
    as_matrix,
    determinant,
    minor,
    permanent,
)

DEFAULT_MODULUS = 3


# --------------------------------------------------------------------------
# core types


@dataclass(frozen=True)
class Gadget:
    matrix: IntMatrix
    io_pairs: tuple[tuple[int, int], ...]
    name: str = "gadget"
    labels: Optional[tuple[tuple[int, int], ...]] = None
    meta: tuple = ()

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        pairs = tuple((int(i), int(o)) for i, o in self.io_pairs)
        object.__setattr__(self, "io_pairs", pairs)
        if not pairs:
            raise WrongPairCount("a gadget needs at least one io pair")
        n = m.dim
        for i, o in pairs:
            if not (0 <= i < n and 0 <= o < n):
                raise IndexOutOfRange(f"io pair ({i},{o}) outside [0,{n})")
        ins = [i for i, _ in pairs]
        outs = [o for _, o in pairs]
        if len(set(ins)) != len(ins) or len(set(outs)) != len(outs):
            raise IndexOutOfRange("inputs and outputs must be pairwise distinct")
        if self.labels is None:
            object.__setattr__(self, "labels", tuple((i + 1, o + 1) for i, o in pairs))

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def zero_one(self) -> bool:
        return self.matrix.is_zero_one()

    @property
    def inputs(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.io_pairs)

    @property
    def outputs(self) -> tuple[int, ...]:
        return tuple(o for _, o in self.io_pairs)

    def with_pairs(self, pairs, name: Optional[str] = None) -> "Gadget":
        return Gadget(self.matrix, tuple(pairs), name or self.name)


@dataclass(frozen=True)
class Signature:
    values: tuple[int, int, int, int, int, int]
    modulus: Optional[int] = None

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if len(vals) != 6:
            raise ValueError("a signature has exactly six slots")
        if self.modulus is not None:
            if self.modulus < 2:
                raise BadModulus(f"modulus must be >= 2, got {self.modulus}")
            vals = tuple(v % self.modulus for v in vals)
        object.__setattr__(self, "values", vals)

    def reduce(self, p: int) -> "Signature":
        if self.modulus is not None and self.modulus != p:
            raise ModulusMismatch(f"cannot reduce a mod-{self.modulus} signature mod {p}")
        return Signature(self.values, p)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def __str__(self) -> str:
        body = "(" + ",".join(str(v) for v in self.values) + ")"
        return body if self.modulus is None else f"{body}_{self.modulus}"


class Constraint:
    __slots__ = ("kind", "value")

    def __init__(self, kind: str, value: Optional[int] = None):
        if kind not in ("zero", "nonzero", "any", "exact"):
            raise ValueError(f"unknown constraint kind {kind!r}")
        self.kind = kind
        self.value = value

    def accepts(self, v: int) -> bool:
        if self.kind == "zero":
            return v == 0
        if self.kind == "nonzero":
            return v != 0
        if self.kind == "any":
            return True
        return v == self.value

    def __eq__(self, other) -> bool:
        return isinstance(other, Constraint) and (self.kind, self.value) == (other.kind, other.value)

    def __hash__(self) -> int:
        return hash((self.kind, self.value))

    def __repr__(self) -> str:
        return f"Exact({self.value})" if self.kind == "exact" else self.kind.capitalize()


Zero = Constraint("zero")
NonZero = Constraint("nonzero")
Any = Constraint("any")


def Exact(v: int) -> Constraint:
    return Constraint("exact", int(v))


def _as_constraint(c) -> Constraint:
    if isinstance(c, Constraint):
        return c
    if isinstance(c, int):
        return Zero if c == 0 else Exact(c)
    raise TypeError(f"cannot read {c!r} as a constraint")


@dataclass(frozen=True)
class SignaturePattern:
    slots: tuple[Constraint, ...]

    def __post_init__(self):
        slots = tuple(_as_constraint(c) for c in self.slots)
        if len(slots) != 6:
            raise ValueError("a signature pattern has exactly six slots")
        object.__setattr__(self, "slots", slots)

    def matches(self, s: Signature) -> bool:
        return all(c.accepts(v) for c, v in zip(self.slots, s.values))

    def check_satisfiable(self, p: Optional[int]) -> None:
        """Raise ValueError if no residue mod p could ever match."""
        for c in self.slots:
            if c.kind == "exact" and p is not None and not 0 <= c.value < p:
                raise ValueError(f"{c!r} can never match a residue mod {p}")
            if c.kind == "nonzero" and p == 1:
                raise ValueError("NonZero cannot match mod 1")

    def __str__(self) -> str:
        return "(" + ",".join(repr(c) for c in self.slots) + ")"


XOR_PATTERN = SignaturePattern((Zero, Zero, NonZero, NonZero, Zero, Zero))
EQUALITY_PATTERN = SignaturePattern((NonZero, NonZero, Zero, Zero, Zero, Zero))
PLANARITY_PATTERN = SignaturePattern((NonZero, NonZero, Zero, Zero, NonZero, NonZero))

NAMED_PATTERNS = {"xor": XOR_PATTERN, "equality": EQUALITY_PATTERN, "planarity": PLANARITY_PATTERN}


# --------------------------------------------------------------------------
# signature computations


def matched_minor(g: Gadget, chosen: Iterable[int], crossed: Optional[Sequence[int]] = None) -> IntMatrix:
    """Minor removing the inputs of pairs ``chosen`` and the outputs of ``crossed``.

    ``crossed`` defaults to ``chosen``, i.e. every path leaves at its own output.
    """
    chosen = list(chosen)
    outs = chosen if crossed is None else list(crossed)
    return minor(g.matrix, MinorSpec.of([g.io_pairs[k][0] for k in chosen], [g.io_pairs[k][1] for k in outs]))


def _perm_of_minor(m: IntMatrix, cols: Sequence[int], rows: Sequence[int]) -> int:
    if len(cols) == m.dim:
        return 1  # empty matrix
    return permanent(minor(m, MinorSpec.of(cols, rows)))


def signature(g: Gadget, p: Optional[int] = None) -> Signature:
    if len(g.io_pairs) != 2:
        raise WrongPairCount(f"signature needs exactly 2 io pairs, {g.name} has {len(g.io_pairs)}")
    if g.dim > RYSER_LIMIT:
        raise DimensionTooLarge(f"signature limited to dim {RYSER_LIMIT}")
    (i1, o1), (i2, o2) = g.io_pairs
    m = g.matrix
    vals = (
        permanent(m),
        _perm_of_minor(m, (i1, i2), (o1, o2)),
        _perm_of_minor(m, (i1,), (o1,)),
        _perm_of_minor(m, (i2,), (o2,)),
        _perm_of_minor(m, (i1,), (o2,)),
        _perm_of_minor(m, (i2,), (o1,)),
    )
    return Signature(vals, p)


def clause_weights(g: Gadget, p: Optional[int] = None) -> dict[tuple[int, ...], int]:
    """perm of the matched minor for every subset of io pairs (no crossing)."""
    out = {}
    for k in range(len(g.io_pairs) + 1):
        for sub in itertools.combinations(range(len(g.io_pairs)), k):
            cols = [g.io_pairs[j][0] for j in sub]
            rows = [g.io_pairs[j][1] for j in sub]
            v = _perm_of_minor(g.matrix, cols, rows)
            out[sub] = v % p if p else v
    return out


def verify_pattern(g: Gadget, pattern: SignaturePattern, p: Optional[int] = None) -> bool:
    return pattern.matches(signature(g, p))


# (label, inputs used, outputs used, kind) for the 3-pair clause rule set;
# the rule list labels (G) twice, hence 20 entries under 19 letters.
CLAUSE_RULES = (
    ("A", (), (), "zero"),
    ("B", (1,), (2,), "zero"),
    ("C", (1,), (3,), "zero"),
    ("D", (2,), (1,), "zero"),
    ("E", (2,), (3,), "zero"),
    ("F", (3,), (1,), "zero"),
    ("G", (3,), (2,), "zero"),
    ("H", (1, 2), (1, 3), "zero"),
    ("G'", (1, 2), (2, 3), "zero"),
    ("I", (1, 3), (1, 2), "zero"),
    ("J", (1, 3), (2, 3), "zero"),
    ("K", (2, 3), (1, 3), "zero"),
    ("L", (2, 3), (1, 2), "zero"),
    ("M", (1, 2, 3), (1, 2, 3), "c"),
    ("N", (1, 2), (1, 2), "c"),
    ("O", (1, 3), (1, 3), "c"),
    ("P", (2, 3), (2, 3), "c"),
    ("Q", (1,), (1,), "c"),
    ("R", (2,), (2,), "c"),
    ("S", (3,), (3,), "c"),
)


def clause_rule_values(g: Gadget, p: Optional[int] = None) -> dict[str, int]:
    if len(g.io_pairs) != 3:
        raise WrongPairCount(f"clause rules need 3 io pairs, {g.name} has {len(g.io_pairs)}")
    vals = {}
    for label, ins, outs, _ in CLAUSE_RULES:
        cols = [g.io_pairs[k - 1][0] for k in ins]
        rows = [g.io_pairs[k - 1][1] for k in outs]
        v = _perm_of_minor(g.matrix, cols, rows)
        vals[label] = v % p if p else v
    return vals


def verify_clause_rules(g: Gadget, p: Optional[int] = None) -> bool:
    """Zero rules vanish and all c rules share one nonzero value (mod p if given)."""
    vals = clause_rule_values(g, p)
    zeros = [vals[r[0]] for r in CLAUSE_RULES if r[3] == "zero"]
    cs = {vals[r[0]] for r in CLAUSE_RULES if r[3] == "c"}
    return all(z == 0 for z in zeros) and len(cs) == 1 and 0 not in cs


def dji_check(m, i1: int, i2: int, o1: int, o2: int) -> bool:
    """Desnanot-Jacobi identity for columns i1,i2 and rows o1,o2."""
    m = as_matrix(m)
    n = m.dim
    for x in (i1, i2, o1, o2):
        if not 0 <= x < n:
            raise IndexOutOfRange(f"index {x} outside [0,{n})")
    if i1 == i2 or o1 == o2 or n < 2:
        raise IndexOutOfRange("need i1 != i2, o1 != o2 and dim >= 2")

    def d(cols, rows):
        if len(cols) == n:
            return 1
        return determinant(minor(m, MinorSpec.of(cols, rows)))

    lhs = d((), ()) * d((i1, i2), (o1, o2))
    # A^{i1,i2}_{o1,o2} is sign-sensitive to the pairing when indices are sorted;
    # the identity below is stated for i1<i2, o1<o2, so normalise the pairing.
    s = (1 if i1 < i2 else -1) * (1 if o1 < o2 else -1)
    rhs = d((i1,), (o1,)) * d((i2,), (o2,)) - d((i2,), (o1,)) * d((i1,), (o2,))
    return lhs == s * rhs


def dji_congruence(s: Signature) -> bool:
    """r1*r2 == r3*r4 - r5*r6 (mod p) for a reduced signature.

    Mod 2 permanent and determinant agree, so a (0/1) gadget whose signature
    fails this for p = 2 cannot exist.
    """
    if s.modulus is None:
        raise NoModulus("the congruence needs a reduced signature")
    r1, r2, r3, r4, r5, r6 = s.values
    return (r1 * r2 - (r3 * r4 - r5 * r6)) % s.modulus == 0


def mu(v: int) -> int:
    return 0 if v == 0 else 1


def mu_pattern_check(s: Signature) -> bool:
    """mu(r1)mu(r2) == mu(r3)mu(r4) - mu(r5)mu(r6) (mod 2), mu = indicator of nonzero."""
    if s.modulus is None:
        raise NoModulus("mu-pattern check needs a reduced signature")
    if s.modulus <= 2:
        raise BadModulus("mu-pattern check needs a modulus > 2")
    r = [mu(v) for v in s.values]
    return (r[0] * r[1] - (r[2] * r[3] - r[4] * r[5])) % 2 == 0


def concatenate(g1: Gadget, g2: Gadget, name: Optional[str] = None) -> Gadget:
    """Block-diagonal union plus the unit edges o1 -> iota1 and o2 -> iota2."""
    if len(g1.io_pairs) != 2 or len(g2.io_pairs) != 2:
        raise WrongPairCount("concatenation needs two 2-pair gadgets")
    n1, n2 = g1.dim, g2.dim
    rows = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for u in range(n1):
        for v in range(n1):
            rows[u][v] = g1.matrix.rows[u][v]
    for u in range(n2):
        for v in range(n2):
            rows[n1 + u][n1 + v] = g2.matrix.rows[u][v]
    (i1, o1), (i2, o2) = g1.io_pairs
    (j1, w1), (j2, w2) = g2.io_pairs
    rows[o1][n1 + j1] = 1
    rows[o2][n1 + j2] = 1
    return Gadget(IntMatrix(rows), ((i1, n1 + w1), (i2, n1 + w2)), name or f"{g1.name}+{g2.name}")


def predict_concat_signature(s1: Signature, s2: Signature) -> Signature:
    if s1.modulus != s2.modulus:
        raise ModulusMismatch(f"moduli {s1.modulus} and {s2.modulus} differ")
    r1, r2, r3, r4, r5, r6 = s1.values
    q1, q2, q3, q4, q5, q6 = s2.values
    return Signature(
        (r1 * q1, r2 * q2, r3 * q3 + r5 * q6, r4 * q4 + r6 * q5, r3 * q5 + r5 * q4, r4 * q6 + r6 * q3),
        s1.modulus,
    )


def bdc_gadget(g: Gadget) -> Gadget:
    """The double-cover block matrix [[0,A],[A^T,0]] with io pairs (i + dim, o)."""
    n = g.dim
    a = g.matrix.rows
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for u in range(n):
        for v in range(n):
            rows[u][n + v] = a[u][v]
            rows[n + v][u] = a[u][v]
    return Gadget(IntMatrix(rows), tuple((i + n, o) for i, o in g.io_pairs), f"bdc({g.name})")


def predict_bdc_signature(s: Signature) -> Signature:
    r1 = s.values[0]
    return Signature((r1 * r1,) + tuple(r1 * v for v in s.values[1:]), s.modulus)


# --------------------------------------------------------------------------
# builtin library (matrices transcribed row-major from the figures)

_VALIANT_CLAUSE = [[0, 1, 0, 1], [1, 0, 0, 1], [0, 0, 0, 1], [1, 1, 1, 0]]
_VALIANT_XOR = [[0, 1, -1, -1], [1, -1, 1, 1], [0, 1, 1, 2], [0, 1, 3, 0]]
_BENDOR_CLAUSE = [
    [1, 0, 0, 0, 2, 0, 0],
    [0, 1, 0, 3, 0, 0, 0],
    [0, 0, 0, -1, -1, 1, 1],
    [0, 0, -1, 2, -1, 1, 1],
    [0, 0, -1, -1, 1, 1, 1],
    [0, 0, 1, 1, 1, 2, -1],
    [0, 0, 1, 1, 1, 0, 1],
]
_G3 = [
    [0, 0, 1, 0, 0, 1],
    [1, 0, 0, 1, 0, 1],
    [0, 0, 1, 1, 0, 1],
    [0, 0, 0, 1, 0, 1],
    [0, 1, 1, 0, 1, 0],
    [0, 1, 0, 1, 1, 1],
]
_RL = [
    [1, 0, 1, 1, 1, 0],
    [1, 1, 1, 0, 1, 0],
    [0, 0, 1, 0, 0, 1],
    [0, 0, 0, 0, 1, 0],
    [1, 1, 0, 1, 1, 0],
    [0, 0, 0, 0, 0, 1],
]
_LR = [
    [0, 1, 1, 0, 1, 1],
    [0, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 1, 1],
    [0, 0, 1, 1, 0, 1],
    [0, 0, 0, 0, 1, 1],
    [1, 0, 1, 0, 1, 0],
]
_GSTAR = [
    [0, 1, 0, 1, 0, 0, 1],
    [1, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 1, 1, 0, 0, 0, 1],
    [1, 0, 1, 0, 1, 1, 1],
    [0, 0, 1, 0, 1, 0, 0],
    [0, 1, 1, 1, 0, 0, 1],
]
_GSTARSTAR = [
    [0, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 1, 0, 0, 0],
    [1, 0, 1, 0, 1, 0, 0],
    [0, 0, 1, 0, 1, 1, 1],
    [0, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 1, 1, 0],
    [1, 0, 1, 0, 0, 0, 0],
]

# Clause gadgets for the builders.  "Constant" gadgets weigh every
# non-full set of false literals the same (mod 3); "parity" gadgets weigh a
# set S of false literals (-1)^|S|.  Which family a builder needs depends on
# the XOR gadget's two path weights (see pipeline).
_UNIT_CLAUSE = [[1, 0], [0, 1]]
_CONST_CLAUSE2 = [[0, 1, 1], [1, 1, 1], [1, 1, 1]]
_PARITY_CLAUSE2 = [[1, 0, 1, 0], [0, 1, 0, 1], [0, 1, 1, 1], [1, 1, 0, 1]]
_PARITY_CLAUSE3 = [
    [1, 0, 1, 1, 0],
    [0, 1, 1, 1, 0],
    [1, 1, 0, 0, 0],
    [1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0],
]


def _from_labels(rows, labels, name) -> Gadget:
    return Gadget(IntMatrix(rows), tuple((i - 1, o - 1) for i, o in labels), name, tuple(labels))


def variable_gadget(t: int, f: int, name: Optional[str] = None) -> Gadget:
    """VARIABLE gadget with ``t`` TRUE-side and ``f`` FALSE-side occurrence slots.

    Nodes: 0 = L, 1 = R, then the TRUE chain, then the FALSE chain.  R -> L closes
    either the TRUE cycle L -> chain -> R or the FALSE one.  Slot j of a chain
    c_0 c_1 ... is the external path c_{2j} -> ... -> c_{2j+1}, giving the io pair
    (input c_{2j+1}, output c_{2j}).  Chain nodes carry self-loops so they can sit
    out when the other side is chosen.  With no slots at all a dummy chain node
    keeps exactly two covers (the free variable counts twice).
    """
    if t < 0 or f < 0:
        raise ValueError("slot counts must be >= 0")
    dummy = t == 0 and f == 0
    n = 2 + 2 * t + 2 * f + (1 if dummy else 0)
    edges = {(1, 0)}
    pairs: list[tuple[int, int]] = []
    nxt = 2
    for k in (t, f):
        if k == 0:
            if dummy and nxt == 2:
                edges |= {(0, 2), (2, 1), (2, 2)}
                nxt = 3
            else:
                edges.add((0, 1))
            continue
        chain = list(range(nxt, nxt + 2 * k))
        nxt += 2 * k
        edges.add((0, chain[0]))
        edges.add((chain[-1], 1))
        for j in range(k):
            pairs.append((chain[2 * j + 1], chain[2 * j]))
            if j + 1 < k:
                edges.add((chain[2 * j + 1], chain[2 * j + 2]))
        edges |= {(c, c) for c in chain}
    rows = [[0] * n for _ in range(n)]
    for u, v in edges:
        rows[u][v] = 1
    if not pairs:
        # keep the one-pair invariant: a placeholder pair that the builder never wires
        pairs = [(0, 1)]
        meta = (("true_slots", ()), ("false_slots", ()), ("placeholder", True))
    else:
        meta = (("true_slots", tuple(range(t))), ("false_slots", tuple(range(t, t + f))))
    return Gadget(IntMatrix(rows), tuple(pairs), name or f"valiant_variable({t},{f})", None, meta)


def _meta(g: Gadget, key, default=None):
    return dict(g.meta).get(key, default)


_BUILTINS = {
    "valiant_clause": lambda: _from_labels(_VALIANT_CLAUSE, [(1, 3), (2, 1), (3, 2)], "valiant_clause"),
    "valiant_xor": lambda: _from_labels(_VALIANT_XOR, [(1, 4), (4, 1)], "valiant_xor"),
    # pairs follow the figure's wiring (1->5, 2->4, 3->3); see bendor note in docs
    "bendor_clause": lambda: _from_labels(_BENDOR_CLAUSE, [(1, 5), (2, 4), (3, 3)], "bendor_clause"),
    "g3_xor": lambda: _from_labels(_G3, [(1, 3), (2, 4)], "g3_xor"),
    "rl_xor": lambda: _from_labels(_RL, [(1, 3), (2, 4)], "rl_xor"),
    "lr_xor": lambda: _from_labels(_LR, [(1, 3), (2, 4)], "lr_xor"),
    "gstar_xor": lambda: _from_labels(_GSTAR, [(1, 3), (2, 4)], "gstar_xor"),
    "gstarstar_clause": lambda: _from_labels(_GSTARSTAR, [(1, 5), (2, 6), (3, 7)], "gstarstar_clause"),
    "unit_clause": lambda: Gadget(IntMatrix(_UNIT_CLAUSE), ((1, 0),), "unit_clause"),
    "const_clause2": lambda: Gadget(IntMatrix(_CONST_CLAUSE2), ((1, 2), (2, 1)), "const_clause2"),
    "parity_clause2": lambda: Gadget(IntMatrix(_PARITY_CLAUSE2), ((0, 2), (2, 3)), "parity_clause2"),
    "parity_clause3": lambda: Gadget(IntMatrix(_PARITY_CLAUSE3), ((2, 1), (0, 4), (4, 2)), "parity_clause3"),
}

GADGET_NAMES = tuple(_BUILTINS) + ("valiant_variable",)
XOR_NAMES = ("valiant_xor", "g3_xor", "rl_xor", "lr_xor", "gstar_xor")

_VAR_RE = re.compile(r"^valiant_variable\((\d+)(?:,\s*(\d+))?\)$")


def builtin_gadget(name: str, k: Optional[int] = None) -> Gadget:
    """Look up a library gadget; ``valiant_variable`` takes ``k`` slots per side."""
    m = _VAR_RE.match(name)
    if m:
        t = int(m.group(1))
        f = int(m.group(2)) if m.group(2) is not None else t
        return variable_gadget(t, f, name=f"valiant_variable({name[17:-1]})")
    if name == "valiant_variable":
        if k is None:
            raise UnknownGadget("valiant_variable needs a slot count k")
        return variable_gadget(k, k, name=f"valiant_variable({k})")
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise UnknownGadget(f"unknown gadget {name!r}") from None


# Signature tuples printed in the paper, used as regression fixtures.
PAPER_SIGNATURES = {
    "g3_xor": (6, 3, 4, 4, 6, 3),
    "rl_xor": (3, 3, 2, 4, 3, 3),
    "lr_xor": (12, 3, 5, 7, 3, 3),
    "gstar_xor": (18, 3, 7, 8, 6, 3),
}
PAPER_SIGNATURES_MOD3 = {
    "g3_xor": (0, 0, 1, 1, 0, 0),
    "rl_xor": (0, 0, 2, 1, 0, 0),
    "lr_xor": (0, 0, 2, 1, 0, 0),
    "gstar_xor": (0, 0, 1, 2, 0, 0),
}
VALIANT_XOR_PATTERN = SignaturePattern((Zero, Zero, Exact(4), Exact(4), Zero, Zero))


# --------------------------------------------------------------------------
# certificate text format


def format_certificate(g: Gadget, p: Optional[int] = None, extra: Optional[dict] = None) -> str:
    """Text record: dimension, 0/1 rows, 1-based io pairs, modulus, signature slots."""
    lines = [f"gadget {g.name}", f"dim {g.dim}"]
    lines += ["row " + " ".join(str(x) for x in r) for r in g.matrix.rows]
    lines.append("pairs " + " ".join(f"{i + 1},{o + 1}" for i, o in g.io_pairs))
    lines.append(f"modulus {p if p is not None else 0}")
    if len(g.io_pairs) == 2:
        lines.append("signature " + " ".join(str(v) for v in signature(g).values))
        if p is not None:
            lines.append("signature_mod " + " ".join(str(v) for v in signature(g, p).values))
    for k, v in (extra or {}).items():
        lines.append(f"{k} {v}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> tuple[Gadget, dict]:
    rows: list[list[int]] = []
    fields: dict[str, str] = {}
    name = "gadget"
    pairs: list[tuple[int, int]] = []
    for ln in text.strip().splitlines():
        key, _, rest = ln.partition(" ")
        if key == "gadget":
            name = rest
        elif key == "row":
            rows.append([int(x) for x in rest.split()])
        elif key == "pairs":
            pairs = [tuple(int(x) - 1 for x in tok.split(",")) for tok in rest.split()]
        elif key == "end":
            break
        else:
            fields[key] = rest
    g = Gadget(IntMatrix(rows), tuple(pairs), name)
    if int(fields.get("dim", g.dim)) != g.dim:
        raise ValueError("certificate dim does not match its rows")
    return g, fields


def verify_certificate_text(text: str) -> bool:
    """Recompute the recorded signature slots from the matrix alone."""
    g, fields = parse_certificate(text)
    p = int(fields.get("modulus", "0")) or None
    ok = True
    if "signature" in fields:
        ok &= tuple(int(x) for x in fields["signature"].split()) == signature(g).values
    if "signature_mod" in fields and p:
        ok &= tuple(int(x) for x in fields["signature_mod"].split()) == signature(g, p).values
    return bool(ok)
