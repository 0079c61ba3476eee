"""Ordinary ell-isogeny graphs over small finite fields.

Vertices are ordinary j-invariants (j = 0 and j = 1728 excluded); j1 and j2
are joined with the multiplicity of j2 as a root of Phi_ell(j1, Y). Every
ordinary component is expected to be a volcano: a crater of one of six
shapes with uniform-depth complete trees hanging off it. classify_component
recovers the shape or reports NotVolcano.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field

from .errors import PrimeEqualsEll, UnsupportedEll
from .fields import FieldCtx
from .solvability import VolcanoSpec

SUPPORTED_ELLS = (2, 3, 5, 7)
_PHI_CACHE: dict[int, dict[tuple[int, int], int]] = {}


def _data_dir() -> str:
    override = os.environ.get("VOLCANO_DATA_DIR")
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "data", "phi")


def modular_polynomial(ell: int) -> dict[tuple[int, int], int]:
    """Coefficient table {(i, j): c} of Phi_ell, symmetric and validated."""
    if ell not in SUPPORTED_ELLS:
        raise UnsupportedEll(f"no modular polynomial data for ell = {ell}")
    if ell in _PHI_CACHE:
        return _PHI_CACHE[ell]
    path = os.path.join(_data_dir(), f"{ell}.txt")
    table: dict[tuple[int, int], int] = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            i, j, c = line.split()
            i, j, c = int(i), int(j), int(c)
            table[(i, j)] = c
            table[(j, i)] = c
    _validate_phi(ell, table)
    _PHI_CACHE[ell] = table
    return table


def _validate_phi(ell: int, table: dict[tuple[int, int], int]) -> None:
    assert max(i for i, _ in table) == ell + 1
    assert table[(ell + 1, 0)] == 1
    for (i, j), c in table.items():
        assert table[(j, i)] == c, "asymmetric modular polynomial"
    # Kronecker congruence: Phi_ell = (X^ell - Y)(X - Y^ell) mod ell
    kron = {(ell + 1, 0): 1, (0, ell + 1): 1, (ell, ell): -1, (1, 1): -1}
    for key in set(table) | set(kron):
        assert (table.get(key, 0) - kron.get(key, 0)) % ell == 0


@dataclass
class IsogenyGraph:
    F: FieldCtx
    ell: int
    adj: dict  # vertex -> Counter(neighbor -> multiplicity); loops keyed by self
    flagged: set = field(default_factory=set)  # vertices adjacent to j in {0,1728}

    def degree(self, v) -> int:
        # self-loops count once per root occurrence
        return sum(self.adj[v].values())

    def vertices(self):
        return self.adj.keys()

    def components(self) -> list[set]:
        seen: set = set()
        out = []
        for v in self.adj:
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(comp)
        return out

    def component_flagged(self, comp: set) -> bool:
        return bool(comp & self.flagged)


def is_supersingular(j, F: FieldCtx, squares: set | None = None) -> bool:
    """Naive-count test on y^2 = x^3 + 3j(1728-j)x + 2j(1728-j)^2."""
    if F.p in (2, 3):
        return False
    if squares is None:
        squares = {F.mul(z, z) for z in F.elements()}
    t = F.sub(F.from_int(1728), j)
    c = F.mul(j, t)
    a = F.mul(F.from_int(3), c)
    b = F.mul(F.from_int(2), F.mul(c, t))
    # count points mod p: q + 1 + sum_x chi(x^3 + ax + b)
    count = F.q + 1
    for x in F.elements():
        rhs = F.add(F.mul(x, F.add(F.mul(x, x), a)), b)
        if rhs == F.zero:
            continue
        count += 1 if rhs in squares else -1
    return count % F.p == 1 % F.p


def build_graph(F: FieldCtx, ell: int) -> IsogenyGraph:
    if ell == F.p:
        raise PrimeEqualsEll(f"ell = p = {ell}")
    phi = modular_polynomial(ell)
    squares = {F.mul(z, z) for z in F.elements()} if F.p > 3 else set()
    excluded = {F.zero, F.from_int(1728)}
    vertices = [
        j
        for j in F.elements()
        if j not in excluded and not is_supersingular(j, F, squares)
    ]
    vertex_set = set(vertices)
    # reduce Phi coefficients into the field once
    coef = {key: F.from_int(c) for key, c in phi.items()}
    adj: dict = {v: Counter() for v in vertices}
    flagged: set = set()
    directed: dict = {}
    for j1 in vertices:
        jp = [F.one]
        for _ in range(ell + 1):
            jp.append(F.mul(jp[-1], j1))
        g = []
        for m in range(ell + 2):
            acc = F.zero
            for i in range(ell + 2):
                c = coef.get((i, m))
                if c is not None and c != F.zero:
                    acc = F.add(acc, F.mul(c, jp[i]))
            g.append(acc)
        roots = [y for y in F.elements() if F.eval_poly(g, y) == F.zero]
        for y in roots:
            mult = _root_multiplicity(F, g, y)
            if y in vertex_set:
                adj[j1][y] += mult
                directed[(j1, y)] = mult
            elif y in excluded:
                flagged.add(j1)
    # root-multiplicity symmetry between ordinary vertices
    for (j1, j2), m in directed.items():
        assert directed.get((j2, j1)) == m, "asymmetric edge multiplicities"
    return IsogenyGraph(F, ell, adj, flagged)


def _root_multiplicity(F: FieldCtx, g: list, y) -> int:
    mult = 0
    cur = g
    while len(cur) > 1:
        quotient, rem = _synthetic_divide(F, cur, y)
        if rem != F.zero:
            break
        mult += 1
        cur = quotient
    return mult


def _synthetic_divide(F: FieldCtx, g: list, y):
    """Divide g by (Y - y); returns (quotient coeffs, remainder)."""
    acc = F.zero
    out = []
    for c in reversed(g):
        acc = F.add(F.mul(acc, y), c)
        out.append(acc)
    rem = out[-1]
    quotient = list(reversed(out[:-1]))
    return quotient, rem


NOT_VOLCANO = "NotVolcano"


@dataclass(frozen=True)
class VolcanoClassification:
    spec: VolcanoSpec | None
    levels: tuple  # tuple of frozensets, crater first
    reason: str = ""

    @property
    def is_volcano(self) -> bool:
        return self.spec is not None


def classify_component(G: IsogenyGraph, comp: set) -> VolcanoClassification:
    ell = G.ell
    alive = set(comp)

    def deg_in(v, vs):
        return sum(m for w, m in G.adj[v].items() if w in vs or w == v)

    rounds = 0
    while True:
        degs = {v: deg_in(v, alive) for v in alive}
        low = {v for v in alive if degs[v] <= 1}
        if not low or low == alive:
            break
        alive -= low
        rounds += 1
    crater = alive
    d = rounds

    shape = _crater_shape(G, crater)
    if shape is None:
        return VolcanoClassification(None, (), "unrecognized crater shape")

    # level partition by distance from the crater
    level = {v: 0 for v in crater}
    frontier = set(crater)
    levels = [frozenset(crater)]
    while frontier:
        nxt = set()
        for v in frontier:
            for w in G.adj[v]:
                if w in comp and w not in level:
                    level[w] = level[v] + 1
                    nxt.add(w)
        if nxt:
            levels.append(frozenset(nxt))
        frontier = nxt
    if len(level) != len(comp) or len(levels) - 1 != d:
        return VolcanoClassification(None, (), "level partition mismatch")

    for v in comp:
        lv = level[v]
        total = G.degree(v)
        if lv < d and total != ell + 1:
            return VolcanoClassification(None, (), "interior degree violation")
        if lv == d and d >= 1 and total != 1:
            return VolcanoClassification(None, (), "floor degree violation")
        if lv >= 1:
            if G.adj[v].get(v):
                return VolcanoClassification(None, (), "self-loop below crater")
            up = sum(m for w, m in G.adj[v].items() if level[w] == lv - 1)
            side = sum(m for w, m in G.adj[v].items() if w != v and level[w] == lv)
            if up != 1 or side != 0:
                return VolcanoClassification(None, (), "tree structure violation")

    crater_name, n = shape
    return VolcanoClassification(VolcanoSpec(crater_name, n, ell, d), tuple(levels))


def _crater_shape(G: IsogenyGraph, crater: set):
    """(crater type, n) from the induced subgraph, or None."""
    if not crater:
        return None
    if len(crater) == 1:
        (v,) = crater
        loops = G.adj[v].get(v, 0)
        others = sum(m for w, m in G.adj[v].items() if w != v and w in crater)
        assert others == 0
        return {0: ("I1", 1), 1: ("R1", 1), 2: ("S1", 1)}.get(loops)
    if len(crater) == 2:
        u, v = sorted(crater)
        if G.adj[u].get(u) or G.adj[v].get(v):
            return None
        m = G.adj[u].get(v, 0)
        return {1: ("R2", 2), 2: ("S2", 2)}.get(m)
    # n >= 3: simple cycle, no loops, single edges, horizontal degree 2
    for v in crater:
        if G.adj[v].get(v):
            return None
        nbrs = {w: m for w, m in G.adj[v].items() if w in crater and w != v}
        if len(nbrs) != 2 or any(m != 1 for m in nbrs.values()):
            return None
    return ("Sn", len(crater))


def contains_volcano(G: IsogenyGraph, V: VolcanoSpec) -> bool:
    for comp in G.components():
        cls = classify_component(G, comp)
        if cls.spec == V:
            return True
    return False


def to_dot(G: IsogenyGraph) -> str:
    """DOT rendering with components annotated by their classification."""
    lines = ["graph isogeny {"]
    for idx, comp in enumerate(G.components()):
        cls = classify_component(G, comp)
        label = (
            f"{cls.spec.crater} n={cls.spec.n} depth={cls.spec.d}"
            if cls.is_volcano
            else NOT_VOLCANO
        )
        if G.component_flagged(comp):
            label += " (flagged)"
        lines.append(f'  subgraph cluster_{idx} {{ label="{label}";')
        done = set()
        for v in sorted(comp, key=repr):
            lines.append(f'    "{v}";')
            for w, m in G.adj[v].items():
                key = (min(v, w, key=repr), max(v, w, key=repr))
                if key in done and v != w:
                    continue
                done.add(key)
                count = m if v != w else m
                if v == w:
                    for _ in range(count):
                        lines.append(f'    "{v}" -- "{v}";')
                elif w in comp:
                    for _ in range(count):
                        lines.append(f'    "{v}" -- "{w}";')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines)
