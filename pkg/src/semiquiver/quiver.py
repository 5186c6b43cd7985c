"""Quivers of algebras of right regular bands of groups.

For a pair of J-classes J_i < J_l the monoid is cut down to e_l S e_l with
everything not above J_i removed.  In the result J is the minimal ideal
with maximal subgroup H and the unit group is G.  Elements of J are glued
by the relation "fixed by a common idempotent of I \\ J and equal after
multiplying by e", the quotient X carries an H-G action, and the bimodule
M with character (fixed classes) - (fixed points of H) determines the
arrows: the multiplicity of V in U (x)_{kH} M.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .characters import CharacterTable
from .errors import ConsistencyError, PreconditionError
from .exact import Echelon, as_integer, simplify
from .groups import inverses
from .reptheory import require_rrbg_monoid, subgroup_tables, vertex_list
from .semigroup import (
    FiniteSemigroup,
    green_relations,
    jclass_record,
    restrict,
)


@dataclass(frozen=True)
class ReducedPair:
    """The cut-down monoid for the pair (lower, upper) of J-classes.

    All element lists are indices of ``S2``; ``to_source`` maps them back to
    the input semigroup.  ``H[k]`` is the image of the k-th element of the
    lower class's maximal subgroup under g -> f g f, and ``G[k]`` is the
    k-th element of the upper class's maximal subgroup, so the input
    character tables apply unchanged.
    """

    lower: int
    upper: int
    S2: FiniteSemigroup
    to_source: tuple[int, ...]
    e: int
    J: tuple[int, ...]
    H: tuple[int, ...]
    G: tuple[int, ...]
    I: tuple[int, ...]
    H_group: FiniteSemigroup
    G_group: FiniteSemigroup


def _check_transport(S2: FiniteSemigroup, images: Sequence[int], group: FiniteSemigroup, what: str) -> None:
    if len(set(images)) != len(images):
        raise ConsistencyError(f"{what} transport is not injective")
    pos = {x: k for k, x in enumerate(images)}
    for a in range(group.order):
        for b in range(group.order):
            if pos.get(S2.table[images[a]][images[b]]) != group.table[a][b]:
                raise ConsistencyError(f"{what} transport is not multiplicative")


def reduce_pair(S: FiniteSemigroup, lower: int, upper: int) -> ReducedPair:
    require_rrbg_monoid(S)
    green = green_relations(S)
    if not green.j_less(lower, upper):
        raise PreconditionError(f"J-class {lower} is not strictly below J-class {upper}")
    rec_i, rec_l = jclass_record(S, lower), jclass_record(S, upper)
    t = S.table
    el, ei = rec_l.e, rec_i.e
    f = t[ei][el]
    # local monoid e_l S e_l, then drop everything not J-above f inside it
    local = sorted({t[t[el][s]][el] for s in range(S.order)})
    M = restrict(S, local, identity=el)
    mpos = {x: k for k, x in enumerate(local)}
    mg = green_relations(M)
    fj = mg.j_of[mpos[f]]
    keep = [k for k in range(M.order) if mg.elem_geq_class(k, fj)]
    S2 = restrict(M, keep)
    to_source = tuple(local[k] for k in keep)
    pos = {x: k for k, x in enumerate(to_source)}
    g2 = green_relations(S2)
    e = pos[f]
    if not S2.is_idempotent(e):
        raise ConsistencyError("e_i e_l is not idempotent")
    unit = S2.identity
    top_j, bottom_j = g2.j_of[unit], g2.j_of[e]
    if top_j == bottom_j:
        raise ConsistencyError("reduced monoid has a single J-class")
    for j in range(g2.num_j):
        if not (g2.j_leq[bottom_j][j] and g2.j_leq[j][top_j]):
            raise ConsistencyError("reduced monoid lacks a unique top and bottom J-class")
    J = g2.j_classes[bottom_j]
    units = set(g2.h_classes[g2.h_of[unit]])
    # unit group: the identity transport
    G = tuple(pos.get(x, -1) for x in rec_l.max_subgroup)
    if set(G) != units:
        raise ConsistencyError("unit group of the reduced monoid differs from the upper maximal subgroup")
    _check_transport(S2, G, rec_l.group, "unit group")
    H = tuple(pos.get(t[t[f][g]][f], -1) for g in rec_i.max_subgroup)
    if set(H) != set(g2.h_classes[g2.h_of[e]]):
        raise ConsistencyError("f G_i f is not the maximal subgroup at f")
    _check_transport(S2, H, rec_i.group, "lower group")
    I = tuple(x for x in range(S2.order) if x not in units)
    return ReducedPair(lower, upper, S2, to_source, e, tuple(J), H, G, I, rec_i.group, rec_l.group)


@dataclass(frozen=True)
class ApproxStructure:
    """X = J / (transitive closure of the gluing relation) with its actions.

    ``h_action[k][c]`` is the class of H[k] x for x in class c,
    ``g_action[c][k]`` the class of x G[k]; ``epsilon[c]`` the common value
    x e as an index into H.
    """

    smile_pairs: frozenset[frozenset[int]]
    classes: tuple[tuple[int, ...], ...]
    class_of: Mapping[int, int]
    h_action: tuple[tuple[int, ...], ...]
    g_action: tuple[tuple[int, ...], ...]
    epsilon: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.classes)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def smile_and_approx(rp: ReducedPair) -> ApproxStructure:
    S2, t, e = rp.S2, rp.S2.table, rp.e
    Jset = set(rp.J)
    witnesses = [w for w in rp.I if w not in Jset and S2.is_idempotent(w)]
    uf = _UnionFind(rp.J)
    pairs = set()
    for w in witnesses:
        by_target: dict[int, list[int]] = {}
        for x in rp.J:
            if t[x][w] == x:
                by_target.setdefault(t[x][e], []).append(x)
        for group in by_target.values():
            for a in range(len(group)):
                for b in range(a + 1, len(group)):
                    pairs.add(frozenset((group[a], group[b])))
            for x in group[1:]:
                uf.union(group[0], x)
    buckets: dict[int, list[int]] = {}
    for x in rp.J:
        buckets.setdefault(uf.find(x), []).append(x)
    classes = tuple(sorted((tuple(sorted(v)) for v in buckets.values()), key=lambda c: c[0]))
    class_of = {x: c for c, members in enumerate(classes) for x in members}
    hpos = {x: k for k, x in enumerate(rp.H)}
    if len({class_of[h] for h in rp.H}) != len(rp.H):
        raise ConsistencyError("two elements of H were glued together")

    def induced(f, what):
        out = []
        for members in classes:
            imgs = {class_of[f(x)] for x in members}
            if len(imgs) != 1:
                raise ConsistencyError(f"{what} action is not well defined on classes")
            out.append(imgs.pop())
        return tuple(out)

    h_action = tuple(induced(lambda x, h=h: t[h][x], "H") for h in rp.H)
    g_cols = [induced(lambda x, g=g: t[x][g], "G") for g in rp.G]
    g_action = tuple(tuple(col[c] for col in g_cols) for c in range(len(classes)))
    epsilon = []
    for members in classes:
        vals = {t[x][e] for x in members}
        if len(vals) != 1:
            raise ConsistencyError("x e is not constant on a class")
        epsilon.append(hpos[vals.pop()])
    # the two actions commute
    for k in range(len(rp.H)):
        for c in range(len(classes)):
            for m in range(len(rp.G)):
                if g_action[h_action[k][c]][m] != h_action[k][g_action[c][m]]:
                    raise ConsistencyError("H and G actions on X do not commute")
    return ApproxStructure(frozenset(pairs), classes, class_of, h_action, g_action, tuple(epsilon))


def m_trace(rp: ReducedPair, ap: ApproxStructure, h: int, g: int) -> int:
    """Trace of (h, g) on M, h and g given as group indices."""
    t = rp.S2.table
    fixed = sum(1 for c in range(ap.size) if ap.g_action[ap.h_action[h][c]][g] == c)
    ge = t[rp.G[g]][rp.e]
    hy = t[rp.H[h]]
    points = sum(1 for y in rp.H if t[hy[y]][ge] == y)
    return fixed - points


def m_character(rp: ReducedPair, ap: ApproxStructure) -> list[list[int]]:
    """tr_M(h, g) for all group indices, as a |H| x |G| table."""
    return [[m_trace(rp, ap, h, g) for g in range(len(rp.G))] for h in range(len(rp.H))]


def _check_table(T: CharacterTable, group: FiniteSemigroup, what: str) -> None:
    if T.group.table != group.table:
        raise PreconditionError(f"character table does not belong to the {what}")


def arrows_between(
    rp: ReducedPair,
    ap: ApproxStructure,
    table_h: CharacterTable,
    table_g: CharacterTable,
    convention: str = "natural",
) -> dict[tuple[object, object], int]:
    """Multiplicity of V in U (x)_{kH} M for every (U, V).

    theta_U(g) = (1/|H|) sum_h chi_U(h) tr_M(h^-1, g); ``convention`` "swapped"
    uses tr_M(h, g) instead and exists only for testing.
    """
    _check_table(table_h, rp.H_group, "lower maximal subgroup")
    _check_table(table_g, rp.G_group, "unit group")
    trace = m_character(rp, ap)
    hinv = inverses(rp.H_group)
    ginv = inverses(rp.G_group)
    nh, ng = len(rp.H), len(rp.G)
    out = {}
    for ulab, chi_u in zip(table_h.labels, table_h.characters()):
        theta = []
        for g in range(ng):
            acc = Fraction(0)
            for h in range(nh):
                tr = trace[hinv[h]][g] if convention == "natural" else trace[h][g]
                if tr:
                    acc = acc + chi_u(h) * tr
            theta.append(acc / nh)
        for vlab, chi_v in zip(table_g.labels, table_g.characters()):
            acc = Fraction(0)
            for g in range(ng):
                if theta[g]:
                    acc = acc + theta[g] * chi_v(ginv[g])
            val = simplify(acc / ng)
            try:
                n = as_integer(val, "arrow multiplicity")
            except ValueError as exc:
                raise ConsistencyError(f"({ulab}, {vlab}): {exc}") from exc
            if n < 0:
                raise ConsistencyError(f"negative arrow multiplicity at ({ulab}, {vlab})")
            out[(ulab, vlab)] = n
    return out


def mass_check(rp: ReducedPair, ap: ApproxStructure, table_h, table_g, entries) -> bool:
    """sum dim U dim V mult = tr_M(1, 1) = |X| - |H|."""
    total = sum(table_h.degree(u) * table_g.degree(v) * m for (u, v), m in entries.items())
    dim_m = m_trace(rp, ap, rp.H_group.identity, rp.G_group.identity)
    return total == dim_m == ap.size - len(rp.H)


def ext_oracle_explicit(
    rp: ReducedPair, table_h: CharacterTable, ulab, table_g: CharacterTable, vlab
) -> int:
    """dim of the V-isotypic part of U (x)_{kH} (N / N I) computed in kJ.

    N is spanned by x - x e (x in J \\ H) and N I by their products with I;
    tensoring with the one-dimensional U adds h n - chi_U(h) n.  Nothing
    from the gluing relation is used.
    """
    if table_h.degree(ulab) != 1 or table_g.degree(vlab) != 1:
        raise PreconditionError("the explicit oracle handles one-dimensional characters only")
    _check_table(table_h, rp.H_group, "lower maximal subgroup")
    _check_table(table_g, rp.G_group, "unit group")
    t, e = rp.S2.table, rp.e
    Hset = set(rp.H)
    chi_u = table_h.character(ulab)
    chi_v = table_g.character(vlab)
    ginv = inverses(rp.G_group)

    def vec(x):
        return {x: 1, t[x][e]: -1}

    def right(v, s):
        out: dict = {}
        for x, a in v.items():
            y = t[x][s]
            c = out.get(y, 0) + a
            if c:
                out[y] = c
            else:
                out.pop(y, None)
        return out

    def left(s, v):
        out: dict = {}
        for x, a in v.items():
            y = t[s][x]
            c = out.get(y, 0) + a
            if c:
                out[y] = c
            else:
                out.pop(y, None)
        return out

    N = [vec(x) for x in rp.J if x not in Hset]
    R = Echelon()
    for n in N:
        for w in rp.I:
            R.add(right(n, w))
        for k, h in enumerate(rp.H):
            hn = left(h, n)
            c = chi_u(k)
            for x, a in n.items():
                hn[x] = hn.get(x, 0) - c * a
            R.add(hn)
    base = len(R)
    ng = len(rp.G)
    for n in N:
        proj: dict = {}
        for k, g in enumerate(rp.G):
            c = chi_v(ginv[k])
            for x, a in right(n, g).items():
                proj[x] = proj.get(x, 0) + c * a
        R.add({x: simplify(a / ng) for x, a in proj.items() if a})
    return len(R) - base


# ---------------------------------------------------------------------------
# Whole quivers


@dataclass(frozen=True)
class QuiverVertex:
    id: int
    jclass: int
    irr: object
    display: str


@dataclass(frozen=True)
class QuiverGraph:
    vertices: tuple[QuiverVertex, ...]
    arrows: tuple[tuple[int, int, int], ...]  # (from, to, multiplicity)
    pairs: tuple = field(default=(), compare=False)

    def labelled(self) -> tuple[frozenset[str], Counter]:
        """Vertex display labels and arrow multiplicities keyed by labels."""
        disp = {v.id: v.display for v in self.vertices}
        if len(set(disp.values())) != len(disp):
            raise ConsistencyError("display labels are not unique")
        arrows = Counter()
        for a, b, m in self.arrows:
            arrows[(disp[a], disp[b])] += m
        return frozenset(disp.values()), arrows

    def same_as(self, other: "QuiverGraph") -> bool:
        return self.labelled() == other.labelled()

    def arrow_count(self) -> int:
        return sum(m for _, _, m in self.arrows)

    def relabel(self, display: Mapping[tuple[int, object], str]) -> "QuiverGraph":
        verts = tuple(QuiverVertex(v.id, v.jclass, v.irr, display[(v.jclass, v.irr)]) for v in self.vertices)
        return QuiverGraph(verts, self.arrows, self.pairs)


@dataclass(frozen=True)
class PairReport:
    """Per-pair data kept for checking: sizes and the multiplicity table."""

    lower: int
    upper: int
    x_size: int
    h_size: int
    entries: dict
    mass: int
    oracle: dict | None = None


def default_display(j: int, label) -> str:
    return f"J{j}:{label}"


def full_quiver(
    S: FiniteSemigroup,
    tables: Mapping[int, CharacterTable] | None = None,
    oracle: bool = False,
) -> QuiverGraph:
    """Vertices (J-class, irreducible) in principal order; an arrow U -> V
    for every strictly comparable pair of apexes, lower to upper.

    With ``oracle`` every pair with abelian groups is recomputed by
    :func:`ext_oracle_explicit`; a disagreement raises ConsistencyError.
    """
    require_rrbg_monoid(S)
    if tables is None:
        tables = subgroup_tables(S)
    green = green_relations(S)
    verts = vertex_list(S, tables)
    vid = {v: k for k, v in enumerate(verts)}
    vertices = tuple(QuiverVertex(k, j, lab, default_display(j, lab)) for k, (j, lab) in enumerate(verts))
    arrows = []
    reports = []
    for lower in green.principal_order:
        for upper in green.principal_order:
            if not green.j_less(lower, upper):
                continue
            rp = reduce_pair(S, lower, upper)
            ap = smile_and_approx(rp)
            th, tg = tables[lower], tables[upper]
            entries = arrows_between(rp, ap, th, tg)
            mass = sum(th.degree(u) * tg.degree(v) * m for (u, v), m in entries.items())
            if not mass_check(rp, ap, th, tg, entries):
                raise ConsistencyError(f"mass check fails for pair ({lower}, {upper})")
            checked = None
            if oracle and all(th.degree(u) == 1 for u in th.labels) and all(tg.degree(v) == 1 for v in tg.labels):
                checked = {}
                for (u, v), m in entries.items():
                    o = ext_oracle_explicit(rp, th, u, tg, v)
                    checked[(u, v)] = o
                    if o != m:
                        raise ConsistencyError(
                            f"oracle disagrees for ({lower}, {u}) -> ({upper}, {v}): {m} vs {o}"
                        )
            reports.append(PairReport(lower, upper, ap.size, len(rp.H), entries, mass, checked))
            for (u, v), m in entries.items():
                if m:
                    arrows.append((vid[(lower, u)], vid[(upper, v)], m))
    arrows.sort()
    return QuiverGraph(vertices, tuple(arrows), tuple(reports))


# ---------------------------------------------------------------------------
# Output


def quiver_to_json(q: QuiverGraph) -> dict:
    return {
        "vertices": [{"id": v.id, "jclass": v.jclass, "irr": str(v.irr), "display": v.display} for v in q.vertices],
        "arrows": [{"from": a, "to": b, "mult": m} for a, b, m in q.arrows],
    }


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(q: QuiverGraph) -> str:
    disp = {v.id: v.display for v in q.vertices}
    lines = ["digraph quiver {"]
    for v in sorted(q.vertices, key=lambda v: v.id):
        lines.append(f"  {_dot_quote(v.display)};")
    for a, b, m in q.arrows:
        attr = f' [label="{m}"]' if m > 1 else ""
        lines.append(f"  {_dot_quote(disp[a])} -> {_dot_quote(disp[b])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_json(q: QuiverGraph) -> str:
    return json.dumps(quiver_to_json(q), indent=2) + "\n"


def emit_text(q: QuiverGraph, principal_order: Sequence[int] | None = None) -> str:
    lines = []
    if principal_order is not None:
        lines.append("principal order: " + " < ".join(f"J{j}" for j in principal_order))
    lines.append(f"vertices: {len(q.vertices)}")
    for v in q.vertices:
        lines.append(f"  [{v.id}] {v.display}")
    lines.append(f"arrows: {q.arrow_count()}")
    disp = {v.id: v.display for v in q.vertices}
    for a, b, m in q.arrows:
        lines.append(f"  {disp[a]} -> {disp[b]}" + (f" x{m}" if m > 1 else ""))
    return "\n".join(lines) + "\n"
