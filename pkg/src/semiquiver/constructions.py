"""Example families: Hsiao's monoid of ordered G-partitions, permutation
groups with constant maps adjoined, and Rees matrix semigroups."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Sequence

from .characters import (
    CharacterTable,
    abelian_character_table,
    builtin_table,
    inner_product,
    permutation_character,
    power_table,
    tensor,
    transport_table,
)
from .errors import InputError, PreconditionError, SizeError
from .groups import group_identity, inverses
from .quiver import QuiverGraph, QuiverVertex, default_display
from .semigroup import (
    DEFAULT_CAP,
    FiniteSemigroup,
    enumerate_from_generators,
    green_relations,
    jclass_record,
    opposite,
)

# ---------------------------------------------------------------------------
# Hsiao's monoid


def set_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Set partitions of {1..n}, blocks sorted by minimum."""
    out: list[list[list[int]]] = [[]]
    for x in range(1, n + 1):
        nxt = []
        for p in out:
            for k in range(len(p)):
                nxt.append([b + [x] if i == k else b for i, b in enumerate(p)])
            nxt.append(p + [[x]])
        out = nxt
    return sorted((tuple(tuple(b) for b in p) for p in out), key=lambda p: (len(p), p))


def _hsiao_key(tau):
    blocks, gs = tau
    return (len(blocks), blocks, gs)


def ordered_g_partitions(n: int, group_order: int, cap: int = DEFAULT_CAP) -> list:
    """All ((P_1, ..., P_r), (g_1, ..., g_r)) in the canonical order: by r,
    then the block sequence, then the group indices."""
    count = 0
    out = []
    for p in set_partitions(n):
        for blocks in permutations(p):
            for gs in product(range(group_order), repeat=len(blocks)):
                count += 1
                if count > cap:
                    raise SizeError(f"Hsiao monoid exceeds the element cap of {cap}")
                out.append((blocks, gs))
    out.sort(key=_hsiao_key)
    return out


def hsiao_product(G: FiniteSemigroup, tau, sigma):
    (P, g), (Q, h) = tau, sigma
    blocks, gs = [], []
    for Pi, gi in zip(P, g):
        for Qj, hj in zip(Q, h):
            meet = tuple(sorted(set(Pi) & set(Qj)))
            if meet:
                blocks.append(meet)
                gs.append(G.table[gi][hj])
    return tuple(blocks), tuple(gs)


def hsiao_label(G: FiniteSemigroup, tau) -> str:
    blocks, gs = tau
    return "(" + ",".join("{" + "".join(map(str, b)) + "}" + ("" if G.order == 1 else f"^{G.label(g)}") for b, g in zip(blocks, gs)) + ")"


def hsiao_semigroup(n: int, G: FiniteSemigroup, cap: int = DEFAULT_CAP) -> FiniteSemigroup:
    """The monoid of ordered G-partitions of {1..n} (a left regular band of
    groups); ``elements`` holds the (blocks, group indices) pairs."""
    if n < 1:
        raise InputError("n must be positive")
    inverses(G)
    elems = ordered_g_partitions(n, G.order, cap)
    index = {x: k for k, x in enumerate(elems)}
    table = [[index[hsiao_product(G, a, b)] for b in elems] for a in elems]
    ident = index[((tuple(range(1, n + 1)),), (group_identity(G),))]
    S = FiniteSemigroup(
        table, identity=ident, labels=[hsiao_label(G, x) for x in elems], elements=elems, check=False
    )
    return S


def hsiao_partition(S: FiniteSemigroup, j: int) -> tuple[tuple[int, ...], ...]:
    """Underlying set partition (blocks sorted by minimum) of a J-class."""
    blocks, _ = S.elements[green_relations(S).j_classes[j][0]]
    return tuple(sorted(blocks))


def hsiao_tables(S: FiniteSemigroup, table_g: CharacterTable) -> dict[int, CharacterTable]:
    """Tables for every maximal subgroup of a Hsiao monoid (or its opposite).

    The subgroup of an r-block class is identified with G^r through
    ((P_i, g_i)) -> (g_i) with blocks sorted by minimum, so the labels are
    tuples of labels of G listed in that block order.
    """
    G = table_g.group
    out = {}
    for j in range(green_relations(S).num_j):
        rec = jclass_record(S, j)
        r = len(S.elements[rec.e][0])
        P = power_table(table_g, r) if r > 1 else table_g
        radix = [G.order ** (r - 1 - k) for k in range(r)]
        phi = []
        for s in rec.max_subgroup:
            blocks, gs = S.elements[s]
            order = sorted(range(r), key=lambda k: blocks[k])
            phi.append(sum(radix[pos] * gs[k] for pos, k in enumerate(order)))
        T = transport_table(P, rec.group, phi)
        if r == 1:
            T = CharacterTable(T.group, T.classes, tuple((lab,) for lab in T.labels), T.values)
        out[j] = T
    return out


def labelled_partition_display(parts) -> str:
    """Canonical name of a labelled set partition: blocks by minimum."""
    return "|".join("{" + ",".join(map(str, b)) + "}:" + str(lab) for b, lab in sorted(parts))


def hsiao_vertex_display(S: FiniteSemigroup, j: int, label: tuple) -> str:
    return labelled_partition_display(zip(hsiao_partition(S, j), label))


def hsiao_general_quiver(n: int, table_g: CharacterTable, oracle: bool = False, cap: int = DEFAULT_CAP) -> QuiverGraph:
    """The quiver of the Hsiao monoid computed by the general algorithm on
    its opposite, vertices named as labelled set partitions."""
    from .quiver import full_quiver

    S = opposite(hsiao_semigroup(n, table_g.group, cap))
    tables = hsiao_tables(S, table_g)
    q = full_quiver(S, tables, oracle=oracle)
    return q.relabel({(v.jclass, v.irr): hsiao_vertex_display(S, v.jclass, v.irr) for v in q.vertices})


def hsiao_quiver_closed_form(n: int, table_g: CharacterTable) -> QuiverGraph:
    """Vertices: Irr(G)-labelled set partitions of {1..n}.  From each vertex,
    for each unordered pair of blocks {i, j} and each U in Irr(G), there are
    <chi_U, chi_Vi chi_Vj> arrows to the vertex with the two blocks merged
    and labelled U."""
    labels = list(table_g.labels)
    chars = {lab: table_g.character(lab) for lab in labels}
    vertices = []
    for p in set_partitions(n):
        for labs in product(labels, repeat=len(p)):
            vertices.append(tuple(zip(p, labs)))
    vid = {frozenset(v): k for k, v in enumerate(vertices)}
    arrows = []
    for k, v in enumerate(vertices):
        for (a, b) in combinations(range(len(v)), 2):
            (Pa, Va), (Pb, Vb) = v[a], v[b]
            merged = tuple(sorted(Pa + Pb))
            rest = [part for m, part in enumerate(v) if m not in (a, b)]
            prod_char = tensor(chars[Va], chars[Vb])
            for U in labels:
                mult = inner_product(chars[U], prod_char, characters=True)
                if mult:
                    arrows.append((k, vid[frozenset(rest + [(merged, U)])], mult))
    merged_arrows: dict = {}
    for a, b, m in arrows:
        merged_arrows[(a, b)] = merged_arrows.get((a, b), 0) + m
    verts = tuple(
        QuiverVertex(k, len(v), tuple(lab for _, lab in v), labelled_partition_display(v))
        for k, v in enumerate(vertices)
    )
    return QuiverGraph(verts, tuple(sorted((a, b, m) for (a, b), m in merged_arrows.items())))


# ---------------------------------------------------------------------------
# Permutation groups with constants


def _check_permutations(degree: int, generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    out = []
    for k, g in enumerate(generators):
        g = tuple(int(p) for p in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise InputError(f"generator {k} is not a permutation of 0..{degree - 1}")
        out.append(g)
    return out


def permutation_group(degree: int, generators: Sequence[Sequence[int]]) -> FiniteSemigroup:
    gens = _check_permutations(degree, generators)
    return enumerate_from_generators(degree, gens or [tuple(range(degree))], adjoin_identity=True)


def perm_group_with_constants(degree: int, generators: Sequence[Sequence[int]], cap: int = DEFAULT_CAP) -> FiniteSemigroup:
    """G together with the constant maps (composition: first left, then right)."""
    if degree < 1:
        raise InputError("degree must be positive")
    gens = _check_permutations(degree, generators)
    consts = [tuple([c] * degree) for c in range(degree)]
    return enumerate_from_generators(degree, gens + consts, adjoin_identity=True, cap=cap)


def _orbits(n_points: int, moves) -> list[list[int]]:
    parent = list(range(n_points))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in moves:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for x in range(n_points):
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def is_transitive(degree: int, generators: Sequence[Sequence[int]]) -> bool:
    gens = _check_permutations(degree, generators)
    return len(_orbits(degree, ((p, g[p]) for g in gens for p in range(degree)))) == 1


def rank(degree: int, generators: Sequence[Sequence[int]]) -> int:
    """Number of orbits on ordered pairs of a transitive permutation group."""
    gens = _check_permutations(degree, generators)
    if not is_transitive(degree, gens):
        raise PreconditionError("the action is not transitive")
    moves = ((a * degree + b, g[a] * degree + g[b]) for g in gens for a in range(degree) for b in range(degree))
    return len(_orbits(degree * degree, moves))


def representation_type(degree: int, generators: Sequence[Sequence[int]]) -> str:
    """Finite for rank <= 4, Tame for rank 5, Wild from rank 6 on."""
    rk = rank(degree, generators)
    return "Finite" if rk <= 4 else "Tame" if rk == 5 else "Wild"


@dataclass(frozen=True)
class GbarData:
    semigroup: FiniteSemigroup
    top: int
    bottom: int
    tables: dict


def gbar_setup(degree: int, generators, table_g: CharacterTable | None = None) -> GbarData:
    S = perm_group_with_constants(degree, generators)
    green = green_relations(S)
    top = green.j_of[S.identity]
    bottom = green.principal_order[0]
    if green.num_j != 2 or top == bottom:
        raise PreconditionError("expected exactly two J-classes (units and constants)")
    rec_top = jclass_record(S, top)
    if table_g is None:
        table_g = builtin_table(rec_top.group)
        if table_g is None:
            raise PreconditionError("no built-in character table for this group; supply one")
    elif table_g.group.table != rec_top.group.table:
        from .groups import find_isomorphism

        phi = find_isomorphism(rec_top.group, table_g.group)
        if phi is None:
            raise PreconditionError("character table is for a different group")
        table_g = transport_table(table_g, rec_top.group, phi)
    tables = {top: table_g, bottom: abelian_character_table(jclass_record(S, bottom).group)}
    return GbarData(S, top, bottom, tables)


def gbar_quiver(degree: int, generators, table_g: CharacterTable | None = None) -> QuiverGraph:
    """Arrows only from the trivial simple at the constants: m_1 - 1 to the
    trivial character and m_i to V_i, m_i the multiplicity of V_i in the
    permutation module on the points."""
    data = gbar_setup(degree, generators, table_g)
    S, top, bottom = data.semigroup, data.top, data.bottom
    T = data.tables[top]
    rec = jclass_record(S, top)
    perm = permutation_character(lambda k: S.elements[rec.max_subgroup[k]], T)
    triv = T.trivial_label()
    bottom_label = data.tables[bottom].labels[0]
    verts = [(bottom, bottom_label)] + [(top, lab) for lab in T.labels]
    vertices = tuple(QuiverVertex(k, j, lab, default_display(j, lab)) for k, (j, lab) in enumerate(verts))
    arrows = []
    for k, lab in enumerate(T.labels, start=1):
        m = inner_product(perm, T.character(lab), characters=True)
        if lab == triv:
            m -= 1
        if m:
            arrows.append((0, k, m))
    return QuiverGraph(vertices, tuple(arrows))


# ---------------------------------------------------------------------------
# Rees matrix semigroups


@dataclass(frozen=True)
class ReesSpec:
    """M(G, ell, r, P) with P an r x ell array of group element indices."""

    group: FiniteSemigroup
    ell: int
    r: int
    P: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(tuple(int(x) for x in row) for row in self.P))
        if len(self.P) != self.r or any(len(row) != self.ell for row in self.P):
            raise InputError(f"sandwich array must be {self.r} x {self.ell}")
        if any(not 0 <= x < self.group.order for row in self.P for x in row):
            raise InputError("sandwich array entry is not a group element")


def rees_with_identity(spec: ReesSpec) -> FiniteSemigroup:
    """Elements (a, g, b), a outermost, with (a,g,b)(a',g',b') =
    (a, g P[b][a'] g', b'); the adjoined identity comes last."""
    G = spec.group
    inverses(G)
    elems = [(a, g, b) for a in range(spec.ell) for g in range(G.order) for b in range(spec.r)]
    index = {x: k for k, x in enumerate(elems)}
    n = len(elems)
    table = []
    for a, g, b in elems:
        row = []
        for a2, g2, b2 in elems:
            row.append(index[(a, G.table[G.table[g][spec.P[b][a2]]][g2], b2)])
        row.append(index[(a, g, b)])
        table.append(row)
    table.append(list(range(n + 1)))
    labels = [f"({a},{G.label(g)},{b})" for a, g, b in elems] + ["1"]
    return FiniteSemigroup(table, identity=n, labels=labels, elements=elems + [None], check=False)
