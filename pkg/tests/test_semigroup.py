import json

import pytest
from hypothesis import given, settings, strategies as st

from conftest import hsiao_op, rees_c2
from semiquiver.constructions import hsiao_semigroup, perm_group_with_constants
from semiquiver.errors import InputError, PreconditionError, SizeError
from semiquiver.groups import cyclic_group, direct_power, find_isomorphism, is_abelian
from semiquiver.semigroup import (
    FiniteSemigroup,
    enumerate_from_generators,
    green_relations,
    ideal_slices,
    is_regular,
    is_rrbg,
    jclass_record,
    jclass_records,
    load_semigroup,
    local_monoid,
    maximal_subgroup,
    omega_power,
    opposite,
    remove_jnotup,
    semigroup_from_json,
)

S3_GENS = [(1, 2, 0), (1, 0, 2)]
CONSTS3 = [(0, 0, 0), (1, 1, 1), (2, 2, 2)]


def naive_green(S):
    """Principal ideals as explicit sets, straight from the definitions."""
    n, t = S.order, S.table
    right = [frozenset({s} | {t[s][x] for x in range(n)}) for s in range(n)]
    left = [frozenset({s} | {t[x][s] for x in range(n)}) for s in range(n)]
    two = [frozenset(left[s] | {t[y][x] for y in left[s] for x in range(n)}) for s in range(n)]
    return right, left, two


def partition_of(keys):
    groups = {}
    for x, k in enumerate(keys):
        groups.setdefault(k, set()).add(x)
    return {frozenset(v) for v in groups.values()}


def test_enumeration_examples():
    assert enumerate_from_generators(1, [(0,)]).order == 1
    assert enumerate_from_generators(3, S3_GENS).order == 6
    assert enumerate_from_generators(3, S3_GENS + CONSTS3).order == 9


def test_composition_convention():
    S = enumerate_from_generators(3, [(1, 2, 0), (0, 0, 0)])
    f = S.elements.index((1, 2, 0))
    c = S.elements.index((0, 0, 0))
    # first f, then the constant: constant; first the constant, then f: constant 1
    assert S.elements[S.table[f][c]] == (0, 0, 0)
    assert S.elements[S.table[c][f]] == (1, 1, 1)


def test_enumeration_is_deterministic():
    a = enumerate_from_generators(4, [(1, 2, 3, 0), (0, 0, 2, 3)])
    b = enumerate_from_generators(4, [(1, 2, 3, 0), (0, 0, 2, 3)])
    assert a.table == b.table and a.elements == b.elements


def test_enumeration_cap():
    with pytest.raises(SizeError):
        enumerate_from_generators(4, [(1, 2, 3, 0), (1, 0, 2, 3)], cap=10)


def test_bad_generator():
    with pytest.raises(InputError):
        enumerate_from_generators(3, [(0, 1)])
    with pytest.raises(InputError):
        enumerate_from_generators(3, [(0, 1, 3)])


def test_table_validation():
    with pytest.raises(InputError, match=r"\(0, 0, 1\)"):
        FiniteSemigroup([[1, 0], [0, 0]])
    with pytest.raises(InputError, match="out of range"):
        FiniteSemigroup([[0, 2], [0, 0]])
    with pytest.raises(InputError, match="not an identity"):
        FiniteSemigroup([[0, 0], [0, 0]], identity=1)
    with pytest.raises(InputError):
        semigroup_from_json({"order": 3, "table": [[0]]})


def test_json_file_forms(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"generators": {"degree": 3, "maps": [[1, 2, 0]]}, "adjoin_identity": True}))
    S = load_semigroup(p)
    assert S.order == 3 and S.identity is not None
    p.write_text(json.dumps({"order": 1, "table": [[0]], "identity": 0, "labels": ["1"]}))
    assert load_semigroup(p).labels == ("1",)
    p.write_text("{not json")
    with pytest.raises(InputError):
        load_semigroup(p)


def test_omega_power_examples():
    C6 = cyclic_group(6)
    assert omega_power(C6, 2) == 0
    G = perm_group_with_constants(3, S3_GENS)
    for s in range(G.order):
        if len(set(G.elements[s])) == 1:
            assert omega_power(G, s) == s


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_omega_power_is_an_idempotent_power(gens):
    S = enumerate_from_generators(4, gens)
    for s in range(S.order):
        w = omega_power(S, s)
        assert S.is_idempotent(w)
        x, powers = s, set()
        while x not in powers:
            powers.add(x)
            x = S.table[x][s]
        assert w in powers


def test_green_examples():
    G = cyclic_group(5)
    g = green_relations(G)
    assert len(g.r_classes) == len(g.l_classes) == len(g.j_classes) == len(g.h_classes) == 1
    S, _ = hsiao_op(2, 1)
    assert sorted(len(c) for c in green_relations(S).j_classes) == [1, 2]
    assert sorted(len(c) for c in green_relations(rees_c2()).j_classes) == [1, 8]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_green_matches_definitions(gens):
    S = enumerate_from_generators(4, gens, adjoin_identity=True)
    g = green_relations(S)
    right, left, two = naive_green(S)
    assert set(map(frozenset, g.r_classes)) == partition_of(right)
    assert set(map(frozenset, g.l_classes)) == partition_of(left)
    assert set(map(frozenset, g.j_classes)) == partition_of(two)
    assert set(map(frozenset, g.h_classes)) == partition_of(list(zip(right, left)))
    for a in range(g.num_j):
        for b in range(g.num_j):
            ia, ib = two[g.j_classes[a][0]], two[g.j_classes[b][0]]
            assert g.j_leq[a][b] == (ia <= ib)
    pos = {j: k for k, j in enumerate(g.principal_order)}
    for a in range(g.num_j):
        for b in range(g.num_j):
            if g.j_leq[a][b]:
                assert pos[a] <= pos[b]
    # every R- and L-class sits inside one J-class
    for c in g.r_classes + g.l_classes:
        assert len({g.j_of[x] for x in c}) == 1


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_green_under_opposite_swaps_r_and_l(gens):
    S = enumerate_from_generators(4, gens, adjoin_identity=True)
    g, h = green_relations(S), green_relations(opposite(S))
    assert set(g.r_classes) == set(h.l_classes)
    assert set(g.l_classes) == set(h.r_classes)
    assert set(g.j_classes) == set(h.j_classes)


def test_stability_within_regular_jclass():
    for S in (rees_c2(), hsiao_op(3, 1)[0], perm_group_with_constants(3, S3_GENS)):
        g = green_relations(S)
        for J in g.j_classes:
            for x in J:
                for y in J:
                    xy = S.table[x][y]
                    assert (g.j_of[xy] == g.j_of[x]) == (g.r_of[xy] == g.r_of[x])


def test_regular_jclass_records():
    for S in (rees_c2(), hsiao_op(3, 2)[0], perm_group_with_constants(3, S3_GENS)):
        g = green_relations(S)
        for rec in jclass_records(S):
            assert rec.regular
            assert S.is_idempotent(rec.e) and rec.e == min(rec.idempotents)
            assert len(rec.elements) == len(rec.l_transversal) * len(rec.r_transversal) * rec.group.order
            # every R- and L-class of the J-class holds an idempotent
            for c in g.r_classes + g.l_classes:
                if c[0] in rec.elements:
                    assert any(S.is_idempotent(x) for x in c)


def test_is_regular_examples():
    assert is_regular(cyclic_group(4))
    band = FiniteSemigroup([[0, 0], [0, 1]])  # semilattice
    assert is_regular(band)
    null = FiniteSemigroup([[1, 1], [1, 1]])
    assert not is_regular(null)


def test_is_rrbg_examples():
    right_zero = FiniteSemigroup([[b for b in range(3)] for _ in range(3)])
    assert is_rrbg(right_zero)
    assert not is_rrbg(rees_c2())
    for n, g in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3)]:
        assert is_rrbg(hsiao_op(n, g)[0])


def test_rrbg_j_equals_r():
    for n, g in [(3, 1), (3, 2), (2, 3)]:
        S = hsiao_op(n, g)[0]
        green = green_relations(S)
        assert set(green.j_classes) == set(green.r_classes)


def test_opposite_examples():
    C = cyclic_group(4)
    assert opposite(C).table == C.table
    S = rees_c2()
    assert opposite(opposite(S)).table == S.table
    left_zero = FiniteSemigroup([[a] * 3 for a in range(3)])
    assert opposite(left_zero).table == tuple(tuple(range(3)) for _ in range(3))


def test_maximal_subgroup_examples():
    C = cyclic_group(4)
    assert maximal_subgroup(C, 0).table == C.table
    G = perm_group_with_constants(3, S3_GENS)
    const = G.elements.index((0, 0, 0))
    assert maximal_subgroup(G, const).order == 1
    S, _ = hsiao_op(2, 2)
    bottom = green_relations(S).principal_order[0]
    H = maximal_subgroup(S, jclass_record(S, bottom).e)
    assert H.order == 4 and is_abelian(H)
    assert find_isomorphism(H, direct_power(cyclic_group(2), 2)) is not None
    with pytest.raises(PreconditionError):
        maximal_subgroup(C, 1)


def test_local_monoid_examples():
    S, _ = hsiao_op(3, 1)
    assert local_monoid(S, S.identity).order == S.order
    t = S.table
    for e in S.idempotents():
        M = local_monoid(S, e)
        assert set(M.origin) == {t[s][e] for s in range(S.order)}
    bottom = green_relations(S).principal_order[0]
    e = jclass_record(S, bottom).e
    assert local_monoid(S, e).order == jclass_record(S, bottom).group.order


def test_ideal_slices_examples():
    S, _ = hsiao_op(3, 1)
    g = green_relations(S)
    bottom, top = g.principal_order[0], g.principal_order[-1]
    assert ideal_slices(S, bottom).j_below == frozenset()
    sl = ideal_slices(S, top)
    assert sl.j_below == sl.j_not_up == frozenset(range(S.order)) - {S.identity}
    mid = g.principal_order[1]
    sl = ideal_slices(S, mid)
    others = {x for j in g.principal_order[1:4] if j != mid for x in g.j_classes[j]}
    assert others | set(g.j_classes[bottom]) <= sl.j_not_up
    assert sl.j_below <= sl.j_not_up


def test_remove_jnotup():
    S, _ = hsiao_op(3, 1)
    g = green_relations(S)
    assert remove_jnotup(S, g.principal_order[0]).order == S.order
    assert remove_jnotup(S, g.principal_order[-1]).order == 1
    # the class of {12|3}: the identity and the two orderings of ({1,2},{3})
    blocks = ((1, 2), (3,))
    j = next(j for j in range(g.num_j) if sorted(S.elements[g.j_classes[j][0]][0]) == sorted(blocks))
    T = remove_jnotup(S, j)
    assert T.order == 3
    assert T.identity is not None
    with pytest.raises(PreconditionError):
        remove_jnotup(rees_c2(), 0)


def test_hsiao_j_order_is_refinement():
    S = hsiao_semigroup(3, cyclic_group(1))
    g = green_relations(S)
    part = {j: frozenset(frozenset(b) for b in S.elements[g.j_classes[j][0]][0]) for j in range(g.num_j)}

    def refines(p, q):
        return all(any(b <= c for c in q) for b in p)

    for a in range(g.num_j):
        for b in range(g.num_j):
            assert g.j_leq[a][b] == refines(part[a], part[b])
