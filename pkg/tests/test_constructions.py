import random
from collections import Counter
from math import comb

import pytest

from conftest import group_table, hsiao_op
from semiquiver.characters import symmetric_character_table
from semiquiver.constructions import (
    ReesSpec,
    gbar_quiver,
    gbar_setup,
    hsiao_general_quiver,
    hsiao_quiver_closed_form,
    hsiao_semigroup,
    is_transitive,
    ordered_g_partitions,
    perm_group_with_constants,
    rank,
    rees_with_identity,
    representation_type,
    set_partitions,
)
from semiquiver.errors import InputError, PreconditionError, SizeError
from semiquiver.groups import cyclic_group, direct_power, find_isomorphism, trivial_group
from semiquiver.quiver import full_quiver
from semiquiver.semigroup import (
    FiniteSemigroup,
    green_relations,
    is_rrbg,
    jclass_record,
    jclass_records,
    opposite,
)

S3_GENS = [(1, 2, 0), (1, 0, 2)]


def cyclic_gens(n):
    return [tuple((i + 1) % n for i in range(n))]


def test_set_partition_counts():
    assert [len(set_partitions(n)) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]


@pytest.mark.parametrize("n,g,order", [(1, 1, 1), (1, 3, 3), (2, 1, 3), (3, 1, 13), (4, 1, 75), (2, 2, 10), (3, 2, 74), (2, 3, 21)])
def test_hsiao_orders(n, g, order):
    S = hsiao_semigroup(n, cyclic_group(g))
    assert S.order == order
    assert is_rrbg(opposite(S))


def test_hsiao_n1_is_the_group():
    G = cyclic_group(4)
    S = hsiao_semigroup(1, G)
    assert find_isomorphism(S, G) is not None


def test_hsiao_cap_and_input():
    with pytest.raises(SizeError):
        ordered_g_partitions(4, 2, cap=100)
    with pytest.raises(InputError):
        hsiao_semigroup(0, trivial_group())


def test_hsiao_maximal_subgroups_are_powers():
    for n, g in [(3, 1), (3, 2), (2, 3)]:
        S = hsiao_semigroup(n, cyclic_group(g))
        for rec in jclass_records(S):
            r = len(S.elements[rec.e][0])
            assert rec.group.order == g ** r
            if g > 1:
                assert find_isomorphism(rec.group, direct_power(cyclic_group(g), r)) is not None


def test_hsiao_is_left_regular_band_of_groups():
    S = hsiao_semigroup(3, cyclic_group(2))
    green = green_relations(S)
    assert set(green.j_classes) == set(green.l_classes)


def test_closed_form_examples():
    q = hsiao_quiver_closed_form(3, group_table(1))
    assert len(q.vertices) == 5 and q.arrow_count() == 6
    q = hsiao_quiver_closed_form(2, group_table(2))
    assert len(q.vertices) == 6 and q.arrow_count() == 4
    disp = {v.id: v.display for v in q.vertices}
    arrows = {disp[a]: disp[b] for a, b, _ in q.arrows}
    assert arrows["{1}:chi(0)|{2}:chi(0)"] == "{1,2}:chi(0)"
    assert arrows["{1}:chi(1/2)|{2}:chi(1/2)"] == "{1,2}:chi(0)"
    assert arrows["{1}:chi(0)|{2}:chi(1/2)"] == "{1,2}:chi(1/2)"


@pytest.mark.parametrize("n,g", [(3, 1), (4, 1), (3, 2), (2, 3), (3, 3)])
def test_abelian_out_degree_is_pairs_of_blocks(n, g):
    q = hsiao_quiver_closed_form(n, group_table(g))
    out = Counter()
    for a, _, m in q.arrows:
        out[a] += m
    for v in q.vertices:
        r = v.display.count("|") + 1
        assert out[v.id] == comb(r, 2)


def test_closed_form_nonabelian_group():
    T = symmetric_character_table(3)
    q = hsiao_quiver_closed_form(2, T)
    disp = {v.id: v.display for v in q.vertices}
    arrows = Counter({(disp[a], disp[b]): m for a, b, m in q.arrows})
    assert arrows[("{1}:[2,1]|{2}:[2,1]", "{1,2}:[2,1]")] == 1
    assert arrows[("{1}:[2,1]|{2}:[2,1]", "{1,2}:[3]")] == 1
    assert arrows[("{1}:[2,1]|{2}:[2,1]", "{1,2}:[1,1,1]")] == 1
    assert arrows[("{1}:[2,1]|{2}:[3]", "{1,2}:[2,1]")] == 1


@pytest.mark.parametrize("n,g", [(2, 1), (3, 1), (2, 2), (2, 3)])
def test_general_matches_closed_form(n, g):
    T = group_table(g)
    assert hsiao_general_quiver(n, T, oracle=True).same_as(hsiao_quiver_closed_form(n, T))


def test_general_matches_closed_form_nonabelian():
    T = symmetric_character_table(3)
    S = opposite(hsiao_semigroup(2, T.group))
    assert S.order == 6 + 2 * 36
    assert hsiao_general_quiver(2, T).same_as(hsiao_quiver_closed_form(2, T))


def test_quiver_invariant_under_relabelling():
    S, _ = hsiao_op(2, 2)
    rng = random.Random(7)
    perm = list(range(S.order))
    rng.shuffle(perm)
    inv = {p: k for k, p in enumerate(perm)}
    table = [[perm[S.table[inv[a]][inv[b]]] for b in range(S.order)] for a in range(S.order)]
    T = FiniteSemigroup(table, identity=perm[S.identity])
    q1, q2 = full_quiver(S), full_quiver(T)

    def shape(q):
        deg = Counter()
        for a, b, m in q.arrows:
            deg[("out", a)] += m
            deg[("in", b)] += m
        return q.arrow_count(), len(q.vertices), sorted(Counter(deg.values()).items())

    assert shape(q1) == shape(q2)


def test_perm_group_with_constants_orders():
    assert perm_group_with_constants(2, [(0, 1)]).order == 3
    assert perm_group_with_constants(1, [(0,)]).order == 1
    assert perm_group_with_constants(3, cyclic_gens(3)).order == 6
    assert perm_group_with_constants(3, S3_GENS).order == 9


def test_rank_examples():
    assert rank(3, S3_GENS) == 2
    assert rank(4, [(1, 2, 3, 0), (1, 0, 2, 3)]) == 2
    for n in (3, 4, 5, 6):
        assert rank(n, cyclic_gens(n)) == n
    assert rank(1, [(0,)]) == 1
    assert is_transitive(3, S3_GENS)
    assert not is_transitive(4, [(1, 0, 2, 3)])


def test_representation_types():
    expected = {3: "Finite", 4: "Finite", 5: "Tame", 6: "Wild"}
    for n, kind in expected.items():
        assert representation_type(n, cyclic_gens(n)) == kind
    assert representation_type(3, S3_GENS) == "Finite"
    with pytest.raises(PreconditionError):
        representation_type(4, [(1, 0, 2, 3)])


def test_bad_permutations():
    with pytest.raises(InputError):
        rank(3, [(0, 0, 1)])
    with pytest.raises(InputError):
        perm_group_with_constants(3, [(0, 1)])


def test_gbar_examples():
    q = gbar_quiver(3, cyclic_gens(3))
    assert len(q.vertices) == 4
    assert sorted(m for _, _, m in q.arrows) == [1, 1]
    data = gbar_setup(3, cyclic_gens(3))
    T = data.tables[data.top]
    irr = {v.id: v.irr for v in q.vertices}
    assert sorted(irr[b] for _, b, _ in q.arrows) == sorted(set(T.labels) - {T.trivial_label()})
    assert len({a for a, _, _ in q.arrows}) == 1
    q = gbar_quiver(3, S3_GENS)
    disp = {v.id: v.display for v in q.vertices}
    targets = {disp[b].split(":")[1]: m for _, b, m in q.arrows}
    assert targets == {"[2,1]": 1}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_gbar_matches_general(n):
    data = gbar_setup(n, cyclic_gens(n))
    q = gbar_quiver(n, cyclic_gens(n))
    assert full_quiver(data.semigroup, data.tables, oracle=True).same_as(q)
    # transitive action: no arrow to the trivial top character
    triv = data.tables[data.top].trivial_label()
    disp = {v.id: v for v in q.vertices}
    assert all(disp[b].irr != triv for _, b, _ in q.arrows)
    assert q.arrow_count() == n - 1


def test_gbar_s3_matches_general():
    data = gbar_setup(3, S3_GENS)
    assert full_quiver(data.semigroup, data.tables).same_as(gbar_quiver(3, S3_GENS))


def test_rees_examples():
    G = cyclic_group(2)
    S = rees_with_identity(ReesSpec(G, 1, 1, [[0]]))
    assert S.order == 3 and S.identity == 2
    S = rees_with_identity(ReesSpec(G, 2, 2, [[0, 0], [0, 1]]))
    assert S.order == 9
    green = green_relations(S)
    assert sorted(len(c) for c in green.j_classes) == [1, 8]
    j = next(j for j in range(green.num_j) if len(green.j_classes[j]) == 8)
    assert jclass_record(S, j).regular
    assert len({green.r_of[x] for x in green.j_classes[j]}) == 2
    assert len({green.l_of[x] for x in green.j_classes[j]}) == 2
    with pytest.raises(InputError):
        ReesSpec(G, 2, 2, [[0, 0]])
    with pytest.raises(InputError):
        ReesSpec(G, 1, 1, [[5]])
