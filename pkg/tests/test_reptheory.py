import pytest

from conftest import group_table, hsiao_op, rees_c2
from semiquiver.characters import abelian_character_table
from semiquiver.constructions import ReesSpec, perm_group_with_constants, rees_with_identity
from semiquiver.errors import PreconditionError
from semiquiver.groups import cyclic_group
from semiquiver.reptheory import (
    algebra_product,
    cartan_closed_form,
    cartan_matrix,
    cartan_oracle,
    is_directed,
    is_unipotent,
    left_invertible_over_group_algebra,
    multiplicity,
    nico_bound,
    nico_data,
    nico_sigma,
    regular_expansion,
    sandwich_matrix,
    schutzenberger_rep,
    semisimple_quotient,
    simple_dimension,
    subgroup_tables,
    theta_idempotent_formula,
    theta_of_induced,
)
from semiquiver.semigroup import FiniteSemigroup, adjoin_identity, green_relations, jclass_record, jclass_records

SUITE = [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (2, 3)]


def bottom_top(S):
    order = green_relations(S).principal_order
    return order[0], order[-1]


def test_sandwich_of_a_group():
    C = sandwich_matrix(cyclic_group(3), 0)
    assert C.shape == (1, 1) and C.entries == ((0,),)
    assert left_invertible_over_group_algebra(C)
    assert is_directed(cyclic_group(6))


@pytest.mark.parametrize("n,g", SUITE)
def test_rrbg_sandwich_is_one_column(n, g):
    S, _ = hsiao_op(n, g)
    for rec in jclass_records(S):
        C = sandwich_matrix(S, rec.index)
        assert C.shape[1] == 1
        assert all(x is not None for row in C.entries for x in row)
    assert is_directed(S)


def test_rees_not_directed():
    S = rees_c2()
    j = next(r.index for r in jclass_records(S) if len(r.elements) == 8)
    C = sandwich_matrix(S, j)
    assert C.shape == (2, 2)
    E = regular_expansion(C)
    assert E.shape == (4, 4) and E.rank() == 3
    assert not left_invertible_over_group_algebra(C)
    assert not is_directed(S)


def test_other_rees_examples():
    S = rees_with_identity(ReesSpec(cyclic_group(2), 2, 2, [[0, 1], [1, 0]]))
    assert not is_directed(S)
    # [[e, e], [e, g]] over C3: the determinant g - e is a zero divisor
    S = rees_with_identity(ReesSpec(cyclic_group(3), 2, 2, [[0, 0], [0, 1]]))
    j = next(r.index for r in jclass_records(S) if len(r.elements) == 12)
    assert regular_expansion(sandwich_matrix(S, j)).rank() == 5
    assert not is_directed(S)
    # the sandwich array is r x ell: one column is injective, one row is not
    for ell, r, directed in [(1, 2, True), (1, 1, True), (2, 1, False)]:
        S = rees_with_identity(ReesSpec(cyclic_group(2), ell, r, [[1] * ell for _ in range(r)]))
        assert S.order == 2 * ell * r + 1
        assert is_directed(S) == directed


def test_is_directed_requires_regular():
    null = FiniteSemigroup([[1, 1], [1, 1]])
    with pytest.raises(PreconditionError):
        is_directed(null)


def test_schutzenberger_examples():
    S, tables = hsiao_op(3, 1)
    for rec in jclass_records(S):
        rep = schutzenberger_rep(S, rec.index)
        assert len(rep.basis) == len(rec.elements) // rec.group.order
        th = theta_of_induced(S, rec.index, tables[rec.index], tables[rec.index].labels[0])
        assert th[S.identity] == len(rec.idempotents)
        green = green_relations(S)
        for s in range(S.order):
            if not green.elem_geq_class(s, rec.index):
                assert th[s] == 0


@pytest.mark.parametrize("n,g", SUITE)
def test_theta_formulas_agree(n, g):
    S, tables = hsiao_op(n, g)
    for j, T in tables.items():
        for lab in T.labels:
            assert theta_of_induced(S, j, T, lab) == theta_idempotent_formula(S, j, T, lab)


def test_schutzenberger_is_a_representation():
    S, _ = hsiao_op(2, 2)
    for rec in jclass_records(S):
        rep = schutzenberger_rep(S, rec.index)
        G = rec.group
        for s in range(S.order):
            for u in range(S.order):
                composed = {}
                for b, (g, b2) in rep.action[s].items():
                    if b2 in rep.action[u]:
                        h, b3 = rep.action[u][b2]
                        composed[b] = (G.table[g][h], b3)
                assert composed == rep.action[S.table[s][u]]


def test_simple_dimensions():
    S, tables = hsiao_op(2, 1)
    bot, _ = bottom_top(S)
    assert simple_dimension(S, bot, tables[bot], tables[bot].labels[0]) == 1
    R = rees_c2()
    j = next(r.index for r in jclass_records(R) if len(r.elements) == 8)
    T = abelian_character_table(jclass_record(R, j).group)
    dims = sorted(simple_dimension(R, j, T, lab) for lab in T.labels)
    assert dims == [1, 2]


def test_simple_dimension_needs_matrices_for_nonlinear():
    G = perm_group_with_constants(3, [(1, 2, 0), (1, 0, 2)])
    tables = subgroup_tables(G)
    top = green_relations(G).j_of[G.identity]
    T = tables[top]
    std = next(lab for lab in T.labels if T.degree(lab) == 2)
    with pytest.raises(PreconditionError):
        simple_dimension(G, top, T, std)
    mats = {g: [[1, 0], [0, 1]] for g in range(6)}
    assert simple_dimension(G, top, T, std, rep_matrices=mats) == 2


@pytest.mark.parametrize(
    "n,g,total,kernel,nil",
    [(2, 1, 2, 1, 2), (3, 1, 5, 8, 3), (4, 1, 15, 60, 4), (2, 2, 6, 4, 2), (3, 2, 22, 52, 3), (2, 3, 12, 9, 2)],
)
def test_semisimple_quotient(n, g, total, kernel, nil):
    S, _ = hsiao_op(n, g)
    q = semisimple_quotient(S)
    assert q.total_dim == total == sum(r.group.order for r in jclass_records(S))
    assert q.kernel_dim == kernel == S.order - total
    assert q.nilpotency_index == nil
    assert nil <= green_relations(S).num_j + 1


def test_quotient_of_a_group():
    q = semisimple_quotient(cyclic_group(4))
    assert q.kernel_dim == 0 and q.total_dim == 4


def test_sigma2_radical_squares_to_zero():
    S, _ = hsiao_op(2, 1)
    (v,) = semisimple_quotient(S).kernel_basis
    assert algebra_product(S, v, v) == {}


def test_multiplicity_examples():
    S, tables = hsiao_op(2, 1)
    bot, top = bottom_top(S)
    th = theta_of_induced(S, bot, tables[bot], tables[bot].labels[0])
    assert multiplicity(S, th, top, tables[top], tables[top].labels[0]) == 1
    assert multiplicity(S, th, bot, tables[bot], tables[bot].labels[0]) == 1


@pytest.mark.parametrize("n,g", SUITE)
def test_induced_contains_its_simple_once(n, g):
    S, tables = hsiao_op(n, g)
    for j, T in tables.items():
        for w in T.labels:
            th = theta_of_induced(S, j, T, w)
            for v in T.labels:
                assert multiplicity(S, th, j, T, v) == (1 if v == w else 0)


@pytest.mark.parametrize("n,g", SUITE)
def test_cartan_routes_agree_and_unipotent(n, g):
    S, tables = hsiao_op(n, g)
    C = cartan_matrix(S, tables, route="both")
    assert C == cartan_oracle(S, tables)
    assert is_unipotent(S, C)


def test_cartan_sigma2():
    S, tables = hsiao_op(2, 1)
    C = cartan_closed_form(S, tables)
    bot, top = bottom_top(S)
    idx = {v[0]: k for k, v in enumerate(C.vertices)}
    order = [idx[top], idx[bot]]
    assert [[C.entries[r][c] for c in order] for r in order] == [[1, 1], [0, 1]]


def test_cartan_of_a_group_is_identity():
    G = cyclic_group(3)
    C = cartan_matrix(G, {0: group_table(3)}, route="both")
    assert C.entries == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_cartan_dimension_count():
    # sum over entries of dim V dim W C = dim kS for a basic algebra count check
    for n, g in SUITE:
        S, tables = hsiao_op(n, g)
        C = cartan_closed_form(S, tables)
        total = sum(sum(row) for row in C.entries)
        assert total == S.order


def test_cartan_requires_rrbg():
    with pytest.raises(PreconditionError):
        cartan_matrix(rees_c2(), {})


def test_nico_examples():
    assert nico_sigma(cyclic_group(3), 0) == 0
    right_zero = FiniteSemigroup([list(range(3)) for _ in range(3)])
    assert nico_sigma(right_zero, 0) == 1
    S, _ = hsiao_op(2, 1)
    assert nico_bound(S) == 1
    d = nico_data(S)
    bot, top = bottom_top(S)
    assert d.sigma[top] == 0 and d.sigma[bot] == 1


@pytest.mark.parametrize("n,g,expected", [(2, 1, 1), (3, 1, 2), (2, 2, 1), (3, 2, 2), (2, 3, 1), (4, 1, 3)])
def test_nico_bounds(n, g, expected):
    S, _ = hsiao_op(n, g)
    d = nico_data(S)
    assert d.bound == expected
    m = green_relations(S).num_j
    assert d.bound <= 2 * (m - 1)


def test_left_zero_sigma():
    left_zero = adjoin_identity(FiniteSemigroup([[a] * 3 for a in range(3)]))
    j = green_relations(left_zero).j_of[0]
    assert nico_sigma(left_zero, j) == 1
