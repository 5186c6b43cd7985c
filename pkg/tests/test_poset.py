from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from semiquiver.constructions import hsiao_semigroup, perm_group_with_constants
from semiquiver.errors import InputError
from semiquiver.groups import cyclic_group, trivial_group
from semiquiver.poset import (
    FinitePoset,
    check_mobius,
    jclass_poset,
    maximal_chains,
    mobius,
    poset_from_relation,
)
from semiquiver.semigroup import green_relations


def partition_lattice(n):
    return jclass_poset(green_relations(hsiao_semigroup(n, trivial_group())))


def chain(k):
    return poset_from_relation(k, [(i, i + 1) for i in range(k - 1)])


def test_validation():
    with pytest.raises(InputError, match="reflexive"):
        FinitePoset([[False]])
    with pytest.raises(InputError, match="antisymmetric"):
        FinitePoset([[True, True], [True, True]])
    with pytest.raises(InputError, match="transitive"):
        FinitePoset([[1, 1, 0], [0, 1, 1], [0, 0, 1]])


def test_small_examples():
    P = jclass_poset(green_relations(cyclic_group(3)))
    assert P.size == 1
    assert mobius(P)(0, 0) == 1
    assert maximal_chains(P) == [[0]]
    C = chain(2)
    assert mobius(C)(0, 1) == -1
    assert maximal_chains(C) == [[0, 1]]
    assert C.covers() == [(0, 1)] and C.bottom() == 0 and C.top() == 1
    Q = jclass_poset(green_relations(perm_group_with_constants(3, [(1, 2, 0)])))
    assert Q.size == 2 and len(Q.covers()) == 1


def test_partition_lattice_pi3():
    P = partition_lattice(3)
    assert P.size == 5
    bot, top = P.bottom(), P.top()
    assert bot is not None and top is not None
    assert mobius(P)(bot, top) == 2
    chains = maximal_chains(P)
    assert len(chains) == 3
    assert all(len(c) == 3 for c in chains)
    assert {c[1] for c in chains} == set(range(5)) - {bot, top}
    assert len(P.covers()) == 6


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_partition_lattice_mobius(n):
    P = partition_lattice(n)
    mu = mobius(P)
    assert check_mobius(P, mu) == []
    assert mu(P.bottom(), P.top()) == (-1) ** (n - 1) * factorial(n - 1)


def test_boolean_lattice():
    # subsets of {0,1,2} as bitmasks
    P = FinitePoset([[a & b == a for b in range(8)] for a in range(8)])
    mu = mobius(P)
    for a in range(8):
        for b in range(8):
            if a & b == a:
                assert mu(a, b) == (-1) ** bin(b & ~a).count("1")
    assert len(maximal_chains(P)) == 6


@st.composite
def random_posets(draw):
    n = draw(st.integers(1, 7))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))
    # orient edges upward so the closure stays antisymmetric
    return poset_from_relation(n, [(min(a, b), max(a, b)) for a, b in pairs if a != b])


@settings(max_examples=60, deadline=None)
@given(random_posets())
def test_mobius_identity_and_chains(P):
    mu = mobius(P)
    assert check_mobius(P, mu) == []
    for x in range(P.size):
        for y in range(P.size):
            if not P.leq[x][y]:
                assert mu(x, y) == 0
    for c in maximal_chains(P):
        assert c[0] in P.minimal() and c[-1] in P.maximal()
        assert all((a, b) in P.covers() for a, b in zip(c, c[1:]))


@settings(max_examples=30, deadline=None)
@given(random_posets())
def test_mobius_inverts_zeta(P):
    mu = mobius(P)
    n = P.size
    for x in range(n):
        for y in range(n):
            s = sum(int(P.leq[x][z]) * mu(z, y) for z in range(n))
            assert s == (1 if x == y else 0)
