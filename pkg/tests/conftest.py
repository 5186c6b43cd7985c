from functools import lru_cache

import pytest

from semiquiver.characters import abelian_character_table
from semiquiver.constructions import hsiao_semigroup, hsiao_tables, rees_with_identity, ReesSpec
from semiquiver.groups import cyclic_group
from semiquiver.semigroup import opposite

ACCEPTANCE_RESULTS: dict[int, bool] = {}


@lru_cache(maxsize=None)
def group_table(order: int):
    return abelian_character_table(cyclic_group(order))


@lru_cache(maxsize=None)
def hsiao_op(n: int, g: int):
    """(opposite Hsiao monoid, its subgroup tables) for G cyclic of order g."""
    T = group_table(g)
    S = opposite(hsiao_semigroup(n, T.group))
    return S, hsiao_tables(S, T)


@lru_cache(maxsize=None)
def rees_c2():
    return rees_with_identity(ReesSpec(cyclic_group(2), 2, 2, [[0, 0], [0, 1]]))


@pytest.fixture
def sigma2():
    return hsiao_op(2, 1)


@pytest.fixture
def sigma3():
    return hsiao_op(3, 1)


@pytest.fixture
def sigma2_c2():
    return hsiao_op(2, 2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ACCEPTANCE_RESULTS[k] else 'FAIL'}")
