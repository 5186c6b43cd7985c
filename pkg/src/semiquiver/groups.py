"""Small finite groups given as multiplication tables."""
from __future__ import annotations

from itertools import product
from typing import Sequence

from .errors import InputError, PreconditionError
from .semigroup import FiniteSemigroup, enumerate_from_generators


def group_identity(G: FiniteSemigroup) -> int:
    e = G.identity if G.identity is not None else G.find_identity()
    if e is None:
        raise PreconditionError("not a group: no identity element")
    return e


def inverses(G: FiniteSemigroup) -> tuple[int, ...]:
    """Inverse of every element; raises PreconditionError for non-groups."""
    cached = G._cache.get("inverses")
    if cached is not None:
        return cached
    e = group_identity(G)
    inv = []
    for g in range(G.order):
        h = next((h for h in range(G.order) if G.table[g][h] == e), None)
        if h is None or G.table[h][g] != e:
            raise PreconditionError(f"not a group: {G.label(g)} has no inverse")
        inv.append(h)
    out = tuple(inv)
    G._cache["inverses"] = out
    return out


def check_group(G: FiniteSemigroup) -> None:
    inverses(G)


def element_order(G: FiniteSemigroup, g: int) -> int:
    e = group_identity(G)
    k, x = 1, g
    while x != e:
        x = G.table[x][g]
        k += 1
    return k


def exponent(G: FiniteSemigroup) -> int:
    from math import lcm

    out = 1
    for g in range(G.order):
        out = lcm(out, element_order(G, g))
    return out


def is_abelian(G: FiniteSemigroup) -> bool:
    t = G.table
    return all(t[a][b] == t[b][a] for a in range(G.order) for b in range(a))


def generated_subgroup(G: FiniteSemigroup, gens: Sequence[int]) -> frozenset[int]:
    e = group_identity(G)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.table[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def small_generating_set(G: FiniteSemigroup) -> list[int]:
    """Greedy: repeatedly add the smallest element outside the current subgroup,
    preferring elements of largest order."""
    group_identity(G)
    orders = [element_order(G, g) for g in range(G.order)]
    gens: list[int] = []
    sub = generated_subgroup(G, gens)
    while len(sub) < G.order:
        g = max((x for x in range(G.order) if x not in sub), key=lambda x: (orders[x], -x))
        gens.append(g)
        sub = generated_subgroup(G, gens)
    return gens


def is_homomorphism(G: FiniteSemigroup, H: FiniteSemigroup, phi: Sequence[int], anti: bool = False) -> bool:
    tg, th = G.table, H.table
    for a in range(G.order):
        for b in range(G.order):
            lhs = phi[tg[a][b]]
            rhs = th[phi[b]][phi[a]] if anti else th[phi[a]][phi[b]]
            if lhs != rhs:
                return False
    return True


def is_isomorphism(G: FiniteSemigroup, H: FiniteSemigroup, phi: Sequence[int], anti: bool = False) -> bool:
    return (
        G.order == H.order
        and len(set(phi)) == G.order
        and is_homomorphism(G, H, phi, anti=anti)
    )


def find_isomorphism(G: FiniteSemigroup, H: FiniteSemigroup) -> tuple[int, ...] | None:
    """Some isomorphism G -> H as an image list, or None.

    Backtracks over images of a generating set of G, matching element
    orders, and extends each choice to all of G by breadth-first words.
    """
    if G.order != H.order:
        return None
    eg, eh = group_identity(G), group_identity(H)
    og = [element_order(G, g) for g in range(G.order)]
    oh = [element_order(H, h) for h in range(H.order)]
    if sorted(og) != sorted(oh):
        return None
    gens = small_generating_set(G)
    candidates = [[h for h in range(H.order) if oh[h] == og[g]] for g in gens]
    for images in product(*candidates):
        phi = {eg: eh}
        frontier = [eg]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, img in zip(gens, images):
                    y = G.table[x][g]
                    z = H.table[phi[x]][img]
                    if y in phi:
                        if phi[y] != z:
                            ok = False
                            break
                    else:
                        phi[y] = z
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(phi) != G.order:
            continue
        cand = tuple(phi[g] for g in range(G.order))
        if is_isomorphism(G, H, cand):
            return cand
    return None


def cyclic_group(n: int) -> FiniteSemigroup:
    if n < 1:
        raise InputError("cyclic group order must be positive")
    return FiniteSemigroup(
        [[(a + b) % n for b in range(n)] for a in range(n)],
        identity=0,
        labels=[f"g^{a}" if a else "1" for a in range(n)],
        check=False,
    )


def trivial_group() -> FiniteSemigroup:
    return cyclic_group(1)


def direct_product(groups: Sequence[FiniteSemigroup]) -> FiniteSemigroup:
    """Direct product with mixed-radix indexing, first factor most significant."""
    sizes = [G.order for G in groups]
    tuples = list(product(*[range(s) for s in sizes]))
    index = {t: i for i, t in enumerate(tuples)}
    table = [
        [index[tuple(G.table[x][y] for G, x, y in zip(groups, a, b))] for b in tuples] for a in tuples
    ]
    ident = index[tuple(group_identity(G) for G in groups)]
    return FiniteSemigroup(table, identity=ident, elements=tuples, check=False)


def direct_power(G: FiniteSemigroup, r: int) -> FiniteSemigroup:
    if r < 1:
        raise InputError("power must be at least 1")
    return direct_product([G] * r)


def symmetric_group(n: int) -> FiniteSemigroup:
    """S_n on points 0..n-1, generated by the n-cycle and a transposition."""
    if n < 1:
        raise InputError("degree must be positive")
    if n == 1:
        return enumerate_from_generators(1, [(0,)])
    cycle = tuple(list(range(1, n)) + [0])
    swap = tuple([1, 0] + list(range(2, n)))
    return enumerate_from_generators(n, [cycle, swap] if n > 2 else [swap], adjoin_identity=True)


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = set()
    lengths = []
    for p in range(len(perm)):
        if p in seen:
            continue
        k, q = 0, p
        while q not in seen:
            seen.add(q)
            q = perm[q]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def group_from_json(data: dict) -> FiniteSemigroup:
    """A group given like a semigroup file; validated to be a group."""
    from .semigroup import semigroup_from_json

    G = semigroup_from_json(data)
    if G.identity is None:
        e = G.find_identity()
        if e is None:
            raise InputError("group table has no identity")
        G = FiniteSemigroup(G.table, identity=e, labels=G.labels, elements=G.elements, check=False)
    try:
        inverses(G)
    except PreconditionError as exc:
        raise InputError(str(exc)) from exc
    return G
