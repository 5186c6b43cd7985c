"""Finite semigroups by multiplication table, Green's relations and ideals."""
from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import InitVar, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, PreconditionError, SizeError

DEFAULT_CAP = 200_000


@dataclass(frozen=True)
class FiniteSemigroup:
    """A finite semigroup on ``range(order)``; ``table[a][b]`` is the product ab.

    ``elements`` optionally records what each index stands for (a map, an
    ordered partition, ...), and ``origin`` the indices in a parent
    semigroup when this one was cut out of a larger one.
    """

    table: tuple[tuple[int, ...], ...]
    identity: int | None = None
    labels: tuple[str, ...] | None = None
    elements: tuple | None = None
    origin: tuple[int, ...] | None = None
    check: InitVar[bool] = True
    _cache: dict = field(default_factory=dict, init=False, compare=False, hash=False, repr=False)

    def __post_init__(self, check: bool):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise InputError("a semigroup needs at least one element")
        for a, row in enumerate(table):
            if len(row) != n:
                raise InputError(f"table row {a} has length {len(row)}, expected {n}")
            for b, x in enumerate(row):
                if not 0 <= x < n:
                    raise InputError(f"table[{a}][{b}] = {x} is out of range 0..{n - 1}")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
            if len(self.labels) != n:
                raise InputError("labels must have one entry per element")
        if self.elements is not None:
            object.__setattr__(self, "elements", tuple(self.elements))
        if self.origin is not None:
            object.__setattr__(self, "origin", tuple(self.origin))
        if check:
            bad = first_nonassociative_triple(table)
            if bad is not None:
                a, b, c = bad
                raise InputError(f"table is not associative at (a, b, c) = ({a}, {b}, {c})")
        if self.identity is not None:
            e = self.identity
            if not 0 <= e < n:
                raise InputError(f"identity {e} out of range")
            bad_x = next((x for x in range(n) if table[e][x] != x or table[x][e] != x), None)
            if bad_x is not None:
                raise InputError(f"element {e} is not an identity (fails at {bad_x})")

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, *xs: int) -> int:
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def is_idempotent(self, x: int) -> bool:
        return self.table[x][x] == x

    def idempotents(self) -> list[int]:
        return [x for x in range(self.order) if self.table[x][x] == x]

    def find_identity(self) -> int | None:
        n = self.order
        t = self.table
        return next((e for e in range(n) if all(t[e][x] == x == t[x][e] for x in range(n))), None)


def first_nonassociative_triple(table: Sequence[Sequence[int]]) -> tuple[int, int, int] | None:
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    chunk = max(1, 2_000_000 // (n * n))
    for start in range(0, n, chunk):
        a = np.arange(start, min(n, start + chunk))
        lhs = t[t[a, :], :]  # (ab)c
        rhs = t[a][:, t]  # a(bc)
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            i, b, c = diff[0]
            return int(a[i]), int(b), int(c)
    return None


# ---------------------------------------------------------------------------
# Construction


def compose(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """The product f*g of maps: first f, then g."""
    return tuple(g[p] for p in f)


def enumerate_from_generators(
    degree: int,
    generators: Sequence[Sequence[int]],
    adjoin_identity: bool = False,
    cap: int = DEFAULT_CAP,
) -> FiniteSemigroup:
    """Close a set of maps on ``range(degree)`` under composition.

    Elements are numbered breadth-first, starting from the generators in the
    order given.  With ``adjoin_identity`` the identity map is added (at the
    end) unless the closure already contains it.  Whenever the identity map
    is an element it is recorded as the identity.
    """
    if degree < 1:
        raise InputError("degree must be positive")
    gens: list[tuple[int, ...]] = []
    for k, g in enumerate(generators):
        g = tuple(int(p) for p in g)
        if len(g) != degree or any(not 0 <= p < degree for p in g):
            raise InputError(f"generator {k} is not a total map on 0..{degree - 1}")
        if g not in gens:
            gens.append(g)
    if not gens and not adjoin_identity:
        raise InputError("no generators given")
    index: dict[tuple[int, ...], int] = {}
    elems: list[tuple[int, ...]] = []
    queue: deque = deque()
    for g in gens:
        index[g] = len(elems)
        elems.append(g)
        queue.append(g)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in index:
                if len(elems) >= cap:
                    raise SizeError(f"enumeration exceeds the element cap of {cap}")
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    ident = tuple(range(degree))
    identity = index.get(ident)
    if adjoin_identity and identity is None:
        if len(elems) >= cap:
            raise SizeError(f"enumeration exceeds the element cap of {cap}")
        identity = index[ident] = len(elems)
        elems.append(ident)
    table = [[index[compose(x, y)] for y in elems] for x in elems]
    # composition of maps is associative; skip the cubic check
    return FiniteSemigroup(
        table,
        identity=identity,
        labels=["[" + " ".join(map(str, x)) + "]" for x in elems],
        elements=elems,
        check=False,
    )


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """S with a new identity element appended (index ``S.order``)."""
    n = S.order
    table = [list(row) + [a] for a, row in enumerate(S.table)]
    table.append(list(range(n + 1)))
    labels = None if S.labels is None else list(S.labels) + ["1"]
    return FiniteSemigroup(table, identity=n, labels=labels, check=False)


def opposite(S: FiniteSemigroup) -> FiniteSemigroup:
    """The opposite semigroup: a*b := ba."""
    return FiniteSemigroup(
        [list(col) for col in zip(*S.table)],
        identity=S.identity,
        labels=S.labels,
        elements=S.elements,
        origin=S.origin,
        check=False,
    )


def restrict(S: FiniteSemigroup, elements: Iterable[int], identity: int | None = None) -> FiniteSemigroup:
    """The subsemigroup on ``elements`` (kept in the given order).

    ``identity`` is an index of S; by default S's identity is kept when it
    lies in the subset.  ``origin`` of the result maps back into S.
    """
    elems = list(dict.fromkeys(elements))
    pos = {x: i for i, x in enumerate(elems)}
    table = []
    for x in elems:
        row = []
        for y in elems:
            z = S.table[x][y]
            if z not in pos:
                raise PreconditionError(f"subset is not closed: {S.label(x)}*{S.label(y)} = {S.label(z)}")
            row.append(pos[z])
        table.append(row)
    if identity is None and S.identity is not None and S.identity in pos:
        identity = S.identity
    origin = tuple(elems) if S.origin is None else tuple(S.origin[x] for x in elems)
    return FiniteSemigroup(
        table,
        identity=None if identity is None else pos[identity],
        labels=None if S.labels is None else [S.labels[x] for x in elems],
        elements=None if S.elements is None else [S.elements[x] for x in elems],
        origin=origin,
        check=False,
    )


# ---------------------------------------------------------------------------
# Elementwise properties


def omega_power(S: FiniteSemigroup, s: int) -> int:
    """The unique idempotent among s, s^2, s^3, ..."""
    x = s
    seen = set()
    while S.table[x][x] != x:
        if x in seen:
            # the cyclic part has been reached; its idempotent is some power in the cycle
            break
        seen.add(x)
        x = S.table[x][s]
    if S.table[x][x] == x:
        return x
    # walk the cycle until the idempotent appears
    y = x
    while S.table[y][y] != y:
        y = S.table[y][s]
    return y


def is_regular(S: FiniteSemigroup) -> bool:
    return first_nonregular(S) is None


def first_nonregular(S: FiniteSemigroup) -> int | None:
    t = S.table
    rng = range(S.order)
    for s in rng:
        row = t[s]
        if not any(t[row[x]][s] == s for x in rng):
            return s
    return None


def is_rrbg(S: FiniteSemigroup) -> bool:
    """True iff s^w s = s and s^w t s^w = t s^w for all s, t."""
    return rrbg_violation(S) is None


def rrbg_violation(S: FiniteSemigroup) -> tuple | None:
    t = S.table
    n = S.order
    for s in range(n):
        w = omega_power(S, s)
        if t[w][s] != s:
            return ("s^w s != s", s)
        for x in range(n):
            xw = t[x][w]
            if t[w][xw] != xw:
                return ("s^w t s^w != t s^w", s, x)
    return None


def is_group(S: FiniteSemigroup) -> bool:
    e = S.identity if S.identity is not None else S.find_identity()
    if e is None:
        return False
    return all(any(row[y] == e for y in range(S.order)) for row in S.table) and all(
        len(set(row)) == S.order for row in S.table
    )


# ---------------------------------------------------------------------------
# Green's relations


@dataclass(frozen=True)
class GreenData:
    r_classes: tuple[tuple[int, ...], ...]
    l_classes: tuple[tuple[int, ...], ...]
    j_classes: tuple[tuple[int, ...], ...]
    h_classes: tuple[tuple[int, ...], ...]
    r_of: tuple[int, ...]
    l_of: tuple[int, ...]
    j_of: tuple[int, ...]
    h_of: tuple[int, ...]
    j_leq: tuple[tuple[bool, ...], ...]  # j_leq[a][b]: J_a <=_J J_b
    principal_order: tuple[int, ...]

    @property
    def num_j(self) -> int:
        return len(self.j_classes)

    def j_less(self, a: int, b: int) -> bool:
        return a != b and self.j_leq[a][b]

    def comparable(self, a: int, b: int) -> bool:
        return self.j_leq[a][b] or self.j_leq[b][a]

    def elem_geq_class(self, s: int, j: int) -> bool:
        """s >=_J J_j."""
        return self.j_leq[j][self.j_of[s]]

    def position(self, j: int) -> int:
        return self.principal_order.index(j)


def _classes_by_key(keys: Sequence) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    groups: dict = {}
    for x, k in enumerate(keys):
        groups.setdefault(k, []).append(x)
    classes = sorted((tuple(v) for v in groups.values()), key=lambda c: c[0])
    of = [0] * len(keys)
    for i, c in enumerate(classes):
        for x in c:
            of[x] = i
    return tuple(classes), tuple(of)


def green_relations(S: FiniteSemigroup) -> GreenData:
    """R, L, J, H partitions, the J-order and the principal ordering.

    Principal ideals are computed as reachability sets in the right/left
    Cayley graphs on all elements, stored as integer bitmasks.  Class
    indices follow the smallest element of each class.
    """
    cached = S._cache.get("green")
    if cached is not None:
        return cached
    t = S.table
    n = S.order
    right = []
    for s in range(n):
        m = 1 << s
        for y in t[s]:
            m |= 1 << y
        right.append(m)
    left = []
    for s in range(n):
        m = 1 << s
        for x in range(n):
            m |= 1 << t[x][s]
        left.append(m)
    two = []
    for s in range(n):
        m = 0
        lm = left[s]
        y = 0
        while lm:
            if lm & 1:
                m |= right[y]
            lm >>= 1
            y += 1
        two.append(m)
    r_classes, r_of = _classes_by_key(right)
    l_classes, l_of = _classes_by_key(left)
    j_classes, j_of = _classes_by_key(two)
    h_classes, h_of = _classes_by_key(list(zip(r_of, l_of)))
    k = len(j_classes)
    masks = [two[c[0]] for c in j_classes]
    j_leq = tuple(tuple((masks[a] | masks[b]) == masks[b] for b in range(k)) for a in range(k))
    # smallest-index-first linear extension, lower classes first
    below = [sum(1 for a in range(k) if a != b and j_leq[a][b]) for b in range(k)]
    heap = [b for b in range(k) if below[b] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        a = heapq.heappop(heap)
        order.append(a)
        for b in range(k):
            if b != a and j_leq[a][b]:
                below[b] -= 1
                if below[b] == 0:
                    heapq.heappush(heap, b)
    g = GreenData(r_classes, l_classes, j_classes, h_classes, r_of, l_of, j_of, h_of, j_leq, tuple(order))
    S._cache["green"] = g
    return g


@dataclass(frozen=True)
class JClassRecord:
    """One J-class with its Green-Rees coordinates.

    ``l_transversal`` lies in the R-class of ``e`` (one element per L-class),
    ``r_transversal`` in the L-class of ``e`` (one per R-class).  For a
    non-regular class ``e`` and everything derived from it are None.
    """

    index: int
    elements: tuple[int, ...]
    idempotents: tuple[int, ...]
    e: int | None
    max_subgroup: tuple[int, ...] | None
    group: FiniteSemigroup | None
    l_transversal: tuple[int, ...] | None
    r_transversal: tuple[int, ...] | None

    @property
    def regular(self) -> bool:
        return self.e is not None


def _transversal(S, cells: list[list[int]]) -> tuple[int, ...]:
    if all(any(S.is_idempotent(x) for x in cell) for cell in cells):
        return tuple(next(x for x in cell if S.is_idempotent(x)) for cell in cells)
    return tuple(min(cell) for cell in cells)


def jclass_record(S: FiniteSemigroup, j: int) -> JClassRecord:
    cache = S._cache.setdefault("jrec", {})
    if j in cache:
        return cache[j]
    g = green_relations(S)
    elems = g.j_classes[j]
    idem = tuple(x for x in elems if S.is_idempotent(x))
    if not idem:
        rec = JClassRecord(j, elems, idem, None, None, None, None, None)
    else:
        e = idem[0]
        r_e = [x for x in elems if g.r_of[x] == g.r_of[e]]
        l_e = [x for x in elems if g.l_of[x] == g.l_of[e]]
        l_ids = sorted({g.l_of[x] for x in elems})
        r_ids = sorted({g.r_of[x] for x in elems})
        lt = _transversal(S, [[x for x in r_e if g.l_of[x] == li] for li in l_ids])
        rt = _transversal(S, [[x for x in l_e if g.r_of[x] == ri] for ri in r_ids])
        h = g.h_classes[g.h_of[e]]
        grp = restrict(S, h, identity=e)
        rec = JClassRecord(j, elems, idem, e, h, grp, lt, rt)
    cache[j] = rec
    return rec


def jclass_records(S: FiniteSemigroup) -> list[JClassRecord]:
    return [jclass_record(S, j) for j in range(green_relations(S).num_j)]


def maximal_subgroup(S: FiniteSemigroup, e: int) -> FiniteSemigroup:
    """The H-class of the idempotent e as a group with identity e."""
    if not S.is_idempotent(e):
        raise PreconditionError(f"{S.label(e)} is not idempotent")
    g = green_relations(S)
    return restrict(S, g.h_classes[g.h_of[e]], identity=e)


def local_monoid(S: FiniteSemigroup, e: int) -> FiniteSemigroup:
    """eSe with identity e."""
    if not S.is_idempotent(e):
        raise PreconditionError(f"{S.label(e)} is not idempotent")
    t = S.table
    elems = sorted({t[t[e][s]][e] for s in range(S.order)})
    return restrict(S, elems, identity=e)


@dataclass(frozen=True)
class IdealSlice:
    j_below: frozenset[int]
    j_not_up: frozenset[int]


def is_ideal(S: FiniteSemigroup, subset: Iterable[int]) -> bool:
    sub = set(subset)
    t = S.table
    return all(t[x][s] in sub and t[s][x] in sub for x in sub for s in range(S.order))


def ideal_slices(S: FiniteSemigroup, j: int) -> IdealSlice:
    g = green_relations(S)
    below = frozenset(s for s in range(S.order) if g.j_less(g.j_of[s], j))
    not_up = frozenset(s for s in range(S.order) if not g.j_leq[j][g.j_of[s]])
    if not (is_ideal(S, below) and is_ideal(S, not_up)):
        raise PreconditionError("ideal slice is not a two-sided ideal")
    return IdealSlice(below, not_up)


def remove_jnotup(S: FiniteSemigroup, j: int) -> FiniteSemigroup:
    """The submonoid of elements J-above (or in) J_j."""
    if S.identity is None:
        raise PreconditionError("remove_jnotup needs a monoid")
    if not is_rrbg(S):
        raise PreconditionError("remove_jnotup needs a right regular band of groups")
    g = green_relations(S)
    return restrict(S, [s for s in range(S.order) if g.elem_geq_class(s, j)])


def require_monoid(S: FiniteSemigroup, adjoin: bool = False) -> FiniteSemigroup:
    """S itself if it has an identity; adjoin one only when explicitly asked."""
    if S.identity is not None:
        return S
    found = S.find_identity()
    if found is not None:
        return FiniteSemigroup(S.table, identity=found, labels=S.labels, elements=S.elements, origin=S.origin, check=False)
    if adjoin:
        return adjoin_identity(S)
    raise PreconditionError("a monoid is required (pass the adjoin-identity flag to add one)")


# ---------------------------------------------------------------------------
# JSON


def semigroup_from_json(data: dict, cap: int = DEFAULT_CAP) -> FiniteSemigroup:
    if not isinstance(data, dict):
        raise InputError("semigroup file must hold a JSON object")
    if "generators" in data:
        gen = data["generators"]
        if not isinstance(gen, dict) or "degree" not in gen or "maps" not in gen:
            raise InputError("'generators' needs 'degree' and 'maps'")
        return enumerate_from_generators(
            int(gen["degree"]), gen["maps"], adjoin_identity=bool(data.get("adjoin_identity", False)), cap=cap
        )
    if "table" not in data:
        raise InputError("semigroup file needs 'table' or 'generators'")
    table = data["table"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise InputError("'table' must be a list of lists")
    if "order" in data and int(data["order"]) != len(table):
        raise InputError(f"'order' is {data['order']} but the table has {len(table)} rows")
    for a, row in enumerate(table):
        for b, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(f"table[{a}][{b}] is not an integer")
    ident = data.get("identity")
    return FiniteSemigroup(table, identity=ident, labels=data.get("labels"))


def semigroup_to_json(S: FiniteSemigroup) -> dict:
    return {
        "order": S.order,
        "table": [list(r) for r in S.table],
        "identity": S.identity,
        "labels": list(S.labels) if S.labels is not None else None,
    }


def load_semigroup(path: str | Path, cap: int = DEFAULT_CAP) -> FiniteSemigroup:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read semigroup file {path}: {exc}") from exc
    return semigroup_from_json(data, cap=cap)
