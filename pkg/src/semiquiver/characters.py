"""Conjugacy classes, exact character tables and class-function arithmetic."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Callable, Hashable, Sequence

from .errors import ConsistencyError, InputError, PreconditionError
from .exact import Cyclotomic, as_integer, cyclo, lcm, simplify
from .groups import (
    cycle_type,
    direct_power,
    element_order,
    exponent,
    generated_subgroup,
    group_identity,
    inverses,
    is_abelian,
    is_homomorphism,
    symmetric_group,
)
from .semigroup import FiniteSemigroup


@dataclass(frozen=True)
class ConjugacyClasses:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    representatives: tuple[int, ...]
    inverse_class: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def conjugacy_classes(G: FiniteSemigroup) -> ConjugacyClasses:
    """Classes listed identity first, then by smallest member."""
    cached = G._cache.get("classes")
    if cached is not None:
        return cached
    inv = inverses(G)
    t = G.table
    class_of = [-1] * G.order
    classes = []
    e = group_identity(G)
    for g in [e] + [x for x in range(G.order) if x != e]:
        if class_of[g] >= 0:
            continue
        orbit = sorted({t[t[inv[x]][g]][x] for x in range(G.order)})
        for y in orbit:
            class_of[y] = len(classes)
        classes.append(tuple(orbit))
    reps = tuple(c[0] for c in classes)
    inv_class = tuple(class_of[inv[r]] for r in reps)
    cc = ConjugacyClasses(tuple(classes), tuple(class_of), reps, inv_class)
    G._cache["classes"] = cc
    return cc


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Irreducible characters of ``group``; columns follow ``classes``."""

    group: FiniteSemigroup
    classes: ConjugacyClasses
    labels: tuple[Hashable, ...]
    values: tuple[tuple, ...]  # values[i][c]

    @property
    def order(self) -> int:
        return self.group.order

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def character(self, label) -> "ClassFunction":
        return ClassFunction(self, self.values[self.index(label)])

    def characters(self) -> list["ClassFunction"]:
        return [ClassFunction(self, v) for v in self.values]

    def degree(self, label) -> int:
        return as_integer(self.values[self.index(label)][0], "character degree")

    def value(self, label, g: int):
        return self.values[self.index(label)][self.classes.class_of[g]]

    def regular_character(self) -> "ClassFunction":
        e = group_identity(self.group)
        return ClassFunction(self, tuple(self.order if r == e else 0 for r in self.classes.representatives))

    def trivial_label(self):
        return next(lab for lab, row in zip(self.labels, self.values) if all(v == 1 for v in row))

    def conductor(self) -> int:
        m = 1
        for row in self.values:
            for v in row:
                if isinstance(v, Cyclotomic) and not v.is_rational():
                    m = lcm(m, v.conductor)
        return m

    def problems(self) -> list[str]:
        """Violations of orthogonality / degree sum; empty for a valid table."""
        out = []
        chars = self.characters()
        for i, a in enumerate(chars):
            for j, b in enumerate(chars[: i + 1]):
                ip = inner_product(a, b)
                if ip != (1 if i == j else 0):
                    out.append(f"rows {self.labels[j]!s} and {self.labels[i]!s} have inner product {ip}")
        degrees = []
        e = group_identity(self.group)
        if self.classes.representatives[0] != e:
            out.append("first class must be the identity class")
        for lab, row in zip(self.labels, self.values):
            d = row[0]
            if not (isinstance(d, Fraction) and d.denominator == 1 and d > 0):
                out.append(f"degree of {lab!s} is not a positive integer")
            else:
                degrees.append(int(d))
        if not out and sum(d * d for d in degrees) != self.order:
            out.append(f"sum of squared degrees is {sum(d * d for d in degrees)}, group order {self.order}")
        if len(set(self.labels)) != len(self.labels):
            out.append("labels are not distinct")
        if not out and len(self.labels) != len(self.classes):
            out.append("number of irreducibles differs from number of classes")
        return out

    def validate(self) -> "CharacterTable":
        bad = self.problems()
        if bad:
            raise InputError("invalid character table: " + "; ".join(bad))
        return self


def make_table(G: FiniteSemigroup, labels: Sequence, rows: Sequence[Sequence], check: bool = True) -> CharacterTable:
    cc = conjugacy_classes(G)
    t = CharacterTable(G, cc, tuple(labels), tuple(tuple(simplify(v) for v in r) for r in rows))
    return t.validate() if check else t


@dataclass(frozen=True, eq=False)
class ClassFunction:
    table: CharacterTable
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(simplify(v) for v in self.values))

    def __call__(self, g: int):
        return self.values[self.table.classes.class_of[g]]

    def _same(self, other: "ClassFunction"):
        if other.table.group is not self.table.group:
            raise ValueError("class functions on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._same(other)
        return ClassFunction(self.table, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._same(other)
        return ClassFunction(self.table, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            return tensor(self, other)
        return ClassFunction(self.table, tuple(a * other for a in self.values))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassFunction) and self.table.group is other.table.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def degree(self):
        return self.values[0]


def class_function(table: CharacterTable, f: Callable[[int], object], check: bool = False) -> ClassFunction:
    """Class function from a pointwise rule, sampled at representatives.

    With ``check`` every element is evaluated and constancy on classes is
    asserted.
    """
    cc = table.classes
    vals = [simplify(f(r)) for r in cc.representatives]
    if check:
        for c, members in enumerate(cc.classes):
            for g in members[1:]:
                if simplify(f(g)) != vals[c]:
                    raise ConsistencyError(f"function is not constant on the class of {cc.representatives[c]}")
    return ClassFunction(table, tuple(vals))


def inner_product(chi: ClassFunction, psi: ClassFunction, characters: bool = False):
    """(1/|G|) sum_g chi(g) psi(g^-1).

    With ``characters`` both arguments are taken to be characters of actual
    modules and the result is returned as a nonnegative int (never rounded;
    anything else raises ConsistencyError).
    """
    chi._same(psi)
    cc = chi.table.classes
    total = Fraction(0)
    for c, size in enumerate(cc.sizes):
        a = chi.values[c]
        if a:
            b = psi.values[cc.inverse_class[c]]
            if b:
                total = total + size * a * b
    val = simplify(total / chi.table.order)
    if characters:
        try:
            n = as_integer(val, "multiplicity")
        except ValueError as exc:
            raise ConsistencyError(str(exc)) from exc
        if n < 0:
            raise ConsistencyError(f"negative multiplicity {n}")
        return n
    return val


def tensor(chi: ClassFunction, psi: ClassFunction) -> ClassFunction:
    chi._same(psi)
    return ClassFunction(chi.table, tuple(a * b for a, b in zip(chi.values, psi.values)))


def permutation_character(action: Callable[[int], Sequence[int]], table: CharacterTable) -> ClassFunction:
    """Fixed-point counts; ``action(g)`` is the permutation of points induced by g."""
    return class_function(table, lambda g: sum(1 for p, q in enumerate(action(g)) if p == q))


def restrict_along(phi: Sequence[int], chi: ClassFunction, source: CharacterTable) -> ClassFunction:
    """chi o phi as a class function on the source group (averaged over classes)."""
    cc = source.classes
    vals = []
    for members in cc.classes:
        tot = sum((chi(phi[g]) for g in members), Fraction(0))
        vals.append(simplify(tot / len(members)))
    return ClassFunction(source, tuple(vals))


def decompose(chi: ClassFunction) -> dict:
    """Multiplicity of each irreducible in the character chi."""
    return {lab: inner_product(chi, irr, characters=True) for lab, irr in zip(chi.table.labels, chi.table.characters())}


# ---------------------------------------------------------------------------
# Abelian groups


def _fraction_label(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def abelian_character_table(G: FiniteSemigroup) -> CharacterTable:
    """All homomorphisms G -> roots of unity, built one generator at a time.

    A generator is chosen of largest order modulo the subgroup built so far;
    each character is extended by choosing an m-th root of its value on
    g^m.  Characters are stored as exponents in Q/Z and labelled by their
    values on the chosen generators, trivial character first.
    """
    if not is_abelian(G):
        raise PreconditionError("abelian_character_table needs an abelian group")
    e = group_identity(G)
    t = G.table
    sub = [e]
    chars: list[tuple[tuple[Fraction, ...], dict[int, Fraction]]] = [((), {e: Fraction(0)})]
    while len(sub) < G.order:
        sub_set = set(sub)

        def rel_order(g: int) -> int:
            k, x = 1, g
            while x not in sub_set:
                x = t[x][g]
                k += 1
            return k

        g = max((x for x in range(G.order) if x not in sub_set), key=lambda x: (rel_order(x), -x))
        m = rel_order(g)
        gm = g
        for _ in range(m - 1):
            gm = t[gm][g]
        powers = [e]
        for _ in range(m - 1):
            powers.append(t[powers[-1]][g])
        new_sub = [t[h][p] for p in powers for h in sub]
        new_chars = []
        for gens_vals, vals in chars:
            base = vals[gm]
            for k in range(m):
                a = ((base + k) / m) % 1
                ext = {}
                for j, p in enumerate(powers):
                    for h in sub:
                        ext[t[h][p]] = (vals[h] + j * a) % 1
                new_chars.append((gens_vals + (a,), ext))
        sub, chars = new_sub, new_chars
    chars.sort(key=lambda c: c[0])
    expo = exponent(G)
    cc = conjugacy_classes(G)
    labels = ["chi(" + ",".join(_fraction_label(a) for a in gv) + ")" for gv, _ in chars]
    rows = [[cyclo(expo, int(vals[r] * expo)) for r in cc.representatives] for _, vals in chars]
    return make_table(G, labels, rows)


# ---------------------------------------------------------------------------
# Direct powers


def power_table(T: CharacterTable, r: int) -> CharacterTable:
    """Character table of G^r (mixed-radix element numbering, first factor
    most significant); labels are r-tuples of the input labels."""
    if r < 1:
        raise InputError("power must be at least 1")
    if r == 1:
        return T
    P = direct_power(T.group, r)
    cc = conjugacy_classes(P)
    labels = []
    rows = []
    for combo in product(range(len(T)), repeat=r):
        labels.append(tuple(T.labels[i] for i in combo))
        row = []
        for rep in cc.representatives:
            v = Fraction(1)
            for i, x in zip(combo, P.elements[rep]):
                v = v * T.values[i][T.classes.class_of[x]]
            row.append(v)
        rows.append(row)
    return make_table(P, labels, rows)


# ---------------------------------------------------------------------------
# Symmetric groups


def _check_partition(p: Sequence[int]) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if any(x <= 0 for x in p) or list(p) != sorted(p, reverse=True):
        raise InputError(f"{p} is not a partition")
    return p


@lru_cache(maxsize=None)
def _mn(beta: frozenset, mu: tuple[int, ...]) -> int:
    """Murnaghan-Nakayama on a beta-set: remove rim hooks of length mu[0]."""
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in beta:
            height = sum(1 for c in beta if b - k < c < b)
            total += (-1) ** height * _mn((beta - {b}) | {b - k}, rest)
    return total


def symmetric_character(n: int, lam: Sequence[int], mu: Sequence[int]) -> Cyclotomic:
    """chi^lam evaluated on the class of cycle type mu."""
    lam, mu = _check_partition(lam), _check_partition(mu)
    if sum(lam) != n or sum(mu) != n:
        raise InputError(f"partitions must both have size {n}")
    length = len(lam)
    beta = frozenset(lam[i] + (length - 1 - i) for i in range(length))
    return Cyclotomic.rational(_mn(beta, mu))


def partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n in reverse lexicographic order, (n) first."""
    out: list[tuple[int, ...]] = []

    def rec(rem: int, cap: int, acc: list[int]):
        if rem == 0:
            out.append(tuple(acc))
            return
        for k in range(min(rem, cap), 0, -1):
            acc.append(k)
            rec(rem - k, k, acc)
            acc.pop()

    rec(n, n, [])
    return out


def partition_label(p: Sequence[int]) -> str:
    return "[" + ",".join(map(str, p)) + "]"


def symmetric_character_table(n: int, group: FiniteSemigroup | None = None) -> CharacterTable:
    """Table of S_n on points 0..n-1 (or of the given permutation group,
    whose ``elements`` must be the permutations)."""
    G = symmetric_group(n) if group is None else group
    if G.elements is None:
        raise InputError("symmetric table needs a group of explicit permutations")
    cc = conjugacy_classes(G)
    types = [cycle_type(G.elements[r]) for r in cc.representatives]
    lams = partitions(n)
    rows = [[symmetric_character(n, lam, mu) for mu in types] for lam in lams]
    return make_table(G, [partition_label(lam) for lam in lams], rows)


# ---------------------------------------------------------------------------
# Moving tables between groups


def transport_table(T: CharacterTable, G: FiniteSemigroup, phi: Sequence[int]) -> CharacterTable:
    """Table of G obtained by precomposing with a bijection phi: G -> T.group.

    phi must be an isomorphism or an anti-isomorphism (the latter arises for
    maximal subgroups of an opposite semigroup); labels are kept.
    """
    H = T.group
    if len(phi) != G.order or sorted(phi) != list(range(H.order)):
        raise PreconditionError("transport map is not a bijection")
    if not (is_homomorphism(G, H, phi) or is_homomorphism(G, H, phi, anti=True)):
        raise PreconditionError("transport map is neither a homomorphism nor an anti-homomorphism")
    cc = conjugacy_classes(G)
    rows = [[row[T.classes.class_of[phi[r]]] for r in cc.representatives] for row in T.values]
    return make_table(G, T.labels, rows, check=False)


# ---------------------------------------------------------------------------
# File format


def table_to_json(T: CharacterTable, include_group: bool = False) -> dict:
    m = T.conductor()
    out = {
        "group_order": T.order,
        "conductor": m,
        "classes": [{"rep": r, "size": len(c)} for r, c in zip(T.classes.representatives, T.classes.classes)],
        "irreducibles": [
            {"label": str(lab), "values": [Cyclotomic.rational(v).to_wire(m) if not isinstance(v, Cyclotomic) else v.to_wire(m) for v in row]}
            for lab, row in zip(T.labels, T.values)
        ],
    }
    if include_group:
        out["group"] = {"table": [list(r) for r in T.group.table], "identity": group_identity(T.group)}
    return out


def table_from_json(data: dict, group: FiniteSemigroup | None = None, element_map: dict[int, int] | None = None) -> CharacterTable:
    """Parse and validate a table file.

    The group is ``data["group"]`` (a semigroup-file object) when present,
    otherwise ``group``.  Class representatives index the group's elements,
    or are translated through ``element_map`` first.  Columns may be
    listed in any order.
    """
    from .groups import group_from_json

    if not isinstance(data, dict):
        raise InputError("character table file must hold a JSON object")
    for key in ("group_order", "conductor", "classes", "irreducibles"):
        if key not in data:
            raise InputError(f"character table is missing '{key}'")
    if "group" in data:
        G = group_from_json(data["group"])
    elif group is not None:
        G = group
    else:
        raise InputError("character table has no 'group' and none was supplied")
    if int(data["group_order"]) != G.order:
        raise InputError(f"group_order {data['group_order']} does not match group of order {G.order}")
    m = int(data["conductor"])
    if m < 1:
        raise InputError("conductor must be positive")
    cc = conjugacy_classes(G)
    cols = []
    for k, c in enumerate(data["classes"]):
        try:
            rep = int(c["rep"])
            size = int(c["size"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"classes[{k}] needs integer 'rep' and 'size'") from exc
        if element_map is not None:
            if rep not in element_map:
                raise InputError(f"classes[{k}].rep {rep} is not in the group")
            rep = element_map[rep]
        if not 0 <= rep < G.order:
            raise InputError(f"classes[{k}].rep {rep} is out of range")
        cl = cc.class_of[rep]
        if len(cc.classes[cl]) != size:
            raise InputError(f"classes[{k}].size is {size} but the class of {rep} has {len(cc.classes[cl])} elements")
        cols.append(cl)
    if sorted(cols) != list(range(len(cc))):
        raise InputError("classes do not list every conjugacy class exactly once")
    labels, rows = [], []
    for k, irr in enumerate(data["irreducibles"]):
        vals = irr.get("values")
        if not isinstance(vals, list) or len(vals) != len(cols):
            raise InputError(f"irreducibles[{k}].values must have one entry per class")
        try:
            parsed = [Cyclotomic.from_wire(m, v) for v in vals]
        except (TypeError, ValueError) as exc:
            raise InputError(f"irreducibles[{k}]: {exc}") from exc
        row = [None] * len(cols)
        for cl, v in zip(cols, parsed):
            row[cl] = v
        labels.append(str(irr.get("label", k)))
        rows.append(row)
    # internal column order is by class index; identity class first
    return make_table(G, labels, rows)


def load_table(path: str | Path, group: FiniteSemigroup | None = None, element_map: dict[int, int] | None = None) -> CharacterTable:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read character table {path}: {exc}") from exc
    return table_from_json(data, group=group, element_map=element_map)


def builtin_table(G: FiniteSemigroup) -> CharacterTable | None:
    """A table for G when one can be built without outside input: abelian
    groups, and groups isomorphic to S_n for n <= 6."""
    if is_abelian(G):
        return abelian_character_table(G)
    from math import factorial

    from .groups import find_isomorphism

    n = 3
    while factorial(n) < G.order:
        n += 1
    if factorial(n) == G.order and n <= 6:
        T = symmetric_character_table(n)
        phi = find_isomorphism(G, T.group)
        if phi is not None:
            return transport_table(T, G, phi)
    return None


__all__ = [
    "CharacterTable",
    "ClassFunction",
    "ConjugacyClasses",
    "abelian_character_table",
    "builtin_table",
    "class_function",
    "conjugacy_classes",
    "decompose",
    "element_order",
    "generated_subgroup",
    "inner_product",
    "load_table",
    "make_table",
    "partitions",
    "permutation_character",
    "power_table",
    "restrict_along",
    "symmetric_character",
    "symmetric_character_table",
    "table_from_json",
    "table_to_json",
    "tensor",
    "transport_table",
]
