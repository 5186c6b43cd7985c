"""Sandwich matrices, directedness, simple modules, Cartan matrices and
Nico's bound for finite regular semigroups (right modules throughout)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .characters import CharacterTable, builtin_table
from .errors import ConsistencyError, PreconditionError
from .exact import Echelon, ExactMatrix, as_integer, nilpotency_index, rank, simplify, solve
from .groups import inverses
from .poset import jclass_poset, maximal_chains, mobius
from .semigroup import (
    FiniteSemigroup,
    JClassRecord,
    first_nonregular,
    green_relations,
    jclass_record,
    jclass_records,
    omega_power,
    rrbg_violation,
)


def group_positions(rec: JClassRecord) -> dict[int, int]:
    """Semigroup element -> index in ``rec.group``."""
    return {s: k for k, s in enumerate(rec.max_subgroup)}


def require_regular(S: FiniteSemigroup) -> None:
    bad = first_nonregular(S)
    if bad is not None:
        raise PreconditionError(f"semigroup is not regular: element {S.label(bad)} has no weak inverse")


def require_rrbg(S: FiniteSemigroup) -> None:
    bad = rrbg_violation(S)
    if bad is not None:
        what, *elems = bad
        names = ", ".join(S.label(x) for x in elems)
        raise PreconditionError(f"not a right regular band of groups: {what} fails at {names}")


def require_rrbg_monoid(S: FiniteSemigroup) -> None:
    if S.identity is None:
        raise PreconditionError("a monoid is required (pass the adjoin-identity flag to add one)")
    require_rrbg(S)


# ---------------------------------------------------------------------------
# Sandwich matrices and directedness


@dataclass(frozen=True)
class SandwichMatrix:
    """Entries lambda_b * rho_a as group indices of ``jclass.group`` (None = 0).

    Rows follow ``jclass.l_transversal``, columns ``jclass.r_transversal``.
    Read as a map it sends kR to the dual of kL, which is only of
    documentary interest here.
    """

    jclass: JClassRecord
    entries: tuple[tuple[int | None, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def elements(self) -> list[list[int | None]]:
        """Entries as semigroup elements."""
        h = self.jclass.max_subgroup
        return [[None if x is None else h[x] for x in row] for row in self.entries]


def sandwich_matrix(S: FiniteSemigroup, j: int) -> SandwichMatrix:
    rec = jclass_record(S, j)
    if not rec.regular:
        raise PreconditionError(f"J-class {j} is not regular")
    pos = group_positions(rec)
    members = set(rec.elements)
    rows = []
    for lam in rec.l_transversal:
        row = []
        for rho in rec.r_transversal:
            x = S.table[lam][rho]
            if x not in members:
                row.append(None)
            elif x in pos:
                row.append(pos[x])
            else:
                raise ConsistencyError(f"sandwich entry {S.label(x)} lies in J but outside the maximal subgroup")
        rows.append(tuple(row))
    C = SandwichMatrix(rec, tuple(rows))
    if any(all(x is None for x in r) for r in C.entries) or any(all(x is None for x in c) for c in zip(*C.entries)):
        raise ConsistencyError(f"sandwich matrix of J-class {j} has a zero row or column")
    return C


def regular_expansion(C: SandwichMatrix) -> ExactMatrix:
    """Replace g by the |G| x |G| permutation matrix of right multiplication
    (row h, column hg) and 0 by a zero block."""
    G = C.jclass.group
    n = G.order
    rows = []
    for crow in C.entries:
        for h in range(n):
            line = []
            for g in crow:
                block = [0] * n
                if g is not None:
                    block[G.table[h][g]] = 1
                line.extend(block)
            rows.append(line)
    return ExactMatrix(rows)


def left_invertible_over_group_algebra(C: SandwichMatrix) -> bool:
    """Over a semisimple group algebra an injective column map splits, so
    left invertibility is full column rank of the rational expansion."""
    ell, r = C.shape
    return regular_expansion(C).rank() == r * C.jclass.group.order


def is_directed(S: FiniteSemigroup) -> bool:
    require_regular(S)
    return all(
        left_invertible_over_group_algebra(sandwich_matrix(S, j)) for j in range(green_relations(S).num_j)
    )


# ---------------------------------------------------------------------------
# Schutzenberger representation and induced characters


@dataclass(frozen=True)
class SchutzRep:
    """Right action on the R-class of e by row-monomial matrices over G_e.

    ``action[s][b]`` is ``(g, b2)``: basis vector b times s equals g times
    basis vector b2; missing rows are zero.  Elements not J-above the class
    act as zero.
    """

    jclass: JClassRecord
    basis: tuple[int, ...]
    action: tuple[dict[int, tuple[int, int]], ...]

    def matrix(self, s: int) -> list[list[int | None]]:
        n = len(self.basis)
        out: list[list[int | None]] = [[None] * n for _ in range(n)]
        for b, (g, b2) in self.action[s].items():
            out[b][b2] = g
        return out


def schutzenberger_rep(S: FiniteSemigroup, j: int) -> SchutzRep:
    cache = S._cache.setdefault("schutz", {})
    if j in cache:
        return cache[j]
    rec = jclass_record(S, j)
    if not rec.regular:
        raise PreconditionError(f"J-class {j} is not regular")
    green = green_relations(S)
    basis = rec.l_transversal
    # every x in R_e is g * lambda_b for exactly one (g, b)
    decomp: dict[int, tuple[int, int]] = {}
    for b, lam in enumerate(basis):
        for k, h in enumerate(rec.max_subgroup):
            x = S.table[h][lam]
            if x in decomp:
                raise ConsistencyError("R-class decomposition is not unique")
            decomp[x] = (k, b)
    r_e = green.r_of[rec.e]
    action = []
    for s in range(S.order):
        rowmap = {}
        if green.elem_geq_class(s, j):
            for b, lam in enumerate(basis):
                x = S.table[lam][s]
                if green.r_of[x] == r_e:
                    rowmap[b] = decomp[x]
        action.append(rowmap)
    rep = SchutzRep(rec, basis, tuple(action))
    cache[j] = rep
    return rep


def theta_of_induced(S: FiniteSemigroup, j: int, table: CharacterTable, label) -> list:
    """Character of W (x) kJ over all of S, W the irreducible ``label`` of G_j."""
    rep = schutzenberger_rep(S, j)
    chi = table.character(label)
    return [
        simplify(sum((chi(g) for b, (g, b2) in rep.action[s].items() if b == b2), Fraction(0)))
        for s in range(S.order)
    ]


def theta_idempotent_formula(S: FiniteSemigroup, j: int, table: CharacterTable, label) -> list:
    """The same character for an RRBG written with the idempotents of J:
    theta(s) = sum over e in E(J) with (es)^w = e of chi_W(e s e_J)."""
    rec = jclass_record(S, j)
    green = green_relations(S)
    pos = group_positions(rec)
    chi = table.character(label)
    t = S.table
    out = []
    for s in range(S.order):
        v = Fraction(0)
        if green.elem_geq_class(s, j):
            for e in rec.idempotents:
                if omega_power(S, t[e][s]) == e:
                    v = v + chi(pos[t[t[e][s]][rec.e]])
        out.append(simplify(v))
    return out


# ---------------------------------------------------------------------------
# Simple modules


@dataclass(frozen=True)
class SimpleModuleRecord:
    apex: int
    irr: object
    dim: int | None


def simple_dimension(
    S: FiniteSemigroup,
    j: int,
    table: CharacterTable,
    label,
    rep_matrices: Mapping[int, Sequence[Sequence]] | None = None,
) -> int:
    """dim of the simple module with apex J_j and group part V = ``label``:
    the rank of the sandwich matrix with V substituted entrywise.

    One-dimensional V is read off the table; otherwise ``rep_matrices``
    (group index -> matrix) must be given.
    """
    C = sandwich_matrix(S, j)
    d = table.degree(label)
    if d == 1:
        chi = table.character(label)
        block = lambda g: [[chi(g)]]  # noqa: E731
    elif rep_matrices is None:
        raise PreconditionError(f"explicit matrices are needed for the {d}-dimensional irreducible {label}")
    else:
        block = lambda g: rep_matrices[g]  # noqa: E731
    rows = []
    for crow in C.entries:
        for i in range(d):
            line = []
            for g in crow:
                line.extend([0] * d if g is None else list(block(g)[i]))
            rows.append(line)
    return rank(rows)


def simple_modules(S: FiniteSemigroup, tables: Mapping[int, CharacterTable]) -> list[SimpleModuleRecord]:
    green = green_relations(S)
    out = []
    for j in green.principal_order:
        if not jclass_record(S, j).regular:
            continue
        T = tables[j]
        for lab in T.labels:
            dim = simple_dimension(S, j, T, lab) if T.degree(lab) == 1 else None
            out.append(SimpleModuleRecord(j, lab, dim))
    return out


# ---------------------------------------------------------------------------
# Semisimple quotient


@dataclass(frozen=True)
class SemisimpleQuotientData:
    """Components s -> s e_i (group index, or None when s is not above J_i)."""

    components: dict[int, tuple[int | None, ...]]
    total_dim: int
    kernel_dim: int
    kernel_basis: tuple[dict[int, int], ...]
    nilpotency_index: int | None


def algebra_product(S: FiniteSemigroup, u: dict, v: dict) -> dict:
    """Product in kS of sparse vectors {element: coefficient}."""
    out: dict = {}
    t = S.table
    for x, a in u.items():
        row = t[x]
        for y, b in v.items():
            z = row[y]
            c = out.get(z, 0) + a * b
            if c:
                out[z] = c
            else:
                out.pop(z, None)
    return out


def semisimple_quotient(S: FiniteSemigroup) -> SemisimpleQuotientData:
    require_rrbg_monoid(S)
    green = green_relations(S)
    t = S.table
    recs = jclass_records(S)
    components = {}
    offsets = {}
    total = 0
    for rec in recs:
        pos = group_positions(rec)
        comp = []
        for s in range(S.order):
            if green.elem_geq_class(s, rec.index):
                x = t[s][rec.e]
                if x not in pos:
                    raise ConsistencyError(f"{S.label(s)} e lands outside the maximal subgroup")
                comp.append(pos[x])
            else:
                comp.append(None)
        components[rec.index] = tuple(comp)
        offsets[rec.index] = total
        total += rec.group.order
    # each component is a homomorphism onto G_i with zero
    for rec in recs:
        comp = components[rec.index]
        G = rec.group
        for s in range(S.order):
            for u in range(S.order):
                a, b, c = comp[s], comp[u], comp[t[s][u]]
                expect = None if a is None or b is None else G.table[a][b]
                if expect != c:
                    raise ConsistencyError(f"component {rec.index} is not multiplicative at ({s}, {u})")
    # psi as a matrix: one column per element
    cols = []
    for s in range(S.order):
        cols.append({offsets[i] + comp[s]: 1 for i, comp in components.items() if comp[s] is not None})
    ech = Echelon()
    for col in cols:
        ech.add(col)
    kernel_dim = S.order - len(ech)
    # the fibres of s -> s e_{J(s)} give a sparse kernel basis
    in_groups = set()
    for rec in recs:
        in_groups.update(rec.max_subgroup)
    basis = []
    for s in range(S.order):
        if s in in_groups:
            continue
        rep = t[s][recs[green.j_of[s]].e]
        basis.append({s: 1, rep: -1})
    for v in basis:
        image: dict = {}
        for x, a in v.items():
            for k, c in cols[x].items():
                image[k] = image.get(k, 0) + a * c
        if any(image.values()):
            raise ConsistencyError("fibre difference is not in the kernel")
    if len(basis) != kernel_dim:
        raise ConsistencyError(f"kernel has dimension {kernel_dim} but {len(basis)} fibre differences")
    nil = nilpotency_index(
        basis,
        multiply=lambda u, v: algebra_product(S, u, v),
        to_vector=lambda u: u,
        dim=S.order,
    ) if basis else 1
    if nil is None:
        raise ConsistencyError("kernel of the semisimple quotient is not nilpotent")
    return SemisimpleQuotientData(components, total, kernel_dim, tuple(basis), nil)


# ---------------------------------------------------------------------------
# Multiplicities and Cartan matrices


def multiplicity(
    S: FiniteSemigroup,
    theta: Sequence,
    i: int,
    table: CharacterTable,
    label,
) -> int:
    """Composition multiplicity of the simple module (J_i, V) in a module
    with character ``theta`` (a list indexed by elements of S)."""
    require_rrbg_monoid(S)
    green = green_relations(S)
    mu = _mobius(S)
    rec_i = jclass_record(S, i)
    chi = table.character(label)
    inv = inverses(rec_i.group)
    t = S.table
    below = [m for m in range(green.num_j) if green.j_leq[m][i]]
    es = {m: jclass_record(S, m).e for m in below}
    total = Fraction(0)
    for k, g in enumerate(rec_i.max_subgroup):
        inner = Fraction(0)
        for m in below:
            th = theta[t[g][es[m]]]
            if th:
                inner = inner + th * mu(m, i)
        if inner:
            total = total + chi(inv[k]) * inner
    val = simplify(total / rec_i.group.order)
    try:
        n = as_integer(val, "multiplicity")
    except ValueError as exc:
        raise ConsistencyError(str(exc)) from exc
    if n < 0:
        raise ConsistencyError(f"negative multiplicity {n}")
    return n


def _mobius(S: FiniteSemigroup):
    cached = S._cache.get("mobius")
    if cached is None:
        cached = mobius(jclass_poset(green_relations(S)))
        S._cache["mobius"] = cached
    return cached


def subgroup_tables(
    S: FiniteSemigroup, overrides: Mapping[int, CharacterTable] | None = None
) -> dict[int, CharacterTable]:
    """A character table for the maximal subgroup of every regular J-class,
    from ``overrides`` first and built-in constructions otherwise."""
    overrides = dict(overrides or {})
    out = {}
    for rec in jclass_records(S):
        if not rec.regular:
            continue
        if rec.index in overrides:
            T = overrides[rec.index]
            if T.group.table != rec.group.table:
                raise PreconditionError(f"table for J-class {rec.index} is for a different group")
            out[rec.index] = T
            continue
        T = builtin_table(rec.group)
        if T is None:
            raise PreconditionError(
                f"no character table for the maximal subgroup (order {rec.group.order}) of J-class {rec.index}"
            )
        out[rec.index] = T
    return out


def vertex_list(S: FiniteSemigroup, tables: Mapping[int, CharacterTable]) -> list[tuple[int, object]]:
    """(J-class, label) pairs, J-classes in principal order."""
    green = green_relations(S)
    return [(j, lab) for j in green.principal_order if j in tables for lab in tables[j].labels]


@dataclass(frozen=True)
class CartanMatrix:
    vertices: tuple[tuple[int, object], ...]
    entries: tuple[tuple[int, ...], ...]


def cartan_closed_form(S: FiniteSemigroup, tables: Mapping[int, CharacterTable]) -> CartanMatrix:
    """Rows (J_i, V) and columns (J_l, W) in principal order; the entry is
    the multiplicity of the simple (J_i, V) in the projective induced from
    (J_l, W), evaluated without forming the induced character."""
    require_rrbg_monoid(S)
    green = green_relations(S)
    mu = _mobius(S)
    t = S.table
    verts = vertex_list(S, tables)
    rows = []
    for i, vlab in verts:
        rec_i = jclass_record(S, i)
        inv = inverses(rec_i.group)
        chi_v = tables[i].character(vlab)
        row = []
        for ell, wlab in verts:
            if i == ell:
                row.append(1 if vlab == wlab else 0)
                continue
            if not green.j_less(ell, i):
                row.append(0)
                continue
            rec_l = jclass_record(S, ell)
            pos_l = group_positions(rec_l)
            chi_w = tables[ell].character(wlab)
            mids = [m for m in range(green.num_j) if green.j_leq[ell][m] and green.j_leq[m][i]]
            total = Fraction(0)
            for k, g in enumerate(rec_i.max_subgroup):
                inner = Fraction(0)
                for m in mids:
                    em = jclass_record(S, m).e
                    ge = t[g][em]
                    acc = Fraction(0)
                    for e in rec_l.idempotents:
                        if omega_power(S, t[e][ge]) == e:
                            acc = acc + chi_w(pos_l[t[t[e][g]][rec_l.e]])
                    if acc:
                        inner = inner + mu(m, i) * acc
                if inner:
                    total = total + chi_v(inv[k]) * inner
            val = simplify(total / rec_i.group.order)
            try:
                row.append(as_integer(val, "Cartan entry"))
            except ValueError as exc:
                raise ConsistencyError(str(exc)) from exc
        rows.append(tuple(row))
    return CartanMatrix(tuple(verts), tuple(rows))


def cartan_oracle(S: FiniteSemigroup, tables: Mapping[int, CharacterTable]) -> CartanMatrix:
    """Every entry from the multiplicity formula applied to induced characters."""
    verts = vertex_list(S, tables)
    thetas = {(ell, w): theta_of_induced(S, ell, tables[ell], w) for ell, w in verts}
    rows = [
        tuple(multiplicity(S, thetas[(ell, w)], i, tables[i], v) for ell, w in verts)
        for i, v in verts
    ]
    return CartanMatrix(tuple(verts), tuple(rows))


def cartan_matrix(
    S: FiniteSemigroup, tables: Mapping[int, CharacterTable], route: str = "closed"
) -> CartanMatrix:
    """``route`` is "closed", "oracle" or "both" (both must agree)."""
    if route == "closed":
        return cartan_closed_form(S, tables)
    if route == "oracle":
        return cartan_oracle(S, tables)
    if route == "both":
        a, b = cartan_closed_form(S, tables), cartan_oracle(S, tables)
        if a != b:
            diff = next(
                (a.vertices[r], a.vertices[c])
                for r in range(len(a.entries))
                for c in range(len(a.entries))
                if a.entries[r][c] != b.entries[r][c]
            )
            raise ConsistencyError(f"Cartan routes disagree at {diff}")
        return a
    raise ValueError(f"unknown route {route!r}")


def is_unipotent(S: FiniteSemigroup, C: CartanMatrix) -> bool:
    """Diagonal 1, and nonzero off-diagonal entries only where the column
    apex lies strictly J-below the row apex."""
    green = green_relations(S)
    for r, (i, v) in enumerate(C.vertices):
        for c, (ell, w) in enumerate(C.vertices):
            x = C.entries[r][c]
            if r == c:
                if x != 1:
                    return False
            elif x and not green.j_less(ell, i):
                return False
    return True


# ---------------------------------------------------------------------------
# Nico's bound


def _identity_solvable(S: FiniteSemigroup, J: Sequence[int], side: str) -> bool:
    """Is there u in kJ^0 with u*y = y (side "left") or y*u = y ("right")
    for all y in J?  Products leaving J count as zero."""
    idx = {x: k for k, x in enumerate(J)}
    n = len(J)
    t = S.table
    rows, rhs = [], []
    for y in J:
        eqs = [[0] * n for _ in range(n)]
        for kx, x in enumerate(J):
            z = t[x][y] if side == "left" else t[y][x]
            if z in idx:
                eqs[idx[z]][kx] += 1
        for kz in range(n):
            rows.append(eqs[kz])
            rhs.append(1 if J[kz] == y else 0)
    return solve(rows, rhs, n) is not None


def nico_sigma(S: FiniteSemigroup, j: int) -> int:
    """0 if kJ^0 has an identity, 1 if only a one-sided one, 2 otherwise."""
    J = green_relations(S).j_classes[j]
    left = _identity_solvable(S, J, "left")
    right = _identity_solvable(S, J, "right")
    if left and right:
        return 0
    if left or right:
        return 1
    return 2


@dataclass(frozen=True)
class NicoData:
    sigma: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]
    bound: int


def nico_data(S: FiniteSemigroup) -> NicoData:
    green = green_relations(S)
    sigma = tuple(nico_sigma(S, j) for j in range(green.num_j))
    chains = maximal_chains(jclass_poset(green))
    bound = max(sum(sigma[j] for j in ch) for ch in chains)
    return NicoData(sigma, tuple(tuple(c) for c in chains), bound)


def nico_bound(S: FiniteSemigroup) -> int:
    return nico_data(S).bound


__all__ = [
    "CartanMatrix",
    "NicoData",
    "SandwichMatrix",
    "SchutzRep",
    "SemisimpleQuotientData",
    "SimpleModuleRecord",
    "algebra_product",
    "cartan_closed_form",
    "cartan_matrix",
    "cartan_oracle",
    "group_positions",
    "is_directed",
    "is_unipotent",
    "left_invertible_over_group_algebra",
    "multiplicity",
    "nico_bound",
    "nico_data",
    "nico_sigma",
    "regular_expansion",
    "sandwich_matrix",
    "schutzenberger_rep",
    "semisimple_quotient",
    "simple_dimension",
    "simple_modules",
    "subgroup_tables",
    "theta_idempotent_formula",
    "theta_of_induced",
    "vertex_list",
]
