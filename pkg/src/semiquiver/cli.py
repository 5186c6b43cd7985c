"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 precondition not met, 3 internal
consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, TextIO

from . import constructions as cons
from .characters import CharacterTable, builtin_table, table_from_json, transport_table
from .errors import ConsistencyError, InputError, PreconditionError, SemiquiverError
from .groups import cyclic_group, find_isomorphism, group_from_json
from .poset import jclass_poset
from .quiver import emit_dot, emit_json, emit_text, full_quiver
from .reptheory import (
    cartan_matrix,
    group_positions,
    is_unipotent,
    left_invertible_over_group_algebra,
    nico_data,
    regular_expansion,
    require_regular,
    sandwich_matrix,
    subgroup_tables,
)
from .semigroup import (
    DEFAULT_CAP,
    FiniteSemigroup,
    green_relations,
    is_regular,
    is_rrbg,
    jclass_records,
    load_semigroup,
    require_monoid,
)

COMMANDS = ("analyze", "directed", "quiver", "cartan", "hsiao", "gbar", "classify", "nico")


@dataclass
class RunConfig:
    command: str
    input: Path | None = None
    char_tables: list[str] = field(default_factory=list)
    format: str = "text"
    oracle: bool = False
    cap: int = DEFAULT_CAP
    mode: str = "closed"
    n: int | None = None
    generators: Path | None = None
    group_table: Path | None = None
    adjoin_identity: bool = False


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semiquiver", description="Representation theory of finite semigroups.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", type=Path, help="semigroup JSON file")
    p.add_argument(
        "--char-table",
        action="append",
        default=[],
        metavar="[INDEX=]FILE",
        help="character table for the maximal subgroup of J-class INDEX, or a table with an embedded group",
    )
    p.add_argument("--format", choices=("dot", "json", "text"), default="text")
    p.add_argument("--oracle", action="store_true", help="cross-check with an independent computation")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="element cap for enumeration")
    p.add_argument("--mode", choices=("closed", "general", "both"), default="closed")
    p.add_argument("--n", type=int)
    p.add_argument("--generators", type=Path, help='permutation generators {"degree": m, "maps": [...]}')
    p.add_argument("--group-table", type=Path, help="group (semigroup-file format) for hsiao")
    p.add_argument("--adjoin-identity", action="store_true")
    return p


def parse_args(argv: Sequence[str] | None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        command=ns.command,
        input=ns.input,
        char_tables=ns.char_table,
        format=ns.format,
        oracle=ns.oracle,
        cap=ns.cap,
        mode=ns.mode,
        n=ns.n,
        generators=ns.generators,
        group_table=ns.group_table,
        adjoin_identity=ns.adjoin_identity,
    )


# ---------------------------------------------------------------------------
# Input helpers


def _read_json(path: Path, what: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {what} {path}: {exc}") from exc


def _semigroup(cfg: RunConfig) -> FiniteSemigroup:
    if cfg.input is None:
        raise InputError("--input is required for this command")
    S = load_semigroup(cfg.input, cap=cfg.cap)
    if cfg.adjoin_identity:
        S = require_monoid(S, adjoin=True)
    elif S.identity is None and S.find_identity() is not None:
        S = require_monoid(S)
    return S


def _generators(cfg: RunConfig) -> tuple[int, list]:
    if cfg.generators is None:
        raise InputError("--generators is required for this command")
    data = _read_json(cfg.generators, "generator file")
    if isinstance(data, dict) and "generators" in data:
        data = data["generators"]
    if not isinstance(data, dict) or "degree" not in data or "maps" not in data:
        raise InputError("generator file needs 'degree' and 'maps'")
    try:
        return int(data["degree"]), [list(map(int, g)) for g in data["maps"]]
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad generator file: {exc}") from exc


def _table_overrides(S: FiniteSemigroup, args: Sequence[str]) -> dict[int, CharacterTable]:
    """Parse --char-table values.  ``INDEX=FILE``: representatives are
    semigroup elements of that J-class's maximal subgroup, unless the file
    embeds its own group.  ``FILE``: the file must embed its group, and the
    table is used for every maximal subgroup isomorphic to it."""
    recs = [r for r in jclass_records(S) if r.regular]
    out: dict[int, CharacterTable] = {}
    for arg in args:
        key, sep, path = arg.partition("=")
        if not sep:
            key, path = None, arg
        data = _read_json(Path(path), "character table")
        if key is not None:
            try:
                j = int(key)
            except ValueError as exc:
                raise InputError(f"--char-table key {key!r} is not a J-class index") from exc
            rec = next((r for r in recs if r.index == j), None)
            if rec is None:
                raise InputError(f"--char-table: J-class {j} does not exist or is not regular")
            if isinstance(data, dict) and "group" in data:
                out[j] = _match(table_from_json(data), rec.group, j)
            else:
                out[j] = table_from_json(data, group=rec.group, element_map=group_positions(rec))
        else:
            if not (isinstance(data, dict) and "group" in data):
                raise InputError(f"{path}: a table without INDEX= must embed its 'group'")
            T = table_from_json(data)
            for rec in recs:
                if rec.group.order == T.order and rec.index not in out:
                    phi = find_isomorphism(rec.group, T.group)
                    if phi is not None:
                        out[rec.index] = transport_table(T, rec.group, phi)
    return out


def _match(T: CharacterTable, G: FiniteSemigroup, j: int) -> CharacterTable:
    phi = find_isomorphism(G, T.group)
    if phi is None:
        raise InputError(f"character table group is not isomorphic to the maximal subgroup of J-class {j}")
    return transport_table(T, G, phi)


def _tables(S: FiniteSemigroup, cfg: RunConfig) -> dict[int, CharacterTable]:
    return subgroup_tables(S, _table_overrides(S, cfg.char_tables))


# ---------------------------------------------------------------------------
# Commands


def _principal_line(S: FiniteSemigroup) -> str:
    return "principal order: " + " < ".join(f"J{j}" for j in green_relations(S).principal_order)


def cmd_analyze(cfg: RunConfig, out: TextIO) -> None:
    S = _semigroup(cfg)
    green = green_relations(S)
    poset = jclass_poset(green)
    covers = poset.covers()
    regular = is_regular(S)
    info = {
        "order": S.order,
        "identity": S.identity,
        "regular": regular,
        "rrbg": is_rrbg(S),
        "idempotents": len(S.idempotents()),
        "r_classes": len(green.r_classes),
        "l_classes": len(green.l_classes),
        "h_classes": len(green.h_classes),
        "principal_order": list(green.principal_order),
        "jclasses": [
            {
                "index": r.index,
                "size": len(r.elements),
                "regular": r.regular,
                "idempotent": r.e,
                "group_order": r.group.order if r.regular else None,
                "l_transversal": list(r.l_transversal) if r.regular else None,
                "r_transversal": list(r.r_transversal) if r.regular else None,
            }
            for r in jclass_records(S)
        ],
        "covers": [list(c) for c in covers],
    }
    if cfg.format == "json":
        out.write(json.dumps(info, indent=2) + "\n")
        return
    lines = [
        f"order: {S.order}",
        f"identity: {S.label(S.identity) if S.identity is not None else 'none'}",
        f"regular: {regular}",
        f"right regular band of groups: {info['rrbg']}",
        f"classes: R={len(green.r_classes)} L={len(green.l_classes)} J={green.num_j} H={len(green.h_classes)}",
        _principal_line(S),
    ]
    for r in jclass_records(S):
        extra = f" e={S.label(r.e)} |G|={r.group.order}" if r.regular else " (not regular)"
        lines.append(f"  J{r.index}: {len(r.elements)} elements{extra}")
    lines.append("covers: " + ", ".join(f"J{a}<J{b}" for a, b in covers))
    out.write("\n".join(lines) + "\n")


def cmd_directed(cfg: RunConfig, out: TextIO) -> None:
    S = _semigroup(cfg)
    require_regular(S)
    green = green_relations(S)
    rows = []
    for j in green.principal_order:
        C = sandwich_matrix(S, j)
        ell, r = C.shape
        rows.append(
            {
                "jclass": j,
                "shape": [ell, r],
                "expansion_rank": regular_expansion(C).rank(),
                "full_rank": r * C.jclass.group.order,
                "left_invertible": left_invertible_over_group_algebra(C),
            }
        )
    directed = all(r["left_invertible"] for r in rows)
    if cfg.format == "json":
        out.write(json.dumps({"directed": directed, "jclasses": rows}, indent=2) + "\n")
        return
    lines = [_principal_line(S)]
    for r in rows:
        lines.append(
            f"  J{r['jclass']}: sandwich {r['shape'][0]}x{r['shape'][1]}, expansion rank "
            f"{r['expansion_rank']} of {r['full_rank']}" + ("" if r["left_invertible"] else " (not left invertible)")
        )
    lines.append("directed" if directed else "not directed")
    out.write("\n".join(lines) + "\n")


def _require_quiver_input(S: FiniteSemigroup) -> None:
    require_regular(S)
    if S.identity is None:
        raise PreconditionError("a monoid is required (pass --adjoin-identity to add one)")


def _emit_quiver(q, S, cfg: RunConfig, out: TextIO, err: TextIO, note: str | None) -> None:
    if cfg.format == "dot":
        out.write(emit_dot(q))
    elif cfg.format == "json":
        out.write(emit_json(q))
    else:
        out.write(emit_text(q, green_relations(S).principal_order if S is not None else None))
    if note:
        (out if cfg.format == "text" else err).write(note + "\n")


def cmd_quiver(cfg: RunConfig, out: TextIO, err: TextIO) -> None:
    S = _semigroup(cfg)
    _require_quiver_input(S)
    q = full_quiver(S, _tables(S, cfg), oracle=cfg.oracle)
    _emit_quiver(q, S, cfg, out, err, "oracle agrees" if cfg.oracle else None)


def cmd_cartan(cfg: RunConfig, out: TextIO, err: TextIO) -> None:
    S = _semigroup(cfg)
    _require_quiver_input(S)
    C = cartan_matrix(S, _tables(S, cfg), route="both" if cfg.oracle else "closed")
    legend = [
        {"id": k, "jclass": j, "irr": str(lab), "display": f"J{j}:{lab}"} for k, (j, lab) in enumerate(C.vertices)
    ]
    if cfg.format == "json":
        out.write(json.dumps({"vertices": legend, "matrix": [list(r) for r in C.entries]}, indent=2) + "\n")
    else:
        lines = [_principal_line(S)]
        lines += [f"  [{v['id']}] {v['display']}" for v in legend]
        lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in C.entries]
        lines.append(f"unipotent: {is_unipotent(S, C)}")
        out.write("\n".join(lines) + "\n")
    if cfg.oracle:
        (out if cfg.format == "text" else err).write("oracle agrees\n")


def _hsiao_group_table(cfg: RunConfig) -> CharacterTable:
    G = group_from_json(_read_json(cfg.group_table, "group table")) if cfg.group_table else cyclic_group(1)
    if cfg.char_tables:
        if len(cfg.char_tables) != 1:
            raise InputError("hsiao takes at most one --char-table (for G)")
        path = cfg.char_tables[0].split("=", 1)[-1]
        data = _read_json(Path(path), "character table")
        if isinstance(data, dict) and "group" in data:
            return _match(table_from_json(data), G, 0)
        return table_from_json(data, group=G)
    T = builtin_table(G)
    if T is None:
        raise PreconditionError("no built-in character table for this group; supply --char-table")
    return T


def cmd_hsiao(cfg: RunConfig, out: TextIO, err: TextIO) -> None:
    if cfg.n is None or cfg.n < 1:
        raise InputError("--n must be a positive integer")
    T = _hsiao_group_table(cfg)
    note = None
    if cfg.mode == "closed":
        q = cons.hsiao_quiver_closed_form(cfg.n, T)
    else:
        q = cons.hsiao_general_quiver(cfg.n, T, oracle=cfg.oracle, cap=cfg.cap)
        if cfg.mode == "both":
            closed = cons.hsiao_quiver_closed_form(cfg.n, T)
            if not closed.same_as(q):
                raise ConsistencyError("closed form and general algorithm disagree")
            note = "closed form agrees"
        if cfg.oracle:
            note = (note + "; " if note else "") + "oracle agrees"
    _emit_quiver(q, None, cfg, out, err, note)


def cmd_gbar(cfg: RunConfig, out: TextIO, err: TextIO) -> None:
    degree, gens = _generators(cfg)
    T = None
    if cfg.char_tables:
        path = cfg.char_tables[0].split("=", 1)[-1]
        data = _read_json(Path(path), "character table")
        if not (isinstance(data, dict) and "group" in data):
            G = cons.permutation_group(degree, gens)
            T = table_from_json(data, group=G)
        else:
            T = table_from_json(data)
    q = cons.gbar_quiver(degree, gens, T)
    note = None
    if cfg.oracle:
        data = cons.gbar_setup(degree, gens, T)
        general = full_quiver(data.semigroup, data.tables, oracle=True)
        if not general.same_as(q):
            raise ConsistencyError("recipe and general algorithm disagree")
        note = "oracle agrees"
    _emit_quiver(q, None, cfg, out, err, note)


def cmd_classify(cfg: RunConfig, out: TextIO) -> None:
    degree, gens = _generators(cfg)
    rk = cons.rank(degree, gens)
    kind = cons.representation_type(degree, gens)
    if cfg.format == "json":
        out.write(json.dumps({"degree": degree, "rank": rk, "type": kind}) + "\n")
    else:
        out.write(f"rank: {rk}\ntype: {kind}\n")


def cmd_nico(cfg: RunConfig, out: TextIO) -> None:
    S = _semigroup(cfg)
    data = nico_data(S)
    if cfg.format == "json":
        out.write(
            json.dumps({"sigma": list(data.sigma), "chains": [list(c) for c in data.chains], "bound": data.bound}, indent=2)
            + "\n"
        )
        return
    lines = [_principal_line(S)]
    lines += [f"  sigma(J{j}) = {s}" for j, s in enumerate(data.sigma)]
    lines.append(f"global dimension bound: {data.bound}")
    out.write("\n".join(lines) + "\n")


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if cfg.command == "analyze":
            cmd_analyze(cfg, out)
        elif cfg.command == "directed":
            cmd_directed(cfg, out)
        elif cfg.command == "quiver":
            cmd_quiver(cfg, out, err)
        elif cfg.command == "cartan":
            cmd_cartan(cfg, out, err)
        elif cfg.command == "hsiao":
            cmd_hsiao(cfg, out, err)
        elif cfg.command == "gbar":
            cmd_gbar(cfg, out, err)
        elif cfg.command == "classify":
            cmd_classify(cfg, out)
        elif cfg.command == "nico":
            cmd_nico(cfg, out)
        else:
            raise InputError(f"unknown command {cfg.command}")
    except SemiquiverError as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
