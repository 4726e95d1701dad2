"""Command line front end.

Subcommands:
  enumerate   build one poset and dump it (json, csv, or DOT Hasse diagram)
  verify      run checks over a sweep of (group, lattice, mu) entries
  graph       emit the codimension <= 1 stratum graph above an element
  irr         compare the two-point formula against brute force for one element

Exit codes: 0 success / all checks pass, 1 a check or comparison failed,
2 configuration error, 3 an enumeration blew its element cap.

Elements are addressed as WORD@LABEL, the word using affine letters 0..rank
joined by dots ("e" for the empty word) and the label being the class
coordinates joined by commas; "@LABEL" may be dropped when the label is
zero.  Example: "0.2@0,1".
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .admissible import AdmissiblePoset, CapExceededError, StrataGraph, build_admissible
from .affine import (
    AffineElt,
    element_from_word,
    element_to_obj,
    length,
    omega_label,
    reduced_word,
)
from .rootsys import RootSystem, build_root_system
from .verifier import SweepEntry, default_sweep, run_sweep, sweep_exit_code

DEFAULT_CAP = 500_000


class ConfigError(ValueError):
    pass


# -- element addresses -------------------------------------------------------


def element_address(x: AffineElt) -> str:
    word, label = reduced_word(x)
    text = ".".join(str(i) for i in word) if word else "e"
    if any(label):
        text += "@" + ",".join(str(a) for a in label)
    return text


def parse_element_address(rs: RootSystem, text: str) -> AffineElt:
    body, _, tail = text.partition("@")
    try:
        label = tuple(int(a) for a in tail.split(",")) if tail else (0,) * rs.dim
        if body in ("", "e"):
            word: tuple[int, ...] = ()
        else:
            word = tuple(int(i) for i in body.split("."))
        return element_from_word(rs, word, label)
    except ValueError as exc:
        raise ConfigError(f"bad element address {text!r}: {exc}") from exc


def _parse_mu(text: str, rs: RootSystem) -> tuple[int, ...]:
    try:
        mu = tuple(int(a) for a in text.split(","))
        return rs.validate_coweight(mu)
    except ValueError as exc:
        raise ConfigError(f"bad --mu {text!r} for {rs.label}: {exc}") from exc


def _build(args) -> tuple[RootSystem, AdmissiblePoset]:
    try:
        rs = build_root_system(args.group, args.lattice)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    mu = _parse_mu(args.mu, rs)
    poset = build_admissible(rs, mu, cap=args.cap)
    return rs, poset


# -- output rendering ---------------------------------------------------------


def _emit(out: str | None, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _poset_obj(rs: RootSystem, poset: AdmissiblePoset) -> dict:
    index = {x: i for i, x in enumerate(poset.elements)}
    hist: dict[str, int] = {}
    rows = []
    for x in poset.elements:
        l = length(x)
        hist[str(l)] = hist.get(str(l), 0) + 1
        rows.append({
            "element": element_to_obj(x),
            "length": l,
            "codim": poset.max_length - l,
            "address": element_address(x),
        })
    covers = []
    for y in poset.elements:
        for refl, x in poset.covers_down.get(y, ()):
            covers.append([index[y], index[x], {
                "root": list(rs.pos_root_coords[refl.root_index]),
                "level": refl.level,
            }])
    covers.sort(key=lambda c: (c[0], c[1], c[2]["root"], c[2]["level"]))
    return {
        "group": rs.group_summary(),
        "mu": list(poset.mu),
        "size": len(poset),
        "max_length": poset.max_length,
        "extremal_translations": [list(nu) for nu in poset.translations],
        "length_histogram": hist,
        "elements": rows,
        "covers": covers,
    }


def _poset_csv(rs: RootSystem, poset: AdmissiblePoset) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["address", "length", "codim", "is_translation",
                     "finite_word", "translation", "class_label"])
    for x in poset.elements:
        obj = element_to_obj(x)
        writer.writerow([
            element_address(x),
            length(x),
            poset.max_length - length(x),
            int(not obj["finite_word"]),
            ".".join(str(i) for i in obj["finite_word"]),
            " ".join(str(a) for a in x.translation),
            " ".join(str(a) for a in omega_label(x)),
        ])
    return buf.getvalue()


def _refl_label(rs: RootSystem, refl) -> str:
    coords = ",".join(str(a) for a in rs.pos_root_coords[refl.root_index])
    return f"({coords}):{refl.level}"


def _hasse_dot(rs: RootSystem, poset: AdmissiblePoset) -> str:
    index = {x: i for i, x in enumerate(poset.elements)}
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for x, i in index.items():
        shape = ' shape=box' if not element_to_obj(x)["finite_word"] else ""
        lines.append(f'  n{i} [label="{element_address(x)} ({length(x)})"{shape}];')
    for y in poset.elements:
        for refl, x in poset.covers_down.get(y, ()):
            lines.append(
                f'  n{index[x]} -> n{index[y]} '
                f'[label="{_refl_label(rs, refl)}"];')
    lines.append("}")
    return "\n".join(lines)


def _strata_obj(g: StrataGraph) -> dict:
    return {
        "base": element_to_obj(g.base),
        "base_address": element_address(g.base),
        "base_codim": g.base_codim,
        "codim0": [list(nu) for nu in g.codim0],
        "codim1": [element_to_obj(z) for z in g.codim1],
        "edges": [list(e) for e in g.edges],
        "components": g.component_count(),
        "connected": g.is_connected(),
    }


def _strata_dot_body(g: StrataGraph, prefix: str) -> list[str]:
    lines = []
    for i, nu in enumerate(g.codim0):
        coords = ",".join(str(a) for a in nu)
        lines.append(f'  {prefix}t{i} [label="t({coords})" shape=box];')
    for i, z in enumerate(g.codim1):
        lines.append(f'  {prefix}c{i} [label="{element_address(z)}"];')
    for e, t in g.edges:
        lines.append(f"  {prefix}c{e} -- {prefix}t{t};")
    return lines


def _strata_dot(graphs: list[StrataGraph]) -> str:
    lines = ["graph strata {"]
    if len(graphs) == 1:
        lines += _strata_dot_body(graphs[0], "")
    else:
        for k, g in enumerate(graphs):
            lines.append(f"  subgraph cluster_{k} {{")
            lines.append(f'    label="{element_address(g.base)}";')
            lines += ["  " + ln for ln in _strata_dot_body(g, f"g{k}_")]
            lines.append("  }")
    lines.append("}")
    return "\n".join(lines)


def _reports_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["group", "lattice", "mu", "poset_size", "check",
                     "status", "witnesses", "details"])
    for rep in reports:
        entry = rep["entry"]
        base = [entry["group"], entry["lattice"] or "",
                " ".join(str(a) for a in entry["mu"]),
                rep.get("poset_size", "")]
        if rep["error"]:
            writer.writerow(base + ["(error)", rep["error"]["kind"], 0,
                                    rep["error"]["message"]])
            continue
        for check in rep["checks"]:
            details = ";".join(f"{k}={v}" for k, v in
                               sorted(check["details"].items()))
            writer.writerow(base + [check["name"], check["status"],
                                    len(check["witnesses"]), details])
    return buf.getvalue()


# -- subcommands --------------------------------------------------------------


def cmd_enumerate(args) -> int:
    rs, poset = _build(args)
    if args.format == "json":
        text = json.dumps(_poset_obj(rs, poset), indent=2)
    elif args.format == "csv":
        text = _poset_csv(rs, poset)
    else:
        text = _hasse_dot(rs, poset)
    _emit(args.out, text)
    return 0


def _collect_entries(args) -> tuple[list[SweepEntry], dict]:
    options: dict = {}
    if args.config:
        entries, options = _read_config(args.config)
    elif args.default:
        entries = list(default_sweep())
    elif args.group and args.mu:
        entries = [SweepEntry(args.group, args.lattice,
                              tuple(int(a) for a in args.mu.split(",")))]
    else:
        raise ConfigError(
            "verify needs --config FILE, --default, or --group with --mu")
    return entries, options


def _read_config(path: str) -> tuple[list[SweepEntry], dict]:
    entries = []
    options: dict = {}
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        where = f"{path}:{lineno}"
        if parts[0] == "option":
            if len(parts) != 3 or parts[1] not in ("threads", "cap"):
                raise ConfigError(f"{where}: expected 'option threads|cap N'")
            try:
                options[parts[1]] = int(parts[2])
            except ValueError as exc:
                raise ConfigError(f"{where}: {exc}") from exc
            continue
        if len(parts) != 3:
            raise ConfigError(f"{where}: expected 'GROUP LATTICE MU'")
        group, lattice, mu_text = parts
        try:
            mu = tuple(int(a) for a in mu_text.split(","))
        except ValueError as exc:
            raise ConfigError(f"{where}: bad mu {mu_text!r}") from exc
        entries.append(SweepEntry(group, None if lattice == "-" else lattice, mu))
    if not entries:
        raise ConfigError(f"{path}: no sweep entries")
    return entries, options


def _validate_entries(entries: list[SweepEntry]) -> None:
    for entry in entries:
        try:
            rs = build_root_system(entry.group, entry.lattice)
            rs.validate_coweight(entry.mu)
        except ValueError as exc:
            raise ConfigError(
                f"bad sweep entry {entry.group} {entry.lattice or '-'} "
                f"{','.join(str(a) for a in entry.mu)}: {exc}") from exc


def cmd_verify(args) -> int:
    entries, options = _collect_entries(args)
    _validate_entries(entries)
    threads = args.threads if args.threads is not None else options.get("threads", 1)
    cap = args.cap if args.cap is not None else options.get("cap", DEFAULT_CAP)
    only = [t for t in (args.only or "").split(",") if t] or None
    try:
        reports = run_sweep(entries, cap=cap, threads=threads, only=only,
                            with_timing=not args.no_timing)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.format == "csv":
        text = _reports_csv(reports)
    else:
        text = json.dumps(reports, indent=2)
    _emit(args.out, text)
    return sweep_exit_code(reports)


def cmd_graph(args) -> int:
    rs, poset = _build(args)
    if args.x:
        x = parse_element_address(rs, args.x)
        if x not in poset:
            raise ConfigError(f"element {args.x!r} is not in the poset")
        graphs = [poset.codim_le1_graph(x)]
    else:
        graphs = [poset.codim_le1_graph(x) for x in poset.elements_of_codim(1)]
        if not graphs:
            raise ConfigError("poset has no codimension-one elements")
    if args.format == "json":
        body = [_strata_obj(g) for g in graphs]
        text = json.dumps(body[0] if args.x else body, indent=2)
    else:
        text = _strata_dot(graphs)
    _emit(args.out, text)
    return 0


def cmd_irr(args) -> int:
    rs, poset = _build(args)
    x = parse_element_address(rs, args.x)
    if x not in poset:
        raise ConfigError(f"element {args.x!r} is not in the poset")
    try:
        case, pair = poset.formula_decomposition(x)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    brute = poset.irr_bruteforce(x)
    agree = frozenset(pair) == brute
    text = json.dumps({
        "element": element_to_obj(x),
        "address": element_address(x),
        "codim": poset.codimension(x),
        "case": case,
        "formula": [list(nu) for nu in pair],
        "bruteforce": sorted(list(nu) for nu in brute),
        "agree": agree,
    }, indent=2)
    _emit(args.out, text)
    return 0 if agree else 1


# -- argument plumbing --------------------------------------------------------


def _add_build_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", required=True,
                   help="group descriptor, e.g. A1, C2, G2, GL3")
    p.add_argument("--lattice", choices=["Qv", "Pv", "GL"], default=None,
                   help="cocharacter lattice (default Qv, or GL for GL groups)")
    p.add_argument("--mu", required=True,
                   help="dominant coweight, comma-separated lattice coordinates")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="abort if the poset exceeds this many elements")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kradm",
        description="Enumerate and verify admissible-set combinatorics in "
                    "extended affine Weyl groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="build one poset and dump it")
    _add_build_args(p)
    p.add_argument("--format", choices=["json", "csv", "dot"], default="json")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run checks over a sweep")
    p.add_argument("--config", default=None,
                   help="sweep file: 'GROUP LATTICE MU' lines, # comments, "
                        "and 'option threads|cap N' lines")
    p.add_argument("--default", action="store_true",
                   help="run the built-in default sweep")
    p.add_argument("--group", default=None)
    p.add_argument("--lattice", choices=["Qv", "Pv", "GL"], default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--only", default=None,
                   help="comma-separated check name fragments to run")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall-time fields for byte-reproducible output")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph",
                       help="stratum graph above one element (or all codim-1)")
    _add_build_args(p)
    p.add_argument("--x", default=None, help="element address, e.g. 0.2@0,1")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("irr",
                       help="extremal translations above a codim-1 element, "
                            "formula vs brute force")
    _add_build_args(p)
    p.add_argument("--x", required=True, help="element address")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_irr)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"kradm: {exc}", file=sys.stderr)
        return 3
    except ConfigError as exc:
        print(f"kradm: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"kradm: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
