"""Command-line front end.

Exit codes are a stable contract: 0 = success (for exclude: EXCLUDED; for
survey: zero undecided cells), 10 = an UNDECIDED verdict, 2 = usage or data
error.  ``--format json`` emits the modules' structured output with a
schema_version field; text mode prints the same numbers human-readably.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import bounds as bmod
from . import genbounds as gmod
from . import quadfields as qmod
from .catalog import CatalogError, load_catalog
from .engine import (
    EXCLUDED,
    UNDECIDED,
    Engine,
    EngineError,
    Scenario,
)
from .groups import CapExceeded, GroupError, closure, cyclic_group, dihedral_group

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_UNDECIDED = 10
EXIT_ERROR = 2

ALIASES = {
    "Z5": "C5",
    "A_5": "A5",
    "S_5": "S5",
    "A_6": "A6",
    "PSL27": "PSL(2,7)",
    "PGL27": "PGL(2,7)",
    "PSL28": "PSL(2,8)",
}


def _resolve_group(engine: Engine, name: str):
    """Catalog entry groups plus dynamically built Zn / dihedral-n."""
    canonical = ALIASES.get(name, name)
    entry = engine.catalog.get(canonical)
    if entry is not None:
        return canonical, entry.group
    m = re.fullmatch(r"[ZC](\d+)", name)
    if m:
        return name, cyclic_group(int(m.group(1)))
    m = re.fullmatch(r"dihedral-(\d+)", name)
    if m:
        return name, dihedral_group(int(m.group(1)))
    return None, None


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _engine(args) -> Engine:
    catalog = load_catalog(args.catalog) if args.catalog else load_catalog()
    tables = bmod.load_bound_tables(args.bounds) if args.bounds else None
    return Engine(catalog, tables)


def _report_text(rep) -> str:
    lines = [
        f"group {rep.scenario.group}, p = {rep.scenario.p}, "
        f"tame={rep.scenario.tame} totally_real={rep.scenario.totally_real} "
        f"grh={rep.scenario.grh}",
        f"verdict: {rep.verdict}",
    ]
    for step in rep.trace:
        lines.append(f"  [{step.rule}] {step.conclusion}: {step.description}")
        if step.citation:
            lines.append(f"        cite: {step.citation}")
        lines.append(f"        data: {json.dumps(step.data, sort_keys=True)}")
    return "\n".join(lines)


def cmd_exclude(args) -> int:
    eng = _engine(args)
    name = ALIASES.get(args.group, args.group)
    if eng.catalog.get(name) is None:
        print(f"error: unknown group {args.group!r}", file=sys.stderr)
        return EXIT_ERROR
    entry = eng.catalog.get(name)
    tame = args.tame or (args.tame_auto and entry.order % args.prime != 0)
    sc = Scenario(
        name, args.prime, tame=tame, totally_real=args.totally_real, grh=args.grh
    )
    rep = eng.exclude(sc)
    _emit(args, rep.to_dict(), _report_text(rep))
    return EXIT_OK if rep.verdict == EXCLUDED else EXIT_UNDECIDED


def cmd_survey(args) -> int:
    eng = _engine(args)
    sv = eng.survey(
        max_order=args.max_order,
        prime_bound=args.prime_bound,
        tame_auto=True,
        totally_real=args.totally_real,
        grh=args.grh,
    )
    payload = sv.to_dict()
    if args.full:
        payload["reports"] = [
            rep.to_dict() for _, rep in sorted(sv.table.items())
        ]
    if args.format == "json":
        _emit(args, payload, "")
    else:
        s = sv.summary()
        lines = [
            f"survey: orders < {args.max_order}, primes < {args.prime_bound}",
            f"cells: {s['cells']}  excluded: {s['excluded']}  undecided: {s['undecided']}",
            f"by rule: {s['by_rule']}",
        ]
        if sv.undecided:
            lines.append("undecided cells: " + ", ".join(f"{g}@{p}" for g, p in sv.undecided))
        else:
            lines.append("all excluded")
        if args.full:
            for (g, p), rep in sorted(sv.table.items()):
                lines.append(f"  {g}@{p}: {rep.verdict} ({rep.fired_rule() or 'none'})")
        print("\n".join(lines))
    return EXIT_OK if sv.all_excluded else EXIT_UNDECIDED


def cmd_dgen(args) -> int:
    eng = _engine(args)
    name, G = _resolve_group(eng, args.group)
    if G is None:
        print(f"error: unknown group {args.group!r}", file=sys.stderr)
        return EXIT_ERROR
    d = G.d_min_generators()
    _emit(
        args,
        {"group": name, "order": G.order, "d_min_generators": d},
        f"d({name}) = {d}",
    )
    return EXIT_OK


def cmd_catalog(args) -> int:
    eng = _engine(args)
    rows = []
    for e in eng.catalog:
        if args.order is not None and e.order != args.order:
            continue
        if args.nonsolvable and not e.has_tag("nonsolvable"):
            continue
        rows.append(
            {
                "name": e.name,
                "order": e.order,
                "degree": e.degree,
                "tags": sorted(e.tags),
            }
        )
    text = "\n".join(
        f"{r['name']:<22} order {r['order']:>4}  degree {r['degree']:>3}  {','.join(r['tags'])}"
        for r in rows
    )
    _emit(args, {"entries": rows}, text or "(no matching entries)")
    return EXIT_OK


def cmd_bounds_rd(args) -> int:
    tables = bmod.load_bound_tables(args.bounds) if args.bounds else bmod.default_tables()
    val = bmod.odlyzko_lower(args.degree, args.flavor, tables)
    _emit(
        args,
        {
            "degree": args.degree,
            "flavor": args.flavor,
            "lower_bound": f"{val.numerator}/{val.denominator}",
            "lower_bound_float": float(val),
        },
        f"root discriminant lower bound at degree {args.degree} ({args.flavor}): "
        f"{val} = {float(val):.4g}",
    )
    return EXIT_OK


def cmd_classgroup(args) -> int:
    try:
        data = qmod.form_class_group(args.disc)
    except qmod.QuadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit(
        args,
        {
            "discriminant": args.disc,
            "h": data.h,
            "invariant_factors": list(data.invariants.invariant_factors),
            "reduced_forms": [[f.a, f.b, f.c] for f in data.forms],
        },
        f"h({args.disc}) = {data.h}, invariant factors "
        f"{list(data.invariants.invariant_factors) or '(trivial)'}",
    )
    return EXIT_OK


def cmd_rayclass(args) -> int:
    try:
        h = qmod.ray_class_number(args.disc, args.modulus)
    except qmod.QuadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit(
        args,
        {"discriminant": args.disc, "modulus": args.modulus, "ray_class_number": h},
        f"ray class number of disc {args.disc} for modulus ({args.modulus}): {h}",
    )
    return EXIT_OK


def cmd_harbater(args) -> int:
    try:
        inst = gmod.HarbaterInstance(args.d, args.n, Fraction(args.c), tame=not args.wild)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    verdict = gmod.harbater_check(inst)
    _emit(
        args,
        {
            "d": args.d,
            "n": args.n,
            "C": args.c,
            "verdict": verdict.value,
        },
        f"d <= ln(n) + C for (d={args.d}, n={args.n}, C={args.c}): {verdict.value}",
    )
    return EXIT_OK


def cmd_tame23(args) -> int:
    eng = _engine(args)
    rep = eng.tame_23_analysis()
    text_lines = ["tame ramification restricted to {2, 3}:"]
    for s in rep.steps:
        text_lines.append(f"  [{s.rule}] {s.conclusion}: {s.description}")
    text_lines.append(f"conclusion: {rep.conclusion}")
    _emit(args, rep.to_dict(), "\n".join(text_lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ramgal",
        description="Exact verification toolkit for Galois groups with restricted ramification",
    )
    ap.add_argument("--catalog", default=None, help="catalog file (default: packaged data or RAMGAL_CATALOG)")
    ap.add_argument("--bounds", default=None, help="bound-table file (default: packaged data or RAMGAL_BOUNDS)")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exclude", help="run the exclusion pipeline for one (group, prime) cell")
    p.add_argument("--group", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--tame", action="store_true", help="assert tame ramification")
    p.add_argument("--tame-auto", action="store_true", help="set tame when p does not divide |G|")
    p.add_argument("--totally-real", action="store_true")
    p.add_argument("--grh", action="store_true")
    p.set_defaults(func=cmd_exclude)

    p = sub.add_parser("survey", help="exclude every (non-solvable group, prime) cell")
    p.add_argument("--max-order", type=int, default=660)
    p.add_argument("--prime-bound", type=int, default=37)
    p.add_argument("--tame-auto", action="store_true", default=True)
    p.add_argument("--totally-real", action="store_true")
    p.add_argument("--grh", action="store_true")
    p.add_argument("--full", action="store_true", help="emit per-cell reports")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("dgen", help="minimal number of generators")
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_dgen)

    p = sub.add_parser("catalog", help="catalog operations")
    csub = p.add_subparsers(dest="catalog_command", required=True)
    pl = csub.add_parser("list")
    pl.add_argument("--order", type=int, default=None)
    pl.add_argument("--nonsolvable", action="store_true")
    pl.set_defaults(func=cmd_catalog)

    p = sub.add_parser("bounds", help="bound table operations")
    bsub = p.add_subparsers(dest="bounds_command", required=True)
    pr = bsub.add_parser("rd")
    pr.add_argument("--degree", type=int, required=True)
    pr.add_argument("--flavor", choices=("general", "totally_real", "grh"), default="general")
    pr.set_defaults(func=cmd_bounds_rd)

    p = sub.add_parser("classgroup", help="imaginary quadratic form class group")
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("rayclass", help="ray class number for a principal modulus")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--modulus", type=int, required=True)
    p.set_defaults(func=cmd_rayclass)

    p = sub.add_parser("harbater", help="check d <= ln(n) + C with certified enclosures")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", default="0", help="constant C as a rational, e.g. 1 or 3/2")
    p.add_argument("--wild", action="store_true")
    p.set_defaults(func=cmd_harbater)

    p = sub.add_parser("tame23", help="the joint tame {2,3} analysis")
    p.set_defaults(func=cmd_tame23)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (EngineError, CatalogError, GroupError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
