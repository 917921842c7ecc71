"""Fixture catalog: permutation generators for the non-solvable groups of
order < 660 plus auxiliary groups, with load-time revalidation.

The file format is one record per line,

    name | order | degree | gen1 ; gen2 ; ... | tag,tag

with ``#`` comments and ``!census | order | count | provenance`` manifest
lines recording the expected per-order non-solvable counts.  The catalog is
authored once (scripts/build_catalog.py) and shipped as data; loading
recomputes orders and every claimed tag, so stale or tampered data fails
loudly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

from .groups import PermutationGroup, closure, parse_cycles

KNOWN_FLAG_TAGS = {
    "nonsolvable",
    "simple",
    "abelian",
    "cyclic",
    "nilpotent",
    "pgroup",
    "auxiliary",
}


class CatalogError(Exception):
    pass


class ParseError(CatalogError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class ValidationError(CatalogError):
    def __init__(self, entry: str, message: str):
        super().__init__(f"entry {entry!r}: {message}")
        self.entry = entry


@dataclass(frozen=True)
class CensusRow:
    order: int
    count: int
    provenance: str


@dataclass
class CatalogEntry:
    name: str
    order: int
    degree: int
    generator_cycles: tuple[str, ...]
    tags: frozenset[str]
    _group: PermutationGroup | None = field(default=None, repr=False)

    @property
    def group(self) -> PermutationGroup:
        if self._group is None:
            gens = [parse_cycles(c, self.degree) for c in self.generator_cycles]
            self._group = closure(gens, degree=self.degree)
        return self._group

    def has_tag(self, tag: str) -> bool:
        return tag in self.tags


@dataclass
class Catalog:
    entries: list[CatalogEntry]
    census: list[CensusRow]
    path: str | None = None

    def __post_init__(self):
        self._by_name = {e.name: e for e in self.entries}

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def get(self, name: str) -> CatalogEntry | None:
        return self._by_name.get(name)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def nonsolvable_of_order(self, n: int) -> list[CatalogEntry]:
        return [e for e in self.entries if e.order == n and e.has_tag("nonsolvable")]

    def nonsolvable_below(self, max_order: int) -> list[CatalogEntry]:
        return [
            e for e in self.entries if e.order < max_order and e.has_tag("nonsolvable")
        ]

    def census_expected(self, order: int) -> CensusRow | None:
        for row in self.census:
            if row.order == order:
                return row
        return None


def _parse_lines(lines, path=None) -> Catalog:
    entries: list[CatalogEntry] = []
    census: list[CensusRow] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("!census"):
            parts = [p.strip() for p in line.split("|")]
            if len(parts) != 4:
                raise ParseError(lineno, "census line needs 4 fields")
            try:
                census.append(CensusRow(int(parts[1]), int(parts[2]), parts[3]))
            except ValueError as exc:
                raise ParseError(lineno, f"bad census numbers: {exc}") from None
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 5:
            raise ParseError(lineno, f"expected 5 fields, got {len(parts)}")
        name, order_s, degree_s, gens_s, tags_s = parts
        if not name:
            raise ParseError(lineno, "empty name")
        if name in seen:
            raise ParseError(lineno, f"duplicate entry name {name!r}")
        seen.add(name)
        try:
            order = int(order_s)
            degree = int(degree_s)
        except ValueError:
            raise ParseError(lineno, "order and degree must be integers") from None
        gens = tuple(g.strip() for g in gens_s.split(";") if g.strip())
        tags = frozenset(t.strip() for t in tags_s.split(",") if t.strip())
        for t in tags:
            if t in KNOWN_FLAG_TAGS or t.startswith("nq:") or t.startswith("nidx:"):
                continue
            raise ParseError(lineno, f"unknown tag {t!r}")
        try:
            for g in gens:
                parse_cycles(g, degree)
        except ValueError as exc:
            raise ParseError(lineno, f"bad generator: {exc}") from None
        entries.append(CatalogEntry(name, order, degree, gens, tags))
    return Catalog(entries, census, path)


def _validate_entry(entry: CatalogEntry) -> None:
    G = entry.group
    if G.order != entry.order:
        raise ValidationError(
            entry.name, f"stated order {entry.order} but closure has {G.order}"
        )
    solvable = G.is_solvable()
    if entry.has_tag("nonsolvable") == solvable:
        raise ValidationError(
            entry.name, f"solvability does not match tags (solvable={solvable})"
        )
    if entry.has_tag("simple") and len(G.normal_subgroups()) != 2:
        raise ValidationError(entry.name, "claimed simple but has proper normal subgroups")
    if entry.has_tag("abelian") and not G.is_abelian():
        raise ValidationError(entry.name, "claimed abelian but is not")
    if entry.has_tag("cyclic") and not G.is_cyclic():
        raise ValidationError(entry.name, "claimed cyclic but is not")
    if entry.has_tag("nilpotent") and not G.is_nilpotent():
        raise ValidationError(entry.name, "claimed nilpotent but is not")
    if entry.has_tag("pgroup"):
        from .groups import prime_factors

        if len(prime_factors(G.order)) != 1:
            raise ValidationError(entry.name, "claimed pgroup but order is not a prime power")
    for tag in entry.tags:
        if tag.startswith("nq:"):
            _, a_s, b_s = tag.split(":")
            a, b = int(a_s), int(b_s)
            ok = False
            for N in G.normal_subgroups():
                if N.order == a and entry.order // a == b:
                    Q = G.quotient(N)
                    if not Q.is_solvable():
                        ok = True
                        break
            if not ok:
                raise ValidationError(
                    entry.name,
                    f"no normal subgroup of order {a} with non-solvable quotient of order {b}",
                )
        elif tag.startswith("nidx:"):
            want = sorted(int(x) for x in tag.split(":")[1:])
            got = sorted(entry.order // N.order for N in G.normal_subgroups())
            if got != want:
                raise ValidationError(
                    entry.name, f"normal subgroup indices {got} != declared {want}"
                )


def _validate_census(cat: Catalog) -> None:
    for row in cat.census:
        got = len(cat.nonsolvable_of_order(row.order))
        if got != row.count:
            raise ValidationError(
                f"census:{row.order}",
                f"{got} non-solvable entries of order {row.order}, manifest says {row.count}",
            )


def load_catalog(path: str | None = None, validate: bool = True) -> Catalog:
    """Load and (by default) fully revalidate the catalog.

    ``validate=False`` still parses and materialises nothing; it is intended
    only for tooling that knows the data is fresh.
    """
    if path is None:
        path = os.environ.get("RAMGAL_CATALOG")
    if path is None:
        from importlib.resources import files

        text = files("ramgal.data").joinpath("catalog.txt").read_text(encoding="utf-8")
        cat = _parse_lines(text.splitlines(), path=None)
    else:
        with open(path, encoding="utf-8") as fh:
            cat = _parse_lines(fh, path=path)
    if validate:
        for entry in cat.entries:
            _validate_entry(entry)
        _validate_census(cat)
    return cat


@lru_cache(maxsize=2)
def default_catalog(validate: bool = True) -> Catalog:
    """The packaged catalog, loaded once per process."""
    return load_catalog(None, validate=validate)
