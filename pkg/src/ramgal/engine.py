"""Exclusion rule engine with machine-checkable proof traces.

Decides "this group cannot be the Galois group of an extension of Q ramified
only at the prime p (and infinity)" by running a fixed pipeline of rules,
short-circuiting on the first conclusive one:

  R1 abelianization filter (Kronecker-Weber on the maximal abelian quotient)
  R2 order/gcd filter
  R3 root-discriminant filter (tame: per cyclic inertia order; wild: the
     supremum bound p^(1+v_p(|G|)))
  R4 tame congruence/decomposition filter (p^f = 1 mod e, decomposition
     groups are solvable subgroups)
  R5 quotient reduction (a non-solvable quotient already excluded at p)
  R6 imported facts registry (external theorems, cited, with applicability
     predicates)
  R7 the compositum argument at p = 31 for the order-336 group with normal
     subgroup indices {1, 2, 336}
  R8 the totally-real chain (real-cyclotomic class numbers + imported
     ramification-index caps)

Every trace step records the exact integers and rationals compared, so a
report can be replayed and re-verified independently (see replay_report).
Verdicts are EXCLUDED or UNDECIDED; the engine never claims realizability.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import bounds as bmod
from . import quadfields as qmod
from .catalog import Catalog, CatalogEntry, default_catalog
from .groups import AbelianInvariants, PermutationGroup, prime_factors

SCHEMA_VERSION = "1"

EXCLUDED = "EXCLUDED"
UNDECIDED = "UNDECIDED"


class EngineError(Exception):
    pass


class UnknownGroup(EngineError):
    pass


class InconsistentScenario(EngineError):
    pass


class NotSolvable(EngineError):
    pass


class EvenPrime(EngineError):
    pass


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


@dataclass(frozen=True)
class Scenario:
    group: str
    p: int
    tame: bool = False
    totally_real: bool = False
    grh: bool = False

    def key(self):
        return (self.group, self.p, self.tame, self.totally_real, self.grh)

    def to_dict(self):
        return {
            "group": self.group,
            "p": self.p,
            "tame": self.tame,
            "totally_real": self.totally_real,
            "grh": self.grh,
        }


@dataclass
class TraceStep:
    rule: str
    description: str
    data: dict
    citation: str = ""
    conclusion: str = "pass"

    def to_dict(self):
        return {
            "rule": self.rule,
            "description": self.description,
            "data": self.data,
            "citation": self.citation,
            "conclusion": self.conclusion,
        }


@dataclass
class ExclusionReport:
    scenario: Scenario
    verdict: str
    trace: list[TraceStep]

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "scenario": self.scenario.to_dict(),
            "verdict": self.verdict,
            "trace": [s.to_dict() for s in self.trace],
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    def fired_rule(self) -> str | None:
        for s in self.trace:
            if s.conclusion == "excluded":
                return s.rule
        return None


@dataclass(frozen=True)
class ImportedFact:
    """An external theorem used as citable data, never re-derived.

    ``group_names`` limits the fact to specific catalog entries (verified
    structurally at engine construction); prime bounds are inclusive.
    """

    fact_id: str
    statement: str
    citation: str
    group_names: tuple[str, ...] | None = None
    max_order: int | None = None
    prime_lo: int | None = None
    prime_hi: int | None = None
    requires_tame: bool = False
    requires_totally_real: bool = False
    requires_nonsolvable: bool = True

    def applies(self, entry: CatalogEntry, sc: Scenario) -> bool:
        if self.group_names is not None and entry.name not in self.group_names:
            return False
        if self.requires_nonsolvable and not entry.has_tag("nonsolvable"):
            return False
        if self.max_order is not None and entry.order > self.max_order:
            return False
        if self.prime_lo is not None and sc.p < self.prime_lo:
            return False
        if self.prime_hi is not None and sc.p > self.prime_hi:
            return False
        if self.requires_tame and not sc.tame:
            return False
        if self.requires_totally_real and not sc.totally_real:
            return False
        return True


EXCLUSION_FACTS = (
    ImportedFact(
        "hoelscher-small-order",
        "a non-solvable group of order at most 300 does not occur as the "
        "Galois group of an extension of Q ramified only at one finite "
        "prime p < 23 and infinity",
        "J. L. Hoelscher, Galois extensions ramified only at one prime",
        max_order=300,
        prime_lo=2,
        prime_hi=22,
    ),
    ImportedFact(
        "jones-roberts-s5-a5",
        "neither S5 nor A5 occurs as a Galois group over Q with a single "
        "ramified finite prime p < 37",
        "J. Jones and D. Roberts, Number fields ramified at one prime, Thm 4.1",
        group_names=("A5", "S5"),
        prime_hi=36,
    ),
    ImportedFact(
        "jones-roberts-a6",
        "A6 does not occur as a Galois group over Q with a single ramified "
        "finite prime p < 37",
        "J. Jones and D. Roberts, Number fields ramified at one prime, Thm 4.2",
        group_names=("A6",),
        prime_hi=36,
    ),
    ImportedFact(
        "jones-octic-2adic",
        "no degree-8 field whose Galois closure has 2-power part 16 is "
        "ramified only at 2; applied to the index-42 subgroup of the "
        "order-336 group with normal indices {1, 2, 336}",
        "J. Jones, Number fields unramified away from 2, Cor 2.3",
        group_names=("PGL(2,7)",),
        prime_lo=2,
        prime_hi=2,
    ),
    ImportedFact(
        "lesseni-octic",
        "no non-solvable octic number field is ramified only at 7; rules out "
        "the order-336 group with an index-42 subgroup at p = 7",
        "S. Lesseni, The nonexistence of nonsolvable octic number fields "
        "ramified only at one small prime, Thm 4.1",
        group_names=("PGL(2,7)",),
        prime_lo=7,
        prime_hi=7,
    ),
    ImportedFact(
        "lesseni-nonic",
        "a nonic field with simple non-solvable Galois closure group of "
        "order 504 requires the ramified prime to be at least 11",
        "S. Lesseni, Nonsolvable nonic number fields ramified only at one "
        "small prime, Cor 4.2",
        group_names=("PSL(2,8)",),
        prime_lo=2,
        prime_hi=7,
    ),
)

FACT_E_CAP_QUOT_ABELIAN = ImportedFact(
    "harbater-ecap-quotients-abelian",
    "for a tame, totally real extension ramified only at one odd prime with "
    "non-solvable Galois group of degree < 500 all of whose proper quotients "
    "are abelian, the ramification index satisfies e <= 14",
    "D. Harbater, Galois groups with prescribed ramification, Lemma 2.5 "
    "(first instance used)",
    requires_tame=True,
    requires_totally_real=True,
    max_order=499,
)

FACT_E_CAP_ORDER60 = ImportedFact(
    "harbater-ecap-order-60",
    "in the order-60 non-solvable case of the same setting, the "
    "ramification index satisfies e <= 5",
    "D. Harbater, Galois groups with prescribed ramification, Lemma 2.5 "
    "(second instance used)",
    requires_tame=True,
    requires_totally_real=True,
    max_order=60,
)

FACT_HCF_M31 = ImportedFact(
    "hilbert-class-field-m31",
    "Q(sqrt(-31)) has class number 3 and its Hilbert class field is an "
    "S3-extension of Q in which 31 is the only ramified finite prime "
    "(a sextic polynomial generating it is recorded in the quadfields "
    "module); being unramified over Q(sqrt(-31)), its inertia at 31 has "
    "order 2",
    "classical Hilbert class field computations for Q(sqrt(-31))",
)

FACT_MILLER_REAL_CYCLOTOMIC = ImportedFact(
    "miller-real-cyclotomic",
    "the real cyclotomic field of prime conductor p has class number 1 for "
    "all p <= 151, so solvable tame totally-real extensions ramified only "
    "at such p are cyclic and in particular abelian",
    "J. C. Miller, Real cyclotomic fields of prime conductor and their "
    "class numbers, Math. Comp. 84 (2015)",
    requires_tame=True,
    requires_totally_real=True,
)

ALL_FACTS = EXCLUSION_FACTS + (
    FACT_E_CAP_QUOT_ABELIAN,
    FACT_E_CAP_ORDER60,
    FACT_HCF_M31,
    FACT_MILLER_REAL_CYCLOTOMIC,
)

FACTS_BY_ID = {f.fact_id: f for f in ALL_FACTS}


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class _EntryData:
    """Per-entry computation cache shared across survey cells."""

    def __init__(self, entry: CatalogEntry):
        self.entry = entry
        self.group: PermutationGroup = entry.group
        self._ab = None
        self._cyc = None
        self._reductions = None
        self._quot_abelian = None

    @property
    def abelianization(self) -> AbelianInvariants:
        if self._ab is None:
            self._ab = self.group.abelianization()
        return self._ab

    @property
    def cyclic_orders(self) -> list[int]:
        if self._cyc is None:
            self._cyc = sorted(self.group.cyclic_subgroup_orders())
        return self._cyc

    @property
    def reductions(self) -> list[tuple[int, int]]:
        """(|N|, |G/N|) for nontrivial proper normal N with non-solvable quotient."""
        if self._reductions is None:
            out = []
            G = self.group
            for N in G.normal_subgroups():
                if N.is_trivial() or N.is_whole():
                    continue
                Q = G.quotient(N)
                if not Q.is_solvable():
                    out.append((N.order, Q.order))
            self._reductions = out
        return self._reductions

    @property
    def all_proper_quotients_abelian(self) -> bool:
        if self._quot_abelian is None:
            D = self.group.derived_subgroup()
            ok = True
            for N in self.group.normal_subgroups():
                if N.is_trivial():
                    continue
                if not D.mask <= N.mask:
                    ok = False
                    break
            self._quot_abelian = ok
        return self._quot_abelian

    def normal_indices(self) -> list[int]:
        return sorted(
            self.group.order // N.order for N in self.group.normal_subgroups()
        )


class Engine:
    """Catalog- and table-backed exclusion engine."""

    def __init__(self, catalog: Catalog | None = None, tables=None):
        self.catalog = catalog if catalog is not None else default_catalog()
        self.tables = tables if tables is not None else bmod.default_tables()
        self.facts = FACTS_BY_ID
        self._data: dict[str, _EntryData] = {}
        self._verify_fact_anchors()

    def _verify_fact_anchors(self):
        """Structural sanity of name-anchored facts against the catalog."""
        checks = {
            "A5": lambda d: d.group.order == 60 and not d.group.is_solvable(),
            "S5": lambda d: d.group.order == 120 and d.group.center().order == 1,
            "A6": lambda d: d.group.order == 360 and len(d.group.normal_subgroups()) == 2,
            "PGL(2,7)": lambda d: d.normal_indices() == [1, 2, 336],
            "PSL(2,8)": lambda d: d.group.order == 504 and len(d.group.normal_subgroups()) == 2,
        }
        for name, check in checks.items():
            entry = self.catalog.get(name)
            if entry is None:
                continue
            if not check(self._entry_data(entry)):
                raise EngineError(f"catalog entry {name!r} fails its structural anchor")

    def _entry_data(self, entry: CatalogEntry) -> _EntryData:
        d = self._data.get(entry.name)
        if d is None:
            d = _EntryData(entry)
            self._data[entry.name] = d
        return d

    def _lower_bound(self, degree: int, sc: Scenario) -> Fraction:
        best = bmod.odlyzko_lower(degree, "general", self.tables)
        if sc.totally_real:
            best = max(best, bmod.odlyzko_lower(degree, "totally_real", self.tables))
        if sc.grh:
            best = max(best, bmod.odlyzko_lower(degree, "grh", self.tables))
        return best

    def _flavor_names(self, sc: Scenario) -> list[str]:
        out = ["general"]
        if sc.totally_real:
            out.append("totally_real")
        if sc.grh:
            out.append("grh")
        return out

    # -- rules -------------------------------------------------------------

    def _r1(self, d: _EntryData, sc: Scenario) -> TraceStep:
        inv = d.abelianization.invariant_factors
        if sc.tame:
            ok = bmod.tame_abelian_admissible(d.abelianization, sc.p)
        else:
            ok = bmod.wild_abelian_admissible(d.abelianization, sc.p)
        return TraceStep(
            rule="R1",
            description=(
                "the maximal abelian quotient must occur abelianly with the "
                "same ramification (Kronecker-Weber)"
            ),
            data={
                "abelian_invariants": list(inv),
                "p": sc.p,
                "tame": sc.tame,
                "admissible": ok,
            },
            conclusion="pass" if ok else "excluded",
        )

    def _r2(self, d: _EntryData, sc: Scenario) -> TraceStep:
        m = d.group.order
        excl = bmod.order_gcd_exclusion(m, sc.p, sc.tame)
        basis = (sc.p - 1) if sc.tame else sc.p * (sc.p - 1)
        return TraceStep(
            rule="R2",
            description="gcd of the group order with the ramification unit orders",
            data={"order": m, "p": sc.p, "tame": sc.tame, "gcd": gcd(m, basis)},
            conclusion="excluded" if excl else "pass",
        )

    def _r3(self, d: _EntryData, sc: Scenario) -> tuple[TraceStep, list[int]]:
        n = d.group.order
        L = self._lower_bound(n, sc)
        if sc.tame:
            candidates = [e for e in d.cyclic_orders if e >= 2]
            comps = []
            survivors = []
            for e in candidates:
                verdict = bmod.compare_serre_bound(sc.p, e, L) if L > 0 else "above"
                comps.append({"e": e, "serre_vs_lower": verdict})
                if verdict != "below":
                    survivors.append(e)
            step = TraceStep(
                rule="R3",
                description=(
                    "tame inertia is cyclic, so e ranges over cyclic subgroup "
                    "orders; compare p^(1-1/e) with the degree-"
                    f"{n} root-discriminant lower bound"
                ),
                data={
                    "p": sc.p,
                    "degree": n,
                    "lower_bound": _frac_str(L),
                    "flavors": self._flavor_names(sc),
                    "comparisons": comps,
                    "surviving_e": survivors,
                },
                citation="root discriminant bound p^(1+v_p(e)-1/e): Serre, Corps Locaux, ch. 3 sec. 6",
                conclusion="pass" if survivors else "excluded",
            )
            return step, survivors
        v = bmod.v_p(n, sc.p)
        sup = Fraction(sc.p ** (1 + v))
        excluded = L > 0 and sup <= L
        step = TraceStep(
            rule="R3",
            description=(
                "wild mode: v_p(e) <= v_p(|G|), so the root discriminant is "
                "strictly below p^(1+v_p(|G|)); exclude when that supremum "
                "does not reach the lower bound"
            ),
            data={
                "p": sc.p,
                "degree": n,
                "v_p_order": v,
                "supremum": _frac_str(sup),
                "lower_bound": _frac_str(L),
                "flavors": self._flavor_names(sc),
            },
            citation="root discriminant bound p^(1+v_p(e)-1/e): Serre, Corps Locaux, ch. 3 sec. 6",
            conclusion="excluded" if excluded else "pass",
        )
        return step, []

    def _r4(self, d: _EntryData, sc: Scenario, survivors: list[int]) -> TraceStep | None:
        if not sc.tame or not survivors:
            return None
        G = d.group
        sub_orders = G.subgroup_orders()
        solv_orders = G.solvable_subgroup_orders()
        per_e = []
        any_feasible = False
        for e in survivors:
            feas = bmod.inertia_residue_feasible(
                sc.p, e, G.order, sub_orders, solv_orders
            )
            cof = G.order // e if G.order % e == 0 else 0
            divisors = [f for f in range(1, cof + 1) if cof and cof % f == 0]
            f_sub = [f for f in divisors if e * f in sub_orders]
            f_solv = [f for f in f_sub if e * f in solv_orders]
            cong = [f for f in divisors if e == 1 or pow(sc.p, f, e) == 1]
            per_e.append(
                {
                    "e": e,
                    "f_subgroup_order": f_sub,
                    "f_solvable": f_solv,
                    "f_congruent": cong,
                    "feasible_pairs": [[a, b] for a, b in feas],
                }
            )
            if feas:
                any_feasible = True
        return TraceStep(
            rule="R4",
            description=(
                "tame inertia embeds in the residue field units (p^f = 1 mod e) "
                "and e*f is the order of a solvable decomposition subgroup; "
                "f ranges over divisors of |G|/e, which uses r >= 1 implicitly"
            ),
            data={
                "p": sc.p,
                "order": G.order,
                "subgroup_orders": sorted(sub_orders),
                "solvable_subgroup_orders": sorted(solv_orders),
                "per_e": per_e,
            },
            conclusion="pass" if any_feasible else "excluded",
        )

    def _r5(self, d: _EntryData, sc: Scenario, resolver) -> TraceStep | None:
        if not d.reductions:
            return None
        attempts = []
        for n_order, m in d.reductions:
            targets = self.catalog.nonsolvable_of_order(m)
            if not targets:
                continue
            verdicts = [(t.name, resolver(t.name, sc.p)) for t in targets]
            ok = all(v == EXCLUDED for _, v in verdicts)
            attempts.append(
                {
                    "normal_order": n_order,
                    "quotient_order": m,
                    "quotient_nonsolvable": True,
                    "targets": [
                        {"group": name, "verdict": v} for name, v in verdicts
                    ],
                }
            )
            if ok:
                return TraceStep(
                    rule="R5",
                    description=(
                        "a quotient by a normal subgroup would also occur at p; "
                        "every non-solvable group of the quotient order is "
                        "already excluded (census-complete catalog)"
                    ),
                    data={"p": sc.p, "reductions": attempts},
                    conclusion="excluded",
                )
        if not attempts:
            return None
        return TraceStep(
            rule="R5",
            description="quotient reduction attempted; some target still undecided",
            data={"p": sc.p, "reductions": attempts},
            conclusion="pass",
        )

    def _r6(self, d: _EntryData, sc: Scenario) -> TraceStep | None:
        for fact in EXCLUSION_FACTS:
            if fact.applies(d.entry, sc):
                return TraceStep(
                    rule="R6",
                    description=f"imported fact {fact.fact_id}: {fact.statement}",
                    data={
                        "fact_id": fact.fact_id,
                        "group": d.entry.name,
                        "p": sc.p,
                    },
                    citation=fact.citation,
                    conclusion="excluded",
                )
        return None

    def _r7(self, d: _EntryData, sc: Scenario) -> TraceStep | None:
        if not sc.tame or sc.p != 31:
            return None
        G = d.group
        if G.order != 336 or d.normal_indices() != [1, 2, 336]:
            return None
        if max(d.cyclic_orders) != 8:
            return None
        h_data = qmod.form_class_group(-31)
        compositum_degree = 336 * 6 // 2
        L = bmod.odlyzko_lower(compositum_degree, "general", self.tables)
        cmp_verdict = bmod.compare_serre_bound(31, 8, L)
        fact = FACT_HCF_M31
        excluded = h_data.h == 3 and cmp_verdict == "below"
        return TraceStep(
            rule="R7",
            description=(
                "compositum with the S3 Hilbert class field over Q(sqrt(-31)): "
                "no normal subgroup of index 6 forces the intersection down to "
                "the quadratic, so the compositum has degree 336*6/2 = 1008 "
                "with all inertia of order at most lcm(8, 2) = 8"
            ),
            data={
                "p": 31,
                "class_number_disc_-31": h_data.h,
                "normal_indices": d.normal_indices(),
                "max_cyclic_order": max(d.cyclic_orders),
                "hilbert_inertia_order": 2,
                "compositum_degree": compositum_degree,
                "lower_bound": _frac_str(L),
                "serre_vs_lower": cmp_verdict,
            },
            citation=fact.citation,
            conclusion="excluded" if excluded else "pass",
        )

    def _r8(self, d: _EntryData, sc: Scenario) -> TraceStep | None:
        if not (sc.totally_real and sc.tame) or sc.p == 2 or sc.p > 53:
            return None
        G = d.group
        steps = []
        # solvable quotients of a minimal totally-real counterexample are
        # cyclic (real cyclotomic class number one for p <= 151), so the
        # e-cap applies exactly when every proper quotient is abelian
        if FACT_E_CAP_QUOT_ABELIAN.applies(d.entry, sc) and d.all_proper_quotients_abelian:
            L = self._lower_bound(G.order, sc)
            verdict = bmod.compare_serre_bound(sc.p, 14, L) if L > 0 else "above"
            steps.append(
                {
                    "fact_id": FACT_E_CAP_QUOT_ABELIAN.fact_id,
                    "e_cap": 14,
                    "lower_bound": _frac_str(L),
                    "serre_vs_lower": verdict,
                }
            )
            if verdict == "below":
                return TraceStep(
                    rule="R8",
                    description=(
                        "totally-real chain: every proper quotient abelian and "
                        "degree < 500 cap the ramification index at 14; the "
                        "root discriminant then falls below the totally-real "
                        "lower bound"
                    ),
                    data={"p": sc.p, "degree": G.order, "steps": steps},
                    citation=FACT_E_CAP_QUOT_ABELIAN.citation,
                    conclusion="excluded",
                )
        if FACT_E_CAP_ORDER60.applies(d.entry, sc) and G.order == 60:
            L = self._lower_bound(60, sc)
            verdict = bmod.compare_serre_bound(sc.p, 5, L) if L > 0 else "above"
            steps.append(
                {
                    "fact_id": FACT_E_CAP_ORDER60.fact_id,
                    "e_cap": 5,
                    "lower_bound": _frac_str(L),
                    "serre_vs_lower": verdict,
                }
            )
            if verdict == "below":
                return TraceStep(
                    rule="R8",
                    description=(
                        "totally-real chain, order-60 case: the ramification "
                        "index is capped at 5 and the root discriminant falls "
                        "below the totally-real lower bound"
                    ),
                    data={"p": sc.p, "degree": 60, "steps": steps},
                    citation=FACT_E_CAP_ORDER60.citation,
                    conclusion="excluded",
                )
        if not steps:
            return None
        return TraceStep(
            rule="R8",
            description="totally-real chain attempted without conclusion",
            data={"p": sc.p, "degree": G.order, "steps": steps},
            citation=FACT_MILLER_REAL_CYCLOTOMIC.citation,
            conclusion="pass",
        )

    # -- driver --------------------------------------------------------------

    def exclude(self, sc: Scenario, _resolver=None, _memo=None) -> ExclusionReport:
        entry = self.catalog.get(sc.group)
        if entry is None:
            raise UnknownGroup(f"group {sc.group!r} is not in the catalog")
        if not is_prime(sc.p):
            raise InconsistentScenario(f"p = {sc.p} is not prime")
        if sc.tame and entry.order % sc.p == 0:
            raise InconsistentScenario(
                f"tame scenario but {sc.p} divides the group order {entry.order}"
            )
        if sc.totally_real and not sc.tame:
            raise InconsistentScenario("the totally-real chain requires the tame flag")
        d = self._entry_data(entry)
        if _memo is None:
            _memo = {}
        if _resolver is None:
            def _resolver(name: str, p: int) -> str:
                key = (name, p)
                if key in _memo:
                    return _memo[key]
                _memo[key] = UNDECIDED  # cycle guard; orders strictly decrease
                sub_entry = self.catalog.get(name)
                sub_sc = Scenario(
                    group=name,
                    p=p,
                    tame=sub_entry.order % p != 0,
                    totally_real=False,
                    grh=sc.grh,
                )
                rep = self.exclude(sub_sc, _resolver, _memo)
                _memo[key] = rep.verdict
                return rep.verdict

        trace: list[TraceStep] = []

        step = self._r1(d, sc)
        trace.append(step)
        if step.conclusion == "excluded":
            return ExclusionReport(sc, EXCLUDED, trace)

        step = self._r2(d, sc)
        trace.append(step)
        if step.conclusion == "excluded":
            return ExclusionReport(sc, EXCLUDED, trace)

        step, survivors = self._r3(d, sc)
        trace.append(step)
        if step.conclusion == "excluded":
            return ExclusionReport(sc, EXCLUDED, trace)

        step = self._r4(d, sc, survivors)
        if step is not None:
            trace.append(step)
            if step.conclusion == "excluded":
                return ExclusionReport(sc, EXCLUDED, trace)

        step = self._r5(d, sc, _resolver)
        if step is not None:
            trace.append(step)
            if step.conclusion == "excluded":
                return ExclusionReport(sc, EXCLUDED, trace)

        step = self._r6(d, sc)
        if step is not None:
            trace.append(step)
            if step.conclusion == "excluded":
                return ExclusionReport(sc, EXCLUDED, trace)

        step = self._r7(d, sc)
        if step is not None:
            trace.append(step)
            if step.conclusion == "excluded":
                return ExclusionReport(sc, EXCLUDED, trace)

        step = self._r8(d, sc)
        if step is not None:
            trace.append(step)
            if step.conclusion == "excluded":
                return ExclusionReport(sc, EXCLUDED, trace)

        return ExclusionReport(sc, UNDECIDED, trace)

    # -- survey ----------------------------------------------------------------

    def survey(
        self,
        max_order: int = 660,
        prime_bound: int = 37,
        tame_auto: bool = True,
        totally_real: bool = False,
        grh: bool = False,
    ) -> "SurveyResult":
        entries = self.catalog.nonsolvable_below(max_order)
        primes = [p for p in range(2, prime_bound) if is_prime(p)]
        table: dict[tuple[str, int], ExclusionReport] = {}

        def resolver(name: str, p: int) -> str:
            rep = table.get((name, p))
            return rep.verdict if rep is not None else UNDECIDED

        rounds = 0
        while True:
            rounds += 1
            changed = False
            for e in entries:
                for p in primes:
                    key = (e.name, p)
                    cur = table.get(key)
                    if cur is not None and cur.verdict == EXCLUDED:
                        continue
                    tame = (e.order % p != 0) if tame_auto else False
                    if totally_real and not tame:
                        # wild cells cannot be run in totally-real tame mode;
                        # fall back to the general rules for them
                        sc = Scenario(e.name, p, tame=tame, totally_real=False, grh=grh)
                    else:
                        sc = Scenario(e.name, p, tame=tame, totally_real=totally_real, grh=grh)
                    rep = self.exclude(sc, _resolver=resolver)
                    if cur is None or rep.verdict != cur.verdict:
                        changed = True
                    table[key] = rep
            if not changed or rounds > len(entries) + 1:
                break
        return SurveyResult(max_order, prime_bound, primes, entries, table)

    # -- single-prime solvable classification ---------------------------------

    def classify_single_prime_solvable(self, group: PermutationGroup | str, p: int):
        if isinstance(group, str):
            entry = self.catalog.get(group)
            if entry is None:
                raise UnknownGroup(group)
            G = entry.group
        else:
            G = group
        if not is_prime(p) or p == 2:
            raise EvenPrime(f"p = {p} must be an odd prime")
        if not G.is_solvable():
            raise NotSolvable("classification applies to solvable groups")
        return classify_solvable_conditions(G, p)

    # -- the tame {2,3} joint analysis ----------------------------------------

    def tame_23_analysis(self) -> "JointTameReport":
        return tame_23_analysis(self.tables)


@dataclass
class SurveyResult:
    max_order: int
    prime_bound: int
    primes: list[int]
    entries: list[CatalogEntry]
    table: dict[tuple[str, int], ExclusionReport]

    @property
    def undecided(self) -> list[tuple[str, int]]:
        return sorted(
            key for key, rep in self.table.items() if rep.verdict != EXCLUDED
        )

    @property
    def all_excluded(self) -> bool:
        return not self.undecided

    def summary(self) -> dict:
        counts: dict[str, int] = {}
        for rep in self.table.values():
            rule = rep.fired_rule() or "none"
            counts[rule] = counts.get(rule, 0) + 1
        return {
            "cells": len(self.table),
            "excluded": sum(
                1 for rep in self.table.values() if rep.verdict == EXCLUDED
            ),
            "undecided": len(self.undecided),
            "by_rule": dict(sorted(counts.items())),
        }

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "max_order": self.max_order,
            "prime_bound": self.prime_bound,
            "summary": self.summary(),
            "cells": [
                {
                    "group": name,
                    "p": p,
                    "verdict": rep.verdict,
                    "rule": rep.fired_rule() or "none",
                }
                for (name, p), rep in sorted(self.table.items())
            ],
        }


@dataclass
class ClassifyResult:
    """Which necessary conditions a solvable single-prime group satisfies."""

    conditions: set[int]
    violation: bool
    details: dict

    CONDITION_NAMES = {
        1: "cyclic p-group",
        2: "quotient by the Sylow-generated normal subgroup is a nontrivial "
           "cyclic group of order dividing p-1",
        3: "has a cyclic quotient of order p^t (t from the cyclotomic "
           "class-number table)",
    }


def classify_solvable_conditions(G: PermutationGroup, p: int) -> ClassifyResult:
    conditions: set[int] = set()
    details: dict = {"p": p, "order": G.order}
    # condition 1: cyclic p-group
    ps = prime_factors(G.order) if G.order > 1 else []
    if G.order > 1 and ps == [p] and G.is_cyclic():
        conditions.add(1)
    # condition 2: G / (subgroup generated by Sylow p-subgroups) nontrivial
    # cyclic of order dividing p - 1
    pg = G.generated_by_sylows(p)
    Q = G.quotient(pg)
    details["sylow_generated_order"] = pg.order
    details["quotient_order"] = Q.order
    if Q.order > 1 and Q.is_cyclic() and (p - 1) % Q.order == 0:
        conditions.add(2)
        details["condition2_quotient"] = Q.order
    # condition 3: cyclic quotient of order p^t
    try:
        t = qmod.max_known_trivial_ppower(p)
    except qmod.UnknownEntry:
        t = None
    details["cyclotomic_t"] = t
    if t is not None:
        target = p**t
        if G.order % target == 0:
            for N in G.normal_subgroups():
                if N.order * target == G.order:
                    QQ = G.quotient(N)
                    if QQ.is_cyclic():
                        conditions.add(3)
                        break
    return ClassifyResult(conditions, violation=not conditions, details=details)


@dataclass
class JointTameReport:
    steps: list[TraceStep]
    conclusion: str

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "analysis": "tame ramification restricted to {2, 3}",
            "steps": [s.to_dict() for s in self.steps],
            "conclusion": self.conclusion,
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)


def tame_23_analysis(tables=None) -> JointTameReport:
    """Tame extensions ramified only within {2, 3} add nothing beyond 3 alone.

    Mirrors, case by case, the degree analysis: the root discriminant stays
    under 6, capping the degree at 9, and every degree that could involve 2
    is eliminated by tameness, Kronecker-Weber, or the (2)-ray class number
    of Q(sqrt(-3)).
    """
    tabs = tables if tables is not None else bmod.default_tables()
    steps: list[TraceStep] = []

    steps.append(
        TraceStep(
            rule="rd-bound",
            description=(
                "tame at 2 and 3 only: the root discriminant is strictly below "
                "2^(1-1/e2) * 3^(1-1/e3) < 2 * 3 = 6"
            ),
            data={"upper_bound": "6"},
            citation="root discriminant bound p^(1+v_p(e)-1/e): Serre, Corps Locaux, ch. 3 sec. 6",
            conclusion="pass",
        )
    )
    L = bmod.odlyzko_lower(10, "general", tabs)
    steps.append(
        TraceStep(
            rule="degree-cap",
            description="fields of degree >= 10 have root discriminant >= 6, so the degree is at most 9",
            data={"min_degree": 10, "lower_bound": _frac_str(L), "cap_ok": L >= 6},
            conclusion="pass",
        )
    )
    steps.append(
        TraceStep(
            rule="case-2-power-degrees",
            description=(
                "degrees 2, 4, 8: a 2-group has only 2-power ramification "
                "indices, and tame at 2 forces e_2 odd, so e_2 = 1 and only 3 "
                "ramifies: nothing new"
            ),
            data={"degrees": [2, 4, 8]},
            conclusion="eliminated",
        )
    )
    steps.append(
        TraceStep(
            rule="case-3-power-degrees",
            description=(
                "degrees 3, 9: tame at 3 forces e_3 coprime to 3, so 3 is "
                "unramified and only 2 ramifies; but no nontrivial tame "
                "extension is ramified only at 2"
            ),
            data={
                "degrees": [3, 9],
                "only2_excluded_example_orders": [
                    m for m in (3, 9) if bmod.order_gcd_exclusion(m, 2, tame=True)
                ],
            },
            conclusion="eliminated",
        )
    )
    adm5 = bmod.tame_abelian_admissible(AbelianInvariants((5,)), 6)
    steps.append(
        TraceStep(
            rule="case-degree-5",
            description="degree 5 is cyclic; Z/5 is not a quotient of Z/(3-1) (Kronecker-Weber)",
            data={"invariants": [5], "admissible": adm5},
            conclusion="eliminated",
        )
    )
    adm7 = bmod.tame_abelian_admissible(AbelianInvariants((7,)), 6)
    steps.append(
        TraceStep(
            rule="case-degree-7",
            description="degree 7 is cyclic; Z/7 is not a quotient of Z/(3-1)",
            data={"invariants": [7], "admissible": adm7},
            conclusion="eliminated",
        )
    )
    adm6 = bmod.tame_abelian_admissible(AbelianInvariants((6,)), 6)
    steps.append(
        TraceStep(
            rule="case-degree-6-cyclic",
            description="Z/6 is not a quotient of Z/(3-1) = Z/2 (Kronecker-Weber)",
            data={"invariants": [6], "admissible": adm6},
            conclusion="eliminated",
        )
    )
    h_ray = qmod.ray_class_number(-3, 2)
    steps.append(
        TraceStep(
            rule="case-degree-6-S3",
            description=(
                "an S3 field: its quadratic subfield is tame at 2, hence "
                "unramified at 2, so it is ramified only at 3 and must be "
                "Q(sqrt(-3)); the cubic step is abelian over Q(sqrt(-3)), "
                "tame, so ramified only above 2, landing in the ray class "
                "field of modulus (2), whose ray class number is 1"
            ),
            data={
                "quadratic_candidates": [-3],
                "ray_class_modulus": 2,
                "ray_class_number": h_ray,
            },
            conclusion="eliminated",
        )
    )
    ok = (
        L >= 6
        and not adm5
        and not adm7
        and not adm6
        and h_ray == 1
    )
    steps.append(
        TraceStep(
            rule="conclusion",
            description="every candidate degree is eliminated",
            data={"all_cases_closed": ok},
            conclusion="no new groups beyond tame ramification at 3 alone" if ok else "inconclusive",
        )
    )
    return JointTameReport(
        steps,
        conclusion=(
            "no new groups beyond tame ramification at 3 alone"
            if ok
            else "inconclusive"
        ),
    )


# ---------------------------------------------------------------------------
# trace replay


def replay_report(report: dict, engine: Engine, survey_table=None) -> bool:
    """Re-verify every recorded comparison in a serialized report.

    Recomputes each numeric step from the recorded inputs with independent
    exact arithmetic and checks the rule logic chain; returns False on the
    first discrepancy.
    """
    sc = report["scenario"]
    verdict = report["verdict"]
    excluded_seen = False
    for step in report["trace"]:
        rule = step["rule"]
        data = step["data"]
        concl = step["conclusion"]
        if excluded_seen:
            return False  # nothing may follow a conclusive step
        if rule == "R1":
            inv = AbelianInvariants(tuple(data["abelian_invariants"]))
            if data["tame"]:
                ok = bmod.tame_abelian_admissible(inv, data["p"])
            else:
                ok = bmod.wild_abelian_admissible(inv, data["p"])
            if ok != data["admissible"]:
                return False
            if (concl == "excluded") != (not ok):
                return False
        elif rule == "R2":
            basis = (sc["p"] - 1) if data["tame"] else sc["p"] * (sc["p"] - 1)
            g = gcd(data["order"], basis)
            if g != data["gcd"]:
                return False
            if (concl == "excluded") != (g == 1):
                return False
        elif rule == "R3":
            L = Fraction(data["lower_bound"])
            if "comparisons" in data:
                surv = []
                for comp in data["comparisons"]:
                    v = (
                        bmod.compare_serre_bound(data["p"], comp["e"], L)
                        if L > 0
                        else "above"
                    )
                    if v != comp["serre_vs_lower"]:
                        return False
                    if v != "below":
                        surv.append(comp["e"])
                if surv != data["surviving_e"]:
                    return False
                if (concl == "excluded") != (not surv):
                    return False
            else:
                sup = Fraction(data["supremum"])
                if Fraction(data["p"] ** (1 + data["v_p_order"])) != sup:
                    return False
                if (concl == "excluded") != (L > 0 and sup <= L):
                    return False
        elif rule == "R4":
            any_feasible = False
            subs = set(data["subgroup_orders"])
            solv = set(data["solvable_subgroup_orders"])
            for row in data["per_e"]:
                e = row["e"]
                feas = bmod.inertia_residue_feasible(
                    data["p"], e, data["order"], subs, solv
                )
                if [[a, b] for a, b in feas] != row["feasible_pairs"]:
                    return False
                if feas:
                    any_feasible = True
            if (concl == "excluded") != (not any_feasible):
                return False
        elif rule == "R5":
            if concl == "excluded":
                fired = data["reductions"][-1]
                if not fired["targets"]:
                    return False
                for t in fired["targets"]:
                    if t["verdict"] != EXCLUDED:
                        return False
                    if survey_table is not None:
                        rep = survey_table.get((t["group"], data["p"]))
                        if rep is None or rep.verdict != EXCLUDED:
                            return False
        elif rule == "R6":
            fact = engine.facts.get(data["fact_id"])
            if fact is None:
                return False
            entry = engine.catalog.get(data["group"])
            sc_obj = Scenario(
                sc["group"], sc["p"], sc["tame"], sc["totally_real"], sc["grh"]
            )
            if entry is None or not fact.applies(entry, sc_obj):
                return False
        elif rule == "R7":
            if qmod.form_class_group(-31).h != data["class_number_disc_-31"]:
                return False
            L = Fraction(data["lower_bound"])
            if bmod.compare_serre_bound(31, 8, L) != data["serre_vs_lower"]:
                return False
            if (concl == "excluded") != (data["serre_vs_lower"] == "below"):
                return False
        elif rule == "R8":
            for sub in data["steps"]:
                L = Fraction(sub["lower_bound"])
                v = (
                    bmod.compare_serre_bound(sc["p"], sub["e_cap"], L)
                    if L > 0
                    else "above"
                )
                if v != sub["serre_vs_lower"]:
                    return False
            if concl == "excluded" and data["steps"][-1]["serre_vs_lower"] != "below":
                return False
        if concl == "excluded":
            excluded_seen = True
    if (verdict == EXCLUDED) != excluded_seen:
        return False
    return True
