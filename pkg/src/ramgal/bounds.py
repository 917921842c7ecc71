"""Exact-rational root-discriminant arithmetic.

The tame upper bound at a ramified prime p with ramification index e is
p^(1 + v_p(e) - 1/e) (Serre, Corps Locaux, ch. 3 sec. 6).  Lower bounds come
from tabulated analytic minima (Diaz y Diaz; Odlyzko), shipped as step
functions in three flavors.  Every inequality here is decided by integer
cross-multiplication: p^(1 + v - 1/e) < t  iff  p^(e(1+v) - 1) < t^e.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .groups import AbelianInvariants, is_squarefree, prime_factors

FLAVORS = ("general", "totally_real", "grh")

MIN_RAM_E_CAP = 10**6
MIN_RAM_V_CAP = 6


class BoundsError(Exception):
    pass


class UnknownFlavor(BoundsError):
    pass


class Infeasible(BoundsError):
    pass


def v_p(n: int, p: int) -> int:
    """p-adic valuation of n (n >= 1)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def serre_bound_power(p: int, e: int) -> tuple[int, int]:
    """The comparison kernel: p^(1+v-1/e) vs t is p^(e(1+v)-1) vs t^e.

    Returns (base_exponent, e) with base_exponent = e*(1+v_p(e)) - 1.
    """
    return e * (1 + v_p(e, p)) - 1, e


def compare_serre_bound(p: int, e: int, threshold: Fraction | int | str) -> str:
    """Compare p^(1 + v_p(e) - 1/e) with ``threshold`` exactly.

    Returns "below", "equal" or "above".  No floating point is involved:
    both sides are raised to the e-th power and compared as rationals.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    t = Fraction(threshold)
    if t <= 0:
        raise ValueError("threshold must be positive")
    exp, _ = serre_bound_power(p, e)
    lhs = p**exp
    rhs = t**e
    if lhs < rhs:
        return "below"
    if lhs == rhs:
        return "equal"
    return "above"


@dataclass(frozen=True)
class BoundTable:
    """Step-function lower bound on root discriminants by degree.

    ``rows`` are (min_degree, bound) pairs sorted by degree with
    non-decreasing bounds; lookup rounds the degree DOWN to the nearest
    tabulated row, which is the conservative direction for exclusions.
    """

    flavor: str
    rows: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise UnknownFlavor(f"unknown flavor {self.flavor!r}")
        prev_d, prev_b = 0, Fraction(0)
        for d, b in self.rows:
            if d <= prev_d or b < prev_b:
                raise ValueError(f"rows not sorted/monotone in {self.flavor} table")
            prev_d, prev_b = d, b

    def lookup(self, degree: int) -> Fraction:
        best = Fraction(0)
        for d, b in self.rows:
            if d <= degree:
                best = b
            else:
                break
        return best


# Values from the Diaz y Diaz discriminant-minoration tables and the Odlyzko
# bound tables, at exactly the degrees used by the exclusion arguments; the
# file format lets users extend them.
_DEFAULT_ROWS = {
    "general": (
        (10, Fraction(6)),
        (168, Fraction(1795, 100)),
        (300, Fraction(192, 10)),
        (336, Fraction(1947, 100)),
        (504, Fraction(20114, 1000)),
        (1008, Fraction(209, 10)),
        (10**7, Fraction(223, 10)),
    ),
    "totally_real": (
        (60, Fraction(36)),
        (85, Fraction(40)),
        (300, Fraction(50)),
        (500, Fraction(53)),
    ),
    "grh": ((340, Fraction(2509, 100)),),
}


def default_tables() -> dict[str, BoundTable]:
    path = os.environ.get("RAMGAL_BOUNDS")
    if path:
        return load_bound_tables(path)
    try:
        from importlib.resources import files

        text = files("ramgal.data").joinpath("bounds.txt").read_text()
        return parse_bound_tables(text.splitlines())
    except FileNotFoundError:
        return {f: BoundTable(f, rows) for f, rows in _DEFAULT_ROWS.items()}


def parse_bound_tables(lines) -> dict[str, BoundTable]:
    rows: dict[str, list[tuple[int, Fraction]]] = {f: [] for f in FLAVORS}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise ValueError(f"bounds line {lineno}: expected 3 fields")
        flavor, deg_s, frac_s = parts
        if flavor not in FLAVORS:
            raise UnknownFlavor(f"bounds line {lineno}: unknown flavor {flavor!r}")
        rows[flavor].append((int(deg_s), Fraction(frac_s)))
    return {
        f: BoundTable(f, tuple(sorted(rs))) for f, rs in rows.items() if rs
    }


def load_bound_tables(path: str) -> dict[str, BoundTable]:
    with open(path, encoding="utf-8") as fh:
        return parse_bound_tables(fh)


def odlyzko_lower(degree: int, flavor: str = "general", tables=None) -> Fraction:
    """Tabulated lower bound on the root discriminant at the given degree.

    The totally-real and GRH bounds dominate the unconditional ones, so those
    flavors return the max of their own rows and the general rows.
    """
    if flavor not in FLAVORS:
        raise UnknownFlavor(f"unknown flavor {flavor!r}")
    tabs = tables if tables is not None else default_tables()
    base = tabs["general"].lookup(degree) if "general" in tabs else Fraction(0)
    if flavor == "general":
        return base
    extra = tabs[flavor].lookup(degree) if flavor in tabs else Fraction(0)
    return max(base, extra)


@dataclass(frozen=True)
class RamConstraint:
    """Minimal ramification-index profile forced by a lower bound: p^v_min | e and e >= e_min."""

    p: int
    v_min: int
    e_min: int

    def __str__(self) -> str:
        return f"e = 0 mod {self.p**self.v_min} and e >= {self.e_min}"


def _meets_level(p: int, v: int, e: int, lower: Fraction) -> bool:
    """p^(1 + v - 1/e) >= lower, with the level v given explicitly."""
    return Fraction(p ** (e * (1 + v) - 1)) >= lower**e


def _min_e_at_level(p: int, v: int, lower: Fraction, e_cap: int) -> int | None:
    """Smallest e with v_p(e) = v and p^(1+v-1/e) >= lower, or None.

    The level function is increasing in e, so binary search on the cofactor.
    """
    scale = p**v
    m_hi = e_cap // scale
    if m_hi < 1 or not _meets_level(p, v, scale * m_hi, lower):
        return None
    lo, hi = 1, m_hi
    while lo < hi:
        mid = (lo + hi) // 2
        if _meets_level(p, v, scale * mid, lower):
            hi = mid
        else:
            lo = mid + 1
    if lo % p == 0:
        lo += 1  # v_p(e) must be exactly v; the level function keeps lo+1 feasible
    if lo > m_hi:
        return None
    return scale * lo


def min_ramification_index(
    p: int, lower: Fraction | int | str, e_cap: int = MIN_RAM_E_CAP, v_cap: int = MIN_RAM_V_CAP
) -> RamConstraint:
    """Minimal (v, e) profile with p^(1 + v - 1/e) >= lower.

    A whole level v is dead when p^(1+v) <= lower: the bound stays under its
    supremum.  Reports the first live level and the smallest feasible e over
    all levels; raises Infeasible when the caps cannot certify an answer.
    """
    L = Fraction(lower)
    if L <= 1:
        raise ValueError("lower bound must exceed 1")
    v_first = None
    e_best = None
    for v in range(v_cap + 1):
        if Fraction(p ** (1 + v)) <= L:
            continue  # dead level: no e can reach the bound
        if v_first is not None and e_best is not None and p**v > e_best:
            break  # higher levels only offer larger e
        e = _min_e_at_level(p, v, L, e_cap)
        if e is None:
            if v_first is None:
                raise Infeasible(
                    f"level v={v} is live for p={p}, lower={L} but needs e > cap {e_cap}"
                )
            continue
        if v_first is None:
            v_first = v
        if e_best is None or e < e_best:
            e_best = e
    if v_first is None or e_best is None:
        raise Infeasible(
            f"no ramification index e <= {e_cap} at any level v <= {v_cap} reaches {L}"
        )
    return RamConstraint(p, v_first, e_best)


def tame_abelian_admissible(invariants: AbelianInvariants, n: int) -> bool:
    """Whether an abelian group can occur tamely with ramification inside n.

    By Kronecker-Weber, a tame abelian extension ramified only at primes
    dividing square-free n sits in the compositum of the prime cyclotomic
    fields, so its group must be a quotient of the product of Z/(p-1) over
    the odd primes p dividing n.
    """
    if not is_squarefree(n):
        raise ValueError(f"n = {n} is not square-free")
    factors = [p - 1 for p in prime_factors(n) if p != 2]
    bound = AbelianInvariants.from_factor_list([f for f in factors if f > 1])
    return invariants.is_quotient_of(bound)


def wild_abelian_admissible(invariants: AbelianInvariants, n: int) -> bool:
    """Same as tame_abelian_admissible but with wild ramification allowed.

    The possible groups are quotients of prod_p Z_p^* over p | n, i.e. of
    prod Z/(p-1) x Z/p^k (any k) for odd p, and Z/2 x Z/2^k at p = 2.
    """
    if not is_squarefree(n):
        raise ValueError(f"n = {n} is not square-free")
    factors = []
    for p in prime_factors(n):
        if p == 2:
            factors.extend([2, 2**16])
        else:
            factors.append((p - 1) * p**16)
    # exponent 16 stands in for "arbitrarily deep": no group within the
    # closure cap (order <= 10^4 < 2^14) can need a deeper p-power component
    bound = AbelianInvariants.from_factor_list(factors)
    return invariants.is_quotient_of(bound)


def order_gcd_exclusion(m: int, n: int, tame: bool) -> bool:
    """True when no group of order m can occur with ramification inside n.

    Tame: gcd(m, prod_{p|n} (p-1)) = 1 excludes (for n = 2 the product is
    empty, so every m > 1 is excluded: there are no tame extensions where
    only 2 ramifies).  Wild: gcd(m, prod p(p-1)) = 1 excludes.
    """
    if m <= 1:
        raise ValueError("m must be > 1")
    if n <= 1 or not is_squarefree(n):
        raise ValueError("n must be a square-free integer > 1")
    prod = 1
    for p in prime_factors(n):
        prod *= (p - 1) if tame else p * (p - 1)
    return gcd(m, prod) == 1


@dataclass(frozen=True)
class RamificationProfile:
    """A consistent (p, e, f) profile inside a degree-n extension."""

    p: int
    e: int
    f: int
    n: int

    def __post_init__(self):
        if self.n % (self.e * self.f) != 0:
            raise ValueError("e*f must divide n")

    @property
    def v_p_e(self) -> int:
        return v_p(self.e, self.p)

    @property
    def num_primes(self) -> int:
        return self.n // (self.e * self.f)


def inertia_residue_feasible(
    p: int, e: int, n: int, subgroup_orders: set[int], solvable_orders: set[int]
) -> list[tuple[int, int]]:
    """Feasible (e, f) pairs for tame ramification with cyclic inertia of order e.

    Constraints: f | n/e (from e*f*r = n), e*f is the order of a decomposition
    group, so e*f must be a subgroup order AND a solvable subgroup order, and
    the inertia group embeds in the residue field's units: p^f = 1 (mod e).
    """
    if n % p == 0:
        raise ValueError("tame context requires p not dividing n")
    if e < 1 or n % e != 0:
        return []
    out = []
    cof = n // e
    for f in range(1, cof + 1):
        if cof % f != 0:
            continue
        ef = e * f
        if ef not in subgroup_orders or ef not in solvable_orders:
            continue
        if e > 1 and pow(p, f, e) != 1:
            continue
        out.append((e, f))
    return out
