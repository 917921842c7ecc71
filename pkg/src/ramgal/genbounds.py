"""Generator-count inequality evaluators with certified rational enclosures.

Natural logs are never floated: ln(x) is enclosed in a rational interval via
the atanh series with an explicit tail bound, refined until the comparison at
hand is decided.  A verdict of HOLDS/FAILS is therefore a theorem about the
inputs; BOUNDARY means the truth stayed inside the final enclosure at the
precision cap.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .groups import (
    AbelianInvariants,
    PermutationGroup,
    is_squarefree,
    prime_factors,
)


class GenBoundsError(Exception):
    pass


class NotNilpotent(GenBoundsError):
    pass


class UnsupportedDegree(GenBoundsError):
    pass


class DomainError(GenBoundsError):
    pass


class Verdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class Interval:
    """Certified rational enclosure lo <= x <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def shift(self, c: Fraction) -> "Interval":
        return Interval(self.lo + c, self.hi + c)

    def scale(self, c: Fraction) -> "Interval":
        if c >= 0:
            return Interval(self.lo * c, self.hi * c)
        return Interval(self.hi * c, self.lo * c)

    def divide(self, other: "Interval") -> "Interval":
        if other.lo <= 0:
            raise ValueError("division by interval touching zero")
        cands = [
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        ]
        return Interval(min(cands), max(cands))

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi


def _atanh_series(z: Fraction, terms: int) -> Interval:
    """Enclosure of atanh(z) for 0 <= z < 1 by the odd power series."""
    s = Fraction(0)
    zz = z * z
    power = z
    for j in range(terms):
        s += power / (2 * j + 1)
        power *= zz
    # tail: sum_{j>=terms} z^(2j+1)/(2j+1) <= z^(2*terms+1) / ((2*terms+1)(1-z^2))
    tail = power / ((2 * terms + 1) * (1 - zz))
    return Interval(s, s + tail)


_LN2_CACHE: dict[int, Interval] = {}


def _ln2(terms: int) -> Interval:
    if terms not in _LN2_CACHE:
        # ln 2 = 2 atanh(1/3)
        inner = _atanh_series(Fraction(1, 3), terms)
        _LN2_CACHE[terms] = inner.scale(Fraction(2))
    return _LN2_CACHE[terms]


def ln_interval(x: Fraction | int, terms: int = 24) -> Interval:
    """Certified enclosure of ln(x) for rational x > 0."""
    x = Fraction(x)
    if x <= 0:
        raise DomainError("ln of a non-positive number")
    if x < 1:
        return -ln_interval(1 / x, terms)
    k = 0
    while x >= 2:
        x /= 2
        k += 1
    z = (x - 1) / (x + 1)  # in [0, 1/3)
    base = _atanh_series(z, terms).scale(Fraction(2))
    if k:
        return base + _ln2(terms).scale(Fraction(k))
    return base


_REFINEMENTS = (8, 16, 32, 64, 128)


def compare_to_log(target: Fraction, x: Fraction | int, max_terms: int = 128) -> Verdict:
    """Decide target <= ln(x), refining the enclosure until conclusive.

    HOLDS when target <= ln(x) is certain, FAILS when target > ln(x) is
    certain, BOUNDARY when the target still sits inside the enclosure at the
    maximum refinement.
    """
    x = Fraction(x)
    if x == 1:
        return Verdict.HOLDS if target <= 0 else Verdict.FAILS
    for terms in _REFINEMENTS:
        if terms > max_terms:
            break
        enc = ln_interval(x, terms)
        if target <= enc.lo:
            return Verdict.HOLDS
        if target > enc.hi:
            return Verdict.FAILS
    return Verdict.BOUNDARY


@dataclass(frozen=True)
class HarbaterInstance:
    """One instance of the generator-count conjecture d <= ln(n) + C."""

    d_G: int
    n: int
    C: Fraction
    tame: bool = True

    def __post_init__(self):
        if self.n < 1 or not is_squarefree(self.n):
            raise ValueError(f"n = {self.n} must be a square-free positive integer")


def harbater_check(inst: HarbaterInstance, max_terms: int = 128) -> Verdict:
    """Exact decision of d_G <= ln(n) + C.

    For n = 1 the log term vanishes and the comparison is exact rational
    arithmetic (boundary equality resolves to HOLDS, since the inequality is
    non-strict); otherwise the enclosure refines until decisive.
    """
    target = Fraction(inst.d_G) - Fraction(inst.C)
    if inst.n == 1:
        return Verdict.HOLDS if target <= 0 else Verdict.FAILS
    if target <= 0:
        return Verdict.HOLDS  # ln(n) > 0 for n >= 2
    return compare_to_log(target, inst.n, max_terms)


def odd_prime_count(n: int) -> int:
    return sum(1 for p in prime_factors(n) if p != 2)


def nilpotent_check(
    G: PermutationGroup, n: int, tame: bool = True
) -> tuple[bool, str]:
    """Counting route for nilpotent groups: d(G) <= #odd primes of n <= ln(n).

    Tame: each odd ramified prime contributes at most one generator, so
    d(G) <= omega_odd(n) is necessary and omega_odd(n) <= ln(n) closes the
    chain.  Wild mode allows the prime 2 to contribute two generators, giving
    the slack constant 2 on both comparisons.
    """
    if not G.is_nilpotent():
        raise NotNilpotent("the counting argument needs a nilpotent group")
    if not is_squarefree(n):
        raise ValueError(f"n = {n} must be square-free")
    d = G.d_min_generators()
    omega = odd_prime_count(n)
    slack = 0 if tame else 2
    if d > omega + slack:
        return False, (
            f"d(G) = {d} exceeds {omega} odd primes dividing n = {n}"
            + (f" plus wild slack {slack}" if slack else "")
        )
    log_ok = (
        Verdict.HOLDS
        if omega == 0
        else compare_to_log(Fraction(omega - slack), n)
    )
    if log_ok == Verdict.FAILS:
        return False, f"odd-prime count {omega} > ln({n}) + {slack}"
    return True, (
        f"d(G) = {d} <= {omega} odd primes of n = {n}"
        + (f" (+{slack} wild)" if slack else "")
        + f" <= ln({n})"
        + (f" + {slack}" if slack else "")
    )


def ray_class_generator_bound(
    field_degree: int, omega_m: int, h_or_d_cl: int, infinite_places: int = 0
) -> int:
    """Upper bound on d(Cl_m(F)) from the cyclic decomposition of (O/m)^*.

    Degree 2: 2*omega(m) + 2 + ceil(log2(h)); degree 3: 3*omega(m) + 3 +
    d(Cl(F)).  The ceiling turns the real bound log2(h) into the valid
    integer generator count.
    """
    if omega_m < 0 or h_or_d_cl < 0 or infinite_places < 0:
        raise ValueError("inputs must be non-negative")
    if infinite_places > field_degree:
        raise ValueError("more infinite places than the degree allows")
    if field_degree == 2:
        if h_or_d_cl < 1:
            raise ValueError("class number must be >= 1")
        return 2 * omega_m + 2 + (h_or_d_cl - 1).bit_length()
    if field_degree == 3:
        return 3 * omega_m + 3 + h_or_d_cl
    raise UnsupportedDegree(f"only degrees 2 and 3 are supported, not {field_degree}")


def omega_log_tradeoff(omega_m: int, m: int, slope: Fraction, B: int) -> bool:
    """Check omega(m) <= B + slope * ln(m) for a caller-supplied prime-count bound B.

    B stands in for ineffective prime-counting constants (pi(3^20) and kin),
    which are never computed here.
    """
    if m < 1 or omega_m < 0:
        raise ValueError("need m >= 1 and omega >= 0")
    slope = Fraction(slope)
    if not 0 < slope < 1:
        raise ValueError("slope must lie in (0, 1)")
    if omega_m <= B:
        return True
    target = Fraction(omega_m - B) / slope
    return compare_to_log(target, m) == Verdict.HOLDS


def class_number_inequality(
    abs_d: int, h: int, C: Fraction, slope: Fraction = Fraction(8, 10)
) -> bool:
    """Decide log2(h) < C + slope * ln(|d| / 4) for the GIVEN constant C.

    The underlying lemma's own constant is ineffective; this evaluates
    instances only.
    """
    if abs_d <= 4:
        raise DomainError("|d| must exceed 4")
    if h < 1:
        raise ValueError("class number must be >= 1")
    C = Fraction(C)
    slope = Fraction(slope)
    x = Fraction(abs_d, 4)
    for terms in _REFINEMENTS:
        lnx = ln_interval(x, terms)
        if h == 1:
            lhs = Interval(Fraction(0), Fraction(0))
        else:
            lhs = ln_interval(h, terms).divide(_ln2(terms))
        rhs = lnx.scale(slope).shift(C)
        if lhs.hi < rhs.lo:
            return True
        if lhs.lo >= rhs.hi:
            return False
    raise ArithmeticError("comparison undecided at maximum precision")


def class_rank_inequality(rank: int, rad_d: int, C: Fraction, slope: Fraction) -> bool:
    """Decide rank < C + slope * ln(rad(d)): the cubic-field analogue shape."""
    if rad_d < 1:
        raise ValueError("radical must be positive")
    C = Fraction(C)
    slope = Fraction(slope)
    target = (Fraction(rank) - C) / slope
    if rad_d == 1:
        return target < 0
    # ln of an integer >= 2 is irrational, so the strict and non-strict
    # comparisons coincide and the enclosure always decides
    v = compare_to_log(target, rad_d)
    if v == Verdict.BOUNDARY:
        raise ArithmeticError("comparison undecided at maximum precision")
    return v == Verdict.HOLDS


def nielsen_schreier_bound(degree_K: int, m: int, C: Fraction, terms: int = 48) -> Fraction:
    """Certified rational upper bound for 1 + degree_K * (ln(m) + C - 1).

    Bounds the generator count of a class group through the free-group index
    formula rank = 1 + index*(rank - 1).
    """
    if degree_K < 1 or m < 1:
        raise ValueError("need degree >= 1 and m >= 1")
    C = Fraction(C)
    hi = ln_interval(m, terms).hi if m > 1 else Fraction(0)
    return 1 + degree_K * (hi + C - 1)


def free_rank(index: int, rank: int) -> int:
    """Rank of an index-n subgroup of a free group of rank d: 1 + n(d-1)."""
    if index < 1 or rank < 1:
        raise ValueError("need index >= 1 and rank >= 1")
    return 1 + index * (rank - 1)
