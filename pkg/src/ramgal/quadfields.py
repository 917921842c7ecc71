"""Imaginary-quadratic arithmetic: form class groups, ray class numbers.

Class groups are computed from reduced binary quadratic forms with Gaussian
composition; ray class numbers for principal moduli (q) come from the exact
counting formula h_q = h * |(O/q)^*| / |image of the unit group|, which is
fully effective here because imaginary quadratic unit groups are finite.
Embedded cyclotomic class-number facts are table lookups that never guess.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .groups import AbelianInvariants, is_squarefree, prime_factors


class QuadError(Exception):
    pass


class NotFundamental(QuadError):
    pass


class NotNegative(QuadError):
    pass


class ModulusNotSupported(QuadError):
    pass


class ConditionViolated(QuadError):
    pass


class UnknownEntry(QuadError):
    pass


MODULUS_CAP = 100


def is_fundamental_discriminant(d: int) -> bool:
    if d % 4 == 1:
        return is_squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


@dataclass(frozen=True, order=True)
class QuadraticForm:
    """Positive-definite integral binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.discriminant >= 0:
            raise NotNegative(f"form {self} has non-negative discriminant")
        if self.a <= 0:
            raise ValueError(f"form {self} is not positive definite")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def reduce(self) -> "QuadraticForm":
        a, b, c = self.a, self.b, self.c
        while True:
            if c < a or (c == a and b < 0):
                a, b, c = c, -b, a
                continue
            if b > a or b <= -a:
                # normalize b into (-a, a]
                r = (a - b) // (2 * a)
                b2 = b + 2 * r * a
                c2 = a * r * r + b * r + c
                b, c = b2, c2
                continue
            break
        if (abs(b) == a or a == c) and b < 0:
            b = -b
        return QuadraticForm(a, b, c)

    def inverse(self) -> "QuadraticForm":
        return QuadraticForm(self.a, -self.b, self.c).reduce()

    def compose(self, other: "QuadraticForm") -> "QuadraticForm":
        """Gaussian composition, via a representative of other coprime to self.a."""
        if self.discriminant != other.discriminant:
            raise ValueError("forms of different discriminants")
        D = self.discriminant
        a1, b1 = self.a, self.b
        a2, b2 = _coprime_representative(other, a1)
        # unite: B = b1 mod 2a1, B = b2 mod 2a2 (solvable: gcd(a1,a2)=1, b1=b2 mod 2)
        B = _crt(b1, 2 * a1, b2, 2 * a2)
        a3 = a1 * a2
        c3 = (B * B - D) // (4 * a3)
        return QuadraticForm(a3, B, c3).reduce()

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    g = gcd(m1, m2)
    if (r2 - r1) % g != 0:
        raise ArithmeticError("CRT system unsolvable")
    l = m1 // g * m2
    _, s, _ = _egcd(m1 // g, m2 // g)
    diff = (r2 - r1) // g
    return (r1 + m1 * ((diff * s) % (m2 // g))) % l


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _coprime_representative(form: QuadraticForm, m: int) -> tuple[int, int]:
    """(a', b') equivalent to ``form`` with gcd(a', m) = 1.

    A primitive form represents values coprime to any fixed integer; search
    small primitive vectors (x, y) and transport b via a unimodular change of
    basis completing (x, y).
    """
    if gcd(form.a, m) == 1:
        return form.a, form.b
    for bnd in itertools.count(1):
        for x in range(-bnd, bnd + 1):
            for y in range(-bnd, bnd + 1):
                if abs(x) != bnd and abs(y) != bnd:
                    continue
                if gcd(x, y) != 1:
                    continue
                v = form.value(x, y)
                if v > 0 and gcd(v, m) == 1:
                    g, u, w = _egcd(x, y)
                    if g < 0:
                        u, w = -u, -w  # keep the substitution proper (det +1)
                    # matrix [[x, -w], [y, u]] has determinant xu + wy = 1
                    a2 = v
                    b2 = 2 * (
                        form.a * x * (-w) + form.c * y * u
                    ) + form.b * (x * u - w * y)
                    return a2, b2
        if bnd > 64:
            raise ArithmeticError("no coprime representative found")


def reduced_forms(d: int) -> list[QuadraticForm]:
    """All reduced forms of fundamental discriminant d < 0, by enumeration."""
    if d >= 0:
        raise NotNegative(f"discriminant {d} is not negative")
    if not is_fundamental_discriminant(d):
        raise NotFundamental(f"discriminant {d} is not fundamental")
    out = []
    amax = isqrt(abs(d) // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            if (b - d) % 2 != 0:
                continue
            if (b * b - d) % (4 * a) != 0:
                continue
            c = (b * b - d) // (4 * a)
            f = QuadraticForm(a, b, c)
            if f.is_reduced():
                out.append(f)
    return sorted(out)


@dataclass(frozen=True)
class ClassGroupData:
    discriminant: int
    h: int
    invariants: AbelianInvariants
    forms: tuple[QuadraticForm, ...]


def form_class_group(d: int) -> ClassGroupData:
    """Class number and invariant factors of Cl(Q(sqrt(d))) for fundamental d < 0."""
    forms = reduced_forms(d)
    h = len(forms)
    # element orders by repeated composition with the principal form as identity
    principal = min(forms, key=lambda f: (f.a, abs(f.b)))
    assert principal.a == 1
    orders = []
    for f in forms:
        acc = f
        o = 1
        while acc != principal:
            acc = acc.compose(f)
            o += 1
            if o > h:
                raise ArithmeticError("composition failed to cycle")
        orders.append(o)
    invariants = _invariants_from_orders(h, orders)
    return ClassGroupData(d, h, invariants, tuple(forms))


def _invariants_from_orders(n: int, orders: list[int]) -> AbelianInvariants:
    """Invariant factors of an abelian group from its element-order census."""
    primary: dict[int, list[int]] = {}
    for p in prime_factors(n):
        vmax = 0
        m = n
        while m % p == 0:
            m //= p
            vmax += 1
        es = []
        for j in range(vmax + 1):
            cnt = sum(1 for o in orders if _ppart(o, p) <= p**j)
            e = 0
            while cnt % p == 0:
                cnt //= p
                e += 1
            es.append(e)
        cj = [es[j] - es[j - 1] for j in range(1, len(es))]
        lam = [sum(1 for c in cj if c >= i) for i in range(1, max(cj, default=0) + 1)]
        lam = [x for x in lam if x > 0]
        if lam:
            primary[p] = sorted(lam, reverse=True)
    depth = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(depth):
        dd = 1
        for p, es in primary.items():
            if i < len(es):
                dd *= p ** es[i]
        factors.append(dd)
    return AbelianInvariants(tuple(sorted(factors)))


def _ppart(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


@dataclass(frozen=True)
class RayModulus:
    """A modulus m0 * m_inf; only principal finite parts (q) are supported here."""

    finite_part: int
    infinite_part: frozenset = frozenset()

    def __post_init__(self):
        if self.finite_part < 1:
            raise ValueError("finite part must be a positive integer")
        if self.infinite_part:
            raise ModulusNotSupported(
                "imaginary quadratic fields have no real places to include"
            )


class _ResidueRing:
    """O_K / qO_K for the maximal order of Q(sqrt(d)), d fundamental < 0.

    Basis (1, w) with w = sqrt(d)/2... i.e. w^2 = d/4 for d = 0 mod 4, and
    w = (1 + sqrt(d))/2 with w^2 = w + (d-1)/4 for d = 1 mod 4.
    """

    def __init__(self, d: int, q: int):
        self.d = d
        self.q = q
        if d % 4 == 0:
            self.s, self.t = d // 4, 0  # w^2 = s + t*w
        else:
            self.s, self.t = (d - 1) // 4, 1

    def mul(self, u, v):
        x1, y1 = u
        x2, y2 = v
        yy = y1 * y2
        return (
            (x1 * x2 + yy * self.s) % self.q,
            (x1 * y2 + x2 * y1 + yy * self.t) % self.q,
        )

    def norm(self, u) -> int:
        x, y = u
        if self.d % 4 == 0:
            return (x * x - self.s * y * y) % self.q
        return (x * x + x * y + y * y * ((1 - self.d) // 4)) % self.q

    def units(self) -> list[tuple[int, int]]:
        q = self.q
        return [
            (x, y)
            for x in range(q)
            for y in range(q)
            if gcd(self.norm((x, y)), q) == 1
        ]

    def torsion_unit_images(self) -> set[tuple[int, int]]:
        """Images of the global units of O_K in this residue ring."""
        q = self.q
        units = {(1 % q, 0), ((-1) % q, 0)}
        if self.d == -4:
            units.add((0, 1 % q))  # i = w
            units.add((0, (-1) % q))
        if self.d == -3:
            w = (0, 1 % q)  # w = (1+sqrt(-3))/2, a primitive 6th root of unity
            acc = (1 % q, 0)
            for _ in range(6):
                acc = self.mul(acc, w)
                units.add(acc)
        return units


def residue_unit_count(d: int, q: int) -> int:
    """|(O_K/q)^*| by explicit enumeration over the standard integral basis."""
    if q * q > 10**4:
        raise ModulusNotSupported(f"modulus ({q}) has more than 10^4 residues")
    return len(_ResidueRing(d, q).units())


def ray_class_number(d: int, modulus: RayModulus | int) -> int:
    """Ray class number h_(q) of the imaginary quadratic field of discriminant d.

    h_(q) = h * |(O/q)^*| / |image of the unit group|; exact because the unit
    group is the finite torsion group {+-1} (plus the extra units for
    d = -3, -4).
    """
    if d >= 0:
        raise NotNegative(f"discriminant {d} is not negative")
    if not is_fundamental_discriminant(d):
        raise NotFundamental(f"discriminant {d} is not fundamental")
    q = modulus.finite_part if isinstance(modulus, RayModulus) else int(modulus)
    if q < 1 or q > MODULUS_CAP:
        raise ModulusNotSupported(f"finite part {q} outside supported range 1..{MODULUS_CAP}")
    h = form_class_group(d).h
    if q == 1:
        return h
    ring = _ResidueRing(d, q)
    unit_count = residue_unit_count(d, q)
    image = {u for u in ring.torsion_unit_images()}
    num = h * unit_count
    if num % len(image) != 0:
        raise ArithmeticError("unit image does not divide; counting bug")
    return num // len(image)


def residue_unit_group(d: int, prime_power_ideal_data: tuple[int, int, int, int]) -> AbelianInvariants:
    """Structure of (O/P^k)^* for a degree-f, index-e prime P over p.

    Uses the local unit-group structure theorem (Cohen, Adv. Topics in
    Computational Number Theory, cor. 4.2.11), valid when p >= min(e+2, k):
    with k + e - 2 = e*q + r, 0 <= r < e,

        (O/P^k)^* = Z/(p^f - 1) x (Z/p^q)^((r+1)f) x (Z/p^(q-1))^((e-r-1)f).
    """
    p, f, e, k = prime_power_ideal_data
    if p < 2 or f < 1 or e < 1 or k < 1:
        raise ValueError("need p prime and f, e, k >= 1")
    if e * f > 2:
        raise ValueError("quadratic fields only: e*f must be 1 or 2")
    if not p >= min(e + 2, k):
        raise ConditionViolated(f"need p >= min(e+2, k); got p={p}, e={e}, k={k}")
    if k == 1:
        return AbelianInvariants.from_factor_list([p**f - 1])
    qq, r = divmod(k + e - 2, e)
    factors = [p**f - 1]
    factors.extend([p**qq] * ((r + 1) * f))
    if qq >= 2:
        factors.extend([p ** (qq - 1)] * ((e - r - 1) * f))
    return AbelianInvariants.from_factor_list([x for x in factors if x > 1])


# -- embedded cyclotomic class-number facts ----------------------------------

# Real cyclotomic fields Q(zeta_p + zeta_p^-1) have class number 1 for all
# primes p <= 151 (J. C. Miller, Math. Comp. 84 (2015)).
_REAL_CYCLOTOMIC_H1_MAX_PRIME = 151

# p-power cyclotomic fields Q(zeta_{p^k}): class number 1 entries, plus the
# first 5-power field with non-trivial class group (Washington, Introduction
# to Cyclotomic Fields, class number tables):  h(Q(zeta_125)) > 1 while
# h(Q(zeta_5)) = h(Q(zeta_25)) = 1; h(Q(zeta_p)) = 1 for primes p < 23.
_PPOWER_CLASS_NUMBER_ONE: dict[tuple[int, int], bool] = {
    **{(p, 1): True for p in (3, 5, 7, 11, 13, 17, 19)},
    (5, 2): True,
    (5, 3): False,
}


def cyclotomic_fact(p: int, k: int = 1, real: bool = False) -> bool:
    """Table lookup: does Q(zeta_{p^k}) (or its real subfield) have class number 1?

    Raises UnknownEntry for anything outside the embedded tables; the tables
    never guess.
    """
    if real:
        if k != 1:
            raise UnknownEntry(f"no real cyclotomic entry for p^{k}")
        if p in _real_primes():
            return True
        raise UnknownEntry(f"no real cyclotomic entry for p = {p}")
    ans = _PPOWER_CLASS_NUMBER_ONE.get((p, k))
    if ans is None:
        raise UnknownEntry(f"no entry for the {p}^{k} cyclotomic field")
    return ans


def _real_primes() -> set[int]:
    out = set()
    for p in range(3, _REAL_CYCLOTOMIC_H1_MAX_PRIME + 1):
        if len(prime_factors(p)) == 1 and prime_factors(p)[0] == p:
            out.add(p)
    return out


def max_known_trivial_ppower(p: int) -> int:
    """Largest k with h(Q(zeta_{p^j})) = 1 known from the table for all j <= k.

    Used for the cyclic-quotient condition: if Q(zeta_{p^(t+1)}) is the first
    p-power cyclotomic field with non-trivial class group, a non-excluded
    solvable group ramified only at p has a cyclic quotient of order p^t.
    """
    k = 0
    while _PPOWER_CLASS_NUMBER_ONE.get((p, k + 1)) is True:
        k += 1
    if k == 0:
        raise UnknownEntry(f"no p-power cyclotomic entries for p = {p}")
    return k


# Documentation-only fixture: a degree-6 polynomial generating the Hilbert
# class field of Q(sqrt(-31)), the S3-extension of Q ramified only at 31
# (classical; see e.g. the LMFDB entry for Q(sqrt(-31))).  No polynomial
# arithmetic over number fields is performed on it.
HILBERT_CLASS_FIELD_M31_POLY = (30691, 1736, 2947, 126, 94, 2, 1)  # low->high degree
