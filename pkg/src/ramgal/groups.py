"""Exact finite-group engine over explicit permutation element sets.

Every group handled here is materialised in full: the orders of interest stay
around 1000, where explicit element sets beat stabiliser chains on simplicity
and make every predicate checkable by direct enumeration.  Elements are
permutations of {0, ..., degree-1}; composition uses ``bytes.translate`` when
the degree fits in a byte, which keeps closures fast enough for the survey
workloads.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import gcd, lcm

CLOSURE_CAP = 10_000
SUBGROUP_CAP = 1008


class GroupError(Exception):
    pass


class BadDegree(GroupError):
    pass


class CapExceeded(GroupError):
    pass


class NotADivisor(GroupError):
    pass


class NotNormal(GroupError):
    pass


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1
    return True


_CYCLES_RE = re.compile(r"\(([\d\s]*)\)")


class Permutation:
    """Bijection of {0, ..., degree-1}, stored as its tuple of images.

    Immutable, hashable and totally ordered by the image tuple (so the
    identity sorts first).  ``p * q`` composes right-to-left: apply q, then p.
    """

    __slots__ = ("images", "_b", "_tbl", "_hash")

    _PAD = bytes(range(256))

    def __init__(self, images):
        imgs = tuple(int(x) for x in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {imgs!r}")
        self.images = imgs
        self._set_bytes(imgs)
        self._hash = hash(imgs)

    def _set_bytes(self, imgs):
        if len(imgs) <= 256:
            self._b = bytes(imgs)
            self._tbl = self._b + Permutation._PAD[len(imgs):]
        else:
            self._b = None
            self._tbl = None

    @classmethod
    def _raw(cls, imgs: tuple[int, ...]) -> "Permutation":
        p = cls.__new__(cls)
        p.images = imgs
        p._set_bytes(imgs)
        p._hash = hash(imgs)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self.images) != len(other.images):
            raise BadDegree("cannot compose permutations of different degrees")
        if self._b is not None:
            return Permutation._raw(tuple(other._b.translate(self._tbl)))
        a = self.images
        return Permutation._raw(tuple(a[x] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._raw(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, point: int) -> int:
        return self.images[point]

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each rotated to start at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __le__(self, other: "Permutation") -> bool:
        return self.images <= other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"

    def __str__(self) -> str:
        return self.cycle_string()


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation, e.g. "(0 1 2)(3 4)"; "()" is the identity."""
    stripped = text.strip()
    if not re.fullmatch(r"(\s*\([\d\s]*\)\s*)+", stripped):
        raise ValueError(f"bad cycle notation: {text!r}")
    images = list(range(degree))
    used: set[int] = set()
    for body in _CYCLES_RE.findall(stripped):
        pts = [int(t) for t in body.split()]
        if not pts:
            continue
        if any(p >= degree or p < 0 for p in pts):
            raise ValueError(f"point out of range for degree {degree}: {text!r}")
        if used & set(pts) or len(set(pts)) != len(pts):
            raise ValueError(f"cycles not disjoint: {text!r}")
        used.update(pts)
        for i, p in enumerate(pts):
            images[p] = pts[(i + 1) % len(pts)]
    return Permutation(images)


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors d_1 | d_2 | ... | d_k of a finite abelian group, each >= 2."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        for i, d in enumerate(fs):
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if i + 1 < len(fs) and fs[i + 1] % d != 0:
                raise ValueError(f"divisibility chain broken: {fs}")

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def group_order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def primary_exponents(self) -> dict[int, tuple[int, ...]]:
        """Per-prime exponent partitions, descending; () never appears."""
        parts: dict[int, list[int]] = {}
        for d in self.invariant_factors:
            for p in prime_factors(d):
                e = 0
                m = d
                while m % p == 0:
                    m //= p
                    e += 1
                parts.setdefault(p, []).append(e)
        return {p: tuple(sorted(es, reverse=True)) for p, es in parts.items()}

    def is_quotient_of(self, other: "AbelianInvariants") -> bool:
        """Whether this group is a quotient of ``other``.

        For finite abelian groups, being a quotient is equivalent to the
        componentwise comparison of the descending primary exponent lists.
        """
        mine = self.primary_exponents()
        theirs = other.primary_exponents()
        for p, exps in mine.items():
            have = theirs.get(p, ())
            if len(exps) > len(have):
                return False
            if any(a > b for a, b in zip(exps, have)):
                return False
        return True

    @classmethod
    def from_factor_list(cls, factors) -> "AbelianInvariants":
        """Canonicalise an arbitrary product of cyclic groups Z/m1 x Z/m2 x ..."""
        primary: dict[int, list[int]] = {}
        for m in factors:
            if m < 1:
                raise ValueError(f"bad cyclic factor {m}")
            for p in prime_factors(m):
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                primary.setdefault(p, []).append(e)
        depth = max((len(v) for v in primary.values()), default=0)
        out = []
        for i in range(depth):
            d = 1
            for p, es in primary.items():
                es_sorted = sorted(es, reverse=True)
                if i < len(es_sorted):
                    d *= p ** es_sorted[i]
            out.append(d)
        return cls(tuple(sorted(out)))

    @classmethod
    def from_abelian_group(cls, group: "PermutationGroup") -> "AbelianInvariants":
        """Recover invariant factors from a materialised abelian group.

        Uses the element-order census: for each prime p the count of elements
        of order dividing p^j determines the p-primary partition.
        """
        n = group.order
        if n == 1:
            return cls(())
        if not group.is_abelian():
            raise ValueError("group is not abelian")
        orders = [group.element_order(i) for i in range(n)]
        primary: dict[int, list[int]] = {}
        for p in prime_factors(n):
            vmax = 0
            m = n
            while m % p == 0:
                m //= p
                vmax += 1
            # e_j = v_p(#{x : p-part of ord(x) divides p^j}) = sum_i min(lambda_i, j)
            es = []
            for j in range(vmax + 1):
                cnt = sum(1 for o in orders if _ppart(o, p) <= p**j)
                e = 0
                while cnt % p == 0:
                    cnt //= p
                    e += 1
                es.append(e)
            # c_j = e_j - e_{j-1} counts the parts of size >= j; conjugate back
            cj = [es[j] - es[j - 1] for j in range(1, len(es))]
            lam = []
            for i in range(1, max(cj, default=0) + 1):
                lam.append(sum(1 for c in cj if c >= i))
            lam = [x for x in lam if x > 0]
            if lam:
                primary[p] = sorted(lam, reverse=True)
        factors = []
        depth = max((len(v) for v in primary.values()), default=0)
        for i in range(depth):
            d = 1
            for p, es in primary.items():
                if i < len(es):
                    d *= p ** es[i]
            factors.append(d)
        return cls(tuple(sorted(factors)))


def _ppart(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


class Subgroup:
    """A subgroup of a materialised group, held as an index mask.

    ``mask`` is a frozenset of indices into ``parent.elements``; the masked
    subset is closed under composition and inverses by construction.
    """

    __slots__ = ("parent", "mask", "_gens")

    def __init__(self, parent: "PermutationGroup", mask: frozenset, gens_idx=None):
        self.parent = parent
        self.mask = mask
        self._gens = tuple(gens_idx) if gens_idx is not None else None

    @property
    def order(self) -> int:
        return len(self.mask)

    @property
    def gens_idx(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = self.parent._greedy_gens(self.mask)
        return self._gens

    def elements(self) -> tuple[Permutation, ...]:
        els = self.parent.elements
        return tuple(els[i] for i in sorted(self.mask))

    def generators(self) -> tuple[Permutation, ...]:
        els = self.parent.elements
        return tuple(els[i] for i in self.gens_idx)

    def __contains__(self, perm: Permutation) -> bool:
        i = self.parent._idx.get(perm)
        return i is not None and i in self.mask

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def is_normal(self) -> bool:
        G = self.parent
        for g in G._gen_idx:
            ginv = G._inv[g]
            for h in self.gens_idx:
                if G._pidx(G._pidx(ginv, h), g) not in self.mask:
                    return False
        return True

    def is_abelian(self) -> bool:
        G = self.parent
        gens = self.gens_idx
        return all(
            G._pidx(a, b) == G._pidx(b, a) for a, b in itertools.combinations(gens, 2)
        )

    def is_solvable(self) -> bool:
        G = self.parent
        mask, gens = self.mask, self.gens_idx
        while True:
            seeds = G._commutator_seeds(gens)
            if not seeds:
                return True
            dmask, dgens = G._normal_closure_idx(seeds, conj_gens=gens)
            if len(dmask) == len(mask):
                return False
            if len(dmask) == 1:
                return True
            mask, gens = dmask, dgens

    def conjugate_by(self, g_idx: int) -> "Subgroup":
        G = self.parent
        ginv = G._inv[g_idx]
        gens = tuple(G._pidx(G._pidx(ginv, h), g_idx) for h in self.gens_idx)
        mask = frozenset(G._pidx(G._pidx(ginv, h), g_idx) for h in self.mask)
        return Subgroup(G, mask, gens)

    def as_group(self) -> "PermutationGroup":
        """Materialise as a standalone PermutationGroup on the same points."""
        els = self.elements()
        gens = self.generators() or (Permutation.identity(self.parent.degree),)
        return PermutationGroup(self.parent.degree, gens, tuple(sorted(els)))

    def validate(self) -> None:
        """Check closure under products/inverses; raises on violation."""
        G = self.parent
        idxs = list(self.mask)
        for i in idxs:
            if G._inv[i] not in self.mask:
                raise GroupError("subgroup mask not closed under inverse")
            for j in idxs:
                if G._pidx(i, j) not in self.mask:
                    raise GroupError("subgroup mask not closed under product")
        if G.order % len(self.mask) != 0:
            raise GroupError("Lagrange violated")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"


class PermutationGroup:
    """A finite permutation group with a fully materialised element set.

    Construct with :func:`closure`; the constructor trusts its inputs.
    Instances are immutable and safe to share across threads; expensive
    derived data (classes, subgroup lattice, ...) is cached on first use.
    """

    def __init__(self, degree, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self._idx = {p: i for i, p in enumerate(self.elements)}
        if degree <= 256:
            self._eb = [p._b for p in self.elements]
            self._etbl = [p._tbl for p in self.elements]
            self._bidx = {b: i for i, b in enumerate(self._eb)}
        else:
            self._eb = None
            self._tidx = {p.images: i for i, p in enumerate(self.elements)}
        self._inv = [self._idx[p.inverse()] for p in self.elements]
        self._gen_idx = tuple(dict.fromkeys(self._idx[g] for g in self.generators))
        self._orders: list[int] | None = None
        self._classes: list[tuple[int, ...]] | None = None
        self._normals = None
        self._subgroups = None
        self._derived = None
        self._sylows: dict[int, Subgroup] = {}
        self._solvable_orders = None

    # -- basics ----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self._idx

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"PermutationGroup(order={self.order}, degree={self.degree})"

    def index_of(self, perm: Permutation) -> int:
        return self._idx[perm]

    def _pidx(self, i: int, j: int) -> int:
        """Index of elements[i] * elements[j]."""
        if self._eb is not None:
            return self._bidx[self._eb[j].translate(self._etbl[i])]
        a = self.elements[i].images
        return self._tidx[tuple(a[x] for x in self.elements[j].images)]

    def element_order(self, i: int) -> int:
        if self._orders is None:
            self._orders = [p.order() for p in self.elements]
        return self._orders[i]

    def element_orders(self) -> set[int]:
        return {self.element_order(i) for i in range(self.order)}

    def max_cyclic_order(self) -> int:
        return max(self.element_orders())

    def cyclic_subgroup_orders(self) -> set[int]:
        """Orders of cyclic subgroups = all divisors realised by element orders."""
        out = set()
        for o in self.element_orders():
            for d in range(1, o + 1):
                if o % d == 0:
                    out.add(d)
        return out

    def is_abelian(self) -> bool:
        return all(
            self._pidx(a, b) == self._pidx(b, a)
            for a, b in itertools.combinations(self._gen_idx, 2)
        )

    def is_cyclic(self) -> bool:
        return self.max_cyclic_order() == self.order

    def center(self) -> Subgroup:
        mask = frozenset(
            i
            for i in range(self.order)
            if all(self._pidx(i, g) == self._pidx(g, i) for g in self._gen_idx)
        )
        return Subgroup(self, mask)

    def whole_subgroup(self) -> Subgroup:
        return Subgroup(self, frozenset(range(self.order)), self._gen_idx)

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, frozenset({0}), ())

    # -- index-level machinery --------------------------------------------

    def _close_idx(self, gens_idx) -> frozenset:
        """Subgroup generated by the given element indices (BFS closure)."""
        seen = {0}
        frontier = [0]
        gi = [g for g in dict.fromkeys(gens_idx) if g != 0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gi:
                    c = self._pidx(a, g)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(seen)

    def _generates_whole(self, gens_idx) -> bool:
        seen = {0}
        frontier = [0]
        gi = [g for g in dict.fromkeys(gens_idx) if g != 0]
        n = self.order
        while frontier:
            nxt = []
            for a in frontier:
                for g in gi:
                    c = self._pidx(a, g)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            if len(seen) == n:
                return True
            frontier = nxt
        return len(seen) == n

    def _greedy_gens(self, mask: frozenset) -> tuple[int, ...]:
        gens: list[int] = []
        cur = frozenset({0})
        for i in sorted(mask):
            if i not in cur:
                gens.append(i)
                cur = self._close_idx(gens)
                if len(cur) == len(mask):
                    break
        return tuple(gens)

    def _commutator_seeds(self, gens_idx) -> list[int]:
        seeds = set()
        for a in gens_idx:
            for b in gens_idx:
                c = self._pidx(
                    self._pidx(self._pidx(self._inv[a], self._inv[b]), a), b
                )
                if c != 0:
                    seeds.add(c)
        return sorted(seeds)

    def _normal_closure_idx(self, seeds, conj_gens=None):
        """Normal closure of ``seeds`` under conjugation by ``conj_gens``.

        Returns (mask, generating indices).  Alternates subgroup closure with
        conjugation of the generating set until stable.
        """
        conj = list(conj_gens) if conj_gens is not None else list(self._gen_idx)
        gens = list(dict.fromkeys(s for s in seeds if s != 0))
        if not gens:
            return frozenset({0}), ()
        while True:
            sub = self._close_idx(gens)
            new = []
            for g in conj:
                ginv = self._inv[g]
                for s in gens:
                    c = self._pidx(self._pidx(ginv, s), g)
                    if c not in sub:
                        new.append(c)
            if not new:
                return sub, tuple(gens)
            gens.extend(dict.fromkeys(new))

    def normal_closure(self, seed_perms) -> Subgroup:
        seeds = [self._idx[p] for p in seed_perms]
        mask, gens = self._normal_closure_idx(seeds)
        return Subgroup(self, mask, gens)

    # -- conjugacy and normal structure ------------------------------------

    def _classes_idx(self) -> list[tuple[int, ...]]:
        if self._classes is None:
            n = self.order
            seen = [False] * n
            classes = []
            conj = [(g, self._inv[g]) for g in self._gen_idx]
            for i in range(n):
                if seen[i]:
                    continue
                orb = [i]
                seen[i] = True
                k = 0
                while k < len(orb):
                    x = orb[k]
                    k += 1
                    for g, ginv in conj:
                        c = self._pidx(self._pidx(ginv, x), g)
                        if not seen[c]:
                            seen[c] = True
                            orb.append(c)
                classes.append(tuple(sorted(orb)))
            self._classes = classes
        return self._classes

    def conjugacy_classes(self) -> list[tuple[Permutation, ...]]:
        els = self.elements
        return [tuple(els[i] for i in cls) for cls in self._classes_idx()]

    def class_representatives(self) -> list[int]:
        return [cls[0] for cls in self._classes_idx()]

    def normal_subgroups(self) -> list[Subgroup]:
        """All normal subgroups, as the join-closure of class normal closures.

        Every normal subgroup is a join of normal closures of its elements, so
        saturating the class-closure seeds under pairwise join is complete.
        """
        if self._normals is None:
            by_mask: dict[frozenset, tuple[int, ...]] = {
                frozenset({0}): (),
                frozenset(range(self.order)): self._gen_idx,
            }
            for cls in self._classes_idx()[1:]:
                mask, gens = self._normal_closure_idx([cls[0]])
                by_mask.setdefault(mask, gens)
            changed = True
            while changed:
                changed = False
                items = list(by_mask.items())
                for (ma, ga), (mb, gb) in itertools.combinations(items, 2):
                    if ma <= mb or mb <= ma:
                        continue
                    inter = len(ma & mb)
                    if len(ma) * len(mb) // inter == self.order:
                        continue  # join is the whole group, already present
                    join = self._close_idx(ga + gb)
                    if join not in by_mask:
                        by_mask[join] = ga + gb
                        changed = True
            subs = [Subgroup(self, m, g) for m, g in by_mask.items()]
            for s in subs:
                if not s.is_normal():
                    raise GroupError("normal subgroup enumeration produced a non-normal subgroup")
            self._normals = sorted(subs, key=lambda s: (s.order, tuple(sorted(s.mask))))
        return list(self._normals)

    def quotient(self, N: Subgroup) -> "PermutationGroup":
        """Quotient G/N acting on left cosets by left translation."""
        if N.parent is not self:
            raise ValueError("subgroup belongs to a different group")
        if not N.is_normal():
            raise NotNormal(f"subgroup of order {N.order} is not normal")
        n = self.order
        cos_of = [-1] * n
        reps = []
        for i in range(n):
            if cos_of[i] < 0:
                cid = len(reps)
                reps.append(i)
                for h in N.mask:
                    cos_of[self._pidx(i, h)] = cid
        m = len(reps)
        imgs = []
        for x in range(n):
            imgs.append(Permutation._raw(tuple(cos_of[self._pidx(x, r)] for r in reps)))
        # x acts by c -> cos(x * rep_c); this is a homomorphism on left cosets
        gens = tuple(dict.fromkeys(imgs[g] for g in self._gen_idx))
        els = tuple(sorted(set(imgs)))
        if not gens:
            gens = (Permutation.identity(m),)
        return PermutationGroup(m, gens, els)

    # -- series and p-structure --------------------------------------------

    def derived_series(self) -> list[Subgroup]:
        if self._derived is None:
            terms = [self.whole_subgroup()]
            while True:
                H = terms[-1]
                seeds = self._commutator_seeds(H.gens_idx)
                if not seeds:
                    D = self.trivial_subgroup()
                else:
                    mask, gens = self._normal_closure_idx(seeds, conj_gens=H.gens_idx)
                    D = Subgroup(self, mask, gens)
                if D.mask == H.mask:
                    break
                terms.append(D)
                if D.order == 1:
                    break
            self._derived = terms
        return list(self._derived)

    def derived_subgroup(self) -> Subgroup:
        series = self.derived_series()
        return series[1] if len(series) > 1 else series[0]

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].order == 1

    def is_perfect(self) -> bool:
        return self.derived_subgroup().order == self.order and self.order > 1

    def sylow(self, p: int) -> Subgroup:
        if p < 2 or len(prime_factors(p)) != 1 or prime_factors(p)[0] != p:
            raise ValueError(f"{p} is not prime")
        if self.order % p != 0:
            raise NotADivisor(f"{p} does not divide the group order {self.order}")
        if p in self._sylows:
            return self._sylows[p]
        target = _ppart(self.order, p)
        start = next(
            i for i in range(1, self.order) if self.element_order(i) % p == 0
        )
        start = self._power_idx(start, self.element_order(start) // _ppart(self.element_order(start), p))
        mask = self._close_idx([start])
        gens = [start]
        while len(mask) < target:
            norm = self._normalizer_idx(mask, gens)
            ext = None
            for g in norm:
                if g in mask:
                    continue
                o = self.element_order(g)
                po = _ppart(o, p)
                if po == 1:
                    continue
                cand = self._power_idx(g, o // po)
                if cand not in mask:
                    ext = cand
                    break
            if ext is None:
                raise GroupError("Sylow construction stalled")  # cannot happen
            gens.append(ext)
            mask = self._close_idx(gens)
        sub = Subgroup(self, mask, gens)
        self._sylows[p] = sub
        return sub

    def _power_idx(self, i: int, k: int) -> int:
        result = 0
        base = i
        while k:
            if k & 1:
                result = self._pidx(result, base)
            base = self._pidx(base, base)
            k >>= 1
        return result

    def _normalizer_idx(self, mask, gens) -> list[int]:
        out = []
        for g in range(self.order):
            ginv = self._inv[g]
            if all(self._pidx(self._pidx(ginv, h), g) in mask for h in gens):
                out.append(g)
        return out

    def is_nilpotent(self) -> bool:
        return all(self.sylow(p).is_normal() for p in prime_factors(self.order))

    def generated_by_sylows(self, p: int) -> Subgroup:
        """Normal subgroup generated by all Sylow p-subgroups.

        The quotient by it is the largest quotient of order prime to p.
        """
        if self.order % p != 0:
            return self.trivial_subgroup()
        P = self.sylow(p)
        mask, gens = self._normal_closure_idx(P.gens_idx)
        sub = Subgroup(self, mask, gens)
        if (self.order // sub.order) % p == 0:
            raise GroupError("Sylow-generated subgroup has p dividing its index")
        return sub

    # -- subgroup lattice ----------------------------------------------------

    def all_subgroups(self, cap: int = SUBGROUP_CAP) -> list[Subgroup]:
        """Complete subgroup list by layered cyclic extension.

        Starts from all cyclic subgroups and repeatedly adjoins a single
        element (one representative per coset, since <H, g> = <H, gh>),
        deduplicating by element-set, until a fixpoint.
        """
        if self.order > cap:
            raise CapExceeded(f"subgroup enumeration cap {cap} < order {self.order}")
        if self._subgroups is None:
            n = self.order
            subs: dict[frozenset, tuple[int, ...]] = {frozenset({0}): ()}
            for i in range(1, n):
                mask = self._close_idx([i])
                subs.setdefault(mask, (i,))
            worklist = list(subs.items())
            while worklist:
                mask, gens = worklist.pop()
                if len(mask) == n:
                    continue
                covered = set(mask)
                for g in range(1, n):
                    if g in covered:
                        continue
                    for h in mask:
                        covered.add(self._pidx(g, h))
                    k = self._close_idx(gens + (g,))
                    if k not in subs:
                        subs[k] = gens + (g,)
                        worklist.append((k, gens + (g,)))
            out = [Subgroup(self, m, g if g else None) for m, g in subs.items()]
            self._subgroups = sorted(out, key=lambda s: (s.order, tuple(sorted(s.mask))))
        return list(self._subgroups)

    def subgroup_orders(self) -> set[int]:
        return {s.order for s in self.all_subgroups()}

    def solvable_subgroup_orders(self) -> set[int]:
        if self._solvable_orders is None:
            out = set()
            for s in self.all_subgroups():
                if s.order in out:
                    continue
                if s.is_solvable():
                    out.add(s.order)
            self._solvable_orders = out
        return set(self._solvable_orders)

    def frattini(self) -> Subgroup:
        """Intersection of all maximal subgroups.

        For p-groups the result is cross-checked against <[G,G], p-th powers>.
        """
        subs = self.all_subgroups()
        proper = [s for s in subs if s.order < self.order]
        if not proper:
            return self.trivial_subgroup()
        maximal = []
        for s in proper:
            if not any(
                t.order > s.order and s.mask < t.mask for t in proper
            ):
                maximal.append(s)
        inter = frozenset(range(self.order))
        for s in maximal:
            inter &= s.mask
        frat = Subgroup(self, inter)
        ps = prime_factors(self.order)
        if len(ps) == 1:
            p = ps[0]
            seeds = set(self._commutator_seeds(self._gen_idx))
            seeds.update(self._power_idx(i, p) for i in range(self.order))
            seeds.discard(0)
            check = self._close_idx(sorted(seeds))
            if check != inter:
                raise GroupError("Frattini self-check failed for p-group")
        return frat

    # -- generation --------------------------------------------------------

    def d_min_generators(self, cap: int = SUBGROUP_CAP) -> int:
        """Exact minimal size of a generating set.

        Searches k = 0, 1, 2, ...; the first generator only ranges over
        conjugacy-class representatives, which is valid because conjugating a
        generating set yields a generating set.
        """
        if self.order > cap:
            raise CapExceeded(f"generator search cap {cap} < order {self.order}")
        n = self.order
        if n == 1:
            return 0
        if self.max_cyclic_order() == n:
            return 1
        reps = [c[0] for c in self._classes_idx()[1:]]
        for k in range(2, n.bit_length() + 1):
            for a in reps:
                for rest in itertools.combinations_with_replacement(range(1, n), k - 1):
                    if self._generates_whole((a,) + rest):
                        return k
        raise GroupError("generator search failed")  # cannot happen

    def abelianization(self) -> AbelianInvariants:
        D = self.derived_subgroup()
        if D.order == self.order:
            return AbelianInvariants(())
        Q = self.quotient(D)
        return AbelianInvariants.from_abelian_group(Q)


def closure(generators, degree: int | None = None, cap: int = CLOSURE_CAP) -> PermutationGroup:
    """Materialise the group generated by the given permutations.

    Raises CapExceeded if the closure grows past ``cap`` and BadDegree on
    mismatched permutation degrees (or a missing degree for an empty
    generating set).
    """
    gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
    if degree is None:
        if not gens:
            raise BadDegree("degree is required for an empty generating set")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise BadDegree(f"generator degree {g.degree} != {degree}")
    ident = Permutation.identity(degree)
    els = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = a * g
                if c not in els:
                    if len(els) >= cap:
                        raise CapExceeded(f"closure exceeded cap {cap}")
                    els.add(c)
                    nxt.append(c)
        frontier = nxt
    return PermutationGroup(degree, tuple(dict.fromkeys(gens)), tuple(sorted(els)))


# -- stock constructions ----------------------------------------------------


def cyclic_group(n: int) -> PermutationGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return closure([], degree=1)
    return closure([Permutation(tuple(range(1, n)) + (0,))])


def dihedral_group(n: int) -> PermutationGroup:
    """Dihedral group of order 2n acting on n points (n >= 3); n = 2 gives the Klein group."""
    if n == 2:
        return closure([parse_cycles("(0 1)", 4), parse_cycles("(2 3)", 4)])
    if n < 3:
        raise ValueError("need n >= 2")
    rot = Permutation(tuple(range(1, n)) + (0,))
    refl = Permutation(tuple((n - i) % n for i in range(n)))
    return closure([rot, refl])


def symmetric_group(n: int) -> PermutationGroup:
    if n < 2:
        return closure([], degree=max(n, 1))
    gens = [Permutation(tuple(range(1, n)) + (0,)), parse_cycles("(0 1)", n)]
    return closure(gens)


def alternating_group(n: int) -> PermutationGroup:
    if n < 3:
        return closure([], degree=max(n, 1))
    three = parse_cycles("(0 1 2)", n)
    if n % 2 == 1:
        long = Permutation(tuple(range(1, n)) + (0,))
    else:
        long = Permutation((0,) + tuple(range(2, n)) + (1,))
    return closure([three, long])


def direct_product(*groups: PermutationGroup) -> PermutationGroup:
    """Direct product acting on the disjoint union of the factors' domains."""
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for p in g.generators:
            imgs = list(range(degree))
            for i, x in enumerate(p.images):
                imgs[offset + i] = offset + x
            gens.append(Permutation(imgs))
        offset += g.degree
    # build elements directly as tuples of factor elements
    els = []
    for combo in itertools.product(*(g.elements for g in groups)):
        imgs = []
        off = 0
        for g, p in zip(groups, combo):
            imgs.extend(off + x for x in p.images)
            off += g.degree
        els.append(Permutation._raw(tuple(imgs)))
    return PermutationGroup(degree, tuple(gens), tuple(sorted(els)))
