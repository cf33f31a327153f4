"""Finite commutative rings given by explicit operation tables.

Elements are the integers ``0..n-1``. Every construction here is an
exhaustive scan over the carrier, which is fine at desk scale (the default
cap on ring order is 64).

>>> R = build_ring("Z/12")
>>> [str(I) for I in R.ideals]
['{0}', '{0,6}', '{0,4,8}', '{0,3,6,9}', '{0,2,4,6,8,10}', '{0,1,2,3,4,5,6,7,8,9,10,11}']
>>> [str(p) for p in enumerate_primes(R)]
['{0,3,6,9}', '{0,2,4,6,8,10}']
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

MAX_ORDER = 64

Table = tuple[tuple[int, ...], ...]


class RingError(ValueError):
    pass


class RingSpecError(RingError):
    """The ring specification text could not be parsed."""


class AxiomViolation(RingError):
    def __init__(self, axiom: str, witness: tuple[int, ...]):
        super().__init__(f"{axiom} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True, eq=False)
class FiniteRing:
    add: Table
    mul: Table
    zero: int
    one: int
    label: str = ""

    @property
    def order(self) -> int:
        return len(self.add)

    @property
    def elements(self) -> range:
        return range(len(self.add))

    def __len__(self) -> int:
        return len(self.add)

    def __repr__(self) -> str:
        return f"FiniteRing({self.label or self.order})"

    @cached_property
    def neg(self) -> tuple[int, ...]:
        out = []
        for a in self.elements:
            row = self.add[a]
            out.append(next(b for b in self.elements if row[b] == self.zero))
        return tuple(out)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def is_zero_ring(self) -> bool:
        return self.order == 1

    @cached_property
    def units(self) -> frozenset[int]:
        return frozenset(a for a in self.elements if self.one in self.mul[a])

    @cached_property
    def ideals(self) -> tuple["Ideal", ...]:
        return tuple(enumerate_ideals(self))

    @cached_property
    def zero_ideal(self) -> "Ideal":
        return Ideal(self, frozenset({self.zero}))

    @cached_property
    def unit_ideal(self) -> "Ideal":
        return Ideal(self, frozenset(self.elements))

    def validate(self) -> None:
        """Exhaustively check the commutative ring axioms.

        Raises :class:`AxiomViolation` naming the first failing triple.
        """
        n = self.order
        els = self.elements
        for tab, name in ((self.add, "add"), (self.mul, "mul")):
            if len(tab) != n or any(len(row) != n for row in tab):
                raise AxiomViolation(f"{name} table shape", (n,))
            for a in els:
                for b in els:
                    if not 0 <= tab[a][b] < n:
                        raise AxiomViolation(f"{name} closure", (a, b))
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise AxiomViolation("constants in carrier", (self.zero, self.one))
        A, M = self.add, self.mul
        for a in els:
            if A[a][self.zero] != a:
                raise AxiomViolation("additive identity", (a,))
            if M[a][self.one] != a or M[self.one][a] != a:
                raise AxiomViolation("multiplicative identity", (a,))
            if self.zero not in A[a]:
                raise AxiomViolation("additive inverse", (a,))
            for b in els:
                if A[a][b] != A[b][a]:
                    raise AxiomViolation("additive commutativity", (a, b))
                if M[a][b] != M[b][a]:
                    raise AxiomViolation("multiplicative commutativity", (a, b))
                for c in els:
                    if A[A[a][b]][c] != A[a][A[b][c]]:
                        raise AxiomViolation("additive associativity", (a, b, c))
                    if M[M[a][b]][c] != M[a][M[b][c]]:
                        raise AxiomViolation("multiplicative associativity", (a, b, c))
                    if M[a][A[b][c]] != A[M[a][b]][M[a][c]]:
                        raise AxiomViolation("distributivity", (a, b, c))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "add": [list(r) for r in self.add],
            "mul": [list(r) for r in self.mul],
            "zero": self.zero,
            "one": self.one,
            "label": self.label,
        }


# ---------------------------------------------------------------------------
# constructors


def zmod(n: int) -> FiniteRing:
    if n < 1:
        raise RingSpecError(f"Z/{n}: modulus must be >= 1")
    add = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    mul = tuple(tuple((a * b) % n for b in range(n)) for a in range(n))
    return FiniteRing(add, mul, 0, 1 % n, f"Z/{n}")


def product_ring(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    """Componentwise product; the pair ``(a, b)`` is encoded as ``a*|S| + b``."""
    m = S.order
    pairs = [(a, b) for a in R.elements for b in S.elements]
    add = tuple(
        tuple(R.add[a][c] * m + S.add[b][d] for (c, d) in pairs) for (a, b) in pairs
    )
    mul = tuple(
        tuple(R.mul[a][c] * m + S.mul[b][d] for (c, d) in pairs) for (a, b) in pairs
    )
    return FiniteRing(add, mul, R.zero * m + S.zero, R.one * m + S.one,
                      f"{R.label} x {S.label}")


def ring_from_tables(data: dict, validate: bool = True) -> FiniteRing:
    try:
        n = int(data["order"])
        add = tuple(tuple(int(x) for x in row) for row in data["add"])
        mul = tuple(tuple(int(x) for x in row) for row in data["mul"])
        R = FiniteRing(add, mul, int(data["zero"]), int(data["one"]),
                       str(data.get("label", f"table ring of order {n}")))
    except (KeyError, TypeError, ValueError) as exc:
        raise RingSpecError(f"malformed table ring: {exc}") from exc
    if R.order != n:
        raise AxiomViolation("declared order", (n, R.order))
    if validate:
        R.validate()
    return R


def load_table_ring(path: str | Path) -> FiniteRing:
    p = Path(path)
    if not p.exists():
        bundled = Path(__file__).parent / "data" / p.name
        if bundled.exists():
            p = bundled
    try:
        data = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise RingSpecError(f"cannot read table ring {path}: {exc}") from exc
    return ring_from_tables(data)


_ZMOD = re.compile(r"^Z/(\d+)$")


def build_ring(spec: str, max_order: int = MAX_ORDER) -> FiniteRing:
    """Parse ``Z/n``, ``A x B`` (left associative) or ``@file.json``."""
    parts = [p.strip() for p in spec.strip().split(" x ")]
    if not parts or any(not p for p in parts):
        raise RingSpecError(f"empty factor in {spec!r}")
    ring = None
    for part in parts:
        if part.startswith("@"):
            factor = load_table_ring(part[1:])
        else:
            m = _ZMOD.match(part)
            if not m:
                raise RingSpecError(f"cannot parse ring factor {part!r}")
            n = int(m.group(1))
            if n < 1:
                raise RingSpecError(f"Z/{n}: modulus must be >= 1")
            if n > max_order:
                raise RingError(f"Z/{n} exceeds the order cap {max_order}")
            factor = zmod(n)
        ring = factor if ring is None else product_ring(ring, factor)
        if ring.order > max_order:
            raise RingError(f"{spec!r} exceeds the order cap {max_order}")
    ring.validate()
    return ring


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class Ideal:
    ring: FiniteRing
    members: frozenset[int]

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @cached_property
    def index(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.members), self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def __repr__(self) -> str:
        return f"Ideal{self}"

    def is_unit(self) -> bool:
        return self.ring.one in self.members

    def is_zero(self) -> bool:
        return len(self.members) == 1

    def issubset(self, other: "Ideal") -> bool:
        return self.members <= other.members

    def validate(self) -> None:
        R = self.ring
        if R.zero not in self.members:
            raise AxiomViolation("ideal contains zero", ())
        for a in self.members:
            for b in self.members:
                if R.add[a][b] not in self.members:
                    raise AxiomViolation("ideal closed under addition", (a, b))
            for r in R.elements:
                if R.mul[r][a] not in self.members:
                    raise AxiomViolation("ideal absorbs multiplication", (r, a))


def additive_closure(R: FiniteRing, seeds: Iterable[int]) -> frozenset[int]:
    """Additive subgroup of ``R`` generated by ``seeds``."""
    atoms = set(seeds) - {R.zero}
    group = {R.zero}
    frontier = [R.zero]
    add = R.add
    while frontier:
        nxt = []
        for x in frontier:
            row = add[x]
            for a in atoms:
                y = row[a]
                if y not in group:
                    group.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(group)


def ideal_generated(R: FiniteRing, gens: Iterable[int]) -> Ideal:
    seeds = {R.mul[r][g] for g in gens for r in R.elements}
    return Ideal(R, additive_closure(R, seeds))


def principal(R: FiniteRing, a: int) -> Ideal:
    return ideal_generated(R, [a])


def enumerate_ideals(R: FiniteRing) -> list[Ideal]:
    """All ideals, sorted by (cardinality, element list).

    Every ideal is the sum of the principal ideals of its elements, so closing
    the principal ideals under pairwise sums reaches every ideal.
    """
    found = {principal(R, a).members for a in R.elements}
    frontier = list(found)
    while frontier:
        nxt = []
        for A in frontier:
            for B in list(found):
                S = _sum_sets(R, A, B)
                if S not in found:
                    found.add(S)
                    nxt.append(S)
        frontier = nxt
    ideals = [Ideal(R, m) for m in found]
    ideals.sort(key=lambda I: I.sort_key)
    return ideals


def _sum_sets(R: FiniteRing, A: frozenset[int], B: frozenset[int]) -> frozenset[int]:
    add = R.add
    return frozenset(add[a][b] for a in A for b in B)


def _same_ring(I: Ideal, J: Ideal) -> FiniteRing:
    if I.ring is not J.ring:
        raise RingError("ideals belong to different rings")
    return I.ring


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    R = _same_ring(I, J)
    return Ideal(R, _sum_sets(R, I.members, J.members))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    R = _same_ring(I, J)
    return Ideal(R, additive_closure(R, {R.mul[a][b] for a in I.members for b in J.members}))


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.members & J.members)


def ideal_arith(I: Ideal, J: Ideal) -> dict[str, Ideal]:
    return {
        "sum": ideal_sum(I, J),
        "product": ideal_product(I, J),
        "intersection": ideal_intersection(I, J),
    }


def colon(J: Ideal, a: int) -> Ideal:
    """``J : a = {r : r*a in J}``."""
    R = J.ring
    return Ideal(R, frozenset(r for r in R.elements if R.mul[r][a] in J.members))


def annihilator(R: FiniteRing, a: int) -> Ideal:
    return colon(R.zero_ideal, a)


def lookup_ideal(R: FiniteRing, members: Iterable[int]) -> Ideal:
    """The canonical ideal object from ``R.ideals`` with these members."""
    m = frozenset(members)
    for I in R.ideals:
        if I.members == m:
            return I
    raise RingError(f"{sorted(m)} is not an ideal of {R.label}")


def is_prime(I: Ideal) -> bool:
    R = I.ring
    if I.is_unit():
        return False
    mem = I.members
    outside = [a for a in R.elements if a not in mem]
    return all(R.mul[a][b] not in mem for a in outside for b in outside)


def enumerate_primes(R: FiniteRing) -> list[Ideal]:
    return [I for I in R.ideals if is_prime(I)]


def v_set(I: Ideal) -> list[Ideal]:
    """Primes containing ``I``."""
    return [p for p in enumerate_primes(I.ring) if I.issubset(p)]


def minimal_generators(I: Ideal) -> tuple[int, ...]:
    """A smallest generating set, found by search over subsets of ``I``."""
    from itertools import combinations

    R = I.ring
    if I.is_zero():
        return ()
    for k in range(1, len(I) + 1):
        for gens in combinations(I.elements, k):
            if ideal_generated(R, gens).members == I.members:
                return gens
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# multiplicative sets


@dataclass(frozen=True)
class MultSet:
    ring: FiniteRing
    members: frozenset[int]

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def meets(self, I: Ideal) -> bool:
        return not self.members.isdisjoint(I.members)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def validate(self) -> None:
        R = self.ring
        if R.one not in self.members:
            raise AxiomViolation("multiplicative set contains one", ())
        for a in self.members:
            for b in self.members:
                if R.mul[a][b] not in self.members:
                    raise AxiomViolation("multiplicative closure", (a, b))


def mult_closure(R: FiniteRing, seed: Iterable[int]) -> MultSet:
    S = {R.one} | set(seed)
    frontier = list(S)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(S):
                c = R.mul[a][b]
                if c not in S:
                    S.add(c)
                    nxt.append(c)
        frontier = nxt
    return MultSet(R, frozenset(S))


def enumerate_mult_sets(R: FiniteRing) -> list[MultSet]:
    """Every multiplicatively closed subset containing one."""
    found = {mult_closure(R, ()).members}
    frontier = list(found)
    while frontier:
        nxt = []
        for S in frontier:
            for a in R.elements:
                if a not in S:
                    T = mult_closure(R, S | {a}).members
                    if T not in found:
                        found.add(T)
                        nxt.append(T)
        frontier = nxt
    return [MultSet(R, m) for m in sorted(found, key=lambda s: (len(s), sorted(s)))]


# ---------------------------------------------------------------------------
# ring maps


@dataclass(frozen=True, eq=False)
class RingMap:
    source: FiniteRing
    target: FiniteRing
    images: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __repr__(self) -> str:
        return f"RingMap({self.source.label} -> {self.target.label}: {list(self.images)})"

    def validate(self) -> None:
        R, S, f = self.source, self.target, self.images
        if len(f) != R.order or any(not 0 <= y < S.order for y in f):
            raise AxiomViolation("ring map is a total function", ())
        if f[R.one] != S.one:
            raise AxiomViolation("ring map preserves one", (R.one,))
        for a in R.elements:
            for b in R.elements:
                if f[R.add[a][b]] != S.add[f[a]][f[b]]:
                    raise AxiomViolation("ring map preserves addition", (a, b))
                if f[R.mul[a][b]] != S.mul[f[a]][f[b]]:
                    raise AxiomViolation("ring map preserves multiplication", (a, b))

    def kernel(self) -> Ideal:
        return Ideal(self.source, frozenset(a for a in self.source.elements
                                            if self.images[a] == self.target.zero))

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def extend(self, I: Ideal) -> Ideal:
        """``I S``: the ideal of the target generated by the image of ``I``."""
        return ideal_generated(self.target, {self.images[a] for a in I.members})

    def preimage(self, J: Ideal) -> Ideal:
        return Ideal(self.source, frozenset(a for a in self.source.elements
                                            if self.images[a] in J.members))

    def then(self, other: "RingMap") -> "RingMap":
        """``other ∘ self``."""
        return RingMap(self.source, other.target, tuple(other.images[y] for y in self.images))


def identity_map(R: FiniteRing) -> RingMap:
    return RingMap(R, R, tuple(R.elements))


def quotient_ring(I: Ideal) -> tuple[FiniteRing, RingMap]:
    """``R/I`` on least coset representatives, with the projection."""
    R = I.ring
    cls = [-1] * R.order
    reps: list[int] = []
    for x in R.elements:
        if cls[x] < 0:
            k = len(reps)
            reps.append(x)
            for a in I.members:
                cls[R.add[x][a]] = k
    add = tuple(tuple(cls[R.add[a][b]] for b in reps) for a in reps)
    mul = tuple(tuple(cls[R.mul[a][b]] for b in reps) for a in reps)
    Q = FiniteRing(add, mul, cls[R.zero], cls[R.one], f"{R.label}/{I}")
    return Q, RingMap(R, Q, tuple(cls))


def additive_generators(R: FiniteRing) -> tuple[int, ...]:
    """Greedy generating set of the additive group."""
    gens: list[int] = []
    group = additive_closure(R, ())
    while len(group) < R.order:
        best = max((x for x in R.elements if x not in group),
                   key=lambda x: (len(additive_closure(R, [*gens, x])), -x))
        gens.append(best)
        group = additive_closure(R, gens)
    return tuple(gens)


def _extend_additively(R: FiniteRing, S: FiniteRing, gens: Sequence[int],
                       imgs: Sequence[int]) -> list[int] | None:
    f = [-1] * R.order
    f[R.zero] = S.zero
    frontier = [R.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g, y in zip(gens, imgs):
                z = R.add[x][g]
                w = S.add[f[x]][y]
                if f[z] < 0:
                    f[z] = w
                    nxt.append(z)
                elif f[z] != w:
                    return None
        frontier = nxt
    return f


def enumerate_ring_maps(R: FiniteRing, S: FiniteRing) -> list[RingMap]:
    """Every unital ring homomorphism ``R -> S``."""
    gens = additive_generators(R)
    out = []
    for imgs in product(S.elements, repeat=len(gens)):
        f = _extend_additively(R, S, gens, imgs)
        if f is None or f[R.one] != S.one:
            continue
        if all(f[R.mul[a][b]] == S.mul[f[a]][f[b]] for a in R.elements for b in R.elements):
            out.append(RingMap(R, S, tuple(f)))
    return out


def find_ring_isomorphism(R: FiniteRing, S: FiniteRing) -> RingMap | None:
    if R.order != S.order:
        return None
    for f in enumerate_ring_maps(R, S):
        if f.is_bijective():
            return f
    return None
