"""Topologizing systems of ideals, stored extensionally.

A system is a set of ideals of one ring. Constructors validate upward and
intersection closure up front; idempotency and finite type are computed on
first use and cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import combinations
from typing import Iterable

from .modules import FiniteModule, ModuleHom, restrict_scalars, submodule
from .rings import (
    FiniteRing,
    Ideal,
    MultSet,
    RingError,
    RingMap,
    colon,
    ideal_generated,
    ideal_intersection,
    ideal_sum,
    minimal_generators,
    v_set,
)


class TopologyError(RingError):
    pass


class NotTopologizing(TopologyError):
    def __init__(self, reason: str, witness: tuple[Ideal, ...]):
        super().__init__(f"{reason}: {', '.join(map(str, witness))}")
        self.reason = reason
        self.witness = witness


class NotIdempotent(TopologyError):
    pass


@dataclass(frozen=True)
class TopologizingSystem:
    ring: FiniteRing
    members: frozenset[Ideal]
    kind: str = field(default="explicit", compare=False)

    def __post_init__(self) -> None:
        violation = topologizing_violation(self.ring, self.members)
        if violation is not None:
            raise violation

    def __contains__(self, I: Ideal) -> bool:
        return I in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.ideals)

    def __str__(self) -> str:
        return "[" + "; ".join(map(str, self.ideals)) + "]"

    @cached_property
    def ideals(self) -> tuple[Ideal, ...]:
        return tuple(sorted(self.members, key=lambda I: I.sort_key))

    @cached_property
    def minimum(self) -> Ideal:
        """The intersection of all members; itself a member."""
        return reduce(ideal_intersection, self.ideals)

    @cached_property
    def is_idempotent(self) -> bool:
        return idempotency_witness(self) is None

    @cached_property
    def finite_type_witnesses(self) -> dict[Ideal, tuple[int, ...]]:
        return finite_type_witnesses(self)

    @property
    def is_finite_type(self) -> bool:
        if not self.is_idempotent:
            return False
        R = self.ring
        return all(
            ideal_generated(R, gens) in self.members and ideal_generated(R, gens).issubset(I)
            for I, gens in self.finite_type_witnesses.items()
        )

    def same_family(self, other: "TopologizingSystem") -> bool:
        return self.ring is other.ring and self.members == other.members


def topologizing_violation(R: FiniteRing, family: Iterable[Ideal]) -> NotTopologizing | None:
    fam = frozenset(family)
    if not fam:
        return NotTopologizing("empty family", ())
    for I in fam:
        if I.ring is not R:
            return NotTopologizing("ideal of a different ring", (I,))
    for I in fam:
        for J in R.ideals:
            if I.issubset(J) and J not in fam:
                return NotTopologizing("not upward closed", (I, J))
    for I in fam:
        for J in fam:
            if ideal_intersection(I, J) not in fam:
                return NotTopologizing("not closed under intersection", (I, J))
    return None


def validate_topologizing(R: FiniteRing, family: Iterable[Ideal],
                          kind: str = "explicit") -> TopologizingSystem:
    return TopologizingSystem(R, frozenset(family), kind)


def is_topologizing(R: FiniteRing, family: Iterable[Ideal]) -> bool:
    return topologizing_violation(R, family) is None


def quotient_negligible(F: TopologizingSystem, I: Ideal, J: Ideal) -> bool:
    """Whether ``J/I`` (``I ⊆ J``) is ``F``-negligible: each ``I:a`` lies in ``F``."""
    return all(colon(I, a) in F.members for a in J.members)


def idempotency_witness(F: TopologizingSystem) -> tuple[Ideal, Ideal] | None:
    """A pair ``(I, J)`` with ``I ∈ F``, every ``J:a ∈ F`` for ``a ∈ I``, ``J ∉ F``."""
    for I in F.ideals:
        for J in F.ring.ideals:
            if J in F.members:
                continue
            if all(colon(J, a) in F.members for a in I.members):
                return (I, J)
    return None


def is_idempotent(F: TopologizingSystem) -> bool:
    return F.is_idempotent


def product_system(F: TopologizingSystem, G: TopologizingSystem) -> TopologizingSystem:
    """``F.G``: ideals ``I`` with some ``J ∈ G``, ``J ⊇ I``, ``J/I`` ``F``-negligible."""
    if F.ring is not G.ring:
        raise TopologyError("systems over different rings")
    R = F.ring
    fam = [
        I for I in R.ideals
        if any(I.issubset(J) and quotient_negligible(F, I, J) for J in G.ideals)
    ]
    return TopologizingSystem(R, frozenset(fam), "product")


def finite_type_witnesses(F: TopologizingSystem) -> dict[Ideal, tuple[int, ...]]:
    """For each member, a finite generating set of a member it contains (itself)."""
    return {I: minimal_generators(I) for I in F.ideals}


def is_finite_type(F: TopologizingSystem) -> bool:
    return F.is_finite_type


# ---------------------------------------------------------------------------
# standard constructions


def unit_system(R: FiniteRing) -> TopologizingSystem:
    return TopologizingSystem(R, frozenset({R.unit_ideal}), "unit")


def all_ideals_system(R: FiniteRing) -> TopologizingSystem:
    return TopologizingSystem(R, frozenset(R.ideals), "all")


def meets_system(S: MultSet) -> TopologizingSystem:
    R = S.ring
    return TopologizingSystem(R, frozenset(I for I in R.ideals if S.meets(I)), "meets")


def comaximal_system(J: Ideal) -> TopologizingSystem:
    R = J.ring
    return TopologizingSystem(
        R, frozenset(I for I in R.ideals if ideal_sum(I, J).is_unit()), "comax")


def containing_system(J: Ideal) -> TopologizingSystem:
    """Ideals containing ``J``; not idempotent in general."""
    R = J.ring
    return TopologizingSystem(R, frozenset(I for I in R.ideals if J.issubset(I)), "containing")


def primes_avoid_system(R: FiniteRing, primes: Iterable[Ideal]) -> TopologizingSystem:
    P = frozenset(primes)
    return TopologizingSystem(
        R, frozenset(I for I in R.ideals if P.isdisjoint(v_set(I))), "primes-avoid")


def vsub_system(J: Ideal) -> TopologizingSystem:
    R = J.ring
    VJ = frozenset(v_set(J))
    return TopologizingSystem(
        R, frozenset(I for I in R.ideals if frozenset(v_set(I)) <= VJ), "vsub")


def ring_map_system(phi: RingMap) -> TopologizingSystem:
    """Ideals whose extension along ``phi`` is the whole target."""
    R = phi.source
    return TopologizingSystem(
        R, frozenset(I for I in R.ideals if phi.extend(I).is_unit()), "map")


_BUILDERS = {
    "unit": lambda R, p: unit_system(R),
    "all": lambda R, p: all_ideals_system(R),
    "meets": lambda R, p: meets_system(p),
    "comax": lambda R, p: comaximal_system(p),
    "containing": lambda R, p: containing_system(p),
    "primes-avoid": lambda R, p: primes_avoid_system(R, p),
    "vsub": lambda R, p: vsub_system(p),
    "map": lambda R, p: ring_map_system(p),
}


def standard_system(R: FiniteRing, kind: str, params=None) -> TopologizingSystem:
    """Build one of the standard families; all but ``containing`` must be idempotent."""
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise TopologyError(f"unknown system kind {kind!r}") from None
    F = builder(R, params)
    if kind != "containing" and not F.is_idempotent:
        raise NotIdempotent(f"{kind} system {F} is not idempotent")
    return F


def require_idempotent(F: TopologizingSystem) -> None:
    if not F.is_idempotent:
        w = idempotency_witness(F)
        raise NotIdempotent(f"system {F} is not idempotent (witness I={w[0]}, J={w[1]})")


def enumerate_topologizing(R: FiniteRing) -> list[TopologizingSystem]:
    """Every topologizing system, as upward closures of antichains."""
    ideals = R.ideals
    antichains: list[tuple[Ideal, ...]] = []
    for k in range(1, len(ideals) + 1):
        for combo in combinations(ideals, k):
            if all(not a.issubset(b) and not b.issubset(a)
                   for a, b in combinations(combo, 2)):
                antichains.append(combo)
    out = []
    for ac in antichains:
        fam = frozenset(J for J in ideals if any(I.issubset(J) for I in ac))
        if is_topologizing(R, fam):
            out.append(TopologizingSystem(R, fam))
    out.sort(key=lambda F: (len(F), [I.sort_key for I in F.ideals]))
    return out


def enumerate_idempotent(R: FiniteRing) -> list[TopologizingSystem]:
    return [F for F in enumerate_topologizing(R) if F.is_idempotent]


# ---------------------------------------------------------------------------
# negligible modules


def torsion_set(F: TopologizingSystem, M: FiniteModule) -> frozenset[int]:
    """``F(M)``: elements whose annihilator belongs to ``F``."""
    return frozenset(x for x in M.elements if M.annihilator(x) in F.members)


def torsion_submodule(F: TopologizingSystem, M: FiniteModule) -> tuple[FiniteModule, ModuleHom]:
    return submodule(M, torsion_set(F, M), label=f"F({M.label})")


def is_negligible(F: TopologizingSystem, M: FiniteModule) -> bool:
    return all(M.annihilator(x) in F.members for x in M.elements)


def induced_system(phi: RingMap, F: TopologizingSystem) -> TopologizingSystem:
    """Ideals ``J`` of the target with ``I S ⊆ J`` for some ``I ∈ F``."""
    S = phi.target
    ext = [phi.extend(I) for I in F.ideals]
    fam = frozenset(J for J in S.ideals if any(E.issubset(J) for E in ext))
    G = TopologizingSystem(S, fam, "induced")
    require_idempotent(G)
    return G


def induced_system_by_negligibility(phi: RingMap, F: TopologizingSystem) -> frozenset[Ideal]:
    """Ideals ``J`` of the target with ``S/J`` ``F``-negligible over the source."""
    from .modules import cyclic_quotient

    out = []
    for J in phi.target.ideals:
        Q, _ = cyclic_quotient(phi.target, J)
        if is_negligible(F, restrict_scalars(phi, Q)):
            out.append(J)
    return frozenset(out)
