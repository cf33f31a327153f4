"""Topologizing systems: validation, idempotency, products, standard families."""

from __future__ import annotations

from itertools import combinations

import pytest

from gabriel_loc.modules import cyclic_quotient, regular_module
from gabriel_loc.rings import (
    build_ring,
    enumerate_mult_sets,
    enumerate_primes,
    enumerate_ring_maps,
    identity_map,
    mult_closure,
    quotient_ring,
    zmod,
)
from gabriel_loc.systems import (
    NotIdempotent,
    NotTopologizing,
    TopologyError,
    all_ideals_system,
    enumerate_idempotent,
    enumerate_topologizing,
    idempotency_witness,
    induced_system,
    induced_system_by_negligibility,
    is_negligible,
    product_system,
    require_idempotent,
    standard_system,
    torsion_set,
    unit_system,
    validate_topologizing,
)

from support import ideal, torsion_scan


@pytest.fixture(scope="module")
def z4():
    return build_ring("Z/4")


@pytest.fixture(scope="module")
def z6():
    return build_ring("Z/6")


@pytest.fixture(scope="module")
def z12():
    return build_ring("Z/12")


def system(R, *gens):
    """The explicit family of principal ideals ``(g)``."""
    return validate_topologizing(R, [ideal(R, g) for g in gens])


def gens_of(F):
    return sorted(min((a for a in I.members if a), default=0) for I in F.ideals)


# ============================================================================
# validation
# ============================================================================


@pytest.mark.parametrize("spec", ["Z/1", "Z/7", "Z/12", "@f4.json"])
def test_unit_system_is_topologizing(spec):
    R = build_ring(spec)
    F = unit_system(R)
    assert list(F.ideals) == [R.unit_ideal]
    assert F.is_idempotent


def test_upward_and_intersection_closed(z6):
    F = system(z6, 1, 2)
    assert len(F) == 2


def test_missing_overideal_is_reported(z6):
    with pytest.raises(NotTopologizing) as exc:
        system(z6, 2)
    assert exc.value.reason == "not upward closed"
    assert ideal(z6, 1) in exc.value.witness


def test_missing_intersection_is_reported(z6):
    with pytest.raises(NotTopologizing) as exc:
        system(z6, 1, 2, 3)
    assert exc.value.reason == "not closed under intersection"


def test_empty_family_rejected(z6):
    with pytest.raises(NotTopologizing):
        validate_topologizing(z6, [])


def test_mixed_rings_rejected(z4, z6):
    with pytest.raises(NotTopologizing):
        validate_topologizing(z6, [z6.unit_ideal, z4.unit_ideal])


@pytest.mark.parametrize("spec", ["Z/8", "Z/12", "Z/2 x Z/2", "@f2xy_m2.json"])
def test_enumerated_systems_are_upward_closures(spec):
    R = build_ring(spec)
    systems = enumerate_topologizing(R)
    assert len({F.members for F in systems}) == len(systems)
    for F in systems:
        for I in F.ideals:
            assert all(J in F for J in R.ideals if I.issubset(J))


# ============================================================================
# idempotency and products
# ============================================================================


def test_z4_two_system_is_not_idempotent(z4):
    F = system(z4, 1, 2)
    assert not F.is_idempotent
    I, J = idempotency_witness(F)
    assert J == ideal(z4, 0)
    with pytest.raises(NotIdempotent):
        require_idempotent(F)


def test_z6_two_system_is_idempotent(z6):
    F = system(z6, 1, 2)
    assert F.is_idempotent
    assert F.members == standard_system(z6, "comax", ideal(z6, 3)).members


def test_square_of_z4_two_system(z4):
    F = system(z4, 1, 2)
    assert gens_of(product_system(F, F)) == [0, 1, 2]


def test_unit_square(z12):
    U = unit_system(z12)
    assert product_system(U, U).members == U.members


@pytest.mark.parametrize("spec", ["Z/8", "Z/12", "Z/4 x Z/2", "@z4x.json"])
def test_idempotency_agrees_with_self_product(spec):
    R = build_ring(spec)
    for F in enumerate_topologizing(R):
        assert F.is_idempotent == (product_system(F, F).members == F.members)


@pytest.mark.parametrize("spec", ["Z/12", "@f2xy_m2.json"])
def test_product_laws(spec):
    R = build_ring(spec)
    systems = enumerate_topologizing(R)
    U = unit_system(R)
    for F in systems:
        if F.is_idempotent:
            assert product_system(F, U).members == F.members
        for G in systems:
            FG = product_system(F, G)
            assert F.members <= FG.members and G.members <= FG.members
            for I in F.ideals:
                for J in G.ideals:
                    prod = ideal(R, *{R.mul[a][b] for a in I.members for b in J.members})
                    assert prod in FG


def test_product_over_different_rings(z4, z6):
    with pytest.raises(TopologyError):
        product_system(unit_system(z4), unit_system(z6))


# ============================================================================
# standard families
# ============================================================================


def test_meets_system(z12):
    F = standard_system(z12, "meets", mult_closure(z12, {4}))
    assert gens_of(F) == [1, 2, 4]
    assert F.is_finite_type
    assert {I: tuple(g) for I, g in F.finite_type_witnesses.items()} == {
        ideal(z12, 1): (1,), ideal(z12, 2): (2,), ideal(z12, 4): (4,)}


def test_comaximal_system(z6):
    assert gens_of(standard_system(z6, "comax", ideal(z6, 3))) == [1, 2]


def test_ring_map_system(z12):
    phi = enumerate_ring_maps(z12, zmod(4))[0]
    assert gens_of(standard_system(z12, "map", phi)) == [1, 3]


def test_containing_system_need_not_be_idempotent(z4):
    F = standard_system(z4, "containing", ideal(z4, 2))
    assert not F.is_idempotent


def test_unknown_kind(z4):
    with pytest.raises(TopologyError):
        standard_system(z4, "bogus")


@pytest.mark.parametrize("spec", ["Z/12", "Z/2 x Z/2", "Z/4 x Z/2", "@f2xy_m2.json"])
def test_standard_families_are_idempotent(spec):
    R = build_ring(spec)
    for S in enumerate_mult_sets(R):
        assert standard_system(R, "meets", S).is_idempotent
    for J in R.ideals:
        assert standard_system(R, "comax", J).is_idempotent
        assert standard_system(R, "vsub", J).is_idempotent
    primes = enumerate_primes(R)
    for k in range(len(primes) + 1):
        for P in combinations(primes, k):
            assert standard_system(R, "primes-avoid", P).is_idempotent
    for J in R.ideals:
        _, pi = quotient_ring(J)
        assert standard_system(R, "map", pi).is_idempotent


def test_local_rings_have_two_idempotent_systems():
    for spec in ("Z/8", "@f2xy_m2.json", "@z4x.json", "@f2x2y2.json"):
        R = build_ring(spec)
        assert [len(F) for F in enumerate_idempotent(R)] == [1, len(R.ideals)]


# ============================================================================
# torsion and negligibility
# ============================================================================


def test_torsion_of_z6(z6):
    F = system(z6, 1, 2)
    assert torsion_set(F, regular_module(z6)) == {0, 3}


def test_all_ideals_make_everything_torsion(z12):
    F = all_ideals_system(z12)
    M = regular_module(z12)
    assert torsion_set(F, M) == frozenset(M.elements)
    assert is_negligible(F, M)


def test_unit_system_torsion_is_zero(z12):
    M = regular_module(z12)
    assert torsion_set(unit_system(z12), M) == {0}


@pytest.mark.parametrize("spec", ["Z/12", "@z4x.json"])
def test_torsion_matches_scan(spec):
    R = build_ring(spec)
    for F in enumerate_topologizing(R):
        for J in R.ideals:
            Q, _ = cyclic_quotient(R, J)
            assert torsion_set(F, Q) == torsion_scan(R, Q, F.ideals)


# ============================================================================
# induced systems
# ============================================================================


def test_induced_along_z12_to_z4(z12):
    phi = enumerate_ring_maps(z12, zmod(4))[0]
    G = induced_system(phi, system(z12, 1, 3))
    assert list(G.ideals) == [G.ring.unit_ideal]


def test_induced_along_identity(z12):
    for F in enumerate_idempotent(z12):
        assert induced_system(identity_map(z12), F).members == F.members


def test_induced_to_zero_ring(z12):
    phi = enumerate_ring_maps(z12, zmod(1))[0]
    G = induced_system(phi, unit_system(z12))
    assert G.members == frozenset(G.ring.ideals)


@pytest.mark.parametrize("spec", ["Z/12", "Z/4 x Z/2", "@f2xy_m2.json"])
def test_induced_system_two_ways(spec):
    R = build_ring(spec)
    for F in enumerate_idempotent(R):
        for J in R.ideals:
            _, pi = quotient_ring(J)
            G = induced_system(pi, F)
            assert G.members == induced_system_by_negligibility(pi, F)
