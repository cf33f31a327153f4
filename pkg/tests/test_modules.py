"""Finite modules: homs, presentations, tensor products, flatness, fractions."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gabriel_loc.modules import (
    FiniteModule,
    ModuleError,
    ModuleHom,
    NotSubmodule,
    classical_localization,
    classical_ring_localization,
    cokernel,
    compose,
    cyclic_quotient,
    direct_sum,
    enumerate_submodules,
    find_module_isomorphism,
    hom_module,
    hom_set,
    identity_hom,
    image,
    is_flat,
    kernel,
    module_from_ideal,
    presentation,
    quotient_module,
    regular_module,
    tensor,
    tensor_map,
    zero_module,
)
from gabriel_loc.rings import (
    build_ring,
    enumerate_mult_sets,
    find_ring_isomorphism,
    ideal_sum,
    mult_closure,
    quotient_ring,
    zmod,
)
from gabriel_loc.theorems import battery_modules

from support import crt_localized_order, ideal, is_linear, quotient_flat_by_annihilators, setmap_homs


@pytest.fixture(scope="module")
def z4():
    return build_ring("Z/4")


@pytest.fixture(scope="module")
def z6():
    return build_ring("Z/6")


@pytest.fixture(scope="module")
def z12():
    return build_ring("Z/12")


def quotient(R, *gens) -> FiniteModule:
    return cyclic_quotient(R, ideal(R, *gens))[0]


# ============================================================================
# constructions
# ============================================================================


def test_cyclic_quotient_order(z6):
    # the zero coset is {0,3}, so there are 6/2 = 3 cosets
    Q, pi = cyclic_quotient(z6, ideal(z6, 3))
    assert Q.size == 3
    assert pi.images[0] == pi.images[3] == Q.zero
    assert len(set(pi.images)) == 3


def test_quotient_by_zero_is_identity(z6):
    M = regular_module(z6)
    Q, pi = quotient_module(M, {0})
    assert Q.size == 6 and pi.is_bijective()


def test_quotient_by_non_submodule_raises(z6):
    with pytest.raises(NotSubmodule):
        quotient_module(regular_module(z6), {0, 1})


def test_direct_sum_order(z6):
    D = direct_sum([quotient(z6, 2), quotient(z6, 3)])
    assert D.module.size == 6
    assert find_module_isomorphism(D.module, regular_module(z6)) is not None
    for x in D.module.elements:
        assert D.encode(D.decode(x)) == x


def test_direct_sum_rejects_mixed_rings(z4, z6):
    with pytest.raises(ModuleError):
        direct_sum([regular_module(z4), regular_module(z6)])


@pytest.mark.parametrize("spec", ["Z/6", "Z/2 x Z/2", "@z4x.json"])
def test_battery_modules_validate(spec):
    R = build_ring(spec)
    for M in battery_modules(R):
        M.validate()


# ============================================================================
# homomorphisms
# ============================================================================


def test_hom_ideal_to_ring_z4(z4):
    I, _ = module_from_ideal(ideal(z4, 2))
    homs = hom_set(I, regular_module(z4))
    # element 1 of the ideal module is 2 in the ring
    assert sorted(f.images[1] for f in homs) == [0, 2]


def test_hom_ideal_to_z3_over_z12(z12):
    I, _ = module_from_ideal(ideal(z12, 4))
    assert len(hom_set(I, quotient(z12, 3))) == 3


def test_hom_out_of_zero_module(z6):
    Z = zero_module(z6)
    for N in (Z, regular_module(z6), quotient(z6, 2)):
        assert len(hom_set(Z, N)) == 1


def test_hom_module_is_closed_under_pointwise_ops(z12):
    H = hom_module(quotient(z12, 4), quotient(z12, 6))
    H.module.validate()
    assert H.module.size == len(H.homs) == 2


@pytest.mark.parametrize("spec", ["Z/4", "Z/6", "Z/8", "Z/2 x Z/2", "@f4.json", "@f2xy_m2.json"])
def test_hom_sets_match_setmap_enumeration(spec):
    R = build_ring(spec)
    small = [M for M in battery_modules(R) if M.size <= 8]
    for M in small:
        for N in small:
            got = {f.images for f in hom_set(M, N)}
            assert got == setmap_homs(M, N), (M.label, N.label)


def test_kernel_image_cokernel(z6):
    R6 = regular_module(z6)
    Q, pi = cyclic_quotient(z6, ideal(z6, 3))
    K, inc = kernel(pi)
    assert set(inc.images) == {0, 3}
    C, _ = cokernel(identity_hom(R6))
    assert C.size == 1
    z4 = build_ring("Z/4")
    I, inc2 = module_from_ideal(ideal(z4, 2))
    Im, _ = image(inc2)
    assert Im.size == 2 and set(inc2.images) == {0, 2}


def test_compose_and_inverse(z12):
    M = quotient(z12, 4)
    iso = find_module_isomorphism(M, M)
    assert compose(iso.inverse(), iso).same_as(identity_hom(M))


# ============================================================================
# presentations and tensor products
# ============================================================================


def test_presentation_of_regular_module(z6):
    P = presentation(regular_module(z6))
    assert len(P.generators) == 1
    assert all(all(c == 0 for c in row) for row in P.relations)


def test_presentation_of_z2_over_z4(z4):
    P = presentation(quotient(z4, 2))
    assert len(P.generators) == 1
    assert {row[0] for row in P.kernel} == {0, 2}


def test_presentation_of_zero_module(z4):
    assert presentation(zero_module(z4)).generators == ()


@pytest.mark.parametrize("spec", ["Z/4", "Z/12", "Z/2 x Z/2", "@f2xy_m2.json"])
def test_cyclic_tensor_orders(spec):
    # R/I ⊗ R/J is R/(I+J)
    R = build_ring(spec)
    for I in R.ideals:
        for J in R.ideals:
            T = tensor(cyclic_quotient(R, I)[0], cyclic_quotient(R, J)[0])
            expected = R.order // len(ideal_sum(I, J))
            assert T.module.size == expected


def test_tensor_z2_z2_over_z4(z4):
    assert tensor(quotient(z4, 2), quotient(z4, 2)).module.size == 2


def test_tensor_with_ring_is_identity(z12):
    for M in battery_modules(z12)[:6]:
        T = tensor(regular_module(z12), M)
        mult = T.induced(lambda r, m: M.act[r][m], M)
        assert mult.is_bijective()


def test_tensor_over_field_with_plane():
    R = zmod(2)
    V = direct_sum([regular_module(R), regular_module(R)]).module
    assert tensor(regular_module(R), V).module.size == 4
    assert tensor(V, V).module.size == 16


def test_tensor_is_bilinear_and_symmetric(z12):
    M, N = quotient(z12, 2), quotient(z12, 3)
    T, U = tensor(M, N), tensor(N, M)
    assert T.module.size == U.module.size
    swap = T.induced(lambda m, n: U.pure[n][m], U.module)
    assert swap.is_bijective()
    for r in z12.elements:
        for m in M.elements:
            for n in N.elements:
                assert T.pure[M.act[r][m]][n] == T.module.act[r][T.pure[m][n]] == T.pure[m][N.act[r][n]]


def test_unbalanced_form_is_rejected(z4):
    # Z/2 ⊗ Z/2 -> Z/4 sending the generator pair to 1 does not kill 2
    M = quotient(z4, 2)
    T = tensor(M, M)
    with pytest.raises(ModuleError):
        T.induced(lambda m, n: 1, regular_module(z4))


def test_tensor_map_functorial(z12):
    M = quotient(z12, 4)
    T = tensor(M, M)
    assert tensor_map(identity_hom(M), identity_hom(M), T, T).same_as(identity_hom(T.module))


# ============================================================================
# flatness
# ============================================================================


def test_regular_module_is_flat(z12):
    assert is_flat(regular_module(z12))


def test_z3_over_z6_is_flat(z6):
    assert is_flat(quotient(z6, 3))


def test_z2_over_z4_is_not_flat(z4):
    assert not is_flat(quotient(z4, 2))


@pytest.mark.parametrize("spec", ["Z/8", "Z/12", "Z/4 x Z/2", "@z4x.json", "@f2xy_m2.json"])
def test_flat_quotients_match_annihilator_rule(spec):
    R = build_ring(spec)
    for J in R.ideals:
        assert is_flat(cyclic_quotient(R, J)[0]) == quotient_flat_by_annihilators(J)


# ============================================================================
# classical fractions
# ============================================================================


def test_trivial_mult_set(z12):
    loc = classical_localization(mult_closure(z12, set()), regular_module(z12))
    assert loc.pi.is_bijective()


def test_fractions_of_z12_by_four(z12):
    loc = classical_localization(mult_closure(z12, {4}), regular_module(z12))
    assert loc.module.size == 3
    assert loc.pi.kernel_set() == {0, 3, 6, 9}


def test_mult_set_with_zero_kills_everything(z12):
    loc = classical_localization(mult_closure(z12, {0}), regular_module(z12))
    assert loc.module.size == 1


@pytest.mark.parametrize("n", range(2, 13))
def test_fraction_rings_match_crt(n):
    R = zmod(n)
    for S in enumerate_mult_sets(R):
        ring, pi, _ = classical_ring_localization(S)
        m = crt_localized_order(n, S.members)
        assert ring.order == m
        assert find_ring_isomorphism(ring, zmod(m)) is not None
        pi.validate()


def test_quotient_ring_is_a_fraction_ring_only_when_flat(z12):
    # R -> R/(4) is Z/12 -> Z/4, which inverts 3 -> fraction ring by {1,9}
    Q, _ = quotient_ring(ideal(z12, 4))
    ring, _, _ = classical_ring_localization(mult_closure(z12, {9}))
    assert find_ring_isomorphism(ring, Q) is not None


# ============================================================================
# properties
# ============================================================================


_SPECS = ["Z/4", "Z/6", "Z/8", "Z/9", "Z/2 x Z/2", "Z/12"]


@st.composite
def ring_and_modules(draw):
    R = build_ring(draw(st.sampled_from(_SPECS)))
    mods = battery_modules(R)
    small = [M for M in mods if M.size <= 12]
    return R, draw(st.sampled_from(small)), draw(st.sampled_from(small))


@settings(max_examples=40, deadline=None)
@given(ring_and_modules())
def test_every_listed_hom_is_linear(data):
    _, M, N = data
    for f in hom_set(M, N):
        assert is_linear(M, N, f.images)


@settings(max_examples=40, deadline=None)
@given(ring_and_modules())
def test_tensor_order_is_symmetric(data):
    _, M, N = data
    assert tensor(M, N).module.size == tensor(N, M).module.size


@settings(max_examples=30, deadline=None)
@given(ring_and_modules())
def test_submodules_are_closed(data):
    R, M, _ = data
    for S in enumerate_submodules(M):
        assert M.zero in S
        assert all(M.add[a][b] in S for a in S for b in S)
        assert all(M.act[r][a] in S for r in R.elements for a in S)


@settings(max_examples=30, deadline=None)
@given(ring_and_modules(), st.integers(min_value=0, max_value=10**6))
def test_composition_of_homs_is_a_hom(data, pick):
    _, M, N = data
    fs, gs = hom_set(M, N), hom_set(N, M)
    f, g = fs[pick % len(fs)], gs[pick % len(gs)]
    h = compose(g, f)
    assert isinstance(h, ModuleHom)
    assert is_linear(M, M, h.images)
