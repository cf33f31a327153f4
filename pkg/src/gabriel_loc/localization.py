"""Gabriel localization over a finite ring.

A finite topologizing system ``F`` has a least member ``I0`` (the
intersection of all members), so the directed colimit of ``Hom(I, -)`` over
``F`` is reached at ``I0``. Every localized module is therefore carried by
``Hom_R(I0, M/F(M))``; the general colimit (disjoint union of all the
Hom-sets modulo agreement on a smaller member) is kept as an independent
construction in :func:`general_colimit` and compared against it.

>>> from gabriel_loc.rings import build_ring, mult_closure
>>> from gabriel_loc.systems import meets_system
>>> R = build_ring("Z/12")
>>> F = meets_system(mult_closure(R, [4]))
>>> RF = ring_structure(F)
>>> RF.ring_view.order, sorted(RF.j_ring.kernel().members)
(3, [0, 3, 6, 9])
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .modules import (
    FiniteModule,
    HomModule,
    ModuleError,
    ModuleHom,
    TensorProduct,
    cokernel,
    compose,
    hom_module,
    hom_set,
    kernel,
    module_from_ideal,
    quotient_module,
    regular_module,
    section,
    submodule,
    tensor,
)
from .rings import FiniteRing, Ideal, RingMap, ideal_generated, ideal_intersection
from .systems import (
    TopologizingSystem,
    is_negligible,
    require_idempotent,
    torsion_set,
)


class LocalizationError(AssertionError):
    """A structural property that the theory guarantees failed to hold."""


class NegligibilityError(ModuleError):
    """A map's kernel or cokernel is not negligible."""


def _restrict(I: Ideal, images: Sequence[int], L: Ideal) -> tuple[int, ...]:
    """Restrict a map on ``I`` (indexed by ``I.elements``) to ``L ⊆ I``."""
    idx = I.index
    return tuple(images[idx[a]] for a in L.elements)


# ---------------------------------------------------------------------------
# pre-localization


@dataclass(frozen=True, eq=False)
class PreLocalization:
    """``M_(F)`` realized as ``Hom_R(I0, M)`` together with ``δ_M``."""

    system: TopologizingSystem
    source: FiniteModule
    ideal: Ideal
    homs: HomModule
    delta: ModuleHom

    @property
    def module(self) -> FiniteModule:
        return self.homs.module

    def value(self, z: int, a: int) -> int:
        """The representative of ``z`` evaluated at ``a ∈ I0``."""
        return self.homs.homs[z].images[self.ideal.index[a]]

    def class_of(self, I: Ideal, images: Sequence[int]) -> int:
        """Class of a map ``I -> M`` (``I ∈ F``, images indexed by ``I.elements``)."""
        return self.homs.id_of(_restrict(I, images, self.ideal))


def pre_localize(F: TopologizingSystem, M: FiniteModule) -> PreLocalization:
    I0 = F.minimum
    A, _ = module_from_ideal(I0)
    H = hom_module(A, M, label=f"{M.label}_(F)")
    els = I0.elements
    delta = ModuleHom(M, H.module,
                      tuple(H.id_of([M.act[a][x] for a in els]) for x in M.elements))
    if delta.kernel_set() != torsion_set(F, M):
        raise LocalizationError(f"Ker(delta) != F(M) for {M.label}")
    if not is_negligible(F, cokernel(delta)[0]):
        raise LocalizationError(f"Coker(delta) is not negligible for {M.label}")
    return PreLocalization(F, M, I0, H, delta)


def pre_localize_hom(P: PreLocalization, Q: PreLocalization, u: ModuleHom) -> ModuleHom:
    """``u_(F)``: ``[f] -> [u ∘ f]``."""
    imgs = []
    for f in P.homs.homs:
        imgs.append(Q.homs.id_of([u.images[y] for y in f.images]))
    return ModuleHom(P.module, Q.module, tuple(imgs))


@dataclass(frozen=True, eq=False)
class ColimitComparison:
    classes: int
    nodes: int
    module: FiniteModule
    restriction: ModuleHom | None
    problems: tuple[str, ...]

    @property
    def agrees(self) -> bool:
        return not self.problems


def general_colimit(F: TopologizingSystem, M: FiniteModule,
                    shortcut: PreLocalization | None = None) -> ColimitComparison:
    """Colimit of ``Hom(I, M)`` over all ``I ∈ F``, built without using ``I0``.

    Two maps are identified when they agree on some member of ``F`` inside
    both domains. The result is compared with ``shortcut`` (default: the
    ``Hom(I0, M)`` realization) through restriction to ``I0``.
    """
    if shortcut is None:
        shortcut = pre_localize(F, M)
    nodes: list[tuple[Ideal, tuple[int, ...]]] = []
    for I in F.ideals:
        A, _ = module_from_ideal(I)
        for f in hom_set(A, M):
            nodes.append((I, f.images))
    node_id = {n: i for i, n in enumerate(nodes)}

    parent = list(range(len(nodes)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    members = F.ideals
    for i, (I, f) in enumerate(nodes):
        for j in range(i + 1, len(nodes)):
            J, g = nodes[j]
            if find(i) == find(j):
                continue
            for L in members:
                if L.issubset(I) and L.issubset(J) and _restrict(I, f, L) == _restrict(J, g, L):
                    parent[find(j)] = find(i)
                    break
    roots = sorted({find(i) for i in range(len(nodes))})
    cls_of_root = {r: k for k, r in enumerate(roots)}
    cls = [cls_of_root[find(i)] for i in range(len(nodes))]
    reps = [nodes[r] for r in roots]

    def node_class(I: Ideal, images: tuple[int, ...]) -> int:
        return cls[node_id[(I, images)]]

    add = []
    for (I, f) in reps:
        row = []
        for (J, g) in reps:
            K = ideal_intersection(I, J)
            fk, gk = _restrict(I, f, K), _restrict(J, g, K)
            row.append(node_class(K, tuple(M.add[a][b] for a, b in zip(fk, gk))))
        add.append(tuple(row))
    act = tuple(
        tuple(node_class(I, tuple(M.act[r][y] for y in f)) for (I, f) in reps)
        for r in M.ring.elements
    )
    zero_node = (F.ideals[-1], tuple(M.zero for _ in F.ideals[-1].elements))
    C = FiniteModule(M.ring, tuple(add), act, node_class(*zero_node), f"colim({M.label})")

    problems = []
    I0 = shortcut.ideal
    restr = [-1] * len(reps)
    for (I, f), k in zip(nodes, cls):
        z = shortcut.class_of(I, f)
        if restr[k] < 0:
            restr[k] = z
        elif restr[k] != z:
            problems.append(f"class {k} restricts to two elements of Hom({I0}, M)")
    rmap = None
    if not problems:
        rmap = ModuleHom(C, shortcut.module, tuple(restr))
        try:
            rmap.validate()
        except ModuleError as exc:
            problems.append(f"restriction not linear: {exc}")
        if not rmap.is_bijective():
            problems.append("restriction to I0 is not bijective")
    return ColimitComparison(len(reps), len(nodes), C, rmap, tuple(problems))


# ---------------------------------------------------------------------------
# localized modules


@dataclass(frozen=True, eq=False)
class LocalizedModule:
    source: FiniteModule
    system: TopologizingSystem
    witness_ideal: Ideal
    torsion: frozenset[int]
    quotient: FiniteModule
    projection: ModuleHom
    pre: PreLocalization
    j_map: ModuleHom

    @property
    def module(self) -> FiniteModule:
        return self.pre.module

    @property
    def size(self) -> int:
        return self.pre.module.size

    @cached_property
    def lift(self) -> list[int]:
        return section(self.projection)

    def value(self, z: int, a: int) -> int:
        return self.pre.value(z, a)

    def class_of(self, I: Ideal, images: Sequence[int]) -> int:
        return self.pre.class_of(I, images)

    def check_invariants(self) -> None:
        F, M = self.system, self.source
        if self.j_map.kernel_set() != self.torsion:
            raise LocalizationError(f"Ker(j_M) != F(M) for {M.label}")
        if not is_negligible(F, cokernel(self.j_map)[0]):
            raise LocalizationError(f"Coker(j_M) is not negligible for {M.label}")
        MF = self.module
        if torsion_set(F, MF) != frozenset({MF.zero}):
            raise LocalizationError(f"F(M_F) != 0 for {M.label}")


def localize(F: TopologizingSystem, M: FiniteModule) -> LocalizedModule:
    return gabriel(F).module(M)


def _localize(F: TopologizingSystem, M: FiniteModule, check: bool = True) -> LocalizedModule:
    tors = torsion_set(F, M)
    Q, proj = quotient_module(M, tors, label=f"{M.label}/F")
    pre = pre_localize(F, Q)
    loc = LocalizedModule(M, F, F.minimum, tors, Q, proj, pre, compose(pre.delta, proj))
    if check:
        loc.check_invariants()
    return loc


@dataclass(frozen=True, eq=False)
class LocalizedRing:
    base: LocalizedModule
    mul: tuple[tuple[int, ...], ...]
    one: int
    ring_view: FiniteRing
    j_ring: RingMap
    lift_into_ideal: tuple[int | None, ...]

    @property
    def order(self) -> int:
        return self.ring_view.order


@lru_cache(maxsize=128)
def gabriel(F: TopologizingSystem) -> "Gabriel":
    return Gabriel(F)


class Gabriel:
    """Localization functor for one idempotent system, with per-module caching."""

    def __init__(self, F: TopologizingSystem, check: bool = True):
        require_idempotent(F)
        self.system = F
        self.ring_base = F.ring
        self.I0 = F.minimum
        self.check = check
        self._cache: dict[int, tuple[FiniteModule, LocalizedModule]] = {}

    def __repr__(self) -> str:
        return f"Gabriel({self.system})"

    # -- modules ----------------------------------------------------------

    def module(self, M: FiniteModule) -> LocalizedModule:
        hit = self._cache.get(id(M))
        if hit is not None and hit[0] is M:
            return hit[1]
        if M.ring is not self.ring_base:
            raise ModuleError("module over a different ring")
        loc = _localize(self.system, M, self.check)
        self._cache[id(M)] = (M, loc)
        return loc

    def forget(self) -> None:
        self._cache.clear()

    def hom(self, u: ModuleHom) -> ModuleHom:
        """``u_F``: ``[f] -> [ū ∘ f]`` with ``ū`` induced on the torsion quotients."""
        LM, LN = self.module(u.source), self.module(u.target)
        ubar = [LN.projection.images[u.images[x]] for x in LM.lift]
        imgs = tuple(LN.pre.homs.id_of([ubar[q] for q in f.images]) for f in LM.pre.homs.homs)
        return ModuleHom(LM.module, LN.module, imgs)

    # -- ring structure ---------------------------------------------------

    @cached_property
    def ring(self) -> LocalizedRing:
        R = self.ring_base
        base = self.module(regular_module(R))
        n = base.size
        mul = tuple(tuple(self._pair(base, z, base, w) for w in range(n)) for z in range(n))
        one = base.j_map.images[R.one]
        view = FiniteRing(base.module.add, mul, base.module.zero, one, f"({R.label})_F")
        jr = RingMap(R, view, base.j_map.images)
        if self.check:
            view.validate()
            jr.validate()
        return LocalizedRing(base, mul, one, view, jr, tuple(self._lift))

    @cached_property
    def _lift(self) -> list[int | None]:
        """For each class of ``R/F(R)``, a representative inside ``I0`` if any."""
        base = self.module(regular_module(self.ring_base))
        lift: list[int | None] = [None] * base.quotient.size
        for b in self.I0.elements:
            q = base.projection.images[b]
            if lift[q] is None:
                lift[q] = b
        return lift

    def _pair(self, base: LocalizedModule, z: int, LM: LocalizedModule, x: int) -> int:
        """``[f].[g] = [ḡ ∘ f|_{f^{-1}(Ī0)}]`` on representatives over ``I0``."""
        f = base.pre.homs.homs[z].images
        g = LM.pre.homs.homs[x].images
        idx = self.I0.index
        out = []
        for k in range(len(self.I0.elements)):
            b = self._lift[f[k]]
            if b is None:
                raise LocalizationError("f^{-1}(I0) is smaller than I0")
            out.append(g[idx[b]])
        return LM.pre.homs.id_of(out)

    def pair_general(self, I: Ideal, f: Sequence[int], LM: LocalizedModule,
                     J: Ideal, g: Sequence[int]) -> int:
        """The pairing on arbitrary representatives ``f: I -> R/F(R)``, ``g: J -> M/F(M)``.

        Used to re-verify that the product does not depend on representatives.
        """
        base = self.module(regular_module(self.ring_base))
        proj = base.projection.images
        lift_J: dict[int, int] = {}
        for b in J.elements:
            lift_J.setdefault(proj[b], b)
        dom, vals = [], []
        for a, q in zip(I.elements, f):
            b = lift_J.get(q)
            if b is not None:
                dom.append(a)
                vals.append(g[J.index[b]])
        L = Ideal(self.ring_base, frozenset(dom))
        if L not in self.system.members:
            raise LocalizationError(f"f^{{-1}}(J) = {L} is not in the system")
        return LM.class_of(L, [vals[dom.index(a)] for a in L.elements])

    def action(self, z: int, LM: LocalizedModule, x: int) -> int:
        return self._pair(self.ring.base, z, LM, x)

    def rf_module(self, M: FiniteModule) -> FiniteModule:
        """``M_F`` as a module over the ring ``R_F``."""
        LM = self.module(M)
        RF = self.ring
        act = tuple(tuple(self.action(z, LM, x) for x in LM.module.elements)
                    for z in RF.ring_view.elements)
        return FiniteModule(RF.ring_view, LM.module.add, act, LM.module.zero,
                            f"{M.label}_F over R_F")

    # -- universal property ----------------------------------------------

    def universal_map(self, f: ModuleHom, g: ModuleHom) -> ModuleHom:
        """The unique ``h: P -> N_F`` with ``h ∘ g = j_N ∘ f`` (``g: M -> P``)."""
        if f.source is not g.source:
            raise ModuleError("f and g must share their source")
        F = self.system
        if not is_negligible(F, kernel(g)[0]):
            raise NegligibilityError("Ker g is not negligible")
        if not is_negligible(F, cokernel(g)[0]):
            raise NegligibilityError("Coker g is not negligible")
        P = g.target
        LN = self.module(f.target)
        pre_g: dict[int, int] = {}
        for m, y in enumerate(g.images):
            pre_g.setdefault(y, m)
        imgs = []
        for x in P.elements:
            vals = []
            for a in self.I0.elements:
                m = pre_g[P.act[a][x]]
                vals.append(LN.projection.images[f.images[m]])
            imgs.append(LN.pre.homs.id_of(vals))
        h = ModuleHom(P, LN.module, tuple(imgs))
        if self.check and compose(h, g).images != compose(LN.j_map, f).images:
            raise LocalizationError("h ∘ g != j_N ∘ f")
        return h

    def universal_candidates(self, f: ModuleHom, g: ModuleHom) -> list[ModuleHom]:
        """Every ``h: P -> N_F`` with ``h ∘ g = j_N ∘ f``, by exhaustive search."""
        LN = self.module(f.target)
        target = compose(LN.j_map, f).images
        return [h for h in hom_set(g.target, LN.module)
                if compose(h, g).images == target]

    # -- tensor comparison --------------------------------------------------

    def sigma(self, M: FiniteModule) -> tuple[TensorProduct, ModuleHom]:
        """``σ_M: R_F ⊗_R M -> M_F``, ``a ⊗ m -> a . j_M(m)``."""
        RF = self.ring
        LM = self.module(M)
        T = tensor(RF.base.module, M)
        jm = LM.j_map.images
        sig = T.induced(lambda z, m: self.action(z, LM, jm[m]), LM.module)
        return T, sig

    def eta(self, M: FiniteModule, T: TensorProduct | None = None) -> ModuleHom:
        """``M -> R_F ⊗_R M``, ``m -> 1 ⊗ m``."""
        RF = self.ring
        if T is None:
            T = tensor(RF.base.module, M)
        return ModuleHom(M, T.module, tuple(T.pure[RF.one][m] for m in M.elements))

    # -- closed modules -----------------------------------------------------

    def is_closed(self, M: FiniteModule) -> bool:
        return self.module(M).j_map.is_bijective()

    def is_strongly_closed(self, M: FiniteModule) -> bool:
        for I in self.system.ideals:
            A, _ = module_from_ideal(I)
            restricted = {tuple(M.act[a][m] for a in I.elements) for m in M.elements}
            if len(restricted) != M.size or len(hom_set(A, M)) != M.size:
                return False
        return True

    # -- submodules -------------------------------------------------------

    def ideal_localization(self, I: Ideal) -> frozenset[int]:
        """``I_F`` as a subset of ``R_F`` (image of the localized inclusion)."""
        _, incl = module_from_ideal(I)
        uF = self.hom(incl)
        if not uF.is_injective():
            raise LocalizationError(f"localized inclusion of {I} is not injective")
        return uF.image_set()

    def extended_ideal(self, I: Ideal) -> frozenset[int]:
        """``I R_F``: the ideal of ``R_F`` generated by ``j_R(I)``."""
        RF = self.ring
        return ideal_generated(RF.ring_view, {RF.j_ring.images[a] for a in I.members}).members

    def submodule_localization(self, M: FiniteModule, N: frozenset[int]) -> frozenset[int]:
        """Image of ``N_F -> M_F`` for a submodule ``N ⊆ M``."""
        _, incl = submodule(M, N)
        uF = self.hom(incl)
        if not uF.is_injective():
            raise LocalizationError("localized inclusion is not injective")
        return uF.image_set()

    def pullback_violations(self, M: FiniteModule, N: frozenset[int]) -> list[str]:
        """Compare ``(j_M^{-1} N)_F`` with ``j_{M_F}^{-1}(N_F)`` inside ``M_F``."""
        LM = self.module(M)
        MF = LM.module
        jm = LM.j_map.images
        Nprime = frozenset(x for x in M.elements if jm[x] in N)
        lhs = self.submodule_localization(M, Nprime)
        LMF = self.module(MF)
        NF = self.submodule_localization(MF, N)
        jmf = LMF.j_map.images
        rhs = frozenset(x for x in MF.elements if jmf[x] in NF)
        out = []
        if lhs != rhs:
            out.append(f"(j^-1 N)_F = {sorted(lhs)} but j^-1(N_F) = {sorted(rhs)}")
        Q, _ = quotient_module(MF, N)
        if torsion_set(self.system, Q) == frozenset({Q.zero}) and rhs != N:
            out.append(f"F(M_F/N) = 0 but N = {sorted(N)} != {sorted(rhs)}")
        return out


def ring_structure(F: TopologizingSystem) -> LocalizedRing:
    return gabriel(F).ring


def localize_hom(F: TopologizingSystem, u: ModuleHom) -> ModuleHom:
    return gabriel(F).hom(u)


def universal_map(F: TopologizingSystem, f: ModuleHom, g: ModuleHom) -> ModuleHom:
    return gabriel(F).universal_map(f, g)


def sigma_map(F: TopologizingSystem, M: FiniteModule) -> ModuleHom:
    return gabriel(F).sigma(M)[1]


def is_closed(F: TopologizingSystem, M: FiniteModule) -> bool:
    return gabriel(F).is_closed(M)


def is_strongly_closed(F: TopologizingSystem, M: FiniteModule) -> bool:
    return gabriel(F).is_strongly_closed(M)


def ideal_localization(F: TopologizingSystem, I: Ideal) -> frozenset[int]:
    return gabriel(F).ideal_localization(I)


def submodule_pullback_check(F: TopologizingSystem, M: FiniteModule,
                             N: frozenset[int]) -> list[str]:
    return gabriel(F).pullback_violations(M, N)
