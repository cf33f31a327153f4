"""Verification harness.

Each checker recomputes one structural claim about localization by an
independent route (tensor squares, ideal-embedding flatness, classical
fractions, the general colimit, exhaustive Hom and ring-map searches) and
returns a :class:`TheoremReport`. A failing report always carries concrete
counterexamples under ``witness["counterexamples"]``.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Iterable

from .config import timings_enabled
from .localization import Gabriel, LocalizationError, gabriel, general_colimit, pre_localize, pre_localize_hom
from .modules import (
    FiniteModule,
    ModuleHom,
    classical_localization,
    classical_ring_localization,
    compose,
    cokernel,
    cyclic_quotient,
    direct_sum,
    enumerate_submodules,
    find_module_isomorphism,
    hom_set,
    identity_hom,
    is_flat,
    module_from_ideal,
    quotient_module,
    regular_module,
    restrict_scalars,
    span,
    submodule,
    tensor,
    tensor_map,
    zero_hom,
)
from .rings import (
    FiniteRing,
    Ideal,
    MultSet,
    RingMap,
    annihilator,
    build_ring,
    enumerate_mult_sets,
    enumerate_primes,
    enumerate_ring_maps,
    ideal_generated,
    ideal_sum,
    is_prime,
    lookup_ideal,
    quotient_ring,
)
from .systems import (
    TopologizingSystem,
    enumerate_idempotent,
    enumerate_topologizing,
    idempotency_witness,
    induced_system,
    induced_system_by_negligibility,
    is_negligible,
    meets_system,
    product_system,
    ring_map_system,
    torsion_set,
)

MAX_COUNTEREXAMPLES = 8


# ---------------------------------------------------------------------------
# reports


@dataclass
class TheoremReport:
    theorem: str
    instance: dict[str, Any]
    verdict: str
    witness: dict[str, Any] = field(default_factory=dict)
    ms: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict[str, Any]:
        return {"theorem": self.theorem, "instance": self.instance,
                "verdict": self.verdict, "witness": self.witness, "ms": self.ms}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "TheoremReport":
        d = json.loads(line)
        return cls(d["theorem"], d["instance"], d["verdict"], d["witness"], d["ms"])

    def sort_key(self) -> tuple[str, str]:
        return (self.theorem, json.dumps(self.instance, sort_keys=True, ensure_ascii=False))


class _Stopwatch:
    def __init__(self) -> None:
        self.t0 = time.perf_counter()

    def ms(self) -> int:
        if not timings_enabled():
            return 0
        return int(round(1000 * (time.perf_counter() - self.t0)))


def _finish(theorem: str, instance: dict, failures: list, clock: _Stopwatch,
            **extra: Any) -> TheoremReport:
    witness = dict(extra)
    if failures:
        witness["failures"] = len(failures)
        witness["counterexamples"] = failures[:MAX_COUNTEREXAMPLES]
    return TheoremReport(theorem, instance, "fail" if failures else "pass", witness, clock.ms())


def fmt_set(s: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def fmt_system(F: TopologizingSystem) -> list[str]:
    return [str(I) for I in F.ideals]


def _instance(R: FiniteRing, F: TopologizingSystem | None = None, **more: Any) -> dict:
    d: dict[str, Any] = {"ring": R.label}
    if F is not None:
        d["system"] = fmt_system(F)
    d.update(more)
    return d


# ---------------------------------------------------------------------------
# epimorphisms and flatness


def as_source_module(phi: RingMap) -> FiniteModule:
    """The target ring viewed as a module over the source."""
    return restrict_scalars(phi, regular_module(phi.target))


@dataclass(frozen=True)
class EpiEvidence:
    tensor_order: int
    multiplication_bijective: bool
    swap_symmetric: bool
    unit_map_bijective: bool

    @property
    def consistent(self) -> bool:
        return self.multiplication_bijective == self.swap_symmetric == self.unit_map_bijective


def epimorphism_evidence(phi: RingMap) -> EpiEvidence:
    """Evaluate three equivalent epimorphism tests on ``S ⊗_R S``."""
    S = phi.target
    SR = as_source_module(phi)
    T = tensor(SR, SR)
    p = T.induced(lambda s, t: S.mul[s][t], SR)
    swap = all(T.pure[s][S.one] == T.pure[S.one][s] for s in S.elements)
    unit = ModuleHom(SR, T.module, tuple(T.pure[S.one][s] for s in S.elements))
    return EpiEvidence(T.module.size, p.is_bijective(), swap, unit.is_bijective())


def is_epimorphism(phi: RingMap) -> bool:
    """Whether ``S ⊗_R S -> S`` is bijective."""
    return epimorphism_evidence(phi).multiplication_bijective


def is_flat_epi(phi: RingMap) -> bool:
    return is_flat(as_source_module(phi)) and is_epimorphism(phi)


def _ring_maps_through(RF: FiniteRing, S: FiniteRing, jr: RingMap, phi: RingMap) -> list[RingMap]:
    return [psi for psi in enumerate_ring_maps(RF, S)
            if jr.then(psi).images == phi.images]


def flat_epi_to_localization(phi: RingMap, spec: str | None = None) -> TheoremReport:
    """From a flat epimorphism, rebuild the target as a localization of the source."""
    clock = _Stopwatch()
    R, S = phi.source, phi.target
    inst = {"ring": spec or R.label, "target": S.label, "map": list(phi.images)}
    failures: list[dict] = []
    if not is_flat_epi(phi):
        failures.append({"precondition": "map is not a flat epimorphism"})
        return _finish("flat-epi-to-localization", inst, failures, clock)
    F = ring_map_system(phi)
    inst["system"] = fmt_system(F)
    if not F.is_idempotent:
        w = idempotency_witness(F)
        failures.append({"system-not-idempotent": [str(w[0]), str(w[1])]})
        return _finish("flat-epi-to-localization", inst, failures, clock)
    G = gabriel(F)
    RF = G.ring
    SR = as_source_module(phi)
    LS = G.module(SR)
    phiF = G.hom(ModuleHom(regular_module(R), SR, phi.images))
    if not phiF.is_bijective():
        failures.append({"phi_F": "not bijective"})
    if not LS.j_map.is_bijective():
        failures.append({"j_S": "not bijective"})
        return _finish("flat-epi-to-localization", inst, failures, clock)
    psi_imgs = compose(LS.j_map.inverse(), phiF).images
    psi = RingMap(RF.ring_view, S, psi_imgs)
    try:
        psi.validate()
    except Exception as exc:  # noqa: BLE001 - reported as a witness
        failures.append({"psi-not-ring-map": str(exc)})
    if not psi.is_bijective():
        failures.append({"psi": "not bijective"})
    if RF.j_ring.then(psi).images != phi.images:
        failures.append({"phi != psi o j_R": list(RF.j_ring.then(psi).images)})
    candidates = _ring_maps_through(RF.ring_view, S, RF.j_ring, phi)
    if len(candidates) != 1:
        failures.append({"factorizations": len(candidates)})
    return _finish("flat-epi-to-localization", inst, failures, clock,
                   order=RF.order, psi=list(psi_imgs), candidates=len(candidates))


def condition_iii_witness(F: TopologizingSystem) -> Ideal | None:
    """A member ``I`` with ``I R_F != R_F``, or ``None``."""
    G = gabriel(F)
    n = G.ring.order
    for I in F.ideals:
        if len(G.extended_ideal(I)) != n:
            return I
    return None


def localization_to_flat_epi(F: TopologizingSystem, spec: str | None = None) -> TheoremReport:
    """When every member extends to the unit ideal, ``j_R`` is a flat epimorphism."""
    clock = _Stopwatch()
    R = F.ring
    inst = _instance(R, F)
    if spec:
        inst["ring"] = spec
    w = condition_iii_witness(F)
    if w is not None:
        return _finish("localization-to-flat-epi", inst,
                       [{"I R_F != R_F": str(w)}], clock)
    G = gabriel(F)
    jr = G.ring.j_ring
    failures: list[dict] = []
    ev = epimorphism_evidence(jr)
    flat = is_flat(as_source_module(jr))
    if not flat:
        failures.append({"j_R": "not flat"})
    if not ev.multiplication_bijective:
        failures.append({"j_R": "not an epimorphism", "tensor_order": ev.tensor_order})
    if not ev.consistent:
        failures.append({"epi-tests-disagree": [ev.multiplication_bijective,
                                                ev.swap_symmetric, ev.unit_map_bijective]})
    # the same map, read through the converse direction with psi = identity
    back = flat_epi_to_localization(jr) if flat and ev.multiplication_bijective else None
    if back is not None and not back.passed:
        failures.append({"round-trip": back.witness})
    return _finish("localization-to-flat-epi", inst, failures, clock,
                   order=G.ring.order, kernel=str(jr.kernel()))


# ---------------------------------------------------------------------------
# flat quotients


def annihilator_criterion(J: Ideal) -> bool:
    R = J.ring
    return all(ideal_sum(annihilator(R, a), J).is_unit() for a in J.members)


def regular_generation(J: Ideal) -> bool:
    """Whether ``J`` is generated by elements with ``a = a^2 b``."""
    R = J.ring
    reg = [a for a in J.elements
           if any(R.mul[R.mul[a][a]][b] == a for b in R.elements)]
    return ideal_generated(R, reg).members == J.members


def _is_field(R: FiniteRing) -> bool:
    return not R.is_zero_ring() and len(R.units) == R.order - 1


def flat_quotient_report(R: FiniteRing, spec: str | None = None) -> TheoremReport:
    clock = _Stopwatch()
    failures: list[dict] = []
    rows = []
    for J in R.ideals:
        crit = annihilator_criterion(J)
        flat = is_flat(cyclic_quotient(R, J)[0])
        reg = regular_generation(J)
        rows.append({"ideal": str(J), "criterion": crit, "flat": flat, "regular": reg})
        if crit != flat:
            failures.append({"ideal": str(J), "criterion": crit, "tensor_oracle": flat})
        if reg and not crit:
            failures.append({"ideal": str(J), "regular-generators-but-not-flat": True})
        if _is_field(R) and flat and not (J.is_zero() or J.is_unit()):
            failures.append({"ideal": str(J), "flat-proper-quotient-of-domain": True})
    return _finish("flat-quotient-criterion", {"ring": spec or R.label}, failures, clock,
                   ideals=rows)


@dataclass(frozen=True)
class QuotientClassification:
    ideal: Ideal
    epi: bool
    flat: bool
    swap_agrees: bool
    criterion: bool

    @property
    def flat_epi(self) -> bool:
        return self.epi and self.flat

    def to_dict(self) -> dict[str, Any]:
        return {"ideal": str(self.ideal), "epi": self.epi, "flat": self.flat,
                "flat_epi": self.flat_epi, "criterion": self.criterion}


def classify_epis(R: FiniteRing) -> list[QuotientClassification]:
    """Classify every projection ``R -> R/J``."""
    out = []
    for J in R.ideals:
        _, pi = quotient_ring(J)
        ev = epimorphism_evidence(pi)
        out.append(QuotientClassification(
            J, ev.multiplication_bijective, is_flat(as_source_module(pi)),
            ev.consistent, annihilator_criterion(J)))
    return out


def classify_epis_report(R: FiniteRing, spec: str | None = None) -> TheoremReport:
    """Every surjection is an epimorphism; flat exactly when the criterion holds."""
    clock = _Stopwatch()
    rows = classify_epis(R)
    failures: list[dict] = []
    for c in rows:
        if not c.epi:
            failures.append({"ideal": str(c.ideal), "surjection-not-epi": True})
        if not c.swap_agrees:
            failures.append({"ideal": str(c.ideal), "epi-tests-disagree": True})
        if c.flat_epi != c.criterion:
            failures.append({"ideal": str(c.ideal), "flat_epi": c.flat_epi,
                             "criterion": c.criterion})
    return _finish("classify-epis", {"ring": spec or R.label}, failures, clock,
                   quotients=[c.to_dict() for c in rows])


# ---------------------------------------------------------------------------
# battery


def battery_specs() -> list[str]:
    specs = [f"Z/{n}" for n in range(1, 13)]
    specs += ["Z/2 x Z/2", "Z/4 x Z/2"]
    specs += ["@f4.json", "@f2xy_m2.json", "@z4x.json", "@f2x2y2.json"]
    return specs


def battery_rings() -> list[tuple[str, FiniteRing]]:
    return [(s, build_ring(s)) for s in battery_specs()]


MAX_MODULE = 64


def battery_modules(R: FiniteRing, seed: int = 0, extra: int = 3) -> list[FiniteModule]:
    """Cyclic modules, two-term direct sums of order <= 64, and a few seeded
    non-split quotients ``R^2 / R(a, b)``."""
    cyclic = [cyclic_quotient(R, I)[0] for I in reversed(R.ideals)]
    mods = list(cyclic)
    nontrivial = [M for M in cyclic if M.size > 1]
    for i, A in enumerate(nontrivial):
        for B in nontrivial[i:]:
            if A.size * B.size <= MAX_MODULE:
                mods.append(direct_sum([A, B]).module)
    if 1 < R.order and R.order ** 2 <= 256:
        rng = random.Random(f"{seed}:{R.label}")
        free = direct_sum([regular_module(R), regular_module(R)])
        vecs = [(a, b) for a in R.elements for b in R.elements if (a, b) != (R.zero, R.zero)]
        rng.shuffle(vecs)
        taken = 0
        for a, b in vecs:
            if taken >= extra:
                break
            x = free.encode((a, b))
            N = span(free.module, [x])
            if free.module.size // len(N) > MAX_MODULE:
                continue
            Q, _ = quotient_module(free.module, N, label=f"R^2/R({a},{b})")
            mods.append(Q)
            taken += 1
    return mods


def _seeded(seed: int, *tags: Any) -> random.Random:
    return random.Random(":".join(map(str, (seed, *tags))))


def _sample(rng: random.Random, pool: list, k: int) -> list:
    if len(pool) <= k:
        return list(pool)
    return rng.sample(pool, k)


def _submodules_within(M: FiniteModule, bound: frozenset[int]) -> list[frozenset[int]]:
    return [N for N in enumerate_submodules(M) if N <= bound]


def negligible_maps(F: TopologizingSystem, M: FiniteModule) -> list[ModuleHom]:
    """Maps out of or into ``M`` whose kernel and cokernel are negligible."""
    G = gabriel(F)
    out: list[ModuleHom] = []
    tors = torsion_set(F, M)
    for T in _submodules_within(M, tors):
        out.append(quotient_module(M, T)[1])
    for N in enumerate_submodules(M):
        Q, _ = quotient_module(M, N)
        if is_negligible(F, Q):
            out.append(submodule(M, N)[1])
    out.append(G.module(M).j_map)
    return out


# individual checkers; each returns a list of failure dicts


def _check_ker_coker(G: Gabriel, M: FiniteModule) -> list[dict]:
    F = G.system
    L = G.module(M)
    out = []
    if L.j_map.kernel_set() != torsion_set(F, M):
        out.append({"module": M.label, "ker_j": fmt_set(L.j_map.kernel_set()),
                    "F(M)": fmt_set(torsion_set(F, M))})
    if not is_negligible(F, cokernel(L.j_map)[0]):
        out.append({"module": M.label, "coker_j": "not negligible"})
    Q, _ = quotient_module(M, torsion_set(F, M))
    if torsion_set(F, Q) != frozenset({Q.zero}):
        out.append({"module": M.label, "F(M/F(M))": "nonzero"})
    P = pre_localize(F, M)
    if P.delta.kernel_set() != torsion_set(F, M):
        out.append({"module": M.label, "ker_delta": fmt_set(P.delta.kernel_set())})
    return out


def _check_vanishing(G: Gabriel, M: FiniteModule) -> list[dict]:
    zero = G.module(M).size == 1
    neg = is_negligible(G.system, M)
    return [] if zero == neg else [{"module": M.label, "M_F=0": zero, "negligible": neg}]


def _check_closure(G: Gabriel, M: FiniteModule) -> list[dict]:
    L = G.module(M)
    MF = L.module
    LL = G.module(MF)
    out = []
    if not LL.j_map.is_bijective():
        out.append({"module": M.label, "j_(M_F)": "not bijective"})
    if torsion_set(G.system, MF) != frozenset({MF.zero}):
        out.append({"module": M.label, "F(M_F)": "nonzero"})
    if not G.hom(L.j_map).same_as(LL.j_map):
        out.append({"module": M.label, "(j_M)_F != j_(M_F)": True})
    return out


def _check_functoriality(G: Gabriel, M: FiniteModule) -> list[dict]:
    out = []
    L = G.module(M)
    idF = G.hom(identity_hom(M))
    if idF.images != identity_hom(L.module).images:
        out.append({"module": M.label, "id_F": "not identity"})
    return out


def _check_colimit(G: Gabriel, M: FiniteModule) -> list[dict]:
    L = G.module(M)
    cmp = general_colimit(G.system, L.quotient, L.pre)
    if cmp.agrees:
        return []
    return [{"module": M.label, "colimit": list(cmp.problems)}]


def _check_pullback(G: Gabriel, M: FiniteModule) -> list[dict]:
    L = G.module(M)
    out = []
    for N in enumerate_submodules(L.module):
        for v in G.pullback_violations(M, N):
            out.append({"module": M.label, "N": fmt_set(N), "violation": v})
    return out


def _check_sigma(G: Gabriel, M: FiniteModule) -> tuple[list[dict], bool, bool]:
    """σ_M bijectivity and the η-kernel condition, as booleans plus failures."""
    T, sig = G.sigma(M)
    eta = G.eta(M, T)
    L = G.module(M)
    out = []
    if compose(sig, eta).images != L.j_map.images:
        out.append({"module": M.label, "sigma o eta != j_M": True})
    return out, sig.is_bijective(), eta.kernel_set() == torsion_set(G.system, M)


def _check_sigma_natural(G: Gabriel, u: ModuleHom) -> list[dict]:
    RF = G.ring
    T1, s1 = G.sigma(u.source)
    T2, s2 = G.sigma(u.target)
    lhs = compose(s2, tensor_map(identity_hom(RF.base.module), u, T1, T2))
    rhs = compose(G.hom(u), s1)
    return [] if lhs.images == rhs.images else [{"map": f"{u.source.label}->{u.target.label}",
                                                  "sigma-not-natural": True}]


def _check_universal(G: Gabriel, f: ModuleHom, g: ModuleHom) -> list[dict]:
    h = G.universal_map(f, g)
    cands = G.universal_candidates(f, g)
    if len(cands) != 1 or not cands[0].same_as(h):
        return [{"f": f"{f.source.label}->{f.target.label}", "candidates": len(cands)}]
    return []


def _check_left_exact(G: Gabriel, M: FiniteModule, N: frozenset[int]) -> tuple[list[dict], bool]:
    """``0 -> N -> M -> M/N``: left exactness after localization and pre-localization.

    Returns failures and whether ``M_F -> (M/N)_F`` is also onto.
    """
    F = G.system
    sub, i = submodule(M, N)
    Q, p = quotient_module(M, N)
    iF, pF = G.hom(i), G.hom(p)
    out = []
    tag = {"module": M.label, "sub": fmt_set(N)}
    if not iF.is_injective():
        out.append({**tag, "i_F": "not injective"})
    if iF.image_set() != pF.kernel_set():
        out.append({**tag, "exact_at_M_F": False})
    P1, P2, P3 = pre_localize(F, sub), pre_localize(F, M), pre_localize(F, Q)
    ip, pp = pre_localize_hom(P1, P2, i), pre_localize_hom(P2, P3, p)
    if not ip.is_injective() or ip.image_set() != pp.kernel_set():
        out.append({**tag, "pre-localization": "not left exact"})
    return out, pF.is_surjective()


def _check_pairing(G: Gabriel, rng: random.Random, M: FiniteModule, samples: int) -> list[dict]:
    """Evaluate the product on random representatives over random members."""
    F = G.system
    R = F.ring
    base = G.module(regular_module(R))
    L = G.module(M)
    out = []
    members = F.ideals
    for _ in range(samples):
        I, J = rng.choice(members), rng.choice(members)
        fs = hom_set(module_from_ideal(I)[0], base.quotient)
        gs = hom_set(module_from_ideal(J)[0], L.quotient)
        f, g = rng.choice(fs), rng.choice(gs)
        got = G.pair_general(I, f.images, L, J, g.images)
        want = G.action(base.class_of(I, f.images), L, L.class_of(J, g.images))
        if got != want:
            out.append({"module": M.label, "I": str(I), "J": str(J),
                        "f": list(f.images), "g": list(g.images), "got": got, "want": want})
    return out


def _check_rf_module(G: Gabriel, M: FiniteModule) -> list[dict]:
    try:
        G.rf_module(M).validate()
    except Exception as exc:  # noqa: BLE001
        return [{"module": M.label, "R_F-action": str(exc)}]
    return []


def _check_hom_bijection(G: Gabriel, A: FiniteModule, B: FiniteModule) -> list[dict]:
    """For closed ``A, B``: ``u -> u_F`` is a bijection ``Hom(A,B) -> Hom(A_F,B_F)``."""
    src = hom_set(A, B)
    LA, LB = G.module(A), G.module(B)
    tgt = hom_set(LA.module, LB.module)
    imgs = {G.hom(u).images for u in src}
    if len(imgs) != len(src) or len(src) != len(tgt):
        return [{"A": A.label, "B": B.label, "Hom": len(src), "Hom_F": len(tgt),
                 "distinct_images": len(imgs)}]
    return []


def _check_ideal_remarks(G: Gabriel) -> list[dict]:
    F = G.system
    R = F.ring
    n = G.ring.order
    out = []
    for I in R.ideals:
        IF = G.ideal_localization(I)
        ext = G.extended_ideal(I)
        if not ext <= IF:
            out.append({"I": str(I), "IR_F": fmt_set(ext), "I_F": fmt_set(IF)})
        if I in F and len(IF) != n:
            out.append({"I": str(I), "member-not-full": fmt_set(IF)})
        if len(ext) == n and I not in F:
            out.append({"I": str(I), "extension-full-but-not-member": True})
        if I.members <= torsion_set(F, regular_module(R)) and len(IF) != 1:
            out.append({"I": str(I), "negligible-ideal-localizes-nonzero": fmt_set(IF)})
    return out


def _check_domain(G: Gabriel) -> list[dict]:
    F = G.system
    R = F.ring
    if not _is_field(R) or R.zero_ideal in F:
        return []
    RF = G.ring.ring_view
    for a in RF.elements:
        for b in RF.elements:
            if a != RF.zero and b != RF.zero and RF.mul[a][b] == RF.zero:
                return [{"zero-divisors": [a, b]}]
    return []


def _quotient_targets(R: FiniteRing) -> list[RingMap]:
    return [quotient_ring(J)[1] for J in R.ideals]


def _check_unit_covering(G: Gabriel, phi: RingMap) -> list[dict]:
    """If ``IS = S`` for all members, S-modules are closed and ψ factors φ uniquely."""
    F = G.system
    if not all(phi.extend(I).is_unit() for I in F.ideals):
        return []
    S = phi.target
    out = []
    for J in S.ideals:
        MS = restrict_scalars(phi, cyclic_quotient(S, J)[0])
        if not G.module(MS).j_map.is_bijective():
            out.append({"target": S.label, "S-module": str(J), "j_M": "not bijective"})
    SR = as_source_module(phi)
    LS = G.module(SR)
    RF = G.ring
    if LS.j_map.is_bijective():
        phiF = G.hom(ModuleHom(regular_module(F.ring), SR, phi.images))
        psi = RingMap(RF.ring_view, S, compose(LS.j_map.inverse(), phiF).images)
        try:
            psi.validate()
        except Exception as exc:  # noqa: BLE001
            out.append({"target": S.label, "psi": str(exc)})
        cands = _ring_maps_through(RF.ring_view, S, RF.j_ring, phi)
        if len(cands) != 1 or cands[0].images != psi.images:
            out.append({"target": S.label, "factorizations": len(cands)})
    return out


def _check_induced(G: Gabriel, phi: RingMap) -> list[dict]:
    F = G.system
    S = phi.target
    out = []
    Gs = induced_system(phi, F)
    if Gs.members != induced_system_by_negligibility(phi, F):
        out.append({"target": S.label, "induced-system-definitions-disagree": True})
        return out
    GS = gabriel(Gs)
    for J in S.ideals:
        M = cyclic_quotient(S, J)[0]
        MR = restrict_scalars(phi, M)
        if torsion_set(F, MR) != torsion_set(Gs, M):
            out.append({"target": S.label, "module": M.label, "F(M) != G(M)": True})
            continue
        LG = GS.module(M)
        jprime = ModuleHom(MR, restrict_scalars(phi, LG.module), LG.j_map.images)
        try:
            eta = G.universal_map(identity_hom(MR), jprime)
        except Exception as exc:  # noqa: BLE001
            out.append({"target": S.label, "module": M.label, "eta": str(exc)})
            continue
        if not eta.is_bijective():
            out.append({"target": S.label, "module": M.label, "eta": "not bijective"})
    return out


def _check_closed_strong(G: Gabriel, M: FiniteModule, cond_iii: bool) -> list[dict]:
    MF = G.module(M).module
    closed = G.is_closed(MF)
    out = []
    if not closed:
        out.append({"module": M.label, "M_F": "not closed"})
    if cond_iii and closed and not G.is_strongly_closed(MF):
        out.append({"module": M.label, "M_F": "closed but not strongly closed"})
    return out


def _check_direct_sum(G: Gabriel, A: FiniteModule, B: FiniteModule) -> bool:
    D = direct_sum([A, B])
    LA, LB = G.module(A), G.module(B)
    DF = G.module(D.module)
    pa, pb = G.hom(D.projections[0]), G.hom(D.projections[1])
    pairs = {(pa.images[z], pb.images[z]) for z in DF.module.elements}
    return len(pairs) == DF.size == LA.size * LB.size


# ---------------------------------------------------------------------------
# exactness conditions


def exactness_report(F: TopologizingSystem, modules: list[FiniteModule] | None = None,
                     seed: int = 0, spec: str | None = None) -> TheoremReport:
    """Evaluate conditions (i)-(vii) of the exactness theorem and require agreement."""
    clock = _Stopwatch()
    R = F.ring
    G = gabriel(F)
    mods = modules if modules is not None else battery_modules(R, seed)
    inst = _instance(R, F)
    if spec:
        inst["ring"] = spec
    failures: list[dict] = []

    c3 = condition_iii_witness(F) is None

    c1 = c2 = True
    for M in mods:
        f, bij, ker_ok = _check_sigma(G, M)
        failures += f
        c1 &= bij
        c2 &= ker_ok
    if not _check_sigma(G, regular_module(R))[1]:
        failures.append({"sigma_R": "not bijective"})

    rng = _seeded(seed, "exact", R.label, fmt_system(F))
    exact = True
    pool = [(M, N) for M in mods for N in enumerate_submodules(M)]
    for M, N in _sample(rng, pool, 12):
        f, onto = _check_left_exact(G, M, N)
        failures += f
        exact &= onto and not f
    sums = all(_check_direct_sum(G, A, B)
               for A, B in _sample(rng, [(A, B) for A in mods[:6] for B in mods[:6]
                                          if A.size * B.size <= MAX_MODULE], 6))
    c4 = exact and sums
    c5 = exact and F.is_finite_type

    RF = G.ring
    jr = RF.j_ring
    rf_cyclic = [restrict_scalars(jr, cyclic_quotient(RF.ring_view, J)[0])
                 for J in RF.ring_view.ideals]
    c7 = all(torsion_set(F, N) == frozenset({N.zero}) for N in rf_cyclic)
    cyclic_R = [cyclic_quotient(R, I)[0] for I in R.ideals]
    localized = [G.module(M).module for M in cyclic_R]
    c6 = all(any(find_module_isomorphism(N, L) is not None for L in localized)
             for N in rf_cyclic)

    conds = {"i": c1, "ii": c2, "iii": c3, "iv": c4, "v": c5, "vi": c6, "vii": c7}
    if len(set(conds.values())) != 1:
        failures.append({"conditions": conds})
    return _finish("exactness-conditions", inst, failures, clock, conditions=conds,
                   modules=len(mods))


# ---------------------------------------------------------------------------
# primes


def prime_correspondence(F: TopologizingSystem, spec: str | None = None) -> TheoremReport:
    clock = _Stopwatch()
    R = F.ring
    G = gabriel(F)
    RF = G.ring
    V = RF.ring_view
    jr = RF.j_ring
    inst = _instance(R, F)
    if spec:
        inst["ring"] = spec
    Fprime = frozenset(
        J for J in V.ideals
        if is_negligible(F, restrict_scalars(jr, cyclic_quotient(V, J)[0])))
    domain = [p for p in enumerate_primes(R) if p not in F]
    codomain = [q for q in enumerate_primes(V) if q not in Fprime]
    failures: list[dict] = []
    image: dict[str, str] = {}
    seen: dict[frozenset[int], Ideal] = {}
    for p in domain:
        pF = G.ideal_localization(p)
        try:
            q = lookup_ideal(V, pF)
        except Exception:  # noqa: BLE001
            failures.append({"p": str(p), "p_F-not-an-ideal": fmt_set(pF)})
            continue
        if not is_prime(q):
            failures.append({"p": str(p), "p_F-not-prime": str(q)})
        if q in Fprime:
            failures.append({"p": str(p), "p_F-in-F'": str(q)})
        if q.members in seen:
            failures.append({"p": str(p), "collides-with": str(seen[q.members])})
        seen[q.members] = p
        image[str(p)] = str(q)
    missing = [str(q) for q in codomain if q.members not in seen]
    if missing:
        failures.append({"not-hit": missing})
    return _finish("prime-correspondence", inst, failures, clock,
                   F_prime=sorted(str(J) for J in Fprime), bijection=image)


# ---------------------------------------------------------------------------
# classical localization


def classical_vs_gabriel(S: MultSet, M: FiniteModule | None = None,
                         spec: str | None = None) -> TheoremReport:
    """Compare ``S^{-1}M`` with ``M_F`` for the system of ideals meeting ``S``."""
    clock = _Stopwatch()
    R = S.ring
    ring_case = M is None
    if M is None:
        M = regular_module(R)
    F = meets_system(S)
    G = gabriel(F)
    inst = _instance(R, F, mult_set=str(S), module=M.label)
    if spec:
        inst["ring"] = spec
    failures: list[dict] = []
    C = classical_localization(S, M)
    L = G.module(M)
    phi = G.universal_map(identity_hom(M), C.pi)
    if compose(phi, C.pi).images != L.j_map.images:
        failures.append({"j_M != phi o pi": True})
    if not phi.is_bijective():
        failures.append({"phi": "not bijective", "orders": [C.module.size, L.size]})
    cands = G.universal_candidates(identity_hom(M), C.pi)
    if len(cands) != 1:
        failures.append({"phi-candidates": len(cands)})
    # the dual route: [f] -> m/s with f(s) = m + F(M), s in I0 ∩ S
    I0 = G.I0
    s = next((x for x in I0.elements if x in S.members), None)
    if s is None:
        failures.append({"I0-misses-S": str(I0)})
    else:
        lam = []
        for z in L.module.elements:
            m = L.lift[L.value(z, s)]
            lam.append(C.fraction(m, s))
        lam_hom = ModuleHom(L.module, C.module, tuple(lam))
        if compose(lam_hom, phi).images != identity_hom(C.module).images:
            failures.append({"lambda o phi != id": lam})
    if ring_case:
        ring, pi_ring, _ = classical_ring_localization(S)
        V = G.ring.ring_view
        bad = [(a, b) for a in ring.elements for b in ring.elements
               if phi.images[ring.mul[a][b]] != V.mul[phi.images[a]][phi.images[b]]]
        if bad:
            failures.append({"phi-not-multiplicative": list(bad[0])})
        if phi.images[ring.one] != V.one:
            failures.append({"phi-not-unital": True})
        if pi_ring.then(RingMap(ring, V, phi.images)).images != G.ring.j_ring.images:
            failures.append({"j_R != phi o pi": True})
    return _finish("classical-vs-gabriel", inst, failures, clock,
                   order=L.size, phi=list(phi.images))


# ---------------------------------------------------------------------------
# systems


def _check_idempotency_two_ways(F: TopologizingSystem) -> list[dict]:
    FF = product_system(F, F)
    if (FF.members == F.members) != F.is_idempotent:
        return [{"system": fmt_system(F), "F.F": fmt_system(FF), "criterion": F.is_idempotent}]
    return []


def _check_product_laws(systems: list[TopologizingSystem], mods: list[FiniteModule],
                        rng: random.Random, triples: int) -> list[dict]:
    out = []
    prods: dict[tuple[int, int], TopologizingSystem] = {}

    def prod(i: int, j: int) -> TopologizingSystem:
        if (i, j) not in prods:
            prods[(i, j)] = product_system(systems[i], systems[j])
        return prods[(i, j)]

    idx = range(len(systems))
    all_triples = [(a, b, c) for a in idx for b in idx for c in idx]
    for a, b, c in _sample(rng, all_triples, triples):
        left = product_system(prod(a, b), systems[c])
        right = product_system(systems[a], prod(b, c))
        if left.members != right.members:
            out.append({"associativity": [fmt_system(systems[k]) for k in (a, b, c)]})
    for a, b in _sample(rng, [(a, b) for a in idx for b in idx], 12):
        F, G = systems[a], systems[b]
        FG = prod(a, b)
        if not (F.members <= FG.members and G.members <= FG.members):
            out.append({"product-contains-factors": [fmt_system(F), fmt_system(G)]})
        for M in mods:
            Q, _ = quotient_module(M, torsion_set(F, M))
            if is_negligible(FG, M) != is_negligible(G, Q):
                out.append({"product-negligibility": [fmt_system(F), fmt_system(G)],
                            "module": M.label})
    return out


def _check_negligible_closure(F: TopologizingSystem, mods: list[FiniteModule]) -> list[dict]:
    out = []
    neg = [M for M in mods if is_negligible(F, M)]
    for M in neg:
        for N in enumerate_submodules(M):
            if not is_negligible(F, submodule(M, N)[0]) or not is_negligible(F, quotient_module(M, N)[0]):
                out.append({"module": M.label, "sub": fmt_set(N)})
    for A, B in combinations(neg[:4], 2):
        if A.size * B.size <= MAX_MODULE and not is_negligible(F, direct_sum([A, B]).module):
            out.append({"sum": [A.label, B.label]})
    return out


# ---------------------------------------------------------------------------
# aggregate battery


@dataclass
class BatteryCounts:
    short_exact: int = 0
    bijectivity_maps: int = 0
    pullback_submodules: int = 0
    localizations: int = 0
    colimit_checks: int = 0


LEMMA_IDS = (
    "ker-coker", "vanishing", "closure", "functoriality", "colimit-oracle",
    "left-exactness", "bijectivity", "pullback", "closed-strongly-closed", "hom-bijection",
    "ideal-remarks", "domain", "unit-covering", "induced-system", "system-from-map",
    "universal-map", "sigma-natural", "pairing", "rf-module", "idempotency-two-ways",
    "product-laws", "negligible-closure", "epimorphism-lemma",
)


def lemma_battery(R: FiniteRing, seed: int = 0, spec: str | None = None,
                  counts: BatteryCounts | None = None,
                  sequences: int = 16, maps: int = 16, pairings: int = 6) -> list[TheoremReport]:
    """Run every lemma checker over all idempotent systems and battery modules of ``R``."""
    counts = counts if counts is not None else BatteryCounts()
    label = spec or R.label
    mods = battery_modules(R, seed)
    reports: list[TheoremReport] = []

    def emit(tid: str, F: TopologizingSystem | None, fn: Callable[[], list[dict]], **extra: Any) -> None:
        clock = _Stopwatch()
        inst: dict[str, Any] = {"ring": label}
        if F is not None:
            inst["system"] = fmt_system(F)
        try:
            failures = fn()
        except (LocalizationError, AssertionError, ValueError) as exc:
            failures = [{"exception": f"{type(exc).__name__}: {exc}"}]
        reports.append(_finish(tid, inst, failures, clock, **extra))

    topo = enumerate_topologizing(R)
    systems = [F for F in topo if F.is_idempotent]
    rng = _seeded(seed, "systems", label)
    emit("idempotency-two-ways", None,
         lambda: [f for F in topo for f in _check_idempotency_two_ways(F)], systems=len(topo))
    if R.order <= 12:
        emit("product-laws", None, lambda: _check_product_laws(topo, mods[:6], rng, 60))

    quotients = _quotient_targets(R)
    emit("system-from-map", None,
         lambda: [{"map-kernel": str(phi.kernel())} for phi in quotients
                  if not ring_map_system(phi).is_idempotent])

    for F in systems:
        G = gabriel(F)
        rng = _seeded(seed, label, fmt_system(F))
        cond_iii = condition_iii_witness(F) is None
        counts.localizations += len(mods)

        def per_module(check: Callable[[Gabriel, FiniteModule], list[dict]]) -> list[dict]:
            return [f for M in mods for f in check(G, M)]

        emit("ker-coker", F, lambda: per_module(_check_ker_coker), modules=len(mods))
        emit("vanishing", F, lambda: per_module(_check_vanishing))
        emit("closure", F, lambda: per_module(_check_closure))
        emit("functoriality", F, lambda: per_module(_check_functoriality))
        emit("colimit-oracle", F, lambda: per_module(_check_colimit))
        counts.colimit_checks += len(mods)
        emit("negligible-closure", F, lambda: _check_negligible_closure(F, mods))

        pool = [(M, N) for M in mods for N in enumerate_submodules(M)]
        ses = _sample(rng, pool, sequences)
        counts.short_exact += len(ses)
        emit("left-exactness", F,
             lambda: [f for M, N in ses for f in _check_left_exact(G, M, N)[0]], sampled=len(ses))

        map_pool = [u for M in mods[: max(4, len(mods) // 2)] for u in negligible_maps(F, M)]
        picked = _sample(rng, map_pool, maps)
        counts.bijectivity_maps += len(picked)
        emit("bijectivity", F,
             lambda: [{"map": f"{u.source.label}->{u.target.label}"} for u in picked
                      if not G.hom(u).is_bijective()], sampled=len(picked))

        def pullback() -> list[dict]:
            out = []
            for M in mods:
                counts.pullback_submodules += len(enumerate_submodules(G.module(M).module))
                out += _check_pullback(G, M)
            return out

        emit("pullback", F, pullback)
        emit("closed-strongly-closed", F,
             lambda: [f for M in mods for f in _check_closed_strong(G, M, cond_iii)],
             condition_iii=cond_iii)

        closed = [G.module(M).module for M in mods[:4]]
        emit("hom-bijection", F,
             lambda: [f for A in closed for B in closed for f in _check_hom_bijection(G, A, B)]
             if cond_iii else [])
        emit("ideal-remarks", F, lambda: _check_ideal_remarks(G))
        emit("domain", F, lambda: _check_domain(G))
        emit("unit-covering", F,
             lambda: [f for phi in quotients + [G.ring.j_ring] for f in _check_unit_covering(G, phi)])
        emit("induced-system", F, lambda: [f for phi in quotients for f in _check_induced(G, phi)])

        def universal() -> list[dict]:
            out = []
            for M in _sample(rng, mods, 4):
                L = G.module(M)
                out += _check_universal(G, identity_hom(M), L.j_map)
                out += _check_universal(G, identity_hom(M), identity_hom(M))
                out += _check_universal(G, zero_hom(M, M), L.j_map)
            return out

        emit("universal-map", F, universal)

        def sigma_natural() -> list[dict]:
            out = []
            for M in _sample(rng, mods, 3):
                for u in _sample(rng, negligible_maps(F, M), 2):
                    out += _check_sigma_natural(G, u)
            return out

        emit("sigma-natural", F, sigma_natural)
        emit("pairing", F,
             lambda: [f for M in _sample(rng, mods, 3) for f in _check_pairing(G, rng, M, pairings)])
        emit("rf-module", F, lambda: [f for M in _sample(rng, mods, 3) for f in _check_rf_module(G, M)])
        emit("epimorphism-lemma", F,
             lambda: [] if not cond_iii or is_epimorphism(G.ring.j_ring) else [{"j_R": "not epi"}])
        G.forget()

    reports.sort(key=TheoremReport.sort_key)
    return reports


def full_battery(seed: int = 0, specs: list[str] | None = None,
                 counts: BatteryCounts | None = None) -> list[TheoremReport]:
    """Every checker over every battery ring, in deterministic order."""
    counts = counts if counts is not None else BatteryCounts()
    reports: list[TheoremReport] = []
    for spec in specs or battery_specs():
        reports += ring_reports(spec, seed, counts)
    reports.sort(key=TheoremReport.sort_key)
    return reports


def ring_reports(spec: str, seed: int = 0, counts: BatteryCounts | None = None) -> list[TheoremReport]:
    R = build_ring(spec)
    out = lemma_battery(R, seed, spec, counts)
    out.append(flat_quotient_report(R, spec))
    out.append(classify_epis_report(R, spec))
    for c in classify_epis(R):
        if c.flat_epi:
            out.append(flat_epi_to_localization(quotient_ring(c.ideal)[1], spec))
    for F in enumerate_idempotent(R):
        out.append(localization_to_flat_epi(F, spec))
        out.append(exactness_report(F, seed=seed, spec=spec))
        out.append(prime_correspondence(F, spec))
    if R.order <= 12:
        for S in enumerate_mult_sets(R):
            out.append(classical_vs_gabriel(S, spec=spec))
    return out


__all__ = [
    "TheoremReport", "EpiEvidence", "QuotientClassification", "BatteryCounts",
    "epimorphism_evidence", "is_epimorphism", "is_flat_epi", "as_source_module",
    "flat_epi_to_localization", "localization_to_flat_epi", "condition_iii_witness",
    "annihilator_criterion", "regular_generation", "flat_quotient_report",
    "classify_epis", "classify_epis_report", "exactness_report", "prime_correspondence",
    "classical_vs_gabriel", "lemma_battery", "full_battery", "ring_reports",
    "battery_specs", "battery_rings", "battery_modules", "negligible_maps", "LEMMA_IDS",
]
