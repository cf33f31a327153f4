"""Explicit finite modules over a :class:`FiniteRing` and linear algebra on them.

A module is an abelian group table plus an action table ``act[r][x]``.
Hom-sets are computed by choosing a small generating set, enumerating the
images of the generators and keeping the tuples that kill every relation;
tensor products are quotients of a free module built from presentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Callable, Iterable, Sequence

from .config import check_budget
from .rings import FiniteRing, Ideal, MultSet, RingMap, Table


class ModuleError(ValueError):
    pass


class NotSubmodule(ModuleError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteModule:
    ring: FiniteRing
    add: Table
    act: Table
    zero: int = 0
    label: str = ""

    @property
    def size(self) -> int:
        return len(self.add)

    def __len__(self) -> int:
        return len(self.add)

    @property
    def elements(self) -> range:
        return range(len(self.add))

    def __repr__(self) -> str:
        return f"FiniteModule({self.label or '?'}, order {self.size})"

    @cached_property
    def neg(self) -> tuple[int, ...]:
        return tuple(self.add[x].index(self.zero) for x in self.elements)

    def plus(self, x: int, y: int) -> int:
        return self.add[x][y]

    def scale(self, r: int, x: int) -> int:
        return self.act[r][x]

    def sub(self, x: int, y: int) -> int:
        return self.add[x][self.neg[y]]

    def is_zero(self) -> bool:
        return self.size == 1

    def annihilator(self, x: int) -> Ideal:
        R = self.ring
        return Ideal(R, frozenset(r for r in R.elements if self.act[r][x] == self.zero))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return greedy_generators(self)

    @cached_property
    def presentation(self) -> "Presentation":
        return presentation(self)

    def validate(self) -> None:
        """Exhaustive check of the abelian group and action axioms."""
        R, A, X = self.ring, self.add, self.act
        m = self.size
        if len(X) != R.order or any(len(row) != m for row in X):
            raise ModuleError("action table shape")
        for x in self.elements:
            if A[x][self.zero] != x:
                raise ModuleError(f"additive identity fails at {x}")
            if self.zero not in A[x]:
                raise ModuleError(f"no additive inverse for {x}")
            if X[R.one][x] != x:
                raise ModuleError(f"1.x != x at {x}")
            for y in self.elements:
                if A[x][y] != A[y][x]:
                    raise ModuleError(f"addition not commutative at {(x, y)}")
                for z in self.elements:
                    if A[A[x][y]][z] != A[x][A[y][z]]:
                        raise ModuleError(f"addition not associative at {(x, y, z)}")
        for r in R.elements:
            for x in self.elements:
                for y in self.elements:
                    if X[r][A[x][y]] != A[X[r][x]][X[r][y]]:
                        raise ModuleError(f"r(x+y) != rx+ry at {(r, x, y)}")
                for s in R.elements:
                    if X[R.add[r][s]][x] != A[X[r][x]][X[s][x]]:
                        raise ModuleError(f"(r+s)x != rx+sx at {(r, s, x)}")
                    if X[R.mul[r][s]][x] != X[r][X[s][x]]:
                        raise ModuleError(f"(rs)x != r(sx) at {(r, s, x)}")


@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: FiniteModule
    target: FiniteModule
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __repr__(self) -> str:
        return f"ModuleHom({self.source.label} -> {self.target.label}: {list(self.images)})"

    def same_as(self, other: "ModuleHom") -> bool:
        return (self.source is other.source and self.target is other.target
                and self.images == other.images)

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.size

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.size

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def is_zero(self) -> bool:
        return all(y == self.target.zero for y in self.images)

    def kernel_set(self) -> frozenset[int]:
        z = self.target.zero
        return frozenset(x for x, y in enumerate(self.images) if y == z)

    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)

    def inverse(self) -> "ModuleHom":
        if not self.is_bijective():
            raise ModuleError("map is not bijective")
        inv = [0] * self.target.size
        for x, y in enumerate(self.images):
            inv[y] = x
        return ModuleHom(self.target, self.source, tuple(inv))

    def validate(self) -> None:
        M, N, f = self.source, self.target, self.images
        if len(f) != M.size:
            raise ModuleError("hom is not total")
        for x in M.elements:
            for y in M.elements:
                if f[M.add[x][y]] != N.add[f[x]][f[y]]:
                    raise ModuleError(f"not additive at {(x, y)}")
            for r in M.ring.elements:
                if f[M.act[r][x]] != N.act[r][f[x]]:
                    raise ModuleError(f"not equivariant at {(r, x)}")


def compose(g: ModuleHom, f: ModuleHom) -> ModuleHom:
    """``g ∘ f``."""
    if f.target is not g.source:
        raise ModuleError("composition of non-composable maps")
    return ModuleHom(f.source, g.target, tuple(g.images[y] for y in f.images))


def identity_hom(M: FiniteModule) -> ModuleHom:
    return ModuleHom(M, M, tuple(M.elements))


def zero_hom(M: FiniteModule, N: FiniteModule) -> ModuleHom:
    return ModuleHom(M, N, (N.zero,) * M.size)


def hom_sum(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    N = f.target
    return ModuleHom(f.source, N, tuple(N.add[a][b] for a, b in zip(f.images, g.images)))


# ---------------------------------------------------------------------------
# submodules and constructions


def span(M: FiniteModule, gens: Iterable[int]) -> frozenset[int]:
    """Submodule generated by ``gens``."""
    atoms = {M.act[r][g] for g in gens for r in M.ring.elements}
    atoms.discard(M.zero)
    group = {M.zero}
    frontier = [M.zero]
    add = M.add
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


def submodule_sum(M: FiniteModule, A: frozenset[int], B: frozenset[int]) -> frozenset[int]:
    add = M.add
    return frozenset(add[a][b] for a in A for b in B)


def is_submodule(M: FiniteModule, subset: Iterable[int]) -> bool:
    S = frozenset(subset)
    if M.zero not in S:
        return False
    return (all(M.add[a][b] in S for a in S for b in S)
            and all(M.act[r][a] in S for r in M.ring.elements for a in S))


def enumerate_submodules(M: FiniteModule) -> list[frozenset[int]]:
    """All submodules, by closing the cyclic ones under sums."""
    found = {span(M, [x]) for x in M.elements}
    frontier = list(found)
    while frontier:
        nxt = []
        for A in frontier:
            for B in list(found):
                if A <= B or B <= A:
                    continue
                S = submodule_sum(M, A, B)
                if S not in found:
                    found.add(S)
                    nxt.append(S)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def submodule(M: FiniteModule, subset: Iterable[int], label: str = "") -> tuple[FiniteModule, ModuleHom]:
    """The submodule on ``subset`` (ids in increasing order) with its inclusion."""
    S = frozenset(subset)
    if not is_submodule(M, S):
        raise NotSubmodule(f"{sorted(S)} is not a submodule of {M.label}")
    els = sorted(S)
    idx = {x: i for i, x in enumerate(els)}
    add = tuple(tuple(idx[M.add[a][b]] for b in els) for a in els)
    act = tuple(tuple(idx[M.act[r][a]] for a in els) for r in M.ring.elements)
    sub = FiniteModule(M.ring, add, act, idx[M.zero], label or f"sub({M.label})")
    return sub, ModuleHom(sub, M, tuple(els))


def quotient_module(M: FiniteModule, N: Iterable[int], label: str = "") -> tuple[FiniteModule, ModuleHom]:
    """``M/N`` on least coset representatives, with the projection."""
    Nset = frozenset(N)
    if not is_submodule(M, Nset):
        raise NotSubmodule(f"{sorted(Nset)} is not a submodule of {M.label}")
    cls = [-1] * M.size
    reps: list[int] = []
    for x in M.elements:
        if cls[x] < 0:
            k = len(reps)
            reps.append(x)
            row = M.add[x]
            for a in Nset:
                cls[row[a]] = k
    add = tuple(tuple(cls[M.add[a][b]] for b in reps) for a in reps)
    act = tuple(tuple(cls[M.act[r][a]] for a in reps) for r in M.ring.elements)
    Q = FiniteModule(M.ring, add, act, cls[M.zero], label or f"{M.label}/N")
    return Q, ModuleHom(M, Q, tuple(cls))


def section(proj: ModuleHom) -> list[int]:
    """Least preimage of each target element (the projection must be onto)."""
    out = [-1] * proj.target.size
    for x, y in enumerate(proj.images):
        if out[y] < 0:
            out[y] = x
    return out


@lru_cache(maxsize=None)
def regular_module(R: FiniteRing) -> FiniteModule:
    return FiniteModule(R, R.add, R.mul, R.zero, R.label or "R")


@lru_cache(maxsize=None)
def module_from_ideal(I: Ideal) -> tuple[FiniteModule, ModuleHom]:
    """``I`` as a module; element ``k`` is the ``k``-th smallest member."""
    return submodule(regular_module(I.ring), I.members, label=f"{I}")


def cyclic_quotient(R: FiniteRing, I: Ideal) -> tuple[FiniteModule, ModuleHom]:
    return quotient_module(regular_module(R), I.members, label=f"R/{I}")


def zero_module(R: FiniteRing) -> FiniteModule:
    return FiniteModule(R, ((0,),), tuple((0,) for _ in R.elements), 0, "0")


@dataclass(frozen=True, eq=False)
class DirectSum:
    parts: tuple[FiniteModule, ...]
    module: FiniteModule
    injections: tuple[ModuleHom, ...]
    projections: tuple[ModuleHom, ...]

    def encode(self, xs: Sequence[int]) -> int:
        v = 0
        for x, M in zip(xs, self.parts):
            v = v * M.size + x
        return v

    def decode(self, v: int) -> tuple[int, ...]:
        out = []
        for M in reversed(self.parts):
            v, x = divmod(v, M.size)
            out.append(x)
        return tuple(reversed(out))


def direct_sum(Ms: Sequence[FiniteModule], label: str = "") -> DirectSum:
    if not Ms:
        raise ModuleError("direct sum of no modules")
    R = Ms[0].ring
    if any(M.ring is not R for M in Ms):
        raise ModuleError("direct sum over different rings")
    parts = tuple(Ms)
    tuples = list(product(*(M.elements for M in parts)))

    def enc(xs: Sequence[int]) -> int:
        v = 0
        for x, M in zip(xs, parts):
            v = v * M.size + x
        return v

    add = tuple(
        tuple(enc([M.add[a][b] for M, a, b in zip(parts, xs, ys)]) for ys in tuples)
        for xs in tuples
    )
    act = tuple(
        tuple(enc([M.act[r][a] for M, a in zip(parts, xs)]) for xs in tuples)
        for r in R.elements
    )
    zero = enc([M.zero for M in parts])
    S = FiniteModule(R, add, act, zero, label or " + ".join(M.label for M in parts))
    inj, proj = [], []
    for i, M in enumerate(parts):
        base = [P.zero for P in parts]
        imgs = []
        for x in M.elements:
            base[i] = x
            imgs.append(enc(base))
        inj.append(ModuleHom(M, S, tuple(imgs)))
        proj.append(ModuleHom(S, M, tuple(xs[i] for xs in tuples)))
    return DirectSum(parts, S, tuple(inj), tuple(proj))


def restrict_scalars(phi: RingMap, M: FiniteModule) -> FiniteModule:
    """View an ``S``-module as an ``R``-module along ``phi: R -> S``."""
    if M.ring is not phi.target:
        raise ModuleError("module is not over the target of the ring map")
    act = tuple(M.act[phi.images[r]] for r in phi.source.elements)
    return FiniteModule(phi.source, M.add, act, M.zero, M.label)


# ---------------------------------------------------------------------------
# kernels, images, cokernels


def kernel(f: ModuleHom) -> tuple[FiniteModule, ModuleHom]:
    return submodule(f.source, f.kernel_set(), label="ker")


def image(f: ModuleHom) -> tuple[FiniteModule, ModuleHom]:
    return submodule(f.target, f.image_set(), label="im")


def cokernel(f: ModuleHom) -> tuple[FiniteModule, ModuleHom]:
    return quotient_module(f.target, f.image_set(), label="coker")


def is_exact_at(f: ModuleHom, g: ModuleHom) -> bool:
    """``im f == ker g`` for ``A --f--> B --g--> C``."""
    return f.target is g.source and f.image_set() == g.kernel_set()


@dataclass(frozen=True, eq=False)
class ExactSequenceWitness:
    maps: tuple[ModuleHom, ...]
    positions: tuple[int, ...]

    def failures(self) -> list[int]:
        """Positions ``i`` where ``im maps[i] != ker maps[i+1]``."""
        return [i for i in self.positions if not is_exact_at(self.maps[i], self.maps[i + 1])]


# ---------------------------------------------------------------------------
# generators, presentations, Hom


def greedy_generators(M: FiniteModule) -> tuple[int, ...]:
    """Repeatedly add the element that generates the largest new submodule."""
    gens: list[int] = []
    current = span(M, ())
    while len(current) < M.size:
        best, best_span = -1, frozenset()
        for x in M.elements:
            if x in current:
                continue
            s = submodule_sum(M, current, span(M, [x]))
            if len(s) > len(best_span):
                best, best_span = x, s
                if len(s) == M.size:
                    break
        gens.append(best)
        current = best_span
    return tuple(gens)


def _vadd(R: FiniteRing, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(R.add[a][b] for a, b in zip(u, v))


def _vscale(R: FiniteRing, r: int, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(R.mul[r][a] for a in v)


def vector_span(R: FiniteRing, vecs: Iterable[Sequence[int]], dim: int) -> frozenset[tuple[int, ...]]:
    """Submodule of ``R^dim`` generated by ``vecs``."""
    zero = (R.zero,) * dim
    atoms = {_vscale(R, r, v) for v in vecs for r in R.elements}
    atoms.discard(zero)
    group = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for a in atoms:
                y = _vadd(R, x, a)
                if y not in group:
                    group.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(group)


@dataclass(frozen=True, eq=False)
class Presentation:
    module: FiniteModule
    generators: tuple[int, ...]
    relations: tuple[tuple[int, ...], ...]
    coords: tuple[tuple[int, ...], ...]
    kernel: frozenset[tuple[int, ...]] = field(repr=False)

    def evaluate(self, coeffs: Sequence[int]) -> int:
        M = self.module
        x = M.zero
        for c, g in zip(coeffs, self.generators):
            x = M.add[x][M.act[c][g]]
        return x


def presentation(M: FiniteModule) -> Presentation:
    """Generators (greedy) and a generating set of the full syzygy module.

    The syzygies are found by evaluating every coefficient vector in
    ``R^k``; raises :class:`BudgetExceeded` if ``|R|^k`` is over budget.
    """
    R = M.ring
    gens = M.generators
    k = len(gens)
    check_budget(f"presentation of {M.label} ({k} generators)", R.order**k)
    coords: list[tuple[int, ...] | None] = [None] * M.size
    kern = set()
    for c in product(R.elements, repeat=k):
        x = M.zero
        for ci, g in zip(c, gens):
            x = M.add[x][M.act[ci][g]]
        if coords[x] is None:
            coords[x] = c
        if x == M.zero:
            kern.add(c)
    rels: list[tuple[int, ...]] = []
    spanned = vector_span(R, (), k)
    for v in sorted(kern):
        if v not in spanned:
            rels.append(v)
            spanned = vector_span(R, rels, k)
    return Presentation(M, gens, tuple(rels), tuple(coords), frozenset(kern))  # type: ignore[arg-type]


def hom_set(M: FiniteModule, N: FiniteModule) -> list[ModuleHom]:
    """Every ``R``-linear map ``M -> N`` in a deterministic order."""
    if M.ring is not N.ring:
        raise ModuleError("Hom between modules over different rings")
    P = M.presentation
    R = M.ring
    candidates = []
    for g in P.generators:
        ann = [r for r in R.elements if M.act[r][g] == M.zero]
        candidates.append([y for y in N.elements if all(N.act[r][y] == N.zero for r in ann)])
    out = []
    for ys in product(*candidates):
        ok = True
        for rho in P.relations:
            acc = N.zero
            for c, y in zip(rho, ys):
                acc = N.add[acc][N.act[c][y]]
            if acc != N.zero:
                ok = False
                break
        if not ok:
            continue
        imgs = []
        for coeffs in P.coords:
            acc = N.zero
            for c, y in zip(coeffs, ys):
                acc = N.add[acc][N.act[c][y]]
            imgs.append(acc)
        out.append(ModuleHom(M, N, tuple(imgs)))
    return out


@dataclass(frozen=True, eq=False)
class HomModule:
    """``Hom_R(M, N)`` as an ``R``-module under pointwise operations."""

    source: FiniteModule
    target: FiniteModule
    homs: tuple[ModuleHom, ...]
    module: FiniteModule
    index: dict[tuple[int, ...], int] = field(repr=False)

    def key(self, images: Sequence[int]) -> tuple[int, ...]:
        return tuple(images[g] for g in self.source.generators)

    def id_of(self, images: Sequence[int]) -> int:
        return self.index[self.key(images)]


def hom_module(M: FiniteModule, N: FiniteModule, label: str = "") -> HomModule:
    homs = hom_set(M, N)
    gens = M.generators
    keys = [tuple(f.images[g] for g in gens) for f in homs]
    index = {k: i for i, k in enumerate(keys)}
    add = tuple(
        tuple(index[tuple(N.add[a][b] for a, b in zip(ka, kb))] for kb in keys)
        for ka in keys
    )
    act = tuple(
        tuple(index[tuple(N.act[r][a] for a in ka)] for ka in keys)
        for r in M.ring.elements
    )
    zero = index[tuple(N.zero for _ in gens)]
    H = FiniteModule(M.ring, add, act, zero, label or f"Hom({M.label},{N.label})")
    return HomModule(M, N, tuple(homs), H, index)


def find_module_isomorphism(M: FiniteModule, N: FiniteModule) -> ModuleHom | None:
    if M.size != N.size:
        return None
    for f in hom_set(M, N):
        if f.is_bijective():
            return f
    return None


# ---------------------------------------------------------------------------
# tensor products


@dataclass(frozen=True, eq=False)
class TensorProduct:
    left: FiniteModule
    right: FiniteModule
    module: FiniteModule
    pure: tuple[tuple[int, ...], ...]
    reps: tuple[tuple[int, ...], ...]
    relations: tuple[tuple[int, ...], ...]

    def pure_tensor(self, m: int, n: int) -> int:
        return self.pure[m][n]

    def induced(self, beta: Callable[[int, int], int], target: FiniteModule) -> ModuleHom:
        """The linear map ``m ⊗ n -> beta(m, n)`` for a bilinear ``beta``.

        Raises :class:`ModuleError` when ``beta`` does not kill the relations,
        i.e. it is not balanced on the chosen presentations.
        """
        gl = self.left.generators
        gr = self.right.generators
        basis = [beta(g, h) for g in gl for h in gr]

        def ev(vec: Sequence[int]) -> int:
            acc = target.zero
            for c, b in zip(vec, basis):
                acc = target.add[acc][target.act[c][b]]
            return acc

        for rel in self.relations:
            if ev(rel) != target.zero:
                raise ModuleError("map is not balanced over the tensor relations")
        return ModuleHom(self.module, target, tuple(ev(v) for v in self.reps))


def tensor(M: FiniteModule, N: FiniteModule) -> TensorProduct:
    """``M ⊗_R N`` as a quotient of the free module on generator pairs."""
    if M.ring is not N.ring:
        raise ModuleError("tensor over different rings")
    R = M.ring
    PM, PN = M.presentation, N.presentation
    k, l = len(PM.generators), len(PN.generators)
    dim = k * l
    check_budget(f"tensor {M.label} ⊗ {N.label} (rank {dim})", R.order**dim)
    rels = []
    for rho in PM.relations:
        for j in range(l):
            v = [R.zero] * dim
            for i in range(k):
                v[i * l + j] = rho[i]
            rels.append(tuple(v))
    for sig in PN.relations:
        for i in range(k):
            v = [R.zero] * dim
            for j in range(l):
                v[i * l + j] = sig[j]
            rels.append(tuple(v))
    U = vector_span(R, rels, dim)
    cls: dict[tuple[int, ...], int] = {}
    reps: list[tuple[int, ...]] = []
    for x in product(R.elements, repeat=dim):
        if x in cls:
            continue
        c = len(reps)
        reps.append(x)
        for u in U:
            cls[_vadd(R, x, u)] = c
    add = tuple(tuple(cls[_vadd(R, a, b)] for b in reps) for a in reps)
    act = tuple(tuple(cls[_vscale(R, r, a)] for a in reps) for r in R.elements)
    T = FiniteModule(R, add, act, cls[(R.zero,) * dim], f"{M.label}⊗{N.label}")
    pure = tuple(
        tuple(
            cls[tuple(R.mul[a][b] for a in PM.coords[m] for b in PN.coords[n])]
            for n in N.elements
        )
        for m in M.elements
    )
    return TensorProduct(M, N, T, pure, tuple(reps), tuple(rels))


def tensor_map(f: ModuleHom, g: ModuleHom, T1: TensorProduct, T2: TensorProduct) -> ModuleHom:
    """``f ⊗ g : T1 -> T2``."""
    return T1.induced(lambda m, n: T2.pure[f.images[m]][g.images[n]], T2.module)


def flatness_witness(M: FiniteModule) -> Ideal | None:
    """First ideal ``J`` with ``J ⊗ M -> M`` not injective, or ``None``."""
    for J in M.ring.ideals:
        Jmod, _ = module_from_ideal(J)
        T = tensor(Jmod, M)
        els = J.elements
        mult = T.induced(lambda a, x: M.act[els[a]][x], M)
        if not mult.is_injective():
            return J
    return None


def is_flat(M: FiniteModule) -> bool:
    """Ideal-embedding test: every ``J ⊗ M -> M`` is injective."""
    return flatness_witness(M) is None


# ---------------------------------------------------------------------------
# classical localization


@dataclass(frozen=True, eq=False)
class ClassicalLocalization:
    mult_set: MultSet
    source: FiniteModule
    module: FiniteModule
    pi: ModuleHom
    reps: tuple[tuple[int, int], ...]
    class_of: dict[tuple[int, int], int] = field(repr=False)

    def fraction(self, m: int, s: int) -> int:
        return self.class_of[(m, s)]


def classical_localization(S: MultSet, M: FiniteModule) -> ClassicalLocalization:
    """``S^{-1} M`` on pairs ``(m, s)`` modulo ``t(s'm - sm') = 0``."""
    R = M.ring
    if S.ring is not R:
        raise ModuleError("multiplicative set over a different ring")
    svals = S.elements
    pairs = [(m, s) for m in M.elements for s in svals]

    def equiv(p: tuple[int, int], q: tuple[int, int]) -> bool:
        (m, s), (m2, s2) = p, q
        d = M.sub(M.act[s2][m], M.act[s][m2])
        return any(M.act[t][d] == M.zero for t in svals)

    class_of: dict[tuple[int, int], int] = {}
    reps: list[tuple[int, int]] = []
    for p in pairs:
        if p in class_of:
            continue
        c = len(reps)
        reps.append(p)
        for q in pairs:
            if q not in class_of and equiv(p, q):
                class_of[q] = c
    add = tuple(
        tuple(class_of[(M.add[M.act[s2][m]][M.act[s][m2]], R.mul[s][s2])] for (m2, s2) in reps)
        for (m, s) in reps
    )
    act = tuple(tuple(class_of[(M.act[r][m], s)] for (m, s) in reps) for r in R.elements)
    L = FiniteModule(R, add, act, class_of[(M.zero, R.one)], f"S^-1 {M.label}")
    pi = ModuleHom(M, L, tuple(class_of[(m, R.one)] for m in M.elements))
    return ClassicalLocalization(S, M, L, pi, tuple(reps), class_of)


def classical_ring_localization(S: MultSet) -> tuple[FiniteRing, RingMap, ClassicalLocalization]:
    """``S^{-1} R`` with its ring structure ``(r,s)(r',s') = (rr', ss')``."""
    R = S.ring
    loc = classical_localization(S, regular_module(R))
    mul = tuple(
        tuple(loc.class_of[(R.mul[r][r2], R.mul[s][s2])] for (r2, s2) in loc.reps)
        for (r, s) in loc.reps
    )
    ring = FiniteRing(loc.module.add, mul, loc.module.zero, loc.class_of[(R.one, R.one)],
                      f"S^-1 {R.label}")
    return ring, RingMap(R, ring, loc.pi.images), loc
