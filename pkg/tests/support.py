"""Brute-force oracles and small helpers shared by the test modules.

Nothing here calls the library's own enumeration code; each oracle works
straight from the addition and multiplication tables.
"""

from __future__ import annotations

from itertools import combinations

from gabriel_loc.modules import FiniteModule
from gabriel_loc.rings import FiniteRing, Ideal, ideal_generated, lookup_ideal


def ideal(R: FiniteRing, *gens: int) -> Ideal:
    return ideal_generated(R, gens)


# ---------------------------------------------------------------------------
# ring oracles


def _is_ideal_set(R: FiniteRing, s: frozenset[int]) -> bool:
    if R.zero not in s:
        return False
    for a in s:
        for b in s:
            if R.add[a][b] not in s:
                return False
        for r in R.elements:
            if R.mul[r][a] not in s:
                return False
    return True


def subset_ideals(R: FiniteRing) -> set[frozenset[int]]:
    """Every subset of the carrier that is an ideal; exponential, keep R small."""
    elems = list(R.elements)
    out = set()
    for k in range(len(elems) + 1):
        for combo in combinations(elems, k):
            s = frozenset(combo)
            if _is_ideal_set(R, s):
                out.add(s)
    return out


def scan_primes(R: FiniteRing, ideals) -> set[frozenset[int]]:
    """Proper ideals whose complement is closed under multiplication."""
    full = frozenset(R.elements)
    out = set()
    for s in ideals:
        s = frozenset(s)
        if s == full:
            continue
        if all(R.mul[a][b] not in s for a in full - s for b in full - s):
            out.add(s)
    return out


def colon_scan(R: FiniteRing, J: frozenset[int], a: int) -> frozenset[int]:
    return frozenset(r for r in R.elements if R.mul[r][a] in J)


def annihilator_scan(R: FiniteRing, a: int) -> frozenset[int]:
    return colon_scan(R, frozenset({R.zero}), a)


def quotient_flat_by_annihilators(J: Ideal) -> bool:
    """``R/J`` is flat iff every ``a`` in ``J`` has ``Ann(a) + J = R``."""
    R = J.ring
    for a in J.members:
        ann = lookup_ideal(R, annihilator_scan(R, a))
        total = {R.add[x][y] for x in ann.members for y in J.members}
        if len(total) != R.order:
            return False
    return True


def factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def crt_localized_order(n: int, S: frozenset[int]) -> int:
    """``|S^{-1} Z/n|``: keep the ``p^k`` factor iff no member of ``S`` is divisible by ``p``."""
    order = 1
    for p, k in factor(n).items():
        if all(s % p for s in S):
            order *= p ** k
    return order


# ---------------------------------------------------------------------------
# module oracles


def setmap_homs(M: FiniteModule, N: FiniteModule) -> set[tuple[int, ...]]:
    """All R-linear maps ``M -> N`` found among raw set maps.

    Depth-first over assignments ``x -> f(x)``; a branch is cut as soon as
    an additivity or scalar constraint among already-assigned points fails,
    and every leaf is re-checked in full, so the result equals filtering
    the complete ``|N|^|M|`` enumeration.
    """
    R = M.ring
    m = M.size
    f: list[int | None] = [None] * m
    found: set[tuple[int, ...]] = set()

    def consistent(x: int) -> bool:
        fx = f[x]
        for y in range(m):
            fy = f[y]
            if fy is None:
                continue
            s = M.add[x][y]
            if f[s] is not None and f[s] != N.add[fx][fy]:
                return False
        for r in R.elements:
            rx = M.act[r][x]
            if f[rx] is not None and f[rx] != N.act[r][fx]:
                return False
        for y in range(m):
            fy = f[y]
            if fy is None:
                continue
            for r in R.elements:
                if M.act[r][y] == x and N.act[r][fy] != fx:
                    return False
        return True

    def go(x: int) -> None:
        if x == m:
            if is_linear(M, N, f):
                found.add(tuple(f))  # type: ignore[arg-type]
            return
        for v in N.elements:
            f[x] = v
            if consistent(x):
                go(x + 1)
        f[x] = None

    go(0)
    return found


def is_linear(M: FiniteModule, N: FiniteModule, images) -> bool:
    R = M.ring
    return (all(images[M.add[x][y]] == N.add[images[x]][images[y]]
                for x in M.elements for y in M.elements)
            and all(images[M.act[r][x]] == N.act[r][images[x]]
                    for r in R.elements for x in M.elements))


def torsion_scan(R: FiniteRing, M: FiniteModule, family) -> frozenset[int]:
    fam = {frozenset(I.members) for I in family}
    return frozenset(
        x for x in M.elements
        if frozenset(r for r in R.elements if M.act[r][x] == M.zero) in fam
    )
