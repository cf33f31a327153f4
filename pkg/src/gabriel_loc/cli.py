"""Command-line front end.

Exit codes: 0 every verdict passed, 1 some verdict failed, 2 the input could
not be parsed or violates a precondition, 3 the enumeration budget ran out.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Sequence, TextIO

from .config import DEFAULT_BUDGET, BudgetExceeded, enumeration_budget, record_timings
from .localization import LocalizationError, gabriel
from .modules import FiniteModule, ModuleError, cyclic_quotient, direct_sum, regular_module
from .rings import (
    FiniteRing,
    Ideal,
    RingError,
    RingMap,
    build_ring,
    enumerate_mult_sets,
    enumerate_primes,
    enumerate_ring_maps,
    ideal_generated,
    is_prime,
    minimal_generators,
    mult_closure,
    quotient_ring,
)
from .systems import (
    TopologizingSystem,
    TopologyError,
    all_ideals_system,
    comaximal_system,
    containing_system,
    enumerate_idempotent,
    meets_system,
    primes_avoid_system,
    require_idempotent,
    ring_map_system,
    torsion_set,
    unit_system,
    validate_topologizing,
    vsub_system,
)
from .theorems import (
    BatteryCounts,
    TheoremReport,
    battery_specs,
    classify_epis,
    classify_epis_report,
    flat_epi_to_localization,
    fmt_set,
    fmt_system,
    ring_reports,
)

COMMANDS = ("analyze-ring", "systems", "localize", "classify-epis", "verify")
SYSTEM_ENUMERATION_IDEALS = 8


class SpecError(ValueError):
    """A system or module specification could not be parsed."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    ring_spec: str | None
    system_spec: str | None = None
    module_spec: str | None = None
    output: str = "text"
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    timings: bool = False

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise SpecError(f"unknown command {self.command!r}")
        if self.budget < 1:
            raise SpecError("budget must be >= 1")
        if self.output not in ("text", "json"):
            raise SpecError(f"unknown output mode {self.output!r}")


# ---------------------------------------------------------------------------
# specification grammars


_BRACED = re.compile(r"^\{(.*)\}$", re.S)


def _elements(text: str, R: FiniteRing) -> list[int]:
    body = text.strip()
    m = _BRACED.match(body)
    if m:
        body = m.group(1)
    if not body.strip():
        return []
    try:
        vals = [int(x) for x in body.split(",")]
    except ValueError:
        raise SpecError(f"expected a list of element ids, got {text!r}") from None
    for v in vals:
        if not 0 <= v < R.order:
            raise SpecError(f"element {v} is outside the carrier of {R.label}")
    return vals


def parse_ideal(text: str, R: FiniteRing) -> Ideal:
    """An ideal written as a generator list, e.g. ``{4}`` or ``{0,4,8}``."""
    return ideal_generated(R, _elements(text, R))


def _split_items(text: str) -> list[str]:
    body = text.strip()
    m = _BRACED.match(body)
    if not m:
        raise SpecError(f"expected {{...}}, got {text!r}")
    inner = m.group(1).strip()
    return [s for s in (p.strip() for p in inner.split(";")) if s] if inner else []


def parse_system(text: str, R: FiniteRing) -> TopologizingSystem:
    """Parse the system grammar (see ``--help``)."""
    spec = text.strip()
    kind, _, arg = spec.partition(":")
    if kind == "all" and not arg:
        return all_ideals_system(R)
    if kind == "unit" and not arg:
        return unit_system(R)
    if kind == "meets":
        return meets_system(mult_closure(R, _elements(arg, R)))
    if kind == "comax":
        return comaximal_system(parse_ideal(arg, R))
    if kind == "containing":
        return containing_system(parse_ideal(arg, R))
    if kind == "vsub":
        return vsub_system(parse_ideal(arg, R))
    if kind == "primes-avoid":
        primes = [parse_ideal(p, R) for p in _split_items(arg)]
        for p in primes:
            if not is_prime(p):
                raise SpecError(f"{p} is not a prime ideal of {R.label}")
        return primes_avoid_system(R, primes)
    if kind == "explicit":
        fam = [parse_ideal(p, R) for p in _split_items(arg)]
        if not fam:
            raise SpecError("explicit system needs at least one ideal")
        return validate_topologizing(R, fam)
    if kind == "map":
        return ring_map_system(parse_ring_map(arg, R))
    raise SpecError(f"cannot parse system {text!r}")


def parse_ring_map(text: str, R: FiniteRing) -> RingMap:
    """``<target-ring>:{images}``, or just ``<target-ring>`` when the map is unique."""
    target, images = text, None
    head, sep, tail = text.rpartition(":")
    if sep and tail.strip()[:1] in ("{", "["):
        target, images = head, tail.strip()
    S = build_ring(target.strip())
    if images is None:
        maps = enumerate_ring_maps(R, S)
        if len(maps) != 1:
            raise SpecError(f"{len(maps)} ring maps {R.label} -> {S.label}; give the images")
        return maps[0]
    vals = _elements(images.replace("[", "{").replace("]", "}"), S)
    if len(vals) != R.order:
        raise SpecError(f"need {R.order} images, got {len(vals)}")
    phi = RingMap(R, S, tuple(vals))
    phi.validate()
    return phi


def parse_module(text: str | None, R: FiniteRing) -> FiniteModule:
    """``R``, ``R/{gens}``, or ``+``-separated direct sums of those."""
    if text is None or not text.strip():
        return regular_module(R)
    parts = [p.strip() for p in text.split("+")]
    mods = []
    for p in parts:
        if p == "R":
            mods.append(regular_module(R))
        elif p.startswith("R/"):
            mods.append(cyclic_quotient(R, parse_ideal(p[2:], R))[0])
        else:
            raise SpecError(f"cannot parse module {p!r}")
    if len(mods) == 1:
        return mods[0]
    return direct_sum(mods, label=" + ".join(M.label for M in mods)).module


# ---------------------------------------------------------------------------
# commands


def _analyze(R: FiniteRing, cfg: RunConfig) -> tuple[list[dict], bool]:
    primes = enumerate_primes(R)
    rec = {
        "command": "analyze-ring",
        "ring": cfg.ring_spec,
        "order": R.order,
        "zero_ring": R.is_zero_ring(),
        "units": fmt_set(R.units),
        "ideals": [{"ideal": str(I), "generators": list(minimal_generators(I)),
                    "prime": I in primes} for I in R.ideals],
        "primes": [str(p) for p in primes],
        "inclusions": [[str(I), str(J)] for I, J in combinations(R.ideals, 2)
                       if I.issubset(J)],
    }
    return [rec], True


def standard_systems(R: FiniteRing) -> list[TopologizingSystem]:
    """Idempotent systems from the standard constructions, deduplicated."""
    cands = [unit_system(R), all_ideals_system(R)]
    cands += [meets_system(S) for S in enumerate_mult_sets(R)]
    cands += [comaximal_system(J) for J in R.ideals]
    cands += [vsub_system(J) for J in R.ideals]
    primes = enumerate_primes(R)
    for k in range(len(primes) + 1):
        cands += [primes_avoid_system(R, c) for c in combinations(primes, k)]
    seen: dict[frozenset, TopologizingSystem] = {}
    for F in cands:
        if F.is_idempotent and F.members not in seen:
            seen[F.members] = F
    return sorted(seen.values(), key=lambda F: (len(F), [I.sort_key for I in F.ideals]))


def _systems(R: FiniteRing, cfg: RunConfig) -> tuple[list[dict], bool]:
    exhaustive = len(R.ideals) <= SYSTEM_ENUMERATION_IDEALS
    systems = enumerate_idempotent(R) if exhaustive else standard_systems(R)
    out = []
    for F in systems:
        G = gabriel(F)
        out.append({
            "command": "systems",
            "ring": cfg.ring_spec,
            "method": "exhaustive" if exhaustive else "standard",
            "system": fmt_system(F),
            "minimum": str(F.minimum),
            "localized_order": G.ring.order,
            "torsion": fmt_set(torsion_set(F, regular_module(R))),
        })
    return out, True


def _localize(R: FiniteRing, cfg: RunConfig) -> tuple[list[dict], bool]:
    if cfg.system_spec is None:
        raise SpecError("localize needs --system")
    F = parse_system(cfg.system_spec, R)
    require_idempotent(F)
    M = parse_module(cfg.module_spec, R)
    G = gabriel(F)
    L = G.module(M)
    rec: dict[str, Any] = {
        "command": "localize",
        "ring": cfg.ring_spec,
        "system": fmt_system(F),
        "module": cfg.module_spec or "R",
        "minimum": str(F.minimum),
        "torsion": fmt_set(L.torsion),
        "order": L.size,
        "j": list(L.j_map.images),
        "kernel": fmt_set(L.j_map.kernel_set()),
        "closed": L.j_map.is_bijective(),
    }
    if M is regular_module(R):
        RF = G.ring
        rec["ring_order"] = RF.order
        rec["one"] = RF.one
        rec["mul"] = [list(row) for row in RF.mul]
        rec["units"] = fmt_set(RF.ring_view.units)
    return [rec], True


def _classify(R: FiniteRing, cfg: RunConfig) -> list[TheoremReport]:
    reports = [classify_epis_report(R, cfg.ring_spec)]
    for c in classify_epis(R):
        if c.flat_epi:
            reports.append(flat_epi_to_localization(quotient_ring(c.ideal)[1], cfg.ring_spec))
    return reports


def _verify(cfg: RunConfig) -> list[TheoremReport]:
    specs = [cfg.ring_spec] if cfg.ring_spec else battery_specs()
    counts = BatteryCounts()
    reports: list[TheoremReport] = []
    for spec in specs:
        reports += ring_reports(spec, cfg.seed, counts)
    reports.sort(key=TheoremReport.sort_key)
    return reports


def _emit_records(recs: list[dict], cfg: RunConfig, out: TextIO) -> None:
    for rec in recs:
        if cfg.output == "json":
            out.write(json.dumps(rec, ensure_ascii=False, separators=(",", ":")) + "\n")
            continue
        head = rec.pop("command")
        out.write(f"[{head}]\n")
        for k, v in rec.items():
            if isinstance(v, list) and v and isinstance(v[0], (dict, list)):
                out.write(f"  {k}:\n")
                for item in v:
                    out.write(f"    {json.dumps(item, ensure_ascii=False)}\n")
            else:
                out.write(f"  {k}: {v if not isinstance(v, (list, dict)) else json.dumps(v, ensure_ascii=False)}\n")


def _emit_reports(reports: list[TheoremReport], cfg: RunConfig, out: TextIO) -> None:
    if cfg.output == "json":
        for r in reports:
            out.write(r.to_json() + "\n")
        return
    for r in reports:
        inst = ", ".join(f"{k}={json.dumps(v, ensure_ascii=False)}" for k, v in r.instance.items())
        out.write(f"{r.verdict.upper():4} {r.theorem}  {inst}\n")
        if not r.passed:
            out.write(f"     witness: {json.dumps(r.witness, ensure_ascii=False)}\n")
    passed = sum(r.passed for r in reports)
    out.write(f"{passed}/{len(reports)} reports passed\n")


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        with enumeration_budget(cfg.budget), record_timings(cfg.timings):
            if cfg.command == "verify":
                reports = _verify(cfg)
                _emit_reports(reports, cfg, out)
                return 0 if all(r.passed for r in reports) else 1
            if cfg.ring_spec is None:
                raise SpecError(f"{cfg.command} needs --ring")
            R = build_ring(cfg.ring_spec)
            if cfg.command == "classify-epis":
                reports = _classify(R, cfg)
                _emit_reports(reports, cfg, out)
                return 0 if all(r.passed for r in reports) else 1
            handler = {"analyze-ring": _analyze, "systems": _systems, "localize": _localize}
            recs, ok = handler[cfg.command](R, cfg)
            _emit_records(recs, cfg, out)
            return 0 if ok else 1
    except BudgetExceeded as exc:
        err.write(f"budget exceeded: {exc}\n")
        return 3
    except (SpecError, RingError, ModuleError, TopologyError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except LocalizationError as exc:
        err.write(f"verification failure: {exc}\n")
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gabriel-loc",
        description="Gabriel localization over finite commutative rings.",
        epilog=(
            "rings: Z/n, products 'Z/a x Z/b', table rings '@file.json'. "
            "systems: all | unit | meets:{a,b} | comax:{gens} | containing:{gens} | "
            "vsub:{gens} | primes-avoid:{gens;gens} | explicit:{gens;gens} | "
            "map:<ring>[:{images}]. modules: R | R/{gens} | sums joined by '+'."
        ),
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--ring", dest="ring_spec")
    p.add_argument("--system", dest="system_spec")
    p.add_argument("--module", dest="module_spec")
    p.add_argument("--json", action="store_true", help="emit JSON lines")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="cap on enumerated vectors (default 2^20)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timings", action="store_true",
                   help="record elapsed milliseconds (off by default for reproducible output)")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.ring_spec, args.system_spec, args.module_spec,
                        "json" if args.json else "text", args.budget, args.seed, args.timings)
    except SpecError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
