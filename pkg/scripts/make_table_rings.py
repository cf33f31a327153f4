"""Regenerate the bundled table rings in src/gabriel_loc/data/.

Each ring is a quotient of a polynomial ring, written as coefficient vectors
over a small base with an explicit product rule.
"""

from __future__ import annotations

import json
from itertools import product
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "gabriel_loc" / "data"


def tabulate(label, moduli, mul):
    """Tables for the ring whose elements are vectors with entries mod ``moduli``."""
    els = list(product(*[range(m) for m in moduli]))
    idx = {e: i for i, e in enumerate(els)}

    def norm(v):
        return tuple(c % m for c, m in zip(v, moduli))

    add = [[idx[norm(tuple(a + b for a, b in zip(u, v)))] for v in els] for u in els]
    mult = [[idx[norm(mul(u, v))] for v in els] for u in els]
    one = idx[norm((1,) + (0,) * (len(moduli) - 1))]
    return {"order": len(els), "add": add, "mul": mult,
            "zero": idx[(0,) * len(moduli)], "one": one, "label": label}


def f4(u, v):
    # F2[x]/(x^2+x+1)
    a, b = u
    c, d = v
    return (a * c + b * d, a * d + b * c + b * d)


def f2_xy_sq(u, v):
    # F2[x,y]/(x,y)^2, basis 1, x, y
    a, b, c = u
    d, e, f = v
    return (a * d, a * e + b * d, a * f + c * d)


def z4_x(u, v):
    # Z/4[x]/(2x, x^2), basis 1 (mod 4), x (mod 2)
    a, b = u
    c, d = v
    return (a * c, a * d + b * c)


def f2_x2_y2(u, v):
    # F2[x,y]/(x^2, y^2), basis 1, x, y, xy
    a, b, c, d = u
    e, f, g, h = v
    return (a * e, a * f + b * e, a * g + c * e, a * h + d * e + b * g + c * f)


RINGS = {
    "f4.json": tabulate("F4", (2, 2), f4),
    "f2xy_m2.json": tabulate("F2[x,y]/(x,y)^2", (2, 2, 2), f2_xy_sq),
    "z4x.json": tabulate("Z/4[x]/(2x,x^2)", (4, 2), z4_x),
    "f2x2y2.json": tabulate("F2[x,y]/(x^2,y^2)", (2, 2, 2, 2), f2_x2_y2),
}


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for name, data in RINGS.items():
        (OUT / name).write_text(json.dumps(data, separators=(",", ":")) + "\n")
        print(name, data["order"])
