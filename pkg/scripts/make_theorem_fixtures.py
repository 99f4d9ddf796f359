"""Regenerate ``weylcone/data/theorem_fixtures.json`` from the decimal oracle.

Run from the repository root: ``python3 scripts/make_theorem_fixtures.py``.
The package is not imported; regime realization is recomputed here.
"""

import json
import math
import sys
from decimal import Decimal
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))
from oracles import SIGMA, lattice, odd_tail, truncated_pmf  # noqa: E402

N_LADDER = [1000, 10000, 20000]
JMAX = 160
VARIANT = "A"

GRID = [
    {"kind": "face-ratio", "x": 2.0, "k_mode": "sublinear"},
    {"kind": "face-ratio", "x": 2.0, "k_mode": "linear", "alpha": 0.5},
    {"kind": "face-ratio", "x": 2.0, "k_mode": "near-n", "c": 0.5},
    {"kind": "face-ratio", "x": 0.5, "k_mode": "near-n", "c": 0.8},
    {"kind": "face-ratio", "x": 0.5, "k_mode": "near-n", "c": 0.2},
    {"kind": "face-ratio", "x": 0.5, "k_mode": "critical", "alpha": 0.0},
    {"kind": "face-ldp", "x": 2.0, "c": 0.5},
    {"kind": "face-ldp", "x": 0.5, "c": 0.8},
    {"kind": "face-ldp", "x": 0.5, "c": 0.2},
    {"kind": "iv-ldp", "x": 0.5, "y": 1.0},
    {"kind": "iv-ldp", "x": 2.0, "y": 4.0},
    {"kind": "quermass-fixed-k", "x": 0.5, "k": 2},
    {"kind": "quermass-fixed-k", "x": 2.0, "k": 2},
    {"kind": "stat-dim", "x": 0.5},
    {"kind": "stat-dim", "x": 2.0},
]

_cache = {}


def dist(n):
    if n not in _cache:
        _cache[n] = truncated_pmf(n, VARIANT, JMAX)
    return _cache[n]


def realize(p, n):
    s = float(SIGMA[VARIANT])
    d = lattice(n, VARIANT, p["x"])
    kind = p["kind"]
    k = None
    if kind == "face-ratio":
        mode = p["k_mode"]
        if mode == "sublinear":
            k = round(n**0.5)
        elif mode == "linear":
            k = round(p["alpha"] * n)
        elif mode == "near-n":
            k = n - round(n ** p["c"])
        else:
            k = n - round(math.exp((n - d - p["alpha"] * math.sqrt(p["x"] * s * math.log(n))) / s))
    elif kind == "face-ldp":
        k = n - round(n ** p["c"])
    elif kind == "iv-ldp":
        k = n - round(p["y"] * s * math.log(n))
    elif kind == "quermass-fixed-k":
        k = p["k"]
    if k is not None:
        assert 0 <= k <= d - 1, (p, n, d, k)
    return d, k


def finite(p, n):
    d, k = realize(p, n)
    kind = p["kind"]
    pn = dist(n)
    den = odd_tail(pn, n - d)
    if kind in ("face-ratio", "face-ldp"):
        r = odd_tail(dist(n - k), n - d) / den
        v = r if kind == "face-ratio" else r.ln() / Decimal(n).ln()
    elif kind == "iv-ldp":
        v = (pn[n - k] / (2 * den)).ln() / Decimal(n).ln()
    elif kind == "quermass-fixed-k":
        v = odd_tail(pn, n - d + k) / den
    else:
        m = n - d
        v = sum(((j - m) * pn[j] for j in range(m + 1, JMAX + 1)), Decimal(0)) / (2 * den)
    return d, k, float(v)


def main():
    out = {"variant": VARIANT, "n_ladder": N_LADDER, "regimes": []}
    for p in GRID:
        rows = []
        for n in N_LADDER:
            d, k, v = finite(p, n)
            rows.append({"n": n, "d": d, "k": k, "finite_value": v})
            print(p, n, d, k, v, flush=True)
        out["regimes"].append({"params": p, "rows": rows})
    target = ROOT / "src" / "weylcone" / "data" / "theorem_fixtures.json"
    target.write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
