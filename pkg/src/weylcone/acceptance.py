"""Acceptance checks, one function per criterion, each timed against its budget."""

from __future__ import annotations

import io
import json
import math
import time
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable

from weylcone.combinatorics import ConeType, parity_sums, stirling_table
from weylcone.distribution import clt_diagnostics, mgf_ratio, psi_limit
from weylcone.functionals import (
    Cone, expected_face_numbers, expected_intrinsic_volumes, expected_quermassintegrals,
    expected_statistical_dimension,
)
from weylcone.geometry import Distribution, SamplerConfig
from weylcone.limits import (
    KMode, Regime, RegimeSpec, convergence_sweep, iv_law_distance, realize_regime,
)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:>2}. {self.title} ({self.seconds:.1f}s / {self.budget:g}s): {self.detail}"


def _timed(number: int, title: str, budget: float, body: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, detail = body()
    dt = time.perf_counter() - t0
    if dt > budget:
        ok = False
        detail += f"; over time budget"
    return CriterionResult(number, title, ok, detail, dt, budget)


def parity_identity() -> CriterionResult:
    def body():
        bad = []
        for v in ConeType:
            t = stirling_table(v, 300)
            for n in range(2, 301):
                even, odd = parity_sums(t, n)
                half = v.total_mass(n) // 2
                if not even == odd == half:
                    bad.append((v.value, n))
        return not bad, f"{2 * 299} rows checked, mismatches: {bad[:5]}"
    return _timed(1, "Parity identity of Stirling rows", 10, body)


def iv_normalization() -> CriterionResult:
    def body():
        bad = []
        count = 0
        for v in ConeType:
            for cone in Cone:
                for n in range(2, 61):
                    for d in range(1, n):
                        vals = expected_intrinsic_volumes(n, d, v, cone, exact=True).values
                        count += 1
                        if sum(vals) != 1:
                            bad.append((v.value, cone.value, n, d))
        return not bad, f"{count} vectors summed, mismatches: {bad[:5]}"
    return _timed(2, "Intrinsic volumes sum to one", 30, body)


CHAMBER_CASES = [(n, d, "A") for d in (2, 3) for n in range(d, 7)] + \
                [(n, d, "B") for d in (2, 3) for n in range(d, 4)]


def chamber_enumeration() -> CriterionResult:
    from weylcone.arrangement import verify_chamber_count

    def body():
        bad = []
        runs = 0
        for n, d, v in CHAMBER_CASES:
            rep = verify_chamber_count(n, d, v, range(5))
            runs += len(rep.rows)
            bad += [(n, d, v, r.seed, r.distribution.value, r.enumerated, r.expected)
                    for r in rep.rows if not r.match]
        return not bad, f"{runs} enumerations, mismatches: {bad[:5]}"
    return _timed(3, "Enumerated chambers match the count formula", 120, body)


def pinned_values() -> CriterionResult:
    def body():
        got = {
            "E f1(G)": expected_face_numbers(3, 2, "A", Cone.DUAL_WEYL)[1],
            "E Delta(W)": expected_statistical_dimension(3, 2, "A").value,
            "E U1(W)": expected_quermassintegrals(3, 2, "A", Cone.WEYL)[1],
            "E v(G)": expected_intrinsic_volumes(3, 2, "A", Cone.DUAL_WEYL).values,
        }
        want = {
            "E f1(G)": Fraction(2),
            "E Delta(W)": Fraction(5, 6),
            "E U1(W)": Fraction(1, 6),
            "E v(G)": (Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)),
        }
        bad = [k for k in want if got[k] != want[k] or not _is_exact(got[k])]
        return not bad, "all four rational values match" if not bad else f"mismatched: {bad}"
    return _timed(4, "Pinned small exact values", 5, body)


def _is_exact(v) -> bool:
    if isinstance(v, tuple):
        return all(isinstance(x, Fraction) for x in v)
    return isinstance(v, Fraction)


MC_CASES = [(3, 2, "A"), (4, 2, "A"), (5, 3, "A"), (3, 2, "B")]
MC_REPS = 20


def monte_carlo() -> CriterionResult:
    from weylcone.simulation import (
        ConeSource, mc_face_numbers, mc_intrinsic_volumes, mc_quermassintegral,
        mc_statistical_dimension,
    )

    def body():
        tallies = {}
        for n, d, v in MC_CASES:
            iv = expected_intrinsic_volumes(n, d, v, Cone.DUAL_WEYL).values
            f1 = expected_face_numbers(n, d, v, Cone.DUAL_WEYL)[1]
            u1 = expected_quermassintegrals(n, d, v, Cone.WEYL)[1]
            sd = expected_statistical_dimension(n, d, v).value
            for rep in range(MC_REPS):
                cfg = SamplerConfig(d, n, seed=rep)
                est = mc_intrinsic_volumes(cfg, v, 10**5)
                ok = {
                    "iv": all(e.within(x) for e, x in zip(est, iv)),
                    "f1": mc_face_numbers(cfg, v, 1, 10**4).within(f1),
                    "U1": mc_quermassintegral(cfg, v, 1, ConeSource.WEYL_CHAMBER, 10**4).within(u1),
                    "Delta": mc_statistical_dimension(cfg, v, 10**5).within(sd),
                }
                for name, good in ok.items():
                    tallies[(n, d, v, name)] = tallies.get((n, d, v, name), 0) + bool(good)
        worst = min(tallies.values())
        weak = {f"{k[0]},{k[1]},{k[2]}:{k[3]}": c for k, c in tallies.items() if c < MC_REPS - 1}
        return worst >= MC_REPS - 1, f"fewest passing repetitions {worst}/{MC_REPS}; below 19: {weak or 'none'}"
    return _timed(5, "Monte Carlo estimates agree with exact values", 600, body)


def mod_poisson() -> CriterionResult:
    def body():
        errs = []
        for v in ConeType:
            for z in (-0.5, 0.5, math.log(2)):
                errs.append(abs(mgf_ratio(10**5, z, v) - psi_limit(z, v)))
        return max(errs) <= 1e-4, f"largest error {max(errs):.2e}"
    return _timed(6, "Normalized moment generating function at n = 1e5", 1, body)


def clt_trend() -> CriterionResult:
    def body():
        parts = []
        ok = True
        for v in ConeType:
            ds = [clt_diagnostics(n, v) for n in (10**2, 10**3, 10**4)]
            ok &= all(b < a for a, b in zip(ds, ds[1:])) and ds[-1] <= 0.2
            parts.append(f"{v.value}: " + ", ".join(f"{x:.4f}" for x in ds))
        return ok, "; ".join(parts)
    return _timed(7, "Kolmogorov distance to the normal law decreases", 60, body)


def load_theorem_fixtures() -> dict:
    text = resources.files("weylcone").joinpath("data/theorem_fixtures.json").read_text()
    return json.loads(text)


def fixture_spec(params: dict, variant: str) -> RegimeSpec:
    p = dict(params)
    kind = Regime(p.pop("kind"))
    return RegimeSpec(kind, variant, **p)


def theorem_sweeps() -> CriterionResult:
    def body():
        fx = load_theorem_fixtures()
        ladder = fx["n_ladder"]
        failures = []
        for entry in fx["regimes"]:
            spec = fixture_spec(entry["params"], fx["variant"])
            rep = convergence_sweep(spec, ladder)
            gaps = rep.gaps()
            label = ",".join(f"{k}={v}" for k, v in entry["params"].items())
            if any(g is None for g in gaps):
                failures.append(f"{label}: row error")
                continue
            if any(b > a for a, b in zip(gaps, gaps[1:])):
                failures.append(f"{label}: gaps " + ", ".join(f"{g:.4g}" for g in gaps))
            final = rep.rows[-1].finite_value
            pinned = entry["rows"][-1]["finite_value"]
            if abs(final - pinned) > 1e-9:
                failures.append(f"{label}: final value {final!r} vs fixture {pinned!r}")
        total = len(fx["regimes"])
        detail = f"{total - len(failures)}/{total} regimes clean"
        if failures:
            detail += "; " + " | ".join(failures)
        return not failures, detail
    return _timed(8, "Finite-n gaps shrink along the n ladder", 600, body)


def iv_law_trend() -> CriterionResult:
    def body():
        spec = RegimeSpec(Regime.IV_LAW, "A", x=4)
        tv = [iv_law_distance(realize_regime(spec, n), spec) for n in (10**3, 10**4)]
        return tv[1] < tv[0], f"total variation {tv[0]:.5f} -> {tv[1]:.5f}"
    return _timed(9, "Intrinsic-volume law approaches its discrete limit", 60, body)


DETERMINISM_COMMANDS = [
    ["functionals", "--n", "5", "--d", "3", "--type", "B", "--cone", "weyl", "--kind", "faces"],
    ["pmf", "--n", "12", "--type", "A", "--format", "json"],
    ["simulate", "--n", "4", "--d", "2", "--type", "A", "--functional", "iv", "--samples", "2000", "--seed", "11"],
    ["simulate", "--n", "3", "--d", "2", "--type", "B", "--functional", "statdim", "--samples", "2000", "--seed", "12"],
    ["simulate", "--n", "5", "--d", "3", "--type", "A", "--functional", "quermass", "--k", "1",
     "--cone", "weyl", "--samples", "2000", "--seed", "13"],
    ["tessellate", "--n", "4", "--d", "2", "--type", "A", "--seed", "3", "--signs", "--faces", "1"],
    ["limits", "--theorem", "face-ratio", "--type", "A", "--params", "x=2,k_mode=linear,alpha=0.5",
     "--n-list", "1000,2000"],
]


def _capture(argv):
    from weylcone.cli import main

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def determinism() -> CriterionResult:
    def body():
        bad = []
        for argv in DETERMINISM_COMMANDS:
            c1, o1, e1 = _capture(argv)
            manifest = json.loads(e1.strip().splitlines()[-1])
            c2, o2, _ = _capture(manifest["argv"])
            if c1 != 0 or c2 != 0 or o1 != o2:
                bad.append(argv[0])
        return not bad, f"{len(DETERMINISM_COMMANDS)} commands replayed from their manifests; differing: {bad or 'none'}"
    return _timed(10, "Seeded runs replay bit-exactly", 120, body)


CRITERIA = {
    1: parity_identity,
    2: iv_normalization,
    3: chamber_enumeration,
    4: pinned_values,
    5: monte_carlo,
    6: mod_poisson,
    7: clt_trend,
    8: theorem_sweeps,
    9: iv_law_trend,
    10: determinism,
}


def run_all(only=None) -> list[CriterionResult]:
    keys = sorted(CRITERIA) if not only else sorted(only)
    return [CRITERIA[k]() for k in keys]
