"""Command-line entry point: ``weylcone <subcommand> [options]``.

Every run writes a manifest (subcommand, parameters, argv, seed, version,
timestamp). With ``--out FILE`` it goes to ``FILE.manifest.json``; otherwise
it is printed to stderr as the last line. ``weylcone replay MANIFEST`` re-runs
the recorded argv.

Exit codes: 0 success, 1 computation error or failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction

from weylcone import __version__
from weylcone.combinatorics import ConeType, chamber_count, stirling_table
from weylcone.distribution import pmf
from weylcone.lp import LPError

# numeric codes accepted by --theorem alongside the regime names
REGIME_CODES = {
    "4.1": "face-ratio", "4.2": "face-ldp", "5.1": "iv-ldp", "5.3": "iv-law",
    "5.4": "quermass-fixed-k", "5.5": "quermass-growing-k", "6.1": "stat-dim",
}


# ---------------------------------------------------------------- output


def _cell(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v) if abs(v) > 2**53 else v
    return v


def _with_float(row: dict) -> dict:
    """Add a ``<name>_float`` column next to every rational value."""
    out = {}
    for k, v in row.items():
        out[k] = _cell(v)
        if isinstance(v, Fraction):
            out[f"{k}_float"] = float(v)
    return out


def emit(rows: list[dict], fmt: str, stream) -> None:
    rows = [_with_float(r) for r in rows]
    columns = []
    for r in rows:
        for k in r:
            if k not in columns:
                columns.append(k)
    if fmt == "json":
        json.dump({"columns": columns, "rows": rows}, stream, indent=1)
        stream.write("\n")
        return
    w = csv.DictWriter(stream, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in columns})


# ---------------------------------------------------------------- subcommands


def _type(value: str) -> ConeType:
    try:
        return ConeType.parse(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_stirling(args) -> list[dict]:
    t = stirling_table(args.type, args.n)
    ks = range(args.n + 1) if args.k is None else [args.k]
    return [{"n": args.n, "k": k, "value": str(t(args.n, k))} for k in ks]


def cmd_chambers(args) -> list[dict]:
    c = chamber_count(stirling_table(args.type, args.n), args.n, args.d)
    return [{"n": c.n, "d": c.d, "type": c.variant.value, "chambers": str(c.value)}]


def cmd_pmf(args) -> list[dict]:
    dist = pmf(args.n, args.type)
    rows = []
    for k in range(args.n + 1):
        if dist.exact is not None:
            rows.append({"k": k, "probability": dist.exact[k]})
        else:
            rows.append({"k": k, "probability": float(dist.probs[k])})
    return rows


def cmd_functionals(args) -> list[dict]:
    from weylcone.functionals import expected_functional, expected_statistical_dimension

    exact = {"auto": None, "exact": True, "float": False}[args.mode]
    if args.kind == "statdim":
        v = expected_statistical_dimension(args.n, args.d, args.type, exact=exact)
        return [{"kind": "statdim", "value": v.value, "exact": v.exact}]
    table = expected_functional(args.n, args.d, args.type, args.cone, args.kind, exact=exact)
    return [{"k": k, "value": v, "exact": table.exact} for k, v in table.items()]


def _parse_params(text: str) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise ValueError(f"parameter {item!r} is not of the form key=value")
        key, val = (s.strip() for s in item.split("=", 1))
        key = key.replace("-", "_")
        if key in ("k",):
            out[key] = int(val)
        elif key in ("k_mode",):
            out[key] = val
        elif key == "critical":
            out[key] = val.lower() in ("1", "true", "yes")
        else:
            out[key] = float(val)
    return out


def cmd_limits(args) -> list[dict]:
    from weylcone.limits import Regime, RegimeSpec, convergence_sweep

    kind = Regime(REGIME_CODES.get(args.theorem, args.theorem))
    params = _parse_params(args.params)
    if "c" in params and "x" not in params and kind in (Regime.IV_LAW, Regime.STAT_DIM):
        params.setdefault("critical", True)
    spec = RegimeSpec(kind, args.type, **params)
    ns = [int(float(s)) for s in args.n_list.split(",") if s.strip()]
    return [row.as_dict() for row in convergence_sweep(spec, ns).rows]


def _exact_reference(args):
    from weylcone.functionals import (
        expected_face_numbers, expected_intrinsic_volumes, expected_quermassintegrals,
        expected_statistical_dimension,
    )

    if args.n > 600:
        return None
    n, d, v = args.n, args.d, args.type
    if args.functional == "iv":
        return expected_intrinsic_volumes(n, d, v, "dual").values
    if args.functional == "faces":
        return expected_face_numbers(n, d, v, "dual")[args.k]
    if args.functional == "statdim":
        return expected_statistical_dimension(n, d, v).value
    table = expected_quermassintegrals(n, d, v, args.cone)
    if args.k in table.ks:
        return table[args.k]
    # the boundary indices not tabulated: U_0 = 1/2 and U_d = 0 for a proper cone
    return Fraction(1, 2) if args.k == 0 else Fraction(0)


def cmd_simulate(args) -> list[dict]:
    from weylcone.geometry import SamplerConfig
    from weylcone.simulation import (
        mc_face_numbers, mc_intrinsic_volumes, mc_quermassintegral, mc_statistical_dimension,
    )

    cfg = SamplerConfig(args.d, args.n, args.seed, args.distribution)
    ref = _exact_reference(args)
    f = args.functional
    if f == "iv":
        ests = mc_intrinsic_volumes(cfg, args.type, args.samples, args.gaussians_per_cone)
        pairs = [(k, e, None if ref is None else ref[k]) for k, e in enumerate(ests)]
    else:
        if f in ("faces", "quermass") and args.k is None:
            raise ValueError(f"--k is required for --functional {f}")
        if f == "faces":
            e = mc_face_numbers(cfg, args.type, args.k, args.samples)
        elif f == "quermass":
            e = mc_quermassintegral(cfg, args.type, args.k, args.cone, args.samples)
        else:
            e = mc_statistical_dimension(cfg, args.type, args.samples, args.estimator)
        pairs = [(args.k, e, ref)]
    rows = []
    for k, e, r in pairs:
        rows.append({"functional": f, "k": k, "mean": e.mean, "stderr": e.stderr, "samples": e.samples,
                     "accepted_fraction": e.accepted_fraction, "seed": e.seed, "exact": r})
    return rows


def cmd_tessellate(args) -> list[dict]:
    from weylcone.arrangement import (
        build_weyl_arrangement, count_chamber_faces, enumerate_chambers,
    )
    from weylcone.geometry import SamplerConfig, sample_points

    cfg = SamplerConfig(args.d, args.n, args.seed, args.distribution)
    arr = build_weyl_arrangement(sample_points(cfg), args.type)
    chambers = enumerate_chambers(arr, args.seed)
    faces = None
    if args.faces is not None:
        faces = [count_chamber_faces(c, arr, args.faces) for c in chambers]
    if args.signs:
        rows = []
        for i, c in enumerate(chambers):
            row = {"chamber": i, "signs": "".join("+" if s > 0 else "-" for s in c.signs)}
            if faces is not None:
                row[f"f{args.faces}"] = faces[i]
            rows.append(row)
        return rows
    row = {"n": args.n, "d": args.d, "type": args.type.value, "seed": args.seed,
           "hyperplanes": arr.m, "chambers": len(chambers)}
    if args.d <= args.n:
        expected = chamber_count(stirling_table(args.type, args.n), args.n, args.d).value
        row["expected"] = expected
        row["match"] = expected == len(chambers)
    if args.verify and not row.get("match", True):
        raise RuntimeError(f"enumerated {len(chambers)} chambers, formula gives {row['expected']}")
    if faces is not None:
        row[f"mean_f{args.faces}"] = Fraction(sum(faces), len(faces))
        if args.d < args.n and 1 <= args.faces <= args.d:
            from weylcone.functionals import expected_face_numbers

            row[f"exact_f{args.faces}"] = expected_face_numbers(args.n, args.d, args.type, "weyl")[args.faces]
    return [row]


def cmd_verify_all(args) -> list[dict]:
    from weylcone.acceptance import run_all

    only = [int(s) for s in args.only.split(",")] if args.only else None
    results = run_all(only)
    for r in results:
        print(r.line(), file=sys.stderr)
    rows = [{"criterion": r.number, "title": r.title, "passed": r.passed, "seconds": round(r.seconds, 3),
             "detail": r.detail} for r in results]
    args._failed = not all(r.passed for r in results)
    return rows


# ---------------------------------------------------------------- parser


def _common(p, seeded: bool = False):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write output here and the manifest to OUT.manifest.json")
    if seeded:
        p.add_argument("--seed", type=int, default=int(os.environ.get("WEYLCONE_SEED", "0")),
                       help="64-bit seed (default: $WEYLCONE_SEED or 0)")
        p.add_argument("--distribution", choices=("gaussian", "sphere"), default="gaussian")
        p.add_argument("--threads", type=int, default=None,
                       help="accepted for compatibility; estimators are vectorized in one process")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weylcone", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stirling", help="a row of the Stirling triangle (columns: n,k,value)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--type", type=_type, required=True)
    _common(p)
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("chambers", help="number of Weyl chambers (columns: n,d,type,chambers)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--type", type=_type, required=True)
    _common(p)
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("pmf", help="law of S_n (columns: k,probability[,probability_float])")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--type", type=_type, required=True)
    _common(p)
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("functionals", help="expected cone functionals (columns: k,value,value_float,exact)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--type", type=_type, required=True)
    p.add_argument("--cone", choices=("weyl", "dual"), default="weyl")
    p.add_argument("--kind", choices=("faces", "iv", "quermass", "statdim"), required=True)
    p.add_argument("--mode", choices=("auto", "exact", "float"), default="auto")
    _common(p)
    p.set_defaults(func=cmd_functionals)

    p = sub.add_parser("limits", help="finite-n values against limits along n "
                                      "(columns: n,finite_value,predicted_limit,gap,error,d,k,...)")
    p.add_argument("--theorem", required=True,
                   choices=sorted(set(REGIME_CODES) | set(REGIME_CODES.values())))
    p.add_argument("--type", type=_type, required=True)
    p.add_argument("--params", default="", help="comma-separated key=value: x, y, c, alpha, k, k_mode, beta, critical")
    p.add_argument("--n-list", required=True, help="comma-separated increasing n values")
    _common(p)
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("simulate", help="Monte Carlo estimates (columns: functional,k,mean,stderr,"
                                        "samples,accepted_fraction,seed,exact,exact_float)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--type", type=_type, required=True)
    p.add_argument("--functional", choices=("iv", "faces", "quermass", "statdim"), required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--cone", choices=("weyl", "dual"), default="dual", help="cone for quermass")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--gaussians-per-cone", type=int, default=1)
    p.add_argument("--estimator", choices=("faces", "norm"), default="faces")
    _common(p, seeded=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("tessellate", help="enumerate the chambers of a random Weyl arrangement "
                                          "(columns: n,d,type,seed,hyperplanes,chambers,expected,match "
                                          "or chamber,signs[,fK] with --signs)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--type", type=_type, required=True)
    p.add_argument("--verify", action="store_true", help="fail unless the count matches the formula")
    p.add_argument("--faces", type=int, metavar="K")
    p.add_argument("--signs", action="store_true", help="list chambers by sign vector")
    _common(p, seeded=True)
    p.set_defaults(func=cmd_tessellate)

    p = sub.add_parser("verify-all", help="run the acceptance suite (columns: criterion,title,passed,seconds,detail)")
    p.add_argument("--only", help="comma-separated criterion numbers")
    _common(p)
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("replay", help="re-run the argv recorded in a manifest")
    p.add_argument("manifest")
    p.set_defaults(func=None)
    return parser


def _manifest(args, argv) -> dict:
    params = {k: (v.value if isinstance(v, ConeType) else v) for k, v in vars(args).items()
              if k not in ("func", "command", "out", "_failed")}
    return {"subcommand": args.command, "parameters": params, "argv": list(argv),
            "seed": getattr(args, "seed", None), "artifact_version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "replay":
        try:
            with open(args.manifest) as fh:
                recorded = json.load(fh)["argv"]
        except (OSError, ValueError, KeyError) as exc:
            print(f"error: cannot read manifest: {exc}", file=sys.stderr)
            return 1
        return main(recorded)
    if hasattr(args, "seed") and not 0 <= args.seed < 2**64:
        parser.print_usage(sys.stderr)
        print(f"error: --seed must be a 64-bit unsigned integer, got {args.seed}", file=sys.stderr)
        return 2
    try:
        rows = args.func(args)
    except (ValueError, ArithmeticError, LPError, RuntimeError, KeyError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    buf = io.StringIO()
    emit(rows, args.format, buf)
    manifest = json.dumps(_manifest(args, argv), sort_keys=True)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
        with open(args.out + ".manifest.json", "w") as fh:
            fh.write(manifest + "\n")
    else:
        sys.stdout.write(buf.getvalue())
        print(manifest, file=sys.stderr)
    return 1 if getattr(args, "_failed", False) else 0


if __name__ == "__main__":
    sys.exit(main())
