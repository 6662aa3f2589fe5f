"""Command-line interface: JSON in, JSON out.

Exit codes: 0 ok, 1 violation verdict, 2 input error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import curvature, hodge, lefschetz
from .complex import complex_from_json, euler_characteristic, loads
from .errors import InputError, NumericalFailure, ParseError
from .samples import sphere_sample

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3


class Violation(Exception):
    """Carries a payload whose verdict is negative."""

    def __init__(self, results):
        self.results = results


def _clean(obj):
    """Fixed 12-significant-digit floats, JSON-native containers."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return _clean(obj.item())
    return obj


def dumps(report: dict, pretty: bool = False) -> str:
    return json.dumps(_clean(report), indent=2 if pretty else None, allow_nan=False)


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def _read_complex(path: str):
    return complex_from_json(_read_json(path))


def _t_grid(text: str) -> list[float]:
    try:
        grid = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError(f"bad --t-grid {text!r}") from exc
    if not grid or any(not (t >= 0) or t == float("inf") for t in grid):
        raise ParseError("--t-grid needs finite non-negative times")
    return grid


def cmd_euler(args):
    K = _read_complex(args.complex)
    return {"f_vector": list(K.f_vector), "euler": euler_characteristic(K)}


def cmd_betti(args):
    K = _read_complex(args.complex)
    b = hodge.betti(K)
    return {"f_vector": list(K.f_vector), "betti": list(b), "euler": euler_characteristic(K)}


def cmd_spectrum(args):
    K = _read_complex(args.complex)
    spec = hodge.spectrum(K, args.k)
    out = spec.to_json()
    out["betti"] = hodge.betti(K)[args.k]
    return out


def cmd_lefschetz(args):
    K = _read_complex(args.complex)
    grid = _t_grid(args.t_grid)
    if args.all_automorphisms:
        autos = lefschetz.automorphism_group(K, args.vertex_cap)
    else:
        if args.automorphism:
            data = _read_json(args.automorphism)
            if not isinstance(data, dict) or not isinstance(data.get("perm"), list):
                raise ParseError('automorphism JSON needs a "perm" list')
            perm = data["perm"]
        elif args.perm:
            try:
                perm = [int(x) for x in args.perm.split(",")]
            except ValueError as exc:
                raise ParseError(f"bad --perm {args.perm!r}") from exc
        else:
            perm = list(range(K.n_vertices))
        autos = [lefschetz.automorphism_from_vertex_map(K, perm)]
    reports = [lefschetz.verify_lefschetz(K, T, grid, args.tol) for T in autos]
    results = {
        "euler": euler_characteristic(K),
        "count": len(reports),
        "all_verdicts": all(r.verdict for r in reports),
        "reports": [r.to_json(K.labels) for r in reports],
    }
    if not results["all_verdicts"]:
        raise Violation(results)
    return results


def cmd_mckean_singer(args):
    K = _read_complex(args.complex)
    chi = euler_characteristic(K)
    rows = []
    for t in _t_grid(args.t_grid):
        value = hodge.heat_supertrace(K, t)
        rows.append({"t": t, "supertrace": value, "deviation": abs(value - chi)})
    results = {"euler": chi, "values": rows, "max_deviation": max(r["deviation"] for r in rows)}
    if results["max_deviation"] >= args.tol:
        raise Violation(results)
    return results


def cmd_supersymmetry(args):
    K = _read_complex(args.complex)
    rep = hodge.supersymmetry_check(K, args.tol)
    results = rep.to_json()
    results["supertrace_of_powers"] = {str(p): hodge.supertrace_of_power(K, p) for p in (1, 2, 3)}
    if not rep.ok or any(results["supertrace_of_powers"].values()):
        raise Violation(results)
    return results


def cmd_enumerate(args):
    entries = curvature.enumerate_configurations(args.dim, max_components=args.max_components)
    rows = [e.to_json() for e in entries if e.admissible or not args.admissible_only]
    admissible = [e for e in entries if e.admissible]
    return {
        "ambient_dim": args.dim,
        "count": len(rows),
        "implied_euler_all": sorted({e.implied_euler for e in entries}),
        "implied_euler_admissible": sorted({e.implied_euler for e in admissible}),
        "all_positive": all(e.implied_euler > 0 for e in entries),
        "configurations": rows,
    }


def cmd_classify(args):
    cfg = curvature.configuration_from_json(_read_json(args.config))
    report = curvature.check_configuration(cfg)
    cls = curvature.grove_searle_classify(cfg)
    results = {
        "configuration": cfg.to_json(),
        "constraints": report.to_json(),
        "classification": cls.to_json(),
        "consistent": curvature.grove_searle_consistent(cfg, cls),
    }
    if not report.ok:
        raise Violation(results)
    return results


def cmd_gap(args):
    return curvature.hopf_gap_report(args.dim, args.max_components).to_json()


def cmd_sample_sphere(args):
    if args.subdivisions < 0:
        raise ParseError("--subdivisions must be non-negative")
    pc, g, K = sphere_sample(args.subdivisions, args.h, args.max_dim)
    if args.out:
        payload = {"points": pc.points.tolist(), "graph": g.to_json(), "complex": K.to_json()}
        Path(args.out).write_text(dumps(payload))
    return {
        "n_points": len(pc),
        "n_edges": len(g.edges),
        "f_vector": list(K.f_vector),
        "euler": euler_characteristic(K),
        "betti": list(hodge.betti(K)),
        "out": args.out,
    }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lefschetz-lab", description=__doc__)
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    def with_complex(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("complex", help='complex JSON file {"facets": [...]}')
        sp.set_defaults(func=func)
        return sp

    with_complex("euler", cmd_euler, "Euler characteristic")
    with_complex("betti", cmd_betti, "Betti numbers (exact)")
    sp = with_complex("spectrum", cmd_spectrum, "Hodge Laplacian spectrum in one degree")
    sp.add_argument("-k", "--k", type=int, default=0)

    sp = with_complex("lefschetz", cmd_lefschetz, "Lefschetz number vs fixed-point indices vs heat flow")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--automorphism", help='automorphism JSON file {"perm": [...]}')
    src.add_argument("--perm", help="comma-separated vertex images")
    src.add_argument("--all-automorphisms", action="store_true")
    sp.add_argument("--t-grid", default="0,0.1,1,5,20")
    sp.add_argument("--vertex-cap", type=int, default=12)
    sp.add_argument("--tol", type=float, default=1e-8)

    sp = with_complex("mckean-singer", cmd_mckean_singer, "heat super trace across times")
    sp.add_argument("--t-grid", default="0,0.1,1,5,20")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp = with_complex("supersymmetry", cmd_supersymmetry, "even/odd positive spectrum pairing")
    sp.add_argument("--tol", type=float, default=1e-8)

    sp = sub.add_parser("enumerate", help="admissible fixed-point configurations")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--max-components", type=int, default=6)
    sp.add_argument("--admissible-only", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("classify", help="constraint check and Grove-Searle classification")
    sp.add_argument("config", help='configuration JSON {"ambient_dim": .., "components": [..]}')
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("gap", help="configurations whose positivity the rules do not force")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--max-components", type=int, default=6)
    sp.set_defaults(func=cmd_gap)

    sp = sub.add_parser("sample-sphere", help="epsilon-graph Whitney complex of a geodesic sphere sample")
    sp.add_argument("--subdivisions", type=int, default=0)
    sp.add_argument("--h", type=float, required=True)
    sp.add_argument("--max-dim", type=int, default=None)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sample_sphere)
    return p


def _inputs(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "pretty", "command")}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"command": args.command, "inputs": _inputs(args), "results": None, "status": "ok"}
    code = EXIT_OK
    try:
        report["results"] = args.func(args)
    except Violation as v:
        report["results"], report["status"], code = v.results, "violation", EXIT_VIOLATION
    except NumericalFailure as exc:
        report["status"] = "numerical_failure"
        report["failing_operation"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_NUMERICAL
    except (InputError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(dumps(report, args.pretty))
    return code


if __name__ == "__main__":
    sys.exit(main())
