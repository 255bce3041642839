"""Command-line entry point: ``spectral-intersect <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .algebra import format_scalar, parse_scalar
from .curves import CurveSpecError, load_curve_spec, preset_local_data, required_orders
from .toprec import dgn, is_stable

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _curve(arg: str, targets: list):
    """A JSON curve file, or ``preset:NAME[:F]`` sized for the targets."""
    if arg.startswith("preset:"):
        parts = arg.split(":")
        K = max((required_orders(g, n)[0] for g, n in targets), default=15)
        M = max((required_orders(g, n)[1] for g, n in targets), default=14)
        params = {}
        if len(parts) > 2:
            params["f"] = parse_scalar(parts[2])
        return preset_local_data(parts[1], K, M, **params)
    return load_curve_spec(arg, targets)


def _stable(g: int, n: int) -> None:
    if g < 0 or n < 0 or not is_stable(g, n) or (g, n) == (0, 2):
        raise UsageError(f"(g,n)=({g},{n}) is not stable")


# ----------------------------------------------------------- subcommands

def cmd_correlators(a) -> int:
    from .toprec import TopologicalRecursion

    _stable(a.g, a.n)
    if a.n == 0:
        raise UsageError("n = 0 has no tensor; use the fg subcommand")
    curve = _curve(a.curve, [(a.g, a.n)])
    T = TopologicalRecursion(curve).tensor(a.g, a.n)
    if a.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"d{i + 1}" for i in range(a.n)] + ["value"])
        for key, v in T.sorted_items():
            w.writerow(list(key) + [format_scalar(v)])
        if a.out:
            with open(a.out, "w", encoding="utf-8") as fh:
                fh.write(buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
    else:
        body = T.to_json()
        body["curve"] = curve.fingerprint()
        _emit(body, a.out)
    return EXIT_OK


def cmd_fg(a) -> int:
    from .toprec import TopologicalRecursion

    if a.g < 2:
        raise UsageError("F_g is available for g >= 2")
    curve = _curve(a.curve, [(a.g, 0)])
    _emit({"g": a.g, "curve": curve.fingerprint(),
           "F": format_scalar(TopologicalRecursion(curve).free_energy(a.g))})
    return EXIT_OK


def cmd_intersect(a) -> int:
    from .intersect import kappa_psi_correlator

    psi = _int_list(a.psi)
    kappa = _int_list(a.kappa)
    n = len(psi)
    _stable(a.g, n)
    if any(d < 0 for d in psi) or any(k < 1 for k in kappa):
        raise UsageError("psi degrees must be >= 0 and kappa indices >= 1")
    value = kappa_psi_correlator(a.g, psi, kappa)
    _emit({"g": a.g, "n": n, "psi": psi, "kappa": kappa, "value": format_scalar(value)})
    return EXIT_OK


def cmd_wp(a) -> int:
    from .bridge import format_wp_polynomial, wp_volume

    _stable(a.g, a.n)
    mono = wp_volume(a.g, a.n)
    _emit({"g": a.g, "n": a.n, "variables": ["pi^2"] + [f"L{i + 1}^2" for i in range(a.n)],
           "monomials": [list(m[:-1]) + [str(m[-1])] for m in mono],
           "polynomial": format_wp_polynomial(mono)})
    return EXIT_OK


def cmd_hurwitz(a) -> int:
    from .bridge import elsv_hurwitz
    from .harness.oracle import cut_join_oracle

    mu = _int_list(a.mu)
    if not mu or any(m < 1 for m in mu) or a.g < 0:
        raise UsageError("mu must be a nonempty list of positive integers and g >= 0")
    value = elsv_hurwitz(a.g, mu)
    out = {"g": a.g, "mu": mu, "value": str(value)}
    code = EXIT_OK
    if a.oracle:
        o = cut_join_oracle(a.g, mu)
        out["oracle"] = str(o)
        out["equal"] = o == value
        code = EXIT_OK if o == value else EXIT_CHECK_FAILED
    _emit(out)
    return code


def cmd_vertex(a) -> int:
    from .bridge import vertex_class
    from .intersect import boundary_class_correlator, degree_tuples

    _stable(a.g, a.n)
    f = parse_scalar(a.framing)
    if not f or not (f + 1):
        raise UsageError("framing must avoid 0 and -1")
    D = dgn(a.g, a.n)
    sc = vertex_class(f, D + 1)
    entries = []
    for ds in degree_tuples(a.n, D):
        if list(ds) != sorted(ds):
            continue
        v = boundary_class_correlator(a.g, ds, sc.cls)
        if v:
            entries.append({"degrees": list(ds), "value": format_scalar(v)})
    _emit({"g": a.g, "n": a.n, "framing": format_scalar(f), "provenance": sc.provenance,
           "p_squared": format_scalar(sc.p_squared),
           "normalization": "prefactor-free <prod psi^d_i f(psi_i) e^{t~ kappa} e^{B^}>",
           "dual_times": {str(k): format_scalar(v) for k, v in sorted(sc.cls.tt.items())},
           "entries": entries})
    return EXIT_OK


def cmd_crosscheck(a) -> int:
    from .harness.crosscheck import crosscheck, stable_targets

    if a.max_chi < 1:
        raise UsageError("max-chi must be >= 1")
    targets = stable_targets(a.max_chi)
    curve = _curve(a.curve, targets)
    report = crosscheck(curve, a.max_chi, targets)
    body = report.to_json()
    if not a.verbose:
        body["entries"] = [e for e in body["entries"] if not e["equal"]]
    _emit(body, a.out)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_fixtures(a) -> int:
    from .harness.fixtures import run_fixtures

    results = run_fixtures()
    rows = []
    for r in results:
        row = {"id": r.entry.identifier, "expected": r.entry.expected, "got": r.got, "ok": r.ok}
        if r.entry.erratum:
            row["printed"] = r.entry.printed
            row["corroborated_by"] = list(r.entry.corroborated_by)
            row["note"] = r.entry.note
        rows.append(row)
    failed = [r for r in rows if not r["ok"]]
    _emit({"total": len(rows), "failed": len(failed),
           "errata": sum(1 for r in results if r.entry.erratum),
           "status": "PASS" if not failed else "FAIL",
           "fixtures": rows if a.verbose else failed})
    return EXIT_OK if not failed else EXIT_CHECK_FAILED


def cmd_cache(a) -> int:
    from .harness import cache

    if a.action == "stats":
        _emit(cache.stats(a.path))
    else:
        _emit({"path": a.path, "removed": cache.clear(a.path)})
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spectral-intersect",
                                description="Exact topological recursion and intersection numbers.")
    p.add_argument("--cache-file", help="persistent psi/kappa cache, loaded first and saved after")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("correlators", help="correlator tensor C^(g)_n of a curve")
    s.add_argument("--curve", required=True, help="JSON curve file or preset:NAME[:F]")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_correlators)

    s = sub.add_parser("fg", help="symplectic invariant F_g")
    s.add_argument("--curve", required=True)
    s.add_argument("--g", type=int, required=True)
    s.set_defaults(func=cmd_fg)

    s = sub.add_parser("intersect", help="<prod tau_d prod kappa_b>_{g,n}")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--psi", default="", help="comma-separated psi degrees, one per marked point")
    s.add_argument("--kappa", default="")
    s.set_defaults(func=cmd_intersect)

    s = sub.add_parser("wp-volumes", help="Weil-Petersson volume polynomial")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_wp)

    s = sub.add_parser("hurwitz", help="simple Hurwitz number via ELSV")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--mu", required=True)
    s.add_argument("--oracle", action="store_true", help="compare with the cut-and-join count")
    s.set_defaults(func=cmd_hurwitz)

    s = sub.add_parser("vertex", help="framed-vertex class correlators")
    s.add_argument("--framing", required=True, help="rational framing or q for formal")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_vertex)

    s = sub.add_parser("crosscheck", help="recursion vs intersection formula")
    s.add_argument("--curve", required=True)
    s.add_argument("--max-chi", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--verbose", action="store_true", help="list every compared entry")
    s.set_defaults(func=cmd_crosscheck)

    s = sub.add_parser("fixtures", help="run the fixture corpus")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_fixtures)

    s = sub.add_parser("cache", help="inspect or clear a persistent cache file")
    s.add_argument("action", choices=("stats", "clear"))
    s.add_argument("--path", required=True)
    s.set_defaults(func=cmd_cache)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    from .harness import cache

    if args.cache_file and args.command != "cache":
        cache.load(args.cache_file)
    try:
        code = args.func(args)
    except (UsageError, CurveSpecError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.cache_file and args.command != "cache":
        cache.save(args.cache_file)
    return code


if __name__ == "__main__":
    sys.exit(main())
