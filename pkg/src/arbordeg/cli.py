"""Command-line front end.

Subcommands wrap the library pipelines one-to-one:

  pcf         critical orbits and the PCF verdict
  certify     periodic-reduction prime search + degree lower-bound table
  verify      re-check a stored certificate from scratch
  scan        completely-split prime scan for f^N - alpha
  support     discriminant support set S(f, alpha)
  grh-report  empirical growth table (least split prime, disc size)

JSON is the canonical output (sorted keys, fixed indentation, so runs
diff cleanly); csv and human views are derived projections.  Exit codes:
0 ok, 2 invalid input, 3 work limit, 4 falsification.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from fractions import Fraction

from .certify import (
    certificate_from_dict,
    certificate_to_dict,
    certificate_to_json,
    degree_lower_bound_table,
    find_periodic_prime,
    grh_growth_report,
    split_scan,
    verify_certificate,
)
from .dynamics import critical_orbits, is_pcf, support_set
from .errors import FalsificationError, WorkLimitError
from .ff_factor import DEFAULT_SEED
from .poly import PolyQ, parse_poly, parse_rational, poly_x

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_WORK_LIMIT = 3
EXIT_FALSIFIED = 4

_ENV_OVERRIDES = {
    "ARBORDEG_DEGREE_CAP": ("degree_cap", int),
    "ARBORDEG_N_SEARCH_MAX": ("n_search_max", int),
    "ARBORDEG_P_MAX": ("p_max", int),
}


def _rat_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _load_config(path: str) -> dict:
    """key=value per line; # starts a comment; values stay strings."""
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {raw.strip()!r}")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def _resolve_poly(args) -> PolyQ:
    given = [x is not None for x in (args.poly, args.c, args.c_plus)]
    if args.poly is not None:
        if args.unicritical is not None:
            raise ValueError("--poly and --unicritical are mutually exclusive")
        f = parse_poly(args.poly)
    else:
        if args.unicritical is None:
            raise ValueError("give either --poly or --unicritical D with --c/--c-plus")
        d = args.unicritical
        if d < 2:
            raise ValueError("--unicritical degree must be >= 2")
        if (args.c is None) == (args.c_plus is None):
            raise ValueError("--unicritical needs exactly one of --c or --c-plus")
        c = parse_rational(args.c) if args.c is not None else -parse_rational(args.c_plus)
        f = poly_x(d, c)
    if not f.is_monic() or f.degree < 2:
        raise ValueError("polynomial must be monic of degree >= 2")
    return f


def _emit(args, report: dict, csv_rows=None):
    fmt = args.format
    if fmt == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        if not csv_rows:
            raise ValueError("this report has no csv projection")
        header, rows = csv_rows
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join("" if v is None else str(v) for v in row) + "\n")
        sys.stdout.write(buf.getvalue())
    else:
        _emit_human(report)


def _emit_human(report: dict, indent: int = 0):
    pad = "  " * indent
    for key in sorted(report):
        val = report[key]
        if isinstance(val, dict):
            sys.stdout.write(f"{pad}{key}:\n")
            _emit_human(val, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            sys.stdout.write(f"{pad}{key}:\n")
            for entry in val:
                line = ", ".join(f"{k}={entry[k]}" for k in sorted(entry))
                sys.stdout.write(f"{pad}  {line}\n")
        else:
            sys.stdout.write(f"{pad}{key}: {val}\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_pcf(args) -> int:
    f = _resolve_poly(args)
    verdict = is_pcf(f)
    orbits = critical_orbits(f)
    orbit_rows = []
    for o in orbits:
        orbit_rows.append(
            {
                "critical_point": _rat_str(o.start),
                "values": [_rat_str(v) for v in o.values],
                "outcome": o.outcome,
                "tail": o.tail,
                "cycle": o.cycle,
                "escape_step": o.escape_step,
                "witness": None if o.witness is None else [str(w) for w in o.witness],
            }
        )
    report = {
        "command": "pcf",
        "polynomial": f.to_strings(),
        "verdict": "pcf" if verdict else "post-critically-infinite",
        "critical_orbits": orbit_rows,
    }
    _emit(
        args,
        report,
        csv_rows=(
            ["critical_point", "outcome", "tail", "cycle", "escape_step"],
            [
                [r["critical_point"], r["outcome"], r["tail"], r["cycle"], r["escape_step"]]
                for r in orbit_rows
            ],
        ),
    )
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.verify is not None:
        return cmd_verify(args)
    if args.unicritical is None or (args.c is None) == (args.c_plus is None):
        raise ValueError("certify needs --unicritical D and exactly one of --c/--c-plus")
    d = args.unicritical
    c = parse_rational(args.c) if args.c is not None else -parse_rational(args.c_plus)
    alpha = parse_rational(args.alpha)
    shifted_from = None
    if alpha == -c:
        # certify alpha' = 0 instead; level N here is level N+1 for alpha
        shifted_from = alpha
        alpha = Fraction(0)
    prime = find_periodic_prime(d, c, alpha, n_search_max=args.n_search_max)
    cert = degree_lower_bound_table(
        d, c, alpha, [prime], N_max=args.N_max, degree_cap=args.degree_cap, seed=args.seed
    )
    if shifted_from is not None:
        import dataclasses

        cert = dataclasses.replace(cert, alpha_shifted_from=shifted_from)
    text = certificate_to_json(cert)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    if args.format == "json" or not args.out:
        if args.format == "csv":
            rows = certificate_to_dict(cert)["rows"]
            _emit(args, {}, csv_rows=(
                ["p", "N", "e_N", "m_N", "ru_check", "bound"],
                [[r["p"], r["N"], r["e_N"], r["m_N"], r["ru_check"], r["bound"]] for r in rows],
            ))
        elif args.format == "human":
            _emit_human(certificate_to_dict(cert))
        else:
            sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    path = args.verify if getattr(args, "verify", None) else args.certificate
    with open(path) as fh:
        doc = json.load(fh)
    cert = certificate_from_dict(doc)
    rederived = verify_certificate(cert)
    report = {
        "command": "verify",
        "certificate": path,
        "verdict": "verified",
        "rows_checked": len(rederived.rows),
        "primes_checked": [t.p for t in rederived.primes],
    }
    _emit(args, report)
    return EXIT_OK


def cmd_scan(args) -> int:
    f = _resolve_poly(args)
    alpha = parse_rational(args.alpha)
    support = support_set(f, alpha, args.N, with_resultant_route=False)
    report_rows = []
    for N in range(1, args.N + 1):
        rep = split_scan(f, alpha, N, args.p_max, support)
        report_rows.append(
            {
                "N": N,
                "d^N": rep.d_pow_N,
                "least_split": rep.least_split,
                "split_count": len(rep.split_primes),
                "scanned": rep.scanned,
                "split_primes": list(rep.split_primes[:50]),
            }
        )
    report = {
        "command": "scan",
        "polynomial": f.to_strings(),
        "alpha": _rat_str(alpha),
        "p_max": args.p_max,
        "excluded_primes": sorted(support.primes),
        "rows": report_rows,
    }
    _emit(
        args,
        report,
        csv_rows=(
            ["N", "d^N", "least_split", "split_count", "scanned"],
            [[r["N"], r["d^N"], r["least_split"], r["split_count"], r["scanned"]] for r in report_rows],
        ),
    )
    return EXIT_OK


def cmd_support(args) -> int:
    f = _resolve_poly(args)
    alpha = parse_rational(args.alpha)
    S = support_set(f, alpha, args.N_max, disc_degree_cap=args.degree_cap)
    report = {
        "command": "support",
        "polynomial": f.to_strings(),
        "alpha": _rat_str(alpha),
        "primes": sorted(S.primes),
        "orbit_route": sorted(S.orbit_route),
        "resultant_route": sorted(S.resultant_route),
        "provenance": {str(p): S.provenance[p] for p in sorted(S.provenance)},
        "stabilized_at": S.stabilized_at,
        "n_checked": S.n_checked,
    }
    _emit(
        args,
        report,
        csv_rows=(
            ["prime", "provenance"],
            [[p, S.provenance.get(p, "")] for p in sorted(S.primes)],
        ),
    )
    return EXIT_OK


def cmd_grh_report(args) -> int:
    f = _resolve_poly(args)
    alpha = parse_rational(args.alpha)
    rep = grh_growth_report(
        f, alpha, args.N_max, args.p_max, disc_degree_cap=args.degree_cap
    )
    rows = [
        {
            "N": r.N,
            "least_split_prime": r.least_split_prime,
            "log_abs_disc": r.log_abs_disc,
            "serre_bound": r.serre_bound,
        }
        for r in rep.rows
    ]
    report = {
        "command": "grh-report",
        "label": rep.label,
        "polynomial": f.to_strings(),
        "alpha": _rat_str(alpha),
        "p_max": args.p_max,
        "rows": rows,
    }
    _emit(
        args,
        report,
        csv_rows=(
            ["N", "least_split_prime", "log_abs_disc", "serre_bound"],
            [[r["N"], r["least_split_prime"], r["log_abs_disc"], r["serre_bound"]] for r in rows],
        ),
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_poly_args(sp):
    sp.add_argument("--poly", help="coefficient list, ascending degree, e.g. '[-1,0,1]'")
    sp.add_argument("--unicritical", type=int, help="degree d for f = x^d - c")
    sp.add_argument("--c", help="c in f = x^d - c (exact p/q)")
    sp.add_argument("--c-plus", dest="c_plus", help="c in f = x^d + c (negated internally)")


def _add_common(sp):
    sp.add_argument("--format", choices=["json", "csv", "human"], default="json")
    sp.add_argument("--config", help="key=value file supplying flag defaults")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--degree-cap", dest="degree_cap", type=int, default=4096)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="arbordeg",
        description="degree lower-bound certificates for iterated preimage fields",
    )
    ap._arbordeg_subparsers = []
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pcf", help="critical orbits and PCF verdict")
    _add_poly_args(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_pcf)
    ap._arbordeg_subparsers.append(sp)

    sp = sub.add_parser("certify", help="periodic prime search + lower-bound table")
    _add_poly_args(sp)
    _add_common(sp)
    sp.add_argument("--alpha", default="0", help="base point (exact p/q)")
    sp.add_argument("--N-max", dest="N_max", type=int, default=12)
    sp.add_argument("--n-search-max", dest="n_search_max", type=int, default=64)
    sp.add_argument("--out", help="write certificate JSON here as well")
    sp.add_argument("--verify", help="re-check a stored certificate instead")
    sp.set_defaults(func=cmd_certify)
    ap._arbordeg_subparsers.append(sp)

    sp = sub.add_parser("verify", help="re-check a stored certificate from scratch")
    sp.add_argument("certificate", help="path to certificate JSON")
    _add_common(sp)
    sp.set_defaults(func=cmd_verify, verify=None)
    ap._arbordeg_subparsers.append(sp)

    sp = sub.add_parser("scan", help="completely-split prime scan")
    _add_poly_args(sp)
    _add_common(sp)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--p-max", dest="p_max", type=int, default=10000)
    sp.set_defaults(func=cmd_scan)
    ap._arbordeg_subparsers.append(sp)

    sp = sub.add_parser("support", help="discriminant support set")
    _add_poly_args(sp)
    _add_common(sp)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--N-max", dest="N_max", type=int, default=8)
    sp.set_defaults(func=cmd_support)
    ap._arbordeg_subparsers.append(sp)

    sp = sub.add_parser("grh-report", help="EMPIRICAL growth data table")
    _add_poly_args(sp)
    _add_common(sp)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--N-max", dest="N_max", type=int, default=4)
    sp.add_argument("--p-max", dest="p_max", type=int, default=10000)
    sp.set_defaults(func=cmd_grh_report)
    ap._arbordeg_subparsers.append(sp)

    return ap


def _apply_overrides(ap: argparse.ArgumentParser, argv: list[str]):
    """Config file and environment supply defaults; explicit flags win."""
    defaults = {}
    if "--config" in argv:
        path = argv[argv.index("--config") + 1]
        for key, val in _load_config(path).items():
            defaults[key] = val
    for env, (dest, conv) in _ENV_OVERRIDES.items():
        if env in os.environ:
            defaults[dest] = conv(os.environ[env])
    if defaults:
        for key in ("N_max", "n_search_max", "degree_cap", "p_max", "N", "seed", "unicritical"):
            if key in defaults:
                defaults[key] = int(defaults[key])
        for sp in ap._arbordeg_subparsers:
            known = {a.dest for a in sp._actions}
            sp.set_defaults(**{k: v for k, v in defaults.items() if k in known})


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        _apply_overrides(ap, argv)
        args = ap.parse_args(argv)
        return args.func(args)
    except FalsificationError as e:
        print(f"falsification: {e}", file=sys.stderr)
        if getattr(e, "transcript", None):
            print(json.dumps(e.transcript, default=str, sort_keys=True), file=sys.stderr)
        return EXIT_FALSIFIED
    except WorkLimitError as e:
        print(f"work limit: {e}", file=sys.stderr)
        return EXIT_WORK_LIMIT
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
