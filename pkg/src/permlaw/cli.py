"""Command-line interface.

Exit codes: 0 PASS/success, 1 FAIL, 2 FAIL-TO-DECIDE or cap exceeded,
3 usage error.  Every randomized command takes --seed (default 0), so
identical invocations with one worker produce byte-identical reports up
to the timing fields.  Reports are JSON documents written under --out.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .caps import Caps, caps_from_env
from .certificates import TrajectoryCertificate, validate_certificate
from .corpus import load, make, save
from .errors import CapExceeded, GroupFileError, NoApplicablePath, PermlawError
from .laws import LawStatus, non_law_witness, nu, verify_theorem_a
from .structure import nonsolvable_length, rs_series
from .trajectories import (
    SearchMode,
    check_trajectory_property,
    verify_theorem_b,
    verify_theorem_c,
)
from .words import SymmetryLevel, parse_word

OK, FAIL, UNDECIDED, USAGE = 0, 1, 2, 3


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    if not hasattr(args, "func"):
        parser.print_help()
        return USAGE
    caps = caps_from_env().with_overrides(
        element_cap=args.element_cap,
        index_cap=args.index_cap,
        tuple_cap=args.tuple_cap,
        frattini_cap=args.frattini_cap,
        sylow_conj_cap=args.sylow_conj_cap,
    )
    try:
        return args.func(args, caps)
    except (CapExceeded, NoApplicablePath) as exc:
        print(f"FAIL-TO-DECIDE: {exc}", file=sys.stderr)
        return UNDECIDED
    except (GroupFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except PermlawError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permlaw",
        description="Permutation-group toolkit: nonsolvable length, shortest laws, "
                    "and trajectory certificates.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")

    def common(p: argparse.ArgumentParser, seeded: bool = True) -> None:
        if seeded:
            p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
            p.add_argument("--workers", type=int, default=1,
                           help="parallel workers; 1 is the reproducible default")
        p.add_argument("--out", type=Path, default=None, help="directory for reports")
        p.add_argument("--element-cap", type=int, default=None,
                       help="max group order for element enumeration (default 10^6)")
        p.add_argument("--index-cap", type=int, default=None,
                       help="max subgroup index for coset actions (default 10^5)")
        p.add_argument("--tuple-cap", type=int, default=None,
                       help="max evaluations in one exhaustive law scan (default 10^9)")
        p.add_argument("--frattini-cap", type=int, default=None,
                       help="max order for subgroup-lattice enumeration (default 2000)")
        p.add_argument("--sylow-conj-cap", type=int, default=None,
                       help="max Sylow conjugates per search (default 10^4)")

    p = sub.add_parser("lambda", help="print the nonsolvable length")
    p.add_argument("group_file", type=Path)
    common(p, seeded=False)
    p.set_defaults(func=_cmd_lambda)

    p = sub.add_parser("rs-series", help="print the radical/socle series")
    p.add_argument("group_file", type=Path)
    common(p, seeded=False)
    p.set_defaults(func=_cmd_rs_series)

    p = sub.add_parser("nu", help="shortest-law length by exhaustive search")
    p.add_argument("group_file", type=Path)
    p.add_argument("--max-length", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_nu)

    p = sub.add_parser("witness", help="search a non-law witness for one word")
    p.add_argument("group_file", type=Path)
    p.add_argument("--word", required=True, help='word text, e.g. "x1 x2^-1"')
    p.add_argument("--budget", type=int, default=20000)
    common(p)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("pn", help="distinct-trajectory check for words of one length")
    p.add_argument("group_file", type=Path)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["sylow2", "any"], default="any")
    p.add_argument("--omega", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_pn)

    p = sub.add_parser("verify-theorem-a",
                       help="campaign: no word of length <= lambda is a law")
    p.add_argument("group_file", type=Path)
    common(p)
    p.set_defaults(func=_cmd_theorem_a)

    p = sub.add_parser("verify-theorem-b",
                       help="campaign: every short word has a non-vanishing tuple")
    p.add_argument("group_file", type=Path)
    common(p)
    p.set_defaults(func=_cmd_theorem_b)

    p = sub.add_parser("verify-theorem-c",
                       help="campaign: Sylow-2 trajectory certificates for all points")
    p.add_argument("group_file", type=Path)
    common(p)
    p.set_defaults(func=_cmd_theorem_c)

    p = sub.add_parser("validate-cert", help="re-validate a certificate file")
    p.add_argument("cert_file", type=Path)
    p.add_argument("group_file", type=Path)
    common(p, seeded=False)
    p.set_defaults(func=_cmd_validate_cert)

    p = sub.add_parser("make-group", help="construct a corpus group file")
    p.add_argument("kind", choices=["symmetric", "alternating", "cyclic", "dihedral",
                                    "psl2", "psl3_3", "direct", "wreath", "trivial"])
    p.add_argument("--n", type=int, default=None, help="degree/order parameter")
    p.add_argument("--q", type=int, default=None, help="field size for psl2")
    p.add_argument("--base", type=Path, default=None, help="base group file (wreath)")
    p.add_argument("--top", type=Path, default=None, help="top group file (wreath)")
    p.add_argument("--factors", type=Path, nargs="*", default=None,
                   help="factor group files (direct)")
    p.add_argument("--name", default=None)
    p.add_argument("--out-file", type=Path, required=True, dest="out_file")
    common(p, seeded=False)
    p.set_defaults(func=_cmd_make_group)

    p = sub.add_parser("scan", help="table of lambda and shortest-law bounds for a corpus")
    p.add_argument("corpus_dir", type=Path)
    p.add_argument("--max-length", type=int, default=3)
    common(p)
    p.set_defaults(func=_cmd_scan)

    return parser


# -- report plumbing ----------------------------------------------------------


def _write_report(args, name: str, doc: dict) -> None:
    if args.out is None:
        return
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / name).write_text(json.dumps(doc, indent=1))


def _status_exit(status: str) -> int:
    return {"PASS": OK, "FAIL": FAIL}.get(status, UNDECIDED)


def _witness_text(witness) -> list[str] | None:
    if witness is None:
        return None
    return [g.cycle_string() for g in witness]


# -- commands ------------------------------------------------------------------


def _cmd_lambda(args, caps: Caps) -> int:
    group = load(args.group_file, caps)
    value = nonsolvable_length(group, caps)
    print(value)
    _write_report(args, f"{group.name}_lambda.json",
                  {"command": "lambda", "group": group.name, "lambda": value,
                   "version": __version__})
    return OK


def _cmd_rs_series(args, caps: Caps) -> int:
    group = load(args.group_file, caps)
    series = rs_series(group, caps)
    lines = []
    for layer in series.layers:
        line = f"{layer.kind}{layer.index}  order={layer.subgroup.order()}"
        if layer.kind == "S" and layer.component_orders:
            line += f"  components={layer.component_count}x{layer.component_order}"
        print(line)
        lines.append(line)
    print(f"lambda={series.lamda}")
    doc = {
        "command": "rs-series", "group": group.name, "lambda": series.lamda,
        "complete": series.complete, "layers": lines, "version": __version__,
    }
    if not series.complete:
        doc["failure"] = series.failure
        _write_report(args, f"{group.name}_rs.json", doc)
        print(f"FAIL-TO-DECIDE: {series.failure}", file=sys.stderr)
        return UNDECIDED
    _write_report(args, f"{group.name}_rs.json", doc)
    return OK


def _cmd_nu(args, caps: Caps) -> int:
    group = load(args.group_file, caps)
    started = time.monotonic()
    result = nu(group, args.max_length, caps, seed=args.seed)
    print(result.describe())
    doc = {
        "command": "nu", "group": group.name, "max_length": args.max_length,
        "value": result.value, "law": str(result.law) if result.law else None,
        "lower_bound": result.lower_bound, "exact": result.exact,
        "words_checked": result.words_checked, "seed": args.seed,
        "version": __version__, "timing_s": round(time.monotonic() - started, 3),
    }
    _write_report(args, f"{group.name}_nu.json", doc)
    if result.exact or not result.inconclusive:
        return OK
    return UNDECIDED


def _cmd_witness(args, caps: Caps) -> int:
    group = load(args.group_file, caps)
    word = parse_word(args.word)
    report = non_law_witness(group, word, budget=args.budget, seed=args.seed, caps=caps)
    doc = {
        "command": "witness", "group": group.name, "word": str(word),
        "status": report.status.value, "witness": _witness_text(report.witness),
        "tuples_checked": report.tuples_checked, "seed": args.seed,
        "version": __version__,
    }
    _write_report(args, f"{group.name}_witness.json", doc)
    if report.status is LawStatus.NON_LAW_WITNESS:
        print(f"witness: {' , '.join(doc['witness'])}")
        return OK
    print("inconclusive: no witness within budget")
    return UNDECIDED


def _cmd_pn(args, caps: Caps) -> int:
    group = load(args.group_file, caps)
    mode = SearchMode.SYLOW2 if args.mode == "sylow2" else SearchMode.ANY_TUPLE
    started = time.monotonic()
    report = check_trajectory_property(group, args.n, mode, omega=args.omega,
                                       seed=args.seed, caps=caps)
    print(f"{report.status}  (n={args.n}, mode={args.mode}, words={len(report.lines)})")
    doc = _trajectory_doc("pn", report, args, started)
    _write_report(args, f"{group.name}_pn{args.n}.json", doc)
    _write_certificates(args, group.name, report)
    return _status_exit(report.status)


def _cmd_theorem_a(args, caps: Caps) -> int:
    group = load(args.group_file, caps)
    started = time.monotonic()
    report = verify_theorem_a(group, caps, seed=args.seed)
    print(f"theorem A on {group.name}: {report.status} (lambda={report.lamda})")
    doc = _law_campaign_doc("verify-theorem-a", report, args, started)
    _write_report(args, f"{group.name}_theorem_a.json", doc)
    return _status_exit(report.status)


def _cmd_theorem_b(args, caps: Caps) -> int:
    group = load(args.group_file, caps)
    started = time.monotonic()
    report = verify_theorem_b(group, caps, seed=args.seed)
    print(f"theorem B on {group.name}: {report.status} (lambda={report.lamda})")
    doc = _law_campaign_doc("verify-theorem-b", report, args, started)
    _write_report(args, f"{group.name}_theorem_b.json", doc)
    return _status_exit(report.status)


def _cmd_theorem_c(args, caps: Caps) -> int:
    group = load(args.group_file, caps)
    started = time.monotonic()
    report = verify_theorem_c(group, caps, seed=args.seed, workers=args.workers)
    print(f"theorem C on {group.name}: {report.status} "
          f"(lambda={report.n}, pairs={len(report.lines)})")
    doc = _trajectory_doc("verify-theorem-c", report, args, started)
    _write_report(args, f"{group.name}_theorem_c.json", doc)
    _write_certificates(args, group.name, report)
    return _status_exit(report.status)


def _trajectory_doc(command: str, report, args, started: float) -> dict:
    return {
        "command": command,
        "group": report.group_name,
        "n": report.n,
        "mode": report.mode,
        "status": report.status,
        "detail": report.detail,
        "seed": report.seed,
        "lines": [
            {
                "word": str(line.word),
                "omega": line.omega,
                "outcome": line.outcome.value,
                "certificate": line.certificate.to_dict() if line.certificate else None,
            }
            for line in report.lines
        ],
        "version": __version__,
        "timing_s": round(time.monotonic() - started, 3),
    }


def _law_campaign_doc(command: str, report, args, started: float) -> dict:
    return {
        "command": command,
        "group": report.group_name,
        "lambda": report.lamda,
        "status": report.status,
        "detail": report.detail,
        "seed": report.seed,
        "words": [
            {
                "word": str(line.word),
                "status": line.status.value,
                "witness": _witness_text(line.witness),
            }
            for line in report.lines
        ],
        "version": __version__,
        "timing_s": round(time.monotonic() - started, 3),
    }


def _write_certificates(args, group_name: str | None, report) -> None:
    if args.out is None:
        return
    certs_dir = args.out / f"{group_name or 'group'}_certs"
    certs_dir.mkdir(parents=True, exist_ok=True)
    for i, cert in enumerate(report.certificates()):
        cert.save(certs_dir / f"cert_{i:04d}.json")


def _cmd_validate_cert(args, caps: Caps) -> int:
    group = load(args.group_file, caps)
    cert = TrajectoryCertificate.load(args.cert_file)
    result = validate_certificate(cert, group, caps,
                                  require_sylow=cert.sylow_generators is not None)
    if result.ok:
        print("certificate valid")
        return OK
    for problem in result.problems:
        print(f"invalid: {problem}")
    return FAIL


def _cmd_make_group(args, caps: Caps) -> int:
    kind = args.kind
    params: dict = {}
    if kind in ("symmetric", "alternating", "cyclic", "dihedral"):
        if args.n is None:
            raise ValueError(f"{kind} requires --n")
        params["n"] = args.n
    elif kind == "psl2":
        if args.q is None:
            raise ValueError("psl2 requires --q")
        params["q"] = args.q
    elif kind == "wreath":
        if args.base is None or args.top is None:
            raise ValueError("wreath requires --base and --top")
        params["base"] = load(args.base, caps)
        params["top"] = load(args.top, caps)
        params["name"] = args.name
    elif kind == "direct":
        if not args.factors:
            raise ValueError("direct requires --factors")
        params["factors"] = [load(f, caps) for f in args.factors]
        params["name"] = args.name
    elif kind == "trivial":
        params["degree"] = args.n or 1
    group = make(kind, **params)
    if args.name:
        group.name = args.name
    save(group, args.out_file)
    print(f"wrote {args.out_file} (degree {group.degree}, order {group.order()})")
    return OK


def _cmd_scan(args, caps: Caps) -> int:
    rows = []
    files = sorted(args.corpus_dir.glob("*.json"))
    for path in files:
        if ".part" in path.name or path.name.count(".") > 1:
            continue  # certificate part files
        try:
            group = load(path, caps)
        except GroupFileError as exc:
            rows.append({"file": path.name, "error": str(exc)})
            continue
        row: dict = {"file": path.name, "group": group.name}
        try:
            row["lambda"] = nonsolvable_length(group, caps)
        except (CapExceeded, NoApplicablePath) as exc:
            row["lambda_error"] = str(exc)
        try:
            result = nu(group, args.max_length, caps, seed=args.seed)
            if result.exact:
                row["nu"] = result.value
                row["law"] = str(result.law)
            elif result.inconclusive:
                row["nu_inconclusive_at"] = result.lower_bound + 1
            else:
                row["nu_lower_bound"] = args.max_length
        except CapExceeded as exc:
            row["nu_error"] = str(exc)
        rows.append(row)
    for row in rows:
        if "error" in row:
            print(f"{row['file']}: {row['error']}")
            continue
        lam = row.get("lambda", row.get("lambda_error", "?"))
        if "nu" in row:
            nu_text = f"nu={row['nu']}"
        elif "nu_lower_bound" in row:
            nu_text = f"nu>{row['nu_lower_bound']}"
        else:
            nu_text = row.get("nu_inconclusive_at", row.get("nu_error", "?"))
            nu_text = f"nu?{nu_text}"
        print(f"{row.get('group', row['file'])}\tlambda={lam}\t{nu_text}")
    _write_report(args, "scan.json",
                  {"command": "scan", "max_length": args.max_length,
                   "rows": rows, "seed": args.seed, "version": __version__})
    return OK


if __name__ == "__main__":
    sys.exit(main())
