"""``birclass`` command line.

Exit codes: 0 success, 1 a computed result disagrees with the reference data,
2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__, formats, store
from . import candidates as cand
from .classify import (
    FAMILIES,
    ClassificationMismatch,
    cubic_cone,
    classify,
    enumerate_base_cached,
    gamma6,
    matches_reference,
    reference_audit,
    validate_table,
)
from .fourfolds import kuznetsov_admissible, table2_report
from .invariants import Profile, delta_invariant
from .tables import preliminary_table

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("birclass")

CANDIDATE_SETS = ("gamma5", "gamma5_ci", "gamma6", "preliminary")
VALIDATE_TABLES = ("1", "2", "3", "4", "5", "preliminary")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, default_format: str = "md") -> None:
    p.add_argument("--format", choices=formats.FORMATS, default=default_format)
    p.add_argument("--out", type=Path, help="write the result here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    p.add_argument("--strict-paper", action="store_true",
                   help="also audit intermediate counts and ranges against their reference values")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="birclass", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"birclass {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="build a candidate set and print its size")
    e.add_argument("set", choices=CANDIDATE_SETS)
    _common(e)

    c = sub.add_parser("classify", help="run a family's case analysis")
    c.add_argument("family", choices=tuple(FAMILIES) + ("all",))
    _common(c)

    v = sub.add_parser("validate", help="audit an embedded reference table")
    v.add_argument("table", choices=VALIDATE_TABLES)
    _common(v)

    d = sub.add_parser("delta", help="divisor label of a surface in a cubic fourfold")
    for name in ("lam", "g", "Delta", "d", "a"):
        d.add_argument(name, type=int)
    return ap


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _gamma(which: str, jobs: int) -> cand.CandidateSet:
    if which == "gamma5":
        return enumerate_base_cached(jobs)[0]
    if which == "gamma5_ci":
        return cubic_cone(jobs)[2]
    return gamma6(jobs)


def _audit(doc: formats.Document, jobs: int) -> bool:
    items = reference_audit(jobs)
    formats.add_section(doc, "reference_audit", (
        {"id": i.id, "expected": i.expected, "computed": i.computed, "status": i.status} for i in items))
    for i in items:
        if i.status == "info":
            log.warning("%s: reference %s, computed %s", i.id, i.expected, i.computed)
    return all(i.status != "fail" for i in items)


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.set == "preliminary":
        rows = cand.preliminary_classification()
        print(len(rows))
        doc = formats.new_document("enumerate preliminary", ["dimension-relations"])
        formats.add_section(doc, "preliminary", (formats.preliminary_to_dict(r) for r in rows))
        if args.out is not None:
            _emit(formats.dumps(doc, args.format), args.out)
        return EXIT_OK
    cs = _gamma(args.set, args.jobs)
    print(len(cs))
    if args.out is not None:
        store.write(cs, args.out)
    ok = True
    if args.strict_paper:
        doc = formats.new_document(f"enumerate {args.set}")
        ok = _audit(doc, args.jobs)
        sys.stdout.write(formats.dumps(doc, args.format))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_classify(args: argparse.Namespace) -> int:
    families = list(FAMILIES) if args.family == "all" else [args.family]
    doc = formats.new_document(f"classify {args.family}")
    ok = True
    for fam in families:
        try:
            res = classify(fam, args.jobs)
        except ClassificationMismatch as exc:
            log.error("%s", exc)
            formats.add_section(doc, "mismatches", [{"family": fam, "message": str(exc)}])
            ok = False
            continue
        formats.result_sections(doc, res)
        diffs = matches_reference(res.rows)
        for msg in diffs:
            log.error("%s", msg)
        formats.add_section(doc, "mismatches", ({"family": fam, "message": m} for m in diffs))
        ok = ok and not diffs
        doc["metadata"]["provenance"] = sorted(set(doc["metadata"]["provenance"]) |
                                               {r.provenance for r in res.rows})
    if args.strict_paper and "cubic" in families:
        ok = _audit(doc, args.jobs) and ok
    _emit(formats.dumps(doc, args.format), args.out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_validate(args: argparse.Namespace) -> int:
    doc = formats.new_document(f"validate {args.table}")
    if args.table == "2":
        recs = table2_report(strict=False)
        formats.add_section(doc, "fourfolds", (formats.fourfold_to_dict(r) for r in recs))
        ok = all(r.matches for r in recs)
    elif args.table == "preliminary":
        computed = [tuple(r) for r in cand.preliminary_classification()]
        reference = list(preliminary_table())
        missing = sorted(set(reference) - set(computed))
        extra = sorted(set(computed) - set(reference))
        formats.add_section(doc, "preliminary", (
            {"row": list(r), "status": "ok" if r in reference else "extra"} for r in computed))
        formats.add_section(doc, "mismatches", (
            {"row": list(r), "message": "reference row not derived"} for r in missing))
        ok = not missing and not extra
    else:
        reports = validate_table(args.table)
        formats.add_section(doc, "validation", (formats.report_to_dict(r) for r in reports))
        ok = all(r.ok for r in reports)
        for r in reports:
            for c in r.failures:
                log.error("%s: %s failed (%s)", r.table_id, c.id, c.value)
    if args.strict_paper:
        ok = _audit(doc, args.jobs) and ok
    _emit(formats.dumps(doc, args.format), args.out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_delta(args: argparse.Namespace) -> int:
    if args.d < 1 or args.lam < 1 or args.a < 0 or args.Delta < 1:
        print("birclass delta: need lambda >= 1, Delta >= 1, d >= 1 and a >= 0", file=sys.stderr)
        return EXIT_USAGE
    dv = delta_invariant(Profile(args.lam, args.g, args.Delta, args.d, args.a))
    print(f"delta={dv} admissible={str(kuznetsov_admissible(dv)).lower()}")
    return EXIT_OK


COMMANDS = {"enumerate": cmd_enumerate, "classify": cmd_classify,
            "validate": cmd_validate, "delta": cmd_delta}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except OSError as exc:
        print(f"birclass: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, store.CandidateFileError) as exc:
        print(f"birclass: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
