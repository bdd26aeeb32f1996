"""Command-line surface: counting, trace tables, covering sets, reports.

Every invocation emits one self-describing JSON document (schema
"cy-modularity/1"); trace tables can be emitted as CSV instead.  With
--no-timing the output is byte-stable across identical invocations.

Exit codes: 0 success / verdict modular, 1 verification mismatch or
inconclusive verdict, 2 argument error, 3 unsupported characteristic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .errors import (
    ArgumentError,
    CymodError,
    IncompleteFixtureError,
    InsufficientLimitError,
    UnsupportedCharacteristicError,
)
from .ffarith import Cubic
from .fixtures import TWIST_LEVELS, fixture, fixture_from_document
from .livne import (
    attach_sign_vectors,
    find_covering,
    ramification_set,
    verify_modularity,
    xi_erratum_note,
    xi_vector,
)
from .qseries import level6_form
from .surface import INF
from .threefold import (
    TraceRecord,
    cusp_breakdown,
    generic_sum,
    get_twist,
    good_primes,
    lefschetz_trace,
    node_census,
    p3_count_note,
    prefill_plane_counts,
    total_count,
    trace_table,
)

SCHEMA = "cy-modularity/1"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ARGUMENT = 2
EXIT_CHARACTERISTIC = 3


def _document(command: str, arguments: dict, payload: dict, started: float,
              no_timing: bool) -> dict:
    doc = {
        "schema": SCHEMA,
        "command": command,
        "arguments": arguments,
        "payload": payload,
    }
    if not no_timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    return doc


def _print_json(doc: dict, out) -> None:
    json.dump(doc, out, indent=2, sort_keys=True)
    out.write("\n")


def _cusp_label(c) -> str:
    return "oo" if c is INF else str(c)


def _xi_bits(xi) -> str:
    return "".join(str(b) for b in xi) if xi is not None else ""


def _threads(args) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise ArgumentError("--threads must be at least 1")
        return args.threads
    return os.cpu_count() or 1


def cmd_count(args, out) -> int:
    started = time.perf_counter()
    aut = get_twist(args.twist)
    blocks = [
        {
            "cusp": _cusp_label(row["cusp"]),
            "partner": _cusp_label(row["partner"]),
            "pair": list(row["pair"]),
            "fibre_counts": list(row["fibre_counts"]),
            "fixed_node_pairs": row["fixed_node_pairs"],
            "contribution": row["contribution"],
        }
        for row in cusp_breakdown(aut, args.prime)
    ]
    generic = generic_sum(aut, args.prime)
    payload = {
        "twist": aut.name,
        "p": args.prime,
        "count": sum(b["contribution"] for b in blocks) + generic,
        "cusps": blocks,
        "generic_sum": generic,
        "h11": node_census(aut).h11,
    }
    _print_json(
        _document("count", {"twist": args.twist, "prime": args.prime},
                  payload, started, args.no_timing),
        out,
    )
    return EXIT_OK


def _trace_rows(aut, p_max: int, include_char3: bool, threads: int):
    records = trace_table(aut, p_max, include_char3=include_char3, threads=threads)
    return attach_sign_vectors(records, ramification_set(aut))


def cmd_trace(args, out) -> int:
    started = time.perf_counter()
    aut = get_twist(args.twist)
    records = _trace_rows(aut, args.pmax, args.allow_char3, _threads(args))
    census = node_census(aut)
    S = ramification_set(aut)
    flags = [
        note
        for r in records
        if r.p == 3 and (note := p3_count_note(aut, r.count)) is not None
    ]
    flags += [
        note for r in records if (note := xi_erratum_note(S, r.p)) is not None
    ]
    if args.format == "csv":
        out.write("p,xi,count,trace\n")
        for r in records:
            out.write(f"{r.p},{_xi_bits(r.xi)},{r.count},{r.trace}\n")
        for note in flags:
            print(f"note: p=3 count {note['computed_count']} differs from the "
                  f"cited value {note['reference_count']}", file=sys.stderr)
        return EXIT_OK
    payload = {
        "twist": aut.name,
        "e": census.euler,
        "S": list(S),
        "rows": [
            {"p": r.p, "xi": list(r.xi) if r.xi else None,
             "count": r.count, "trace": r.trace}
            for r in records
        ],
        "discrepancies": flags,
    }
    if not records:
        payload["notice"] = (
            f"no good primes for {aut.name} up to {args.pmax}"
            + ("" if args.allow_char3 else " (p=3 excluded by default)")
        )
    _print_json(
        _document("trace", {"twist": args.twist, "pmax": args.pmax,
                            "allow_char3": args.allow_char3,
                            "format": args.format},
                  payload, started, args.no_timing),
        out,
    )
    return EXIT_OK


def _load_cubics(path: str) -> tuple[Cubic, ...]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return tuple(Cubic(*coeffs) for coeffs in raw)


def cmd_verify(args, out) -> int:
    started = time.perf_counter()
    aut = get_twist(args.twist)
    if args.fixture_file:
        with open(args.fixture_file, encoding="utf-8") as fh:
            fix = fixture_from_document(json.load(fh))
        level = fix.level
    else:
        level = args.fixture_level or TWIST_LEVELS[aut.name]
        eta_terms = max(200, args.plimit) if level == 6 else 200
        fix = fixture(level, eta_terms=eta_terms)
    char3 = True if args.allow_char3 else (False if args.no_char3 else "auto")
    cubics = _load_cubics(args.cubics) if args.cubics else None
    report = verify_modularity(
        aut, fix, p_limit=args.plimit, char3=char3, cubics=cubics,
        threads=_threads(args),
    )
    _print_json(
        _document("verify", {"twist": args.twist, "fixture_level": level,
                             "plimit": args.plimit},
                  report.to_document(), started, args.no_timing),
        out,
    )
    if report.verdict != "modular":
        if report.first_mismatch is not None:
            print(f"verdict {report.verdict}: first differing prime "
                  f"{report.first_mismatch}", file=sys.stderr)
        else:
            print(f"verdict {report.verdict}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_eta(args, out) -> int:
    started = time.perf_counter()
    form = level6_form(args.nmax)
    payload = {"n_max": args.nmax, "coefficients": list(form.coeffs)}
    _print_json(
        _document("eta", {"nmax": args.nmax}, payload, started, args.no_timing),
        out,
    )
    return EXIT_OK


def cmd_selfcheck(args, out) -> int:
    started = time.perf_counter()
    aut = get_twist("identity")
    primes = [p for p in good_primes(aut, args.pmax) if p >= 5]
    prefill_plane_counts(primes, _threads(args))
    form = level6_form(max(args.pmax, 2))
    rows = []
    for p in primes:
        tr = lefschetz_trace(aut, p)
        ap = form.coefficient(p)
        rows.append({"p": p, "trace": tr, "ap": ap, "match": tr == ap})
    mismatches = [r["p"] for r in rows if not r["match"]]
    payload = {
        "pmax": args.pmax,
        "rows": rows,
        "all_match": not mismatches,
        "mismatches": mismatches,
    }
    if not rows:
        payload["notice"] = (
            f"no good primes for the self product up to {args.pmax} "
            "(2 and 3 are bad)"
        )
    _print_json(
        _document("selfcheck", {"pmax": args.pmax}, payload, started,
                  args.no_timing),
        out,
    )
    return EXIT_OK if not mismatches else EXIT_MISMATCH


def cmd_covering(args, out) -> int:
    started = time.perf_counter()
    S = tuple(sorted(args.set))
    if 2 not in S:
        raise ArgumentError(f"S must contain 2, got {list(S)}")
    exclude = tuple(args.exclude or ())
    primes = find_covering(S, args.limit, exclude)
    payload = {
        "S": list(S),
        "limit": args.limit,
        "exclude": list(exclude),
        "covering": [
            {"p": p, "xi": list(xi_vector(p, S))} for p in primes
        ],
    }
    _print_json(
        _document("covering", {"set": list(S), "limit": args.limit,
                               "exclude": list(exclude)},
                  payload, started, args.no_timing),
        out,
    )
    return EXIT_OK


def parse_trace_document(doc: dict) -> list[TraceRecord]:
    """Rebuild TraceRecords from a cmd_trace JSON document."""
    twist = doc["payload"]["twist"]
    return [
        TraceRecord(
            twist,
            row["p"],
            row["count"],
            row["trace"],
            tuple(row["xi"]) if row["xi"] else None,
        )
        for row in doc["payload"]["rows"]
    ]


def parse_trace_csv(text: str, twist: str) -> list[TraceRecord]:
    """Rebuild TraceRecords from cmd_trace CSV output."""
    import csv
    import io

    records = []
    for row in csv.DictReader(io.StringIO(text)):
        xi = tuple(int(b) for b in row["xi"]) if row["xi"] else None
        records.append(
            TraceRecord(twist, int(row["p"]), int(row["count"]),
                        int(row["trace"]), xi)
        )
    return records


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cymod",
        description="Point counts, traces and modularity checks for the "
        "twisted self fibre products of the level-6 elliptic surface.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--no-timing", action="store_true",
                       help="suppress the timing block (byte-stable output)")
        p.add_argument("--threads", type=int, default=None,
                       help="worker processes for the counting layer "
                       "(default: all cores)")

    p = sub.add_parser("count", help="point count of one twist at one prime")
    p.add_argument("--twist", required=True)
    p.add_argument("--prime", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("trace", help="trace table over all good primes")
    p.add_argument("--twist", required=True)
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--allow-char3", action="store_true",
                   help="include p=3 via the characteristic-3 fibre rules")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", help="modularity verification report")
    p.add_argument("--twist", required=True)
    p.add_argument("--plimit", type=int, default=200)
    p.add_argument("--fixture-level", type=int, default=None)
    p.add_argument("--fixture-file", default=None,
                   help="JSON fixture document to verify against instead of "
                   "the embedded data")
    p.add_argument("--allow-char3", action="store_true",
                   help="admit p=3 into the covering set unconditionally")
    p.add_argument("--no-char3", action="store_true",
                   help="ban p=3 from the covering set and the comparisons")
    p.add_argument("--cubics", default=None,
                   help="JSON file with cubic coefficient quadruples for the "
                   "parity certificates")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eta", help="coefficients of the level-6 eta product")
    p.add_argument("--nmax", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("selfcheck",
                       help="self product traces vs the eta expansion")
    p.add_argument("--pmax", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_selfcheck)

    p = sub.add_parser("covering", help="covering set of primes for Q[S]")
    p.add_argument("--set", type=_int_list, required=True,
                   help="comma-separated primes of S (must contain 2)")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--exclude", type=_int_list, default=None)
    common(p)
    p.set_defaults(func=cmd_covering)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ARGUMENT
    try:
        return args.func(args, out)
    except UnsupportedCharacteristicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHARACTERISTIC
    except (ArgumentError, InsufficientLimitError, IncompleteFixtureError,
            OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except CymodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT


def entrypoint() -> None:
    raise SystemExit(main())
