"""Command-line front end.

Charges are given ``q0`` first: ``--charges q0,p1,p2,p3``. The brane-count
aliases ``--nD0 --kD4 --mD4 --lD4`` stand for q0, p1, p2, p3.

Environment:
  STU_FAMILIES_PRECISION    significant digits for floats in output (1-17, default 17)
  STU_FAMILIES_MAX_WORKERS  upper bound on batch worker processes (default: CPU count)

Exit codes: 0 success, 1 some batch records failed, 2 usage or precondition error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import dictionaries as dl
from .invariants import cayley_hyperdet, delta
from .report import DEFAULT_DIGITS, analyze, dumps, render_text
from .schmidt import (
    build_sd_unitaries,
    eta_coefficients,
    full_charges_to_state,
    phase_canonicalize,
    sd_transform,
)
from .state import ChargeVector, FullChargeVector

log = logging.getLogger(__name__)

EXIT_OK, EXIT_PARTIAL, EXIT_USAGE = 0, 1, 2
CHARGE_ORDER = ("q0", "p1", "p2", "p3")
ALIASES = {"nD0": "q0", "kD4": "p1", "mD4": "p2", "lD4": "p3"}
# Options whose value may start with "-" and contain commas.
_LIST_OPTIONS = ("--charges", "--full-charges", "--swap", "--assign")


class UsageError(Exception):
    pass


def _digits() -> int:
    raw = os.environ.get("STU_FAMILIES_PRECISION", "")
    if not raw:
        return DEFAULT_DIGITS
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"STU_FAMILIES_PRECISION must be an integer, got {raw!r}")
    if not 1 <= value <= 17:
        raise UsageError("STU_FAMILIES_PRECISION must be between 1 and 17")
    return value


def _worker_cap() -> int:
    raw = os.environ.get("STU_FAMILIES_MAX_WORKERS", "")
    if not raw:
        return os.cpu_count() or 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"STU_FAMILIES_MAX_WORKERS must be an integer, got {raw!r}")


def _parse_int(text, name: str) -> int:
    if isinstance(text, bool):
        raise UsageError(f"{name} must be an integer, got {text!r}")
    if isinstance(text, int):
        return text
    if isinstance(text, str):
        try:
            return int(text.strip())
        except ValueError:
            pass
    raise UsageError(f"{name} must be an integer, got {text!r}")


def charges_from_mapping(values: dict) -> ChargeVector:
    """Build a ChargeVector from ``{q0, p1, p2, p3}`` or the brane aliases."""
    resolved = {}
    for key, value in values.items():
        name = ALIASES.get(key, key)
        if name not in CHARGE_ORDER:
            raise UsageError(f"unknown charge field {key!r}")
        if name in resolved:
            raise UsageError(f"charge {name} given twice")
        resolved[name] = _parse_int(value, name)
    missing = [n for n in CHARGE_ORDER if n not in resolved]
    if missing:
        raise UsageError(f"missing charge(s): {', '.join(missing)}")
    for name in CHARGE_ORDER:
        if resolved[name] == 0:
            raise UsageError(f"{name} must be non-zero")
    return ChargeVector(resolved["p1"], resolved["p2"], resolved["p3"], resolved["q0"])


def _charges_from_args(args) -> ChargeVector:
    aliases = {k: getattr(args, k) for k in ALIASES if getattr(args, k) is not None}
    if args.charges is not None:
        if aliases:
            raise UsageError("use either --charges or the brane aliases, not both")
        parts = args.charges.split(",")
        if len(parts) != 4:
            raise UsageError("--charges takes four comma-separated integers q0,p1,p2,p3")
        return charges_from_mapping(dict(zip(CHARGE_ORDER, parts)))
    if not aliases:
        raise UsageError("give --charges q0,p1,p2,p3 or all of --nD0 --kD4 --mD4 --lD4")
    return charges_from_mapping(aliases)


def _add_charge_options(p: argparse.ArgumentParser):
    p.add_argument("--charges", metavar="Q0,P1,P2,P3", help="non-zero integer charges, q0 first")
    for alias, name in ALIASES.items():
        p.add_argument(f"--{alias}", type=int, metavar="N", help=f"alias for {name}")
    p.add_argument("--json", action="store_true", help="emit a single JSON object")


def cmd_classify(args) -> int:
    report = analyze(_charges_from_args(args))
    digits = _digits()
    print(dumps(report.to_dict(), digits) if args.json else render_text(report, digits))
    return EXIT_OK


def _complex_pair(z: complex) -> list:
    return [z.real, z.imag]


def cmd_sd(args) -> int:
    c = _charges_from_args(args)
    digits = _digits()
    ua, ub, uc, inter = build_sd_unitaries(c)
    inter = eta_coefficients(c, inter, (ua, ub, uc))
    form = phase_canonicalize(inter, math.sqrt(c.norm_squared()))
    chain = sd_transform(c)
    out = {
        "charges": {"q0": c.q0, "p1": c.p1, "p2": c.p2, "p3": c.p3},
        "branch": "BPS" if inter.bps else "non-BPS",
        "t": _complex_pair(inter.t),
        "k": _complex_pair(inter.k),
        "a": inter.a,
        "b": _complex_pair(inter.b),
        "chi": inter.chi,
        "etas": [_complex_pair(e) for e in inter.etas],
        "thetas": list(inter.thetas),
        "unitaries": {u.qubit: [[_complex_pair(x) for x in row] for row in u.matrix.tolist()] for u in (ua, ub, uc)},
        "lu_chain": {u.qubit: [[_complex_pair(x) for x in row] for row in u.matrix.tolist()] for u in chain},
        "lambdas": list(form.lambdas),
        "phi": form.phi,
        "norm_factor": form.norm_factor,
        "unnormalized_etas": list(form.unnormalized_etas),
    }
    if args.json:
        print(dumps(out, digits))
        return EXIT_OK
    fmt = lambda x: format(x, f".{digits}g")  # noqa: E731
    cfmt = lambda z: f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}j"  # noqa: E731
    print(f"branch       {out['branch']}")
    print(f"t, k         {cfmt(inter.t)}, {cfmt(inter.k)}")
    print(f"a, b, chi    {fmt(inter.a)}, {cfmt(inter.b)}, {fmt(inter.chi)}")
    for u in (ua, ub, uc):
        rows = "; ".join(", ".join(cfmt(x) for x in row) for row in u.matrix.tolist())
        print(f"U{u.qubit}           [{rows}]")
    labels = ("000", "100", "101", "110", "111")
    print("eta form     " + " + ".join(f"({cfmt(e)})|{lab}>" for e, lab in zip(inter.etas, labels)))
    etas = form.unnormalized_etas
    print(
        "canonical    "
        f"{fmt(etas[0])}|000> + {fmt(etas[1])}e^(i {fmt(form.phi)})|100> + "
        f"{fmt(etas[2])}|101> + {fmt(etas[3])}|110> + {fmt(etas[4])}|111>"
    )
    print("lambdas      " + ", ".join(fmt(x) for x in form.lambdas) + f"  (mu = 1/{fmt(form.norm_factor)})")
    return EXIT_OK


def cmd_invariants(args) -> int:
    digits = _digits()
    if args.full_charges is not None:
        if args.charges is not None or any(getattr(args, k) is not None for k in ALIASES):
            raise UsageError("use either --full-charges or four-charge input, not both")
        parts = args.full_charges.split(",")
        if len(parts) != 8:
            raise UsageError("--full-charges takes eight integers p0,p1,p2,p3,q0,q1,q2,q3")
        values = [_parse_int(x, n) for x, n in zip(parts, FullChargeVector.names())]
        full = FullChargeVector(*values)
    else:
        full = _charges_from_args(args).to_full()
    d = delta(full)
    det = cayley_hyperdet(full_charges_to_state(full))
    out = {
        "charges": dict(zip(FullChargeVector.names(), full.as_tuple())),
        "delta": d,
        "det_psi": det,
        "dictionary_holds": d == det,
        "three_tangle_unnormalized": 4 * abs(det),
        "entropy": 0.5 * math.pi * math.sqrt(4 * abs(det)),
    }
    if args.json:
        print(dumps(out, digits))
    else:
        print(f"delta        {d}")
        print(f"det psi      {det}  ({'equal' if d == det else 'NOT equal'})")
        print(f"entropy      {format(out['entropy'], f'.{digits}g')}")
    return EXIT_OK


# -- batch -------------------------------------------------------------------


def read_records(text: str) -> list:
    """Split batch input into raw records: dicts, or exceptions for bad lines."""
    stripped = text.lstrip("﻿")
    if not stripped.strip():
        return []
    if stripped.lstrip().startswith("{"):
        records = []
        for line in stripped.splitlines():
            if not line.strip():
                continue
            try:
                value = json.loads(line)
                if not isinstance(value, dict):
                    raise ValueError("record is not a JSON object")
                records.append(value)
            except ValueError as exc:
                records.append(UsageError(f"malformed JSON record: {exc}"))
        return records
    reader = csv.DictReader(io.StringIO(stripped))
    fields = [ALIASES.get(f.strip(), f.strip()) for f in reader.fieldnames or []]
    if sorted(fields) != sorted(CHARGE_ORDER):
        raise UsageError(f"CSV header must name q0,p1,p2,p3, got {reader.fieldnames}")
    records = []
    for row in reader:
        if None in row or any(v is None for v in row.values()):
            records.append(UsageError("CSV row has the wrong number of fields"))
            continue
        records.append({k.strip(): v for k, v in row.items()})
    return records


def process_record(item) -> tuple:
    """Worker: ``(index, raw, digits) -> (json line, family or None)``."""
    index, raw, digits = item
    try:
        if isinstance(raw, Exception):
            raise raw
        report = analyze(charges_from_mapping(raw))
    except (UsageError, ValueError, TypeError) as exc:
        return dumps({"record": index, "status": "error", "error": str(exc)}, digits), None
    line = dumps({"record": index, "status": "ok", "report": report.to_dict()}, digits)
    return line, report.family.id


def cmd_batch(args) -> int:
    digits = _digits()
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}")
    records = read_records(text)
    items = [(i, raw, digits) for i, raw in enumerate(records, start=1)]
    workers = min(max(1, args.parallel), _worker_cap())
    if workers > 1 and len(items) > 1:
        log.info("processing %d records with %d workers", len(items), workers)
        chunk = max(1, len(items) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(process_record, items, chunksize=chunk))
    else:
        results = [process_record(item) for item in items]

    counts = {str(f): 0 for f in range(1, 8)}
    errors = 0
    lines = []
    for line, family in results:
        lines.append(line)
        if family is None:
            errors += 1
        else:
            counts[str(family)] += 1
    summary = {"records": len(results), "ok": len(results) - errors, "errors": errors, "families": counts}
    lines.append(dumps({"summary": summary}, digits))
    payload = "\n".join(lines) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_PARTIAL if errors else EXIT_OK


# -- dictionaries -------------------------------------------------------------


def cmd_dict_enumerate(args) -> int:
    rows = []
    for signs in dl.enumerate_dictionaries():
        label = dl.reference_label(signs)
        rows.append(
            {
                "delta": list(signs.delta),
                "charge_signs": signs.charge_signs(),
                "reference": label if label and not label.startswith("-") else "",
                "negation_of": label[1:] if label.startswith("-") else "",
            }
        )
    if args.json:
        print(dumps({"count": len(rows), "dictionaries": rows}))
        return EXIT_OK
    header = "  ".join(f"{n:>3}" for n in dl.CHARGE_NAMES)
    print(f"     {header}   note")
    for i, row in enumerate(rows, start=1):
        cells = "  ".join(f"{row['charge_signs'][n]:>+3d}" for n in dl.CHARGE_NAMES)
        note = f"reference {row['reference']}" if row["reference"] else f"-({row['negation_of']})"
        print(f"{i:>3}  {cells}   {note}")
    print(f"{len(rows)} dictionaries")
    return EXIT_OK


def _parse_label(text: str) -> int:
    text = text.strip()
    if len(text) == 3 and set(text) <= {"0", "1"}:
        return int(text, 2)
    raise UsageError(f"basis label must be three bits like 011, got {text!r}")


def cmd_dict_verify(args) -> int:
    if args.dictionary not in dl.REFERENCE_DICTIONARIES:
        raise UsageError(f"--dictionary must be one of {', '.join(dl.REFERENCE_DICTIONARIES)}")
    if args.assign is not None:
        if args.swap is not None:
            raise UsageError("use either --swap or --assign")
        assignment = {}
        for part in args.assign.split(","):
            name, _, label = part.partition("=")
            name = name.strip()
            if name not in dl.CHARGE_NAMES or name in assignment:
                raise UsageError(f"bad assignment entry {part!r}")
            assignment[name] = _parse_label(label)
        if set(assignment) == set(dl.MAGNETIC):
            assignment = dl.complete_assignment(assignment)
        try:
            signs = dl.SignVector.from_charge_signs(dl.REFERENCE_DICTIONARIES[args.dictionary], assignment)
            corr = dl.Correspondence(assignment, signs)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"invalid correspondence: {exc}")
        description = "custom assignment"
    else:
        spec = (args.swap or "none").strip()
        if spec.lower() == "none":
            corr = dl.duff_correspondence(args.dictionary)
            description = "Duff correspondence"
        else:
            parts = [p.strip() for p in spec.split(",")]
            if len(parts) != 2 or parts[0] == parts[1]:
                raise UsageError("--swap takes two distinct magnetic charges like p1,p2, or 'none'")
            try:
                corr = dl.duff_swap(parts[0], parts[1], args.dictionary)
            except ValueError as exc:
                raise UsageError(str(exc))
            description = f"Duff correspondence with {parts[0]} <-> {parts[1]}"
    residual = dl.correspondence_residual(corr)
    ok = residual.is_zero()
    if args.json:
        print(
            dumps(
                {
                    "correspondence": {n: format(corr.assignment[n], "03b") for n in dl.CHARGE_NAMES},
                    "charge_signs": corr.signs.charge_signs(corr.assignment),
                    "holds": ok,
                    "residual": str(residual),
                }
            )
        )
    else:
        print(f"{description} ({args.dictionary} signs)")
        print("  " + ", ".join(f"{n}->|{corr.assignment[n]:03b}>" for n in dl.CHARGE_NAMES))
        print("true" if ok else "false")
        print(f"residual: {residual}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stu-families",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="family, Schmidt form and invariants of one black hole")
    _add_charge_options(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sd", help="explicit Schmidt decomposition with the unitaries used")
    _add_charge_options(p)
    p.set_defaults(func=cmd_sd)

    p = sub.add_parser("invariants", help="quartic invariant and hyperdeterminant")
    _add_charge_options(p)
    p.add_argument("--full-charges", metavar="P0,P1,P2,P3,Q0,Q1,Q2,Q3", help="all eight charges")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("batch", help="analyse a JSON-lines or CSV file of charge vectors")
    p.add_argument("--input", required=True, help="JSON-lines ({\"q0\":..}) or CSV with header q0,p1,p2,p3")
    p.add_argument("--output", help="output JSON-lines path (default: stdout)")
    p.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes (default 1)")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("dictionaries", help="charge/amplitude dictionaries")
    dsub = p.add_subparsers(dest="action", required=True)
    e = dsub.add_parser("enumerate", help="all sign dictionaries of Duff's correspondence")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_dict_enumerate)
    v = dsub.add_parser("verify", help="check a correspondence by polynomial identity")
    v.add_argument("--swap", metavar="PA,PB", help="exchange two magnetic charges, or 'none'")
    v.add_argument(
        "--assign",
        metavar="NAME=BITS,...",
        help="explicit placement, e.g. p0=000,p1=010,p2=001,p3=100 (electric charges follow by complement)",
    )
    v.add_argument("--dictionary", default=dl.WORKING_DICTIONARY, help="reference dictionary supplying the signs (default C2)")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_dict_verify)
    return parser


def _join_list_values(argv: list) -> list:
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _LIST_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] != "-":
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_list_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
