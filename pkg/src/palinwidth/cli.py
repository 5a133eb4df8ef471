"""Command-line interface: ``palinwidth {width,verify,survey}``.

Exit codes: 0 success (or inconclusive), 2 invalid input, 3 capacity
exceeded, 4 a verification failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from palinwidth.analysis import (
    GENSET_MODES,
    SURVEY_COLUMNS,
    RunConfig,
    survey_rows,
    verify_report,
    width_report,
)
from palinwidth.errors import CapacityError, InvariantViolation, PalinwidthError
from palinwidth.group import default_max_order

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY, EXIT_VERIFY = 0, 2, 3, 4


def _common(p: argparse.ArgumentParser):
    p.add_argument("--max-order", type=int, default=None,
                   help="element cap (default 2000000, or $PALINWIDTH_MAX_ORDER)")
    p.add_argument("--max-relation-len", type=int, default=12)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="palinwidth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("width", "verify"):
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--group", help="catalog name: A5, S4, PSL(2,7), D8, C6, ...")
        src.add_argument("--genset-file", help="generating-set file ('degree N' + 'label = cycles')")
        p.add_argument("--genset", choices=GENSET_MODES, default="as-given")
        _common(p)
        if name == "width":
            p.add_argument("--timings", action="store_true", help="include per-phase wall times")
        else:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--samples", type=int, default=1000)

    p = sub.add_parser("survey")
    p.add_argument("--group", action="append", default=[], help="repeatable")
    p.add_argument("--genset", action="append", choices=GENSET_MODES, default=[], help="repeatable")
    _common(p)
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        group=getattr(args, "group", None),
        genset_file=getattr(args, "genset_file", None),
        genset=args.genset,
        max_order=args.max_order or default_max_order(),
        max_relation_len=args.max_relation_len,
        format=args.format,
        seed=getattr(args, "seed", 0),
        samples=getattr(args, "samples", 1000),
        timings=getattr(args, "timings", False),
    )


def _flat(report: dict) -> dict:
    out = {}
    for k, v in report.items():
        if isinstance(v, dict):
            for k2, v2 in v.items():
                out[f"{k}.{k2}"] = json.dumps(v2) if isinstance(v2, (dict, list)) else v2
        elif isinstance(v, list):
            out[k] = " ".join(map(str, v))
        else:
            out[k] = v
    return out


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: ("" if r.get(c) is None else r.get(c)) for c in columns})
    return buf.getvalue()


def _text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = " " * indent
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 2))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(l for l in lines if l)


def render(report, fmt: str, columns=None) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        if isinstance(report, list):
            return _csv(report, columns)
        flat = _flat(report)
        return _csv([flat], flat.keys())
    if isinstance(report, list):
        return _csv(report, columns).replace(",", "\t")
    return _text(report) + "\n"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(kind: str, exc: Exception, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc), "exit_code": code}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "survey":
            cfg_max = args.max_order or default_max_order()
            base = RunConfig(group="C1", max_order=cfg_max, max_relation_len=args.max_relation_len)
            rows = survey_rows(args.group, args.genset or ["as-given"], base)
            _emit(render(rows, args.format, SURVEY_COLUMNS), args.out)
            return EXIT_VERIFY if any(r["status"] == "fail" for r in rows) else EXIT_OK

        config = _config(args)
        if args.command == "width":
            report = width_report(config)
            bad = [k for k, v in report["verdicts"].items() if v == "fail"]
            _emit(render(report, config.format), args.out)
            if bad:
                return _error("verification", InvariantViolation(f"failed: {', '.join(bad)}"), EXIT_VERIFY)
            return EXIT_OK

        report = verify_report(config)
        _emit(render(report, config.format), args.out)
        inconclusive = [k for k, v in report["verdicts"].items() if v["verdict"] == "inconclusive"]
        if inconclusive:
            sys.stderr.write(f"warning: inconclusive: {', '.join(inconclusive)}\n")
        if report["failed"]:
            return _error("verification", InvariantViolation(f"violated: {', '.join(report['failed'])}"),
                          EXIT_VERIFY)
        return EXIT_OK
    except CapacityError as exc:
        return _error("capacity", exc, EXIT_CAPACITY)
    except InvariantViolation as exc:
        return _error("verification", exc, EXIT_VERIFY)
    except (PalinwidthError, ValueError, OSError) as exc:
        return _error("invalid-input", exc, EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
