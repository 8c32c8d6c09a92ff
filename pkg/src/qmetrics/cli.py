"""``qmetrics`` command line."""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .design import DesignFormat
from .report import (
    DIALECT_NAMES,
    Options,
    analyze_path,
    build_report,
    expand_paths,
    render_dot,
    render_json,
    render_text,
)


def read_gate_set(path: str) -> frozenset[str]:
    names = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        names.update(line.split("#", 1)[0].lower().split())
    return frozenset(names)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmetrics", description="Size and structure metrics for quantum programs.")
    sub = parser.add_subparsers(dest="command", required=True)
    analyze = sub.add_parser("analyze", help="analyse programs and design documents")
    analyze.add_argument("paths", nargs="+")
    analyze.add_argument("--recursive", action="store_true", help="descend into directories")
    analyze.add_argument("--dialect", choices=sorted(DIALECT_NAMES), help="force the program dialect")
    analyze.add_argument("--design-format", choices=[f.value for f in DesignFormat], help="force a design format")
    analyze.add_argument("--format", choices=("json", "text"), default="json")
    analyze.add_argument("--gate-set", metavar="FILE", help="file of gate names, whitespace separated")
    analyze.add_argument("--classical-cfg", action="store_true", help="omit the loop fallthrough edge")
    analyze.add_argument("--emit-cfg", choices=("dot",), help="print control-flow graphs instead of the report")
    analyze.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.dialect and args.design_format:
        parser.error("--dialect and --design-format are mutually exclusive")

    opts = Options(
        classical_cfg=args.classical_cfg,
        dialect=DIALECT_NAMES[args.dialect] if args.dialect else None,
        design_format=DesignFormat(args.design_format) if args.design_format else None,
    )
    if args.gate_set:
        try:
            gates = read_gate_set(args.gate_set)
        except OSError as exc:
            parser.error(f"cannot read gate set: {exc}")
        opts = Options(gates, opts.classical_cfg, opts.dialect, opts.design_format)

    paths = expand_paths(args.paths, args.recursive, opts)
    if args.emit_cfg:
        text, errors = render_dot(paths, opts)
        for err in errors:
            print(err, file=sys.stderr)
        failed = bool(errors)
    else:
        # map() yields in submission order, so the report stays sorted by path
        with ThreadPoolExecutor() as pool:
            records = list(pool.map(lambda item: analyze_path(item[0], opts, item[1]), paths))
        report = build_report(records, opts)
        text = render_json(report) if args.format == "json" else render_text(report)
        failed = any(r.errors for r in records)

    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
