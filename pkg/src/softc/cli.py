"""Command-line front end.

Subcommands: ``compile`` (table file -> expression/netlist/schematic/SVG/
report files), ``verify``, ``simulate``, ``families``, and ``serve``.
Exit codes: 0 success, 1 input error, 2 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import layout, netlist, sim, truthtable
from .errors import InternalVerificationFailure, SoftcError
from .pipeline import compile_pipeline

EMIT_KINDS = ("expr", "netlist", "svg", "report", "schematic")
DEFAULT_PORT = 8000


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors: exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_window(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise SoftcError(f"window must look like COLSxROWS, got {text!r}")
    try:
        cols, rows = int(parts[0]), int(parts[1])
    except ValueError:
        raise SoftcError(f"window must look like COLSxROWS, got {text!r}") from None
    return cols, rows


def _load_table(path: str) -> truthtable.TruthTable:
    return truthtable.parse_truth_table(Path(path).read_text(encoding="utf-8"))


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_compile(args) -> int:
    table = _load_table(args.infile)
    output_index = (
        table.output_index(args.output) if args.output is not None else 0
    )
    window = _parse_window(args.window) if args.window else None
    emit = args.emit.split(",") if args.emit else list(EMIT_KINDS)
    for kind in emit:
        if kind not in EMIT_KINDS:
            raise SoftcError(
                f"unknown emit kind {kind!r}; choose from {','.join(EMIT_KINDS)}"
            )

    result = compile_pipeline(
        table,
        output_index=output_index,
        family_id=args.family,
        window=window,
    )

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if "expr" in emit:
        (out_dir / "expr.txt").write_text(
            result.optimized_expression + "\n", encoding="utf-8"
        )
    if "netlist" in emit:
        (out_dir / "netlist.json").write_text(
            _dump_json(netlist.netlist_to_struct(result.netlist)), encoding="utf-8"
        )
    if "report" in emit:
        (out_dir / "report.json").write_text(
            _dump_json(netlist.report_to_struct(result.report)), encoding="utf-8"
        )
    if "schematic" in emit:
        (out_dir / "schematic.json").write_text(
            _dump_json(layout.schematic_to_struct(result.schematic)),
            encoding="utf-8",
        )
    if "svg" in emit:
        for page, svg in zip(result.schematic.pages, result.svg_pages):
            (out_dir / f"page{page.number}.svg").write_text(svg, encoding="utf-8")

    report = result.report
    print(f"optimized:   {result.optimized_expression}")
    print(f"unoptimized: {result.unoptimized_expression}")
    print(
        f"devices: {report.total_devices} "
        f"(removed {report.devices_removed_by_optimization} by optimization)"
    )
    print(f"max propagation delay: {report.max_propagation_delay}")
    print(f"verified: {'yes' if result.verified else 'no'}")
    return 0


def _cmd_verify(args) -> int:
    with open(args.netlist, encoding="utf-8") as fh:
        n = netlist.netlist_from_struct(json.load(fh))
    table = _load_table(args.table)
    output_index = (
        table.output_index(args.output) if args.output is not None else 0
    )
    mismatch = sim.verify(n, table, output_index)
    if mismatch is None:
        print(f"verified: netlist matches all {2 ** table.n} rows")
        return 0
    bits = format(mismatch.row, f"0{table.n}b")
    print(
        f"mismatch at row {bits}: expected {mismatch.expected}, "
        f"got {mismatch.actual}",
        file=sys.stderr,
    )
    return 1


def _parse_bits(text: str, n: netlist.Netlist) -> dict[str, int]:
    if len(text) != len(n.inputs) or any(c not in "01" for c in text):
        raise SoftcError(
            f"expected {len(n.inputs)} bits over the netlist inputs, got {text!r}"
        )
    return {name: int(bit) for (name, _), bit in zip(n.inputs, text)}


def _cmd_simulate(args) -> int:
    with open(args.netlist, encoding="utf-8") as fh:
        n = netlist.netlist_from_struct(json.load(fh))
    family = netlist.get_family(n.family_id)
    initial = _parse_bits(args.from_bits, n)
    step = _parse_bits(args.to_bits, n)
    trace = sim.timed_simulate(n, family, initial, step)
    if args.csv:
        Path(args.csv).write_text(sim.trace_to_csv(trace), encoding="utf-8")
    print(_dump_json(sim.trace_to_struct(trace)), end="")
    return 0


def _cmd_families(args) -> int:
    payload = [netlist.family_to_struct(f) for f in netlist.family_registry()]
    print(_dump_json(payload), end="")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="softc",
        description="Compile truth tables into soft pneumatic logic circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a truth table file")
    p.add_argument("--in", dest="infile", required=True, help="truth table file")
    p.add_argument("--family", default="sbv", help="logic family id")
    p.add_argument("--output", default=None, help="output column name")
    p.add_argument("--out-dir", default=".", help="directory for emitted files")
    p.add_argument(
        "--emit",
        default=None,
        help=f"comma list of {','.join(EMIT_KINDS)} (default: all)",
    )
    p.add_argument("--window", default=None, help="page window, COLSxROWS")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("verify", help="check a netlist against a table")
    p.add_argument("--netlist", required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--output", default=None, help="output column name")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("simulate", help="timed simulation of one input step")
    p.add_argument("--netlist", required=True)
    p.add_argument("--from", dest="from_bits", required=True, help="initial input bits")
    p.add_argument("--to", dest="to_bits", required=True, help="stepped input bits")
    p.add_argument("--csv", default=None, help="also write the trace as CSV")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("families", help="list logic families")
    p.set_defaults(func=_cmd_families)

    p = sub.add_parser("serve", help="run the local compile service")
    p.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("SOFTC_PORT", DEFAULT_PORT)),
    )
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", default=None, help="directory of web UI assets")
    p.set_defaults(func=_cmd_serve)

    return parser


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InternalVerificationFailure as exc:
        print(f"softc: internal error: {exc.message}", file=sys.stderr)
        return 2
    except SoftcError as exc:
        print(f"softc: error: {exc.code}: {exc.message}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"softc: error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
