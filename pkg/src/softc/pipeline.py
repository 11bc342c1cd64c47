"""Full compile pipeline: table -> SOP -> minimal SOP -> gates -> schematic.

Every compilation is verified exhaustively against its source table before
the result is returned; a verification failure is a compiler bug, not a
user error, and raises :class:`InternalVerificationFailure`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import boolmin, layout, netlist, sim, truthtable
from .errors import InternalVerificationFailure
from .layout import Schematic
from .netlist import CircuitReport, Netlist
from .truthtable import TruthTable


@dataclass(frozen=True)
class CompileResult:
    unoptimized_expression: str
    optimized_expression: str
    netlist: Netlist
    schematic: Schematic
    svg_pages: tuple[str, ...]
    report: CircuitReport
    verified: bool


def compile_result_to_struct(result: CompileResult) -> dict:
    return {
        "unoptimized_expression": result.unoptimized_expression,
        "optimized_expression": result.optimized_expression,
        "netlist": netlist.netlist_to_struct(result.netlist),
        "schematic": layout.schematic_to_struct(result.schematic),
        "svg_pages": list(result.svg_pages),
        "report": netlist.report_to_struct(result.report),
        "verified": result.verified,
    }


def compile_pipeline(
    t: TruthTable,
    output_index: int = 0,
    family_id: str = "sbv",
    window: Optional[tuple[int, int]] = None,
) -> CompileResult:
    """Run extract -> minimize -> synthesize -> place -> render -> verify."""
    family = netlist.get_family(family_id)
    minterms = truthtable.to_minterms(t, output_index)

    unoptimized = truthtable.extract_sop(minterms, t.input_names)
    optimized = boolmin.minimize(minterms, t.input_names)

    unopt_net = netlist.synthesize(unoptimized, family)
    opt_net = netlist.synthesize(optimized, family)

    schematic = layout.place(opt_net)
    if window is not None:
        schematic = layout.paginate(schematic, window[0], window[1])
    svg_pages = layout.render_svg(schematic, family)
    report = netlist.report(opt_net, unopt_net, family)

    for candidate, label in ((opt_net, "optimized"), (unopt_net, "unoptimized")):
        mismatch = sim.verify(candidate, t, output_index)
        if mismatch is not None:
            raise InternalVerificationFailure(
                f"{label} netlist disagrees with the table at row "
                f"{mismatch.row}: expected {mismatch.expected}, "
                f"got {mismatch.actual}"
            )

    return CompileResult(
        unoptimized_expression=boolmin.print_expression(unoptimized),
        optimized_expression=boolmin.print_expression(optimized),
        netlist=opt_net,
        schematic=schematic,
        svg_pages=tuple(svg_pages),
        report=report,
        verified=True,
    )
