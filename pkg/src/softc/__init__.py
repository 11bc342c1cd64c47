"""softc: compile truth tables into soft pneumatic logic circuits.

Pipeline stages live in their own modules: :mod:`softc.truthtable`
(parsing and SOP extraction), :mod:`softc.boolmin` (exact minimization),
:mod:`softc.netlist` (gate synthesis and reports), :mod:`softc.layout`
(placement and SVG), :mod:`softc.sim` (verification and timed simulation),
and :mod:`softc.pipeline` / :mod:`softc.service` / :mod:`softc.cli`
(drivers).
"""

from .boolmin import (
    And,
    Const,
    Expression,
    Not,
    Or,
    Var,
    equivalent,
    evaluate,
    minimize,
    parse_expression,
    print_expression,
)
from .layout import Schematic, paginate, place, render_svg
from .netlist import (
    CircuitReport,
    LogicFamily,
    Netlist,
    family_registry,
    gate_counts,
    get_family,
    map_to_nand,
    report,
    synthesize,
)
from .pipeline import CompileResult, compile_pipeline
from .sim import (
    GloveState,
    TimedTrace,
    evaluate_netlist,
    glove_levels,
    timed_simulate,
    verify,
)
from .truthtable import (
    Minterms,
    TruthTable,
    extract_sop,
    parse_truth_table,
    serialize,
    to_minterms,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "CircuitReport",
    "CompileResult",
    "Const",
    "Expression",
    "GloveState",
    "LogicFamily",
    "Minterms",
    "Netlist",
    "Not",
    "Or",
    "Schematic",
    "TimedTrace",
    "TruthTable",
    "Var",
    "compile_pipeline",
    "equivalent",
    "evaluate",
    "evaluate_netlist",
    "extract_sop",
    "family_registry",
    "gate_counts",
    "get_family",
    "glove_levels",
    "map_to_nand",
    "minimize",
    "paginate",
    "parse_expression",
    "parse_truth_table",
    "place",
    "print_expression",
    "render_svg",
    "report",
    "serialize",
    "synthesize",
    "timed_simulate",
    "to_minterms",
    "verify",
]
