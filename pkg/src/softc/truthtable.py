"""Truth table model, parsing, validation, and SOP extraction.

A table maps every combination of the named inputs to one or more output
columns.  Input names read left-to-right as most-significant to
least-significant bits of the row index, so a canonical table lists its
rows in ascending binary order.  Output cells take ``0``, ``1``, or ``X``
(don't-care).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from . import boolmin
from .errors import (
    BadName,
    BadSymbol,
    DuplicateRow,
    MissingRow,
    TableFormat,
    TooManyInputs,
    UnknownOutput,
)

if TYPE_CHECKING:
    from .boolmin import Expression

MAX_INPUTS = 8

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")

OUTPUT_SYMBOLS = ("0", "1", "X")


@dataclass(frozen=True)
class Row:
    """One table row: input bit-vector and per-output symbols."""

    inputs: tuple[int, ...]
    outputs: tuple[str, ...]

    def index(self) -> int:
        """Row position when inputs are read MSB-first."""
        value = 0
        for bit in self.inputs:
            value = (value << 1) | bit
        return value


@dataclass(frozen=True)
class TruthTable:
    input_names: tuple[str, ...]
    output_names: tuple[str, ...]
    rows: tuple[Row, ...]

    def __post_init__(self):
        _validate_names(self.input_names, self.output_names)
        n = len(self.input_names)
        if len(self.rows) != 2 ** n:
            raise MissingRow(
                f"expected {2 ** n} rows for {n} inputs, got {len(self.rows)}"
            )
        for i, row in enumerate(self.rows):
            if len(row.inputs) != n:
                raise BadSymbol(f"row {i}: expected {n} input bits")
            if len(row.outputs) != len(self.output_names):
                raise BadSymbol(
                    f"row {i}: expected {len(self.output_names)} output cells"
                )
            if row.index() != i:
                raise DuplicateRow(f"rows are not canonical at position {i}")

    @property
    def n(self) -> int:
        return len(self.input_names)

    def output_index(self, name: str) -> int:
        try:
            return self.output_names.index(name)
        except ValueError:
            raise UnknownOutput(f"no output column named {name!r}") from None


@dataclass(frozen=True)
class Minterms:
    """Rows where one output column is 1 (``on_set``) or X (``dc_set``)."""

    n: int
    on_set: frozenset[int]
    dc_set: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "on_set", frozenset(self.on_set))
        object.__setattr__(self, "dc_set", frozenset(self.dc_set))
        if self.on_set & self.dc_set:
            raise ValueError("on_set and dc_set overlap")
        limit = 2 ** self.n
        for idx in self.on_set | self.dc_set:
            if not 0 <= idx < limit:
                raise ValueError(f"minterm index {idx} out of range")


def _validate_names(input_names: Sequence[str], output_names: Sequence[str]):
    if not 1 <= len(input_names) <= MAX_INPUTS:
        if len(input_names) > MAX_INPUTS:
            raise TooManyInputs(
                f"{len(input_names)} inputs exceeds the limit of {MAX_INPUTS}"
            )
        raise TableFormat("at least one input is required")
    if not output_names:
        raise TableFormat("at least one output is required")
    seen = set()
    for name in tuple(input_names) + tuple(output_names):
        if not _NAME_RE.match(name):
            raise BadName(f"invalid identifier {name!r}")
        if name in seen:
            raise BadName(f"duplicate name {name!r}")
        seen.add(name)


def _canonicalize(
    input_names: Sequence[str],
    output_names: Sequence[str],
    rows: Iterable[Row],
) -> TruthTable:
    """Sort rows ascending and check for duplicates/missing rows."""
    _validate_names(input_names, output_names)
    n = len(input_names)
    by_index: dict[int, Row] = {}
    for row in rows:
        if len(row.inputs) != n:
            raise BadSymbol(f"expected {n} input bits, got {len(row.inputs)}")
        idx = row.index()
        if idx in by_index:
            pattern = "".join(str(b) for b in row.inputs)
            raise DuplicateRow(f"input pattern {pattern} appears more than once")
        by_index[idx] = row
    if len(by_index) != 2 ** n:
        raise MissingRow(f"expected {2 ** n} rows for {n} inputs, got {len(by_index)}")
    ordered = tuple(by_index[i] for i in range(2 ** n))
    return TruthTable(tuple(input_names), tuple(output_names), ordered)


def _parse_bit(cell: str, where: str) -> int:
    if cell == "0":
        return 0
    if cell == "1":
        return 1
    raise BadSymbol(f"{where}: input bit must be 0 or 1, got {cell!r}")


def _parse_out(cell: str, where: str) -> str:
    if cell in OUTPUT_SYMBOLS:
        return cell
    raise BadSymbol(f"{where}: output cell must be 0, 1, or X, got {cell!r}")


def parse_truth_table(text: str) -> TruthTable:
    """Parse either the text format or its structured (JSON) equivalent.

    Text format: ``#`` comment lines, a ``inputs | outputs`` header, then
    one ``bits | bits`` line per row.  Rows may appear in any order; the
    result is canonical.
    """
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TableFormat(f"invalid JSON: {exc}") from None
        return table_from_struct(obj)

    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append((lineno, line))
    if not lines:
        raise TableFormat("empty table")

    header_no, header = lines[0]
    if header.count("|") != 1:
        raise TableFormat(f"line {header_no}: header needs one '|' separator")
    left, right = header.split("|")
    input_names = tuple(left.split())
    output_names = tuple(right.split())
    _validate_names(input_names, output_names)

    rows = []
    for lineno, line in lines[1:]:
        if line.count("|") != 1:
            raise TableFormat(f"line {lineno}: row needs one '|' separator")
        left, right = line.split("|")
        in_cells = left.split()
        out_cells = right.split()
        if len(in_cells) != len(input_names):
            raise BadSymbol(
                f"line {lineno}: expected {len(input_names)} input bits, "
                f"got {len(in_cells)}"
            )
        if len(out_cells) != len(output_names):
            raise BadSymbol(
                f"line {lineno}: expected {len(output_names)} output cells, "
                f"got {len(out_cells)}"
            )
        inputs = tuple(_parse_bit(c, f"line {lineno}") for c in in_cells)
        outputs = tuple(_parse_out(c, f"line {lineno}") for c in out_cells)
        rows.append(Row(inputs, outputs))
    return _canonicalize(input_names, output_names, rows)


def table_from_struct(obj) -> TruthTable:
    """Build a table from the structured form
    ``{inputs: [...], outputs: [...], rows: [{in: "001", out: "1"}, ...]}``.
    """
    if not isinstance(obj, dict):
        raise TableFormat("structured table must be an object")
    for key in ("inputs", "outputs", "rows"):
        if key not in obj:
            raise TableFormat(f"structured table is missing {key!r}")
    input_names = obj["inputs"]
    output_names = obj["outputs"]
    if not isinstance(input_names, list) or not all(
        isinstance(s, str) for s in input_names
    ):
        raise TableFormat("'inputs' must be a list of names")
    if not isinstance(output_names, list) or not all(
        isinstance(s, str) for s in output_names
    ):
        raise TableFormat("'outputs' must be a list of names")
    _validate_names(input_names, output_names)

    rows = []
    for i, entry in enumerate(obj["rows"]):
        if not isinstance(entry, dict) or "in" not in entry or "out" not in entry:
            raise TableFormat(f"row {i} must be an object with 'in' and 'out'")
        in_bits = entry["in"]
        out_bits = entry["out"]
        if not isinstance(in_bits, str) or len(in_bits) != len(input_names):
            raise BadSymbol(f"row {i}: 'in' must be {len(input_names)} bits")
        if not isinstance(out_bits, str) or len(out_bits) != len(output_names):
            raise BadSymbol(f"row {i}: 'out' must be {len(output_names)} cells")
        inputs = tuple(_parse_bit(c, f"row {i}") for c in in_bits)
        outputs = tuple(_parse_out(c, f"row {i}") for c in out_bits)
        rows.append(Row(inputs, outputs))
    return _canonicalize(input_names, output_names, rows)


def serialize(t: TruthTable) -> str:
    """Render the canonical text form; inverse of :func:`parse_truth_table`."""
    out = [" ".join(t.input_names) + " | " + " ".join(t.output_names)]
    for row in t.rows:
        bits = " ".join(str(b) for b in row.inputs)
        cells = " ".join(row.outputs)
        out.append(f"{bits} | {cells}")
    return "\n".join(out) + "\n"


def table_to_struct(t: TruthTable) -> dict:
    return {
        "inputs": list(t.input_names),
        "outputs": list(t.output_names),
        "rows": [
            {
                "in": "".join(str(b) for b in row.inputs),
                "out": "".join(row.outputs),
            }
            for row in t.rows
        ],
    }


def to_minterms(t: TruthTable, output_index: int) -> Minterms:
    """Collect the on-set and don't-care set of one output column."""
    if not 0 <= output_index < len(t.output_names):
        raise UnknownOutput(f"output index {output_index} out of range")
    on = set()
    dc = set()
    for i, row in enumerate(t.rows):
        symbol = row.outputs[output_index]
        if symbol == "1":
            on.add(i)
        elif symbol == "X":
            dc.add(i)
    return Minterms(t.n, frozenset(on), frozenset(dc))


def extract_sop(m: Minterms, input_names: Sequence[str]) -> "Expression":
    """Literal Sum-Of-Products: one full product per on-set row, ascending.

    Don't-care rows are excluded; an empty on-set yields constant false.
    """
    if len(input_names) != m.n:
        raise ValueError(f"expected {m.n} input names, got {len(input_names)}")
    if not m.on_set:
        return boolmin.Const(False)
    products = []
    for idx in sorted(m.on_set):
        literals = []
        for pos, name in enumerate(input_names):
            bit = (idx >> (m.n - 1 - pos)) & 1
            var = boolmin.Var(name)
            literals.append(var if bit else boolmin.Not(var))
        products.append(boolmin.and_(literals))
    return boolmin.or_(products)
