"""Grid placement, sub-block pagination, and SVG emission.

Gates sit on an integer (col, row) grid: literal occurrences in column 0
(one cell per occurrence; literals are never shared), each gate one column
right of its deepest driver, rows picked at the midpoint of the drivers
and bumped down on collision.  Oversized schematics split along the
top-level OR operands (then AND operands) into numbered sub-block pages.

SVG output is byte-deterministic: fixed cell geometry, integer
coordinates, no ids or timestamps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import WindowTooSmall
from .netlist import (
    AND2,
    GATE_ARITY,
    NOT,
    OR2,
    RAIL_NETS,
    LogicFamily,
    Netlist,
)

CELL_W = 120
CELL_H = 80


@dataclass(frozen=True)
class Cell:
    ref: str
    kind: str  # input | rail | gate | output | blockref | blockdef
    label: str
    col: int
    row: int
    gate_type: Optional[str] = None


@dataclass(frozen=True)
class Wire:
    src: tuple[str, str]  # (cell ref, port)
    dst: tuple[str, str]
    points: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Page:
    number: int  # 0 = base page, k >= 1 = sub-block k
    cells: tuple[Cell, ...]
    wires: tuple[Wire, ...]
    refs: tuple[int, ...]  # sub-block numbers referenced by this page


@dataclass(frozen=True)
class Schematic:
    pages: tuple[Page, ...]
    source: Optional[Netlist] = field(default=None, compare=False, repr=False)


# --- netlist as a tree --------------------------------------------------------

@dataclass
class _Node:
    ref: str
    kind: str  # input | rail | gate | blockref
    label: str
    gate_type: Optional[str]
    children: list["_Node"]


def _build_tree(n: Netlist) -> _Node:
    """Expand the netlist into a tree with one leaf per literal occurrence."""
    drivers = {gate.out_net: gate for gate in n.gates}
    net_names = {net: name for name, net in n.inputs}
    seen: dict[str, int] = {}

    def leaf(name: str, kind: str) -> _Node:
        k = seen.get(name, 0)
        seen[name] = k + 1
        return _Node(f"{name}.{k}", kind, name, None, [])

    def walk(net: str) -> _Node:
        if net in RAIL_NETS:
            return leaf(net, "rail")
        gate = drivers.get(net)
        if gate is None:
            return leaf(net_names[net], "input")
        children = [walk(child) for child in gate.in_nets]
        return _Node(gate.id, "gate", gate.gate_type, gate.gate_type, children)

    return walk(n.output)


def _spine_operands(node: _Node, gate_type: str) -> list[_Node]:
    """Subtrees hanging off the maximal same-type gate spine at the root."""
    if node.kind == "gate" and node.gate_type == gate_type:
        operands = []
        for child in node.children:
            operands.extend(_spine_operands(child, gate_type))
        return operands
    return [node]


def _substitute(node: _Node, replaced: dict[int, int]) -> _Node:
    if id(node) in replaced:
        number = replaced[id(node)]
        return _Node(f"blk{number}.ref", "blockref", str(number), None, [])
    return _Node(
        node.ref,
        node.kind,
        node.label,
        node.gate_type,
        [_substitute(c, replaced) for c in node.children],
    )


# --- placement ---------------------------------------------------------------

def _place_tree(root: _Node, number: int) -> tuple[list[Cell], list[Wire]]:
    """Place one page: leaves at column 0 in post-order, parents right of
    and vertically between their drivers, plus the output/definition marker.
    """
    cells: list[Cell] = []
    occupied: set[tuple[int, int]] = set()
    placed: dict[int, Cell] = {}
    next_leaf_row = 0

    def put(node: _Node, col: int, row: int) -> Cell:
        while (col, row) in occupied:
            row += 1
        cell = Cell(node.ref, node.kind, node.label, col, row, node.gate_type)
        occupied.add((col, row))
        cells.append(cell)
        placed[id(node)] = cell
        return cell

    def place(node: _Node) -> Cell:
        nonlocal next_leaf_row
        if not node.children:
            cell = put(node, 0, next_leaf_row)
            next_leaf_row = cell.row + 1
            return cell
        children = [place(c) for c in node.children]
        col = 1 + max(c.col for c in children)
        row = sum(c.row for c in children) // len(children)
        return put(node, col, row)

    root_cell = place(root)
    sink_kind = "output" if number == 0 else "blockdef"
    sink_label = "OUT" if number == 0 else str(number)
    sink = _Node(f"blk{number}.def" if number else "out", sink_kind, sink_label, None, [])
    sink_cell = put(sink, root_cell.col + 1, root_cell.row)

    wires: list[Wire] = []

    def route(node: _Node):
        cell = placed[id(node)]
        for i, child in enumerate(node.children):
            route(child)
            src = placed[id(child)]
            wires.append(_make_wire(src, "out", cell, f"in{i}"))

    route(root)
    wires.append(_make_wire(root_cell, "out", sink_cell, "in0"))
    return cells, wires


def _port_xy(cell: Cell, port: str) -> tuple[int, int]:
    x = cell.col * CELL_W
    y = cell.row * CELL_H
    if cell.kind == "gate":
        x0, y0 = x + 24, y + 20
        if port == "out":
            return (x0 + 72, y0 + 20)
        arity = GATE_ARITY[cell.gate_type or NOT]
        if arity == 1:
            return (x0, y0 + 20)
        return (x0, y0 + 10) if port == "in0" else (x0, y0 + 30)
    if port == "out":
        return (x + 100, y + 40)
    return (x + 20, y + 40)


def _make_wire(src: Cell, src_port: str, dst: Cell, dst_port: str) -> Wire:
    x1, y1 = _port_xy(src, src_port)
    x2, y2 = _port_xy(dst, dst_port)
    xm = (x1 + x2) // 2
    points = ((x1, y1), (xm, y1), (xm, y2), (x2, y2))
    return Wire((src.ref, src_port), (dst.ref, dst_port), points)


def place(n: Netlist) -> Schematic:
    """Single-page placement of the whole netlist."""
    root = _build_tree(n)
    cells, wires = _place_tree(root, 0)
    page = Page(0, tuple(cells), tuple(wires), ())
    return Schematic(pages=(page,), source=n)


# --- pagination ----------------------------------------------------------------

def _page_extent(cells: list[Cell]) -> tuple[int, int]:
    return (
        1 + max(c.col for c in cells),
        1 + max(c.row for c in cells),
    )


def _fits(cells: list[Cell], max_cols: int, max_rows: int) -> bool:
    ncols, nrows = _page_extent(cells)
    return ncols <= max_cols and nrows <= max_rows


class _BlockCounter:
    def __init__(self):
        self.value = 0

    def next(self) -> int:
        self.value += 1
        return self.value


def _paginate_tree(
    root: _Node, number: int, max_cols: int, max_rows: int, counter: _BlockCounter
) -> list[Page]:
    cells, wires = _place_tree(root, number)
    refs = tuple(
        sorted(int(c.label) for c in cells if c.kind == "blockref")
    )
    whole = Page(number, tuple(cells), tuple(wires), refs)
    if _fits(cells, max_cols, max_rows):
        return [whole]

    if root.kind != "gate" or root.gate_type not in (OR2, AND2):
        return [whole]
    operands = _spine_operands(root, root.gate_type)

    replaced: dict[int, int] = {}
    subpages: list[Page] = []
    for operand in operands:
        op_cells, _ = _place_tree(operand, 1)
        body = [c for c in op_cells if c.kind != "blockdef"]
        if _fits(body, max_cols, max_rows):
            continue
        block = counter.next()
        replaced[id(operand)] = block
        subpages.extend(
            _paginate_tree(operand, block, max_cols, max_rows, counter)
        )
    if not replaced:
        return [whole]

    base_root = _substitute(root, replaced)
    base_cells, base_wires = _place_tree(base_root, number)
    base_refs = tuple(
        sorted(int(c.label) for c in base_cells if c.kind == "blockref")
    )
    base = Page(number, tuple(base_cells), tuple(base_wires), base_refs)
    return [base] + subpages


def paginate(s: Schematic, max_cols: int, max_rows: int) -> Schematic:
    """Split into numbered sub-block pages when the window is exceeded.

    Extraction is best effort: only operand subtrees that themselves
    exceed the window move to their own page, so a base page may still
    overrun a very small window.
    """
    if max_cols < 2 or max_rows < 2:
        raise WindowTooSmall(
            f"window {max_cols}x{max_rows} cannot hold a gate and its input"
        )
    if s.source is None:
        raise ValueError("schematic lost its source netlist; re-run place()")
    root = _build_tree(s.source)
    pages = _paginate_tree(root, 0, max_cols, max_rows, _BlockCounter())
    return Schematic(pages=tuple(pages), source=s.source)


# --- serialization ---------------------------------------------------------------

def schematic_to_struct(s: Schematic) -> dict:
    return {
        "pages": [
            {
                "number": p.number,
                "refs": list(p.refs),
                "cells": [
                    {
                        "ref": c.ref,
                        "kind": c.kind,
                        "label": c.label,
                        "col": c.col,
                        "row": c.row,
                    }
                    for c in p.cells
                ],
                "wires": [
                    {
                        "from": list(w.src),
                        "to": list(w.dst),
                        "points": [list(pt) for pt in w.points],
                    }
                    for w in p.wires
                ],
            }
            for p in s.pages
        ]
    }


# --- SVG ------------------------------------------------------------------------

_STROKE = "#333333"
_ACCENT = "#c0392b"


def _arrow(x: int, y: int) -> str:
    return (
        f'<polygon class="arrow" points="{x},{y} {x - 8},{y - 4} {x - 8},{y + 4}" '
        f'fill="{_ACCENT}"/>'
    )


def _text(x: int, y: int, s: str, cls: str, anchor: str = "middle", size: int = 14) -> str:
    return (
        f'<text class="{cls}" x="{x}" y="{y}" font-family="monospace" '
        f'font-size="{size}" text-anchor="{anchor}">{s}</text>'
    )


def _gate_shape(shape: str, x0: int, y0: int) -> list[str]:
    body = f'fill="#ffffff" stroke="{_STROKE}" stroke-width="2"'
    if shape == "and":
        return [
            f'<path d="M {x0} {y0} L {x0 + 52} {y0} A 20 20 0 0 1 {x0 + 52} '
            f'{y0 + 40} L {x0} {y0 + 40} Z" {body}/>'
        ]
    if shape == "or":
        return [
            f'<path d="M {x0} {y0} Q {x0 + 48} {y0} {x0 + 72} {y0 + 20} '
            f'Q {x0 + 48} {y0 + 40} {x0} {y0 + 40} Q {x0 + 16} {y0 + 20} '
            f'{x0} {y0} Z" {body}/>'
        ]
    if shape == "not":
        return [
            f'<path d="M {x0} {y0} L {x0 + 56} {y0 + 20} L {x0} {y0 + 40} Z" {body}/>',
            f'<circle cx="{x0 + 66}" cy="{y0 + 20}" r="6" {body}/>',
        ]
    if shape == "nand":
        return [
            f'<path d="M {x0} {y0} L {x0 + 40} {y0} A 20 20 0 0 1 {x0 + 40} '
            f'{y0 + 40} L {x0} {y0 + 40} Z" {body}/>',
            f'<circle cx="{x0 + 66}" cy="{y0 + 20}" r="6" {body}/>',
        ]
    raise ValueError(f"unknown glyph shape {shape!r}")


def _render_gate(cell: Cell, family: LogicFamily) -> list[str]:
    gate_type = cell.gate_type or NOT
    x0 = cell.col * CELL_W + 24
    y0 = cell.row * CELL_H + 20
    parts = [f'<g class="cell gate" data-ref="{cell.ref}">']
    parts.extend(_gate_shape(family.glyph[gate_type], x0, y0))
    labels = family.port_labels[gate_type]
    arity = GATE_ARITY[gate_type]
    for i in range(arity):
        px, py = _port_xy(cell, f"in{i}")
        parts.append(f'<line x1="{px - 16}" y1="{py}" x2="{px - 2}" y2="{py}" stroke="{_ACCENT}" stroke-width="2"/>')
        parts.append(_arrow(px - 2, py))
        if labels[i]:
            parts.append(_text(px - 8, py - 7, labels[i], "portlabel", size=11))
    ox, oy = _port_xy(cell, "out")
    parts.append(f'<line x1="{ox + 2}" y1="{oy}" x2="{ox + 16}" y2="{oy}" stroke="{_ACCENT}" stroke-width="2"/>')
    parts.append(_arrow(ox + 18, oy))
    if labels[arity]:
        parts.append(_text(ox + 10, oy - 7, labels[arity], "portlabel", size=11))
    parts.append(_text(x0 + 36, y0 + 54, cell.ref, "gateid", size=11))
    parts.append("</g>")
    return parts


def _render_leaf(cell: Cell) -> list[str]:
    x = cell.col * CELL_W
    y = cell.row * CELL_H
    px, py = _port_xy(cell, "out")
    size = 14 if cell.kind == "input" else 10
    parts = [f'<g class="cell {cell.kind}" data-ref="{cell.ref}">']
    parts.append(_text(x + 40, y + 45, cell.label, "name", size=size))
    parts.append(f'<line x1="{x + 64}" y1="{py}" x2="{px}" y2="{py}" stroke="{_ACCENT}" stroke-width="2"/>')
    parts.append(_arrow(px, py))
    parts.append("</g>")
    return parts


def _render_block(cell: Cell) -> list[str]:
    x = cell.col * CELL_W
    y = cell.row * CELL_H
    parts = [f'<g class="cell {cell.kind}" data-ref="{cell.ref}">']
    parts.append(
        f'<rect x="{x + 28}" y="{y + 24}" width="64" height="32" '
        f'fill="#ffffff" stroke="{_STROKE}" stroke-width="2" stroke-dasharray="4 2"/>'
    )
    parts.append(_text(x + 60, y + 45, f"[{cell.label}]", "blocknum"))
    if cell.kind == "blockref":
        px, py = _port_xy(cell, "out")
        parts.append(f'<line x1="{x + 92}" y1="{py}" x2="{px}" y2="{py}" stroke="{_ACCENT}" stroke-width="2"/>')
        parts.append(_arrow(px, py))
    return parts + ["</g>"]


def _render_output(cell: Cell) -> list[str]:
    px, py = _port_xy(cell, "in0")
    parts = [f'<g class="cell output" data-ref="{cell.ref}">']
    parts.append(_arrow(px + 8, py))
    parts.append(_text(px + 16, py + 5, cell.label, "name", anchor="start"))
    return parts + ["</g>"]


def render_svg(s: Schematic, family: LogicFamily) -> list[str]:
    """One SVG document per page; rendering the same schematic twice
    yields byte-identical output."""
    documents = []
    for page in s.pages:
        ncols, nrows = _page_extent(list(page.cells))
        width = ncols * CELL_W + 40
        height = nrows * CELL_H
        parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="#fcfcf8"/>',
        ]
        if page.number:
            parts.append(_text(8, 16, f"sub-block [{page.number}]", "pagetitle", anchor="start", size=12))
        for wire in page.wires:
            pts = " ".join(f"{x},{y}" for x, y in wire.points)
            parts.append(
                f'<polyline class="wire" points="{pts}" fill="none" '
                f'stroke="{_STROKE}" stroke-width="2"/>'
            )
        for cell in page.cells:
            if cell.kind == "gate":
                parts.extend(_render_gate(cell, family))
            elif cell.kind in ("input", "rail"):
                parts.extend(_render_leaf(cell))
            elif cell.kind in ("blockref", "blockdef"):
                parts.extend(_render_block(cell))
            elif cell.kind == "output":
                parts.extend(_render_output(cell))
        parts.append("</svg>")
        documents.append("\n".join(parts) + "\n")
    return documents
