"""Gate-level synthesis for soft logic families.

An Expression lowers to a tree of 1- and 2-input gate instances: n-ary
AND/OR nodes split into balanced binary trees, every NOT gets its own
gate (physical valves are not shared between literals), and constants
ride the always-high SUPPLY or always-low ATMOSPHERE rail.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from . import boolmin
from .boolmin import And, Const, Expression, Not, Or, Var
from .errors import BadNetlist, FamilyMismatch, UnknownFamily, UnsupportedGate

NOT = "NOT"
AND2 = "AND2"
OR2 = "OR2"
NAND2 = "NAND2"

GATE_ORDER = (NOT, AND2, OR2, NAND2)
GATE_ARITY = {NOT: 1, AND2: 2, OR2: 2, NAND2: 2}

SUPPLY = "SUPPLY"
ATMOSPHERE = "ATMOSPHERE"
RAIL_NETS = (SUPPLY, ATMOSPHERE)

Delay = Union[int, float]


@dataclass(frozen=True)
class LogicFamily:
    """A physical gate technology: available gates, costs, delays, glyphs.

    ``port_labels`` lists one annotation per port, inputs first then the
    output; the built-in soft-bistable-valve family marks its two gate
    inputs T (top) and B (bottom) to guide tubing during assembly.
    """

    id: str
    display_name: str
    gate_types: frozenset[str]
    device_cost: Mapping[str, int]
    gate_delay: Mapping[str, Delay]
    port_labels: Mapping[str, tuple[str, ...]]
    glyph: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "gate_types", frozenset(self.gate_types))
        for gate in self.gate_types:
            if gate not in GATE_ARITY:
                raise ValueError(f"unknown gate type {gate!r}")
            if self.device_cost.get(gate, 0) < 1:
                raise ValueError(f"{gate}: device cost must be >= 1")
            if not self.gate_delay.get(gate, 0) > 0:
                raise ValueError(f"{gate}: gate delay must be > 0")
            labels = self.port_labels.get(gate, ())
            if len(labels) != GATE_ARITY[gate] + 1:
                raise ValueError(f"{gate}: expected {GATE_ARITY[gate] + 1} port labels")


@dataclass(frozen=True)
class GateInstance:
    id: str
    gate_type: str
    in_nets: tuple[str, ...]
    out_net: str


@dataclass(frozen=True)
class Netlist:
    family_id: str
    inputs: tuple[tuple[str, str], ...]
    output: str
    gates: tuple[GateInstance, ...]

    def input_net(self, name: str) -> str:
        for input_name, net in self.inputs:
            if input_name == name:
                return net
        raise KeyError(name)

    def driver_of(self, net: str) -> Optional[GateInstance]:
        for gate in self.gates:
            if gate.out_net == net:
                return gate
        return None


@dataclass(frozen=True)
class CircuitReport:
    counts: Mapping[str, int]
    total_devices: int
    depth_gates: int
    max_propagation_delay: Delay
    devices_removed_by_optimization: int
    unoptimized_counts: Mapping[str, int]


# --- family registry ---------------------------------------------------------

_SBV = LogicFamily(
    id="sbv",
    display_name="Soft bistable valve",
    gate_types=frozenset({NOT, AND2, OR2}),
    device_cost={NOT: 1, AND2: 1, OR2: 1},
    gate_delay={NOT: 1, AND2: 1, OR2: 1},
    port_labels={NOT: ("T", ""), AND2: ("T", "B", ""), OR2: ("T", "B", "")},
    glyph={NOT: "not", AND2: "and", OR2: "or"},
)

_NAND_DEMO = LogicFamily(
    id="nand-demo",
    display_name="NAND demo family",
    gate_types=frozenset({NAND2}),
    device_cost={NAND2: 1},
    gate_delay={NAND2: 1},
    port_labels={NAND2: ("T", "B", "")},
    glyph={NAND2: "nand"},
)

_REGISTRY = (_SBV, _NAND_DEMO)


def family_registry() -> tuple[LogicFamily, ...]:
    """Built-in families in stable order (``sbv`` first)."""
    return _REGISTRY


def get_family(family_id: str) -> LogicFamily:
    for family in _REGISTRY:
        if family.id == family_id:
            return family
    raise UnknownFamily(f"no logic family named {family_id!r}")


def family_to_struct(family: LogicFamily) -> dict:
    gates = [g for g in GATE_ORDER if g in family.gate_types]
    return {
        "id": family.id,
        "display_name": family.display_name,
        "gates": gates,
        "device_cost": {g: family.device_cost[g] for g in gates},
        "gate_delay": {g: family.gate_delay[g] for g in gates},
        "port_labels": {g: list(family.port_labels[g]) for g in gates},
        "glyph": {g: family.glyph[g] for g in gates},
    }


# --- synthesis ----------------------------------------------------------------

class _Builder:
    def __init__(self, family: LogicFamily, input_names: Sequence[str]):
        self.family = family
        self.input_nets = {name: f"n{i}" for i, name in enumerate(input_names)}
        self.next_net = len(input_names)
        self.gates: list[GateInstance] = []

    def new_gate(self, gate_type: str, in_nets: Sequence[str]) -> str:
        if gate_type not in self.family.gate_types:
            raise UnsupportedGate(
                f"family {self.family.id!r} has no {gate_type} gate"
            )
        out = f"n{self.next_net}"
        self.next_net += 1
        gate = GateInstance(f"g{len(self.gates)}", gate_type, tuple(in_nets), out)
        self.gates.append(gate)
        return out


def _lower(e: Expression, b: _Builder) -> str:
    if isinstance(e, Var):
        return b.input_nets[e.name]
    if isinstance(e, Const):
        return SUPPLY if e.value else ATMOSPHERE
    if isinstance(e, Not):
        return b.new_gate(NOT, [_lower(e.child, b)])
    if isinstance(e, (And, Or)):
        gate_type = AND2 if isinstance(e, And) else OR2
        return _lower_balanced(list(e.children), gate_type, b)
    raise TypeError(f"not an expression: {e!r}")


def _lower_balanced(children: list[Expression], gate_type: str, b: _Builder) -> str:
    if len(children) == 1:
        return _lower(children[0], b)
    split = (len(children) + 1) // 2
    left = _lower_balanced(children[:split], gate_type, b)
    right = _lower_balanced(children[split:], gate_type, b)
    return b.new_gate(gate_type, [left, right])


def synthesize(e: Expression, family: LogicFamily) -> Netlist:
    """Lower an expression to gates; ids and nets assigned in post-order.

    A bare variable yields a gateless pass-through; constants yield a
    gateless netlist on the SUPPLY or ATMOSPHERE rail.
    """
    input_names = sorted(boolmin.variables(e))
    builder = _Builder(family, input_names)
    output = _lower(e, builder)
    return Netlist(
        family_id=family.id,
        inputs=tuple((name, builder.input_nets[name]) for name in input_names),
        output=output,
        gates=tuple(builder.gates),
    )


# --- analysis ------------------------------------------------------------------

def gate_counts(n: Netlist) -> tuple[dict[str, int], int]:
    """Per-type instance counts and the device total under the family's costs."""
    family = get_family(n.family_id)
    counts: dict[str, int] = {}
    for gate in n.gates:
        counts[gate.gate_type] = counts.get(gate.gate_type, 0) + 1
    ordered = {g: counts[g] for g in GATE_ORDER if g in counts}
    total = sum(count * family.device_cost[g] for g, count in ordered.items())
    return ordered, total


def _longest_paths(n: Netlist, weight: Mapping[str, Delay]) -> Delay:
    """Longest input-to-output path; gates appear after their drivers."""
    cost: dict[str, Delay] = {}
    for gate in n.gates:
        upstream = max((cost.get(net, 0) for net in gate.in_nets), default=0)
        cost[gate.out_net] = upstream + weight[gate.gate_type]
    return cost.get(n.output, 0)


def depth_gates(n: Netlist) -> int:
    return _longest_paths(n, {g: 1 for g in GATE_ARITY})


def max_propagation_delay(n: Netlist, family: LogicFamily) -> Delay:
    return _longest_paths(n, family.gate_delay)


def report(
    optimized: Netlist, unoptimized: Netlist, family: LogicFamily
) -> CircuitReport:
    """Gate counts, critical path, and devices saved by minimization."""
    if optimized.family_id != family.id or unoptimized.family_id != family.id:
        raise FamilyMismatch(
            f"netlists target {optimized.family_id!r}/{unoptimized.family_id!r}, "
            f"not {family.id!r}"
        )
    counts, total = gate_counts(optimized)
    unopt_counts, unopt_total = gate_counts(unoptimized)
    return CircuitReport(
        counts=counts,
        total_devices=total,
        depth_gates=depth_gates(optimized),
        max_propagation_delay=max_propagation_delay(optimized, family),
        devices_removed_by_optimization=unopt_total - total,
        unoptimized_counts=unopt_counts,
    )


def report_to_struct(r: CircuitReport) -> dict:
    return {
        "counts": dict(r.counts),
        "total_devices": r.total_devices,
        "depth_gates": r.depth_gates,
        "max_propagation_delay": r.max_propagation_delay,
        "devices_removed_by_optimization": r.devices_removed_by_optimization,
        "unoptimized_counts": dict(r.unoptimized_counts),
    }


# --- technology mapping ----------------------------------------------------------

def map_to_nand(n: Netlist, nand_family: LogicFamily) -> Netlist:
    """Rewrite a NOT/AND2/OR2 tree into NAND2 gates only.

    NOT(a) = NAND(a,a); AND(a,b) = NAND(c,c) with c = NAND(a,b);
    OR(a,b) = NAND(NAND(a,a), NAND(b,b)).  Gate count grows by at most 3x.
    """
    if NAND2 not in nand_family.gate_types:
        raise UnsupportedGate(f"family {nand_family.id!r} has no NAND2 gate")
    drivers = {gate.out_net: gate for gate in n.gates}
    builder = _Builder(nand_family, [name for name, _ in n.inputs])

    def rebuild(net: str) -> str:
        if net in RAIL_NETS:
            return net
        gate = drivers.get(net)
        if gate is None:
            for name, old_net in n.inputs:
                if old_net == net:
                    return builder.input_nets[name]
            raise BadNetlist(f"net {net!r} has no driver")
        if gate.gate_type == NOT:
            a = rebuild(gate.in_nets[0])
            return builder.new_gate(NAND2, [a, a])
        if gate.gate_type == AND2:
            a = rebuild(gate.in_nets[0])
            b = rebuild(gate.in_nets[1])
            c = builder.new_gate(NAND2, [a, b])
            return builder.new_gate(NAND2, [c, c])
        if gate.gate_type == OR2:
            a = rebuild(gate.in_nets[0])
            b = rebuild(gate.in_nets[1])
            na = builder.new_gate(NAND2, [a, a])
            nb = builder.new_gate(NAND2, [b, b])
            return builder.new_gate(NAND2, [na, nb])
        raise UnsupportedGate(f"cannot map {gate.gate_type} to NAND2")

    output = rebuild(n.output)
    return Netlist(
        family_id=nand_family.id,
        inputs=tuple((name, builder.input_nets[name]) for name, _ in n.inputs),
        output=output,
        gates=tuple(builder.gates),
    )


# --- serialization -----------------------------------------------------------------

def netlist_to_struct(n: Netlist) -> dict:
    return {
        "family": n.family_id,
        "inputs": [{"name": name, "net": net} for name, net in n.inputs],
        "output": n.output,
        "gates": [
            {
                "id": g.id,
                "type": g.gate_type,
                "in": list(g.in_nets),
                "out": g.out_net,
            }
            for g in n.gates
        ],
    }


def netlist_from_struct(obj) -> Netlist:
    try:
        inputs = tuple((e["name"], e["net"]) for e in obj["inputs"])
        gates = tuple(
            GateInstance(g["id"], g["type"], tuple(g["in"]), g["out"])
            for g in obj["gates"]
        )
        n = Netlist(obj["family"], inputs, obj["output"], gates)
    except (KeyError, TypeError) as exc:
        raise BadNetlist(f"malformed netlist: {exc}") from None
    validate(n)
    return n


def validate(n: Netlist):
    """Check the structural invariants: single drivers, arity, tree shape."""
    drivers: dict[str, str] = {}
    for name, net in n.inputs:
        if net in drivers or net in RAIL_NETS:
            raise BadNetlist(f"net {net!r} driven more than once")
        drivers[net] = f"input {name}"
    for gate in n.gates:
        if gate.gate_type not in GATE_ARITY:
            raise BadNetlist(f"{gate.id}: unknown gate type {gate.gate_type!r}")
        if len(gate.in_nets) != GATE_ARITY[gate.gate_type]:
            raise BadNetlist(f"{gate.id}: wrong arity for {gate.gate_type}")
        for net in gate.in_nets:
            if net not in drivers and net not in RAIL_NETS:
                raise BadNetlist(f"{gate.id}: input net {net!r} has no driver yet")
        if gate.out_net in drivers or gate.out_net in RAIL_NETS:
            raise BadNetlist(f"net {gate.out_net!r} driven more than once")
        drivers[gate.out_net] = gate.id
    if n.output not in drivers and n.output not in RAIL_NETS:
        raise BadNetlist(f"output net {n.output!r} has no driver")

    readers: dict[str, int] = {}
    for gate in n.gates:
        for net in set(gate.in_nets):
            readers[net] = readers.get(net, 0) + 1
    for gate in n.gates:
        consumed = readers.get(gate.out_net, 0)
        if gate.out_net == n.output:
            if consumed != 0:
                raise BadNetlist(f"output net {gate.out_net!r} is also read by a gate")
        elif consumed != 1:
            raise BadNetlist(
                f"gate output {gate.out_net!r} must feed exactly one gate, "
                f"feeds {consumed}"
            )
