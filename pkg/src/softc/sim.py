"""Netlist simulation: functional, exhaustive-verify, and timed.

The timed simulator is event-driven with inertial delays: a gate
re-evaluates its output one gate-delay after any input edge, and a
scheduled transition is cancelled when a newer evaluation agrees with the
current level (a pneumatic membrane that never needed to flip).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .errors import FamilyMismatch, InputMismatch, UnboundInput, UnknownOutput
from .netlist import (
    AND2,
    ATMOSPHERE,
    NAND2,
    NOT,
    OR2,
    SUPPLY,
    Delay,
    LogicFamily,
    Netlist,
)
from .truthtable import TruthTable

DEFAULT_FINGERS = ("pinky", "ring", "middle", "index")


@dataclass(frozen=True)
class GloveState:
    """Bent/straight state of each glove finger, in declaration order."""

    fingers: tuple[tuple[str, bool], ...] = tuple(
        (name, False) for name in DEFAULT_FINGERS
    )

    @classmethod
    def bending(cls, bent: Sequence[str], fingers: Sequence[str] = DEFAULT_FINGERS):
        unknown = set(bent) - set(fingers)
        if unknown:
            raise ValueError(f"unknown fingers: {sorted(unknown)}")
        return cls(tuple((name, name in bent) for name in fingers))


def glove_levels(
    g: GloveState, input_names: Optional[Sequence[str]] = None
) -> dict[str, int]:
    """Pressure levels seen by the circuit: bent finger = 0, straight = 1.

    With ``input_names`` the fingers map positionally onto those circuit
    inputs; otherwise the finger names are used directly.
    """
    if input_names is None:
        names = [name for name, _ in g.fingers]
    else:
        if len(input_names) != len(g.fingers):
            raise InputMismatch(
                f"{len(g.fingers)} fingers cannot drive "
                f"{len(input_names)} inputs"
            )
        names = list(input_names)
    return {
        name: 0 if bent else 1
        for name, (_, bent) in zip(names, g.fingers)
    }


# --- functional evaluation -----------------------------------------------------

def _gate_output(gate_type: str, values: Sequence[int]) -> int:
    if gate_type == NOT:
        return 1 - values[0]
    if gate_type == AND2:
        return values[0] & values[1]
    if gate_type == OR2:
        return values[0] | values[1]
    if gate_type == NAND2:
        return 1 - (values[0] & values[1])
    raise ValueError(f"unknown gate type {gate_type!r}")


def net_levels(n: Netlist, inputs: Mapping[str, int]) -> dict[str, int]:
    """Settle every net under the given input assignment."""
    levels = {SUPPLY: 1, ATMOSPHERE: 0}
    for name, net in n.inputs:
        if name not in inputs:
            raise UnboundInput(f"no value bound for input {name!r}")
        levels[net] = 1 if inputs[name] else 0
    for gate in n.gates:
        values = [levels[net] for net in gate.in_nets]
        levels[gate.out_net] = _gate_output(gate.gate_type, values)
    return levels


def evaluate_netlist(n: Netlist, inputs: Mapping[str, int]) -> int:
    return net_levels(n, inputs)[n.output]


# --- exhaustive verification ------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    row: int
    expected: int
    actual: int


def verify(n: Netlist, t: TruthTable, output_index: int = 0) -> Optional[Mismatch]:
    """Check the netlist against every table row; don't-cares are skipped.

    Returns None on success, or the smallest failing row.
    """
    if not 0 <= output_index < len(t.output_names):
        raise UnknownOutput(f"output index {output_index} out of range")
    table_names = set(t.input_names)
    missing = [name for name, _ in n.inputs if name not in table_names]
    if missing:
        raise InputMismatch(f"netlist inputs {missing} not among table inputs")
    for i, row in enumerate(t.rows):
        symbol = row.outputs[output_index]
        if symbol == "X":
            continue
        assignment = dict(zip(t.input_names, row.inputs))
        actual = evaluate_netlist(n, assignment)
        if actual != int(symbol):
            return Mismatch(i, int(symbol), actual)
    return None


# --- timed simulation ---------------------------------------------------------------

@dataclass(frozen=True)
class TimedTrace:
    events: tuple[tuple[Delay, str, int], ...]
    settle_time: Delay


def trace_to_struct(trace: TimedTrace) -> dict:
    return {
        "events": [
            {"t": t, "net": net, "level": level} for t, net, level in trace.events
        ],
        "settle_time": trace.settle_time,
    }


def trace_to_csv(trace: TimedTrace) -> str:
    lines = ["t,net,level"]
    lines.extend(f"{t},{net},{level}" for t, net, level in trace.events)
    return "\n".join(lines) + "\n"


def timed_simulate(
    n: Netlist,
    family: LogicFamily,
    initial: Mapping[str, int],
    step: Mapping[str, int],
    step_time: Delay = 0,
) -> TimedTrace:
    """Apply ``step`` at ``step_time`` to a circuit settled under ``initial``."""
    if family.id != n.family_id:
        raise FamilyMismatch(
            f"netlist targets {n.family_id!r}, not {family.id!r}"
        )
    levels = net_levels(n, initial)
    for name, _ in n.inputs:
        if name not in step:
            raise UnboundInput(f"no stepped value for input {name!r}")

    readers: dict[str, list[int]] = {}
    for idx, gate in enumerate(n.gates):
        for net in set(gate.in_nets):
            readers.setdefault(net, []).append(idx)

    events: list[tuple[Delay, str, int]] = []
    pending: dict[int, tuple[Delay, int]] = {}
    heap: list[tuple[Delay, int, int]] = []
    seq = 0

    def react(gate_idx: int, now: Delay):
        nonlocal seq
        gate = n.gates[gate_idx]
        value = _gate_output(gate.gate_type, [levels[x] for x in gate.in_nets])
        if value == levels[gate.out_net]:
            pending.pop(gate_idx, None)
            return
        entry = (now + family.gate_delay[gate.gate_type], value)
        if pending.get(gate_idx) != entry:
            pending[gate_idx] = entry
            seq += 1
            heapq.heappush(heap, (entry[0], seq, gate_idx))

    affected: list[int] = []
    for name, net in n.inputs:
        new = 1 if step[name] else 0
        if new != levels[net]:
            levels[net] = new
            events.append((step_time, net, new))
            affected.extend(readers.get(net, []))
    for gate_idx in sorted(set(affected)):
        react(gate_idx, step_time)

    while heap:
        when, _, gate_idx = heapq.heappop(heap)
        entry = pending.get(gate_idx)
        if entry is None or entry[0] != when:
            continue
        del pending[gate_idx]
        out_net = n.gates[gate_idx].out_net
        levels[out_net] = entry[1]
        events.append((when, out_net, entry[1]))
        for reader in readers.get(out_net, []):
            react(reader, when)

    settle_time = events[-1][0] if events else step_time
    return TimedTrace(tuple(events), settle_time)
