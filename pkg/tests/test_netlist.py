import itertools
import math
import random

import pytest

from softc.boolmin import Const, Var, and_, or_, parse_expression
from softc.errors import FamilyMismatch, UnknownFamily, UnsupportedGate
from softc.netlist import (
    AND2,
    ATMOSPHERE,
    NAND2,
    NOT,
    OR2,
    SUPPLY,
    depth_gates,
    family_registry,
    family_to_struct,
    gate_counts,
    get_family,
    map_to_nand,
    max_propagation_delay,
    netlist_from_struct,
    netlist_to_struct,
    report,
    synthesize,
    validate,
)
from softc.sim import evaluate_netlist
from softc.truthtable import extract_sop, to_minterms

from conftest import random_table

SBV = get_family("sbv")
NAND_FAMILY = get_family("nand-demo")

OPT_COMPLEX = parse_expression("(~B & C) | (A & C)")
UNOPT_COMPLEX = parse_expression("(~A & ~B & C) | (A & ~B & C) | (A & B & C)")


def test_registry():
    families = family_registry()
    assert [f.id for f in families] == ["sbv", "nand-demo"]
    assert families[0].gate_types == frozenset({NOT, AND2, OR2})
    assert all(cost == 1 for cost in families[0].device_cost.values())
    with pytest.raises(UnknownFamily):
        get_family("cmos")


def test_family_port_labels():
    assert SBV.port_labels[AND2] == ("T", "B", "")
    assert SBV.port_labels[NOT] == ("T", "")
    struct = family_to_struct(SBV)
    assert struct["id"] == "sbv"
    assert struct["gates"] == [NOT, AND2, OR2]


def test_synthesize_single_not():
    n = synthesize(parse_expression("~A"), SBV)
    assert len(n.gates) == 1
    assert n.gates[0].gate_type == NOT
    assert n.inputs == (("A", "n0"),)
    assert n.output == "n1"
    validate(n)


def test_synthesize_bare_wire():
    n = synthesize(Var("A"), SBV)
    assert n.gates == ()
    assert n.output == "n0"
    assert gate_counts(n) == ({}, 0)


def test_synthesize_constants():
    assert synthesize(Const(True), SBV).output == SUPPLY
    assert synthesize(Const(False), SBV).output == ATMOSPHERE


def test_synthesize_optimized_complex():
    n = synthesize(OPT_COMPLEX, SBV)
    counts, total = gate_counts(n)
    assert counts == {NOT: 1, AND2: 2, OR2: 1}
    assert total == 4
    validate(n)
    # ids assigned in post-order, nets input-first
    assert [g.id for g in n.gates] == ["g0", "g1", "g2", "g3"]
    assert [name for name, _ in n.inputs] == ["A", "B", "C"]
    assert [net for _, net in n.inputs] == ["n0", "n1", "n2"]


def test_synthesize_unoptimized_complex():
    n = synthesize(UNOPT_COMPLEX, SBV)
    counts, total = gate_counts(n)
    assert counts == {NOT: 3, AND2: 6, OR2: 2}
    assert total == 11


def test_no_literal_sharing():
    # ~B appears twice: each occurrence gets its own NOT valve
    n = synthesize(parse_expression("(~B & C) | (~B & D)"), SBV)
    counts, _ = gate_counts(n)
    assert counts[NOT] == 2


def test_balanced_depth():
    for k in range(2, 9):
        e = and_(Var(f"I{i}") for i in range(k))
        n = synthesize(e, SBV)
        assert depth_gates(n) == math.ceil(math.log2(k)), k


def test_unsupported_gate():
    with pytest.raises(UnsupportedGate):
        synthesize(parse_expression("A & B"), NAND_FAMILY)


def test_report_complex():
    opt = synthesize(OPT_COMPLEX, SBV)
    unopt = synthesize(UNOPT_COMPLEX, SBV)
    r = report(opt, unopt, SBV)
    assert r.total_devices == 4
    assert r.devices_removed_by_optimization == 7
    assert r.depth_gates == 3
    assert r.max_propagation_delay == 3
    assert depth_gates(unopt) == 5
    assert r.unoptimized_counts == {NOT: 3, AND2: 6, OR2: 2}


def test_report_single_not():
    n = synthesize(parse_expression("~A"), SBV)
    r = report(n, n, SBV)
    assert r.depth_gates == 1
    assert r.max_propagation_delay == SBV.gate_delay[NOT]
    assert r.devices_removed_by_optimization == 0


def test_report_family_mismatch():
    opt = synthesize(OPT_COMPLEX, SBV)
    with pytest.raises(FamilyMismatch):
        report(opt, opt, NAND_FAMILY)


def test_map_to_nand_single_not():
    n = synthesize(parse_expression("~A"), SBV)
    mapped = map_to_nand(n, NAND_FAMILY)
    assert len(mapped.gates) == 1
    gate = mapped.gates[0]
    assert gate.gate_type == NAND2
    assert gate.in_nets[0] == gate.in_nets[1]
    validate(mapped)


def test_map_to_nand_bare_wire():
    n = synthesize(Var("A"), SBV)
    mapped = map_to_nand(n, NAND_FAMILY)
    assert mapped.gates == ()
    assert mapped.output == mapped.inputs[0][1]


def test_map_to_nand_equivalence_and_size():
    rng = random.Random(71)
    for _ in range(40):
        n_vars = rng.randint(1, 4)
        t = random_table(rng, n_vars)
        e = extract_sop(to_minterms(t, 0), t.input_names)
        source = synthesize(e, SBV)
        mapped = map_to_nand(source, NAND_FAMILY)
        validate(mapped)
        assert len(mapped.gates) <= 3 * len(source.gates)
        names = [name for name, _ in source.inputs]
        for bits in itertools.product((0, 1), repeat=len(names)):
            assignment = dict(zip(names, bits))
            assert evaluate_netlist(source, assignment) == evaluate_netlist(
                mapped, assignment
            )


def test_map_to_nand_needs_nand():
    n = synthesize(OPT_COMPLEX, SBV)
    with pytest.raises(UnsupportedGate):
        map_to_nand(n, SBV)


def test_functional_fidelity_random():
    rng = random.Random(73)
    for _ in range(60):
        n_vars = rng.randint(1, 4)
        t = random_table(rng, n_vars)
        e = extract_sop(to_minterms(t, 0), t.input_names)
        net = synthesize(e, SBV)
        validate(net)
        for i, row in enumerate(t.rows):
            assignment = dict(zip(t.input_names, row.inputs))
            assert evaluate_netlist(net, assignment) == int(row.outputs[0]), (
                n_vars,
                i,
            )


def test_synthesize_deterministic():
    a = synthesize(UNOPT_COMPLEX, SBV)
    b = synthesize(UNOPT_COMPLEX, SBV)
    assert a == b
    assert netlist_to_struct(a) == netlist_to_struct(b)


def test_serialization_roundtrip():
    n = synthesize(OPT_COMPLEX, SBV)
    assert netlist_from_struct(netlist_to_struct(n)) == n


def test_gate_instance_count_matches_internal_nodes():
    # instance count = internal nodes of the binarized tree:
    # (k-1) two-input gates per k-ary node plus one gate per NOT
    e = parse_expression("(~A & ~B & C) | (A & ~B & C) | (A & B & C)")
    n = synthesize(e, SBV)
    assert len(n.gates) == 3 + (2 * 3) + 2  # NOTs + per-product ANDs + OR tree
